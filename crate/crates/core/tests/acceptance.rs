//! Acceptance suite: every categorical and oracle-based claim the library
//! makes, run at pinned sweep ranges with exact (tolerance-zero) checks.
//! Each test prints one PASS line; run with `--nocapture` to see them.

use num_rational::Rational64;
use satake_core::binfty::BInftyGraph;
use satake_core::cartan::{DominantWeight, Family, RootDatum};
use satake_core::crystal::component_isomorphism;
use satake_core::involutions::{sigma_star, sigma_xi, verify_cactus, verify_symmetry, xi};
use satake_core::satake::{
    multiplicity_set, verify_assoc_compat, verify_commutor_compat, verify_pentagon,
};
use satake_core::tableaux::ssyt_crystal;
use satake_core::tensor::{tensor_n, tensor_n_right_nested};
use satake_core::verify::check_crystal_iso;
use std::sync::Arc;

fn rd(f: Family, n: usize) -> Arc<RootDatum> {
    RootDatum::new(f, n).unwrap()
}

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

/// Dominant weights with height(λ) ≤ bound.
fn weights_up_to(rd: &RootDatum, bound: Rational64) -> Vec<DominantWeight> {
    rd.dominant_weights_up_to_height(bound)
}

/// All tuples of dominant weights with total height ≤ bound.
fn tuples_by_total_height(rd: &RootDatum, arity: usize, bound: Rational64) -> Vec<Vec<DominantWeight>> {
    let singles = weights_up_to(rd, bound);
    let mut out: Vec<(Vec<DominantWeight>, Rational64)> = vec![(Vec::new(), rat(0))];
    for _ in 0..arity {
        let mut next = Vec::new();
        for (tuple, used) in &out {
            for w in &singles {
                let h = rd.height(w.weight());
                if *used + h <= bound {
                    let mut t = tuple.clone();
                    t.push(w.clone());
                    next.push((t, *used + h));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(t, _)| t).collect()
}

fn pair_depth(rd: &RootDatum, singles: &[DominantWeight]) -> usize {
    let mut depth = 0;
    for a in singles {
        for b in singles {
            depth = depth.max(rd.depth_for_all(&[a.clone(), b.clone()]));
        }
    }
    depth
}

fn graph_for(rd: &Arc<RootDatum>, weights: &[Vec<DominantWeight>]) -> BInftyGraph {
    let depth = weights
        .iter()
        .map(|t| rd.depth_for_all(t))
        .max()
        .unwrap_or(0);
    BInftyGraph::generate(rd.clone(), depth).unwrap()
}

/// Criterion 1: |B(λ)| equals the Weyl dimension in the B(∞)-carved model
/// (and in the tableau model for type A) over the stated sweeps.
#[test]
fn acceptance_01_dimension_oracle() {
    let start = std::time::Instant::now();
    let sweeps: Vec<(Family, usize, Rational64)> = vec![
        (Family::A, 1, rat(6)),
        (Family::A, 2, rat(4)),
        (Family::A, 3, rat(4)),
        (Family::B, 2, rat(4)),
        (Family::G, 2, rat(4)),
    ];
    let mut checked = 0;
    for (f, n, bound) in sweeps {
        let r = rd(f, n);
        let lams = weights_up_to(&r, bound);
        let depth = lams.iter().map(|l| r.depth_for(l)).max().unwrap();
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &lams {
            let carved = g.highest_weight_crystal(lam).unwrap();
            let dim: u64 = r.weyl_dim(lam).try_into().unwrap();
            assert_eq!(carved.len() as u64, dim, "{f}{n} B({lam})");
            assert_eq!(carved.component_count(), 1, "{f}{n} B({lam}) connected");
            if f == Family::A {
                let tab = ssyt_crystal(&r, lam).unwrap();
                assert_eq!(tab.len() as u64, dim, "{f}{n} tableaux of {lam}");
            }
            checked += 1;
        }
    }
    println!(
        "ACCEPTANCE 1 (dimension oracle): PASS — {checked} crystals in {:.1?}",
        start.elapsed()
    );
}

/// Criterion 2: B(∞) truncation weight counts equal the Kostant partition
/// function for every β in range.
#[test]
fn acceptance_02_kostant_oracle() {
    for (f, n, h) in [
        (Family::A, 1, 10usize),
        (Family::A, 2, 10),
        (Family::B, 2, 6),
        (Family::G, 2, 6),
    ] {
        let r = rd(f, n);
        let g = BInftyGraph::generate(r.clone(), h).unwrap();
        let census = g.weight_census();
        // Enumerate all β of height ≤ h.
        let mut betas = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for v in betas {
                let used: i64 = v.iter().sum();
                for c in 0..=(h as i64 - used) {
                    let mut w = v.clone();
                    w.push(c);
                    next.push(w);
                }
            }
            betas = next;
        }
        for beta in betas {
            let got = census.get(&beta).copied().unwrap_or(0) as u64;
            assert_eq!(got, r.kostant_partition(&beta), "{f}{n} at {beta:?}");
        }
    }
    println!("ACCEPTANCE 2 (Kostant oracle): PASS");
}

/// Criterion 3: the tableau crystal and the carved crystal are isomorphic
/// via the canonical component isomorphism, for every type-A λ in the
/// criterion-1 sweep.
#[test]
fn acceptance_03_model_isomorphism() {
    for (n, bound) in [(1usize, rat(6)), (2, rat(4)), (3, rat(4))] {
        let r = rd(Family::A, n);
        let lams = weights_up_to(&r, bound);
        let depth = lams.iter().map(|l| r.depth_for(l)).max().unwrap();
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &lams {
            let tab = ssyt_crystal(&r, lam).unwrap();
            let carved = g.highest_weight_crystal(lam).unwrap();
            let (tab_hw, _) = tab.highest_weight_elements()[0];
            let (carved_hw, _) = carved.highest_weight_elements()[0];
            let map = component_isomorphism(&tab, tab_hw, &carved, carved_hw)
                .unwrap_or_else(|e| panic!("A{n} {lam}: {e}"));
            assert_eq!(map.len(), tab.len(), "A{n} {lam} bijection");
        }
    }
    println!("ACCEPTANCE 3 (model isomorphism): PASS");
}

/// Criterion 4: |C_{λμ}^ν| agrees with the Littlewood–Richardson oracle on
/// all type-A pairs with height(λ)+height(μ) ≤ 6, including the sl3
/// adjoint multiplicity.
#[test]
fn acceptance_04_lr_agreement() {
    use satake_core::tensor::tensor2;
    for n in [1usize, 2, 3] {
        let r = rd(Family::A, n);
        let pairs = tuples_by_total_height(&r, 2, rat(6));
        let g = graph_for(&r, &pairs);
        for pair in &pairs {
            let (lam, mu) = (&pair[0], &pair[1]);
            let carved_counts: std::collections::BTreeMap<_, usize> = {
                let bl = g.highest_weight_crystal(lam).unwrap();
                let bm = g.highest_weight_crystal(mu).unwrap();
                tensor2(&bl, &bm)
                    .unwrap()
                    .decompose()
                    .unwrap()
                    .into_iter()
                    .map(|(w, els)| (w, els.len()))
                    .collect()
            };
            let tableau_counts: std::collections::BTreeMap<_, usize> = {
                let bl = ssyt_crystal(&r, lam).unwrap();
                let bm = ssyt_crystal(&r, mu).unwrap();
                tensor2(&bl, &bm)
                    .unwrap()
                    .decompose()
                    .unwrap()
                    .into_iter()
                    .map(|(w, els)| (w, els.len()))
                    .collect()
            };
            assert_eq!(carved_counts, tableau_counts, "A{n} {lam} ⊗ {mu}");
        }
    }
    // The sl3 adjoint multiplicity, explicitly.
    let r = rd(Family::A, 2);
    let g = BInftyGraph::generate(r.clone(), 8).unwrap();
    let adj = DominantWeight::from_coords(vec![1, 1]).unwrap();
    let c = multiplicity_set(&g, &[adj.clone(), adj.clone()], &adj).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(
        satake_core::tableaux::lr_oracle(&r, &adj, &adj, &adj).unwrap(),
        2
    );
    println!("ACCEPTANCE 4 (LR agreement): PASS");
}

fn sigma_pair_sweeps() -> Vec<(Family, usize, Rational64)> {
    vec![
        (Family::A, 1, rat(4)),
        (Family::A, 2, rat(3)),
        (Family::B, 2, rat(2)),
    ]
}

/// Criterion 5: the star commutor and the ξ commutor agree elementwise on
/// every pair in the sweep.
#[test]
fn acceptance_05_theorem_sigma_star_equals_sigma_xi() {
    let start = std::time::Instant::now();
    let mut pairs_checked = 0;
    for (f, n, bound) in sigma_pair_sweeps() {
        let r = rd(f, n);
        let singles = weights_up_to(&r, bound);
        let depth = pair_depth(&r, &singles);
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &singles {
            for mu in &singles {
                let s = sigma_star(&g, lam, mu).unwrap();
                let x = sigma_xi(&g, lam, mu).unwrap();
                assert_eq!(s.map, x.map, "{f}{n}: sigma tables differ at ({lam},{mu})");
                assert_eq!(s.pairs, x.pairs, "{f}{n}: hw tables differ at ({lam},{mu})");
                pairs_checked += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 5 (commutor via star = commutor via xi): PASS — {pairs_checked} pairs in {:.1?}",
        start.elapsed()
    );
}

fn cactus_triple_sweeps() -> Vec<(Family, usize, Vec<Vec<DominantWeight>>)> {
    // A1: all triples with each height ≤ 2; A2: total height ≤ 4;
    // B2: total height ≤ 5.
    let mut out = Vec::new();
    let r1 = rd(Family::A, 1);
    let singles = weights_up_to(&r1, rat(2));
    let mut triples = Vec::new();
    for a in &singles {
        for b in &singles {
            for c in &singles {
                triples.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out.push((Family::A, 1, triples));
    let r2 = rd(Family::A, 2);
    out.push((Family::A, 2, tuples_by_total_height(&r2, 3, rat(4))));
    let rb = rd(Family::B, 2);
    out.push((Family::B, 2, tuples_by_total_height(&rb, 3, half(10))));
    out
}

/// Criterion 6: commutor symmetry on all sweep pairs and the cactus axiom
/// on all sweep triples.
#[test]
fn acceptance_06_coboundary_axioms() {
    let start = std::time::Instant::now();
    let mut pairs_checked = 0;
    for (f, n, bound) in sigma_pair_sweeps() {
        let r = rd(f, n);
        let singles = weights_up_to(&r, bound);
        let depth = pair_depth(&r, &singles);
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &singles {
            for mu in &singles {
                let v = verify_symmetry(&g, lam, mu).unwrap();
                assert!(v.is_pass(), "{f}{n} symmetry at ({lam},{mu}): {v:?}");
                pairs_checked += 1;
            }
        }
    }
    let mut triples_checked = 0;
    for (f, n, triples) in cactus_triple_sweeps() {
        let r = rd(f, n);
        let g = graph_for(&r, &triples);
        for t in &triples {
            let v = verify_cactus(&g, &t[0], &t[1], &t[2]).unwrap();
            assert!(
                v.is_pass(),
                "{f}{n} cactus at ({},{},{}): {v:?}",
                t[0],
                t[1],
                t[2]
            );
            triples_checked += 1;
        }
    }
    println!(
        "ACCEPTANCE 6 (coboundary axioms): PASS — {pairs_checked} symmetry pairs, {triples_checked} cactus triples in {:.1?}",
        start.elapsed()
    );
}

/// Criterion 7: the pentagon holds on all quadruples of total height ≤ 4
/// in A1 and A2.
#[test]
fn acceptance_07_pentagon() {
    let start = std::time::Instant::now();
    let mut checked = 0;
    for n in [1usize, 2] {
        let r = rd(Family::A, n);
        let quads = tuples_by_total_height(&r, 4, rat(4));
        let g = graph_for(&r, &quads);
        for q in &quads {
            let v = verify_pentagon(&g, &q[0], &q[1], &q[2], &q[3]).unwrap();
            assert!(
                v.is_pass(),
                "A{n} pentagon at ({},{},{},{}): {v:?}",
                q[0],
                q[1],
                q[2],
                q[3]
            );
            checked += 1;
        }
    }
    println!(
        "ACCEPTANCE 7 (pentagon): PASS — {checked} quadruples in {:.1?}",
        start.elapsed()
    );
}

/// Criterion 8: the functor compatibility squares commute — associator
/// compatibility on all sweep triples, commutor compatibility on all
/// sweep pairs.
#[test]
fn acceptance_08_functor_compatibility() {
    let start = std::time::Instant::now();
    let mut triples_checked = 0;
    for (f, n, triples) in cactus_triple_sweeps() {
        let r = rd(f, n);
        let g = graph_for(&r, &triples);
        for t in &triples {
            let v = verify_assoc_compat(&g, &t[0], &t[1], &t[2]).unwrap();
            assert!(
                v.is_pass(),
                "{f}{n} assoc-compat at ({},{},{}): {v:?}",
                t[0],
                t[1],
                t[2]
            );
            triples_checked += 1;
        }
    }
    let mut pairs_checked = 0;
    for (f, n, bound) in sigma_pair_sweeps() {
        let r = rd(f, n);
        let singles = weights_up_to(&r, bound);
        let depth = pair_depth(&r, &singles);
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &singles {
            for mu in &singles {
                let v = verify_commutor_compat(&g, lam, mu).unwrap();
                assert!(v.is_pass(), "{f}{n} commutor-compat at ({lam},{mu}): {v:?}");
                pairs_checked += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 8 (functor compatibility): PASS — {triples_checked} triples, {pairs_checked} pairs in {:.1?}",
        start.elapsed()
    );
}

/// Criterion 9: structural invariants — ξ and * are involutions, * is
/// weight-preserving with ε_i(b*) = ε_i*(b), every commutor table is a
/// crystal isomorphism, and n-fold products are bracketing-independent.
#[test]
fn acceptance_09_structural_invariants() {
    let start = std::time::Instant::now();
    // Star structure over the criterion-2 graphs.
    for (f, n, h) in [
        (Family::A, 1, 10usize),
        (Family::A, 2, 10),
        (Family::B, 2, 6),
        (Family::G, 2, 6),
    ] {
        let r = rd(f, n);
        let g = BInftyGraph::generate(r.clone(), h).unwrap();
        for id in 0..g.len() {
            let s = g.kashiwara_star(id).unwrap();
            assert_eq!(g.kashiwara_star(s).unwrap(), id, "{f}{n} involution");
            assert_eq!(g.node_beta(s), g.node_beta(id), "{f}{n} weight");
            for i in 0..n {
                assert_eq!(g.eps(i, s), g.eps_star(id, i), "{f}{n} defining relation");
            }
        }
    }
    // ξ is an involution with the w₀ weight rule on every B(λ) in the
    // sigma sweeps.
    for (f, n, bound) in sigma_pair_sweeps() {
        let r = rd(f, n);
        let singles = weights_up_to(&r, bound);
        let depth = singles.iter().map(|l| r.depth_for(l)).max().unwrap();
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &singles {
            let b = g.highest_weight_crystal(lam).unwrap();
            let map = xi(&b).unwrap();
            for e in 0..b.len() {
                assert_eq!(map[map[e]], e, "{f}{n} xi involution on B({lam})");
                assert_eq!(
                    b.wt(map[e]),
                    &r.w0_action(b.wt(e)),
                    "{f}{n} xi weight rule on B({lam})"
                );
            }
        }
    }
    // Every commutor table is a crystal isomorphism.
    for (f, n, bound) in sigma_pair_sweeps() {
        let r = rd(f, n);
        let singles = weights_up_to(&r, bound);
        let depth = pair_depth(&r, &singles);
        let g = BInftyGraph::generate(r.clone(), depth).unwrap();
        for lam in &singles {
            for mu in &singles {
                let s = sigma_star(&g, lam, mu).unwrap();
                check_crystal_iso(&s.domain, &s.codomain, &s.map)
                    .unwrap_or_else(|e| panic!("{f}{n} table at ({lam},{mu}): {e}"));
                for (h, nu, img) in &s.pairs {
                    assert_eq!(s.domain.wt(*h), nu.weight());
                    assert_eq!(s.codomain.wt(*img), nu.weight());
                }
            }
        }
    }
    // Bracketing independence of tensor_n over the cactus triples.
    for (f, n, triples) in cactus_triple_sweeps() {
        let r = rd(f, n);
        let g = graph_for(&r, &triples);
        for t in &triples {
            let crystals: Vec<_> = t
                .iter()
                .map(|w| g.highest_weight_crystal(w).unwrap())
                .collect();
            let refs: Vec<&_> = crystals.iter().collect();
            let left = tensor_n(&refs).unwrap();
            let right = tensor_n_right_nested(&refs).unwrap();
            for id in 0..left.len() {
                assert_eq!(left.wt(id), right.wt(id));
                for i in 0..r.rank() {
                    assert_eq!(left.f(i, id), right.f(i, id), "{f}{n} bracketing");
                    assert_eq!(left.e(i, id), right.e(i, id));
                    assert_eq!(left.eps(i, id), right.eps(i, id));
                    assert_eq!(left.phi(i, id), right.phi(i, id));
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 9 (structural invariants): PASS in {:.1?}",
        start.elapsed()
    );
}
