//! The combinatorial Satake category: objects are dominant-weight-indexed
//! label sets, tensor products are built from the multiplicity sets
//! C_{λμ}^ν, and the refined associators α¹/α² plus the commutor are
//! realized on crystal data.
//!
//! A multiplicity set C_{λ₁…λₙ}^μ is the set of highest weight elements of
//! weight μ in B(λ₁)⊗…⊗B(λₙ), indexed in ascending element order of the
//! canonical models; everything downstream (object labels, associator
//! tables, commutor bijections) refers to these indices, so all bijections
//! here are exact finite data.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::binfty::BInftyGraph;
use crate::cartan::DominantWeight;
use crate::crystal::{disjoint_union, Crystal};
use crate::error::{Error, Result};
use crate::involutions::{decompose_canonical, sigma_star};
use crate::tensor::{tensor2, tensor_n};
use crate::verify::{Counterexample, Verdict};

/// An opaque label inside one weight slot of an object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// The singleton of a simple object A(λ).
    One,
    /// Labels of hand-built objects.
    Tagged(u32),
    /// A point of R_λ × S_μ × … × C_{λμ…}^ν.
    Tensor(Vec<Label>, MultiplicityId),
}

/// Canonical name of a multiplicity-set element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicityId {
    pub factors: Vec<DominantWeight>,
    pub target: DominantWeight,
    pub index: usize,
}

/// An object of the category: finitely many labels per dominant weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SatakeObject {
    support: BTreeMap<DominantWeight, Vec<Label>>,
}

impl SatakeObject {
    pub fn empty() -> SatakeObject {
        SatakeObject::default()
    }

    /// A(λ): the singleton {1} at λ.
    pub fn simple(lam: &DominantWeight) -> SatakeObject {
        let mut support = BTreeMap::new();
        support.insert(lam.clone(), vec![Label::One]);
        SatakeObject { support }
    }

    pub fn insert(&mut self, lam: DominantWeight, label: Label) {
        let slot = self.support.entry(lam).or_default();
        assert!(!slot.contains(&label), "duplicate label in one weight slot");
        slot.push(label);
    }

    pub fn support(&self) -> &BTreeMap<DominantWeight, Vec<Label>> {
        &self.support
    }

    pub fn label_count(&self, lam: &DominantWeight) -> usize {
        self.support.get(lam).map_or(0, |v| v.len())
    }

    pub fn total_labels(&self) -> usize {
        self.support.values().map(|v| v.len()).sum()
    }

    /// ⊕_λ A(λ)^{⊕|R_λ|}, with fresh opaque labels.
    pub fn sum_of_simples(&self) -> SatakeObject {
        let mut out = SatakeObject::empty();
        for (lam, labels) in &self.support {
            for k in 0..labels.len() {
                out.insert(lam.clone(), Label::Tagged(k as u32));
            }
        }
        out
    }
}

/// A morphism: one set map per weight, as a dense array of target indices
/// against the label orders of domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeMorphism {
    pub maps: BTreeMap<DominantWeight, Vec<usize>>,
}

impl SatakeMorphism {
    pub fn identity(r: &SatakeObject) -> SatakeMorphism {
        SatakeMorphism {
            maps: r
                .support()
                .iter()
                .map(|(lam, labels)| (lam.clone(), (0..labels.len()).collect()))
                .collect(),
        }
    }

    pub fn is_valid(&self, domain: &SatakeObject, codomain: &SatakeObject) -> bool {
        domain.support().iter().all(|(lam, labels)| {
            let map = self.maps.get(lam);
            match map {
                Some(m) => {
                    m.len() == labels.len()
                        && m.iter().all(|&t| t < codomain.label_count(lam))
                }
                None => labels.is_empty(),
            }
        })
    }

    /// other ∘ self.
    pub fn then(&self, other: &SatakeMorphism) -> SatakeMorphism {
        SatakeMorphism {
            maps: self
                .maps
                .iter()
                .map(|(lam, m)| {
                    let next = other.maps.get(lam).cloned().unwrap_or_default();
                    (lam.clone(), m.iter().map(|&t| next[t]).collect())
                })
                .collect(),
        }
    }
}

/// One element of C_{λ₁…λₙ}^μ: a highest weight element of the n-fold
/// tensor product of the canonical models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityElement {
    pub factor_weights: Vec<DominantWeight>,
    pub target: DominantWeight,
    /// Element id in tensor_n of the canonical B(λ_k).
    pub element: usize,
    /// Per-factor element ids.
    pub factors: Vec<usize>,
}

fn carve_all(graph: &BInftyGraph, weights: &[DominantWeight]) -> Result<Vec<Crystal>> {
    let needed = graph.rd().depth_for_all(weights);
    if needed > graph.depth() {
        return Err(Error::DepthExceeded {
            needed,
            depth: graph.depth(),
        });
    }
    weights
        .iter()
        .map(|w| graph.highest_weight_crystal(w))
        .collect()
}

/// C_{λ₁…λₙ}^μ in canonical (ascending element) order.
pub fn multiplicity_set(
    graph: &BInftyGraph,
    weights: &[DominantWeight],
    target: &DominantWeight,
) -> Result<Vec<MultiplicityElement>> {
    let crystals = carve_all(graph, weights)?;
    let refs: Vec<&Crystal> = crystals.iter().collect();
    let t = tensor_n(&refs)?;
    Ok(t.highest_weight_elements()
        .into_iter()
        .filter(|(_, w)| w == target)
        .map(|(e, _)| MultiplicityElement {
            factor_weights: weights.to_vec(),
            target: target.clone(),
            element: e,
            factors: t.factors_of(e).expect("tensor element"),
        })
        .collect())
}

/// Index of every highest weight element within its weight class,
/// ascending by element id: the C-set coordinates of a decomposed tensor.
fn cset_index(t: &Crystal) -> Result<(BTreeMap<DominantWeight, Vec<usize>>, HashMap<usize, usize>)>
{
    let sets = t.decompose()?;
    let mut index = HashMap::new();
    for els in sets.values() {
        for (k, &e) in els.iter().enumerate() {
            index.insert(e, k);
        }
    }
    Ok((sets, index))
}

/// (R ⊗ S)_ν = ⋃_{λ,μ} R_λ × S_μ × C_{λμ}^ν.
pub fn tensor_objects(
    graph: &BInftyGraph,
    r: &SatakeObject,
    s: &SatakeObject,
) -> Result<SatakeObject> {
    tensor_objects_n(graph, &[r, s])
}

/// (R ⊗ S ⊗ T)_δ = ⋃ R_λ × S_μ × T_ν × C_{λμν}^δ.
pub fn tensor3_objects(
    graph: &BInftyGraph,
    r: &SatakeObject,
    s: &SatakeObject,
    t: &SatakeObject,
) -> Result<SatakeObject> {
    tensor_objects_n(graph, &[r, s, t])
}

fn tensor_objects_n(graph: &BInftyGraph, objs: &[&SatakeObject]) -> Result<SatakeObject> {
    let mut out = SatakeObject::empty();
    // Iterate the product of supports in BTreeMap order.
    let supports: Vec<Vec<(&DominantWeight, &Vec<Label>)>> =
        objs.iter().map(|o| o.support().iter().collect()).collect();
    let mut idx = vec![0usize; objs.len()];
    if supports.iter().any(|s| s.is_empty()) {
        return Ok(out);
    }
    loop {
        let picked: Vec<(&DominantWeight, &Vec<Label>)> =
            idx.iter().zip(&supports).map(|(&k, s)| s[k]).collect();
        let weights: Vec<DominantWeight> = picked.iter().map(|(w, _)| (*w).clone()).collect();
        let crystals = carve_all(graph, &weights)?;
        let refs: Vec<&Crystal> = crystals.iter().collect();
        let t = tensor_n(&refs)?;
        let mut per_target: BTreeMap<DominantWeight, usize> = BTreeMap::new();
        for (_, w) in t.highest_weight_elements() {
            let k = per_target.entry(w).or_insert(0);
            *k += 1;
        }
        // Label tuples in product order.
        let mut label_idx = vec![0usize; objs.len()];
        loop {
            let labels: Vec<Label> = label_idx
                .iter()
                .zip(&picked)
                .map(|(&k, (_, ls))| ls[k].clone())
                .collect();
            for (target, count) in &per_target {
                for c in 0..*count {
                    out.insert(
                        target.clone(),
                        Label::Tensor(
                            labels.clone(),
                            MultiplicityId {
                                factors: weights.clone(),
                                target: target.clone(),
                                index: c,
                            },
                        ),
                    );
                }
            }
            let mut k = objs.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                label_idx[k] += 1;
                if label_idx[k] < picked[k].1.len() {
                    break;
                }
                label_idx[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX {
                break;
            }
        }
        // Advance the support product.
        let mut k = objs.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < supports[k].len() {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                return Ok(out);
            }
        }
    }
}

/// An associator table for the triple (λ, μ, ν) at target δ: entry k
/// describes where the k-th element of C_{λμν}^δ lands.
/// For α¹ the pair is (C_{λμ}^γ index, C_{γν}^δ index); for α² it is
/// (C_{μν}^γ index, C_{λγ}^δ index).
#[derive(Debug, Clone)]
pub struct AlphaTable {
    pub weights: [DominantWeight; 3],
    pub target: DominantWeight,
    pub entries: Vec<(DominantWeight, usize, usize)>,
}

impl AlphaTable {
    fn check_bijection(&self, sizes: &BTreeMap<DominantWeight, (usize, usize)>) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for entry in &self.entries {
            if !seen.insert(entry.clone()) {
                return Err(Error::InternalConsistency(
                    "associator table is not injective".into(),
                ));
            }
        }
        let total: usize = sizes.values().map(|&(a, b)| a * b).sum();
        if total != self.entries.len() {
            return Err(Error::InternalConsistency(format!(
                "associator cardinalities disagree: {} vs {}",
                total,
                self.entries.len()
            )));
        }
        Ok(())
    }
}

/// α¹: C_{λμν}^δ → ⋃_γ C_{λμ}^γ × C_{γν}^δ.  For a triple highest weight
/// element x⊗y⊗z: take the component head of x⊗y (an element of C_{λμ}^γ),
/// push x⊗y into the canonical B(γ), and pair the image with z.
pub fn alpha1(
    graph: &BInftyGraph,
    lam: &DominantWeight,
    mu: &DominantWeight,
    nu: &DominantWeight,
    delta: &DominantWeight,
) -> Result<AlphaTable> {
    let crystals = carve_all(graph, &[lam.clone(), mu.clone(), nu.clone()])?;
    let (bl, bm, bn) = (&crystals[0], &crystals[1], &crystals[2]);
    let t2 = tensor2(bl, bm)?;
    let d2 = decompose_canonical(graph, &t2)?;
    let (_, c2_index) = cset_index(&t2)?;
    let t3 = tensor_n(&[bl, bm, bn])?;

    let mut paired: BTreeMap<DominantWeight, (Crystal, HashMap<usize, usize>, usize)> =
        BTreeMap::new();
    for gamma in d2.canon.keys() {
        let tz = tensor2(&d2.canon[gamma], bn)?;
        let (sets, index) = cset_index(&tz)?;
        let size = sets.get(delta).map_or(0, |v| v.len());
        paired.insert(gamma.clone(), (tz, index, size));
    }

    let mut entries = Vec::new();
    let mut sizes: BTreeMap<DominantWeight, (usize, usize)> = BTreeMap::new();
    for (gamma, (_, _, size)) in &paired {
        let first = d2
            .comp_gamma
            .iter()
            .filter(|g| *g == gamma)
            .count();
        sizes.insert(gamma.clone(), (first, *size));
    }
    for (e, w) in t3.highest_weight_elements() {
        if &w != delta {
            continue;
        }
        let f = t3.factors_of(e).expect("tensor element");
        let xy = t2.tensor_shape().unwrap().id_of(&[f[0], f[1]]);
        let comp = t2.component_of(xy);
        let gamma = d2.comp_gamma[comp].clone();
        let head = d2.head_of_comp[comp];
        let c_idx = c2_index[&head];
        let b = d2.canon_image[xy];
        let (tz, tz_index, _) = &paired[&gamma];
        let bz = tz.tensor_shape().unwrap().id_of(&[b, f[2]]);
        if !tz.is_hw(bz) || tz.wt(bz) != delta.weight() {
            return Err(Error::ImageNotHw(format!(
                "alpha1 image of element {e} is not highest weight of weight {delta}"
            )));
        }
        entries.push((gamma, c_idx, tz_index[&bz]));
    }
    let table = AlphaTable {
        weights: [lam.clone(), mu.clone(), nu.clone()],
        target: delta.clone(),
        entries,
    };
    table.check_bijection(&sizes)?;
    Ok(table)
}

/// α²: C_{λμν}^δ → ⋃_γ C_{μν}^γ × C_{λγ}^δ, mirroring α¹ through the
/// component of y⊗z (which, on a highest weight triple, is y⊗z itself).
pub fn alpha2(
    graph: &BInftyGraph,
    lam: &DominantWeight,
    mu: &DominantWeight,
    nu: &DominantWeight,
    delta: &DominantWeight,
) -> Result<AlphaTable> {
    let crystals = carve_all(graph, &[lam.clone(), mu.clone(), nu.clone()])?;
    let (bl, bm, bn) = (&crystals[0], &crystals[1], &crystals[2]);
    let t2 = tensor2(bm, bn)?;
    let d2 = decompose_canonical(graph, &t2)?;
    let (_, c2_index) = cset_index(&t2)?;
    let t3 = tensor_n(&[bl, bm, bn])?;

    let mut paired: BTreeMap<DominantWeight, (Crystal, HashMap<usize, usize>, usize)> =
        BTreeMap::new();
    for gamma in d2.canon.keys() {
        let tz = tensor2(bl, &d2.canon[gamma])?;
        let (sets, index) = cset_index(&tz)?;
        let size = sets.get(delta).map_or(0, |v| v.len());
        paired.insert(gamma.clone(), (tz, index, size));
    }

    let mut entries = Vec::new();
    let mut sizes: BTreeMap<DominantWeight, (usize, usize)> = BTreeMap::new();
    for (gamma, (_, _, size)) in &paired {
        let first = d2.comp_gamma.iter().filter(|g| *g == gamma).count();
        sizes.insert(gamma.clone(), (first, *size));
    }
    for (e, w) in t3.highest_weight_elements() {
        if &w != delta {
            continue;
        }
        let f = t3.factors_of(e).expect("tensor element");
        let yz = t2.tensor_shape().unwrap().id_of(&[f[1], f[2]]);
        if !t2.is_hw(yz) {
            return Err(Error::ImageNotHw(format!(
                "second pair of highest weight triple {e} is not highest weight"
            )));
        }
        let comp = t2.component_of(yz);
        let gamma = d2.comp_gamma[comp].clone();
        let c_idx = c2_index[&yz];
        let b = d2.canon_image[yz];
        let (tz, tz_index, _) = &paired[&gamma];
        let xb = tz.tensor_shape().unwrap().id_of(&[f[0], b]);
        if !tz.is_hw(xb) || tz.wt(xb) != delta.weight() {
            return Err(Error::ImageNotHw(format!(
                "alpha2 image of element {e} is not highest weight of weight {delta}"
            )));
        }
        entries.push((gamma, c_idx, tz_index[&xb]));
    }
    let table = AlphaTable {
        weights: [lam.clone(), mu.clone(), nu.clone()],
        target: delta.clone(),
        entries,
    };
    table.check_bijection(&sizes)?;
    Ok(table)
}

/// The commutor on objects: for each ν the bijection C_{λμ}^ν → C_{μλ}^ν
/// induced by σ on highest weight elements.
pub fn commutor_objects(
    graph: &BInftyGraph,
    lam: &DominantWeight,
    mu: &DominantWeight,
) -> Result<BTreeMap<DominantWeight, Vec<usize>>> {
    let table = sigma_star(graph, lam, mu)?;
    let (_, dom_index) = cset_index(&table.domain)?;
    let (_, cod_index) = cset_index(&table.codomain)?;
    let mut out: BTreeMap<DominantWeight, Vec<usize>> = BTreeMap::new();
    for (h, nu, img) in &table.pairs {
        let slot = out.entry(nu.clone()).or_default();
        let i = dom_index[h];
        if slot.len() <= i {
            slot.resize(i + 1, usize::MAX);
        }
        slot[i] = cod_index[img];
    }
    Ok(out)
}

/// Φ(R): one labelled copy of the canonical B(λ) per label of R_λ.
pub fn phi(graph: &BInftyGraph, r: &SatakeObject) -> Result<Crystal> {
    if r.support().is_empty() || r.total_labels() == 0 {
        return Err(Error::MalformedCrystal(
            "phi of the empty object is the empty crystal".into(),
        ));
    }
    let mut canon: Vec<(String, Arc<Crystal>)> = Vec::new();
    for (lam, labels) in r.support() {
        let model = Arc::new(graph.highest_weight_crystal(lam)?);
        for k in 0..labels.len() {
            canon.push((format!("{lam}#{k}"), model.clone()));
        }
    }
    let parts: Vec<(String, &Crystal)> = canon
        .iter()
        .map(|(tag, c)| (tag.clone(), c.as_ref()))
        .collect();
    disjoint_union(&parts)
}

/// Φ on morphisms: relabel copies by the per-weight set maps.
pub fn phi_morphism(
    graph: &BInftyGraph,
    f: &SatakeMorphism,
    r: &SatakeObject,
    s: &SatakeObject,
) -> Result<Vec<usize>> {
    if !f.is_valid(r, s) {
        return Err(Error::MalformedCrystal(
            "morphism does not map R into S".into(),
        ));
    }
    // Offsets of each copy inside Φ(R) and Φ(S).
    let offsets = |o: &SatakeObject| -> Result<(HashMap<(DominantWeight, usize), usize>, usize)> {
        let mut map = HashMap::new();
        let mut off = 0usize;
        for (lam, labels) in o.support() {
            let size: usize = graph.highest_weight_crystal(lam)?.len();
            for k in 0..labels.len() {
                map.insert((lam.clone(), k), off);
                off += size;
            }
        }
        Ok((map, off))
    };
    let (r_off, r_total) = offsets(r)?;
    let (s_off, _) = offsets(s)?;
    let mut out = vec![usize::MAX; r_total];
    for (lam, labels) in r.support() {
        let size: usize = graph.highest_weight_crystal(lam)?.len();
        let fmap = &f.maps[lam];
        for k in 0..labels.len() {
            let from = r_off[&(lam.clone(), k)];
            let to = s_off[&(lam.clone(), fmap[k])];
            for e in 0..size {
                out[from + e] = to + e;
            }
        }
    }
    Ok(out)
}

/// α = α²∘(α¹)⁻¹ on a simple triple, as a lookup: given (γ, i, j) in
/// ⋃ C_{ab}^γ × C_{γc}^t, produce (h, k, l) in ⋃ C_{bc}^h × C_{ah}^t.
struct AlphaCompose<'g> {
    graph: &'g BInftyGraph,
    tables: HashMap<
        (DominantWeight, DominantWeight, DominantWeight, DominantWeight),
        (HashMap<(DominantWeight, usize, usize), usize>, AlphaTable),
    >,
}

impl<'g> AlphaCompose<'g> {
    fn new(graph: &'g BInftyGraph) -> Self {
        AlphaCompose {
            graph,
            tables: HashMap::new(),
        }
    }

    fn alpha(
        &mut self,
        a: &DominantWeight,
        b: &DominantWeight,
        c: &DominantWeight,
        t: &DominantWeight,
        gamma: &DominantWeight,
        i: usize,
        j: usize,
    ) -> Result<(DominantWeight, usize, usize)> {
        let key = (a.clone(), b.clone(), c.clone(), t.clone());
        if !self.tables.contains_key(&key) {
            let t1 = alpha1(self.graph, a, b, c, t)?;
            let t2 = alpha2(self.graph, a, b, c, t)?;
            let inv: HashMap<(DominantWeight, usize, usize), usize> = t1
                .entries
                .iter()
                .enumerate()
                .map(|(k, (g, i, j))| ((g.clone(), *i, *j), k))
                .collect();
            self.tables.insert(key.clone(), (inv, t2));
        }
        let (inv, t2) = &self.tables[&key];
        let k = *inv.get(&(gamma.clone(), i, j)).ok_or_else(|| {
            Error::InternalConsistency(format!(
                "alpha1 inverse missing ({gamma}, {i}, {j}) for triple ({a},{b},{c})->{t}"
            ))
        })?;
        Ok(t2.entries[k].clone())
    }
}

/// Pentagon check on ((A(λ)⊗A(μ))⊗A(ν))⊗A(δ): the route through
/// (λ(μν))δ → λ((μν)δ) → λ(μ(νδ)) must agree with the route through
/// (λμ)(νδ), every arrow being α = α²∘(α¹)⁻¹ acting with inert
/// multiplicity labels.  The enumeration is also reconciled against the
/// arity-4 multiplicity sets.
pub fn verify_pentagon(
    graph: &BInftyGraph,
    lam: &DominantWeight,
    mu: &DominantWeight,
    nu: &DominantWeight,
    delta: &DominantWeight,
) -> Result<Verdict> {
    let weights = [lam.clone(), mu.clone(), nu.clone(), delta.clone()];
    let crystals = carve_all(graph, &weights)?;
    let (bl, bm, bn, bd) = (&crystals[0], &crystals[1], &crystals[2], &crystals[3]);

    // C-set sizes of pair products, cached.
    let mut pair_sets: HashMap<(DominantWeight, DominantWeight), BTreeMap<DominantWeight, usize>> =
        HashMap::new();
    let mut pair_sizes = |g: &BInftyGraph,
                          a: &DominantWeight,
                          b: &DominantWeight|
     -> Result<BTreeMap<DominantWeight, usize>> {
        let key = (a.clone(), b.clone());
        if let Some(s) = pair_sets.get(&key) {
            return Ok(s.clone());
        }
        let ca = g.highest_weight_crystal(a)?;
        let cb = g.highest_weight_crystal(b)?;
        let t = tensor2(&ca, &cb)?;
        let sets: BTreeMap<DominantWeight, usize> = t
            .decompose()?
            .into_iter()
            .map(|(w, els)| (w, els.len()))
            .collect();
        pair_sets.insert(key, sets.clone());
        Ok(sets)
    };

    // Arity-4 census for the consistency tie-in.
    let t4 = tensor_n(&[bl, bm, bn, bd])?;
    let mut c4: BTreeMap<DominantWeight, usize> = BTreeMap::new();
    for (_, w) in t4.highest_weight_elements() {
        *c4.entry(w).or_insert(0) += 1;
    }

    let mut compose = AlphaCompose::new(graph);
    let mut s1_census: BTreeMap<DominantWeight, usize> = BTreeMap::new();

    let lm = pair_sizes(graph, lam, mu)?;
    for (gamma1, n1) in &lm {
        let g1n = pair_sizes(graph, gamma1, nu)?;
        for (gamma2, n2) in &g1n {
            let g2d = pair_sizes(graph, gamma2, delta)?;
            for (eps, n3) in &g2d {
                *s1_census.entry(eps.clone()).or_insert(0) += n1 * n2 * n3;
                for c1 in 0..*n1 {
                    for c2 in 0..*n2 {
                        for c3 in 0..*n3 {
                            // Route via (λ(μν))δ and λ((μν)δ).
                            let (x, m, n) =
                                compose.alpha(lam, mu, nu, gamma2, gamma1, c1, c2)?;
                            let (y, p, q) = compose.alpha(lam, &x, delta, eps, gamma2, n, c3)?;
                            let (z, d2, e1) = compose.alpha(mu, nu, delta, &y, &x, m, p)?;
                            // Route via (λμ)(νδ).
                            let (zp, d2p, r) =
                                compose.alpha(gamma1, nu, delta, eps, gamma2, c2, c3)?;
                            let (yp, e1p, qp) =
                                compose.alpha(lam, mu, &zp, eps, gamma1, c1, r)?;
                            if (z.clone(), d2, y.clone(), e1, q)
                                != (zp.clone(), d2p, yp.clone(), e1p, qp)
                            {
                                return Ok(Verdict::Fail(Box::new(Counterexample {
                                    axiom: "pentagon".into(),
                                    weights: weights.to_vec(),
                                    element: format!(
                                        "(γ1={gamma1}, c1={c1}, γ2={gamma2}, c2={c2}, ε={eps}, c3={c3})"
                                    ),
                                    lhs: format!("(z={z}, {d2}, y={y}, {e1}, {q})"),
                                    rhs: format!("(z={zp}, {d2p}, y={yp}, {e1p}, {qp})"),
                                })));
                            }
                        }
                    }
                }
            }
        }
    }

    for (eps, count) in &s1_census {
        if c4.get(eps).copied().unwrap_or(0) != *count {
            return Ok(Verdict::Fail(Box::new(Counterexample {
                axiom: "pentagon-arity4".into(),
                weights: weights.to_vec(),
                element: format!("target {eps}"),
                lhs: format!("{count}"),
                rhs: format!("{}", c4.get(eps).copied().unwrap_or(0)),
            })));
        }
    }
    Ok(Verdict::Pass)
}

/// The associator compatibility square: label-and-canonicalize pairwise
/// (P_{λμ}×I then I×P_{δν}) versus label the triple and rebracket
/// (P_{λμν} then the α¹-style bijection Q).
pub fn verify_assoc_compat(
    graph: &BInftyGraph,
    lam: &DominantWeight,
    mu: &DominantWeight,
    nu: &DominantWeight,
) -> Result<Verdict> {
    let crystals = carve_all(graph, &[lam.clone(), mu.clone(), nu.clone()])?;
    let (bl, bm, bn) = (&crystals[0], &crystals[1], &crystals[2]);
    let t2 = tensor2(bl, bm)?;
    let d12 = decompose_canonical(graph, &t2)?;
    let (_, c12_index) = cset_index(&t2)?;
    let t3 = tensor_n(&[bl, bm, bn])?;
    let d3 = decompose_canonical(graph, &t3)?;
    let (_, c3_index) = cset_index(&t3)?;

    // Second pairwise stage, per δ in the first decomposition.
    struct Stage {
        t: Crystal,
        d: CanonicalStage,
    }
    struct CanonicalStage {
        comp_gamma: Vec<DominantWeight>,
        head_of_comp: Vec<usize>,
        canon_image: Vec<usize>,
        head_index: HashMap<usize, usize>,
    }
    let mut stage: BTreeMap<DominantWeight, Stage> = BTreeMap::new();
    for delta in d12.canon.keys() {
        let t = tensor2(&d12.canon[delta], bn)?;
        let d = decompose_canonical(graph, &t)?;
        let (_, head_index) = cset_index(&t)?;
        stage.insert(
            delta.clone(),
            Stage {
                t,
                d: CanonicalStage {
                    comp_gamma: d.comp_gamma,
                    head_of_comp: d.head_of_comp,
                    canon_image: d.canon_image,
                    head_index,
                },
            },
        );
    }

    // Q tables per γ, by α¹ on the triple.
    let mut q_tables: BTreeMap<DominantWeight, AlphaTable> = BTreeMap::new();
    for gamma in d3.canon.keys() {
        q_tables.insert(gamma.clone(), alpha1(graph, lam, mu, nu, gamma)?);
    }

    for e in 0..t3.len() {
        let f = t3.factors_of(e).expect("tensor element");
        // Path A: P_{λμ} × I, then I × P_{δν}.
        let xy = t2.tensor_shape().unwrap().id_of(&[f[0], f[1]]);
        let comp = t2.component_of(xy);
        let delta = d12.comp_gamma[comp].clone();
        let c_first = c12_index[&d12.head_of_comp[comp]];
        let b = d12.canon_image[xy];
        let st = &stage[&delta];
        let bz = st.t.tensor_shape().unwrap().id_of(&[b, f[2]]);
        let comp2 = st.t.component_of(bz);
        let gamma_a = st.d.comp_gamma[comp2].clone();
        let c_second = st.d.head_index[&st.d.head_of_comp[comp2]];
        let b2 = st.d.canon_image[bz];

        // Path B: P_{λμν}, then Q.
        let comp3 = t3.component_of(e);
        let gamma_b = d3.comp_gamma[comp3].clone();
        let c3 = c3_index[&d3.head_of_comp[comp3]];
        let b3 = d3.canon_image[e];
        let (delta_q, c_first_q, c_second_q) = q_tables[&gamma_b].entries[c3].clone();

        if gamma_a != gamma_b
            || delta != delta_q
            || c_first != c_first_q
            || c_second != c_second_q
            || b2 != b3
        {
            return Ok(Verdict::Fail(Box::new(Counterexample {
                axiom: "assoc-compat".into(),
                weights: vec![lam.clone(), mu.clone(), nu.clone()],
                element: t3.name(e).into(),
                lhs: format!("(δ={delta}, {c_first}, γ={gamma_a}, {c_second}, b={b2})"),
                rhs: format!("(δ={delta_q}, {c_first_q}, γ={gamma_b}, {c_second_q}, b={b3})"),
            })));
        }
    }
    Ok(Verdict::Pass)
}

/// The commutor compatibility square on all of B(λ)⊗B(μ):
/// P_{μλ} ∘ σ = (σ on C-sets × id) ∘ P_{λμ}.
pub fn verify_commutor_compat(
    graph: &BInftyGraph,
    lam: &DominantWeight,
    mu: &DominantWeight,
) -> Result<Verdict> {
    let table = sigma_star(graph, lam, mu)?;
    let d_t = decompose_canonical(graph, &table.domain)?;
    let (_, t_index) = cset_index(&table.domain)?;
    let d_tp = decompose_canonical(graph, &table.codomain)?;
    let (_, tp_index) = cset_index(&table.codomain)?;
    // σ on C-sets per ν.
    let mut c_sigma: HashMap<usize, usize> = HashMap::new();
    for (h, _, img) in &table.pairs {
        c_sigma.insert(*h, *img);
    }

    for w in 0..table.domain.len() {
        // RHS: label w, then transport the C-label through σ.
        let comp = table.domain.component_of(w);
        let head = d_t.head_of_comp[comp];
        let nu = d_t.comp_gamma[comp].clone();
        let b = d_t.canon_image[w];
        let head_image = c_sigma[&head];
        // LHS: apply σ, then label.
        let w2 = table.map[w];
        let comp2 = table.codomain.component_of(w2);
        let head2 = d_tp.head_of_comp[comp2];
        let nu2 = d_tp.comp_gamma[comp2].clone();
        let b2 = d_tp.canon_image[w2];

        if nu != nu2 || tp_index[&head2] != tp_index[&head_image] || b != b2 {
            return Ok(Verdict::Fail(Box::new(Counterexample {
                axiom: "commutor-compat".into(),
                weights: vec![lam.clone(), mu.clone()],
                element: table.domain.name(w).into(),
                lhs: format!(
                    "(ν={nu2}, head={}, b={b2})",
                    tp_index[&head2]
                ),
                rhs: format!(
                    "(ν={nu}, head={}, b={b})",
                    tp_index[&head_image]
                ),
            })));
        }
        let _ = t_index;
    }
    Ok(Verdict::Pass)
}
