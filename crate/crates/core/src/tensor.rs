//! Kashiwara tensor products of finite crystals.
//!
//! The two-factor rule used throughout:
//!
//! ```text
//! e_i(x⊗y) = x⊗e_i(y)  if φ_i(y) ≥ ε_i(x), else e_i(x)⊗y
//! f_i(x⊗y) = x⊗f_i(y)  if φ_i(y) > ε_i(x), else f_i(x)⊗y
//! ε_i(x⊗y) = max(ε_i(y), ε_i(x) − ⟨α_i^∨, wt y⟩)
//! φ_i(x⊗y) = max(φ_i(x), φ_i(y) + ⟨α_i^∨, wt x⟩)
//! ```
//!
//! with absence propagating.  Under this convention x⊗y is highest weight
//! iff y is highest weight and ε_i(x) ≤ φ_i(y) for all i, so the highest
//! weight elements of B(λ)⊗B(μ) are exactly the b⊗b_μ.
//!
//! n-fold products are computed by folding the rule left-nested over the
//! factor list; element ids are mixed-radix over the factor sizes, which
//! makes ((A⊗B)⊗C), (A⊗(B⊗C)) and the flat A⊗B⊗C literally agree element
//! by element.  [`tensor_n_right_nested`] recomputes the operators by the
//! mirror recursion and exists for the bracketing-independence checks.

use std::sync::Arc;

use crate::cartan::{RootDatum, Weight};
use crate::crystal::{Crystal, CrystalBuilder, TensorShape};
use crate::error::{Error, Result};
use crate::extint::ExtInt;

fn common_rd(factors: &[&Crystal]) -> Result<Arc<RootDatum>> {
    let rd = factors[0].rd().clone();
    if factors.iter().any(|c| *c.rd() != rd) {
        return Err(Error::RootDatumMismatch);
    }
    Ok(rd)
}

/// Prefix statistics for one index over a factor tuple:
/// `eps_pref[k]`, `phi_pref[k]`, and `pair_pref[k] = ⟨α_i^∨, wt(z_0⊗…⊗z_k)⟩`.
struct PrefixStats {
    eps: Vec<ExtInt>,
    phi: Vec<ExtInt>,
}

fn prefix_stats(factors: &[&Crystal], fid: &[usize], i: usize) -> PrefixStats {
    let n = factors.len();
    let mut eps = Vec::with_capacity(n);
    let mut phi = Vec::with_capacity(n);
    let mut pair_pref = 0i64;
    for k in 0..n {
        let ek = factors[k].eps(i, fid[k]);
        let pk = factors[k].phi(i, fid[k]);
        let pair_k = factors[k].rd().pairing(i, factors[k].wt(fid[k]));
        if k == 0 {
            eps.push(ek);
            phi.push(pk);
        } else {
            eps.push(ek.max(eps[k - 1] + (-pair_k)));
            phi.push(phi[k - 1].max(pk + pair_pref));
        }
        pair_pref += pair_k;
    }
    PrefixStats { eps, phi }
}

/// Which factor an operator acts on under left-nested bracketing:
/// scan from the rightmost factor; act at `p ≥ 1` when
/// `φ_i(z_p) cmp ε_i(prefix before p)` holds (cmp is `>` for f, `≥` for e),
/// otherwise fall through to the leftmost factor.
fn acting_factor(factors: &[&Crystal], fid: &[usize], i: usize, strict: bool) -> usize {
    let n = factors.len();
    let stats = prefix_stats(factors, fid, i);
    for p in (1..n).rev() {
        let phi_p = factors[p].phi(i, fid[p]);
        let eps_left = stats.eps[p - 1];
        let fires = if strict { phi_p > eps_left } else { phi_p >= eps_left };
        if fires {
            return p;
        }
    }
    0
}

fn apply_op(
    factors: &[&Crystal],
    shape: &TensorShape,
    fid: &[usize],
    i: usize,
    lower: bool,
) -> Option<usize> {
    let p = acting_factor(factors, fid, i, lower);
    let moved = if lower {
        factors[p].f(i, fid[p])
    } else {
        factors[p].e(i, fid[p])
    }?;
    let mut out = fid.to_vec();
    out[p] = moved;
    Some(shape.id_of(&out))
}

/// n-fold tensor product, n ≥ 1.  Elements are factor tuples in
/// mixed-radix order (leftmost factor most significant).
pub fn tensor_n(factors: &[&Crystal]) -> Result<Crystal> {
    assert!(!factors.is_empty(), "tensor_n needs at least one factor");
    let rd = common_rd(factors)?;
    let shape = TensorShape {
        sizes: factors.iter().map(|c| c.len()).collect(),
    };
    let total: usize = shape.sizes.iter().product();
    let mut builder = CrystalBuilder::new(rd.clone(), total);
    builder.set_tensor(shape.clone());
    for id in 0..total {
        let fid = shape.factors_of(id);
        let mut wt = Weight::zero(rd.rank());
        for (k, c) in factors.iter().enumerate() {
            wt = wt.add(c.wt(fid[k]));
        }
        builder.set_weight(id, wt);
        let name = fid
            .iter()
            .zip(factors)
            .map(|(&f, c)| c.name(f).to_string())
            .collect::<Vec<_>>()
            .join("⊗");
        builder.set_name(id, name);
        for i in 0..rd.rank() {
            let stats = prefix_stats(factors, &fid, i);
            let last = factors.len() - 1;
            builder.set_stats(i, id, stats.eps[last], stats.phi[last]);
            if let Some(img) = apply_op(factors, &shape, &fid, i, true) {
                builder.set_f(i, id, img);
            }
        }
    }
    let crystal = builder.finalize()?;
    // The e-scan must agree with the reversed f-edges; a divergence here
    // would mean the fold is broken, not the inputs.
    for id in 0..total {
        let fid = shape.factors_of(id);
        for i in 0..rd.rank() {
            let via_scan = apply_op(factors, &shape, &fid, i, false);
            if via_scan != crystal.e(i, id) {
                return Err(Error::InternalConsistency(format!(
                    "tensor e_{i} scan disagrees with reversed f at element {id}"
                )));
            }
        }
    }
    Ok(crystal)
}

/// Two-factor product.
pub fn tensor2(b: &Crystal, c: &Crystal) -> Result<Crystal> {
    tensor_n(&[b, c])
}

/// Same element ids as [`tensor_n`] but with the operators computed by the
/// right-nested recursion.  Exists so the verification suites can check
/// bracketing independence against an independently coded fold.
pub fn tensor_n_right_nested(factors: &[&Crystal]) -> Result<Crystal> {
    assert!(!factors.is_empty());
    let rd = common_rd(factors)?;
    let n = factors.len();
    let shape = TensorShape {
        sizes: factors.iter().map(|c| c.len()).collect(),
    };
    let total: usize = shape.sizes.iter().product();

    // Suffix statistics: suf[k] covers factors k..n-1.
    let suffix = |fid: &[usize], i: usize| -> (Vec<ExtInt>, Vec<ExtInt>) {
        let mut eps = vec![ExtInt::NegInf; n];
        let mut phi = vec![ExtInt::NegInf; n];
        let mut pair_suf = 0i64;
        for k in (0..n).rev() {
            let ek = factors[k].eps(i, fid[k]);
            let pk = factors[k].phi(i, fid[k]);
            let pair_k = factors[k].rd().pairing(i, factors[k].wt(fid[k]));
            if k == n - 1 {
                eps[k] = ek;
                phi[k] = pk;
            } else {
                // x = z_k, y = Suffix(k+1); pair_suf = ⟨α_i^∨, wt y⟩ here.
                eps[k] = eps[k + 1].max(ek + (-pair_suf));
                phi[k] = pk.max(phi[k + 1] + pair_k);
            }
            pair_suf += pair_k;
        }
        (eps, phi)
    };

    let act = |fid: &[usize], i: usize, strict: bool| -> usize {
        let (eps, phi) = suffix(fid, i);
        let _ = eps;
        for k in 0..n - 1 {
            let eps_k = factors[k].eps(i, fid[k]);
            let phi_suffix = phi[k + 1];
            let suffix_wins = if strict {
                phi_suffix > eps_k
            } else {
                phi_suffix >= eps_k
            };
            if !suffix_wins {
                return k;
            }
        }
        n - 1
    };

    let mut builder = CrystalBuilder::new(rd.clone(), total);
    builder.set_tensor(shape.clone());
    for id in 0..total {
        let fid = shape.factors_of(id);
        let mut wt = Weight::zero(rd.rank());
        for (k, c) in factors.iter().enumerate() {
            wt = wt.add(c.wt(fid[k]));
        }
        builder.set_weight(id, wt);
        builder.set_name(id, format!("r{id}"));
        for i in 0..rd.rank() {
            let (eps, phi) = suffix(&fid, i);
            builder.set_stats(i, id, eps[0], phi[0]);
            let k = act(&fid, i, true);
            if let Some(moved) = factors[k].f(i, fid[k]) {
                let mut out = fid.clone();
                out[k] = moved;
                builder.set_f(i, id, shape.id_of(&out));
            }
        }
    }
    builder.finalize()
}
