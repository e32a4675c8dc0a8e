//! Outcome types for the axiom verifiers, and the crystal-isomorphism
//! checker they share.  A failed axiom is data (a counterexample), not an
//! error: errors are reserved for depth shortfalls and internal bugs.

use crate::cartan::DominantWeight;
use crate::crystal::Crystal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub axiom: String,
    pub weights: Vec<DominantWeight>,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Box<Counterexample>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(c) => Some(c),
        }
    }
}

/// Check that `map` is a crystal isomorphism from `a` to `b`: a bijection
/// commuting with every e_i and f_i and preserving wt, ε_i, φ_i.
pub fn check_crystal_iso(a: &Crystal, b: &Crystal, map: &[usize]) -> Result<(), String> {
    if a.len() != b.len() || map.len() != a.len() {
        return Err(format!(
            "size mismatch: |a| = {}, |b| = {}, |map| = {}",
            a.len(),
            b.len(),
            map.len()
        ));
    }
    let mut hit = vec![false; b.len()];
    for (x, &y) in map.iter().enumerate() {
        if y >= b.len() || hit[y] {
            return Err(format!("map is not a bijection at {x} -> {y}"));
        }
        hit[y] = true;
        if a.wt(x) != b.wt(y) {
            return Err(format!("weight not preserved at {x}"));
        }
        for i in 0..a.rd().rank() {
            if a.eps(i, x) != b.eps(i, y) || a.phi(i, x) != b.phi(i, y) {
                return Err(format!("statistics not preserved at {x}, index {i}"));
            }
            let fa = a.f(i, x).map(|z| map[z]);
            if fa != b.f(i, y) {
                return Err(format!("f_{i} does not commute at {x}"));
            }
            let ea = a.e(i, x).map(|z| map[z]);
            if ea != b.e(i, y) {
                return Err(format!("e_{i} does not commute at {x}"));
            }
        }
    }
    Ok(())
}
