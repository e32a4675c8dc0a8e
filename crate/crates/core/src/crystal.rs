//! The finite-crystal contract and the structural operations every model
//! shares: highest-weight extraction, decomposition into components, and
//! the unique isomorphism between components with matching highest weight.
//!
//! A [`Crystal`] is a frozen table: element set with stable integer ids,
//! partial maps e_i/f_i, total wt, and string statistics ε_i, φ_i.
//! Construction goes through [`CrystalBuilder`], which checks the contract
//! (e/f mutually inverse, f_i lowers the weight by α_i, φ − ε equals the
//! coroot pairing where finite) and precomputes components, highest weight
//! elements, and canonical f-words, so a finished crystal is immutable and
//! safe to share.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cartan::{DominantWeight, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::extint::ExtInt;

/// Shape metadata for tensor-product crystals: the factor sizes, most
/// significant first.  Element ids are mixed-radix over these sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorShape {
    pub sizes: Vec<usize>,
}

impl TensorShape {
    /// Decode an element id into per-factor element ids.
    pub fn factors_of(&self, mut id: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for k in (0..self.sizes.len()).rev() {
            out[k] = id % self.sizes[k];
            id /= self.sizes[k];
        }
        out
    }

    pub fn id_of(&self, factors: &[usize]) -> usize {
        factors
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&f, &s)| acc * s + f)
    }
}

#[derive(Debug)]
pub struct Crystal {
    rd: Arc<RootDatum>,
    wts: Vec<Weight>,
    e_ops: Vec<Vec<Option<usize>>>,
    f_ops: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<ExtInt>>,
    phi: Vec<Vec<ExtInt>>,
    names: Vec<String>,
    /// Provenance ids (B(∞) node ids for carved crystals).
    origin: Option<Vec<usize>>,
    tensor: Option<TensorShape>,
    hw: Vec<usize>,
    comp_of: Vec<usize>,
    comp_count: usize,
    /// Highest weight elements per component; usize::MAX marks a component
    /// without a unique one.
    comp_head: Vec<usize>,
    fwords: Vec<Vec<usize>>,
}

pub struct CrystalBuilder {
    rd: Arc<RootDatum>,
    wts: Vec<Weight>,
    names: Vec<String>,
    e_ops: Vec<Vec<Option<usize>>>,
    f_ops: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<ExtInt>>,
    phi: Vec<Vec<ExtInt>>,
    origin: Option<Vec<usize>>,
    tensor: Option<TensorShape>,
}

impl CrystalBuilder {
    pub fn new(rd: Arc<RootDatum>, len: usize) -> CrystalBuilder {
        let rank = rd.rank();
        CrystalBuilder {
            rd,
            wts: vec![Weight::zero(rank); len],
            names: vec![String::new(); len],
            e_ops: vec![vec![None; len]; rank],
            f_ops: vec![vec![None; len]; rank],
            eps: vec![vec![ExtInt::Finite(0); len]; rank],
            phi: vec![vec![ExtInt::Finite(0); len]; rank],
            origin: None,
            tensor: None,
        }
    }

    pub fn set_weight(&mut self, e: usize, wt: Weight) {
        self.wts[e] = wt;
    }

    pub fn set_name(&mut self, e: usize, name: String) {
        self.names[e] = name;
    }

    pub fn set_f(&mut self, i: usize, from: usize, to: usize) {
        self.f_ops[i][from] = Some(to);
        self.e_ops[i][to] = Some(from);
    }

    pub fn set_stats(&mut self, i: usize, e: usize, eps: ExtInt, phi: ExtInt) {
        self.eps[i][e] = eps;
        self.phi[i][e] = phi;
    }

    pub fn set_origin(&mut self, origin: Vec<usize>) {
        self.origin = Some(origin);
    }

    pub fn set_tensor(&mut self, shape: TensorShape) {
        self.tensor = Some(shape);
    }

    pub fn finalize(self) -> Result<Crystal> {
        let len = self.wts.len();
        let rank = self.rd.rank();
        // Contract checks.
        for i in 0..rank {
            let alpha = self.rd.simple_root(i);
            for e in 0..len {
                if let Some(img) = self.f_ops[i][e] {
                    if self.e_ops[i][img] != Some(e) {
                        return Err(Error::MalformedCrystal(format!(
                            "e_{i}(f_{i}({e})) != {e}"
                        )));
                    }
                    if self.wts[img] != self.wts[e].sub(&alpha) {
                        return Err(Error::MalformedCrystal(format!(
                            "wt(f_{i}({e})) is not wt({e}) - alpha_{i}"
                        )));
                    }
                }
                if let Some(img) = self.e_ops[i][e] {
                    if self.f_ops[i][img] != Some(e) {
                        return Err(Error::MalformedCrystal(format!(
                            "f_{i}(e_{i}({e})) != {e}"
                        )));
                    }
                }
                if let (ExtInt::Finite(p), ExtInt::Finite(q)) = (self.phi[i][e], self.eps[i][e]) {
                    if p - q != self.rd.pairing(i, &self.wts[e]) {
                        return Err(Error::MalformedCrystal(format!(
                            "phi_{i}({e}) - eps_{i}({e}) != <alpha_{i}^v, wt>"
                        )));
                    }
                }
            }
        }

        // Connected components over e/f edges.
        let mut comp_of = vec![usize::MAX; len];
        let mut comp_count = 0;
        for start in 0..len {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let c = comp_count;
            comp_count += 1;
            let mut stack = vec![start];
            comp_of[start] = c;
            while let Some(x) = stack.pop() {
                for i in 0..rank {
                    for nb in [self.e_ops[i][x], self.f_ops[i][x]].into_iter().flatten() {
                        if comp_of[nb] == usize::MAX {
                            comp_of[nb] = c;
                            stack.push(nb);
                        }
                    }
                }
            }
        }

        let hw: Vec<usize> = (0..len)
            .filter(|&e| (0..rank).all(|i| self.e_ops[i][e].is_none()))
            .collect();
        let mut heads = vec![Vec::new(); comp_count];
        for &h in &hw {
            heads[comp_of[h]].push(h);
        }
        let comp_head: Vec<usize> = heads
            .iter()
            .map(|hs| if hs.len() == 1 { hs[0] } else { usize::MAX })
            .collect();

        // Canonical f-words: BFS from the component head (fallback: least
        // element id) visiting indices in ascending order.  Stored in
        // application order, first-applied first.
        let mut fwords = vec![Vec::new(); len];
        let mut root_of_comp = vec![usize::MAX; comp_count];
        for c in 0..comp_count {
            root_of_comp[c] = if comp_head[c] != usize::MAX {
                comp_head[c]
            } else {
                (0..len).find(|&e| comp_of[e] == c).unwrap()
            };
        }
        let mut seen = vec![false; len];
        for &root in &root_of_comp {
            seen[root] = true;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for i in 0..rank {
                    if let Some(y) = self.f_ops[i][x] {
                        if !seen[y] {
                            seen[y] = true;
                            let mut w = fwords[x].clone();
                            w.push(i);
                            fwords[y] = w;
                            queue.push_back(y);
                        }
                    }
                }
            }
        }

        Ok(Crystal {
            rd: self.rd,
            wts: self.wts,
            e_ops: self.e_ops,
            f_ops: self.f_ops,
            eps: self.eps,
            phi: self.phi,
            names: self.names,
            origin: self.origin,
            tensor: self.tensor,
            hw,
            comp_of,
            comp_count,
            comp_head,
            fwords,
        })
    }
}

impl Crystal {
    pub fn rd(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn len(&self) -> usize {
        self.wts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wts.is_empty()
    }

    pub fn wt(&self, e: usize) -> &Weight {
        &self.wts[e]
    }

    pub fn e(&self, i: usize, x: usize) -> Option<usize> {
        self.e_ops[i][x]
    }

    pub fn f(&self, i: usize, x: usize) -> Option<usize> {
        self.f_ops[i][x]
    }

    pub fn eps(&self, i: usize, x: usize) -> ExtInt {
        self.eps[i][x]
    }

    pub fn phi(&self, i: usize, x: usize) -> ExtInt {
        self.phi[i][x]
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    /// Canonical f-word from the component head, first-applied first.
    pub fn fword(&self, e: usize) -> &[usize] {
        &self.fwords[e]
    }

    pub fn origin(&self, e: usize) -> Option<usize> {
        self.origin.as_ref().map(|o| o[e])
    }

    pub fn tensor_shape(&self) -> Option<&TensorShape> {
        self.tensor.as_ref()
    }

    /// Constituent factor ids of a tensor element.
    pub fn factors_of(&self, e: usize) -> Option<Vec<usize>> {
        self.tensor.as_ref().map(|t| t.factors_of(e))
    }

    pub fn is_hw(&self, e: usize) -> bool {
        (0..self.rd.rank()).all(|i| self.e_ops[i][e].is_none())
    }

    pub fn component_of(&self, e: usize) -> usize {
        self.comp_of[e]
    }

    pub fn component_count(&self) -> usize {
        self.comp_count
    }

    /// The unique highest weight element of a component, if unique.
    pub fn component_head(&self, comp: usize) -> Option<usize> {
        let h = self.comp_head[comp];
        (h != usize::MAX).then_some(h)
    }

    /// All elements with every e_i undefined, with their weights.
    /// Weights are dominant for every crystal in the category; callers
    /// relying on that use the `DominantWeight` in the pair.
    pub fn highest_weight_elements(&self) -> Vec<(usize, DominantWeight)> {
        self.hw
            .iter()
            .map(|&e| {
                let w = DominantWeight::new(self.wts[e].clone()).unwrap_or_else(|_| {
                    panic!("highest weight element {e} has non-dominant weight")
                });
                (e, w)
            })
            .collect()
    }

    /// Group highest weight elements by weight.  Errors with
    /// `MalformedCrystal` if some component does not have exactly one.
    pub fn decompose(&self) -> Result<BTreeMap<DominantWeight, Vec<usize>>> {
        for c in 0..self.comp_count {
            if self.comp_head[c] == usize::MAX {
                return Err(Error::MalformedCrystal(format!(
                    "component {c} does not have exactly one highest weight element"
                )));
            }
        }
        let mut out: BTreeMap<DominantWeight, Vec<usize>> = BTreeMap::new();
        for (e, w) in self.highest_weight_elements() {
            out.entry(w).or_default().push(e);
        }
        Ok(out)
    }

    /// The elements of one component, ascending.
    pub fn component_elements(&self, comp: usize) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.comp_of[e] == comp).collect()
    }
}

/// The unique isomorphism between the component of `b` in `bcr` and the
/// component of `c` in `ccr` sending `b` to `c`, built by parallel BFS
/// along f-edges.  Weights, statistics, and the e/f patterns are checked
/// at every matched pair; any divergence is a `StructureMismatch`.
pub fn component_isomorphism(
    bcr: &Crystal,
    b: usize,
    ccr: &Crystal,
    c: usize,
) -> Result<HashMap<usize, usize>> {
    if bcr.rd() != ccr.rd() {
        return Err(Error::RootDatumMismatch);
    }
    if bcr.wt(b) != ccr.wt(c) {
        return Err(Error::StructureMismatch(format!(
            "roots of the traversal have different weights {} vs {}",
            bcr.wt(b),
            ccr.wt(c)
        )));
    }
    let rank = bcr.rd().rank();
    let mut map = HashMap::new();
    map.insert(b, c);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((b, c));
    while let Some((x, y)) = queue.pop_front() {
        if bcr.wt(x) != ccr.wt(y) {
            return Err(Error::StructureMismatch(format!(
                "weight mismatch at {x} -> {y}"
            )));
        }
        for i in 0..rank {
            if bcr.eps(i, x) != ccr.eps(i, y) || bcr.phi(i, x) != ccr.phi(i, y) {
                return Err(Error::StructureMismatch(format!(
                    "statistics mismatch at {x} -> {y}, index {i}"
                )));
            }
            if bcr.e(i, x).is_some() != ccr.e(i, y).is_some() {
                return Err(Error::StructureMismatch(format!(
                    "e_{i} defined on one side only at {x} -> {y}"
                )));
            }
            match (bcr.f(i, x), ccr.f(i, y)) {
                (None, None) => {}
                (Some(fx), Some(fy)) => match map.get(&fx) {
                    Some(&prev) if prev != fy => {
                        return Err(Error::StructureMismatch(format!(
                            "traversals disagree at f_{i}({x})"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        map.insert(fx, fy);
                        queue.push_back((fx, fy));
                    }
                },
                _ => {
                    return Err(Error::StructureMismatch(format!(
                        "f_{i} defined on one side only at {x} -> {y}"
                    )));
                }
            }
        }
    }
    Ok(map)
}

/// Disjoint union of tagged crystals; element ids are offset in order.
pub fn disjoint_union(parts: &[(String, &Crystal)]) -> Result<Crystal> {
    if parts.is_empty() {
        return Err(Error::MalformedCrystal("empty disjoint union".into()));
    }
    let rd = parts[0].1.rd().clone();
    if parts.iter().any(|(_, c)| *c.rd() != rd) {
        return Err(Error::RootDatumMismatch);
    }
    let total: usize = parts.iter().map(|(_, c)| c.len()).sum();
    let mut builder = CrystalBuilder::new(rd.clone(), total);
    let mut offset = 0;
    for (tag, c) in parts {
        for e in 0..c.len() {
            builder.set_weight(offset + e, c.wt(e).clone());
            builder.set_name(offset + e, format!("{tag}:{}", c.name(e)));
            for i in 0..rd.rank() {
                builder.set_stats(i, offset + e, c.eps(i, e), c.phi(i, e));
                if let Some(img) = c.f(i, e) {
                    builder.set_f(i, offset + e, offset + img);
                }
            }
        }
        offset += c.len();
    }
    builder.finalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    /// Hand-built sl2 chain crystal B(m).
    pub(crate) fn sl2_chain(m: i64) -> Crystal {
        let rd = RootDatum::new(Family::A, 1).unwrap();
        let n = (m + 1) as usize;
        let mut b = CrystalBuilder::new(rd, n);
        for k in 0..n {
            let ki = k as i64;
            b.set_weight(k, Weight(vec![m - 2 * ki]));
            b.set_name(k, format!("v{k}"));
            b.set_stats(0, k, ExtInt::Finite(ki), ExtInt::Finite(m - ki));
            if k + 1 < n {
                b.set_f(0, k, k + 1);
            }
        }
        b.finalize().unwrap()
    }

    #[test]
    fn chain_contract() {
        let c = sl2_chain(3);
        assert_eq!(c.len(), 4);
        assert_eq!(c.component_count(), 1);
        let hw = c.highest_weight_elements();
        assert_eq!(hw.len(), 1);
        assert_eq!(hw[0].0, 0);
        assert_eq!(hw[0].1.coords(), &[3]);
        assert_eq!(c.fword(2), &[0, 0]);
    }

    #[test]
    fn contract_violations_rejected() {
        let rd = RootDatum::new(Family::A, 1).unwrap();
        let mut b = CrystalBuilder::new(rd, 2);
        b.set_weight(0, Weight(vec![1]));
        b.set_weight(1, Weight(vec![1])); // should be -1
        b.set_f(0, 0, 1);
        assert!(matches!(b.finalize(), Err(Error::MalformedCrystal(_))));
    }

    #[test]
    fn component_isomorphism_identity_and_mismatch() {
        let c = sl2_chain(2);
        let d = sl2_chain(2);
        let map = component_isomorphism(&c, 0, &d, 0).unwrap();
        for k in 0..3 {
            assert_eq!(map[&k], k);
        }
        let e = sl2_chain(4);
        assert!(matches!(
            component_isomorphism(&c, 0, &e, 0),
            Err(Error::StructureMismatch(_))
        ));
    }

    #[test]
    fn union_decomposes() {
        let c = sl2_chain(1);
        let d = sl2_chain(3);
        let u = disjoint_union(&[("a".into(), &c), ("b".into(), &d)]).unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(u.component_count(), 2);
        let dec = u.decompose().unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(
            dec[&DominantWeight::from_coords(vec![1]).unwrap()].len(),
            1
        );
    }
}
