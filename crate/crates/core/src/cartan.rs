//! Finite-type root-system core.
//!
//! A [`RootDatum`] bundles a Cartan matrix of one of the finite families
//! A–G together with the derived data every other module consumes: positive
//! roots with their coroots, a reduced word for the longest Weyl element,
//! the `*`-involution on weights and on Dynkin indices, and the two
//! independent numerical oracles (Weyl dimension, Kostant partition) used to
//! certify the crystal models.
//!
//! Conventions, fixed once:
//! - `cartan[i][j] = ⟨α_i^∨, α_j⟩` (pairing of coroot `i` with root `j`);
//!   for G2 this means `cartan[0][1] = -1`, `cartan[1][0] = -3`.
//! - Weights are stored in fundamental-weight coordinates,
//!   `coords[i] = ⟨α_i^∨, λ⟩`.
//! - Simple indices are 0-based internally; Bourbaki numbering (1-based)
//!   appears only in the CLI.
//! - All arithmetic is exact (integers and `Rational64`); no floats.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The seven finite Cartan families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A weight with all coordinates ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight(Weight);

impl DominantWeight {
    pub fn new(w: Weight) -> Result<DominantWeight> {
        if w.is_dominant() {
            Ok(DominantWeight(w))
        } else {
            Err(Error::MalformedCrystal(format!("weight {w} is not dominant")))
        }
    }

    pub fn from_coords(coords: Vec<i64>) -> Result<DominantWeight> {
        DominantWeight::new(Weight(coords))
    }

    pub fn zero(rank: usize) -> DominantWeight {
        DominantWeight(Weight::zero(rank))
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }

    pub fn coords(&self) -> &[i64] {
        &self.0 .0
    }

    pub fn is_zero(&self) -> bool {
        self.0 .0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &DominantWeight) -> DominantWeight {
        DominantWeight(self.0.add(&other.0))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A positive root together with its coroot, both in simple-root /
/// simple-coroot coordinates.  `⟨λ, α^∨⟩ = Σ_j coroot[j]·λ_j` for λ in
/// fundamental coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

/// Finite-type Cartan datum with precomputed Weyl-group utilities.
#[derive(Debug)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    inverse: Vec<Vec<Rational64>>,
    positive_roots: Vec<PositiveRoot>,
    w0_word: Vec<usize>,
    star: Vec<usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}
impl Eq for RootDatum {}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn standard_cartan(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = || Error::InvalidType {
        family: family.letter(),
        rank,
    };
    let valid = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !valid {
        return Err(invalid());
    }

    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let bond = |i: usize, j: usize, aij: i64, aji: i64, a: &mut Vec<Vec<i64>>| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                bond(i, i + 1, -1, -1, &mut a);
            }
        }
        Family::B => {
            // α_{n} short: the -2 sits in the last row.
            for i in 0..n - 1 {
                bond(i, i + 1, -1, -1, &mut a);
            }
            a[n - 1][n - 2] = -2;
        }
        Family::C => {
            // transpose of B_n
            for i in 0..n - 1 {
                bond(i, i + 1, -1, -1, &mut a);
            }
            a[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                bond(i, i + 1, -1, -1, &mut a);
            }
            bond(n - 3, n - 1, -1, -1, &mut a);
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4.
            let chain = [0usize, 2, 3, 4, 5, 6, 7];
            for w in chain[..n - 1].windows(2) {
                bond(w[0], w[1], -1, -1, &mut a);
            }
            bond(1, 3, -1, -1, &mut a);
        }
        Family::F => {
            bond(0, 1, -1, -1, &mut a);
            bond(2, 3, -1, -1, &mut a);
            a[1][2] = -1;
            a[2][1] = -2;
        }
        Family::G => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    Ok(a)
}

fn invert_exact(a: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rational64::from_integer(a[i][j])
                    } else if j - n == i {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("finite-type Cartan matrix is invertible");
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col];
                for j in 0..2 * n {
                    let v = m[col][j];
                    m[r][j] -= factor * v;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl RootDatum {
    /// Build the standard root datum for a finite-type pair.
    pub fn new(family: Family, rank: usize) -> Result<Arc<RootDatum>> {
        let cartan = standard_cartan(family, rank)?;
        let inverse = invert_exact(&cartan);
        let mut rd = RootDatum {
            family,
            rank,
            cartan,
            inverse,
            positive_roots: Vec::new(),
            w0_word: Vec::new(),
            star: Vec::new(),
        };
        rd.positive_roots = rd.compute_positive_roots();
        rd.w0_word = {
            let anti = Weight(vec![-1; rank]);
            rd.dominant_representative(&anti).1
        };
        rd.star = (0..rank)
            .map(|i| {
                let mut coords = vec![0i64; rank];
                coords[i] = 1;
                let omega = DominantWeight(Weight(coords));
                let starred = rd.star_weight(&omega);
                starred
                    .coords()
                    .iter()
                    .position(|&c| c == 1)
                    .expect("star of a fundamental weight is fundamental")
            })
            .collect();
        Ok(Arc::new(rd))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `⟨α_i^∨, λ⟩` for λ in fundamental coordinates.
    pub fn pairing(&self, i: usize, w: &Weight) -> i64 {
        w.0[i]
    }

    /// The simple root α_i in fundamental coordinates (column i of the
    /// Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    /// s_i(w) = w − w_i · α_i.
    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Weight {
        let wi = w.0[i];
        Weight(
            (0..self.rank)
                .map(|k| w.0[k] - wi * self.cartan[k][i])
                .collect(),
        )
    }

    /// Exact coordinates of `w` in the simple-root basis.
    pub fn root_coordinates(&self, w: &Weight) -> Vec<Rational64> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.inverse[i][j] * Rational64::from_integer(w.0[j]))
                    .sum()
            })
            .collect()
    }

    /// Σ c_i where w = Σ c_i α_i.
    pub fn height(&self, w: &Weight) -> Rational64 {
        self.root_coordinates(w).into_iter().sum()
    }

    /// The W-orbit representative in the dominant chamber, together with
    /// the word of simple reflections applied (in order) to reach it.
    /// Tie-break: the least index with a negative coordinate.
    pub fn dominant_representative(&self, w: &Weight) -> (DominantWeight, Vec<usize>) {
        let mut v = w.clone();
        let mut word = Vec::new();
        loop {
            match v.0.iter().position(|&c| c < 0) {
                None => return (DominantWeight(v), word),
                Some(i) => {
                    v = self.simple_reflection(i, &v);
                    word.push(i);
                }
            }
        }
    }

    /// λ* = −w₀λ, computed as the dominant representative of −λ.
    pub fn star_weight(&self, lam: &DominantWeight) -> DominantWeight {
        self.dominant_representative(&lam.weight().neg()).0
    }

    /// The diagram involution i ↦ i* with ω_i* = (ω_i)*.
    pub fn star_index(&self, i: usize) -> usize {
        self.star[i]
    }

    /// w₀ applied to a weight.
    pub fn w0_action(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        for &i in &self.w0_word {
            v = self.simple_reflection(i, &v);
        }
        v
    }

    fn compute_positive_roots(&self) -> Vec<PositiveRoot> {
        let n = self.rank;
        let mut roots: Vec<PositiveRoot> = (0..n)
            .map(|i| {
                let mut root = vec![0i64; n];
                let mut coroot = vec![0i64; n];
                root[i] = 1;
                coroot[i] = 1;
                PositiveRoot { root, coroot }
            })
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> =
            roots.iter().map(|r| r.root.clone()).collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for i in 0..n {
                    // s_i on the root side and on the coroot side.
                    let pair_root: i64 = (0..n).map(|j| r.root[j] * self.cartan[i][j]).sum();
                    let mut root = r.root.clone();
                    root[i] -= pair_root;
                    if root.iter().any(|&c| c < 0) {
                        continue;
                    }
                    if seen.contains(&root) {
                        continue;
                    }
                    let pair_coroot: i64 = (0..n).map(|j| r.coroot[j] * self.cartan[j][i]).sum();
                    let mut coroot = r.coroot.clone();
                    coroot[i] -= pair_coroot;
                    seen.insert(root.clone());
                    let pr = PositiveRoot { root, coroot };
                    roots.push(pr.clone());
                    next.push(pr);
                }
            }
            frontier = next;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.root.iter().sum();
            let hb: i64 = b.root.iter().sum();
            ha.cmp(&hb).then_with(|| a.root.cmp(&b.root))
        });
        roots
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// A reduced word for w₀, recorded by sweeping (−1,…,−1) to the
    /// dominant chamber.  Its length equals the number of positive roots.
    pub fn reduced_word_w0(&self) -> &[usize] {
        &self.w0_word
    }

    /// Weyl dimension: ∏_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩, exactly.
    pub fn weyl_dim(&self, lam: &DominantWeight) -> BigUint {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for pr in &self.positive_roots {
            let top: i64 = pr
                .coroot
                .iter()
                .zip(lam.coords())
                .map(|(&e, &l)| e * (l + 1))
                .sum();
            let bot: i64 = pr.coroot.iter().sum();
            num *= BigUint::from(top as u64);
            den *= BigUint::from(bot as u64);
        }
        debug_assert!((&num % &den).is_zero());
        num / den
    }

    /// Number of multisets of positive roots summing to β (simple-root
    /// coordinates), by direct enumeration.
    pub fn kostant_partition(&self, beta: &[i64]) -> u64 {
        assert_eq!(beta.len(), self.rank);
        if beta.iter().any(|&c| c < 0) {
            return 0;
        }
        fn count(roots: &[PositiveRoot], idx: usize, beta: &mut Vec<i64>) -> u64 {
            if beta.iter().all(|&c| c == 0) {
                return 1;
            }
            if idx == roots.len() {
                return 0;
            }
            let mut total = count(roots, idx + 1, beta);
            let r = &roots[idx].root;
            let mut times = 0;
            loop {
                let fits = beta.iter().zip(r).all(|(&b, &c)| b >= c);
                if !fits {
                    break;
                }
                for (b, &c) in beta.iter_mut().zip(r) {
                    *b -= c;
                }
                times += 1;
                total += count(roots, idx + 1, beta);
            }
            for (b, &c) in beta.iter_mut().zip(r) {
                *b += c * times;
            }
            total
        }
        let mut b = beta.to_vec();
        count(&self.positive_roots, 0, &mut b)
    }

    /// Heights of the fundamental weights, as exact rationals.
    pub fn fundamental_heights(&self) -> Vec<Rational64> {
        (0..self.rank)
            .map(|i| {
                let mut coords = vec![0i64; self.rank];
                coords[i] = 1;
                self.height(&Weight(coords))
            })
            .collect()
    }

    /// All dominant weights λ with height(λ) ≤ bound, in lexicographic
    /// coordinate order.
    pub fn dominant_weights_up_to_height(&self, bound: Rational64) -> Vec<DominantWeight> {
        let heights = self.fundamental_heights();
        let mut out = Vec::new();
        let mut coords = vec![0i64; self.rank];
        fn rec(
            heights: &[Rational64],
            coords: &mut Vec<i64>,
            i: usize,
            left: Rational64,
            out: &mut Vec<DominantWeight>,
        ) {
            if i == heights.len() {
                out.push(DominantWeight(Weight(coords.clone())));
                return;
            }
            let mut k = 0i64;
            loop {
                let used = heights[i] * Rational64::from_integer(k);
                if used > left {
                    break;
                }
                coords[i] = k;
                rec(heights, coords, i + 1, left - used, out);
                k += 1;
            }
            coords[i] = 0;
        }
        if !bound.is_negative() {
            rec(&heights, &mut coords, 0, bound, &mut out);
        }
        out.sort();
        out
    }

    /// height(λ − w₀λ) as an integer: the depth a truncated B(∞) model
    /// needs before B(λ) can be carved out of it.
    pub fn depth_for(&self, lam: &DominantWeight) -> usize {
        let span = lam.weight().add(self.star_weight(lam).weight());
        let h = self.height(&span);
        debug_assert!(h.is_integer());
        h.to_integer() as usize
    }

    /// Depth needed by tensor constructions on B(λ₁)⊗…⊗B(λₙ).
    pub fn depth_for_all(&self, lams: &[DominantWeight]) -> usize {
        let mut s = DominantWeight::zero(self.rank);
        for l in lams {
            s = s.add(l);
        }
        self.depth_for(&s)
    }

    /// Finite-type check: the Cartan matrix symmetrizes to a positive
    /// definite form.  Used by the invariant suite.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank;
        // Find d_i > 0 with d_i a_ij = d_j a_ji by propagation.
        let mut d = vec![Rational64::zero(); n];
        d[0] = Rational64::one();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    if i != j && self.cartan[i][j] != 0 && !d[i].is_zero() && d[j].is_zero() {
                        d[j] = d[i] * Rational64::from_integer(self.cartan[i][j])
                            / Rational64::from_integer(self.cartan[j][i]);
                        changed = true;
                    }
                }
            }
        }
        if d.iter().any(|x| !x.is_positive()) {
            return false;
        }
        // Leading principal minors of (d_i a_ij) must be positive.
        let mut m: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| d[i] * Rational64::from_integer(self.cartan[i][j]))
                    .collect()
            })
            .collect();
        if (0..n).any(|i| (0..n).any(|j| m[i][j] != m[j][i])) {
            return false;
        }
        // Gaussian elimination; all pivots must stay positive.
        for col in 0..n {
            if !m[col][col].is_positive() {
                return false;
            }
            for r in col + 1..n {
                let f = m[r][col] / m[col][col];
                for j in col..n {
                    let v = m[col][j];
                    m[r][j] -= f * v;
                }
            }
        }
        true
    }
}
