//! Semistandard-tableaux crystals for type A, used as an oracle against
//! the B(∞)-carved models, plus a Littlewood–Richardson multiplicity
//! oracle built on top of them.
//!
//! Reading-word convention: rows are read bottom to top, each row left to
//! right, and the word is tensored left to right under the module's
//! tensor rule.  For index i the letters i+1 (as "a") and i+2 (as "b",
//! 1-based entries) are bracket-cancelled wherever a b precedes an a;
//! f_i moves the last surviving a up, e_i moves the first surviving b
//! down.  The convention is certified, not assumed: the crystal must be
//! connected of Weyl dimension with a unique highest weight element (the
//! Yamanouchi filling) and isomorphic to the carved B(λ).

use std::collections::HashMap;
use std::sync::Arc;

use crate::cartan::{DominantWeight, Family, RootDatum, Weight};
use crate::crystal::{Crystal, CrystalBuilder};
use crate::error::Result;
use crate::extint::ExtInt;
use crate::tensor::tensor2;

/// A semistandard tableau: rows weakly increase, columns strictly
/// increase; entries in 1..=max_entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    /// Content vector (counts of each entry), then fundamental
    /// coordinates λ_i = #i − #(i+1).
    pub fn weight(&self, rank: usize) -> Weight {
        let mut counts = vec![0i64; rank + 1];
        for row in &self.rows {
            for &x in row {
                counts[(x - 1) as usize] += 1;
            }
        }
        Weight((0..rank).map(|i| counts[i] - counts[i + 1]).collect())
    }

    pub fn display(&self) -> String {
        if self.rows.is_empty() {
            return "[]".into();
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        format!("[{}]", rows.join("|"))
    }

    /// Reading word as (row, col) cell positions, bottom row first.
    fn reading_order(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in (0..self.rows.len()).rev() {
            for c in 0..self.rows[r].len() {
                out.push((r, c));
            }
        }
        out
    }
}

/// p_k = Σ_{j≥k} λ_j; the partition whose tableaux realize B(λ).
pub fn partition_from_weight(lam: &DominantWeight, rank: usize) -> Vec<usize> {
    let mut parts: Vec<usize> = (0..rank)
        .map(|k| lam.coords()[k..].iter().sum::<i64>() as usize)
        .collect();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    parts
}

/// All semistandard tableaux of the given shape with entries ≤ max_entry,
/// in the deterministic cell-filling order.
pub fn enumerate_ssyt(shape: &[usize], max_entry: u8) -> Vec<Tableau> {
    let shape: Vec<usize> = shape.iter().copied().take_while(|&p| p > 0).collect();
    if shape.is_empty() {
        return vec![Tableau { rows: Vec::new() }];
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = shape.iter().map(|&len| Vec::with_capacity(len)).collect();
    fn fill(
        shape: &[usize],
        max_entry: u8,
        rows: &mut Vec<Vec<u8>>,
        r: usize,
        c: usize,
        out: &mut Vec<Tableau>,
    ) {
        if r == shape.len() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        let (nr, nc) = if c + 1 < shape[r] { (r, c + 1) } else { (r + 1, 0) };
        let min_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let min_col = if r > 0 && rows[r - 1].len() > c {
            rows[r - 1][c] + 1
        } else {
            1
        };
        for x in min_row.max(min_col)..=max_entry {
            rows[r].push(x);
            fill(shape, max_entry, rows, nr, nc, out);
            rows[r].pop();
        }
    }
    fill(&shape, max_entry, &mut rows, 0, 0, &mut out);
    out
}

/// Bracket-cancel letters i+1 and i+2 (1-based) in the reading word.
/// Returns (surviving a-positions, surviving b-positions).
fn signature(word: &[u8], positions: &[(usize, usize)], i: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let a = (i + 1) as u8;
    let b = (i + 2) as u8;
    let mut open_b: Vec<(usize, usize)> = Vec::new();
    let mut free_a: Vec<(usize, usize)> = Vec::new();
    for (k, &x) in word.iter().enumerate() {
        if x == b {
            open_b.push(positions[k]);
        } else if x == a {
            if open_b.pop().is_none() {
                free_a.push(positions[k]);
            }
        }
    }
    (free_a, open_b)
}

/// The crystal of semistandard tableaux of shape `partition_from_weight(λ)`.
pub fn ssyt_crystal(rd: &Arc<RootDatum>, lam: &DominantWeight) -> Result<Crystal> {
    assert_eq!(rd.family(), Family::A, "tableau crystals are a type-A oracle");
    let rank = rd.rank();
    let shape = partition_from_weight(lam, rank);
    let max_entry = (rank + 1) as u8;
    let tableaux = enumerate_ssyt(&shape, max_entry);
    let index: HashMap<Tableau, usize> = tableaux
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), k))
        .collect();

    let mut builder = CrystalBuilder::new(rd.clone(), tableaux.len());
    for (k, t) in tableaux.iter().enumerate() {
        builder.set_weight(k, t.weight(rank));
        builder.set_name(k, t.display());
        let positions = t.reading_order();
        let word: Vec<u8> = positions.iter().map(|&(r, c)| t.rows[r][c]).collect();
        for i in 0..rank {
            let (free_a, open_b) = signature(&word, &positions, i);
            builder.set_stats(
                i,
                k,
                ExtInt::Finite(open_b.len() as i64),
                ExtInt::Finite(free_a.len() as i64),
            );
            if let Some(&(r, c)) = free_a.last() {
                let mut rows = t.rows.clone();
                rows[r][c] += 1;
                let img = Tableau { rows };
                let img_id = *index
                    .get(&img)
                    .expect("f_i image of a semistandard tableau is semistandard");
                builder.set_f(i, k, img_id);
            }
        }
    }
    builder.finalize()
}

/// Littlewood–Richardson multiplicity: the number of highest weight
/// elements of weight ν in B(λ)⊗B(μ), computed entirely on the tableau
/// side.
pub fn lr_oracle(
    rd: &Arc<RootDatum>,
    lam: &DominantWeight,
    mu: &DominantWeight,
    nu: &DominantWeight,
) -> Result<u64> {
    let bl = ssyt_crystal(rd, lam)?;
    let bm = ssyt_crystal(rd, mu)?;
    let t = tensor2(&bl, &bm)?;
    Ok(t.highest_weight_elements()
        .into_iter()
        .filter(|(_, w)| w == nu)
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binfty::BInftyGraph;
    use crate::crystal::component_isomorphism;

    fn a(n: usize) -> Arc<RootDatum> {
        RootDatum::new(Family::A, n).unwrap()
    }

    fn dw(coords: &[i64]) -> DominantWeight {
        DominantWeight::from_coords(coords.to_vec()).unwrap()
    }

    #[test]
    fn partitions_from_weights() {
        assert_eq!(partition_from_weight(&dw(&[1, 1]), 2), vec![2, 1]);
        assert_eq!(partition_from_weight(&dw(&[3]), 1), vec![3]);
        assert_eq!(partition_from_weight(&dw(&[0, 0]), 2), Vec::<usize>::new());
        assert_eq!(partition_from_weight(&dw(&[0, 2, 0]), 3), vec![2, 2]);
    }

    #[test]
    fn ssyt_enumeration_counts() {
        assert_eq!(enumerate_ssyt(&[1], 3).len(), 3);
        assert_eq!(enumerate_ssyt(&[2, 1], 3).len(), 8);
        assert_eq!(enumerate_ssyt(&[1, 1, 1], 3).len(), 1);
        assert_eq!(enumerate_ssyt(&[], 3).len(), 1);
    }

    #[test]
    fn crystal_sizes_and_yamanouchi() {
        let rd = a(2);
        let b = ssyt_crystal(&rd, &dw(&[1, 0])).unwrap();
        assert_eq!(b.len(), 3);
        let b = ssyt_crystal(&rd, &dw(&[1, 1])).unwrap();
        assert_eq!(b.len(), 8);
        assert_eq!(b.component_count(), 1);
        let hw = b.highest_weight_elements();
        assert_eq!(hw.len(), 1);
        assert_eq!(hw[0].1.coords(), &[1, 1]);
        // Yamanouchi: row k filled with k.
        assert_eq!(b.name(hw[0].0), "[11|2]");
        let b = ssyt_crystal(&rd, &dw(&[0, 0])).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn sizes_match_weyl_dims() {
        for (n, lams) in [
            (1usize, vec![vec![0], vec![1], vec![4]]),
            (2, vec![vec![1, 0], vec![1, 1], vec![2, 1], vec![0, 3]]),
            (3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]),
        ] {
            let rd = a(n);
            for coords in lams {
                let lam = dw(&coords);
                let b = ssyt_crystal(&rd, &lam).unwrap();
                let dim: u64 = rd.weyl_dim(&lam).try_into().unwrap();
                assert_eq!(b.len() as u64, dim, "A{n} {lam}");
                assert_eq!(b.component_count(), 1, "A{n} {lam} connected");
            }
        }
    }

    #[test]
    fn isomorphic_to_carved_model() {
        let rd = a(2);
        let g = BInftyGraph::generate(rd.clone(), 4).unwrap();
        for coords in [vec![1, 0], vec![1, 1], vec![0, 2]] {
            let lam = dw(&coords);
            let tab = ssyt_crystal(&rd, &lam).unwrap();
            let carved = g.highest_weight_crystal(&lam).unwrap();
            let (tab_hw, _) = tab.highest_weight_elements()[0];
            let (carved_hw, _) = carved.highest_weight_elements()[0];
            let map = component_isomorphism(&tab, tab_hw, &carved, carved_hw).unwrap();
            assert_eq!(map.len(), tab.len());
        }
    }

    #[test]
    fn lr_oracle_values() {
        let rd1 = a(1);
        assert_eq!(lr_oracle(&rd1, &dw(&[1]), &dw(&[1]), &dw(&[2])).unwrap(), 1);
        assert_eq!(lr_oracle(&rd1, &dw(&[1]), &dw(&[1]), &dw(&[0])).unwrap(), 1);
        assert_eq!(lr_oracle(&rd1, &dw(&[1]), &dw(&[1]), &dw(&[4])).unwrap(), 0);
        let rd2 = a(2);
        assert_eq!(
            lr_oracle(&rd2, &dw(&[1, 1]), &dw(&[1, 1]), &dw(&[1, 1])).unwrap(),
            2
        );
    }

    #[test]
    fn lr_symmetries() {
        let rd = a(2);
        let lams = [dw(&[1, 0]), dw(&[1, 1]), dw(&[2, 0])];
        let nus = rd.dominant_weights_up_to_height(num_rational::Rational64::from_integer(4));
        for l in &lams {
            for m in &lams {
                for n in &nus {
                    let lmn = lr_oracle(&rd, l, m, n).unwrap();
                    assert_eq!(lmn, lr_oracle(&rd, m, l, n).unwrap());
                    assert_eq!(
                        lmn,
                        lr_oracle(
                            &rd,
                            &rd.star_weight(l),
                            &rd.star_weight(m),
                            &rd.star_weight(n)
                        )
                        .unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn string_statistics_are_chain_lengths() {
        let rd = a(2);
        let b = ssyt_crystal(&rd, &dw(&[2, 1])).unwrap();
        for e in 0..b.len() {
            for i in 0..2 {
                let mut k = 0;
                let mut cur = e;
                while let Some(up) = b.e(i, cur) {
                    cur = up;
                    k += 1;
                }
                assert_eq!(ExtInt::Finite(k), b.eps(i, e));
                let mut k = 0;
                let mut cur = e;
                while let Some(down) = b.f(i, cur) {
                    cur = down;
                    k += 1;
                }
                assert_eq!(ExtInt::Finite(k), b.phi(i, e));
            }
        }
    }
}
