//! Stirling numbers of the second kind and their generalizations counting
//! coarser symmetric diagrams, with a brute-force counting oracle.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::gram::{Family, RowConfig};
use crate::partitions::{SetPartition, UnionFind};
use crate::z2diagrams::{kind_of, swap, BlockKind};

/// Parameters of `B^{s1,s2}_{2r1+r2, 2p1+p2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StirlingParams {
    pub s1: usize,
    pub s2: usize,
    pub r1: usize,
    pub r2: usize,
    pub p1: usize,
    pub p2: usize,
}

impl StirlingParams {
    pub fn new(s1: usize, s2: usize, r1: usize, r2: usize, p1: usize, p2: usize) -> Self {
        StirlingParams { s1, s2, r1, r2, p1, p2 }
    }

    /// `p1 ≤ r1`, `r1 - p1 ≥ p2 - r2` and strictly fewer edges after coarsening.
    pub fn in_window(&self) -> bool {
        self.p1 <= self.r1
            && self.r1 + self.r2 >= self.p1 + self.p2
            && 2 * self.p1 + self.p2 < 2 * self.r1 + self.r2
    }

    pub fn is_diagonal(&self) -> bool {
        (self.p1, self.p2) == (self.r1, self.r2)
    }
}

/// Classical `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j - 1] + BigInt::from(j) * &row[j];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

fn choose(n: usize, r: usize) -> BigInt {
    if r > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(r))
    }
}

fn pow(base: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// `B^{s1,s2}_{2r1+r2, 2p1+p2}`: 1 on the diagonal, 0 outside the window.
pub fn b_z2(p: &StirlingParams) -> BigInt {
    if p.is_diagonal() {
        return BigInt::one();
    }
    if !p.in_window() {
        return BigInt::zero();
    }
    let StirlingParams { s1, s2, r1, r2, p1, p2 } = *p;
    let mut total = BigInt::zero();
    for i in p1..=r1 {
        let outer = choose(r1, i) * pow(2, i - p1) * stirling2(i, p1);
        if outer.is_zero() {
            continue;
        }
        let mut middle = BigInt::zero();
        for j in 0..=r1 - i {
            // S(l+j, p2) vanishes for l < p2 - j, which supplies the lower bound on l
            let inner: BigInt = (0..=r2)
                .map(|l| choose(r2, l) * pow(s2, r2 - l) * stirling2(l + j, p2))
                .sum();
            middle += choose(r1 - i, j) * pow(2 * s1 + s2, r1 - i - j) * inner;
        }
        total += outer * middle;
    }
    total
}

/// `B^s_{r,p} = Σ_{i=p}^{r} C(r,i) s^{r-i} S(i,p)`.
pub fn b_partition(s: usize, r: usize, p: usize) -> BigInt {
    if p > r {
        return BigInt::zero();
    }
    (p..=r).map(|i| choose(r, i) * pow(s, r - i) * stirling2(i, p)).sum()
}

/// Every symmetric row configuration coarser than `d` with the same through classes.
///
/// Each horizontal block that represents its swap orbit picks a block of `d` to
/// merge into, or stays put; its conjugate follows the mirrored choice. The
/// resulting merges form a forest rooted at through blocks, so through classes
/// never fuse.
pub fn coarsenings(d: &RowConfig) -> Vec<RowConfig> {
    let row = d.row();
    let blocks = row.blocks();
    let family = d.family();
    let conj = |i: usize| -> usize {
        match family {
            Family::Partition => i,
            Family::Z2 => row.block_index_of(swap(blocks[i][0])).unwrap(),
        }
    };
    let movers: Vec<usize> = (0..blocks.len())
        .filter(|&i| !d.through()[i])
        .filter(|&i| family == Family::Partition || kind_of(&blocks[i]) == BlockKind::Z2 || blocks[i][0].is_multiple_of(2))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut choice: Vec<Option<usize>> = vec![None; movers.len()];
    loop {
        let mut uf = UnionFind::new(row.ground_size());
        for b in blocks {
            uf.union_block(b);
        }
        for (&m, c) in movers.iter().zip(&choice) {
            if let Some(target) = *c {
                uf.union(blocks[m][0], blocks[target][0]);
                uf.union(blocks[conj(m)][0], blocks[conj(target)][0]);
            }
        }
        let merged = SetPartition::from_union_find(&mut uf);
        let labels = merged.labels();
        let mut through = vec![false; merged.num_blocks()];
        for (b, &t) in blocks.iter().zip(d.through()) {
            if t {
                through[labels[b[0]]] = true;
            }
        }
        if seen.insert((merged.clone(), through.clone())) {
            if let Ok(cfg) = RowConfig::new(family, d.k(), merged, through) {
                if cfg.is_coarser_than(d) {
                    out.push(cfg);
                }
            }
        }
        // odometer over choices: None, Some(0), .., Some(nb-1)
        let mut pos = 0;
        loop {
            if pos == movers.len() {
                return out;
            }
            choice[pos] = match choice[pos] {
                None => Some(0),
                Some(t) if t + 1 < blocks.len() => Some(t + 1),
                Some(_) => None,
            };
            if choice[pos].is_some() {
                break;
            }
            pos += 1;
        }
    }
}

/// Number of coarser configurations of `d` with `p1` e-pair and `p2` Z2
/// horizontal edges (partition rows use `p1` and ignore `p2`).
pub fn count_coarser_bruteforce(d: &RowConfig, p1: usize, p2: usize) -> usize {
    coarsenings(d)
        .iter()
        .filter(|c| {
            let st = c.stats();
            (st.r1, st.r2) == (p1, p2)
        })
        .count()
}

/// Row and column labels `(r1, r2)` of the reference table, in display order.
pub const TABLE_LABELS: [(usize, usize); 8] =
    [(1, 2), (2, 0), (0, 3), (1, 1), (1, 0), (0, 2), (0, 1), (0, 0)];

/// `B^{s1,s2}` over [`TABLE_LABELS`]; rows are `(r1, r2)`, columns `(p1, p2)`.
pub fn table_z2(s1: usize, s2: usize) -> Vec<Vec<BigInt>> {
    TABLE_LABELS
        .iter()
        .map(|&(r1, r2)| {
            TABLE_LABELS
                .iter()
                .map(|&(p1, p2)| b_z2(&StirlingParams::new(s1, s2, r1, r2, p1, p2)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::PartitionTuple;

    fn b(s1: usize, s2: usize, r1: usize, r2: usize, p1: usize, p2: usize) -> BigInt {
        b_z2(&StirlingParams::new(s1, s2, r1, r2, p1, p2))
    }

    #[test]
    fn classical_values() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(5, 0), BigInt::zero());
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(6, 6), BigInt::one());
        assert_eq!(stirling2(10, 3), BigInt::from(9330));
    }

    #[test]
    fn small_generalized_values() {
        for s1 in 0..4 {
            for s2 in 0..4 {
                assert_eq!(b(s1, s2, 1, 0, 0, 0), BigInt::from(2 * s1 + s2));
                assert_eq!(b(s1, s2, 1, 1, 0, 1), BigInt::from(2 * s1 + 2 * s2 + 1));
                assert_eq!(b(s1, s2, 1, 2, 2, 0), BigInt::zero());
                assert_eq!(b(s1, s2, 2, 1, 2, 1), BigInt::one());
            }
        }
        assert_eq!(b_partition(3, 2, 2), BigInt::one());
        assert_eq!(b_partition(3, 1, 0), BigInt::from(3));
        assert_eq!(b_partition(2, 2, 1), BigInt::from(5));
        assert_eq!(b_partition(1, 2, 1), BigInt::from(3));
    }

    #[test]
    fn partition_oracle_small() {
        let alpha = PartitionTuple::new(vec![vec![1], vec![1, 1]]).unwrap();
        let d = RowConfig::standard(Family::Partition, &alpha, 3).unwrap();
        assert_eq!(count_coarser_bruteforce(&d, 1, 0), 3);
        assert_eq!(count_coarser_bruteforce(&d, 0, 0), 1);
        assert_eq!(count_coarser_bruteforce(&d, 2, 0), 1);
    }

    #[test]
    fn z2_oracle_matches_formula_on_standard_rows() {
        for s1 in 0..3 {
            for s2 in 0..3 {
                for (r1, r2) in [(1, 0), (0, 2), (1, 1), (2, 0), (0, 3)] {
                    let alpha = PartitionTuple::new(vec![
                        vec![1; s1],
                        vec![1; s2],
                        vec![1; r1],
                        vec![1; r2],
                    ])
                    .unwrap();
                    let d = RowConfig::standard(Family::Z2, &alpha, s1 + s2 + r1 + r2).unwrap();
                    for p1 in 0..=r1 + 1 {
                        for p2 in 0..=r2 + 2 * r1 {
                            let want = b(s1, s2, r1, r2, p1, p2);
                            let got = BigInt::from(count_coarser_bruteforce(&d, p1, p2));
                            assert_eq!(got, want, "s=({s1},{s2}) r=({r1},{r2}) p=({p1},{p2})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn table_shape() {
        let t = table_z2(1, 0);
        assert_eq!(t.len(), 8);
        for (i, row) in t.iter().enumerate() {
            assert_eq!(row[i], BigInt::one());
        }
        assert_eq!(t[4][7], BigInt::from(2));
    }
}
