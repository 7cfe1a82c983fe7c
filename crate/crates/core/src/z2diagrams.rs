//! Swap-stable diagrams on `(k ∪ k′) × {e, g}`.
//!
//! Vertex `(i, e)` of the top row is index `2(i-1)`, `(i, g)` is `2(i-1)+1`;
//! the bottom row is shifted by `2k`. The e/g swap is therefore `v ^ 1`.

use std::fmt;

use serde::Serialize;

use crate::diagrams::{compose, propagating, PartitionDiagram};
use crate::error::{Error, Result};
use crate::partitions::{SetPartition, UnionFind};

#[inline]
pub(crate) fn swap(v: usize) -> usize {
    v ^ 1
}

/// Whether a block is one of a swap-conjugate pair or is swap-fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockKind {
    EPair,
    Z2,
}

pub(crate) fn kind_of(block: &[usize]) -> BlockKind {
    if block.iter().all(|&v| block.binary_search(&swap(v)).is_ok()) {
        BlockKind::Z2
    } else {
        BlockKind::EPair
    }
}

pub(crate) fn is_swap_stable(part: &SetPartition) -> bool {
    part.map(swap) == *part
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Z2Stats {
    pub s1: usize,
    pub s2: usize,
    pub r1: usize,
    pub r2: usize,
    pub r1p: usize,
    pub r2p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Diagram {
    k: usize,
    part: SetPartition,
}

impl Z2Diagram {
    pub fn new(k: usize, part: SetPartition) -> Result<Self> {
        if part.ground_size() != 4 * k {
            return Err(Error::SizeMismatch {
                left: part.ground_size(),
                right: 4 * k,
            });
        }
        if !is_swap_stable(&part) {
            return Err(Error::NotSwapStable);
        }
        Ok(Z2Diagram { k, part })
    }

    pub fn identity(k: usize) -> Self {
        let blocks = (0..2 * k).map(|v| vec![v, v + 2 * k]).collect();
        Z2Diagram {
            k,
            part: SetPartition::from_blocks(4 * k, blocks).unwrap(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn partition(&self) -> &SetPartition {
        &self.part
    }

    pub fn classify_block(&self, block: &[usize]) -> Result<BlockKind> {
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        if !self.part.blocks().contains(&sorted) {
            return Err(Error::ForeignBlock);
        }
        Ok(kind_of(&sorted))
    }

    fn is_through(&self, block: &[usize]) -> bool {
        block[0] < 2 * self.k && *block.last().unwrap() >= 2 * self.k
    }

    pub fn stats(&self) -> Z2Stats {
        let row = 2 * self.k;
        let mut st = Z2Stats::default();
        // e-pair counts are accumulated per block and halved at the end
        for b in self.part.blocks() {
            let kind = kind_of(b);
            let slot = if self.is_through(b) {
                match kind {
                    BlockKind::EPair => &mut st.s1,
                    BlockKind::Z2 => &mut st.s2,
                }
            } else if b[0] < row {
                match kind {
                    BlockKind::EPair => &mut st.r1,
                    BlockKind::Z2 => &mut st.r2,
                }
            } else {
                match kind {
                    BlockKind::EPair => &mut st.r1p,
                    BlockKind::Z2 => &mut st.r2p,
                }
            };
            *slot += 1;
        }
        st.s1 /= 2;
        st.r1 /= 2;
        st.r1p /= 2;
        st
    }

    /// Propagating number of the diagram viewed on `2k + 2k` vertices.
    pub fn propagating_number(&self) -> usize {
        propagating(2 * self.k, &self.part)
    }

    /// Collapses each `{(i,e),(i,g)}` fibre to a single vertex.
    pub fn project(&self) -> PartitionDiagram {
        let k = self.k;
        let pos = |v: usize| if v < 2 * k { v / 2 } else { k + (v - 2 * k) / 2 };
        let mut uf = UnionFind::new(2 * k);
        for b in self.part.blocks() {
            let image: Vec<usize> = b.iter().map(|&v| pos(v)).collect();
            uf.union_block(&image);
        }
        PartitionDiagram::new(k, SetPartition::from_union_find(&mut uf)).unwrap()
    }

    /// Restrictions to the top and bottom rows, each on `2k` vertices.
    pub fn halves(&self) -> (SetPartition, SetPartition) {
        let row = 2 * self.k;
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for b in self.part.blocks() {
            let t: Vec<usize> = b.iter().copied().filter(|&v| v < row).collect();
            let u: Vec<usize> = b.iter().filter(|&&v| v >= row).map(|&v| v - row).collect();
            if !t.is_empty() {
                top.push(t);
            }
            if !u.is_empty() {
                bottom.push(u);
            }
        }
        (
            SetPartition::from_blocks(row, top).unwrap(),
            SetPartition::from_blocks(row, bottom).unwrap(),
        )
    }

    pub fn multiply(&self, other: &Z2Diagram) -> Result<(Z2Diagram, usize)> {
        if self.k != other.k {
            return Err(Error::KMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let (part, loops) = compose(2 * self.k, &self.part, &other.part);
        Ok((Z2Diagram { k: self.k, part }, loops))
    }

    /// Membership in the signed partition algebra basis.
    pub fn is_signed_member(&self) -> bool {
        let k = self.k;
        let st = self.stats();
        if st.s1 == k {
            return true;
        }
        let top = st.s1 + st.s2 + st.r1 + st.r2;
        let bottom = st.s1 + st.s2 + st.r1p + st.r2p;
        (top < k && bottom < k)
            || (top <= k && bottom < k && st.r1 != 0)
            || (top < k && bottom <= k && st.r1p != 0)
            || (top <= k && bottom <= k && st.r1 != 0 && st.r1p != 0)
    }

    fn token(&self, v: usize) -> String {
        let row = 2 * self.k;
        let (w, prime) = if v < row { (v, "") } else { (v - row, "′") };
        let tag = if w % 2 == 0 { 'e' } else { 'g' };
        format!("{}{}{}", w / 2 + 1, prime, tag)
    }

    pub fn token_blocks(&self) -> Vec<Vec<String>> {
        self.part
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&v| self.token(v)).collect())
            .collect()
    }
}

impl Serialize for Z2Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.token_blocks().serialize(s)
    }
}

impl fmt::Display for Z2Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.token_blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{{{}}}", b.join(","))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: usize, blocks: &[&[usize]]) -> Result<Z2Diagram> {
        let part = SetPartition::from_blocks(4 * k, blocks.iter().map(|b| b.to_vec()).collect())?;
        Z2Diagram::new(k, part)
    }

    #[test]
    fn identity_stats_and_projection() {
        for k in 1..4 {
            let id = Z2Diagram::identity(k);
            let st = id.stats();
            assert_eq!((st.s1, st.s2, st.r1, st.r2, st.r1p, st.r2p), (k, 0, 0, 0, 0, 0));
            assert_eq!(id.project(), PartitionDiagram::identity(k));
            assert!(id.is_signed_member());
            for b in id.partition().blocks() {
                assert_eq!(id.classify_block(b).unwrap(), BlockKind::EPair);
            }
            let (top, bottom) = id.halves();
            assert_eq!(top, SetPartition::discrete(2 * k));
            assert_eq!(top, bottom);
        }
    }

    #[test]
    fn singleton_pairs() {
        let d = Z2Diagram::new(2, SetPartition::discrete(8)).unwrap();
        let st = d.stats();
        assert_eq!((st.s1, st.s2, st.r1, st.r2, st.r1p, st.r2p), (0, 0, 2, 0, 2, 0));
    }

    #[test]
    fn classification() {
        // k = 2: {1e,1g} Z2, {2e},{2g} e-pair, bottoms singletons
        let d = z(2, &[&[0, 1], &[2], &[3], &[4], &[5], &[6], &[7]]).unwrap();
        assert_eq!(d.classify_block(&[0, 1]).unwrap(), BlockKind::Z2);
        assert_eq!(d.classify_block(&[2]).unwrap(), BlockKind::EPair);
        assert!(d.classify_block(&[0]).is_err());
        let st = d.stats();
        assert_eq!((st.r1, st.r2, st.r1p), (1, 1, 2));
    }

    #[test]
    fn rejects_unstable() {
        assert_eq!(z(1, &[&[0, 2], &[1], &[3]]), Err(Error::NotSwapStable));
    }

    #[test]
    fn z2_through_projects() {
        let d = z(1, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(d.project().to_string(), "[{1,1′}]");
        assert_eq!(d.stats().s2, 1);
        assert_eq!(d.to_string(), "[{1e,1g,1′e,1′g}]");
    }

    #[test]
    fn excluded_shape_is_not_signed() {
        // k = 3: one e-pair through class on position 1, Z2 singletons on 2 and 3
        let d = z(
            3,
            &[&[0, 6], &[1, 7], &[2, 3], &[4, 5], &[8, 9], &[10, 11]],
        )
        .unwrap();
        let st = d.stats();
        assert_eq!((st.s1, st.s2, st.r1, st.r2), (1, 0, 0, 2));
        assert!(!d.is_signed_member());
    }
}
