//! Partition diagrams on `k` top and `k` bottom vertices.
//!
//! Top vertex `i` (1-based) is index `i-1`; bottom vertex `i′` is `k+i-1`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{SetPartition, UnionFind};

/// Stacks `a` over `b`, each a partition of `2*row` vertices.
///
/// Returns the outer partition and the number of components confined to the
/// middle row.
pub(crate) fn compose(row: usize, a: &SetPartition, b: &SetPartition) -> (SetPartition, usize) {
    // 0..row: top of a, row..2row: middle, 2row..3row: bottom of b
    let mut uf = UnionFind::new(3 * row);
    for block in a.blocks() {
        uf.union_block(block);
    }
    for block in b.blocks() {
        let shifted: Vec<usize> = block.iter().map(|&v| v + row).collect();
        uf.union_block(&shifted);
    }
    let mut loops = 0;
    let mut outer = Vec::new();
    for comp in uf.components() {
        let kept: Vec<usize> = comp
            .iter()
            .filter(|&&v| v < row || v >= 2 * row)
            .map(|&v| if v < row { v } else { v - row })
            .collect();
        if kept.is_empty() {
            loops += 1;
        } else {
            outer.push(kept);
        }
    }
    let part = SetPartition::from_blocks(2 * row, outer).expect("composition covers both rows");
    (part, loops)
}

pub(crate) fn propagating(row: usize, part: &SetPartition) -> usize {
    part.blocks()
        .iter()
        .filter(|b| b[0] < row && *b.last().unwrap() >= row)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionDiagram {
    k: usize,
    part: SetPartition,
}

impl PartitionDiagram {
    pub fn new(k: usize, part: SetPartition) -> Result<Self> {
        if part.ground_size() != 2 * k {
            return Err(Error::SizeMismatch {
                left: part.ground_size(),
                right: 2 * k,
            });
        }
        Ok(PartitionDiagram { k, part })
    }

    pub fn identity(k: usize) -> Self {
        let blocks = (0..k).map(|i| vec![i, k + i]).collect();
        PartitionDiagram {
            k,
            part: SetPartition::from_blocks(2 * k, blocks).unwrap(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn partition(&self) -> &SetPartition {
        &self.part
    }

    pub fn multiply(&self, other: &PartitionDiagram) -> Result<(PartitionDiagram, usize)> {
        if self.k != other.k {
            return Err(Error::KMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let (part, loops) = compose(self.k, &self.part, &other.part);
        Ok((PartitionDiagram { k: self.k, part }, loops))
    }

    pub fn propagating_number(&self) -> usize {
        propagating(self.k, &self.part)
    }

    /// Blocks as signed 1-based vertex labels: `i` for top, `-i` for bottom.
    pub fn signed_blocks(&self) -> Vec<Vec<i64>> {
        let k = self.k;
        self.part
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&v| if v < k { v as i64 + 1 } else { -((v - k) as i64 + 1) })
                    .collect()
            })
            .collect()
    }
}

impl Serialize for PartitionDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.signed_blocks().serialize(s)
    }
}

impl fmt::Display for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k;
        f.write_str("[")?;
        for (i, b) in self.part.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str("{")?;
            for (j, &v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                if v < k {
                    write!(f, "{}", v + 1)?;
                } else {
                    write!(f, "{}′", v - k + 1)?;
                }
            }
            f.write_str("}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(k: usize, blocks: &[&[usize]]) -> PartitionDiagram {
        let part = SetPartition::from_blocks(2 * k, blocks.iter().map(|b| b.to_vec()).collect());
        PartitionDiagram::new(k, part.unwrap()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let x = d(2, &[&[0, 3], &[1], &[2]]);
        let id = PartitionDiagram::identity(2);
        assert_eq!(id.multiply(&x).unwrap(), (x.clone(), 0));
        assert_eq!(x.multiply(&id).unwrap(), (x.clone(), 0));
        assert_eq!(id.propagating_number(), 2);
    }

    #[test]
    fn p1_squares_to_loop() {
        let p1 = d(1, &[&[0], &[1]]);
        assert_eq!(p1.multiply(&p1).unwrap(), (p1.clone(), 1));
        assert_eq!(p1.propagating_number(), 0);
    }

    #[test]
    fn text_forms() {
        let x = d(2, &[&[0, 3], &[1], &[2]]);
        assert_eq!(x.to_string(), "[{1,2′}|{2}|{1′}]");
        assert_eq!(serde_json::to_string(&x).unwrap(), "[[1,-2],[2],[-1]]");
    }

    #[test]
    fn k_mismatch() {
        let a = PartitionDiagram::identity(1);
        let b = PartitionDiagram::identity(2);
        assert!(a.multiply(&b).is_err());
    }
}
