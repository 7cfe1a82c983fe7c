//! Canonical set partitions of `{0..n-1}`.
//!
//! Blocks are sorted internally and ordered by their minimal element, so two
//! partitions are equal exactly when their block lists are equal.

use std::fmt;

use crate::error::{Error, Result};

/// Disjoint-set forest with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        let mut root = a;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[a] != root {
            let next = self.parent[a];
            self.parent[a] = root;
            a = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }

    /// Links every element of `block` to its first element.
    pub fn union_block(&mut self, block: &[usize]) {
        if let Some((&first, rest)) = block.split_first() {
            for &v in rest {
                self.union(first, v);
            }
        }
    }

    /// Components in canonical order: sorted blocks ordered by minimum.
    pub fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut slot = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = self.find(v);
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(v);
        }
        blocks
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// The finest partition of `{0..n-1}`.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Union-find closure of a relation given as pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for &(i, j) in pairs {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
            }
            uf.union(i, j);
        }
        Ok(Self::from_union_find(&mut uf))
    }

    /// Builds from explicit blocks, which must cover `{0..n-1}` exactly once.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self::canonical(n, blocks))
    }

    /// Block labels `labels[v]`; equal labels mean the same block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut uf = UnionFind::new(n);
        let mut first = std::collections::HashMap::new();
        for (v, &l) in labels.iter().enumerate() {
            match first.get(&l) {
                Some(&u) => uf.union(u, v),
                None => {
                    first.insert(l, v);
                }
            }
        }
        Self::from_union_find(&mut uf)
    }

    pub fn from_union_find(uf: &mut UnionFind) -> Self {
        SetPartition {
            n: uf.len(),
            blocks: uf.components(),
        }
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `labels[v]` is the index of the block containing `v`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                labels[v] = i;
            }
        }
        labels
    }

    pub fn block_index_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// Smallest partition coarser than both.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        self.check_size(other)?;
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            uf.union_block(b);
        }
        Ok(Self::from_union_find(&mut uf))
    }

    /// True iff every block of `finer` lies inside a block of `self`.
    pub fn is_coarser(&self, finer: &SetPartition) -> Result<bool> {
        self.check_size(finer)?;
        let labels = self.labels();
        Ok(finer
            .blocks
            .iter()
            .all(|b| b.iter().all(|&v| labels[v] == labels[b[0]])))
    }

    /// Image under a permutation of the ground set.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| f(v)).collect())
            .collect();
        Self::canonical(self.n, blocks)
    }

    fn check_size(&self, other: &SetPartition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// All partitions of `{0..n-1}` in restricted-growth-string order.
    pub fn all(n: usize) -> AllPartitions {
        AllPartitions {
            rgs: vec![0; n],
            maxes: vec![0; n],
            done: false,
        }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("}")
    }
}

/// Iterator over restricted growth strings.
///
/// `maxes[i]` holds `max(rgs[0..i])`, which bounds the next admissible value.
pub struct AllPartitions {
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl Iterator for AllPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_labels(&self.rgs);
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.maxes[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(self.rgs[j - 1]);
                }
                break;
            }
        }
        Some(out)
    }
}
