//! Coarsening poset, the unitriangular similarity `G̃ = Tᵀ G T`, block
//! extraction and closed-form predictions for the reduced blocks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gram::{gram_exponent, Algebra, Family, GramMatrix, JEntry, Params};
use crate::polynomials::{phi_partition, phi_z2, Poly};
use crate::z2diagrams::BlockKind;

/// `leq[u][v]` holds when basis element `u` is coarser than `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseningPoset {
    pub leq: Vec<Vec<bool>>,
}

impl CoarseningPoset {
    pub fn new(basis: &[JEntry]) -> Self {
        let leq = basis
            .par_iter()
            .map(|u| basis.iter().map(|v| u.config.is_coarser_than(&v.config)).collect())
            .collect();
        CoarseningPoset { leq }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    /// Inverse of the zeta matrix, by back substitution on the upper unitriangular order.
    pub fn mobius(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut t = vec![vec![0i64; n]; n];
        for j in 0..n {
            t[j][j] = 1;
            for i in (0..j).rev() {
                t[i][j] = -(i + 1..=j).filter(|&m| self.leq[i][m]).map(|m| t[m][j]).sum::<i64>();
            }
        }
        t
    }

    /// Strict coarsenings never come later in the basis order.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.len()).all(|u| (0..u).all(|v| !self.leq[u][v]))
    }
}

/// Unique finest common coarsening of `u` and `v`, or `None` when the product
/// loses through classes or no unique such element exists in the basis.
pub fn join_in_family(gram: &GramMatrix, poset: &CoarseningPoset, u: usize, v: usize) -> Option<usize> {
    gram.exponents[u][v]?;
    let common: Vec<usize> = (0..poset.len()).filter(|&w| poset.leq[w][u] && poset.leq[w][v]).collect();
    let minima: Vec<usize> =
        common.iter().copied().filter(|&w| common.iter().all(|&z| poset.leq[z][w])).collect();
    match minima.as_slice() {
        [w] => Some(*w),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockId {
    Cell { r1: usize, r2: usize },
    Rho,
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockId::Cell { r1, r2 } => write!(f, "A({r1},{r2})"),
            BlockId::Rho => f.write_str("rho"),
        }
    }
}

/// Signed-algebra keys reduced in their own block: every part size 1, the row
/// fully used and at least one e-pair horizontal edge.
pub fn is_rho(params: &Params, e: &JEntry) -> bool {
    params.algebra == Algebra::Signed
        && e.key.alpha.all_ones()
        && params.s1 + params.s2 + e.key.r1 + e.key.r2 == params.k
        && e.key.r1 >= 1
}

pub fn block_of(params: &Params, e: &JEntry) -> BlockId {
    if is_rho(params, e) {
        BlockId::Rho
    } else {
        BlockId::Cell { r1: e.key.r1, r2: e.key.r2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Block {
    pub id: BlockId,
    pub indices: Vec<usize>,
    pub matrix: Vec<Vec<Poly>>,
    pub predicted: Vec<Vec<Poly>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diff {
    pub block: String,
    pub row: usize,
    pub col: usize,
    pub got: Poly,
    pub predicted: Poly,
    /// Set for entries whose prediction is a per-entry check only.
    pub informative: bool,
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub params: Params,
    pub transform: Vec<Vec<i64>>,
    pub reduced: Vec<Vec<Poly>>,
    pub blocks: Vec<Block>,
    pub diffs: Vec<Diff>,
}

/// `(t1, t2)` when `u` and `v` share a row partition and edge counts, counting
/// e-pairs and Z2 classes that propagate in `u` but not in `v`.
pub fn swap_pattern(u: &JEntry, v: &JEntry) -> Option<(usize, usize)> {
    if u.config.row() != v.config.row() || u.key.cell() != v.key.cell() {
        return None;
    }
    let (mut e, mut z) = (0, 0);
    for (i, kind) in u.config.kinds().iter().enumerate() {
        if u.config.through()[i] && !v.config.through()[i] {
            match kind {
                BlockKind::EPair => e += 1,
                BlockKind::Z2 => z += 1,
            }
        }
    }
    Some(match u.config.family() {
        Family::Partition => (e, 0),
        Family::Z2 => (e / 2, z),
    })
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn pattern_value(params: &Params, r1: usize, r2: usize, t1: usize, t2: usize) -> Poly {
    let sign = if (t1 + t2).is_multiple_of(2) { 1 } else { -1 };
    let (s1, s2) = (params.s1 as i64, params.s2 as i64);
    let (r1, r2, t1i, t2i) = (r1 as i64, r2 as i64, t1 as i64, t2 as i64);
    let (scale, phi) = match params.algebra {
        Algebra::Partition => (sign * factorial(t1), phi_partition(s1 + t1i, r1 - t1i)),
        _ => (
            sign * (1i64 << t1) * factorial(t1) * factorial(t2),
            phi_z2(s1 + t1i, s2 + t2i, r1 - t1i, r2 - t2i),
        ),
    };
    phi.scalar_mul(&BigInt::from(scale).into())
}

/// `∏_{l=0}^{k-s1-s2-1} (x - (s2 + l))`, the extra term on the rho block.
pub fn rho_correction(params: &Params) -> Poly {
    phi_partition(params.s2 as i64, (params.k - params.s1 - params.s2) as i64)
}

/// Closed-form prediction for entry `(u, v)` of the reduced matrix; the flag
/// marks predictions that are checked informatively.
pub fn predicted_entry(params: &Params, basis: &[JEntry], u: usize, v: usize) -> (Poly, bool) {
    let (a, b) = (&basis[u], &basis[v]);
    let (ba, bb) = (block_of(params, a), block_of(params, b));
    if ba != bb {
        return (Poly::zero(), false);
    }
    let pattern = swap_pattern(a, b).map(|(t1, t2)| pattern_value(params, a.key.r1, a.key.r2, t1, t2));
    if ba != BlockId::Rho {
        return (pattern.unwrap_or_else(Poly::zero), false);
    }
    let corr = rho_correction(params);
    let value = match pattern {
        Some(p) => p + corr,
        None if gram_exponent(&a.diagram, &b.diagram, params.through_number()).is_some() => {
            if (a.key.r1 + b.key.r1) % 2 == 0 {
                corr
            } else {
                -corr
            }
        }
        None => Poly::zero(),
    };
    (value, u != v)
}

/// Predicted blocks for the whole basis, keyed like the reduced blocks.
pub fn predicted_blocks(params: &Params, basis: &[JEntry]) -> BTreeMap<BlockId, Vec<Vec<Poly>>> {
    let mut out = BTreeMap::new();
    for (id, idx) in group_blocks(params, basis) {
        let m = idx
            .iter()
            .map(|&u| idx.iter().map(|&v| predicted_entry(params, basis, u, v).0).collect())
            .collect();
        out.insert(id, m);
    }
    out
}

fn group_blocks(params: &Params, basis: &[JEntry]) -> BTreeMap<BlockId, Vec<usize>> {
    let mut groups: BTreeMap<BlockId, Vec<usize>> = BTreeMap::new();
    for (i, e) in basis.iter().enumerate() {
        groups.entry(block_of(params, e)).or_default().push(i);
    }
    groups
}

fn coeffs_to_poly(c: &[i128]) -> Poly {
    Poly::from_bigints(c.iter().map(|&v| BigInt::from(v)).collect())
}

/// `Tᵀ G T` computed on integer coefficient vectors.
pub fn similarity(gram: &GramMatrix, t: &[Vec<i64>]) -> Vec<Vec<Poly>> {
    let n = gram.dim();
    let width = gram.exponents.iter().flatten().flatten().max().map_or(1, |&d| d + 1);
    let cols: Vec<Vec<usize>> =
        (0..n).map(|j| (0..n).filter(|&m| t[m][j] != 0).collect()).collect();
    // a[u][j] = Σ_v G[u][v] T[v][j]
    let a: Vec<Vec<Vec<i128>>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (0..n)
                .map(|j| {
                    let mut c = vec![0i128; width];
                    for &v in &cols[j] {
                        if let Some(d) = gram.exponents[u][v] {
                            c[d] += t[v][j] as i128;
                        }
                    }
                    c
                })
                .collect()
        })
        .collect();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![0i128; width];
                    for &u in &cols[i] {
                        let w = t[u][i] as i128;
                        for (acc, x) in c.iter_mut().zip(&a[u][j]) {
                            *acc += w * x;
                        }
                    }
                    coeffs_to_poly(&c)
                })
                .collect()
        })
        .collect()
}

/// Column operations in basis order, each column reduced by the already reduced
/// columns of its strict coarsenings, followed by the matching row operations.
pub fn reduce_sequential(gram: &GramMatrix, poset: &CoarseningPoset) -> Vec<Vec<Poly>> {
    let n = gram.dim();
    let mut m = gram.entries();
    for j in 0..n {
        for i in 0..j {
            if poset.leq[i][j] {
                for row in m.iter_mut() {
                    let sub = row[i].clone();
                    row[j] = &row[j] - &sub;
                }
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            if poset.leq[i][j] {
                let sub = m[i].clone();
                for (x, y) in m[j].iter_mut().zip(&sub) {
                    *x = &*x - y;
                }
            }
        }
    }
    m
}

pub fn reduce(gram: &GramMatrix, poset: &CoarseningPoset) -> Result<BlockDecomposition> {
    if poset.len() != gram.dim() {
        return Err(Error::KeyMismatch);
    }
    let params = gram.params;
    let basis = &gram.basis;
    let transform = poset.mobius();
    let reduced = similarity(gram, &transform);
    let mut blocks = Vec::new();
    let mut diffs = Vec::new();
    let n = gram.dim();
    for u in 0..n {
        for v in 0..n {
            let (pred, informative) = predicted_entry(&params, basis, u, v);
            if reduced[u][v] != pred {
                let bu = block_of(&params, &basis[u]);
                let label = if bu == block_of(&params, &basis[v]) {
                    bu.to_string()
                } else {
                    "off-block".to_string()
                };
                diffs.push(Diff { block: label, row: u, col: v, got: reduced[u][v].clone(), predicted: pred, informative });
            }
        }
    }
    for (id, indices) in group_blocks(&params, basis) {
        let matrix = indices.iter().map(|&u| indices.iter().map(|&v| reduced[u][v].clone()).collect()).collect();
        let predicted = indices
            .iter()
            .map(|&u| indices.iter().map(|&v| predicted_entry(&params, basis, u, v).0).collect())
            .collect();
        blocks.push(Block { id, indices, matrix, predicted });
    }
    Ok(BlockDecomposition { params, transform, reduced, blocks, diffs })
}

impl BlockDecomposition {
    /// Diffs that contradict a closed form rather than an informative check.
    pub fn strict_diffs(&self) -> Vec<&Diff> {
        self.diffs.iter().filter(|d| !d.informative).collect()
    }

    /// Position-weighted sum of the transform entries.
    pub fn transform_checksum(&self) -> i64 {
        let n = self.transform.len() as i64;
        let mut acc = 0i64;
        for (i, row) in self.transform.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                acc = acc.wrapping_add((i as i64 * n + j as i64 + 1).wrapping_mul(t));
            }
        }
        acc
    }

    pub fn off_block_zero(&self) -> bool {
        let mut owner = vec![0; self.reduced.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in &block.indices {
                owner[i] = b;
            }
        }
        (0..owner.len()).all(|u| (0..owner.len()).all(|v| owner[u] == owner[v] || self.reduced[u][v].is_zero()))
    }

    pub fn to_json(&self) -> Value {
        let poly_matrix = |m: &Vec<Vec<Poly>>| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(Poly::to_string).collect()).collect()
        };
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "id": b.id.to_string(),
                    "indices": b.indices,
                    "matrix": poly_matrix(&b.matrix),
                })
            })
            .collect();
        let predicted: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| json!({ "id": b.id.to_string(), "matrix": poly_matrix(&b.predicted) }))
            .collect();
        let diffs: Vec<Value> = self
            .diffs
            .iter()
            .map(|d| {
                json!({
                    "block": d.block,
                    "row": d.row,
                    "col": d.col,
                    "got": d.got.to_string(),
                    "predicted": d.predicted.to_string(),
                    "informative": d.informative,
                })
            })
            .collect();
        json!({
            "algebra": self.params.algebra,
            "k": self.params.k,
            "s1": self.params.s1,
            "s2": self.params.s2,
            "blocks": blocks,
            "predicted": predicted,
            "diffs": diffs,
            "transform_checksum": self.transform_checksum(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::build_gram;

    #[test]
    fn partition_k2_reduces_to_closed_forms() {
        for s in 0..=2 {
            let g = build_gram(&Params::partition(2, s)).unwrap();
            let p = CoarseningPoset::new(&g.basis);
            assert!(p.is_upper_triangular());
            let d = reduce(&g, &p).unwrap();
            assert!(d.diffs.is_empty(), "s = {s}: {:?}", d.diffs);
        }
    }

    #[test]
    fn sequential_matches_mobius() {
        for params in [Params::z2(2, 0, 0), Params::signed(2, 1, 0), Params::partition(3, 1)] {
            let g = build_gram(&params).unwrap();
            let p = CoarseningPoset::new(&g.basis);
            let d = reduce(&g, &p).unwrap();
            assert_eq!(reduce_sequential(&g, &p), d.reduced);
        }
    }

    #[test]
    fn rho_correction_values() {
        assert_eq!(rho_correction(&Params::signed(3, 1, 0)).to_string(), "x^2-x");
    }

    #[test]
    fn key_mismatch() {
        let g = build_gram(&Params::z2(1, 0, 0)).unwrap();
        let p = CoarseningPoset { leq: vec![] };
        assert_eq!(reduce(&g, &p).unwrap_err(), Error::KeyMismatch);
    }
}
