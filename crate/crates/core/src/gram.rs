//! Index sets of symmetric diagrams, their ordering, and Gram matrices.
//!
//! A symmetric diagram is determined by one row: a partition of the row
//! vertices together with the set of blocks that propagate. Through blocks are
//! joined to their mirror image in the bottom row; the others are repeated as
//! horizontal edges on both rows.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagrams::PartitionDiagram;
use crate::error::{Error, Result};
use crate::partitions::SetPartition;
use crate::polynomials::Poly;
use crate::z2diagrams::{kind_of, BlockKind, Z2Diagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Partition,
    Z2,
    Signed,
}

impl Algebra {
    pub fn family(self) -> Family {
        match self {
            Algebra::Partition => Family::Partition,
            Algebra::Z2 | Algebra::Signed => Family::Z2,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Partition => "partition",
            Algebra::Z2 => "z2",
            Algebra::Signed => "signed",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partition" => Ok(Algebra::Partition),
            "z2" => Ok(Algebra::Z2),
            "signed" => Ok(Algebra::Signed),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

/// Which kind of row the diagrams live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `k` vertices per row.
    Partition,
    /// `2k` vertices per row, stable under the e/g swap.
    Z2,
}

/// Algebra, `k` and the through-class counts. The partition algebra uses `s1`
/// for `s` and keeps `s2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    pub algebra: Algebra,
    pub k: usize,
    pub s1: usize,
    pub s2: usize,
}

impl Params {
    pub fn partition(k: usize, s: usize) -> Self {
        Params { algebra: Algebra::Partition, k, s1: s, s2: 0 }
    }

    pub fn z2(k: usize, s1: usize, s2: usize) -> Self {
        Params { algebra: Algebra::Z2, k, s1, s2 }
    }

    pub fn signed(k: usize, s1: usize, s2: usize) -> Self {
        Params { algebra: Algebra::Signed, k, s1, s2 }
    }

    pub fn validate(&self) -> Result<()> {
        let Params { algebra, k, s1, s2 } = *self;
        let ok = k >= 1
            && match algebra {
                Algebra::Partition => s2 == 0 && s1 <= k,
                Algebra::Z2 => s1 + s2 <= k,
                Algebra::Signed => s1 <= k && s2 < k && s1 + s2 < k,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::Window(format!("{algebra} with k={k}, s1={s1}, s2={s2}")))
        }
    }

    /// Propagating number every product must keep to contribute to the Gram matrix.
    pub fn through_number(&self) -> usize {
        match self.algebra {
            Algebra::Partition => self.s1,
            _ => 2 * self.s1 + self.s2,
        }
    }

    /// Every admissible `(s1, s2)` (or `s`) for the given algebra and `k`.
    pub fn admissible(algebra: Algebra, k: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for s1 in 0..=k {
            for s2 in 0..=k {
                let p = Params { algebra, k, s1, s2 };
                if p.validate().is_ok() {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Window for symmetric diagrams of the signed algebra, in terms of one row.
pub fn signed_window(k: usize, s1: usize, s2: usize, r1: usize, r2: usize) -> bool {
    let t = s1 + s2 + r1 + r2;
    s1 == k || t < k || (t == k && r1 != 0)
}

/// Block sizes by class type, each part weakly decreasing.
///
/// Z2 rows carry four parts: e-pair through, Z2 through, e-pair horizontal,
/// Z2 horizontal. Partition rows carry two: through, horizontal. Sizes count
/// positions `1..k`, so an e-pair contributes once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PartitionTuple {
    pub parts: Vec<Vec<usize>>,
}

impl PartitionTuple {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.len() != 2 && parts.len() != 4 {
            return Err(Error::InvalidTuple(format!("expected 2 or 4 parts, got {}", parts.len())));
        }
        for p in &parts {
            if p.contains(&0) || p.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidTuple(format!("part {p:?} is not a partition")));
            }
        }
        Ok(PartitionTuple { parts })
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    /// Part lengths followed by the concatenated sizes.
    pub fn order_key(&self) -> Vec<usize> {
        let mut key: Vec<usize> = self.parts.iter().map(Vec::len).collect();
        key.extend(self.parts.iter().flatten());
        key
    }

    pub fn all_ones(&self) -> bool {
        self.parts.iter().flatten().all(|&v| v == 1)
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| if p.is_empty() { "Φ".to_string() } else { p.iter().join(",") })
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiagramKey {
    /// 1-based ordinal among keys sharing `alpha`, `r1`, `r2`.
    pub i: usize,
    pub alpha: PartitionTuple,
    pub r1: usize,
    pub r2: usize,
}

impl DiagramKey {
    pub fn cell(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Diagram {
    Partition(PartitionDiagram),
    Z2(Z2Diagram),
}

impl Diagram {
    pub fn k(&self) -> usize {
        match self {
            Diagram::Partition(d) => d.k(),
            Diagram::Z2(d) => d.k(),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Diagram::Partition(_) => Family::Partition,
            Diagram::Z2(_) => Family::Z2,
        }
    }

    pub fn partition(&self) -> &SetPartition {
        match self {
            Diagram::Partition(d) => d.partition(),
            Diagram::Z2(d) => d.partition(),
        }
    }

    pub fn multiply(&self, other: &Diagram) -> Result<(Diagram, usize)> {
        match (self, other) {
            (Diagram::Partition(a), Diagram::Partition(b)) => {
                a.multiply(b).map(|(d, l)| (Diagram::Partition(d), l))
            }
            (Diagram::Z2(a), Diagram::Z2(b)) => a.multiply(b).map(|(d, l)| (Diagram::Z2(d), l)),
            _ => Err(Error::FamilyMismatch),
        }
    }

    pub fn propagating_number(&self) -> usize {
        match self {
            Diagram::Partition(d) => d.propagating_number(),
            Diagram::Z2(d) => d.propagating_number(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Partition(d) => d.fmt(f),
            Diagram::Z2(d) => d.fmt(f),
        }
    }
}

/// One row of a symmetric diagram: the row partition and which blocks propagate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowConfig {
    family: Family,
    k: usize,
    row: SetPartition,
    through: Vec<bool>,
    kinds: Vec<BlockKind>,
}

/// Counts of through classes and horizontal edges on one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct RowStats {
    pub s1: usize,
    pub s2: usize,
    pub r1: usize,
    pub r2: usize,
}

impl RowConfig {
    pub fn new(family: Family, k: usize, row: SetPartition, through: Vec<bool>) -> Result<Self> {
        let width = row_width(family, k);
        if row.ground_size() != width {
            return Err(Error::SizeMismatch { left: row.ground_size(), right: width });
        }
        if through.len() != row.num_blocks() {
            return Err(Error::InvalidPartition("through flags do not match blocks".into()));
        }
        let kinds: Vec<BlockKind> = match family {
            Family::Partition => vec![BlockKind::EPair; row.num_blocks()],
            Family::Z2 => {
                if row.map(crate::z2diagrams::swap) != row {
                    return Err(Error::NotSwapStable);
                }
                row.blocks().iter().map(|b| kind_of(b)).collect()
            }
        };
        let cfg = RowConfig { family, k, row, through, kinds };
        if family == Family::Z2 {
            // conjugate blocks must agree on propagating
            for (i, b) in cfg.row.blocks().iter().enumerate() {
                let j = cfg.row.block_index_of(crate::z2diagrams::swap(b[0])).unwrap();
                if cfg.through[i] != cfg.through[j] {
                    return Err(Error::NotSwapStable);
                }
            }
        }
        Ok(cfg)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn row(&self) -> &SetPartition {
        &self.row
    }

    pub fn through(&self) -> &[bool] {
        &self.through
    }

    pub fn kinds(&self) -> &[BlockKind] {
        &self.kinds
    }

    /// True for the block that represents its e-pair (the one holding an `e`
    /// vertex at the pair's smallest position), and for every other block.
    fn is_representative(&self, i: usize) -> bool {
        self.family == Family::Partition
            || self.kinds[i] == BlockKind::Z2
            || self.row.blocks()[i][0].is_multiple_of(2)
    }

    fn size(&self, i: usize) -> usize {
        let b = &self.row.blocks()[i];
        match (self.family, self.kinds[i]) {
            (Family::Z2, BlockKind::Z2) => b.len() / 2,
            _ => b.len(),
        }
    }

    /// Slot of block `i` in the partition tuple.
    fn slot(&self, i: usize) -> usize {
        match self.family {
            Family::Partition => usize::from(!self.through[i]),
            Family::Z2 => {
                let z = usize::from(self.kinds[i] == BlockKind::Z2);
                if self.through[i] {
                    z
                } else {
                    2 + z
                }
            }
        }
    }

    pub fn stats(&self) -> RowStats {
        let mut counts = [0usize; 4];
        for i in 0..self.row.num_blocks() {
            if self.is_representative(i) {
                counts[self.slot(i)] += 1;
            }
        }
        match self.family {
            Family::Partition => RowStats { s1: counts[0], s2: 0, r1: counts[1], r2: 0 },
            Family::Z2 => RowStats { s1: counts[0], s2: counts[1], r1: counts[2], r2: counts[3] },
        }
    }

    pub fn alpha(&self) -> PartitionTuple {
        let nparts = match self.family {
            Family::Partition => 2,
            Family::Z2 => 4,
        };
        let mut parts = vec![Vec::new(); nparts];
        for i in 0..self.row.num_blocks() {
            if self.is_representative(i) {
                parts[self.slot(i)].push(self.size(i));
            }
        }
        for p in &mut parts {
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        PartitionTuple { parts }
    }

    pub fn to_diagram(&self) -> Diagram {
        let w = row_width(self.family, self.k);
        let mut blocks = Vec::new();
        for (b, &th) in self.row.blocks().iter().zip(&self.through) {
            let mirror: Vec<usize> = b.iter().map(|&v| v + w).collect();
            if th {
                blocks.push(b.iter().copied().chain(mirror).collect());
            } else {
                blocks.push(b.clone());
                blocks.push(mirror);
            }
        }
        let part = SetPartition::from_blocks(2 * w, blocks).expect("mirrored row covers both rows");
        match self.family {
            Family::Partition => Diagram::Partition(PartitionDiagram::new(self.k, part).unwrap()),
            Family::Z2 => Diagram::Z2(Z2Diagram::new(self.k, part).unwrap()),
        }
    }

    /// Recovers the row datum; fails unless the diagram is a mirrored row.
    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        let family = d.family();
        let k = d.k();
        let w = row_width(family, k);
        let full: HashSet<&Vec<usize>> = d.partition().blocks().iter().collect();
        let mut top: Vec<(Vec<usize>, bool)> = Vec::new();
        for b in d.partition().blocks() {
            if b[0] >= w {
                continue;
            }
            let t: Vec<usize> = b.iter().copied().filter(|&v| v < w).collect();
            let mirror: Vec<usize> = t.iter().map(|&v| v + w).collect();
            let is_through = b.len() > t.len();
            let consistent = if is_through {
                *b == t.iter().copied().chain(mirror.iter().copied()).collect::<Vec<_>>()
            } else {
                full.contains(&mirror)
            };
            if !consistent {
                return Err(Error::Asymmetric);
            }
            top.push((t, is_through));
        }
        // every bottom-only block must mirror a top-only block
        let horizontal_tops = top.iter().filter(|(_, th)| !th).count();
        let bottom_only = d.partition().blocks().iter().filter(|b| b[0] >= w).count();
        if horizontal_tops != bottom_only {
            return Err(Error::Asymmetric);
        }
        top.sort_by_key(|(b, _)| b[0]);
        let (blocks, through): (Vec<_>, Vec<_>) = top.into_iter().unzip();
        let row = SetPartition::from_blocks(w, blocks)?;
        Self::new(family, k, row, through)
    }

    /// Contiguous-interval configuration for a partition tuple.
    pub fn standard(family: Family, alpha: &PartitionTuple, k: usize) -> Result<Self> {
        let expected = match family {
            Family::Partition => 2,
            Family::Z2 => 4,
        };
        if alpha.parts.len() != expected {
            return Err(Error::InvalidTuple(format!("expected {expected} parts")));
        }
        if alpha.weight() != k {
            return Err(Error::InvalidTuple(format!("weight {} differs from k={k}", alpha.weight())));
        }
        let mut blocks = Vec::new();
        let mut through = Vec::new();
        let mut pos = 0;
        for (slot, part) in alpha.parts.iter().enumerate() {
            let is_through = match family {
                Family::Partition => slot == 0,
                Family::Z2 => slot < 2,
            };
            let z2 = family == Family::Z2 && slot % 2 == 1;
            for &size in part {
                let positions = pos..pos + size;
                pos += size;
                match family {
                    Family::Partition => {
                        blocks.push(positions.collect());
                        through.push(is_through);
                    }
                    Family::Z2 if z2 => {
                        blocks.push(positions.flat_map(|p| [2 * p, 2 * p + 1]).collect());
                        through.push(is_through);
                    }
                    Family::Z2 => {
                        blocks.push(positions.clone().map(|p| 2 * p).collect());
                        blocks.push(positions.map(|p| 2 * p + 1).collect());
                        through.extend([is_through, is_through]);
                    }
                }
            }
        }
        let w = row_width(family, k);
        let mut paired: Vec<(Vec<usize>, bool)> = blocks.into_iter().zip(through).collect();
        paired.sort_by_key(|(b, _)| b[0]);
        let (blocks, through): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
        Self::new(family, k, SetPartition::from_blocks(w, blocks)?, through)
    }

    /// Type-respecting coarsening: `self` is coarser than `finer`.
    ///
    /// Each through class of `finer` must sit inside its own through class of
    /// `self` of the same kind, so through classes are matched one to one.
    /// Horizontal edges may move into horizontal edges or through classes, with
    /// Z2 edges only landing in Z2 blocks.
    pub fn is_coarser_than(&self, finer: &RowConfig) -> bool {
        if self.family != finer.family || self.k != finer.k {
            return false;
        }
        let owner = self.row.labels();
        let mut used = vec![false; self.row.num_blocks()];
        for (j, b) in finer.row.blocks().iter().enumerate() {
            let o = owner[b[0]];
            if b.iter().any(|&v| owner[v] != o) {
                return false;
            }
            if finer.through[j] {
                if !self.through[o] || self.kinds[o] != finer.kinds[j] || used[o] {
                    return false;
                }
                used[o] = true;
            } else if finer.kinds[j] == BlockKind::Z2 && self.kinds[o] != BlockKind::Z2 {
                return false;
            }
        }
        (0..self.row.num_blocks()).all(|o| !self.through[o] || used[o])
    }
}

pub(crate) fn row_width(family: Family, k: usize) -> usize {
    match family {
        Family::Partition => k,
        Family::Z2 => 2 * k,
    }
}

/// All swap-stable partitions of the `2k` vertices of one row.
///
/// Built from a partition of the positions `0..k`: each block is either one
/// swap-fixed class or a conjugate pair, and a pair is fixed by choosing which
/// of `e`/`g` joins the smallest position's `e` vertex at every other position.
pub fn swap_stable_rows(k: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for positions in SetPartition::all(k) {
        let pb = positions.blocks();
        let choices: Vec<Vec<Option<Vec<bool>>>> = pb
            .iter()
            .map(|b| {
                let mut opts = vec![None];
                for bits in 0..(1usize << (b.len() - 1)) {
                    opts.push(Some((0..b.len()).map(|i| i > 0 && bits >> (i - 1) & 1 == 1).collect()));
                }
                opts
            })
            .collect();
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let mut blocks = Vec::new();
            for (b, choice) in pb.iter().zip(pick) {
                match choice {
                    None => blocks.push(b.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect()),
                    Some(flip) => {
                        let ce: Vec<usize> =
                            b.iter().zip(flip).map(|(&p, &f)| 2 * p + usize::from(f)).collect();
                        blocks.push(ce.iter().map(|&v| v ^ 1).collect());
                        blocks.push(ce);
                    }
                }
            }
            out.push(SetPartition::from_blocks(2 * k, blocks).unwrap());
        }
    }
    out
}

fn rows_for(family: Family, k: usize) -> Vec<SetPartition> {
    match family {
        Family::Partition => SetPartition::all(k).collect(),
        Family::Z2 => swap_stable_rows(k),
    }
}

/// Through-flag choices on a row with the requested numbers of through classes.
fn through_choices(family: Family, row: &SetPartition, s1: usize, s2: usize) -> Vec<Vec<bool>> {
    let blocks = row.blocks();
    let nb = blocks.len();
    match family {
        Family::Partition => (0..nb)
            .combinations(s1)
            .map(|c| {
                let mut t = vec![false; nb];
                c.into_iter().for_each(|i| t[i] = true);
                t
            })
            .collect(),
        Family::Z2 => {
            let mut pairs = Vec::new();
            let mut fixed = Vec::new();
            for (i, b) in blocks.iter().enumerate() {
                match kind_of(b) {
                    BlockKind::Z2 => fixed.push(i),
                    BlockKind::EPair if b[0] % 2 == 0 => {
                        pairs.push((i, row.block_index_of(b[0] ^ 1).unwrap()))
                    }
                    BlockKind::EPair => {}
                }
            }
            let mut out = Vec::new();
            for cp in pairs.iter().combinations(s1) {
                for cz in fixed.iter().combinations(s2) {
                    let mut t = vec![false; nb];
                    for &&(a, b) in &cp {
                        t[a] = true;
                        t[b] = true;
                    }
                    for &&z in &cz {
                        t[z] = true;
                    }
                    out.push(t);
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JEntry {
    pub key: DiagramKey,
    pub config: RowConfig,
    pub diagram: Diagram,
}

fn sort_key(cfg: &RowConfig, d: &Diagram) -> (usize, usize, Vec<usize>, Diagram) {
    let st = cfg.stats();
    (2 * st.r1 + st.r2, st.r1 + st.r2, cfg.alpha().order_key(), d.clone())
}

/// The ordered basis of symmetric diagrams indexing the Gram matrix.
pub fn enumerate_j(params: &Params) -> Result<Vec<JEntry>> {
    params.validate()?;
    let family = params.algebra.family();
    let mut found: Vec<(RowConfig, Diagram)> = Vec::new();
    for row in rows_for(family, params.k) {
        for through in through_choices(family, &row, params.s1, params.s2) {
            let cfg = RowConfig::new(family, params.k, row.clone(), through)?;
            let d = cfg.to_diagram();
            if params.algebra == Algebra::Signed {
                let Diagram::Z2(z) = &d else { unreachable!() };
                if !z.is_signed_member() {
                    continue;
                }
            }
            found.push((cfg, d));
        }
    }
    found.sort_by_cached_key(|(c, d)| sort_key(c, d));
    found.dedup_by(|a, b| a.1 == b.1);
    let mut out: Vec<JEntry> = Vec::with_capacity(found.len());
    for (config, diagram) in found {
        let st = config.stats();
        let alpha = config.alpha();
        let i = match out.last() {
            Some(prev) if prev.key.alpha == alpha && prev.key.cell() == (st.r1, st.r2) => prev.key.i + 1,
            _ => 1,
        };
        out.push(JEntry { key: DiagramKey { i, alpha, r1: st.r1, r2: st.r2 }, config, diagram });
    }
    Ok(out)
}

/// Size of the index set, counted without building diagrams.
pub fn count_j(params: &Params) -> Result<usize> {
    params.validate()?;
    let family = params.algebra.family();
    let mut total = 0;
    for row in rows_for(family, params.k) {
        let (mut pairs, mut fixed) = (0, 0);
        for b in row.blocks() {
            match (family, kind_of(b)) {
                (Family::Partition, _) => pairs += 1,
                (Family::Z2, BlockKind::Z2) => fixed += 1,
                (Family::Z2, BlockKind::EPair) => pairs += 1,
            }
        }
        if family == Family::Z2 {
            pairs /= 2;
        }
        if pairs < params.s1 || fixed < params.s2 {
            continue;
        }
        let (r1, r2) = (pairs - params.s1, fixed - params.s2);
        if params.algebra == Algebra::Signed && !signed_window(params.k, params.s1, params.s2, r1, r2) {
            continue;
        }
        total += binomial(pairs, params.s1) * binomial(fixed, params.s2);
    }
    Ok(total)
}

fn binomial(n: usize, r: usize) -> usize {
    num_integer::binomial(n, r)
}

/// Contiguous standard diagram for a four-part tuple.
pub fn standard_diagram(alpha: &PartitionTuple, k: usize) -> Result<Z2Diagram> {
    match RowConfig::standard(Family::Z2, alpha, k)?.to_diagram() {
        Diagram::Z2(z) => Ok(z),
        Diagram::Partition(_) => unreachable!(),
    }
}

pub fn underlying_partition(d: &Diagram) -> Result<PartitionTuple> {
    Ok(RowConfig::from_diagram(d)?.alpha())
}

/// Gram matrix with entries stored as loop exponents; `None` is the zero entry.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub params: Params,
    pub basis: Vec<JEntry>,
    pub exponents: Vec<Vec<Option<usize>>>,
}

/// Exponent of `x` contributed by `a·b`, or `None` if the product loses through classes.
pub fn gram_exponent(a: &Diagram, b: &Diagram, through_number: usize) -> Option<usize> {
    let (prod, loops) = a.multiply(b).expect("same family and k");
    (prod.propagating_number() == through_number).then_some(loops)
}

pub fn build_gram(params: &Params) -> Result<GramMatrix> {
    let basis = enumerate_j(params)?;
    Ok(gram_from_basis(*params, basis))
}

pub fn gram_from_basis(params: Params, basis: Vec<JEntry>) -> GramMatrix {
    let t = params.through_number();
    let exponents = basis
        .par_iter()
        .map(|u| basis.iter().map(|v| gram_exponent(&u.diagram, &v.diagram, t)).collect())
        .collect();
    GramMatrix { params, basis, exponents }
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, u: usize, v: usize) -> Poly {
        self.exponents[u][v].map_or_else(Poly::zero, Poly::monomial)
    }

    pub fn entries(&self) -> Vec<Vec<Poly>> {
        (0..self.dim()).map(|u| (0..self.dim()).map(|v| self.entry(u, v)).collect()).collect()
    }

    pub fn keys(&self) -> Vec<&DiagramKey> {
        self.basis.iter().map(|e| &e.key).collect()
    }

    pub fn to_json(&self) -> Value {
        let keys: Vec<Value> = self.basis.iter().map(key_json).collect();
        let entries: Vec<Vec<Vec<String>>> = (0..self.dim())
            .map(|u| (0..self.dim()).map(|v| self.entry(u, v).to_json_coeffs()).collect())
            .collect();
        json!({
            "algebra": self.params.algebra,
            "k": self.params.k,
            "s1": self.params.s1,
            "s2": self.params.s2,
            "keys": keys,
            "entries": entries,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for u in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|v| self.entry(u, v).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn key_json(e: &JEntry) -> Value {
    json!({
        "i": e.key.i,
        "alpha": e.key.alpha,
        "r1": e.key.r1,
        "r2": e.key.r2,
        "diagram": e.diagram.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z2diagrams::is_swap_stable;

    #[test]
    fn swap_stable_rows_match_filter() {
        for k in 0..5 {
            let mut fast = swap_stable_rows(k);
            let mut slow: Vec<_> = SetPartition::all(2 * k).filter(is_swap_stable).collect();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "k = {k}");
        }
    }

    #[test]
    fn small_partition_sets() {
        assert_eq!(enumerate_j(&Params::partition(1, 1)).unwrap().len(), 1);
        let j = enumerate_j(&Params::partition(1, 0)).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].diagram.to_string(), "[{1}|{1′}]");
    }

    #[test]
    fn z2_full_z2_through() {
        let g = build_gram(&Params::z2(2, 0, 2)).unwrap();
        assert_eq!(g.dim(), 1);
        assert_eq!(g.entry(0, 0), Poly::one());
    }

    #[test]
    fn count_matches_enumeration() {
        for k in 1..4 {
            for algebra in [Algebra::Partition, Algebra::Z2, Algebra::Signed] {
                for p in Params::admissible(algebra, k) {
                    assert_eq!(count_j(&p).unwrap(), enumerate_j(&p).unwrap().len(), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn windows() {
        assert!(Params::signed(3, 1, 2).validate().is_err());
        assert!(Params::signed(3, 3, 0).validate().is_err());
        assert!(Params::z2(3, 2, 1).validate().is_ok());
        assert!(Params::partition(2, 3).validate().is_err());
        assert!(Params::partition(0, 0).validate().is_err());
    }

    #[test]
    fn standard_roundtrip() {
        let alpha = PartitionTuple::new(vec![vec![2], vec![], vec![1], vec![]]).unwrap();
        let d = standard_diagram(&alpha, 3).unwrap();
        let st = d.stats();
        assert_eq!((st.s1, st.s2, st.r1, st.r2), (1, 0, 1, 0));
        assert_eq!(underlying_partition(&Diagram::Z2(d)).unwrap(), alpha);
        assert!(PartitionTuple::new(vec![vec![1, 2], vec![], vec![], vec![]]).is_err());
        assert!(standard_diagram(&alpha, 4).is_err());
    }

    #[test]
    fn asymmetric_rejected() {
        let part = SetPartition::from_blocks(2, vec![vec![0], vec![1]]).unwrap();
        let ok = Diagram::Partition(PartitionDiagram::new(1, part).unwrap());
        assert!(RowConfig::from_diagram(&ok).is_ok());
        let part = SetPartition::from_blocks(4, vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        let bad = Diagram::Partition(PartitionDiagram::new(2, part).unwrap());
        assert_eq!(RowConfig::from_diagram(&bad), Err(Error::Asymmetric));
    }
}
