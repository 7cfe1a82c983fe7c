//! Semisimplicity at a rational parameter from the Gram determinants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::determinant::{det_at, det_blocks, DetResult};
use crate::error::{Error, Result};
use crate::gram::{build_gram, count_j, Algebra, GramMatrix, Params};
use crate::polynomials::{phi_partition, Poly};
use crate::reduction::{reduce, BlockDecomposition, CoarseningPoset};

pub const CAVEAT: &str = "semisimplicity is decided with respect to the implemented Gram factors only; \
a vanishing factor proves non-semisimplicity, a nonvanishing product does not rule out other cell modules";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub s1: usize,
    pub s2: usize,
    pub block: String,
    pub factor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub algebra: Algebra,
    pub k: usize,
    pub q: String,
    pub semisimple: bool,
    pub witnesses: Vec<Witness>,
    pub caveat: &'static str,
}

/// Gram matrix and reduction for one admissible parameter set.
pub struct Reduced {
    pub params: Params,
    pub gram: GramMatrix,
    pub decomp: BlockDecomposition,
}

/// Fails with [`Error::ResourceGuard`] when the index sets of all admissible
/// parameters together exceed `max_dim`.
pub fn check_guard(algebra: Algebra, k: usize, max_dim: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Window(format!("{algebra} with k=0")));
    }
    let mut total = 0;
    for p in Params::admissible(algebra, k) {
        total += count_j(&p)?;
    }
    if total > max_dim {
        return Err(Error::ResourceGuard { projected: total, limit: max_dim });
    }
    Ok(())
}

pub fn reduce_all(algebra: Algebra, k: usize, max_dim: usize) -> Result<Vec<Reduced>> {
    check_guard(algebra, k, max_dim)?;
    Params::admissible(algebra, k)
        .into_iter()
        .map(|params| {
            let gram = build_gram(&params)?;
            let poset = CoarseningPoset::new(&gram.basis);
            let decomp = reduce(&gram, &poset)?;
            Ok(Reduced { params, gram, decomp })
        })
        .collect()
}

/// Product over admissible parameters of the block determinants.
pub fn global_poly(algebra: Algebra, k: usize, max_dim: usize) -> Result<DetResult> {
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for r in reduce_all(algebra, k, max_dim)? {
        for (p, m) in det_blocks(&r.decomp).factored.unwrap_or_default() {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, n)) => *n += m,
                None => factors.push((p, m)),
            }
        }
    }
    let poly = factors.iter().map(|(p, m)| p.pow(*m)).product();
    Ok(DetResult { poly, factored: Some(factors) })
}

/// Quadratic `x² - x - 2m` and linear `x - m` factors, `0 ≤ m ≤ 2k`.
fn structured_factors(k: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for m in 0..=2 * k as i64 {
        out.push(Poly::from_ints(&[-2 * m, -1, 1]));
    }
    for m in 0..=2 * k as i64 {
        out.push(phi_partition(m, 1));
    }
    out
}

fn divides(f: &Poly, g: &Poly) -> bool {
    // f is monic of degree 1 or 2
    let mut rem = g.clone();
    let df = f.degree().unwrap();
    while let Some(dr) = rem.degree() {
        if dr < df {
            break;
        }
        let shift = Poly::monomial(dr - df).scalar_mul(&rem.leading_coeff());
        rem = &rem - &(&shift * f);
    }
    rem.is_zero()
}

fn describe(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        q.to_string()
    }
}

/// Scans every block at `q`; each vanishing block yields witnesses.
pub fn verdict_from(algebra: Algebra, k: usize, q: &BigRational, reduced: &[Reduced]) -> Verdict {
    let candidates = structured_factors(k);
    let mut witnesses = Vec::new();
    for r in reduced {
        for block in &r.decomp.blocks {
            if !det_at(&block.matrix, q).is_zero() {
                continue;
            }
            let mut named: Vec<String> = Vec::new();
            for f in &candidates {
                if f.eval(q).is_zero() && block.matrix.iter().enumerate().any(|(i, row)| divides(f, &row[i])) {
                    named.push(f.to_string());
                }
            }
            if named.is_empty() {
                named.push(format!("det {}", block.id));
            }
            for factor in named {
                witnesses.push(Witness { s1: r.params.s1, s2: r.params.s2, block: block.id.to_string(), factor });
            }
        }
    }
    witnesses.dedup();
    Verdict { algebra, k, q: describe(q), semisimple: witnesses.is_empty(), witnesses, caveat: CAVEAT }
}

pub fn verdict(algebra: Algebra, k: usize, q: &BigRational, max_dim: usize) -> Result<Verdict> {
    let reduced = reduce_all(algebra, k, max_dim)?;
    Ok(verdict_from(algebra, k, q, &reduced))
}

/// Independent path: the unreduced Gram determinants evaluated at `q`.
pub fn semisimple_by_evaluation(algebra: Algebra, k: usize, q: &BigRational, max_dim: usize) -> Result<bool> {
    check_guard(algebra, k, max_dim)?;
    for params in Params::admissible(algebra, k) {
        let g = build_gram(&params)?;
        if det_at(&g.entries(), q).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Over the field of rational functions in `x`: semisimple iff `f` is nonzero.
pub fn semisimple_generic(algebra: Algebra, k: usize, max_dim: usize) -> Result<bool> {
    Ok(!global_poly(algebra, k, max_dim)?.poly.is_zero())
}

pub fn integer(q: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(q))
}
