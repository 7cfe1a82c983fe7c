//! Exact determinants of polynomial matrices by evaluation and interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::polynomials::Poly;
use crate::reduction::BlockDecomposition;

/// Determinant together with an optional factorization into block pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetResult {
    pub poly: Poly,
    pub factored: Option<Vec<(Poly, usize)>>,
}

impl DetResult {
    /// Product of the factors, or the plain polynomial when unfactored.
    pub fn expand(&self) -> Poly {
        match &self.factored {
            Some(f) => f.iter().map(|(p, m)| p.pow(*m)).product(),
            None => self.poly.clone(),
        }
    }
}

/// Fraction-free elimination with row pivoting.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Gaussian elimination over the rationals.
pub fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

/// Determinant of the matrix evaluated at `q`.
pub fn det_at(m: &[Vec<Poly>], q: &BigRational) -> BigRational {
    let vals: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|p| p.eval(q)).collect()).collect();
    if q.is_integer() && vals.iter().flatten().all(|v| v.is_integer()) {
        let ints = vals.into_iter().map(|r| r.into_iter().map(|v| v.to_integer()).collect()).collect();
        BigRational::from_integer(det_bareiss(ints))
    } else {
        det_rational(vals)
    }
}

/// Sum over rows of the largest entry degree; `None` if some row is zero.
pub fn degree_bound(m: &[Vec<Poly>]) -> Option<usize> {
    m.iter().map(|r| r.iter().filter_map(Poly::degree).max()).sum()
}

/// Newton interpolation through `(i, ys[i])` for `i = 0..ys.len()`.
pub fn interpolate(ys: &[BigRational]) -> Poly {
    let n = ys.len();
    let mut c = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    let mut poly = Poly::zero();
    for i in (0..n).rev() {
        poly = &(&poly * &Poly::linear(i as i64)) + &Poly::constant(c[i].clone());
    }
    poly
}

/// Exact determinant by evaluation at `0..=B` and interpolation.
pub fn det_direct(m: &[Vec<Poly>]) -> Poly {
    let Some(bound) = degree_bound(m) else {
        return Poly::zero();
    };
    let ys: Vec<BigRational> = (0..=bound)
        .into_par_iter()
        .map(|t| det_at(m, &BigRational::from_integer(BigInt::from(t))))
        .collect();
    interpolate(&ys)
}

/// `c · I` with `c` a polynomial, if the block has that shape.
fn scalar_block(m: &[Vec<Poly>]) -> Option<&Poly> {
    let c = &m.first()?[0];
    let ok = m
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, p)| if i == j { p == c } else { p.is_zero() }));
    ok.then_some(c)
}

/// Product of block determinants, keeping repeated scalar blocks as powers.
pub fn det_blocks(decomp: &BlockDecomposition) -> DetResult {
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    let mut push = |p: Poly, mult: usize| {
        if p == Poly::one() {
            return;
        }
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, m)) => *m += mult,
            None => factors.push((p, mult)),
        }
    };
    for block in &decomp.blocks {
        match scalar_block(&block.matrix) {
            Some(c) => push(c.clone(), block.matrix.len()),
            None => push(det_direct(&block.matrix), 1),
        }
    }
    let poly = factors.iter().map(|(p, m)| p.pow(*m)).product();
    DetResult { poly, factored: Some(factors) }
}
