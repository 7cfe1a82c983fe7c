//! Versioned reference data compiled into the crate.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::polynomials::Poly;

const SIGNED_K3_GRAM: &str = include_str!("../fixtures/v1/signed_k3_gram.json");
const SIGNED_K3_RHO: &str = include_str!("../fixtures/v1/signed_k3_rho_block.json");
const STIRLING_TABLE: &str = include_str!("../fixtures/v1/stirling_table_z2.json");
const TYPOS: &str = include_str!("../fixtures/v1/documented_typos.json");

/// Transcribed 34×34 signed Gram matrix at `k = 3, s1 = 1, s2 = 0`.
#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceGram {
    pub k: usize,
    pub s1: usize,
    pub s2: usize,
    pub labels: Vec<String>,
    pub alpha: Vec<String>,
    pub cells: Vec<(usize, usize)>,
    /// Our diagram at each reference position, in display form.
    pub diagrams: Vec<String>,
    /// Loop exponents; `None` marks a zero entry.
    pub exponents: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawRho {
    labels: Vec<String>,
    entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct ReferenceRhoBlock {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Poly>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableCell {
    pub text: String,
    /// `[coefficient, power of s1, power of s2]` terms.
    pub terms: Vec<(i64, u32, u32)>,
}

impl TableCell {
    pub fn eval(&self, s1: i64, s2: i64) -> i64 {
        self.terms.iter().map(|&(c, a, b)| c * s1.pow(a) * s2.pow(b)).sum()
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub r: (usize, usize),
    pub cells: Vec<TableCell>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct StirlingTable {
    pub columns: Vec<(usize, usize)>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
pub struct GramTypo {
    pub row: String,
    pub col: String,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
pub struct TableTypo {
    pub row: (usize, usize),
    pub col: (usize, usize),
    pub printed: String,
    pub computed: String,
    pub note: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DocumentedTypos {
    pub gram: Vec<GramTypo>,
    pub stirling: Vec<TableTypo>,
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

pub fn reference_gram() -> Result<ReferenceGram> {
    parse("signed_k3_gram.json", SIGNED_K3_GRAM)
}

pub fn reference_rho_block() -> Result<ReferenceRhoBlock> {
    let raw: RawRho = parse("signed_k3_rho_block.json", SIGNED_K3_RHO)?;
    let entries = raw
        .entries
        .iter()
        .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<Poly>>>())
        .collect::<Result<_>>()?;
    Ok(ReferenceRhoBlock { labels: raw.labels, entries })
}

pub fn stirling_table() -> Result<StirlingTable> {
    parse("stirling_table_z2.json", STIRLING_TABLE)
}

pub fn documented_typos() -> Result<DocumentedTypos> {
    parse("documented_typos.json", TYPOS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let g = reference_gram().unwrap();
        assert_eq!(g.exponents.len(), 34);
        assert!(g.exponents.iter().all(|r| r.len() == 34));
        assert_eq!(g.diagrams.len(), 34);
        let rho = reference_rho_block().unwrap();
        assert_eq!(rho.entries.len(), 9);
        let t = stirling_table().unwrap();
        assert_eq!(t.rows.len(), 7);
        assert!(t.rows.iter().all(|r| r.cells.len() == 8));
        assert_eq!(documented_typos().unwrap().gram.len(), 4);
    }

    #[test]
    fn table_cell_eval() {
        let t = stirling_table().unwrap();
        // row (2,0), column (0,0): (2s1+s2)^2
        assert_eq!(t.rows[1].cells[7].eval(1, 2), 16);
    }
}
