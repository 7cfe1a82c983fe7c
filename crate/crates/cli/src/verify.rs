//! The `verify` subcommand: every invariant suite plus the reference comparisons.

use std::collections::BTreeSet;

use anyhow::Result;
use diagram_gram::fixtures::documented_typos;
use diagram_gram::semisimplicity::{integer, semisimple_generic, verdict};
use diagram_gram::verify::*;
use diagram_gram::Algebra;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::{csv_line, Rendered};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    /// Differs from a reference value only where that value is a known misprint.
    Documented,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Documented => "documented",
            Status::Fail => "fail",
        }
    }
}

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

pub struct Report {
    k: usize,
    checks: Vec<Check>,
    pub passed: bool,
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn sample_qs(k: usize) -> Vec<BigRational> {
    let mut qs: Vec<BigRational> = (-2..=2 * k as i64 + 2).map(integer).collect();
    for n in [-1, 1, 3, 5] {
        qs.push(BigRational::new(BigInt::from(n), BigInt::from(2)));
    }
    qs
}

pub fn run(k: usize, max_dim: usize) -> Result<Report> {
    let mut checks = Vec::new();
    let mut push = |name, status, detail: String| checks.push(Check { name, status, detail });

    let s = reference_structure()?;
    let cells = [((0, 0), 4), ((0, 1), 9), ((1, 0), 12), ((1, 1), 6), ((2, 0), 3)];
    push(
        "reference basis",
        status(s.total == 34 && s.labels_match && s.cell_sizes == cells),
        format!("{} diagrams, cells {:?}", s.total, s.cell_sizes),
    );

    let m = reference_gram_mismatches()?;
    let st = if m.is_empty() {
        Status::Pass
    } else if mismatches_documented(&m)? {
        Status::Documented
    } else {
        Status::Fail
    };
    let listed: Vec<String> = m.iter().map(|m| format!("({},{}) printed {} computed {}", m.row, m.col, m.printed, m.computed)).collect();
    push("reference Gram matrix", st, format!("{} mismatches: {}", m.len(), listed.join("; ")));

    let r = reference_reduction()?;
    push(
        "reference reduction",
        status(r.identity_block && r.x_identity_block && r.pairing_block && r.rho_diagonal_exact && r.strict_closed_form_diffs == 0),
        format!("blocks {:?}, {} rho entries differ from reference", r.block_sizes, r.rho_entry_diffs.len()),
    );

    let (cells_compared, diffs) = stirling_table_diffs()?;
    let typos = documented_typos()?;
    let diff_cells: BTreeSet<_> = diffs.iter().map(|d| (d.row, d.col)).collect();
    let known: BTreeSet<_> = typos.stirling.iter().map(|t| (t.row, t.col)).collect();
    let excused = diffs.iter().all(|d| d.formula == d.oracle.to_string());
    let st = if diffs.is_empty() {
        Status::Pass
    } else if excused && diff_cells == known {
        Status::Documented
    } else {
        Status::Fail
    };
    push("Stirling table", st, format!("{cells_compared} cells, {} overruled by the oracle", diff_cells.len()));

    let rec = stirling_recurrences();
    push("Stirling recurrences", status(rec.failures.is_empty()), format!("{} instances, {} failures", rec.checked, rec.failures.len()));

    let o = oracle_equivalence(k, k + 1);
    push("Stirling oracle", status(o.failures.is_empty()), format!("{} comparisons, {} failures", o.checked, o.failures.len()));

    let params = all_params(k, k + 1);
    let bad = params.iter().map(structural).collect::<diagram_gram::Result<Vec<_>>>()?.iter().filter(|r| !r.passed()).count();
    push("structural invariants", status(bad == 0), format!("{} Gram matrices, {bad} failing", params.len()));

    let d = duality(k)?;
    push(
        "poset duality",
        status(d.duality_failures.is_empty() && d.join_failures.is_empty()),
        format!("{} pairs, {} joins, {} failures", d.pairs, d.join_pairs, d.duality_failures.len() + d.join_failures.len()),
    );

    let ids = phi_identities();
    for r in &ids[..2] {
        push("phi identity", status(r.failures == 0), format!("{}: {}/{} fail", r.name, r.failures, r.checked));
    }
    let (printed, corrected) = (&ids[2], &ids[3]);
    let st = match (printed.failures, corrected.failures) {
        (0, _) => Status::Pass,
        (_, 0) => Status::Documented,
        _ => Status::Fail,
    };
    push(
        "phi identity",
        st,
        format!("{}: {}/{} fail; {}: {}/{} fail", printed.name, printed.failures, printed.checked, corrected.name, corrected.failures, corrected.checked),
    );

    let qs = sample_qs(k);
    let mut disagreements = 0;
    let mut generic = true;
    for algebra in [Algebra::Partition, Algebra::Z2, Algebra::Signed] {
        for kk in 1..=k {
            disagreements += verdict_agreement(algebra, kk, &qs, max_dim)?.disagreements.len();
            generic &= semisimple_generic(algebra, kk, max_dim)?;
        }
    }
    let v = verdict(Algebra::Z2, 4, &integer(2), max_dim)?;
    let witnessed = !v.semisimple && v.witnesses.iter().any(|w| w.factor == "x^2-x-2");
    push(
        "semisimplicity",
        status(disagreements == 0 && generic && witnessed),
        format!("{} parameters per algebra, {disagreements} disagreements; z2 k=4 q=2 witnessed: {witnessed}", qs.len()),
    );

    let z = zero_through_diagonals(k)?;
    push("zero-through diagonals", status(z.is_empty()), format!("{} mismatches", z.len()));

    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(Report { k, checks, passed })
}

impl Report {
    pub fn render(&self) -> Rendered {
        let json = json!({
            "k": self.k,
            "passed": self.passed,
            "checks": self.checks.iter().map(|c| json!({ "name": c.name, "status": c.status.as_str(), "detail": c.detail })).collect::<Vec<_>>(),
        });
        let mut csv = csv_line(&["name".into(), "status".into(), "detail".into()]);
        let mut pretty = String::new();
        for c in &self.checks {
            csv.push_str(&csv_line(&[c.name.into(), c.status.as_str().into(), c.detail.clone()]));
            pretty.push_str(&format!("{:<10} {}: {}\n", c.status.as_str(), c.name, c.detail));
        }
        pretty.push_str(if self.passed { "verify: ok\n" } else { "verify: FAILED\n" });
        Rendered { json, csv, pretty }
    }
}
