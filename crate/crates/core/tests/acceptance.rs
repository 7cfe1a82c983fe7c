//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so each verdict line is printed as it is
//! reached; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use diagram_gram::gram::count_j;
use diagram_gram::reduction::{reduce, BlockId, CoarseningPoset};
use diagram_gram::semisimplicity::{integer, semisimple_generic, verdict};
use diagram_gram::verify::*;
use diagram_gram::{build_gram, enumerate_j, Algebra, Params, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), notes: Vec::new() }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn run(n: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = out.pass && in_time;
    println!(
        "criterion {n:>2} {}: {title} [{:.2}s / {}s] {}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        out.detail
    );
    if !in_time {
        println!("    runtime limit exceeded");
    }
    for note in out.notes {
        println!("    {note}");
    }
    pass
}

fn reference_params() -> Params {
    Params::signed(3, 1, 0)
}

fn structure() -> Outcome {
    let basis = enumerate_j(&reference_params()).unwrap();
    let rep = reference_structure().unwrap();
    let cells = vec![((0, 0), 4), ((0, 1), 9), ((1, 0), 12), ((1, 1), 6), ((2, 0), 3)];
    let alphas: BTreeSet<(String, usize)> = [
        ("(3|Φ|Φ|Φ)", 4),
        ("(2|Φ|Φ|1)", 6),
        ("(1|Φ|Φ|2)", 3),
        ("(1|Φ|2|Φ)", 6),
        ("(2|Φ|1|Φ)", 6),
        ("(1|Φ|1|1)", 6),
        ("(1|Φ|1,1|Φ)", 3),
    ]
    .into_iter()
    .map(|(a, n)| (a.to_string(), n))
    .collect();
    let got_alphas: BTreeSet<(String, usize)> = rep.alpha_counts.iter().cloned().collect();
    let pass = basis.len() == 34 && rep.total == 34 && rep.cell_sizes == cells && got_alphas == alphas && rep.labels_match;
    Outcome::new(pass, format!("{} diagrams, cells {:?}, labels d1..d34 aligned: {}", basis.len(), rep.cell_sizes, rep.labels_match))
}

fn raw_matrix() -> Outcome {
    let mismatches = reference_gram_mismatches().unwrap();
    let documented = mismatches_documented(&mismatches).unwrap();
    let pass = mismatches.len() <= 2 && documented;
    let mut out = Outcome::new(pass, format!("{} residual mismatches (limit 2), all documented: {documented}", mismatches.len()));
    for m in &mismatches {
        out = out.note(format!("({}, {}): printed {}, computed {}", m.row, m.col, m.printed, m.computed));
    }
    if !pass {
        out = out.note(
            "the reference table is asymmetric at these entries and no within-cell relabelling removes them; \
             the computed matrix is symmetric and associative",
        );
    }
    out
}

fn reduction() -> Outcome {
    let rep = reference_reduction().unwrap();
    let gram = build_gram(&reference_params()).unwrap();
    let decomp = reduce(&gram, &CoarseningPoset::new(&gram.basis)).unwrap();
    let cubic: Poly = "x^3-3*x".parse().unwrap();
    let quartic: Poly = "x^4-2*x^3-4*x^2+5*x+8".parse().unwrap();
    let rho = decomp.blocks.iter().find(|b| b.id == BlockId::Rho).unwrap();
    let diag: Vec<&Poly> = (0..rho.matrix.len()).map(|i| &rho.matrix[i][i]).collect();
    let cubics = diag.iter().filter(|p| ***p == cubic).count();
    let quartics = diag.iter().filter(|p| ***p == quartic).count();
    let sizes: Vec<usize> = rep.block_sizes.iter().map(|(_, n)| *n).collect();
    let pass = rep.identity_block
        && rep.x_identity_block
        && rep.pairing_block
        && rep.rho_diagonal_exact
        && cubics == 6
        && quartics == 3
        && sizes == [4, 9, 12, 9]
        && rep.strict_closed_form_diffs == 0;
    let mut out = Outcome::new(
        pass,
        format!(
            "blocks {:?}, rho diagonal {cubics}×(x^3-3x) + {quartics}×(x^4-2x^3-4x^2+5x+8), {} off-diagonal rho diffs vs reference",
            rep.block_sizes,
            rep.rho_entry_diffs.len()
        ),
    );
    for (r, c, got, want) in &rep.rho_entry_diffs {
        out = out.note(format!("rho ({r}, {c}): computed {got}, printed {want}"));
    }
    out.note(format!(
        "closed-form predictions: {} strict diffs, {} informative off-diagonal rho diffs",
        rep.strict_closed_form_diffs, rep.closed_form_informative
    ))
}

fn stirling() -> Outcome {
    let (cells, diffs) = stirling_table_diffs().unwrap();
    let table = diagram_gram::fixtures::stirling_table().unwrap();
    let printed_cells: usize = table.rows.iter().map(|r| r.cells.len()).sum();
    // a disagreement is excused only when the brute-force count sides with the formula
    let excused = diffs.iter().all(|d| d.formula == d.oracle.to_string());
    let bad_cells: BTreeSet<_> = diffs.iter().map(|d| (d.row, d.col, d.printed_text.clone())).collect();
    let rec = stirling_recurrences();
    let pass = cells == printed_cells && excused && rec.failures.is_empty();
    let mut out = Outcome::new(
        pass,
        format!(
            "{cells} printed cells × 25 points, {} cells overruled by the oracle; {} recurrence instances, {} failures",
            bad_cells.len(),
            rec.checked,
            rec.failures.len()
        ),
    );
    for (row, col, text) in bad_cells {
        let d = diffs.iter().find(|d| d.row == row && d.col == col).unwrap();
        out = out.note(format!(
            "row {row:?} column {col:?}: printed {text}, at s=({},{}) printed {} but formula and oracle give {}",
            d.s1, d.s2, d.printed, d.formula
        ));
    }
    for f in rec.failures.iter().take(5) {
        out = out.note(format!("recurrence failure: {f}"));
    }
    out
}

fn oracle() -> Outcome {
    let rep = oracle_equivalence(3, 4);
    let mut out = Outcome::new(rep.failures.is_empty(), format!("{} comparisons, {} failures", rep.checked, rep.failures.len()));
    for f in rep.failures.iter().take(5) {
        out = out.note(f.clone());
    }
    out
}

fn structural_invariants() -> Outcome {
    let params = all_params(3, 4);
    let reports: Vec<_> = params.iter().map(|p| structural(p).unwrap()).collect();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    let mut out = Outcome::new(failed.is_empty(), format!("{} Gram matrices, {} failing", reports.len(), failed.len()));
    for r in failed.iter().take(5) {
        out = out.note(format!("{r:?}"));
    }
    out
}

fn poset_duality() -> Outcome {
    let rep = duality(3).unwrap();
    let pass = rep.duality_failures.is_empty() && rep.join_failures.is_empty();
    let mut out = Outcome::new(
        pass,
        format!(
            "{} ordered pairs ({} failures), {} joins ({} failures)",
            rep.pairs,
            rep.duality_failures.len(),
            rep.join_pairs,
            rep.join_failures.len()
        ),
    );
    for f in rep.duality_failures.iter().chain(&rep.join_failures).take(5) {
        out = out.note(f.clone());
    }
    out
}

fn identities() -> Outcome {
    let reports = phi_identities();
    let (stated, extra) = reports.split_at(3);
    let pass = stated.iter().all(|r| r.failures == 0);
    let detail = stated.iter().map(|r| format!("{}: {}/{} fail", r.name, r.failures, r.checked)).collect::<Vec<_>>().join("; ");
    let mut out = Outcome::new(pass, detail);
    for r in stated.iter().filter(|r| r.failures > 0) {
        out = out.note(format!("{} first failure {}", r.name, r.first_failure.as_deref().unwrap_or("")));
    }
    for r in extra {
        out = out.note(format!("informative, {}: {}/{} fail", r.name, r.failures, r.checked));
    }
    out
}

fn random_rationals(rng: &mut StdRng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(-8..=12);
            let den: i64 = rng.gen_range(1..=3);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn semisimplicity() -> Outcome {
    let v = verdict(Algebra::Z2, 4, &integer(2), 2000).unwrap();
    let witnessed = !v.semisimple && v.witnesses.iter().any(|w| w.factor == "x^2-x-2");
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut disagreements = Vec::new();
    let mut non_semisimple = 0;
    for algebra in [Algebra::Partition, Algebra::Z2, Algebra::Signed] {
        let qs = random_rationals(&mut rng, 50);
        for k in 1..=3 {
            let rep = verdict_agreement(algebra, k, &qs, 2000).unwrap();
            checked += rep.checked;
            non_semisimple += rep.non_semisimple;
            disagreements.extend(rep.disagreements.into_iter().map(|q| format!("{algebra} k={k} q={q}")));
        }
    }
    let generic = [Algebra::Partition, Algebra::Z2, Algebra::Signed]
        .iter()
        .all(|&a| (1..=3).all(|k| semisimple_generic(a, k, 2000).unwrap()));
    let pass = witnessed && disagreements.is_empty() && generic;
    let mut out = Outcome::new(
        pass,
        format!(
            "z2 k=4 q=2 not semisimple via x^2-x-2: {witnessed}; {checked} random verdicts, {non_semisimple} non-semisimple, {} disagreements; generic semisimple: {generic}",
            disagreements.len()
        ),
    );
    for d in disagreements.iter().take(5) {
        out = out.note(d.clone());
    }
    out
}

fn zero_through() -> Outcome {
    let failures = zero_through_diagonals(3).unwrap();
    let n: usize = (1..=3).map(|k| count_j(&Params::z2(k, 0, 0)).unwrap() + count_j(&Params::partition(k, 0)).unwrap()).sum();
    let mut out = Outcome::new(failures.is_empty(), format!("{n} diagonal entries, {} mismatches", failures.len()));
    for f in failures.iter().take(5) {
        out = out.note(f.clone());
    }
    out
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "signed k=3 (1,0) basis structure", s(1), structure),
        run(2, "signed k=3 (1,0) Gram matrix vs reference", s(5), raw_matrix),
        run(3, "signed k=3 (1,0) reduced blocks", s(10), reduction),
        run(4, "generalized Stirling table and recurrences", s(5), stirling),
        run(5, "Stirling formula vs brute-force coarsenings", s(60), oracle),
        run(6, "structural invariants of every Gram matrix", s(120), structural_invariants),
        run(7, "coarsening poset vs loop counts, joins", s(120), poset_duality),
        run(8, "phi shift identities", s(60), identities),
        run(9, "semisimplicity verdicts", s(120), semisimplicity),
        run(10, "diagonals without through classes", s(60), zero_through),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
