//! `dgram`: command-line access to the diagram Gram toolkit.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use diagram_gram::determinant::{det_blocks, det_direct};
use diagram_gram::gram::{count_j, key_json};
use diagram_gram::polynomials::parse_rational;
use diagram_gram::reduction::{reduce, CoarseningPoset};
use diagram_gram::semisimplicity::{self, CAVEAT};
use diagram_gram::stirling::{b_z2, table_z2, StirlingParams, TABLE_LABELS};
use diagram_gram::{build_gram, enumerate_j, Algebra, Error, Params};
use serde_json::{json, Value};

mod verify;

#[derive(Parser)]
#[command(name = "dgram", version, about = "Gram matrices of symmetric partition, Z2 and signed diagrams")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest basis size any command may build.
    #[arg(long, default_value_t = 2000, global = true)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// List the symmetric diagrams indexing the Gram matrix.
    Enumerate(ParamArgs),
    /// Build the Gram matrix.
    Gram(ParamArgs),
    /// Reduce the Gram matrix to blocks.
    Reduce(ParamArgs),
    /// Determinant of the Gram matrix.
    Det {
        #[command(flatten)]
        params: ParamArgs,
        /// Interpolate the full determinant instead of multiplying blocks.
        #[arg(long)]
        direct: bool,
    },
    /// Generalized Stirling numbers of the Z2 family.
    Stirling(StirlingArgs),
    /// Semisimplicity at an exact rational parameter, or `x` for the generic case.
    Semisimple {
        #[arg(long)]
        algebra: Algebra,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: String,
    },
    /// Run the invariant suite and the reference comparisons.
    Verify {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    algebra: Algebra,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    s1: usize,
    #[arg(long, default_value_t = 0)]
    s2: usize,
    /// Through classes for the partition algebra; same as `--s1`.
    #[arg(long)]
    s: Option<usize>,
}

impl ParamArgs {
    fn params(&self, max_dim: usize) -> Result<Params> {
        let p = match self.algebra {
            Algebra::Partition => {
                if self.s2 != 0 {
                    return Err(Error::Window("the partition algebra takes a single through count".into()).into());
                }
                Params::partition(self.k, self.s.unwrap_or(self.s1))
            }
            Algebra::Z2 => Params::z2(self.k, self.s1, self.s2),
            Algebra::Signed => Params::signed(self.k, self.s1, self.s2),
        };
        p.validate()?;
        let n = count_j(&p)?;
        if n > max_dim {
            return Err(Error::ResourceGuard { projected: n, limit: max_dim }.into());
        }
        Ok(p)
    }
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long, default_value_t = 0)]
    s1: usize,
    #[arg(long, default_value_t = 0)]
    s2: usize,
    /// Print the full grid over the standard row and column labels.
    #[arg(long)]
    table: bool,
    #[arg(long, required_unless_present = "table")]
    r1: Option<usize>,
    #[arg(long, required_unless_present = "table")]
    r2: Option<usize>,
    #[arg(long, required_unless_present = "table")]
    p1: Option<usize>,
    #[arg(long, required_unless_present = "table")]
    p2: Option<usize>,
}

/// One result rendered in all three formats.
struct Rendered {
    json: Value,
    csv: String,
    pretty: String,
}

impl Rendered {
    fn pick(self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv,
            Format::Pretty => self.pretty,
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn header(p: &Params) -> Value {
    json!({ "algebra": p.algebra, "k": p.k, "s1": p.s1, "s2": p.s2 })
}

fn enumerate(p: &Params) -> Result<Rendered> {
    let basis = enumerate_j(p)?;
    let mut json = header(p);
    json["diagrams"] = basis.iter().map(key_json).collect();
    let mut csv = csv_line(&["index", "i", "alpha", "r1", "r2", "diagram"].map(String::from));
    let mut rows = vec![["index", "i", "alpha", "(r1,r2)", "diagram"].map(String::from).to_vec()];
    for (n, e) in basis.iter().enumerate() {
        let alpha = e.key.alpha.to_string();
        csv.push_str(&csv_line(&[
            n.to_string(),
            e.key.i.to_string(),
            alpha.clone(),
            e.key.r1.to_string(),
            e.key.r2.to_string(),
            e.diagram.to_string(),
        ]));
        rows.push(vec![n.to_string(), e.key.i.to_string(), alpha, format!("({},{})", e.key.r1, e.key.r2), e.diagram.to_string()]);
    }
    Ok(Rendered { json, csv, pretty: grid(&rows) })
}

fn gram(p: &Params) -> Result<Rendered> {
    let g = build_gram(p)?;
    let rows: Vec<Vec<String>> = g.entries().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    Ok(Rendered { json: g.to_json(), csv: g.to_csv(), pretty: grid(&rows) })
}

fn reduced(p: &Params) -> Result<Rendered> {
    let g = build_gram(p)?;
    let d = reduce(&g, &CoarseningPoset::new(&g.basis))?;
    let csv: String = d.reduced.iter().map(|r| csv_line(&r.iter().map(ToString::to_string).collect::<Vec<_>>())).collect();
    let mut pretty = String::new();
    for b in &d.blocks {
        writeln!(pretty, "block {} rows {:?}", b.id, b.indices)?;
        let rows: Vec<Vec<String>> = b.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        pretty.push_str(&grid(&rows));
    }
    for diff in &d.diffs {
        writeln!(
            pretty,
            "{} {} ({}, {}): reduced {}, closed form {}",
            if diff.informative { "note" } else { "diff" },
            diff.block,
            diff.row,
            diff.col,
            diff.got,
            diff.predicted
        )?;
    }
    Ok(Rendered { json: d.to_json(), csv, pretty })
}

fn det(p: &Params, direct: bool) -> Result<Rendered> {
    let g = build_gram(p)?;
    let (poly, factors) = if direct {
        (det_direct(&g.entries()), Vec::new())
    } else {
        let d = reduce(&g, &CoarseningPoset::new(&g.basis))?;
        let r = det_blocks(&d);
        (r.poly, r.factored.unwrap_or_default())
    };
    let mut json = header(p);
    json["det"] = json!(poly.to_string());
    json["coefficients"] = json!(poly.to_json_coeffs());
    json["factors"] = factors.iter().map(|(f, m)| json!({ "factor": f.to_string(), "multiplicity": m })).collect();
    let mut csv = csv_line(&["factor".into(), "multiplicity".into()]);
    let mut pretty = format!("det = {poly}\n");
    for (f, m) in &factors {
        csv.push_str(&csv_line(&[f.to_string(), m.to_string()]));
        writeln!(pretty, "  ({f})^{m}")?;
    }
    if factors.is_empty() {
        csv.push_str(&csv_line(&[poly.to_string(), "1".into()]));
    }
    Ok(Rendered { json, csv, pretty })
}

fn label((a, b): (usize, usize)) -> String {
    format!("({a},{b})")
}

fn stirling(a: &StirlingArgs) -> Result<Rendered> {
    if !a.table {
        let sp = StirlingParams::new(a.s1, a.s2, a.r1.unwrap(), a.r2.unwrap(), a.p1.unwrap(), a.p2.unwrap());
        let v = b_z2(&sp).to_string();
        let json = json!({ "s1": sp.s1, "s2": sp.s2, "r1": sp.r1, "r2": sp.r2, "p1": sp.p1, "p2": sp.p2, "value": v });
        let csv = csv_line(&["s1", "s2", "r1", "r2", "p1", "p2", "value"].map(String::from))
            + &csv_line(&[sp.s1, sp.s2, sp.r1, sp.r2, sp.p1, sp.p2].map(|n| n.to_string()).into_iter().chain([v.clone()]).collect::<Vec<_>>());
        return Ok(Rendered { json, csv, pretty: format!("{v}\n") });
    }
    let t = table_z2(a.s1, a.s2);
    let labels: Vec<String> = TABLE_LABELS.iter().map(|&l| label(l)).collect();
    let values: Vec<Vec<String>> = t.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let json = json!({ "s1": a.s1, "s2": a.s2, "rows": labels, "columns": labels, "values": values });
    let mut head = vec!["r\\p".to_string()];
    head.extend(labels.iter().cloned());
    let mut csv = csv_line(&head);
    let mut rows = vec![head];
    for (l, r) in labels.iter().zip(&values) {
        let mut line = vec![l.clone()];
        line.extend(r.iter().cloned());
        csv.push_str(&csv_line(&line));
        rows.push(line);
    }
    Ok(Rendered { json, csv, pretty: grid(&rows) })
}

fn semisimple(algebra: Algebra, k: usize, q: &str, max_dim: usize) -> Result<Rendered> {
    if q.trim() == "x" {
        let ok = semisimplicity::semisimple_generic(algebra, k, max_dim)?;
        let json = json!({ "algebra": algebra, "k": k, "q": "x", "semisimple": ok, "witnesses": [], "caveat": CAVEAT });
        let csv = csv_line(&["algebra", "k", "q", "semisimple"].map(String::from))
            + &csv_line(&[algebra.to_string(), k.to_string(), "x".into(), ok.to_string()]);
        let pretty = format!("{algebra} k={k} over Q(x): {}\n", if ok { "semisimple" } else { "not semisimple" });
        return Ok(Rendered { json, csv, pretty });
    }
    let qv = parse_rational(q)?;
    let v = semisimplicity::verdict(algebra, k, &qv, max_dim)?;
    let mut csv = csv_line(&["s1", "s2", "block", "factor"].map(String::from));
    let mut pretty = format!(
        "{} k={} q={}: {}\n",
        v.algebra,
        v.k,
        v.q,
        if v.semisimple { "semisimple" } else { "not semisimple" }
    );
    for w in &v.witnesses {
        csv.push_str(&csv_line(&[w.s1.to_string(), w.s2.to_string(), w.block.clone(), w.factor.clone()]));
        writeln!(pretty, "  s=({},{}) block {}: {}", w.s1, w.s2, w.block, w.factor)?;
    }
    writeln!(pretty, "note: {CAVEAT}")?;
    Ok(Rendered { json: serde_json::to_value(&v)?, csv, pretty })
}

fn init_threads() -> Result<()> {
    if let Ok(n) = std::env::var("DIAGRAM_GRAM_THREADS") {
        let n: usize = n.trim().parse().context("DIAGRAM_GRAM_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    init_threads()?;
    let max = cli.max_dim;
    let (rendered, code) = match &cli.command {
        Command::Enumerate(a) => (enumerate(&a.params(max)?)?, ExitCode::SUCCESS),
        Command::Gram(a) => (gram(&a.params(max)?)?, ExitCode::SUCCESS),
        Command::Reduce(a) => (reduced(&a.params(max)?)?, ExitCode::SUCCESS),
        Command::Det { params, direct } => (det(&params.params(max)?, *direct)?, ExitCode::SUCCESS),
        Command::Stirling(a) => (stirling(a)?, ExitCode::SUCCESS),
        Command::Semisimple { algebra, k, q } => (semisimple(*algebra, *k, q, max)?, ExitCode::SUCCESS),
        Command::Verify { k } => {
            let report = verify::run(*k, max)?;
            let code = if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) };
            (report.render(), code)
        }
    };
    let text = rendered.pick(cli.format);
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::ResourceGuard { .. }) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
