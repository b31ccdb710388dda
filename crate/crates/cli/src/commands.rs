//! Subcommand bodies. Each returns the process exit code on success; errors
//! are mapped to codes by `exit_code`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde::Serialize;

use stern_core::conjecture::{run_conjecture, ConjectureError, ConjectureId};
use stern_core::families::{self, parse_index, run_identity, FamilyError, FamilyId, Identity};
use stern_core::golden;
use stern_core::grid::{Grid, GridError};
use stern_core::poly::reduce_mod;
use stern_core::search::{
    enumerate_solutions, is_solution, mine_affine_families, read_solutions_csv, series_curve,
    spaced_binary, write_curve_csv, write_solutions_csv, CongruenceSpec, CurveSeries, SearchConfig,
    SearchError, SearchReport, Verdict,
};
use stern_core::stern::{stern_poly, stern_poly_u64};
use stern_core::SternIndex;

use crate::{
    Common, ConjectureArgs, Format, MineArgs, PlotArgs, PolyArgs, SearchArgs, TableArgs, VerifyArgs,
};

/// A malformed request (exit code 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Output closed early by the reader (e.g. piped into `head`).
pub fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|ce| {
                matches!(ce.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe)
            })
            || c.to_string().contains("Broken pipe")
    })
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(s) = cause.downcast_ref::<SearchError>() {
            return match s {
                SearchError::BoundTooLarge { .. } => 3,
                SearchError::BadSpec { .. }
                | SearchError::EvenIndex(_)
                | SearchError::EmptyBound
                | SearchError::TooFewSamples => 2,
                _ => 1,
            };
        }
        if cause.is::<Usage>() || cause.is::<GridError>() || cause.is::<ConjectureError>() {
            return 2;
        }
        if let Some(f) = cause.downcast_ref::<FamilyError>() {
            return match f {
                FamilyError::Poly(_) => 1,
                _ => 2,
            };
        }
    }
    1
}

fn config(c: &Common) -> Result<SearchConfig> {
    if c.workers == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    Ok(SearchConfig { cap: c.cap, ..SearchConfig::with_workers(c.workers) })
}

/// Run `f` on a pool of the configured size, so verifier sweeps honor
/// `--workers` too.
fn pooled<T: Send>(c: &Common, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.workers.max(1))
        .build()
        .context("building worker pool")?;
    Ok(pool.install(f))
}

fn spec(r: u32, m: u32) -> Result<CongruenceSpec> {
    Ok(CongruenceSpec::new(r, m)?)
}

fn stdout() -> BufWriter<io::StdoutLock<'static>> {
    BufWriter::new(io::stdout().lock())
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = stdout();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(stdout());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct PolyOut {
    index: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u32>,
    degree: Option<usize>,
    coefficients: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

pub fn poly(a: &PolyArgs, c: &Common) -> Result<ExitCode> {
    let idx = parse_index(&a.index).with_context(|| format!("cannot read index {:?}", a.index))?;
    let b = stern_poly(&idx);
    let degree = b.degree();
    let coefficients: Vec<String> = match a.modulus {
        Some(m) => {
            let r = reduce_mod(&b, m, degree.unwrap_or(0)).map_err(|e| usage(e.to_string()))?;
            r.coeffs().iter().map(ToString::to_string).collect()
        }
        None if b.is_zero() => vec!["0".into()],
        None => b.coeffs().iter().map(ToString::to_string).collect(),
    };
    let value = a.eval.map(|x| b.eval(&BigInt::from(x)).to_string());
    let out = PolyOut { index: idx.to_string(), modulus: a.modulus, degree, coefficients, value };
    if c.format == Format::Json {
        return print_json(&out).map(|_| ExitCode::SUCCESS);
    }
    let line = if let Some(v) = &out.value {
        v.clone()
    } else if a.degree {
        degree.map_or("undefined".into(), |d| d.to_string())
    } else {
        out.coefficients.join(",")
    };
    writeln!(stdout(), "{line}")?;
    Ok(ExitCode::SUCCESS)
}

fn exclusions(names: &[String]) -> Result<Vec<FamilyId>> {
    names
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<FamilyId>().map_err(anyhow::Error::from))
        .collect()
}

#[derive(Serialize)]
struct CountOut {
    spec: String,
    bound: u64,
    count: u64,
}

pub fn search(a: &SearchArgs, c: &Common) -> Result<ExitCode> {
    let s = spec(a.r, a.m)?;
    let excl = exclusions(&a.exclude)?;
    let mut cfg = config(c)?;
    cfg.checkpoint = a.resume.clone();
    let report = enumerate_solutions(a.max, &s, &excl, &cfg)?;
    if let Some(path) = &a.output {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        match c.format {
            Format::Csv => write_solutions_csv(&report, BufWriter::new(f))?,
            Format::Json => serde_json::to_writer_pretty(BufWriter::new(f), &report)?,
        }
    }
    if a.count || a.output.is_some() {
        let out = CountOut { spec: s.to_string(), bound: a.max, count: report.count };
        match c.format {
            Format::Json => print_json(&out)?,
            Format::Csv => writeln!(stdout(), "{}", report.count)?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    match c.format {
        Format::Json => print_json(&report)?,
        Format::Csv => write_solutions_csv(&report, stdout())?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Table1Row {
    k: u32,
    x: u64,
    pi02: u64,
    pi12: u64,
    expected_pi02: Option<u64>,
    expected_pi12: Option<u64>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

#[derive(Serialize)]
struct ListRow {
    n: u64,
    binary: String,
    found: bool,
    /// Absent when the row lies beyond every reference bound.
    listed: Option<bool>,
}

#[derive(Serialize)]
struct Table5Row {
    r: u32,
    m: String,
    n: u64,
    binary: String,
    poly: String,
    printed_poly: String,
    poly_match: bool,
    congruence: bool,
}

fn finish_table<T: Serialize>(rows: &[T], c: &Common, ok: bool, check: bool) -> Result<ExitCode> {
    match c.format {
        Format::Json => print_json(&rows)?,
        Format::Csv => csv_rows(rows)?,
    }
    if check && !ok {
        eprintln!("table disagrees with the reference values");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn counts_upto(r: &SearchReport, x: u64) -> u64 {
    r.solutions.partition_point(|&n| n <= x) as u64
}

pub fn table(a: &TableArgs, c: &Common) -> Result<ExitCode> {
    let cfg = config(c)?;
    match a.which {
        1 => {
            if !(15..=40).contains(&a.kmax) {
                return Err(usage("--kmax must lie in 15..=40"));
            }
            let x = 1u64 << a.kmax;
            let r02 = enumerate_solutions(x, &spec(0, 2)?, &[], &cfg)?;
            let r12 = enumerate_solutions(x, &spec(1, 2)?, &[], &cfg)?;
            let golden = golden::table1();
            let rows: Vec<Table1Row> = (15..=a.kmax)
                .map(|k| {
                    let x = 1u64 << k;
                    let (pi02, pi12) = (counts_upto(&r02, x), counts_upto(&r12, x));
                    let g = golden.iter().find(|g| g.k == k);
                    Table1Row {
                        k,
                        x,
                        pi02,
                        pi12,
                        expected_pi02: g.map(|g| g.pi02),
                        expected_pi12: g.map(|g| g.pi12),
                        matches: g.map(|g| (g.pi02, g.pi12) == (pi02, pi12)),
                    }
                })
                .collect();
            let ok = rows.iter().all(|r| r.matches != Some(false));
            finish_table(&rows, c, ok, a.check)
        }
        2..=4 => {
            let t = golden::solution_table(a.which).expect("tables 2 to 4");
            let report = enumerate_solutions(a.max, &t.spec, &t.exclusions, &cfg)?;
            let within = a.max <= 1u64 << t.bound_log2;
            let listed: Vec<u64> = t.up_to(a.max).iter().map(|e| e.n).collect();
            let mut ns: Vec<u64> = report.solutions.iter().chain(&listed).copied().collect();
            ns.sort_unstable();
            ns.dedup();
            let rows: Vec<ListRow> = ns
                .into_iter()
                .map(|n| ListRow {
                    n,
                    binary: spaced_binary(n),
                    found: report.solutions.binary_search(&n).is_ok(),
                    listed: within.then(|| listed.contains(&n)),
                })
                .collect();
            let ok = rows.iter().all(|r| r.listed.is_none_or(|l| l == r.found));
            finish_table(&rows, c, ok, a.check)
        }
        _ => {
            let rows: Vec<Table5Row> = golden::table5()
                .into_iter()
                .map(|row| {
                    let b = stern_poly_u64(row.n);
                    let congruence = row.moduli().into_iter().all(|m| {
                        CongruenceSpec::new(row.r, m)
                            .and_then(|s| is_solution(&SternIndex::new(row.n), &s))
                            .unwrap_or(false)
                    });
                    Table5Row {
                        poly_match: b.pretty() == row.poly,
                        poly: b.pretty(),
                        printed_poly: row.poly,
                        r: row.r,
                        m: row.m,
                        n: row.n,
                        binary: row.binary,
                        congruence,
                    }
                })
                .collect();
            let ok = rows.iter().all(|r| r.poly_match && r.congruence);
            finish_table(&rows, c, ok, a.check)
        }
    }
}

pub fn plotdata(a: &PlotArgs, c: &Common) -> Result<ExitCode> {
    let series: CurveSeries = a.series.parse().map_err(|_| {
        usage(format!("unknown series {:?} (pi02, pi12, ratio, norm02, norm12)", a.series))
    })?;
    let pts = series_curve(series, a.x_max, a.samples, &config(c)?)?;
    match (&a.out, c.format) {
        (Some(path), Format::Csv) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_curve_csv(&pts, BufWriter::new(f))?;
        }
        (Some(path), Format::Json) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            serde_json::to_writer_pretty(BufWriter::new(f), &pts)?;
        }
        (None, Format::Csv) => write_curve_csv(&pts, stdout())?,
        (None, Format::Json) => print_json(&pts)?,
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: &VerifyArgs, c: &Common) -> Result<ExitCode> {
    let id: Identity = a.identity.parse()?;
    let grid: Grid = a.range.parse()?;
    let rep = pooled(c, || run_identity(id, &grid))??;
    match c.format {
        Format::Json => print_json(&rep)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout());
            w.write_record(["identity", "params", "checked", "failures", "pass", "counterexample"])?;
            let ce = rep
                .counterexample
                .as_ref()
                .map(|x| format!("{} {}: {} != {}", x.cell, x.check, x.lhs, x.rhs))
                .unwrap_or_default();
            w.write_record([
                rep.identity.as_str(),
                rep.params.as_str(),
                &rep.checked.to_string(),
                &rep.failures.to_string(),
                if rep.pass { "pass" } else { "fail" },
                &ce,
            ])?;
            w.flush()?;
        }
    }
    Ok(if rep.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct CellRow<'a> {
    cell: &'a str,
    index: &'a str,
    real_roots: Option<usize>,
    increasing: Option<bool>,
    identity_holds: Option<bool>,
    irreducibility: String,
    consistent: Option<bool>,
    detail: Option<&'a str>,
}

pub fn conjecture(a: &ConjectureArgs, c: &Common) -> Result<ExitCode> {
    let id: ConjectureId = a.id.parse()?;
    let grid: Grid = a.grid.parse()?;
    let rep = pooled(c, || run_conjecture(id, &grid))??;
    match c.format {
        Format::Json => print_json(&rep)?,
        Format::Csv => {
            let rows: Vec<CellRow> = rep
                .cells
                .iter()
                .map(|x| CellRow {
                    cell: &x.cell,
                    index: &x.index,
                    real_roots: x.real_roots,
                    increasing: x.increasing,
                    identity_holds: x.identity_holds,
                    irreducibility: x
                        .irreducibility
                        .iter()
                        .map(|v| format!("{v:?}").to_lowercase())
                        .collect::<Vec<_>>()
                        .join(";"),
                    consistent: x.consistent,
                    detail: x.detail.as_deref(),
                })
                .collect();
            csv_rows(&rows)?;
            for n in &rep.notes {
                eprintln!("note: {n}");
            }
        }
    }
    // observations never fail the process
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct MineRow {
    p: String,
    q: String,
    u: String,
    quadruple: String,
    verdict: &'static str,
    index: Option<u32>,
    value: Option<String>,
    reason: Option<String>,
}

pub fn mine(a: &MineArgs, c: &Common) -> Result<ExitCode> {
    let f = File::open(&a.input).with_context(|| format!("opening {}", a.input.display()))?;
    let (s, sols) = read_solutions_csv(f)?;
    let Some(s) = s else {
        bail!(usage(format!("{} holds no solutions", a.input.display())));
    };
    let mined = pooled(c, || mine_affine_families(&sols, a.depth, &s))??;
    match c.format {
        Format::Json => print_json(&mined)?,
        Format::Csv => {
            let rows: Vec<MineRow> = mined
                .iter()
                .map(|f| {
                    let (verdict, index, value, reason) = match &f.verdict {
                        Verdict::Validated { .. } => ("validated", None, None, None),
                        Verdict::Rejected { index, value, reason } => {
                            ("rejected", Some(*index), Some(value.clone()), Some(reason.clone()))
                        }
                    };
                    MineRow {
                        p: f.triple.p.to_string(),
                        q: f.triple.q.to_string(),
                        u: f.triple.u.to_string(),
                        quadruple: join(&f.quadruple),
                        verdict,
                        index,
                        value,
                        reason,
                    }
                })
                .collect();
            csv_rows(&rows)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn errata(c: &Common) -> Result<ExitCode> {
    let list = families::errata();
    match c.format {
        Format::Json => print_json(&list)?,
        Format::Csv => csv_rows(&list)?,
    }
    Ok(ExitCode::SUCCESS)
}
