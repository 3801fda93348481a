//! Command-line front end over the core library.

use std::ffi::OsString;
use std::io::{self, Write};
use std::sync::Arc;
use std::time::Instant;

use chardeg_core::bounds::{bounds_table, scan_inequalities, BoundsRow, Lemma, ScanResult};
use chardeg_core::census::{
    acceptance_matrix, run_census, verify_counts_with, CensusQuery, CensusReport, Twist, VerificationRecord,
};
use chardeg_core::groups::{GroupFamily, GroupSpec};
use chardeg_core::qpoly::Degree;
use chardeg_core::sums::{degree_sum, degree_sum_poly, SumKind, SumResult};
use chardeg_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "chardeg", version, about = "Character degree sums of finite classical groups")]
pub struct Cli {
    /// Worker threads for census and scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: GroupFamily,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a degree-sum formula.
    Sum {
        #[command(flatten)]
        group: FamilyArgs,
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_kind)]
        kind: SumKind,
    },
    /// Print a degree-sum formula as a polynomial in q.
    Poly {
        #[command(flatten)]
        group: FamilyArgs,
        #[arg(long, value_parser = parse_kind)]
        kind: SumKind,
    },
    /// Enumerate a group and count involutions and twisted involutions.
    Census {
        #[command(flatten)]
        group: FamilyArgs,
        #[arg(long)]
        p: u64,
        /// Comma-separated subset of +1,-1.
        #[arg(long, allow_hyphen_values = true, default_value = "+1,-1")]
        twists: String,
        /// Skip the (mu, j) buckets.
        #[arg(long)]
        no_buckets: bool,
    },
    /// Compare every closed-form count with the census.
    Verify {
        #[command(flatten)]
        group: FamilyArgs,
        #[arg(long)]
        p: u64,
    },
    /// Tabulate degree sums against their bounds.
    Bounds {
        /// One or more families, comma-separated.
        #[arg(long, value_parser = parse_family, value_delimiter = ',', required = true)]
        family: Vec<GroupFamily>,
        /// A value, a comma list, or an inclusive range such as 1..3.
        #[arg(long, value_parser = parse_usize_set)]
        n: UsizeSet,
        /// Comma-separated field sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// Exhaustively check one of the auxiliary inequalities.
    Scan {
        #[arg(long, value_parser = parse_lemma)]
        lemma: Lemma,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        q_max: u64,
    },
    /// Run every standard check and summarize the results.
    VerifyAll,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsizeSet(pub Vec<usize>);

fn parse_family(s: &str) -> Result<GroupFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<SumKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_lemma(s: &str) -> Result<Lemma, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_usize_set(s: &str) -> Result<UsizeSet, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    let mut out = Vec::new();
    for part in s.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {part}"));
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    Ok(UsizeSet(out))
}

fn parse_twists(s: &str) -> Result<Vec<Twist>, Error> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let t: Twist = part.parse()?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort();
    Ok(out)
}

type CensusTamper = Arc<dyn Fn(&mut CensusReport) + Send + Sync>;
type BoundsTamper = Arc<dyn Fn(&mut BoundsRow) + Send + Sync>;

/// Test hooks that corrupt intermediate results, to exercise failure exits.
#[derive(Clone, Default)]
pub struct Hooks {
    pub census: Option<CensusTamper>,
    pub bounds: Option<BoundsTamper>,
}

/// Outcome of a command before rendering: the exit status.
enum Status {
    Ok,
    Failed,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Verification(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// output to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_hooks(args, out, err, &Hooks::default())
}

pub fn run_with_hooks<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, hooks: &Hooks) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    // Output is buffered so the command can run inside a separate thread pool.
    let mut buf = Vec::new();
    let exec = |buf: &mut Vec<u8>| execute(&cli, buf, hooks);
    let result = match cli.jobs {
        Some(0) => Err(Error::Domain("--jobs must be positive".into()).into()),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| exec(&mut buf)),
            Err(e) => Err(CliError::Io(io::Error::other(e.to_string()))),
        },
        None => exec(&mut buf),
    };
    let result = result.and_then(|s| out.write_all(&buf).map(|_| s).map_err(CliError::from));
    match result {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::Failed) => EXIT_FAILURE,
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e.to_string()))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(io::Error::other(e.to_string()))
    }
}

type CmdResult = Result<Status, CliError>;

fn status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, hooks: &Hooks) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Sum { group, q, kind } => {
            let spec = GroupSpec::new(group.family, group.n, *q)?;
            render_sum(out, fmt, &degree_sum(&spec, *kind)?)?;
            Ok(Status::Ok)
        }
        Command::Poly { group, kind } => {
            let poly = degree_sum_poly(group.family, group.n, *kind)?;
            let degree = match poly.degree() {
                Degree::Finite(d) => Some(d),
                Degree::MinusInfinity => None,
            };
            let row = PolyRow {
                family: group.family,
                n: group.n,
                kind: *kind,
                degree,
                poly: poly.render(),
            };
            match fmt {
                OutputFormat::Table => writeln!(out, "{}", row.poly)?,
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&row)?)?,
                OutputFormat::Csv => write_csv(out, &["family", "n", "kind", "degree", "poly"], [vec![
                    row.family.tag().to_string(),
                    row.n.to_string(),
                    row.kind.tag().to_string(),
                    degree.map(|d| d.to_string()).unwrap_or_default(),
                    row.poly.clone(),
                ]])?,
            }
            Ok(Status::Ok)
        }
        Command::Census {
            group,
            p,
            twists,
            no_buckets,
        } => {
            let query = CensusQuery {
                spec: GroupSpec::new(group.family, group.n, *p)?,
                want_buckets: !no_buckets,
                twist_constants: parse_twists(twists)?,
            };
            let mut report = run_census(&query)?;
            if let Some(t) = &hooks.census {
                t(&mut report);
            }
            render_census(out, fmt, &report)?;
            Ok(Status::Ok)
        }
        Command::Verify { group, p } => {
            let spec = GroupSpec::new(group.family, group.n, *p)?;
            let record = verify(&spec, hooks)?;
            render_verification(out, fmt, &record)?;
            Ok(status(record.all_pass()))
        }
        Command::Bounds { family, n, q } => {
            let mut rows = bounds_table(family, &n.0, q)?;
            if let Some(t) = &hooks.bounds {
                rows.iter_mut().for_each(|r| t(r));
            }
            render_bounds(out, fmt, &rows)?;
            Ok(status(rows.iter().all(BoundsRow::passes)))
        }
        Command::Scan { lemma, m_max, q_max } => {
            let result = scan_inequalities(*lemma, *m_max, *q_max)?;
            render_scan(out, fmt, &result)?;
            Ok(status(result.passes()))
        }
        Command::VerifyAll => verify_all(out, fmt, hooks),
    }
}

fn verify(spec: &GroupSpec, hooks: &Hooks) -> Result<VerificationRecord, Error> {
    match &hooks.census {
        Some(t) => verify_counts_with(spec, |r| t(r)),
        None => verify_counts_with(spec, |_| {}),
    }
}

#[derive(Serialize)]
struct PolyRow {
    family: GroupFamily,
    n: usize,
    kind: SumKind,
    degree: Option<usize>,
    poly: String,
}

fn write_csv<R, I>(out: &mut dyn Write, header: &[&str], rows: R) -> Result<(), CliError>
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned text table.
fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    writeln!(out, "{}", line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn render_sum(out: &mut dyn Write, fmt: OutputFormat, r: &SumResult) -> Result<(), CliError> {
    let poly = r.poly.as_ref().map(|p| p.render());
    match fmt {
        OutputFormat::Table => {
            writeln!(out, "{} n={} q={} kind={}", r.spec.family, r.spec.n, r.spec.q, r.kind)?;
            writeln!(out, "value:  {}", r.value)?;
            writeln!(out, "poly:   {}", poly.as_deref().unwrap_or("(not an integer polynomial)"))?;
            writeln!(out, "source: {}", r.source_citation)?;
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(r)?)?,
        OutputFormat::Csv => write_csv(
            out,
            &["family", "n", "q", "kind", "value", "poly", "source_citation"],
            [vec![
                r.spec.family.tag().to_string(),
                r.spec.n.to_string(),
                r.spec.q.to_string(),
                r.kind.tag().to_string(),
                r.value.to_string(),
                poly.unwrap_or_default(),
                r.source_citation.clone(),
            ]],
        )?,
    }
    Ok(())
}

const CENSUS_CSV_HEADER: [&str; 8] = ["family", "n", "p", "quantity", "mu", "j", "c", "count"];

fn census_rows(r: &CensusReport) -> Vec<Vec<String>> {
    let base = |quantity: &str, mu: String, j: String, c: String, count: String| {
        vec![
            r.spec.family.tag().to_string(),
            r.spec.n.to_string(),
            r.spec.q.to_string(),
            quantity.to_string(),
            mu,
            j,
            c,
            count,
        ]
    };
    let mut rows = vec![
        base("order", String::new(), String::new(), String::new(), r.order.to_string()),
        base(
            "involutions",
            String::new(),
            String::new(),
            String::new(),
            r.involution_total.to_string(),
        ),
    ];
    for b in &r.buckets {
        rows.push(base("bucket", format!("{:+}", b.mu), b.j.to_string(), String::new(), b.count.to_string()));
    }
    for (t, c) in &r.twisted_counts {
        rows.push(base("twisted", String::new(), String::new(), t.label().to_string(), c.to_string()));
    }
    rows
}

fn render_census(out: &mut dyn Write, fmt: OutputFormat, r: &CensusReport) -> Result<(), CliError> {
    match fmt {
        OutputFormat::Table => {
            writeln!(out, "{} n={} p={}", r.spec.family, r.spec.n, r.spec.q)?;
            writeln!(out, "order:       {}", r.order)?;
            writeln!(out, "involutions: {}", r.involution_total)?;
            if !r.buckets.is_empty() {
                let rows: Vec<Vec<String>> = r
                    .buckets
                    .iter()
                    .map(|b| vec![format!("{:+}", b.mu), b.j.to_string(), b.count.to_string()])
                    .collect();
                write_table(out, &["mu", "j", "count"], &rows)?;
            }
            for (t, c) in &r.twisted_counts {
                writeln!(out, "twisted g^2 = {t}*mu(g)*I: {c}")?;
            }
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(r)?)?,
        OutputFormat::Csv => write_csv(out, &CENSUS_CSV_HEADER, census_rows(r))?,
    }
    Ok(())
}

const VERIFY_HEADER: [&str; 8] = ["family", "n", "p", "claim", "formula", "census", "pass", "external"];

fn verification_rows(r: &VerificationRecord) -> Vec<Vec<String>> {
    r.claims
        .iter()
        .map(|c| {
            vec![
                r.spec.family.tag().to_string(),
                r.spec.n.to_string(),
                r.spec.q.to_string(),
                c.name.clone(),
                c.formula.to_string(),
                c.census.to_string(),
                c.pass.to_string(),
                c.external.to_string(),
            ]
        })
        .collect()
}

fn render_verification(out: &mut dyn Write, fmt: OutputFormat, r: &VerificationRecord) -> Result<(), CliError> {
    match fmt {
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = r
                .claims
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.formula.to_string(),
                        c.census.to_string(),
                        if c.pass { "pass" } else { "FAIL" }.to_string(),
                        if c.external { "external" } else { "" }.to_string(),
                    ]
                })
                .collect();
            writeln!(out, "{} n={} p={}", r.spec.family, r.spec.n, r.spec.q)?;
            write_table(out, &["claim", "formula", "census", "result", "note"], &rows)?;
            let failed = r.failures().count();
            writeln!(out, "{} claims, {} failed", r.claims.len(), failed)?;
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(r)?)?,
        OutputFormat::Csv => write_csv(out, &VERIFY_HEADER, verification_rows(r))?,
    }
    Ok(())
}

fn render_bounds(out: &mut dyn Write, fmt: OutputFormat, rows: &[BoundsRow]) -> Result<(), CliError> {
    match fmt {
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let rec = r.csv_record();
                    vec![
                        rec[0].clone(),
                        rec[1].clone(),
                        rec[2].clone(),
                        format!("{} ({})", rec[6], rec[7]),
                        rec[8].clone(),
                        rec[9].clone(),
                        rec[10].clone(),
                        if r.passes() { "pass" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            write_table(
                out,
                &["family", "n", "q", "sum", "lower", "conj_upper", "refined_upper", "result"],
                &cells,
            )?;
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
        OutputFormat::Csv => write_csv(out, &BoundsRow::CSV_HEADER, rows.iter().map(BoundsRow::csv_record))?,
    }
    Ok(())
}

fn render_scan(out: &mut dyn Write, fmt: OutputFormat, r: &ScanResult) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = r
        .violations
        .iter()
        .map(|v| {
            vec![
                v.lemma.tag().to_string(),
                v.m.to_string(),
                v.k.map(|k| k.to_string()).unwrap_or_default(),
                v.q.to_string(),
                v.lhs.to_string(),
                v.rhs.to_string(),
            ]
        })
        .collect();
    let header = ["lemma", "m", "k", "q", "lhs", "rhs"];
    match fmt {
        OutputFormat::Table => {
            writeln!(
                out,
                "{}: m <= {}, 2 <= q <= {}, {} cells, {} violations",
                r.lemma,
                r.m_max,
                r.q_max,
                r.cells_checked,
                r.violations.len()
            )?;
            if !rows.is_empty() {
                write_table(out, &header, &rows)?;
            }
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(r)?)?,
        OutputFormat::Csv => write_csv(out, &header, rows)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SummaryRow {
    check: String,
    status: &'static str,
    detail: String,
    seconds: f64,
}

fn verify_all(out: &mut dyn Write, fmt: OutputFormat, hooks: &Hooks) -> CmdResult {
    let mut summary: Vec<SummaryRow> = Vec::new();
    let mut push = |check: String, ok: bool, detail: String, start: Instant| {
        summary.push(SummaryRow {
            check,
            status: if ok { "pass" } else { "FAIL" },
            detail,
            seconds: (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0,
        });
    };

    for spec in acceptance_matrix() {
        let start = Instant::now();
        match verify(&spec, hooks) {
            Ok(r) => {
                let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
                let detail = if failed.is_empty() {
                    format!("{} claims", r.claims.len())
                } else {
                    format!("failed: {}", failed.join("; "))
                };
                push(format!("census {spec}"), failed.is_empty(), detail, start);
            }
            Err(e) => push(format!("census {spec}"), false, e.to_string(), start),
        }
    }

    for (lemma, m_max) in [(Lemma::Binomineq, 40), (Lemma::EvenDim, 30), (Lemma::OddDim, 30)] {
        let start = Instant::now();
        let r = scan_inequalities(lemma, m_max, 50)?;
        push(
            format!("scan {lemma} m<={m_max} q<=50"),
            r.passes(),
            format!("{} cells, {} violations", r.cells_checked, r.violations.len()),
            start,
        );
    }

    let start = Instant::now();
    let qs: Vec<u64> = (3..=49).step_by(2).collect();
    let ns: Vec<usize> = (1..=8).collect();
    let mut rows = bounds_table(
        &[
            GroupFamily::Gl,
            GroupFamily::U,
            GroupFamily::Gsp,
            GroupFamily::SoOdd,
            GroupFamily::GoPlusConn,
            GroupFamily::GoMinusConn,
        ],
        &ns,
        &qs,
    )?;
    if let Some(t) = &hooks.bounds {
        rows.iter_mut().for_each(|r| t(r));
    }
    let failed = rows.iter().filter(|r| !r.passes()).count();
    push(
        "bounds n<=8 odd q<=49".to_string(),
        failed == 0,
        format!("{} rows, {} failed", rows.len(), failed),
        start,
    );

    let all_ok = summary.iter().all(|r| r.status == "pass");
    match fmt {
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = summary
                .iter()
                .map(|r| vec![r.check.clone(), r.status.to_string(), r.detail.clone(), format!("{:.2}", r.seconds)])
                .collect();
            write_table(out, &["check", "result", "detail", "seconds"], &cells)?;
            let passed = summary.iter().filter(|r| r.status == "pass").count();
            writeln!(out, "{passed}/{} checks passed", summary.len())?;
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?,
        OutputFormat::Csv => write_csv(
            out,
            &["check", "result", "detail", "seconds"],
            summary
                .iter()
                .map(|r| vec![r.check.clone(), r.status.to_string(), r.detail.clone(), r.seconds.to_string()]),
        )?,
    }
    Ok(status(all_ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("chardeg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usize_sets() {
        assert_eq!(parse_usize_set("1..3").unwrap(), UsizeSet(vec![1, 2, 3]));
        assert_eq!(parse_usize_set("2").unwrap(), UsizeSet(vec![2]));
        assert_eq!(parse_usize_set("1,4..=5").unwrap(), UsizeSet(vec![1, 4, 5]));
        assert!(parse_usize_set("3..1").is_err());
        assert!(parse_usize_set("x").is_err());
    }

    #[test]
    fn twist_lists() {
        assert_eq!(parse_twists("-1").unwrap(), vec![Twist::Minus]);
        assert_eq!(parse_twists("-1,+1,-1").unwrap(), vec![Twist::Plus, Twist::Minus]);
        assert!(parse_twists("2").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["sum", "--family", "gsp", "--n", "1", "--q", "3", "--kind", "real_valued"]).0, 0);
        assert_eq!(run_args(&["sum", "--family", "sp", "--n", "1", "--q", "3", "--kind", "fs_plus"]).0, 2);
        assert_eq!(run_args(&["sum", "--family", "nope", "--n", "1", "--q", "3", "--kind", "all"]).0, 2);
        assert_eq!(run_args(&["--jobs", "0", "scan", "--lemma", "even_dim", "--m-max", "1", "--q-max", "2"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn table_alignment() {
        let mut out = Vec::new();
        write_table(&mut out, &["a", "bb"], &[vec!["xxx".into(), "y".into()]]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "a    bb\n---  --\nxxx  y\n");
    }
}
