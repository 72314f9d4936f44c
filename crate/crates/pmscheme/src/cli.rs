//! Command-line front end.
//!
//! Exit codes: 0 done, 1 negative verdict (no, UNSAT, violations),
//! 2 usage or input error, 3 aborted at a limit, 4 the two checkers disagree.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::result::Result;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use pmscheme_core::factorisation::design_violations;
use pmscheme_core::feasibility::{screen_table, ShapePattern};
use pmscheme_core::partition::{block_matching_count, odd_double_factorial};
use pmscheme_core::scalar::{approx, from_uint};
use pmscheme_core::search::MAX_SEARCH_N;
use pmscheme_core::*;
use serde_json::{json, Value};

use crate::format::{read_members, read_set, set_to_json, to_json, to_text, to_value, FormatError};
use crate::parallel::zonal_table_threaded;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ABORTED: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "pmscheme",
    version,
    about = "Perfect matchings of K_2n: spectra, factorisations, search"
)]
pub struct Cli {
    /// Threads for building zonal tables. Search always runs on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count, list or sort by coset type the matchings of K_2n.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print every matching.
        #[arg(long)]
        list: bool,
        /// Sphere sizes around the base matching, by enumeration.
        #[arg(long)]
        spheres: bool,
    },
    /// Zonal spherical functions, valencies, degrees and optionally P and Q.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pq: bool,
        /// Decimal approximations instead of fractions.
        #[arg(long, conflicts_with = "json")]
        decimal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a file of matchings is a λ-factorisation.
    Check {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        lambda: Partition,
        #[arg(long, value_enum, default_value_t = Method::Definition)]
        method: Method,
    },
    /// Necessary conditions for a λ-factorisation of a given index.
    Screen {
        #[arg(long)]
        lambda: Partition,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        index: u64,
    },
    /// Screen a family of shapes such as "n-2,2" over a range of n.
    Table {
        #[arg(long)]
        pattern: ShapePattern,
        /// Inclusive, as "4..30".
        #[arg(long)]
        range: NRange,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        index: u64,
    },
    /// Write a known factorisation as JSON.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Field GF(2^a) for the hyperoval family.
        #[arg(long)]
        a: Option<u32>,
        /// One matching per line instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Members splitting at a vertex set, restricted to its complement.
    Derive {
        #[command(flatten)]
        file: FileArg,
        /// Vertices, as "1,2".
        #[arg(long)]
        at: Vertices,
        #[arg(long)]
        text: bool,
    },
    /// Dual distribution of a file of matchings.
    Dual {
        #[command(flatten)]
        file: FileArg,
        /// Also print the inner distribution.
        #[arg(long)]
        inner: bool,
        #[arg(long, conflicts_with = "json")]
        decimal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exact-cover search for a λ-factorisation of index c.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Partition,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        index: u32,
        /// Require the base matching 1-2 3-4 ... in the solution.
        #[arg(long)]
        force_base: bool,
        /// Matchings the derivation at --at must equal.
        #[arg(long, requires = "at")]
        seed: Option<PathBuf>,
        #[arg(long, requires = "seed")]
        at: Option<Vertices>,
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long)]
        enumerate_all: bool,
        /// Allow n = 6; needs --seed.
        #[arg(long)]
        stretch: bool,
    },
}

#[derive(Args, Debug)]
struct FileArg {
    /// JSON or plain-text matching file.
    #[arg(long)]
    file: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Definition,
    Design,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Roundrobin,
    Full,
    Hyperoval,
    Agl11,
}

#[derive(Clone, Debug)]
struct NRange(usize, usize);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or("expected a..b")?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: usize = a.trim().parse().map_err(|_| format!("bad lower end {a:?}"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad upper end {b:?}"))?;
        if a > b {
            return Err(format!("empty range {a}..{b}"));
        }
        Ok(NRange(a, b))
    }
}

#[derive(Clone, Debug)]
struct Vertices(Vec<usize>);

impl FromStr for Vertices {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad vertex {t:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Vertices)
    }
}

enum Failure {
    Usage(String),
    Format(FormatError),
    Core(Error),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("output: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let msg = match f {
                Failure::Usage(m) => m,
                Failure::Format(e) => format!("input: {e}"),
                Failure::Core(e) => e.to_string(),
            };
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let threads = cli.threads as usize;
    match &cli.command {
        Command::Enumerate { n, list, spheres } => enumerate(*n, *list, *spheres, out),
        Command::Spectrum { n, pq, decimal, json } => spectrum(*n, *pq, *decimal, *json, threads, out),
        Command::Check { file, lambda, method } => check(&file.file, lambda, *method, threads, out, err),
        Command::Screen { lambda, index } => screen(lambda, *index, out),
        Command::Table { pattern, range, index } => table(pattern, range, *index, out),
        Command::Construct { family, n, a, text } => construct(*family, *n, *a, *text, out),
        Command::Derive { file, at, text } => derive_cmd(&file.file, &at.0, *text, out, err),
        Command::Dual {
            file,
            inner,
            decimal,
            json,
        } => dual(&file.file, *inner, *decimal, *json, threads, out),
        Command::Search {
            n,
            lambda,
            index,
            force_base,
            seed,
            at,
            node_limit,
            enumerate_all,
            stretch,
        } => {
            let req = SearchRequest {
                n: *n,
                lambda,
                index: *index,
                force_base: *force_base,
                seed: seed.as_ref().zip(at.as_ref().map(|v| v.0.as_slice())),
                node_limit: *node_limit,
                enumerate_all: *enumerate_all,
                stretch: *stretch,
            };
            search(&req, out)
        }
    }
}

fn show(x: &ExactScalar, decimal: bool) -> String {
    if decimal {
        format!("{:.6}", approx(x))
    } else {
        x.to_string()
    }
}

fn enumerate(n: usize, list: bool, spheres: bool, out: &mut dyn Write) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if (list || spheres) && n > pmscheme_core::matching::MAX_ENUMERATION_N {
        return Err(Failure::Usage(format!(
            "--list and --spheres need n <= {}",
            pmscheme_core::matching::MAX_ENUMERATION_N
        )));
    }
    writeln!(out, "matchings of K_{}: {}", 2 * n, odd_double_factorial(n))?;
    if spheres {
        for (rho, k) in sphere_sizes(n)? {
            writeln!(out, "({rho})\t{k}")?;
        }
    }
    if list {
        for m in all_matchings(n)? {
            writeln!(out, "{m}")?;
        }
    }
    Ok(EXIT_OK)
}

fn check_zonal_n(n: usize) -> Result<(), Failure> {
    if n == 0 || n > pmscheme_core::zonal::MAX_ZONAL_N {
        return Err(Failure::Usage(format!(
            "zonal tables are supported for 1 <= n <= {}, got {n}",
            pmscheme_core::zonal::MAX_ZONAL_N
        )));
    }
    Ok(())
}

fn spectrum(n: usize, pq: bool, decimal: bool, as_json: bool, threads: usize, out: &mut dyn Write) -> Outcome {
    check_zonal_n(n)?;
    let t = zonal_table_threaded(n, threads)?;
    let r = t.classes();
    let names: Vec<String> = t.partitions().iter().map(|p| p.to_string()).collect();
    let omega: Vec<Vec<ExactScalar>> = (0..r)
        .map(|mu| (0..r).map(|rho| t.omega(mu, rho).clone()).collect())
        .collect();
    let valency: Vec<ExactScalar> = (0..r).map(|rho| from_uint(t.valency(rho))).collect();
    let degree: Vec<ExactScalar> = (0..r).map(|mu| from_uint(t.degree(mu))).collect();
    let mats = pq.then(|| {
        let (p, q) = eigenvalue_matrices(&t);
        let grid = |m: &pmscheme_core::linalg::RatMatrix| -> Vec<Vec<ExactScalar>> {
            (0..r).map(|i| (0..r).map(|j| m.get(i, j).clone()).collect()).collect()
        };
        (grid(&p), grid(&q))
    });
    if as_json {
        let strs = |v: &[ExactScalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let rows = |g: &[Vec<ExactScalar>]| g.iter().map(|row| strs(row)).collect::<Vec<_>>();
        let mut doc = json!({
            "n": n,
            "partitions": names,
            "omega": rows(&omega),
            "valencies": strs(&valency),
            "degrees": strs(&degree),
        });
        if let Some((p, q)) = &mats {
            doc["P"] = json!(rows(p));
            doc["Q"] = json!(rows(q));
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        return Ok(EXIT_OK);
    }
    let label = |s: &str| format!("({s})");
    let col_labels: Vec<String> = names.iter().map(|s| label(s)).collect();
    let mut rows: Vec<(String, Vec<String>, String)> = Vec::new();
    for mu in 0..r {
        let cells = omega[mu].iter().map(|x| show(x, decimal)).collect();
        rows.push((label(&names[mu]), cells, show(&degree[mu], decimal)));
    }
    rows.push((
        "k".into(),
        valency.iter().map(|x| show(x, decimal)).collect(),
        String::new(),
    ));
    writeln!(out, "omega (rows mu, columns rho), last column chi(1)")?;
    write_grid(out, &col_labels, &rows, Some("deg"))?;
    if let Some((p, q)) = &mats {
        let plain = |g: &[Vec<ExactScalar>]| -> Vec<(String, Vec<String>, String)> {
            g.iter()
                .enumerate()
                .map(|(i, row)| {
                    (
                        label(&names[i]),
                        row.iter().map(|x| show(x, decimal)).collect(),
                        String::new(),
                    )
                })
                .collect()
        };
        writeln!(out, "\nP (rows mu, columns rho)")?;
        write_grid(out, &col_labels, &plain(p), None)?;
        writeln!(out, "\nQ (rows rho, columns mu)")?;
        write_grid(out, &col_labels, &plain(q), None)?;
    }
    Ok(EXIT_OK)
}

fn write_grid(
    out: &mut dyn Write,
    cols: &[String],
    rows: &[(String, Vec<String>, String)],
    extra: Option<&str>,
) -> std::io::Result<()> {
    let lead = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut width: Vec<usize> = cols.iter().map(String::len).collect();
    for (_, cells, _) in rows {
        for (w, c) in width.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    write!(out, "{:lead$}", "")?;
    for (c, w) in cols.iter().zip(&width) {
        write!(out, "  {c:>w$}")?;
    }
    if let Some(e) = extra {
        write!(out, "  {e}")?;
    }
    writeln!(out)?;
    for (name, cells, tail) in rows {
        write!(out, "{name:lead$}")?;
        for (c, w) in cells.iter().zip(&width) {
            write!(out, "  {c:>w$}")?;
        }
        if extra.is_some() && !tail.is_empty() {
            write!(out, "  {tail}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn lambda_for(n: usize, lambda: &Partition) -> Result<(), Failure> {
    if lambda.size() != n {
        return Err(Failure::Usage(format!(
            "lambda ({lambda}) is not a partition of n = {n}"
        )));
    }
    Ok(())
}

fn design_index(size: usize, lambda: &Partition) -> ExactScalar {
    ExactScalar::new(
        BigInt::from(size) * BigInt::from(block_matching_count(lambda)),
        BigInt::from(odd_double_factorial(lambda.size())),
    )
}

fn check(
    path: &Path,
    lambda: &Partition,
    method: Method,
    threads: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let set = read_set(path)?;
    let n = set.n();
    lambda_for(n, lambda)?;
    if method != Method::Definition {
        check_zonal_n(n)?;
    }
    let mut def_yes = None;
    if method != Method::Design {
        let report = check_by_definition(&set, lambda)?;
        match &report.verdict {
            factorisation::Verdict::Yes { index } => writeln!(out, "definition: yes, index {index}")?,
            factorisation::Verdict::No { witness, count } => {
                writeln!(out, "definition: no; {witness} is refined by {count} members")?
            }
        }
        def_yes = Some(report);
    }
    let mut des_yes = None;
    if method != Method::Definition {
        let t = zonal_table_threaded(n, threads)?;
        let bad = design_violations(&set, lambda, &t)?;
        if bad.is_empty() {
            writeln!(out, "design: yes, index {}", design_index(set.len(), lambda))?;
        } else {
            let shapes: Vec<String> = bad.iter().map(|p| format!("({p})")).collect();
            writeln!(out, "design: no; dual distribution nonzero at {}", shapes.join(" "))?;
        }
        des_yes = Some(bad.is_empty());
    }
    let yes = match (&def_yes, des_yes) {
        (Some(d), Some(g)) if d.is_yes() != g => {
            writeln!(out, "checkers disagree")?;
            writeln!(err, "BUG: definition and design checkers disagree")?;
            writeln!(err, "lambda: {lambda}\ndefinition: {:?}\ndesign yes: {g}", d.verdict)?;
            writeln!(err, "set:\n{}", set_to_json(&set))?;
            return Ok(EXIT_DISAGREE);
        }
        (Some(d), _) => d.is_yes(),
        (None, Some(g)) => g,
        (None, None) => unreachable!("some method runs"),
    };
    Ok(if yes { EXIT_OK } else { EXIT_NEGATIVE })
}

fn screen(lambda: &Partition, index: u64, out: &mut dyn Write) -> Outcome {
    if lambda.is_empty() {
        return Err(Failure::Usage("lambda must be nonempty".into()));
    }
    let v = feasibility_screen(lambda, index);
    match expected_size(lambda, index) {
        Ok(size) => writeln!(out, "({lambda}) index {index}: size {size}")?,
        Err(_) => writeln!(out, "({lambda}) index {index}: size not an integer")?,
    }
    if v.is_empty() {
        writeln!(out, "not ruled out")?;
        return Ok(EXIT_OK);
    }
    for x in &v {
        writeln!(out, "ruled out: {x}")?;
    }
    Ok(EXIT_NEGATIVE)
}

fn table(pattern: &ShapePattern, range: &NRange, index: u64, out: &mut dyn Write) -> Outcome {
    let rows = screen_table(pattern, range.0..=range.1, index);
    let mut feasible = Vec::new();
    for row in &rows {
        if row.feasible() {
            feasible.push(row.n.to_string());
            writeln!(out, "{}\t({})\tnot ruled out", row.n, row.lambda)?;
        } else {
            writeln!(out, "{}\t({})\t{}", row.n, row.lambda, row.violations[0])?;
        }
    }
    writeln!(out, "feasible n: {}", feasible.join(", "))?;
    Ok(EXIT_OK)
}

fn construct(family: Family, n: Option<usize>, a: Option<u32>, text: bool, out: &mut dyn Write) -> Outcome {
    let set = match family {
        Family::Roundrobin | Family::Full => {
            if a.is_some() {
                return Err(Failure::Usage("--a only applies to --family hyperoval".into()));
            }
            let n = n.ok_or_else(|| Failure::Usage("this family needs --n".into()))?;
            if family == Family::Roundrobin {
                round_robin(n)?
            } else {
                if n == 0 || n > pmscheme_core::matching::MAX_ENUMERATION_N {
                    return Err(Failure::Usage(format!(
                        "--family full needs 1 <= n <= {}",
                        pmscheme_core::matching::MAX_ENUMERATION_N
                    )));
                }
                full_set(n)?
            }
        }
        Family::Hyperoval => {
            if n.is_some() {
                return Err(Failure::Usage("--family hyperoval takes --a, not --n".into()));
            }
            hyperoval_factorisation(a.ok_or_else(|| Failure::Usage("--family hyperoval needs --a".into()))?)?
        }
        Family::Agl11 => {
            if n.is_some() || a.is_some() {
                return Err(Failure::Usage("--family agl11 takes no parameters".into()));
            }
            agl11_factorisation()
        }
    };
    if text {
        out.write_all(to_text(&set).as_bytes())?;
    } else {
        out.write_all(set_to_json(&set).as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn derive_cmd(path: &Path, at: &[usize], text: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let set = read_set(path)?;
    if at.len() >= set.n() * 2 {
        return Err(Failure::Usage("--at must leave at least two vertices".into()));
    }
    let d = derive(&set, at)?;
    let mut sorted = d.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < d.len() {
        writeln!(
            err,
            "note: {} restrictions repeat an earlier one",
            d.len() - sorted.len()
        )?;
    }
    let rest = set.n() - at.len() / 2;
    if text {
        out.write_all(to_text(&d).as_bytes())?;
    } else {
        out.write_all(to_json(rest, &d).as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn dual(path: &Path, inner: bool, decimal: bool, as_json: bool, threads: usize, out: &mut dyn Write) -> Outcome {
    let set = read_set(path)?;
    check_zonal_n(set.n())?;
    let t = zonal_table_threaded(set.n(), threads)?;
    let a = inner_distribution(&set)?;
    let b = pmscheme_core::distribution::dual_from_inner(&a, set.len(), &t);
    if as_json {
        let obj = |d: &Distribution| -> serde_json::Map<String, Value> {
            d.iter()
                .map(|(p, x)| (p.to_string(), Value::String(x.to_string())))
                .collect()
        };
        let mut doc = json!({ "n": set.n(), "size": set.len(), "dual": obj(&b) });
        if inner {
            doc["inner"] = Value::Object(obj(&a));
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        return Ok(EXIT_OK);
    }
    if inner {
        writeln!(out, "inner distribution")?;
        for (p, x) in a.iter() {
            writeln!(out, "({p})\t{}", show(x, decimal))?;
        }
        writeln!(out, "dual distribution")?;
    }
    for (p, x) in b.iter() {
        writeln!(out, "({p})\t{}", show(x, decimal))?;
    }
    Ok(EXIT_OK)
}

struct SearchRequest<'a> {
    n: usize,
    lambda: &'a Partition,
    index: u32,
    force_base: bool,
    seed: Option<(&'a PathBuf, &'a [usize])>,
    node_limit: Option<u64>,
    enumerate_all: bool,
    stretch: bool,
}

fn search(req: &SearchRequest<'_>, out: &mut dyn Write) -> Outcome {
    let n = req.n;
    if n == 0 || n > MAX_SEARCH_N {
        return Err(Failure::Usage(format!("search needs 1 <= n <= {MAX_SEARCH_N}")));
    }
    if n == MAX_SEARCH_N && !req.stretch {
        return Err(Failure::Usage(format!("n = {n} needs --stretch")));
    }
    if req.stretch && req.seed.is_none() {
        return Err(Failure::Usage("--stretch needs --seed and --at".into()));
    }
    lambda_for(n, req.lambda)?;
    let seed = match req.seed {
        Some((path, at)) => {
            let (m, members) = read_members(path)?;
            Some((m, members, at))
        }
        None => None,
    };
    let start = Instant::now();
    let sys = build_system(n, req.lambda, req.index)?;
    let mut opts = SearchOptions {
        force_base: req.force_base,
        node_limit: req.node_limit,
        enumerate_all: req.enumerate_all,
        pins: Vec::new(),
    };
    if let Some((_, members, at)) = &seed {
        opts.pins = seed_from_derivation(&sys, members, at)?;
    }
    let outcome = solve(&sys, &opts);
    let wall = start.elapsed().as_millis() as u64;
    let status = match outcome.status {
        Status::Sat => "SAT",
        Status::Unsat => "UNSAT",
        Status::Aborted => "ABORTED",
    };
    let mut doc = json!({
        "status": status,
        "n": n,
        "lambda": req.lambda.to_string(),
        "index": req.index,
        "columns": sys.columns().len(),
        "rows": sys.rows().len(),
        "pins": opts.pins.len(),
        "statistics": {
            "nodes": outcome.stats.nodes,
            "propagations": outcome.stats.propagations,
            "wall_time_ms": wall,
        },
        "solution": outcome.solution.as_ref().map(|s| to_value(s.n(), s)),
    });
    if req.enumerate_all {
        doc["solutions"] = json!(outcome.solutions);
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    Ok(match outcome.status {
        Status::Sat => EXIT_OK,
        Status::Unsat => EXIT_NEGATIVE,
        Status::Aborted => EXIT_ABORTED,
    })
}
