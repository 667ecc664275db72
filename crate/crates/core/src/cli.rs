//! Command-line front end: input files, job dispatch, text and JSON output, and the
//! cross-solver bench harness.
//!
//! Input format, one item per line:
//! - a polynomial in `x` and `y` (first is `F`, second is `G`);
//! - `# key: value` header or any other `#` comment;
//! - `> p`, `< p`, `= p` sign conditions (for `ineq`);
//! - `x = <rational>` or `x = root <i> of <poly in x>` fiber selector (for `count`,
//!   roots numbered from 1 in ascending order).

use crate::algnum::{count_fiber_roots, AlgError, FiberRange, FilterConfig};
use crate::apps::{curve_topology, simultaneous_inequalities, Relation, SignCondition, TopologyError};
use crate::bivsolve::{same_solutions, solve, with_multiplicities, BivError, SolutionBox, Solver};
use crate::poly::{parse_poly, parse_rational, rational_text, BivPoly, ParseError, Rational, Var};
use crate::uniroot::{isolate, RealAlgNum};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

/// File extension of corpus systems picked up by `bench`.
pub const SYSTEM_EXTENSION: &str = "sys";

#[derive(Parser, Debug)]
#[command(name = "bisolve", version, about = "Exact real solutions of bivariate polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// Real solutions of F = G = 0.
    Solve(JobArgs),
    /// Real solutions with intersection multiplicities.
    Mult(JobArgs),
    /// Number of real roots of F on a vertical line.
    Count(JobArgs),
    /// Solutions of F = G = 0 satisfying the sign conditions in the file.
    Ineq(JobArgs),
    /// Topology graph of the curve F = 0.
    Topology(JobArgs),
    /// Run every solver on every system in a directory and check agreement.
    Bench(JobArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    #[arg(long, default_value = "grur")]
    solver: Solver,
    /// Also compute intersection multiplicities.
    #[arg(long)]
    mult: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Width of printed isolating intervals, e.g. `2^-16` or `1/1000`.
    #[arg(long, default_value = "2^-16")]
    refine_width: String,
    /// Disable the interval-arithmetic filter (exact evaluation only).
    #[arg(long)]
    no_filter: bool,
    #[arg(long)]
    verbose: bool,
    /// Input file (a directory for `bench`).
    path: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Solve,
    Mult,
    Count,
    Ineq,
    Topology,
    Bench,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Mult => "mult",
            Command::Count => "count",
            Command::Ineq => "ineq",
            Command::Topology => "topology",
            Command::Bench => "bench",
        }
    }
}

/// A fully validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub solver: Solver,
    pub input_path: PathBuf,
    pub format: Format,
    pub refine_width: Rational,
    pub filter: bool,
    pub verbose: bool,
    pub mult: bool,
}

impl JobSpec {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> JobSpec {
        JobSpec {
            command,
            solver: Solver::Grur,
            input_path: input_path.into(),
            format: Format::Text,
            refine_width: crate::poly::pow2(-16),
            filter: true,
            verbose: false,
            mult: false,
        }
    }

    fn filter_config(&self) -> FilterConfig {
        if self.filter {
            FilterConfig::default()
        } else {
            FilterConfig::disabled()
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<BivError> for CliError {
    fn from(e: BivError) -> Self {
        match e {
            BivError::ZeroPolynomial | BivError::NotCoprime | BivError::GenericityViolation { .. } => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::Solver(inner) => inner.into(),
            TopologyError::ZeroPolynomial | TopologyError::VerticalLine(_) | TopologyError::SquareFactor => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> Self {
        match e {
            AlgError::InvalidLadder(_) => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

/// Vertical line selected by an `x = ...` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberValue {
    Rational(Rational),
    Root { index: usize, defining: BivPoly },
}

/// Parsed contents of an input file.
#[derive(Clone, Debug, Default)]
pub struct InputFile {
    pub headers: BTreeMap<String, String>,
    pub polynomials: Vec<BivPoly>,
    pub conditions: Vec<SignCondition>,
    pub fiber: Option<FiberValue>,
}

fn shift_error(mut e: ParseError, line: usize, offset: usize) -> ParseError {
    e.line = line;
    e.column += offset;
    e
}

fn parse_header(comment: &str) -> Option<(String, String)> {
    let (key, value) = comment.split_once(':')?;
    let key = key.trim();
    if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return None;
    }
    Some((key.to_string(), value.trim().to_string()))
}

fn parse_fiber(rest: &str, line: usize, offset: usize) -> Result<FiberValue, ParseError> {
    let t = rest.trim();
    if let Some(spec) = t.strip_prefix("root") {
        let bad = |msg: &str| ParseError { line, column: offset + 1, message: msg.to_string() };
        let (index, poly) = spec.trim().split_once(" of ").ok_or_else(|| bad("expected `root <i> of <poly>`"))?;
        let index: usize = index.trim().parse().map_err(|_| bad("root index must be a positive integer"))?;
        if index == 0 {
            return Err(bad("roots are numbered from 1"));
        }
        let col = offset + rest.find(" of ").map_or(0, |p| p + 4);
        let defining = parse_poly(poly, ("x", "y")).map_err(|e| shift_error(e, line, col))?;
        if defining.deg_y() > 0 {
            return Err(bad("the defining polynomial of a fiber must not contain y"));
        }
        return Ok(FiberValue::Root { index, defining });
    }
    parse_rational(t).map(FiberValue::Rational).map_err(|e| shift_error(e, line, offset))
}

/// Parses the input file format described in the module docs.
pub fn parse_input(text: &str) -> Result<InputFile, ParseError> {
    let mut input = InputFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let indent = raw.len() - raw.trim_start().len();
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(comment) = t.strip_prefix('#') {
            if let Some((k, v)) = parse_header(comment) {
                input.headers.insert(k, v);
            }
            continue;
        }
        if let Some(relation) = t.chars().next().and_then(Relation::from_symbol) {
            let body = &t[1..];
            let p = parse_poly(body, ("x", "y")).map_err(|e| shift_error(e, line, indent + 1))?;
            let cond = SignCondition::new(p, relation)
                .ok_or(ParseError { line, column: indent + 1, message: "sign condition on the zero polynomial".into() })?;
            input.conditions.push(cond);
            continue;
        }
        if let Some((lhs, rhs)) = t.split_once('=') {
            if lhs.trim() != "x" {
                return Err(ParseError { line, column: indent + 1, message: "expected `x = <value>`".into() });
            }
            input.fiber = Some(parse_fiber(rhs, line, indent + lhs.len() + 1)?);
            continue;
        }
        let p = parse_poly(t, ("x", "y")).map_err(|e| shift_error(e, line, indent))?;
        input.polynomials.push(p);
    }
    Ok(input)
}

fn read_input(path: &Path) -> Result<InputFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn system(input: &InputFile, command: Command) -> Result<(BivPoly, BivPoly), CliError> {
    match input.polynomials.as_slice() {
        [f, g] => Ok((f.clone(), g.clone())),
        ps => Err(CliError::Usage(format!("{} needs exactly 2 polynomials, found {}", command.name(), ps.len()))),
    }
}

fn single(input: &InputFile, command: Command) -> Result<BivPoly, CliError> {
    match input.polynomials.as_slice() {
        [f] => Ok(f.clone()),
        ps => Err(CliError::Usage(format!("{} needs exactly 1 polynomial, found {}", command.name(), ps.len()))),
    }
}

fn endpoint_bits(a: &RealAlgNum) -> u64 {
    [a.lo(), a.hi()].iter().map(|q| q.numer().bits() + q.denom().bits()).sum()
}

fn number_json(a: &RealAlgNum, var: &str) -> Value {
    json!({ "lo": rational_text(a.lo()), "hi": rational_text(a.hi()), "defining": a.defining().to_text(var) })
}

/// `root: x in [a, b] by <defining>; y in [c, d] by <defining>; mult m`
pub fn solution_line(s: &SolutionBox) -> String {
    let mut line = format!(
        "root: x in {} by {}; y in {} by {}",
        s.alpha.interval_text(),
        s.alpha.defining().to_text("x"),
        s.beta.interval_text(),
        s.beta.defining().to_text("y")
    );
    if let Some(m) = s.multiplicity {
        line.push_str(&format!("; mult {m}"));
    }
    line
}

pub fn solution_json(s: &SolutionBox) -> Value {
    json!({ "x": number_json(&s.alpha, "x"), "y": number_json(&s.beta, "y"), "multiplicity": s.multiplicity })
}

/// Rebuilds a number from its structured form, checking that the interval isolates a root.
pub fn number_from_json(v: &Value, var: &str) -> Option<RealAlgNum> {
    let lo = parse_rational(v["lo"].as_str()?).ok()?;
    let hi = parse_rational(v["hi"].as_str()?).ok()?;
    let names = if var == "x" { ("x", "y") } else { ("y", "x") };
    let defining = parse_poly(v["defining"].as_str()?, names).ok()?.to_rec(Var::Y).coeff(0);
    if lo > hi || defining.is_zero() {
        return None;
    }
    let ok = if lo == hi {
        defining.sign_at_rational(&lo) == 0
    } else {
        defining.sign_at_rational(&lo) * defining.sign_at_rational(&hi) < 0
            && isolate(&defining).ok()?.roots.iter().filter(|r| r.cmp_rational(&lo).is_gt() && r.cmp_rational(&hi).is_le()).count() == 1
    };
    ok.then(|| RealAlgNum::new(defining.squarefree_part(), lo, hi))
}

struct Output {
    text: Vec<String>,
    json: Value,
    diagnostics: Vec<String>,
}

fn solutions_output(spec: &JobSpec, sols: &[SolutionBox], extra: Value) -> Output {
    let bits: u64 = sols.iter().map(|s| endpoint_bits(&s.alpha) + endpoint_bits(&s.beta)).sum();
    let refined: Vec<SolutionBox> = sols.iter().map(|s| s.refined(&spec.refine_width)).collect();
    let mut json = json!({
        "command": spec.command.name(),
        "solver": spec.solver.to_string(),
        "refine_width": rational_text(&spec.refine_width),
        "count": refined.len(),
        "solutions": refined.iter().map(solution_json).collect::<Vec<_>>(),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    Output {
        text: refined.iter().map(solution_line).collect(),
        json,
        diagnostics: vec![format!("solutions: {}; total endpoint bits before refinement: {bits}", sols.len())],
    }
}

fn run_solve(spec: &JobSpec, input: &InputFile) -> Result<Output, CliError> {
    let cfg = spec.filter_config();
    let (f, g) = system(input, spec.command)?;
    let mut sols = solve(&f, &g, spec.solver, &cfg)?;
    if spec.mult || spec.command == Command::Mult {
        sols = with_multiplicities(&f, &g, &sols)?;
    }
    Ok(solutions_output(spec, &sols, json!({})))
}

fn run_ineq(spec: &JobSpec, input: &InputFile) -> Result<Output, CliError> {
    let cfg = spec.filter_config();
    let (f, g) = system(input, spec.command)?;
    let mut sols = simultaneous_inequalities(&f, &g, &input.conditions, &cfg)?;
    if spec.mult {
        sols = with_multiplicities(&f, &g, &sols)?;
    }
    let conds: Vec<String> = input.conditions.iter().map(ToString::to_string).collect();
    Ok(solutions_output(spec, &sols, json!({ "conditions": conds })))
}

fn run_count(spec: &JobSpec, input: &InputFile) -> Result<Output, CliError> {
    let cfg = spec.filter_config();
    let f = single(input, spec.command)?;
    let alpha = match input.fiber.clone().unwrap_or(FiberValue::Rational(Rational::from_integer(0.into()))) {
        FiberValue::Rational(q) => RealAlgNum::rational(q),
        FiberValue::Root { index, defining } => {
            let p = defining.to_rec(Var::Y).coeff(0);
            let roots = isolate(&p).map_err(|e| CliError::Usage(e.to_string()))?.roots;
            roots
                .get(index - 1)
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("{p} has {} real roots; root {index} requested", roots.len())))?
        }
    };
    let n = count_fiber_roots(&f, &alpha, &FiberRange::All, &cfg)?;
    let x = if alpha.is_point() {
        rational_text(alpha.lo())
    } else {
        format!("root of {} in {}", alpha.defining(), alpha.interval_text())
    };
    Ok(Output {
        text: vec![format!("fiber: x = {x}"), format!("count: {n}")],
        json: json!({ "command": "count", "fiber": x, "count": n }),
        diagnostics: Vec::new(),
    })
}

fn run_topology(spec: &JobSpec, input: &InputFile) -> Result<Output, CliError> {
    let f = single(input, spec.command)?;
    let g = curve_topology(&f, &spec.filter_config())?;
    let mut text = vec![
        format!("vertices: {}", g.vertices.len()),
        format!("edges: {}", g.edges.len()),
        format!("components: {}", g.components()),
        format!("cycles: {}", g.cycle_count()),
    ];
    if g.shear != 0 {
        text.push(format!("sheared: x -> x + {} y", g.shear));
    }
    text.extend(g.to_dot().lines().map(str::to_string));
    let mut json = g.to_json();
    json["command"] = json!("topology");
    json["components"] = json!(g.components());
    json["cycles"] = json!(g.cycle_count());
    Ok(Output { text, json, diagnostics: vec![format!("fibers: {}", g.fibers.len())] })
}

/// One bench row.
struct BenchRow {
    name: String,
    counts: Vec<Option<usize>>,
    millis: Vec<f64>,
    problems: Vec<String>,
}

fn bench_system(path: &Path, cfg: &FilterConfig) -> BenchRow {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = BenchRow { name, counts: Vec::new(), millis: Vec::new(), problems: Vec::new() };
    let input = match read_input(path) {
        Ok(i) => i,
        Err(e) => {
            row.problems.push(e.to_string());
            return row;
        }
    };
    let Ok((f, g)) = system(&input, Command::Bench) else {
        row.problems.push("not a system of two polynomials".into());
        return row;
    };
    let mut results: Vec<(Solver, Vec<SolutionBox>)> = Vec::new();
    for solver in Solver::ALL {
        let start = Instant::now();
        let r = solve(&f, &g, solver, cfg);
        row.millis.push(start.elapsed().as_secs_f64() * 1e3);
        match r {
            Ok(s) => {
                row.counts.push(Some(s.len()));
                results.push((solver, s));
            }
            Err(BivError::GenericityViolation { .. }) if solver == Solver::Mrur => row.counts.push(None),
            Err(e) => {
                row.counts.push(None);
                row.problems.push(format!("{solver}: {e}"));
            }
        }
    }
    if let Some((_, first)) = results.first() {
        for (solver, s) in &results[1..] {
            if !same_solutions(first, s, cfg) {
                row.problems.push(format!("{solver} disagrees with {}", results[0].0));
            }
        }
        if let Some(expect) = input.headers.get("solutions").and_then(|v| v.parse::<usize>().ok()) {
            if first.len() != expect {
                row.problems.push(format!("expected {expect} solutions, found {}", first.len()));
            }
        }
    }
    row
}

fn run_bench(spec: &JobSpec) -> Result<Output, CliError> {
    let dir = &spec.input_path;
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == SYSTEM_EXTENSION))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no .{SYSTEM_EXTENSION} files in {}", dir.display())));
    }
    let cfg = spec.filter_config();
    let rows: Vec<BenchRow> = paths.par_iter().map(|p| bench_system(p, &cfg)).collect();
    let mut text = Vec::new();
    let mut json_rows = Vec::new();
    let mut failures = Vec::new();
    for row in &rows {
        let cells: Vec<String> = Solver::ALL
            .iter()
            .zip(&row.counts)
            .zip(&row.millis)
            .map(|((s, c), t)| match c {
                Some(n) => format!("{s} {n} ({t:.1} ms)"),
                None => format!("{s} n/a ({t:.1} ms)"),
            })
            .collect();
        let status = if row.problems.is_empty() { "ok".to_string() } else { format!("FAIL: {}", row.problems.join("; ")) };
        text.push(format!("{}: {}: {status}", row.name, cells.join(", ")));
        json_rows.push(json!({
            "system": row.name,
            "counts": Solver::ALL.iter().zip(&row.counts).map(|(s, c)| (s.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            "millis": Solver::ALL.iter().zip(&row.millis).map(|(s, t)| (s.to_string(), json!(t))).collect::<serde_json::Map<_, _>>(),
            "problems": row.problems,
        }));
        failures.extend(row.problems.iter().map(|p| format!("{}: {p}", row.name)));
    }
    if !failures.is_empty() {
        return Err(CliError::Internal(format!("bench disagreement\n{}\n{}", text.join("\n"), failures.join("\n"))));
    }
    Ok(Output {
        text,
        json: json!({ "command": "bench", "systems": json_rows }),
        diagnostics: vec![format!("systems: {}", rows.len())],
    })
}

fn execute(spec: &JobSpec) -> Result<Output, CliError> {
    if !spec.refine_width.is_positive() {
        return Err(CliError::Usage("--refine-width must be positive".into()));
    }
    if spec.command == Command::Bench {
        return run_bench(spec);
    }
    let input = read_input(&spec.input_path)?;
    match spec.command {
        Command::Solve | Command::Mult => run_solve(spec, &input),
        Command::Ineq => run_ineq(spec, &input),
        Command::Count => run_count(spec, &input),
        Command::Topology => run_topology(spec, &input),
        Command::Bench => unreachable!(),
    }
}

/// Runs a job, writing results to `out` and errors to `err`; returns the exit code.
pub fn run(spec: &JobSpec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    match execute(spec) {
        Ok(o) => {
            let written = match spec.format {
                Format::Text => o.text.iter().try_for_each(|l| writeln!(out, "{l}")),
                Format::Structured => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: writing output: {e}");
                return 1;
            }
            if spec.verbose {
                for d in &o.diagnostics {
                    let _ = writeln!(err, "{d}");
                }
                let _ = writeln!(err, "elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Internal(_) = e {
                let _ = writeln!(err, "job: {spec:?}");
                if let Ok(text) = std::fs::read_to_string(&spec.input_path) {
                    let _ = writeln!(err, "input:\n{text}");
                }
            }
            e.exit_code()
        }
    }
}

/// Parses command-line arguments and runs the job.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let (command, args) = match cli.command {
        CommandArgs::Solve(a) => (Command::Solve, a),
        CommandArgs::Mult(a) => (Command::Mult, a),
        CommandArgs::Count(a) => (Command::Count, a),
        CommandArgs::Ineq(a) => (Command::Ineq, a),
        CommandArgs::Topology(a) => (Command::Topology, a),
        CommandArgs::Bench(a) => (Command::Bench, a),
    };
    let refine_width = match parse_rational(&args.refine_width) {
        Ok(w) => w,
        Err(e) => {
            let _ = writeln!(err, "error: --refine-width: {}", e.message);
            return 1;
        }
    };
    let spec = JobSpec {
        command,
        solver: args.solver,
        input_path: args.path,
        format: args.format,
        refine_width,
        filter: !args.no_filter,
        verbose: args.verbose,
        mult: args.mult,
    };
    run(&spec, out, err)
}
