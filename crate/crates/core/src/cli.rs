//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `argv` and the exit code.
//!
//! Exit codes: 0 success, 1 malformed input, 2 invalid generators, 3 an
//! oracle contradicted the formula side, 4 a check ran out of budget.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::{generate_ensemble, InstanceSpec};
use crate::ktheory::index_value;
use crate::oracle::{enumerate, member, ConeFrame, Limits, OracleError};
use crate::report::{
    analyze, verify, CheckStatus, InstanceEcho, Normalization, ReportDocument, VerifyOptions, SCHEMA_VERSION,
    TOOL_VERSION,
};
use crate::semigroup::{normalize_basis, FaceIndex, SemigroupError, ToricSemigroup};
use crate::Vector;

/// Largest accepted absolute value of an input coordinate.
pub const MAX_COORDINATE: i64 = 1 << 20;
/// Overrides the default search budget of the verification checks.
pub const BUDGET_ENV: &str = "TORIC_SEARCH_BUDGET";
/// Overrides the default enumeration cell cap.
pub const CELL_CAP_ENV: &str = "TORIC_CELL_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "K-theory and structure of finitely generated subsemigroups of Z²")]
struct Cli {
    /// Input format; detected from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    input_format: Option<InputFormat>,
    /// Re-express generators of a proper full-rank sublattice in a basis of it.
    #[arg(long, global = true)]
    normalize: bool,
    /// Also print human-readable tables to standard error.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure and K-theory, no oracles.
    Analyze { file: PathBuf },
    /// Structure, K-theory and every oracle check.
    Verify {
        file: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Index map of an element on both face ideals.
    Index {
        file: PathBuf,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        element: Vector,
    },
    /// Exact membership of a point.
    Member {
        file: PathBuf,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        point: Vector,
    },
    /// All members up to a level of the cone functional.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        bound: u64,
    },
    /// Verify a seeded random ensemble.
    Batch {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        coord_max: i64,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Json,
    Text,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: expected two integers, got {text:?}")]
    Text { line: usize, text: String },
    #[error("coordinate {0} exceeds the magnitude cap {MAX_COORDINATE}")]
    Magnitude(i64),
    #[error("no generators")]
    Empty,
    #[error("invalid environment variable {name}={value:?}")]
    Env { name: &'static str, value: String },
}

fn parse_pair(s: &str) -> Result<Vector, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let x = a.parse::<i64>().map_err(|e| e.to_string())?;
            let y = b.parse::<i64>().map_err(|e| e.to_string())?;
            Ok(Vector::new(x, y))
        }
        _ => Err(format!("expected m,n but got {s:?}")),
    }
}

/// Parses `{"generators": [[m, n], ...], "label": ...}`.
pub fn parse_json(src: &str) -> Result<InstanceSpec, InputError> {
    check_instance(serde_json::from_str(src)?)
}

/// Parses one `m n` pair per line; blank lines and `#` comments are skipped.
pub fn parse_text(src: &str) -> Result<InstanceSpec, InputError> {
    let mut generators = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let nums: Vec<i64> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| InputError::Text { line: i + 1, text: raw.to_string() })?;
        let [x, y] = nums[..] else {
            return Err(InputError::Text { line: i + 1, text: raw.to_string() });
        };
        generators.push(Vector::new(x, y));
    }
    check_instance(InstanceSpec { generators, label: None })
}

fn check_instance(spec: InstanceSpec) -> Result<InstanceSpec, InputError> {
    if spec.generators.is_empty() {
        return Err(InputError::Empty);
    }
    if let Some(c) = spec.generators.iter().flat_map(|g| [g.x, g.y]).find(|c| c.unsigned_abs() > MAX_COORDINATE as u64)
    {
        return Err(InputError::Magnitude(c));
    }
    Ok(spec)
}

/// Reads an instance from a file, or from standard input for `-`.
pub fn read_instance(
    path: &Path,
    format: Option<InputFormat>,
    stdin: &mut dyn Read,
) -> Result<InstanceSpec, InputError> {
    let io_err = |source| InputError::Io { path: path.display().to_string(), source };
    let src = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("json") => InputFormat::Json,
        Some(_) => InputFormat::Text,
        None if src.trim_start().starts_with('{') => InputFormat::Json,
        None => InputFormat::Text,
    });
    let mut spec = match format {
        InputFormat::Json => parse_json(&src)?,
        InputFormat::Text => parse_text(&src)?,
    };
    if spec.label.is_none() {
        spec.label = path.file_stem().and_then(|s| s.to_str()).filter(|s| *s != "-").map(String::from);
    }
    Ok(spec)
}

/// Applies `--normalize` when the generators span a proper full-rank
/// sublattice; other inputs pass through unchanged.
pub fn prepare(spec: InstanceSpec, normalize: bool) -> InstanceEcho {
    let plain =
        |spec: InstanceSpec| InstanceEcho { label: spec.label, generators: spec.generators, normalization: None };
    if !normalize {
        return plain(spec);
    }
    match ToricSemigroup::new(spec.generators.clone()) {
        Err(SemigroupError::NotGenerating(_)) => match normalize_basis(&spec.generators) {
            Ok((basis, generators)) => InstanceEcho {
                label: spec.label,
                generators,
                normalization: Some(Normalization { basis, original_generators: spec.generators }),
            },
            Err(_) => plain(spec),
        },
        _ => plain(spec),
    }
}

/// Limits from the defaults, then the environment, then flags.
fn limits_from_env(budget: Option<usize>) -> Result<Limits, InputError> {
    let mut limits = Limits::default();
    for (name, slot) in [(BUDGET_ENV, &mut limits.search_budget), (CELL_CAP_ENV, &mut limits.cell_cap)] {
        if let Ok(value) = std::env::var(name) {
            *slot = value.trim().parse().map_err(|_| InputError::Env { name, value })?;
        }
    }
    if let Some(b) = budget {
        limits.search_budget = b;
    }
    Ok(limits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub face: FaceIndex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub instance: InstanceEcho,
    pub element: Vector,
    pub values: Vec<IndexEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub instance: InstanceEcho,
    pub point: Vector,
    pub in_cone: bool,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub instance: InstanceEcho,
    /// Level bound on `p ↦ det(a₁,p) + det(p,a₂)`.
    pub bound: u64,
    pub count: usize,
    pub members: Vec<Vector>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
    pub budget_exhausted: usize,
    /// Instances with at least one check skipped at the window cap.
    pub with_skipped_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub count: usize,
    pub coord_max: i64,
    pub summary: BatchSummary,
    pub instances: Vec<ReportDocument>,
}

/// Runs the program on `argv` (including the program name) with the process
/// streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// [`run`] with explicit streams.
pub fn run_with<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = if informational { write!(out, "{e}") } else { write!(err, "{e}") };
            return if informational { EXIT_OK } else { EXIT_MALFORMED };
        }
    };
    match dispatch(&cli, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MALFORMED
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    let json = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    writeln!(out, "{json}")
}

fn emit_failure(out: &mut dyn Write, err: &mut dyn Write, e: OracleError) -> i32 {
    let _ = writeln!(err, "error: {e}");
    let _ = out.flush();
    match e {
        OracleError::BoundTooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_MALFORMED,
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Ensemble(#[from] crate::ensemble::EnsembleError),
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let load = |file: &Path, stdin: &mut dyn Read| -> Result<InstanceEcho, CliError> {
        Ok(prepare(read_instance(file, cli.input_format, stdin)?, cli.normalize))
    };
    match &cli.command {
        Command::Analyze { file } => {
            let (doc, _) = analyze(load(file, stdin)?);
            if cli.pretty {
                err.write_all(pretty_report(&doc).as_bytes())?;
            }
            emit(out, &doc)?;
            Ok(doc.exit_code())
        }
        Command::Verify { file, bound, budget, seed } => {
            let limits = limits_from_env(*budget)?;
            let defaults = VerifyOptions::default();
            let opts = VerifyOptions { bound: bound.unwrap_or(defaults.bound), limits, seed: *seed, ..defaults };
            let doc = verify(load(file, stdin)?, &opts);
            if cli.pretty {
                err.write_all(pretty_report(&doc).as_bytes())?;
            }
            emit(out, &doc)?;
            Ok(doc.exit_code())
        }
        Command::Index { file, element } => {
            let (doc, sg) = analyze(load(file, stdin)?);
            let Some(sg) = sg else {
                emit(out, &doc)?;
                return Ok(doc.exit_code());
            };
            let limits = limits_from_env(None)?;
            match member(&sg, *element, &limits) {
                Ok(true) => {}
                Ok(false) => {
                    writeln!(err, "error: {element} is not in S")?;
                    return Ok(EXIT_MALFORMED);
                }
                Err(e) => return Ok(emit_failure(out, err, e)),
            }
            let values = FaceIndex::BOTH
                .map(|j| {
                    let value = index_value(sg.asymptotic_generator(j), *element, j);
                    if value == 0 {
                        IndexEntry { face: j, value: None, note: Some("element lies on this face".into()) }
                    } else {
                        IndexEntry { face: j, value: Some(value), note: None }
                    }
                })
                .to_vec();
            if cli.pretty {
                let mut t = String::new();
                for v in &values {
                    let shown = v.value.map_or("on face".to_string(), |x| x.to_string());
                    let _ = writeln!(t, "index on face {}: {shown}", v.face);
                }
                err.write_all(t.as_bytes())?;
            }
            emit(
                out,
                &IndexDocument {
                    schema_version: SCHEMA_VERSION,
                    tool_version: TOOL_VERSION.into(),
                    instance: doc.instance,
                    element: *element,
                    values,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Member { file, point } => {
            let (doc, sg) = analyze(load(file, stdin)?);
            let Some(sg) = sg else {
                emit(out, &doc)?;
                return Ok(doc.exit_code());
            };
            let limits = limits_from_env(None)?;
            let is_member = match member(&sg, *point, &limits) {
                Ok(m) => m,
                Err(e) => return Ok(emit_failure(out, err, e)),
            };
            if cli.pretty {
                writeln!(err, "{point} ∈ S: {is_member}")?;
            }
            emit(
                out,
                &MemberDocument {
                    schema_version: SCHEMA_VERSION,
                    tool_version: TOOL_VERSION.into(),
                    instance: doc.instance,
                    point: *point,
                    in_cone: sg.in_cone(*point),
                    member: is_member,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { file, bound } => {
            let (doc, sg) = analyze(load(file, stdin)?);
            let Some(sg) = sg else {
                emit(out, &doc)?;
                return Ok(doc.exit_code());
            };
            let limits = limits_from_env(None)?;
            let table = match enumerate(&sg, *bound, &limits) {
                Ok(t) => t,
                Err(e) => return Ok(emit_failure(out, err, e)),
            };
            let members = table.members().to_vec();
            if cli.pretty {
                let frame = ConeFrame::of(&sg);
                let mut t = String::new();
                for p in &members {
                    let _ = writeln!(t, "{:>6}  {p}", frame.functional(*p));
                }
                err.write_all(t.as_bytes())?;
            }
            emit(
                out,
                &EnumerateDocument {
                    schema_version: SCHEMA_VERSION,
                    tool_version: TOOL_VERSION.into(),
                    instance: doc.instance,
                    bound: *bound,
                    count: members.len(),
                    members,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Batch { count, seed, coord_max, bound, budget } => {
            let limits = limits_from_env(*budget)?;
            let defaults = VerifyOptions::default();
            let opts = VerifyOptions { bound: bound.unwrap_or(defaults.bound), limits, seed: *seed, ..defaults };
            let specs = generate_ensemble(*count, *seed, *coord_max)?;
            let doc = run_batch(specs, &opts, *seed, *coord_max);
            if cli.pretty {
                err.write_all(pretty_batch(&doc).as_bytes())?;
            }
            emit(out, &doc)?;
            Ok(doc.instances.iter().map(ReportDocument::exit_code).fold(EXIT_OK, worse_exit))
        }
    }
}

fn worse_exit(a: i32, b: i32) -> i32 {
    let rank = |c| match c {
        EXIT_MISMATCH => 4,
        EXIT_INVALID => 3,
        EXIT_BUDGET => 2,
        EXIT_MALFORMED => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// Verifies every instance in parallel; the output is sorted by label.
pub fn run_batch(specs: Vec<InstanceSpec>, opts: &VerifyOptions, seed: u64, coord_max: i64) -> BatchDocument {
    let count = specs.len();
    let mut instances: Vec<ReportDocument> = specs
        .into_par_iter()
        .map(|s| verify(InstanceEcho { label: s.label, generators: s.generators, normalization: None }, opts))
        .collect();
    instances.sort_by(|a, b| a.instance.label.cmp(&b.instance.label));
    let mut summary = BatchSummary { instances: count, ..BatchSummary::default() };
    for doc in &instances {
        let Some(checks) = &doc.checks else { continue };
        match checks.overall() {
            CheckStatus::Pass | CheckStatus::SkippedBound => summary.pass += 1,
            CheckStatus::Fail => summary.fail += 1,
            CheckStatus::BudgetExhausted => summary.budget_exhausted += 1,
        }
        if checks.overall() == CheckStatus::SkippedBound
            || checks.sf_quotient.status == CheckStatus::SkippedBound
            || checks.index_map.status == CheckStatus::SkippedBound
        {
            summary.with_skipped_checks += 1;
        }
    }
    BatchDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        seed,
        count,
        coord_max,
        summary,
        instances,
    }
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::BudgetExhausted => "budget-exhausted",
        CheckStatus::SkippedBound => "skipped: bound",
    }
}

/// Human-readable summary of a report.
pub fn pretty_report(doc: &ReportDocument) -> String {
    let mut t = String::new();
    let gens: Vec<String> = doc.instance.generators.iter().map(Vector::to_string).collect();
    let _ = writeln!(t, "generators  {}", gens.join(" "));
    if let Some(e) = &doc.validation.error {
        let _ = writeln!(t, "invalid     {}: {}", e.kind, e.message);
        return t;
    }
    if let Some(s) = &doc.structure {
        let _ = writeln!(t, "face  ray        d   a_j        conductor  gaps");
        for f in &s.faces {
            let _ = writeln!(
                t,
                "{:<5} {:<10} {:<3} {:<10} {:<10} {}",
                f.index.to_string(),
                f.ray.to_string(),
                f.d,
                f.asymptotic_generator.to_string(),
                f.conductor,
                f.gaps.len()
            );
        }
    }
    if let Some(k) = &doc.k_theory {
        let [[a, b], [c, d]] = k.m.rows();
        let _ = writeln!(t, "M           [[{a}, {b}], [{c}, {d}]]  det {}", k.det_m);
        let _ = writeln!(t, "S/F         {}", k.sf_quotient);
        let _ = writeln!(t, "K0          {}", k.k0);
        let _ = writeln!(t, "K1          {}", k.k1);
    }
    if let Some(c) = &doc.checks {
        let mut rows = vec![
            ("face semigroups", c.face_semigroups.status),
            ("S/F quotient", c.sf_quotient.status),
            ("index map", c.index_map.status),
            ("cone witness", c.cone_witness.status),
            ("translator", c.translator.status),
            ("bijection", c.bijection.status),
        ];
        if let Some(i) = &c.independence_failure {
            rows.push(("independence", i.status));
        }
        for (name, status) in rows {
            let _ = writeln!(t, "{name:<16} {}", status_word(status));
        }
    }
    t
}

fn pretty_batch(doc: &BatchDocument) -> String {
    let mut t = String::new();
    for d in &doc.instances {
        let status = d.checks.as_ref().map_or("invalid", |c| status_word(c.overall()));
        let det = d.k_theory.as_ref().map_or(0, |k| k.det_m);
        let _ = writeln!(t, "{:<10} det {:<5} {status}", d.instance.label.as_deref().unwrap_or("-"), det);
    }
    let s = &doc.summary;
    let _ = writeln!(
        t,
        "{} instances: {} pass, {} fail, {} budget-exhausted, {} with skipped checks",
        s.instances, s.pass, s.fail, s.budget_exhausted, s.with_skipped_checks
    );
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("2,-1").unwrap(), Vector::new(2, -1));
        assert_eq!(parse_pair(" 3 , 4 ").unwrap(), Vector::new(3, 4));
        assert!(parse_pair("1").is_err());
        assert!(parse_pair("a,b").is_err());
    }

    #[test]
    fn text_format() {
        let spec = parse_text("# cone\n2 -1\n1 0\n\n2 1  # last\n").unwrap();
        assert_eq!(spec.generators, vec![Vector::new(2, -1), Vector::new(1, 0), Vector::new(2, 1)]);
        assert!(matches!(parse_text("1 2 3"), Err(InputError::Text { line: 1, .. })));
        assert!(matches!(parse_text("# nothing\n"), Err(InputError::Empty)));
    }

    #[test]
    fn json_format() {
        let spec = parse_json(r#"{"generators": [[1, 0], [0, 1]], "label": "n2"}"#).unwrap();
        assert_eq!(spec.label.as_deref(), Some("n2"));
        assert_eq!(spec.generators.len(), 2);
        assert!(matches!(parse_json(r#"{"generators": [[1, 0, 2]]}"#), Err(InputError::Json(_))));
        assert!(matches!(parse_json(r#"{"generators": [[2000000, 0]]}"#), Err(InputError::Magnitude(2_000_000))));
    }

    #[test]
    fn normalize_applies_only_to_sublattices() {
        let spec = InstanceSpec { generators: vec![Vector::new(2, 0), Vector::new(0, 2)], label: None };
        let echo = prepare(spec.clone(), true);
        let n = echo.normalization.as_ref().unwrap();
        assert_eq!(n.original_generators, spec.generators);
        for (g, orig) in echo.generators.iter().zip(&n.original_generators) {
            assert_eq!(n.basis.mul_vec(*g).unwrap(), *orig);
        }
        assert!(ToricSemigroup::new(echo.generators).is_ok());
        assert!(prepare(spec.clone(), false).normalization.is_none());
        let n2 = InstanceSpec { generators: vec![Vector::new(1, 0), Vector::new(0, 1)], label: None };
        assert!(prepare(n2, true).normalization.is_none());
    }

    #[test]
    fn exit_severity() {
        assert_eq!(worse_exit(EXIT_OK, EXIT_BUDGET), EXIT_BUDGET);
        assert_eq!(worse_exit(EXIT_MISMATCH, EXIT_BUDGET), EXIT_MISMATCH);
    }
}
