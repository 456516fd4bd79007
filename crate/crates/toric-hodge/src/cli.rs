//! Command-line front end: problem documents, dispatch, and rendering.
//!
//! Problem documents are JSON objects of one of three shapes:
//!
//! * `{"fan": FAN, "supports": [...]}` where `FAN` is `{"dim", "rays", "cones"}`
//!   or a path to a file holding one (relative to the document); `supports`
//!   may be omitted for no equations.
//! * `{"dim": m, "supports": [...]}` for a complete intersection in a torus.
//! * `{"weights": [...], "degrees": [...]}` for a weighted projective space.
//!
//! A bare `FAN` document is also accepted by `fan-check`. All numbers must be
//! integers that fit in 64 bits.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::dk_hodge::{hodge_compact, DkEngine, EpqTable, TableKind, TorusCIProblem};
use crate::error::Error;
use crate::fan::{adapted_subfan, degrees_of, is_complete, is_regular, is_simplicial, validate, Fan};
use crate::forms_euler::{chi_alt, chi_sym, chi_tensor};
use crate::hilbert::build_context;
use crate::lattice_polyhedra::SupportSet;
use crate::wps::{wps_chi, wps_hodge, FormKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

/// A failure with the process exit status it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PRECONDITION, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => EXIT_PARSE,
            Error::Precondition(_) | Error::Overflow(_) => EXIT_PRECONDITION,
            Error::Consistency(_) => EXIT_CONSISTENCY,
        };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-hodge",
    version,
    about = "Hodge numbers and Euler characteristics of toric complete intersections"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Alt,
    Sym,
    Tensor,
}

#[derive(Debug, Clone, clap::Args)]
#[group(required = true, multiple = false)]
pub struct Degrees {
    /// Degree of the forms
    #[arg(short = 'p')]
    pub p: Option<usize>,
    /// All degrees from 0 to the dimension of the complete intersection
    #[arg(long)]
    pub all_p: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a fan and report completeness, simpliciality, regularity and adaptedness
    FanCheck { file: PathBuf },
    /// Euler characteristics of differential forms on a toric complete intersection
    Euler {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        degrees: Degrees,
        file: PathBuf,
    },
    /// Hodge diamond of a compact toric complete intersection
    Hodge { file: PathBuf },
    /// Compactly supported Euler-Hodge numbers of a complete intersection in a torus
    HodgeTorus { file: PathBuf },
    /// Complete intersections in weighted projective space
    Wps {
        #[command(subcommand)]
        command: WpsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum WpsCommand {
    /// Euler characteristics of differential forms
    Euler {
        #[arg(long, value_enum, default_value = "alt")]
        kind: Kind,
        #[command(flatten)]
        degrees: Degrees,
        file: PathBuf,
    },
    /// Hodge diamond of a quasi-smooth complete intersection
    Hodge { file: PathBuf },
}

/// A parsed problem document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Fan { fan: Fan, supports: Vec<SupportSet> },
    Torus(TorusCIProblem),
    Wps { weights: Vec<i64>, degrees: Vec<i64> },
}

fn int(v: &Value, at: &str) -> Result<i64, CliError> {
    match v {
        Value::Number(n) => {
            n.as_i64().ok_or_else(|| CliError::parse(format!("{at}: {n} is not an integer in the 64-bit range")))
        }
        other => Err(CliError::parse(format!("{at}: expected an integer, found {other}"))),
    }
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::parse(format!("{at}: expected an array")))
}

fn int_list(v: &Value, at: &str) -> Result<Vec<i64>, CliError> {
    array(v, at)?.iter().enumerate().map(|(i, x)| int(x, &format!("{at}[{i}]"))).collect()
}

fn vectors(v: &Value, at: &str, dim: usize) -> Result<Vec<Vec<i64>>, CliError> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let here = format!("{at}[{i}]");
            let vec = int_list(x, &here)?;
            if vec.len() != dim {
                return Err(CliError::parse(format!("{here}: expected {dim} coordinates, found {}", vec.len())));
            }
            Ok(vec)
        })
        .collect()
}

fn usize_of(v: &Value, at: &str) -> Result<usize, CliError> {
    let x = int(v, at)?;
    usize::try_from(x).map_err(|_| CliError::parse(format!("{at}: expected a non-negative integer")))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<(), CliError> {
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::parse(format!("unknown field `{k}` in {what}")));
    }
    Ok(())
}

fn fan_from_value(v: &Value, at: &str) -> Result<Fan, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::parse(format!("{at}: expected a fan object")))?;
    check_keys(obj, &["dim", "rays", "cones"], "a fan")?;
    let get = |k: &str| obj.get(k).ok_or_else(|| CliError::parse(format!("{at}: missing field `{k}`")));
    let dim = usize_of(get("dim")?, &format!("{at}.dim"))?;
    let rays = vectors(get("rays")?, &format!("{at}.rays"), dim)?;
    let maximal_cones = array(get("cones")?, &format!("{at}.cones"))?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let here = format!("{at}.cones[{i}]");
            array(c, &here)?.iter().enumerate().map(|(j, x)| usize_of(x, &format!("{here}[{j}]"))).collect()
        })
        .collect::<Result<Vec<Vec<usize>>, CliError>>()?;
    Ok(Fan { dim, rays, maximal_cones })
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn supports_from_value(v: Option<&Value>, dim: usize) -> Result<Vec<SupportSet>, CliError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    array(v, "supports")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let pts = vectors(s, &format!("supports[{i}]"), dim)?;
            if pts.is_empty() {
                return Err(CliError::parse(format!("supports[{i}]: a support needs at least one point")));
            }
            Ok(pts)
        })
        .collect()
}

/// Reads a problem document; fan references are resolved relative to `base`.
///
/// # Errors
/// Malformed JSON, an unrecognized shape, or inconsistent lengths.
pub fn parse_document(v: &Value, base: &Path) -> Result<Document, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::parse("the document must be a JSON object"))?;
    if obj.contains_key("fan") {
        check_keys(obj, &["fan", "supports"], "a fan problem")?;
        let fan = match &obj["fan"] {
            Value::String(path) => fan_from_value(&read_json(&base.join(path))?, "fan")?,
            other => fan_from_value(other, "fan")?,
        };
        let supports = supports_from_value(obj.get("supports"), fan.dim)?;
        Ok(Document::Fan { fan, supports })
    } else if obj.contains_key("weights") {
        check_keys(obj, &["weights", "degrees"], "a weighted projective problem")?;
        let weights = int_list(&obj["weights"], "weights")?;
        let degrees = match obj.get("degrees") {
            Some(d) => int_list(d, "degrees")?,
            None => Vec::new(),
        };
        Ok(Document::Wps { weights, degrees })
    } else if obj.contains_key("rays") {
        let fan = fan_from_value(v, "fan")?;
        Ok(Document::Fan { fan, supports: Vec::new() })
    } else if obj.contains_key("dim") {
        check_keys(obj, &["dim", "supports"], "a torus problem")?;
        let m = usize_of(&obj["dim"], "dim")?;
        let supports = supports_from_value(obj.get("supports"), m)?;
        Ok(Document::Torus(TorusCIProblem::new(m, supports)))
    } else {
        Err(CliError::parse("unrecognized document: expected a `fan`, `dim`, `weights` or `rays` field"))
    }
}

fn load(path: &Path) -> Result<Document, CliError> {
    let v = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_document(&v, base)
}

fn number(x: &BigInt) -> Number {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

/// JSON report of `fan-check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanReport {
    pub valid: bool,
    pub violation: Option<String>,
    pub complete: bool,
    pub simplicial: bool,
    pub regular: bool,
    pub adapted: Option<bool>,
}

/// JSON output of the Euler characteristic commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerOutput {
    pub kind: Kind,
    pub p: Vec<usize>,
    pub values: Vec<Number>,
}

/// JSON output of the table commands; `rows[p][q]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableOutput {
    pub kind: String,
    pub n: usize,
    pub rows: Vec<Vec<Number>>,
}

impl From<&EpqTable> for TableOutput {
    fn from(t: &EpqTable) -> Self {
        let kind = match t.kind {
            TableKind::Ordinary => "ordinary",
            TableKind::Compact => "compact",
            TableKind::Hodge => "hodge",
        };
        TableOutput {
            kind: kind.into(),
            n: t.n,
            rows: t.rows().iter().map(|r| r.iter().map(number).collect()).collect(),
        }
    }
}

impl TableOutput {
    /// The table this output describes.
    ///
    /// # Errors
    /// An unknown kind or entries that are not integers.
    pub fn to_table(&self) -> Result<EpqTable, CliError> {
        let kind = match self.kind.as_str() {
            "ordinary" => TableKind::Ordinary,
            "compact" => TableKind::Compact,
            "hodge" => TableKind::Hodge,
            other => return Err(CliError::parse(format!("unknown table kind `{other}`"))),
        };
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.to_string().parse::<BigInt>().map_err(|_| CliError::parse(format!("{x} is not an integer")))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<BigInt>>, CliError>>()?;
        EpqTable::from_rows(rows, kind).map_err(CliError::from)
    }
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string(x).expect("serializable output");
    s.push('\n');
    s
}

fn fan_check(doc: Document, json: bool) -> Result<String, CliError> {
    let (fan, supports) = match doc {
        Document::Fan { fan, supports } => (fan, supports),
        _ => return Err(CliError::parse("fan-check needs a fan document")),
    };
    let report = validate(&fan);
    let valid = report.passed();
    let (complete, simplicial, regular) =
        if valid { (is_complete(&fan), is_simplicial(&fan), is_regular(&fan)) } else { (false, false, false) };
    let adapted =
        if valid && !supports.is_empty() { Some(adapted_subfan(&fan, &supports)?.fully_adapted) } else { None };
    let out = FanReport { valid, violation: report.violation.clone(), complete, simplicial, regular, adapted };
    let text = if json {
        to_json(&out)
    } else if let Some(v) = &out.violation {
        format!("invalid: {v}\n")
    } else {
        let mut flags: Vec<&str> = Vec::new();
        flags.push(if complete { "complete" } else { "incomplete" });
        flags.push(if simplicial { "simplicial" } else { "non-simplicial" });
        if regular {
            flags.push("regular");
        }
        match adapted {
            Some(true) => flags.push("adapted"),
            Some(false) => flags.push("not-adapted"),
            None => {}
        }
        format!("{}\n", flags.join(" "))
    };
    if !valid {
        return Err(CliError { code: EXIT_PRECONDITION, message: text.trim_end().to_string() });
    }
    Ok(text)
}

fn p_range(degrees: &Degrees, n: usize) -> Vec<usize> {
    match degrees.p {
        Some(p) => vec![p],
        None => (0..=n).collect(),
    }
}

fn euler_text(kind: Kind, ps: &[usize], values: &[BigInt]) -> String {
    let name = match kind {
        Kind::Alt => "alt",
        Kind::Sym => "sym",
        Kind::Tensor => "tensor",
    };
    let mut s = String::new();
    for (p, v) in ps.iter().zip(values) {
        writeln!(s, "chi_{name}({p}) = {v}").expect("write to string");
    }
    s
}

fn render_euler(kind: Kind, ps: Vec<usize>, values: Vec<BigInt>, json: bool) -> String {
    if json {
        to_json(&EulerOutput { kind, p: ps, values: values.iter().map(number).collect() })
    } else {
        euler_text(kind, &ps, &values)
    }
}

fn render_table(t: &EpqTable, json: bool) -> String {
    if json {
        to_json(&TableOutput::from(t))
    } else {
        t.to_string()
    }
}

fn dimension(m: usize, k: usize) -> Result<usize, CliError> {
    m.checked_sub(k).ok_or_else(|| CliError::precondition(format!("{k} equations in dimension {m}")))
}

fn euler(kind: Kind, degrees: &Degrees, doc: Document, json: bool) -> Result<String, CliError> {
    let Document::Fan { fan, supports } = doc else {
        return Err(CliError::parse("euler needs a fan document"));
    };
    if let Some(v) = validate(&fan).violation {
        return Err(CliError::precondition(format!("invalid fan: {v}")));
    }
    if !is_complete(&fan) || !is_simplicial(&fan) {
        return Err(CliError::precondition("euler needs a complete simplicial fan"));
    }
    let n = dimension(fan.dim, supports.len())?;
    let ctx = build_context(&fan)?;
    let d = degrees_of(&fan, &supports)?;
    let ps = p_range(degrees, n);
    let values = ps
        .iter()
        .map(|&p| match kind {
            Kind::Alt => chi_alt(&ctx, &d, p),
            Kind::Sym => chi_sym(&ctx, &d, p),
            Kind::Tensor => chi_tensor(&ctx, &d, p),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render_euler(kind, ps, values, json))
}

fn hodge(doc: Document, json: bool) -> Result<String, CliError> {
    let Document::Fan { fan, supports } = doc else {
        return Err(CliError::parse("hodge needs a fan document"));
    };
    if let Some(v) = validate(&fan).violation {
        return Err(CliError::precondition(format!("invalid fan: {v}")));
    }
    Ok(render_table(&hodge_compact(&fan, &supports)?, json))
}

fn hodge_torus(doc: Document, json: bool) -> Result<String, CliError> {
    let Document::Torus(problem) = doc else {
        return Err(CliError::parse("hodge-torus needs a torus document"));
    };
    dimension(problem.m, problem.k())?;
    Ok(render_table(&DkEngine::new().epq_c_ci(&problem)?, json))
}

fn wps(cmd: &WpsCommand, json: bool) -> Result<String, CliError> {
    let file = match cmd {
        WpsCommand::Euler { file, .. } | WpsCommand::Hodge { file } => file,
    };
    let Document::Wps { weights, degrees } = load(file)? else {
        return Err(CliError::parse("wps needs a weights document"));
    };
    match cmd {
        WpsCommand::Euler { kind, degrees: which, .. } => {
            let n = dimension(weights.len().saturating_sub(1), degrees.len())?;
            let fk = match kind {
                Kind::Alt => FormKind::Alt,
                Kind::Sym => FormKind::Sym,
                Kind::Tensor => FormKind::Tensor,
            };
            let ps = p_range(which, n);
            let values = ps.iter().map(|&p| wps_chi(&weights, &degrees, p, fk)).collect::<Result<Vec<_>, _>>()?;
            Ok(render_euler(*kind, ps, values, json))
        }
        WpsCommand::Hodge { .. } => Ok(render_table(&wps_hodge(&weights, &degrees)?, json)),
    }
}

/// Executes a parsed command line and returns what to print on stdout.
///
/// # Errors
/// Any failure, with its exit status.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::FanCheck { file } => fan_check(load(file)?, cli.json),
        Command::Euler { kind, degrees, file } => euler(*kind, degrees, load(file)?, cli.json),
        Command::Hodge { file } => hodge(load(file)?, cli.json),
        Command::HodgeTorus { file } => hodge_torus(load(file)?, cli.json),
        Command::Wps { command } => wps(command, cli.json),
    }
}

/// Re-renders a JSON table output as text.
///
/// # Errors
/// Output that is not a table.
pub fn table_from_json(text: &str) -> Result<EpqTable, CliError> {
    let out: TableOutput = serde_json::from_str(text).map_err(|e| CliError::parse(e.to_string()))?;
    out.to_table()
}

#[cfg(test)]
mod tests;
