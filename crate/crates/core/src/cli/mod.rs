//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 internal invariant failure,
//! 3 domain violation.

pub mod expr;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::holomorphy::{self, HolomorphyError};
use crate::matgroup::{self, ComplexMat3, Mat3, MatgroupError, MatrixCatalog};
use crate::qht::QhtTransform;
use crate::quaternion::Quaternion;
use crate::symop::{self, Catalog, DiscrepancyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qht", version, about = "Quaternion holomorphic transformations and their Lie algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Tolerance override (holo-check default 1e-6, classify default 1e-9).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = holomorphy::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute every commutator table and compare with the printed ones.
    VerifyTables,
    /// Subgroup flags of a 3×3 matrix given as {"rows": [[[re, im], ...], ...]}.
    Classify { file: PathBuf },
    /// Apply a transform {"u": ..., "v": ...} to a quaternion.
    Apply {
        file: PathBuf,
        /// Quaternion JSON {"x0":..,"x1":..,"x2":..,"x3":..} or a constant expression such as 1+k.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Classify an expression in q and qbar as left-holomorphic, conjugate or neither.
    HoloCheck {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Central-difference step.
        #[arg(long, default_value_t = holomorphy::DEFAULT_STEP)]
        step: f64,
        /// Number of sample points.
        #[arg(long, default_value_t = holomorphy::DEFAULT_SAMPLE_COUNT)]
        samples: usize,
    },
    /// exp(t·x̂ᵢ) for a generator of the x algebra.
    Exp {
        #[arg(long)]
        generator: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) | CliError::Domain(m) => m,
        }
    }
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let written = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
            };
            if written.is_err() {
                return 1;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::VerifyTables => verify_tables(),
        Command::Classify { file } => classify(file, cli.tol.unwrap_or(matgroup::DEFAULT_CLASSIFY_TOL)),
        Command::Apply { file, point } => apply(file, point),
        Command::HoloCheck { expr, step, samples } => {
            holo_check(expr, *step, *samples, cli.tol.unwrap_or(holomorphy::DEFAULT_TOL), cli.seed)
        }
        Command::Exp { generator, t } => exp(*generator, *t),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: invalid JSON: {e}", path.display())))
}

#[derive(Serialize)]
struct InvariantCheck {
    name: String,
    holds: bool,
}

fn catalog_invariants(catalog: Catalog) -> Vec<InvariantCheck> {
    let basis = catalog.basis();
    let mut checks = vec![InvariantCheck {
        name: format!("jacobi:{catalog}"),
        holds: symop::jacobi_violations(&basis).is_empty(),
    }];
    match symop::structure_constants(&basis) {
        Ok(sc) => {
            let ads = symop::adjoint_from_constants(&sc);
            checks.push(InvariantCheck { name: format!("antisymmetry:{catalog}"), holds: sc.is_antisymmetric() });
            checks.push(InvariantCheck {
                name: format!("adjoint:{catalog}"),
                holds: symop::adjoint_is_representation(&sc, &ads),
            });
        }
        Err(_) => checks.push(InvariantCheck { name: format!("closure:{catalog}"), holds: false }),
    }
    checks
}

fn report_text(r: &DiscrepancyReport) -> String {
    let mut s = format!("{}: {}/{} entries match\n", r.table, r.matched(), r.total());
    for e in r.mismatches() {
        let label = |k| e.oracle.catalog.label(k);
        s += &format!(
            "  [{},{}] oracle {}, published {}\n",
            label(e.i),
            label(e.j),
            e.oracle,
            e.published
        );
    }
    for n in &r.notes {
        s += &format!("  note: {n}\n");
    }
    s
}

fn verify_tables() -> Result<Output, CliError> {
    let mut reports: Vec<DiscrepancyReport> = Catalog::ALL.iter().map(|&c| symop::verify_against_paper(c)).collect();
    reports.extend([MatrixCatalog::XHat, MatrixCatalog::GHat].map(matgroup::verify_matrix_table));
    let invariants: Vec<InvariantCheck> = Catalog::ALL.iter().flat_map(|&c| catalog_invariants(c)).collect();
    let failed: Vec<&str> = invariants.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();

    let mut text: String = reports.iter().map(report_text).collect();
    let held = invariants.len() - failed.len();
    text += &format!("invariants: {held}/{} hold\n", invariants.len());
    for f in &failed {
        text += &format!("  FAILED {f}\n");
    }
    let json = json!({ "reports": reports, "invariants": invariants });
    if !failed.is_empty() {
        return Err(CliError::Internal(format!("oracle invariants failed: {}", failed.join(", "))));
    }
    Ok(Output { text, json, code: 0 })
}

fn parse_matrix(v: &Value) -> Result<ComplexMat3, CliError> {
    let bad = || CliError::Input("matrix must be {\"rows\": 3 rows of 3 [re, im] pairs}".into());
    let rows: Vec<Vec<[f64; 2]>> =
        serde_json::from_value(v.get("rows").cloned().ok_or_else(bad)?).map_err(|_| bad())?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(bad());
    }
    Ok(Mat3::from_fn(|r, c| num_complex::Complex64::new(rows[r][c][0], rows[r][c][1])))
}

fn classify(file: &Path, tol: f64) -> Result<Output, CliError> {
    let m = parse_matrix(&read_json(file)?)?;
    let cls = matgroup::classify(&m, tol).map_err(|e| match e {
        MatgroupError::NotInX => CliError::Domain(e.to_string()),
        other => CliError::Internal(other.to_string()),
    })?;
    let names: Vec<String> = to_json(&cls)["flags"]
        .as_array()
        .map(|a| a.iter().filter_map(|f| f.as_str().map(str::to_string)).collect())
        .unwrap_or_default();
    Ok(Output { text: format!("flags: {}\n", names.join(", ")), json: to_json(&cls), code: 0 })
}

fn parse_point(text: &str) -> Result<Quaternion<f64>, CliError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid point: {e}")));
    }
    let e = expr::parse(text).map_err(|e| CliError::Input(format!("invalid point: {e}")))?;
    if !e.is_constant() {
        return Err(CliError::Input("point must not depend on q".into()));
    }
    e.eval(&Quaternion::zero()).map_err(|e| CliError::Input(format!("invalid point: {e}")))
}

fn apply(file: &Path, point: &str) -> Result<Output, CliError> {
    let t: QhtTransform<f64> = serde_json::from_value(read_json(file)?)
        .map_err(|e| CliError::Input(format!("{}: invalid transform: {e}", file.display())))?;
    let q = parse_point(point)?;
    let image = t.apply(&q);
    let fp = t.fixed_points();
    let mut warnings = Vec::new();
    if !t.is_invertible() {
        warnings.push("NonInvertible: u = 0, the transform is the constant map v".to_string());
    }
    let mut text = String::new();
    for w in &warnings {
        text += &format!("warning: {w}\n");
    }
    text += &format!("image: {image}\n");
    text += &match &fp.finite_point {
        Some(p) => format!("fixed points: {:?} (finite point {p})\n", fp.kind),
        None => format!("fixed points: {:?}\n", fp.kind),
    };
    let json = json!({ "image": image, "fixed_points": fp, "warnings": warnings });
    Ok(Output { text, json, code: 0 })
}

fn holo_check(text: &str, step: f64, samples: usize, tol: f64, seed: u64) -> Result<Output, CliError> {
    let e = expr::parse(text).map_err(|e| CliError::Input(e.to_string()))?;
    let points = holomorphy::sample_points(samples, seed);
    let verdict = holomorphy::classify_holomorphy(&|q: &Quaternion<f64>| e.eval(q), &points, step, tol)
        .map_err(|err| match err {
            HolomorphyError::Evaluation(m) => CliError::Domain(m.to_string()),
            other => CliError::Input(other.to_string()),
        })?;
    let text = format!(
        "{:?} (max residual {:e} at {})\n",
        verdict.class, verdict.max_residual, verdict.worst_point
    );
    Ok(Output { text, json: to_json(&verdict), code: 0 })
}

fn exp(generator: usize, t: f64) -> Result<Output, CliError> {
    if !t.is_finite() {
        return Err(CliError::Input("t must be finite".into()));
    }
    let g = matgroup::exp_generator(generator, t).map_err(|e| CliError::Input(e.to_string()))?;
    let m = g.to_mat3();
    let text: String = m
        .rows
        .iter()
        .map(|row| row.iter().map(|z| format!("{z}")).collect::<Vec<_>>().join("  ") + "\n")
        .collect();
    Ok(Output { text, json: to_json(&g), code: 0 })
}
