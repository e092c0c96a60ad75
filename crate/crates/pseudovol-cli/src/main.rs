//! `pseudovol`: orbit classification, dimension tables, Klain checks, the constants
//! table and valuation evaluation on convex bodies.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudovol::constants::{check, compute, specs, ConstantRow};
use pseudovol::crofton::{pair_m00, pair_mminus, pair_mplus, planar_body_average};
use pseudovol::grassmann::cos2theta;
use pseudovol::hadwiger::{dim_invariant_valuations, orbit_census_grassmannian, orbit_census_projective};
use pseudovol::klain::{fourier, index_range, is_in_klain_image_tol, kappa_value};
use pseudovol::lorentz::{phi_minus, phi_plus};
use pseudovol::quadform::signature_report;
use pseudovol::{ConvexBody, DimQuery, Group, KlainVector, Parity, PvError, QuadSpace, SpaceKind, Subspace};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use output::{num, Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid input: {0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] PvError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    /// The command ran but reported failing checks.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => 1,
            CliError::Library(e) if is_numeric(e) => 1,
            _ => 2,
        }
    }
}

fn is_numeric(e: &PvError) -> bool {
    matches!(
        e,
        PvError::PoleHit(_)
            | PvError::NonSmoothAtLightCone(_)
            | PvError::NonSmoothBoundary(_)
            | PvError::SingularSupportCollision(_)
            | PvError::DepthExceeded { .. }
    )
}

#[derive(Parser)]
#[command(name = "pseudovol", version, about = "Invariant valuations of indefinite orthogonal groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SpaceArgs {
    /// Number of positive squares.
    #[arg(long)]
    p: usize,
    /// Number of negative squares.
    #[arg(long)]
    q: usize,
}

impl SpaceArgs {
    fn space(&self) -> Result<QuadSpace, CliError> {
        Ok(QuadSpace::new(self.p, self.q)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Orbit label, cos 2theta and kappa values of a subspace given by basis rows.
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        /// JSON array of basis vectors, e.g. "[[1,0,0,0],[0,0,1,0]]".
        #[arg(long)]
        plane: String,
    },
    /// Dimension of the space of invariant valuations.
    Dims {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "all")]
        parity: ParityArg,
        #[arg(long, value_enum, default_value = "generalized")]
        space_kind: SpaceArg,
        #[arg(long, value_enum, default_value = "soplus")]
        group: GroupArg,
    },
    /// Orbit census of the Grassmannian (with --k) or of oriented lines.
    Census {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Admissibility and Fourier image of a Klain vector read from a JSON file ("-" for stdin).
    KlainCheck {
        input: String,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Recomputes every reference constant and compares with its closed form.
    Constants {
        /// Replaces every pinned tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Evaluates a valuation on a convex body read from JSON.
    Evaluate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum)]
        valuation: Valuation,
        /// Body file; bare names are also looked up under fixtures/.
        #[arg(long)]
        body: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Continuous,
    Generalized,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Soplus,
    Fullo,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Valuation {
    PhiMinus,
    PhiPlus,
    #[value(name = "phi_00")]
    Phi00,
    PhiPlusCrofton,
    PhiMinusCrofton,
}

impl Valuation {
    fn name(self) -> &'static str {
        match self {
            Valuation::PhiMinus => "phi_minus",
            Valuation::PhiPlus => "phi_plus",
            Valuation::Phi00 => "phi_00",
            Valuation::PhiPlusCrofton => "phi_plus_crofton",
            Valuation::PhiMinusCrofton => "phi_minus_crofton",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => match report.render(cli.format) {
            Ok(s) => {
                print!("{s}");
                ExitCode::from(code)
            }
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

/// Threads for the rayon pool: PSEUDOVOL_THREADS if set, capped by the machine.
fn thread_count() -> Result<usize, CliError> {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("PSEUDOVOL_THREADS") {
        Ok(s) => {
            let n: usize = s.trim().parse().map_err(|_| CliError::Usage(format!("PSEUDOVOL_THREADS='{s}' is not a positive integer")))?;
            if n == 0 {
                return Err(CliError::Usage("PSEUDOVOL_THREADS must be at least 1".into()));
            }
            Ok(n.min(avail))
        }
        Err(_) => Ok(avail),
    }
}

fn run(cli: &Cli) -> Result<(Report, u8), CliError> {
    match &cli.command {
        Command::Classify { space, plane } => cmd_classify(space.space()?, plane).map(|r| (r, 0)),
        Command::Dims { space, k, parity, space_kind, group } => cmd_dims(*space, *k, *parity, *space_kind, *group).map(|r| (r, 0)),
        Command::Census { space, k } => cmd_census(space.space()?, *k).map(|r| (r, 0)),
        Command::KlainCheck { input, tolerance } => cmd_klain_check(input, *tolerance),
        Command::Constants { tolerance } => cmd_constants(*tolerance),
        Command::Evaluate { space, valuation, body } => cmd_evaluate(space.space()?, *valuation, body).map(|r| (r, 0)),
    }
}

fn cmd_classify(space: QuadSpace, plane: &str) -> Result<Report, CliError> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(plane)?;
    if rows.iter().any(|r| r.len() != space.n()) {
        return Err(CliError::Usage(format!("every basis vector needs {} entries", space.n())));
    }
    let e = Subspace::from_rows(&rows)?;
    let rep = signature_report(&space, &e)?;
    let label = rep.label;
    let c2 = cos2theta(&space, &e)?;
    let mut kappas = serde_json::Map::new();
    if let Some((lo, hi)) = index_range(space.p(), space.q(), e.k()) {
        for a in lo..=hi {
            kappas.insert(a.to_string(), json!(kappa_value(&space, a, &e)?));
        }
    }
    let json = json!({
        "label": label.to_string(),
        "a": label.a, "b": label.b, "r": label.r,
        "open": label.is_open(),
        "closed": label.is_closed(space.p(), space.q()),
        "orbit_dim": label.orbit_dim(space.n()),
        "cos2theta": c2,
        "near_threshold": rep.near_threshold,
        "kappa": kappas,
    });
    let kappa_str = kappas.iter().map(|(a, v)| format!("{a}:{}", v.as_f64().unwrap_or(0.0))).collect::<Vec<_>>().join(" ");
    Ok(Report::key_values(
        json,
        vec![
            ("label", label.to_string()),
            ("open", label.is_open().to_string()),
            ("closed", label.is_closed(space.p(), space.q()).to_string()),
            ("orbit_dim", label.orbit_dim(space.n()).to_string()),
            ("cos2theta", num(c2)),
            ("kappa", kappa_str),
        ],
    ))
}

fn cmd_dims(s: SpaceArgs, k: usize, parity: ParityArg, kind: SpaceArg, group: GroupArg) -> Result<Report, CliError> {
    let parity = match parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
        ParityArg::All => Parity::All,
    };
    let kind = match kind {
        SpaceArg::Continuous => SpaceKind::Continuous,
        SpaceArg::Generalized => SpaceKind::Generalized,
    };
    let group = match group {
        GroupArg::Soplus => Group::SOplus,
        GroupArg::Fullo => Group::FullO,
    };
    let query = DimQuery::new(s.p, s.q, k, kind, parity, group);
    let d = dim_invariant_valuations(&query)?;
    let json = json!({ "query": query, "dim": d });
    Ok(Report::key_values(json, vec![("p", s.p.to_string()), ("q", s.q.to_string()), ("k", k.to_string()), ("dim", d.to_string())]))
}

fn cmd_census(space: QuadSpace, k: Option<usize>) -> Result<Report, CliError> {
    match k {
        Some(k) => {
            if k > space.n() {
                return Err(CliError::Usage(format!("k = {k} exceeds n = {}", space.n())));
            }
            let entries = orbit_census_grassmannian(space.p(), space.q(), k);
            let rows =
                entries.iter().map(|c| vec![c.label.to_string(), c.open.to_string(), c.closed.to_string(), c.dim.to_string()]).collect();
            let json = json!({ "p": space.p(), "q": space.q(), "k": k, "orbits": entries });
            Ok(Report::new(json, &["label", "open", "closed", "dim"], rows))
        }
        None => {
            let c = orbit_census_projective(space.p(), space.q());
            let mut rows: Vec<Vec<String>> = c.open_names.iter().map(|n| vec![n.clone(), "open".into()]).collect();
            rows.extend(c.closed_names.iter().map(|n| vec![n.clone(), "closed".into()]));
            Ok(Report::new(json!({ "p": space.p(), "q": space.q(), "projective": c }), &["orbit", "kind"], rows))
        }
    }
}

#[derive(Deserialize)]
struct KlainInput {
    p: usize,
    q: usize,
    k: usize,
    /// Coefficients c_lo..c_hi in index order.
    coeffs: Vec<f64>,
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        Ok(std::fs::read_to_string(resolve(Path::new(path)))?)
    }
}

fn cmd_klain_check(path: &str, tol: f64) -> Result<(Report, u8), CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Usage("tolerance must be positive".into()));
    }
    let input: KlainInput = serde_json::from_str(&read_input(path)?)?;
    let v = KlainVector::new(input.p, input.q, input.k, input.coeffs)?;
    let admissible = is_in_klain_image_tol(&v, tol);
    let f = fourier(&v);
    let (lo, hi) = v.range();
    let (flo, fhi) = f.range();
    let json = json!({
        "p": v.p, "q": v.q, "k": v.k,
        "range": [lo, hi],
        "admissible": admissible,
        "fourier": { "k": f.k, "range": [flo, fhi], "coeffs": (flo..=fhi).map(|a| f.get(a)).collect::<Vec<_>>() },
    });
    let rows = (lo..=hi).map(|a| vec![a.to_string(), num(v.get(a)), (input.p - a).to_string(), num(f.get(input.p - a))]).collect();
    let mut report = Report::new(json, &["a", "c_a", "fourier_index", "fourier_c"], rows);
    report.headers.push("admissible".into());
    for r in &mut report.rows {
        r.push(admissible.to_string());
    }
    Ok((report, if admissible { 0 } else { 1 }))
}

fn cmd_constants(tol: Option<f64>) -> Result<(Report, u8), CliError> {
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(CliError::Usage("tolerance must be positive".into()));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(thread_count()?).build()?;
    let specs = specs();
    // par_iter keeps the input order on collect.
    let rows: Vec<ConstantRow> = pool.install(|| specs.par_iter().map(|s| check(s, compute(s.name).unwrap_or(f64::NAN), tol)).collect());
    let failed = rows.iter().filter(|r| !r.pass).count();
    for r in rows.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {}: computed {} expected {} (tolerance {:e})", r.name, r.computed, r.expected, r.tolerance);
    }
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                num(r.computed),
                num(r.expected),
                num(r.abs_err),
                num(r.rel_err),
                format!("{:e}", r.tolerance),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let json = json!({ "rows": rows, "passed": rows.len() - failed, "failed": failed });
    Ok((
        Report::new(json, &["name", "computed", "expected", "abs_err", "rel_err", "tolerance", "status"], table),
        if failed == 0 { 0 } else { 1 },
    ))
}

/// Bare file names fall back to the repository's fixtures directory.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let local = Path::new("fixtures").join(path);
    if local.exists() {
        return local;
    }
    let repo = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(path);
    if repo.exists() {
        repo
    } else {
        path.to_path_buf()
    }
}

fn cmd_evaluate(space: QuadSpace, valuation: Valuation, body: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(resolve(body)).map_err(|e| CliError::Usage(format!("{}: {e}", body.display())))?;
    let body: ConvexBody = serde_json::from_str(&text)?;
    let crofton = matches!(valuation, Valuation::Phi00 | Valuation::PhiPlusCrofton | Valuation::PhiMinusCrofton);
    if crofton && (space.p(), space.q()) != (2, 2) {
        return Err(CliError::Usage(format!("{} is defined on R^(2,2) only", valuation.name())));
    }
    let value = match valuation {
        Valuation::PhiMinus => phi_minus(&space, &body)?,
        Valuation::PhiPlus => phi_plus(&space, &body)?,
        Valuation::Phi00 => pair_m00(&planar_body_average(&body)?)?,
        Valuation::PhiPlusCrofton => pair_mplus(&planar_body_average(&body)?)?,
        Valuation::PhiMinusCrofton => pair_mminus(&planar_body_average(&body)?)?,
    };
    let json = json!({ "valuation": valuation.name(), "p": space.p(), "q": space.q(), "body": body.label(), "value": value });
    Ok(Report::key_values(
        json,
        vec![("valuation", valuation.name().to_string()), ("body", body.label().to_string()), ("value", num(value))],
    ))
}
