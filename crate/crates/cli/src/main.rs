//! kdense: density checks and affine-inequality reports for planar convex
//! bodies.
//!
//! Shapes arrive as JSON shape files or inline literals: `disk`, `disk(2)`,
//! `ellipse(2,1)`, `ellipse(2,1,0.7)`, `ellipse(2,1,cx,cy,rot)`, `square`,
//! `square(1.5)`, `polygon(x,y;x,y;...)`, `support_grid(h0,h1,...)`.
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! input errors (one-line diagnostic on stderr naming the offending flag).
//! Human summaries go to stderr; stdout carries only the report bytes.

mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdense::asymptotics::cond2_residual;
use kdense::density;
use kdense::inequalities;
use kdense::report::{self, CheckRow};
use kdense::shape;
use kdense::{ConvexBody, GeomError, SupportGrid, Vec2};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "kdense",
    version,
    about = "Density checks and affine-inequality reports for planar convex bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the boundary density profile of (G, K) over a grid of scales
    DensitySweep(SweepArgs),
    /// Decide whether G is K-dense: density constant along the boundary at every scale
    CheckKdense(CheckArgs),
    /// Run the necessary-condition battery for (G, K)
    VerifyNecessary(NecessaryArgs),
    /// Check the affine inequalities for one body or a seeded random suite
    VerifyInequalities(InequalityArgs),
    /// Evaluate the equality-case chain for a centrally symmetric K
    ProofChain(ChainArgs),
    /// Emit the combined report for (G, K)
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct GridArgs {
    /// Boundary / direction sample count
    #[arg(long, default_value_t = 256, value_name = "N")]
    samples: usize,
    /// Angular resolution for smoothing and curvature sweeps
    #[arg(long, default_value_t = 1024, value_name = "N")]
    grid: usize,
    /// Smoothing radius applied to polygon shapes, so corners gain a
    /// curvature
    #[arg(long, value_name = "R")]
    smooth: Option<f64>,
}

#[derive(Args)]
struct IoArgs {
    /// Output file; stdout when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// G as a shape-file path or inline literal
    #[arg(long = "g", value_name = "PATH|LITERAL")]
    g: String,
    /// K as a shape-file path or inline literal; needs the origin interior
    #[arg(long = "k", value_name = "PATH|LITERAL")]
    k: String,
    /// Comma-separated scale list; defaults to a grid around the inscribed
    /// scale
    #[arg(long, value_name = "LIST")]
    r: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// G as a shape-file path or inline literal
    #[arg(long = "g", value_name = "PATH|LITERAL")]
    g: String,
    /// K as a shape-file path or inline literal; needs the origin interior
    #[arg(long = "k", value_name = "PATH|LITERAL")]
    k: String,
    /// Comma-separated scale list; defaults to a grid around the inscribed
    /// scale
    #[arg(long, value_name = "LIST")]
    r: Option<String>,
    /// Relative variation tolerance
    #[arg(long, default_value_t = 1e-3, value_name = "X")]
    tol: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct NecessaryArgs {
    /// G as a shape-file path or inline literal
    #[arg(long = "g", value_name = "PATH|LITERAL")]
    g: String,
    /// K as a shape-file path or inline literal; needs the origin interior
    #[arg(long = "k", value_name = "PATH|LITERAL")]
    k: String,
    /// Residual tolerance for every check row
    #[arg(long, default_value_t = 1e-3, value_name = "X")]
    tol: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct InequalityArgs {
    /// Body to check, as a shape-file path or inline literal
    #[arg(long = "k", value_name = "PATH|LITERAL")]
    k: Option<String>,
    /// Run the seeded random-body suite instead of a single body; --samples
    /// sets the suite size
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Violation tolerance for every check row
    #[arg(long, default_value_t = 1e-3, value_name = "X")]
    tol: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ChainArgs {
    /// Body to check, as a shape-file path or inline literal; must be
    /// centrally symmetric with the origin interior
    #[arg(long = "k", value_name = "PATH|LITERAL")]
    k: String,
    /// Relative tolerance for every link of the chain
    #[arg(long, default_value_t = 1e-3, value_name = "X")]
    tol: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ReportArgs {
    /// G as a shape-file path or inline literal
    #[arg(long = "g", value_name = "PATH|LITERAL")]
    g: String,
    /// K as a shape-file path or inline literal; needs the origin interior
    #[arg(long = "k", value_name = "PATH|LITERAL")]
    k: String,
    /// Comma-separated scale list; defaults to a grid around the inscribed
    /// scale
    #[arg(long, value_name = "LIST")]
    r: Option<String>,
    /// Tolerance shared by the density verdict and the check rows
    #[arg(long, default_value_t = 1e-3, value_name = "X")]
    tol: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    io: IoArgs,
}

/// Terminal failure: `code` is the process exit status (2 for input
/// errors), `message` the one-line stderr diagnostic.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> CliError {
        CliError::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::DensitySweep(a) => run_density_sweep(a),
        Command::CheckKdense(a) => run_check_kdense(a),
        Command::VerifyNecessary(a) => run_verify_necessary(a),
        Command::VerifyInequalities(a) => run_verify_inequalities(a),
        Command::ProofChain(a) => run_proof_chain(a),
        Command::Report(a) => run_report(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

#[derive(Clone, Copy)]
enum Role {
    G,
    K,
}

impl Role {
    fn flag(self) -> &'static str {
        match self {
            Role::G => "--g",
            Role::K => "--k",
        }
    }
}

/// Resolve a shape argument: inline literal when it looks like one, shape
/// file otherwise. Applies `--smooth` to polygons and enforces the K-role
/// origin requirement.
fn load_body(arg: &str, role: Role, grid: &GridArgs) -> Result<ConvexBody, CliError> {
    let wrap = |e: GeomError| CliError::input(format!("{}: {e}", role.flag()));
    let body = match parse_literal(arg) {
        Literal::Body(result) => result.map_err(wrap)?,
        Literal::Malformed(msg) => {
            return Err(CliError::input(format!("{}: {msg}", role.flag())))
        }
        Literal::NotALiteral => shape::read_shape(Path::new(arg)).map_err(wrap)?,
    };
    let body = match (&body, grid.smooth) {
        (ConvexBody::Polygon { .. }, Some(radius)) => {
            body.smoothed(radius, grid.grid).map_err(|e| {
                CliError::input(format!("--smooth: {e}"))
            })?
        }
        _ => body,
    };
    if matches!(role, Role::K) && !body.origin_interior() {
        return Err(CliError::input(format!(
            "{}: origin must lie strictly inside K; translate the shape first",
            role.flag()
        )));
    }
    Ok(body)
}

enum Literal {
    Body(kdense::Result<ConvexBody>),
    Malformed(String),
    NotALiteral,
}

/// Inline shape grammar. Anything containing `(` is treated as a literal
/// attempt, so a typo in the kind name reports itself instead of failing as
/// a missing file.
fn parse_literal(arg: &str) -> Literal {
    let s = arg.trim();
    let (name, inner) = match s.find('(') {
        Some(i) => match s[i + 1..].strip_suffix(')') {
            Some(inner) => (&s[..i], Some(inner)),
            None => return Literal::Malformed(format!("unbalanced parentheses in `{s}`")),
        },
        None => (s, None),
    };
    let one_number = |inner: &str, what: &str| -> Result<f64, String> {
        let vals = parse_numbers(inner)?;
        if vals.len() == 1 {
            Ok(vals[0])
        } else {
            Err(format!("{what} takes one number, got {}", vals.len()))
        }
    };
    match name {
        "disk" => Literal::Body(match inner.map(|i| one_number(i, "disk")) {
            None => ConvexBody::disk(1.0),
            Some(Ok(r)) => ConvexBody::disk(r),
            Some(Err(msg)) => return Literal::Malformed(msg),
        }),
        "square" => Literal::Body(match inner.map(|i| one_number(i, "square")) {
            None => ConvexBody::square(1.0),
            Some(Ok(s)) => ConvexBody::square(s),
            Some(Err(msg)) => return Literal::Malformed(msg),
        }),
        "ellipse" => {
            let Some(inner) = inner else {
                return Literal::Malformed(
                    "ellipse needs arguments: ellipse(a,b[,rotation])".to_string(),
                );
            };
            let vals = match parse_numbers(inner) {
                Ok(v) => v,
                Err(msg) => return Literal::Malformed(msg),
            };
            Literal::Body(match vals.as_slice() {
                [a, b] => ConvexBody::ellipse(*a, *b),
                [a, b, rot] => ConvexBody::ellipse_at(*a, *b, Vec2::ZERO, *rot),
                [a, b, cx, cy, rot] => {
                    ConvexBody::ellipse_at(*a, *b, Vec2::new(*cx, *cy), *rot)
                }
                _ => {
                    return Literal::Malformed(format!(
                        "ellipse takes (a,b), (a,b,rotation), or (a,b,cx,cy,rotation), got {} numbers",
                        vals.len()
                    ))
                }
            })
        }
        "polygon" => {
            let Some(inner) = inner else {
                return Literal::Malformed(
                    "polygon needs vertices: polygon(x,y;x,y;...)".to_string(),
                );
            };
            let mut vertices = Vec::new();
            for pair in inner.split(';') {
                match parse_numbers(pair) {
                    Ok(v) if v.len() == 2 => vertices.push(Vec2::new(v[0], v[1])),
                    Ok(v) => {
                        return Literal::Malformed(format!(
                            "polygon vertex `{}` has {} coordinates, expected 2",
                            pair.trim(),
                            v.len()
                        ))
                    }
                    Err(msg) => return Literal::Malformed(msg),
                }
            }
            Literal::Body(ConvexBody::polygon(vertices))
        }
        "support_grid" => {
            let Some(inner) = inner else {
                return Literal::Malformed(
                    "support_grid needs values: support_grid(h0,h1,...)".to_string(),
                );
            };
            Literal::Body(match parse_numbers(inner) {
                Ok(h) => SupportGrid::new(h).map(ConvexBody::Grid),
                Err(msg) => return Literal::Malformed(msg),
            })
        }
        _ if inner.is_some() => {
            Literal::Malformed(format!("unknown shape literal `{name}`"))
        }
        _ => Literal::NotALiteral,
    }
}

fn parse_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"))
        })
        .collect()
}

fn parse_r_grid(
    arg: &Option<String>,
    g: &ConvexBody,
    k: &ConvexBody,
) -> Result<Vec<f64>, CliError> {
    match arg {
        Some(text) => {
            let rs = parse_numbers(text)
                .map_err(|msg| CliError::input(format!("--r: {msg}")))?;
            if rs.is_empty() || rs.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                return Err(CliError::input(
                    "--r: every scale must be a positive finite number".to_string(),
                ));
            }
            Ok(rs)
        }
        None => Ok(density::default_r_grid(g, k)?),
    }
}

fn emit(io: &IoArgs, text: &str) -> Result<(), CliError> {
    match &io.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("--out: {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_density_sweep(a: SweepArgs) -> Result<bool, CliError> {
    let g = load_body(&a.g, Role::G, &a.grid)?;
    let k = load_body(&a.k, Role::K, &a.grid)?;
    let rs = parse_r_grid(&a.r, &g, &k)?;
    let mut profiles = Vec::with_capacity(rs.len());
    for &r in &rs {
        profiles.push(density::density_profile(&g, &k, r, a.grid.samples)?);
    }
    let text = match a.io.format {
        Format::Csv => report::profiles_to_csv(&profiles),
        Format::Json => report::to_json(&profiles)?,
        Format::Svg => svg::render(&g, &k, &profiles)?,
    };
    emit(&a.io, &text)?;
    Ok(true)
}

fn run_check_kdense(a: CheckArgs) -> Result<bool, CliError> {
    let g = load_body(&a.g, Role::G, &a.grid)?;
    let k = load_body(&a.k, Role::K, &a.grid)?;
    let rs = parse_r_grid(&a.r, &g, &k)?;
    let verdict = density::is_kdense(&g, &k, &rs, a.grid.samples, a.tol)?;
    let text = match a.io.format {
        Format::Csv => report::verdict_to_csv(&verdict),
        Format::Json => report::to_json(&verdict)?,
        Format::Svg => svg::render(&g, &k, &verdict.profiles)?,
    };
    emit(&a.io, &text)?;
    eprintln!(
        "max_variation = {:.6e} (tol {:e}): {}",
        verdict.max_variation,
        verdict.tol,
        if verdict.is_dense { "K-dense" } else { "not K-dense" }
    );
    Ok(verdict.is_dense)
}

/// Relative spread of the K-distance to the boundary over interiorish
/// evaluation points: zero exactly when G = x + lambda K.
fn k_distance_spread(
    g: &ConvexBody,
    k: &ConvexBody,
    n_samples: usize,
) -> Result<f64, CliError> {
    let samples = g.boundary_sample(n_samples)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for bp in &samples {
        let d = density::max_k_distance(g, k, bp.point)?;
        lo = lo.min(d);
        hi = hi.max(d);
        sum += d;
    }
    Ok((hi - lo) / (sum / samples.len() as f64))
}

fn necessary_rows(
    g: &ConvexBody,
    k: &ConvexBody,
    samples: usize,
    tol: f64,
) -> Result<Vec<CheckRow>, CliError> {
    let res = cond2_residual(g, k, samples, samples)?;
    let spread = k_distance_spread(g, k, samples)?;
    Ok(vec![
        CheckRow::new("half_volume", res.half_volume, tol),
        CheckRow::new("section_centroid", res.centroid, tol),
        CheckRow::new("cond2_variation", res.cond2_variation, tol),
        CheckRow::new("c_estimate", res.c_estimate, f64::INFINITY),
        CheckRow::new("max_k_distance_variation", spread, tol),
    ])
}

fn run_verify_necessary(a: NecessaryArgs) -> Result<bool, CliError> {
    let g = load_body(&a.g, Role::G, &a.grid)?;
    let k = load_body(&a.k, Role::K, &a.grid)?;
    let rows = necessary_rows(&g, &k, a.grid.samples, a.tol)?;
    let text = match a.io.format {
        Format::Csv => report::checks_to_csv(&rows),
        Format::Json => report::to_json(&rows)?,
        Format::Svg => {
            return Err(CliError::input(
                "--format: svg is not available for verify-necessary".to_string(),
            ))
        }
    };
    emit(&a.io, &text)?;
    let passed = rows.iter().filter(|r| r.pass).count();
    eprintln!("{passed}/{} checks passed", rows.len());
    Ok(passed == rows.len())
}

fn run_verify_inequalities(a: InequalityArgs) -> Result<bool, CliError> {
    let rows = match (a.k.as_deref(), a.seed) {
        (Some(_), Some(_)) => {
            return Err(CliError::input(
                "--seed: pass exactly one of --k and --seed".to_string(),
            ))
        }
        (None, None) => {
            return Err(CliError::input(
                "--k: pass a body to check, or --seed N for the random suite".to_string(),
            ))
        }
        (Some(arg), None) => {
            let k = load_body(arg, Role::K, &a.grid)?;
            single_body_rows(&k, a.grid.grid, a.tol)?
        }
        (None, Some(seed)) => suite_rows(seed, a.grid.samples, a.grid.grid, a.tol)?,
    };
    let text = match a.io.format {
        Format::Csv => report::checks_to_csv(&rows),
        Format::Json => report::to_json(&rows)?,
        Format::Svg => {
            return Err(CliError::input(
                "--format: svg is not available for verify-inequalities".to_string(),
            ))
        }
    };
    emit(&a.io, &text)?;
    let passed = rows.iter().filter(|r| r.pass).count();
    eprintln!("{passed}/{} checks passed", rows.len());
    Ok(passed == rows.len())
}

fn single_body_rows(k: &ConvexBody, n: usize, tol: f64) -> Result<Vec<CheckRow>, CliError> {
    let ratio = inequalities::lutwak_ratio(k, n)?;
    let petty = inequalities::petty_residual(k, n)?;
    let scaled = k.scaled(1.5)?;
    let gap = inequalities::minkowski_gap(k, &scaled, n)?;
    let scale = (k.area() * scaled.area()).sqrt();
    Ok(vec![
        CheckRow::new("lutwak_violation", (ratio - 1.0).max(0.0), tol),
        CheckRow::new("lutwak_ratio", ratio, f64::INFINITY),
        CheckRow::new("petty_residual", petty, f64::INFINITY),
        CheckRow::new("minkowski_homothetic_gap", gap / scale, tol),
    ])
}

/// Seeded random suite: Lutwak on every body, Minkowski on consecutive
/// pairs, and the homothetic equality case on the first ten bodies.
fn suite_rows(seed: u64, count: usize, n_grid: usize, tol: f64) -> Result<Vec<CheckRow>, CliError> {
    if count < 2 {
        return Err(CliError::input(
            "--samples: the random suite needs at least 2 bodies".to_string(),
        ));
    }
    let mut bodies = Vec::with_capacity(count);
    for i in 0..count {
        bodies.push(inequalities::random_smoothed_body(
            seed.wrapping_add(i as u64),
            n_grid,
        )?);
    }
    let mut lutwak_violation: f64 = 0.0;
    for body in &bodies {
        let ratio = inequalities::lutwak_ratio(body, 64)?;
        lutwak_violation = lutwak_violation.max(ratio - 1.0);
    }
    let mut gap_violation: f64 = 0.0;
    for pair in bodies.windows(2) {
        let gap = inequalities::minkowski_gap(&pair[0], &pair[1], 64)?;
        let scale = (pair[0].area() * pair[1].area()).sqrt();
        gap_violation = gap_violation.max(-gap / scale);
    }
    let mut homothetic_gap: f64 = 0.0;
    for body in bodies.iter().take(10) {
        let scaled = body.scaled(1.7)?;
        let gap = inequalities::minkowski_gap(body, &scaled, 64)?;
        let scale = (body.area() * scaled.area()).sqrt();
        homothetic_gap = homothetic_gap.max((gap / scale).abs());
    }
    Ok(vec![
        CheckRow::new("lutwak_max_violation", lutwak_violation.max(0.0), tol),
        CheckRow::new("minkowski_min_gap_violation", gap_violation.max(0.0), tol),
        CheckRow::new("homothetic_max_gap", homothetic_gap, tol),
    ])
}

fn run_proof_chain(a: ChainArgs) -> Result<bool, CliError> {
    let k = load_body(&a.k, Role::K, &a.grid)?;
    let rep = inequalities::proof_chain(&k, a.tol, a.grid.grid)?;
    let text = match a.io.format {
        Format::Csv => {
            report::diagnostics_to_csv(&inequalities::direction_diagnostics(&k, a.grid.grid)?)
        }
        Format::Json => report::to_json(&rep)?,
        Format::Svg => {
            return Err(CliError::input(
                "--format: svg is not available for proof-chain".to_string(),
            ))
        }
    };
    emit(&a.io, &text)?;
    eprintln!(
        "c = {:.9}, c^-2 = {:.9}, V V* = {:.9}, omega^3/8V = {:.9}: {}",
        rep.c,
        rep.lhs_c2,
        rep.santalo_term,
        rep.omega_term,
        if rep.verdict { "equality case" } else { "not an ellipse" }
    );
    Ok(rep.verdict)
}

fn run_report(a: ReportArgs) -> Result<bool, CliError> {
    let g = load_body(&a.g, Role::G, &a.grid)?;
    let k = load_body(&a.k, Role::K, &a.grid)?;
    let rs = parse_r_grid(&a.r, &g, &k)?;
    let verdict = density::is_kdense(&g, &k, &rs, a.grid.samples, a.tol)?;

    // The battery and the chain both require curvature (and the chain
    // central symmetry); in the bundle these are recorded as skips, not
    // failures, so a polygon pair still gets its density report.
    let necessary = necessary_rows(&g, &k, a.grid.samples, a.tol);
    let chain = inequalities::proof_chain(&k, a.tol, a.grid.grid);

    let mut pass = verdict.is_dense;
    if let Ok(rows) = &necessary {
        pass = pass && rows.iter().all(|r| r.pass);
    }
    if let Ok(rep) = &chain {
        pass = pass && rep.verdict;
    }

    let text = match a.io.format {
        Format::Svg => svg::render(&g, &k, &verdict.profiles)?,
        Format::Json => {
            let value = serde_json::json!({
                "g": g.kind_name(),
                "k": k.kind_name(),
                "kdense": verdict,
                "necessary": necessary.as_ref().ok(),
                "necessary_skipped": necessary.as_ref().err().map(|e| e.message.clone()),
                "proof_chain": chain.as_ref().ok(),
                "proof_chain_skipped": chain.as_ref().err().map(|e| e.to_string()),
            });
            report::to_json(&value)?
        }
        Format::Csv => {
            let mut rows = vec![CheckRow::new(
                "kdense_max_variation",
                verdict.max_variation,
                a.tol,
            )];
            if let Ok(battery) = &necessary {
                rows.extend(battery.iter().cloned());
            }
            if let Ok(rep) = &chain {
                rows.extend(chain_rows(rep));
            }
            report::checks_to_csv(&rows)
        }
    };
    emit(&a.io, &text)?;
    eprintln!(
        "K-dense: {} (max_variation {:.6e}); necessary: {}; chain: {}",
        verdict.is_dense,
        verdict.max_variation,
        match &necessary {
            Ok(rows) => {
                if rows.iter().all(|r| r.pass) {
                    "pass".to_string()
                } else {
                    "fail".to_string()
                }
            }
            Err(e) => format!("skipped ({})", e.message),
        },
        match &chain {
            Ok(rep) =>
                if rep.verdict {
                    "equality case".to_string()
                } else {
                    "not an ellipse".to_string()
                },
            Err(e) => format!("skipped ({e})"),
        },
    );
    Ok(pass)
}

/// One check row per link of the equality chain, with the relative scale of
/// each link folded into the residual.
fn chain_rows(rep: &inequalities::ProofChainReport) -> Vec<CheckRow> {
    let tol = rep.tol;
    vec![
        CheckRow::new("chain_ratio_variation", rep.ratio_variation, tol),
        CheckRow::new("chain_radial_identity_gap", rep.radial_identity_gap, tol),
        CheckRow::new(
            "chain_santalo_gap",
            (rep.santalo_term - rep.lhs_c2) / rep.lhs_c2,
            tol,
        ),
        CheckRow::new(
            "chain_omega_gap",
            (rep.omega_term - rep.lhs_c2) / rep.lhs_c2,
            tol,
        ),
        CheckRow::new(
            "chain_mixed_gap",
            (rep.mixed_term - 1.0 / rep.c) * rep.c,
            tol,
        ),
        CheckRow::new(
            "chain_minkowski_gap",
            rep.minkowski_gap / (rep.volume * rep.polar_volume).sqrt(),
            tol,
        ),
        CheckRow::new("chain_lutwak_gap", rep.lutwak_gap, tol),
    ]
}
