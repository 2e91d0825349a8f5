//! Report emission: CSV for density profiles and residual check tables,
//! JSON for the structured verdicts. All float formatting goes through the
//! shortest round-trip `Display` form, so identical inputs produce byte
//! identical files.

use crate::body::BoundaryPoint;
use crate::density::{DensityProfile, KDenseVerdict};
use crate::error::{GeomError, Result};
use crate::inequalities::DirectionDiagnostic;
use serde::Serialize;
use std::fmt::Write as _;

/// One row of a residual check table.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check_name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    pub fn new(check_name: impl Into<String>, residual: f64, tolerance: f64) -> CheckRow {
        CheckRow {
            check_name: check_name.into(),
            residual,
            tolerance,
            pass: residual.abs() <= tolerance,
        }
    }
}

/// CSV float form: `Display` for finite values, `inf`/`-inf`/`nan`
/// otherwise (polygon corners carry infinite curvature).
fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

fn push_profile_row(out: &mut String, bp: &BoundaryPoint, r: f64, delta: f64) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{}",
        fmt_float(bp.s),
        fmt_float(bp.point.x),
        fmt_float(bp.point.y),
        fmt_float(bp.nu.x),
        fmt_float(bp.nu.y),
        fmt_float(bp.kappa),
        fmt_float(r),
        fmt_float(delta),
    );
}

/// Profile table: one row per (sample, r), profiles in the given r order,
/// samples in boundary order within each profile.
pub fn profiles_to_csv(profiles: &[DensityProfile]) -> String {
    let mut out = String::from("s,x,y,nu_x,nu_y,kappa,r,delta\n");
    for profile in profiles {
        for (bp, &delta) in profile.samples.iter().zip(&profile.deltas) {
            push_profile_row(&mut out, bp, profile.r, delta);
        }
    }
    out
}

pub fn verdict_to_csv(verdict: &KDenseVerdict) -> String {
    profiles_to_csv(&verdict.profiles)
}

/// Residual table: one row per check.
pub fn checks_to_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from("check_name,residual,tolerance,pass\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.check_name,
            fmt_float(row.residual),
            fmt_float(row.tolerance),
            row.pass,
        );
    }
    out
}

/// Per-direction table behind the equality-chain verdict: one row per
/// sweep angle.
pub fn diagnostics_to_csv(rows: &[DirectionDiagnostic]) -> String {
    let mut out = String::from("theta,support,radial,radial_perp,curvature,ratio,petty_product\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_float(row.theta),
            fmt_float(row.support),
            fmt_float(row.radial),
            fmt_float(row.radial_perp),
            fmt_float(row.curvature),
            fmt_float(row.ratio),
            fmt_float(row.petty_product),
        );
    }
    out
}

/// JSON form of any report structure. Non-finite floats serialize as JSON
/// null (there is no standard JSON representation for them); CSV keeps the
/// `inf` spelling.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| GeomError::io(format!("report serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}
