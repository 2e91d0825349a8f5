//! Support-function grids: a convex body given by support values h_k > 0 at
//! n uniformly spaced angles, n a power of two.
//!
//! The grid denotes the support-line body  ∩_k { x : <x, u_k> <= h_k }.
//! Radial and gauge evaluations below are exact for that body, which makes
//! the polar-duality identities hold to rounding rather than to O(dtheta^2).
//!
//! Discrete calculus pairing: the area uses the forward-difference form
//!   area = 1/2 * sum_k (h_k^2 - ((h_{k+1}-h_k)/dtheta)^2) * dtheta
//! and the curvature function uses the central second difference
//!   f_k = h_k + (h_{k+1} - 2 h_k + h_{k-1}) / dtheta^2.
//! Summation by parts then gives  1/2 * sum_k f_k h_k dtheta == area  exactly,
//! and the mixed-volume form 1/2 * sum f_K h_G dtheta is exactly symmetric.

use crate::error::{GeomError, Result};
use crate::geom::{perp_ccw, Vec2};
use std::f64::consts::TAU;

/// Discrete convexity slack, relative to max h: f_k >= -CONVEXITY_REL_TOL * h_max.
pub const CONVEXITY_REL_TOL: f64 = 1e-9;

/// Smallest admissible grid size.
pub const MIN_GRID_N: usize = 8;

/// Default grid resolution for rendering analytic bodies onto a grid.
pub const DEFAULT_GRID_N: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct SupportGrid {
    n: usize,
    dtheta: f64,
    h: Vec<f64>,
}

impl SupportGrid {
    /// Build a grid from support samples, validating the representation
    /// invariants: n a power of two (>= 8), every h_k finite and positive,
    /// and discrete convexity within the documented slack.
    pub fn new(h: Vec<f64>) -> Result<SupportGrid> {
        let n = h.len();
        if n < MIN_GRID_N || !n.is_power_of_two() {
            return Err(GeomError::invalid_shape(
                "h",
                format!("length {n} must be a power of two, at least {MIN_GRID_N}"),
            ));
        }
        let mut h_max: f64 = 0.0;
        for (k, &v) in h.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(GeomError::invalid_shape(
                    "h",
                    format!("h[{k}] = {v} must be finite and positive"),
                ));
            }
            h_max = h_max.max(v);
        }
        let dtheta = TAU / n as f64;
        let eps = CONVEXITY_REL_TOL * h_max;
        for k in 0..n {
            let prev = h[(k + n - 1) % n];
            let next = h[(k + 1) % n];
            let f = h[k] + (next - 2.0 * h[k] + prev) / (dtheta * dtheta);
            if f < -eps {
                return Err(GeomError::invalid_shape(
                    "h",
                    format!(
                        "discrete convexity violated at index {k}: h + h'' = {f:.3e} < -{eps:.3e}"
                    ),
                ));
            }
        }
        Ok(SupportGrid { n, dtheta, h })
    }

    /// Sample a support function at the grid angles and validate.
    pub fn from_fn(n: usize, support: impl Fn(f64) -> f64) -> Result<SupportGrid> {
        let dtheta = TAU / n as f64;
        let h = (0..n).map(|k| support(k as f64 * dtheta)).collect();
        SupportGrid::new(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    pub fn values(&self) -> &[f64] {
        &self.h
    }

    pub fn theta(&self, k: usize) -> f64 {
        (k % self.n) as f64 * self.dtheta
    }

    /// Unit vector at grid angle k.
    pub fn unit(&self, k: usize) -> Vec2 {
        let (s, c) = self.theta(k).sin_cos();
        Vec2::new(c, s)
    }

    pub fn h_max(&self) -> f64 {
        self.h.iter().cloned().fold(0.0, f64::max)
    }

    pub fn h_min(&self) -> f64 {
        self.h.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Vertex of the support-line body between constraints k and k+1: the
    /// solution of <x, u_k> = h_k, <x, u_{k+1}> = h_{k+1}.
    pub fn line_vertex(&self, k: usize) -> Vec2 {
        let u1 = self.unit(k);
        let u2 = self.unit(k + 1);
        let h1 = self.h[k % self.n];
        let h2 = self.h[(k + 1) % self.n];
        let det = u1.cross(u2);
        Vec2::new(
            (u2.y * h1 - u1.y * h2) / det,
            (u1.x * h2 - u2.x * h1) / det,
        )
    }

    /// Support at an arbitrary angle. Exact (bitwise) at grid knots; between
    /// knots it evaluates the support-line body via the wedge vertex, so the
    /// result is itself a support function and resampling preserves the
    /// convexity invariant.
    pub fn support_at(&self, theta: f64) -> f64 {
        let t = theta.rem_euclid(TAU) / self.dtheta;
        let k = (t.floor() as usize) % self.n;
        let frac = t - t.floor();
        const SNAP: f64 = 1e-9;
        if frac < SNAP {
            return self.h[k];
        }
        if frac > 1.0 - SNAP {
            return self.h[(k + 1) % self.n];
        }
        let (s, c) = theta.sin_cos();
        self.line_vertex(k).dot(Vec2::new(c, s))
    }

    /// Radial function of the support-line body: rho(u) = min over half-space
    /// constraints met going outward, min_{<u_k,u> > 0} h_k / <u_k, u>.
    /// Exact duality with `gauge` by construction.
    pub fn radial(&self, u: Vec2) -> f64 {
        debug_assert!((u.norm() - 1.0).abs() < 1e-9, "radial expects a unit vector");
        let mut rho = f64::INFINITY;
        for k in 0..self.n {
            let d = self.unit(k).dot(u);
            if d > 1e-12 {
                rho = rho.min(self.h[k] / d);
            }
        }
        rho
    }

    /// Minkowski gauge of the support-line body: max_k <p, u_k> / h_k.
    pub fn gauge(&self, p: Vec2) -> f64 {
        let mut g: f64 = 0.0;
        for k in 0..self.n {
            g = g.max(p.dot(self.unit(k)) / self.h[k]);
        }
        g
    }

    /// Curvature function f = h + h'' at grid index k (central differences).
    pub fn curvature(&self, k: usize) -> f64 {
        let n = self.n;
        let k = k % n;
        let prev = self.h[(k + n - 1) % n];
        let next = self.h[(k + 1) % n];
        self.h[k] + (next - 2.0 * self.h[k] + prev) / (self.dtheta * self.dtheta)
    }

    /// Curvature function at an arbitrary angle, linear between knots.
    pub fn curvature_at(&self, theta: f64) -> f64 {
        let t = theta.rem_euclid(TAU) / self.dtheta;
        let k = t.floor() as usize % self.n;
        let frac = t - t.floor();
        let a = self.curvature(k);
        let b = self.curvature(k + 1);
        a + (b - a) * frac
    }

    /// Enclosed area in the forward-difference form paired with `curvature`.
    pub fn area(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for k in 0..n {
            let d = (self.h[(k + 1) % n] - self.h[k]) / self.dtheta;
            acc += self.h[k] * self.h[k] - d * d;
        }
        0.5 * acc * self.dtheta
    }

    /// Boundary point at grid angle k: x = h u + h' u_dot with u_dot the
    /// counterclockwise tangent (the parametrization derivative of u).
    pub fn boundary_point(&self, k: usize) -> Vec2 {
        let n = self.n;
        let k = k % n;
        let dh = (self.h[(k + 1) % n] - self.h[(k + n - 1) % n]) / (2.0 * self.dtheta);
        let u = self.unit(k);
        u * self.h[k] + perp_ccw(u) * dh
    }

    pub fn boundary_points(&self) -> Vec<Vec2> {
        (0..self.n).map(|k| self.boundary_point(k)).collect()
    }

    /// Discrete Steiner point (1/pi) sum h_k u_k dtheta: translating by its
    /// negation zeroes the first Fourier bin of h exactly. The discrete
    /// area form is indefinite with positive weight on bins 0 and +-1, so
    /// Steiner-centered grids are the ones whose discrete mixed volumes
    /// obey the Minkowski inequality up to rounding alone.
    pub fn steiner_point(&self) -> Vec2 {
        let mut acc = Vec2::ZERO;
        for k in 0..self.n {
            acc = acc + self.unit(k) * self.h[k];
        }
        acc * (self.dtheta / std::f64::consts::PI)
    }

    /// Polar grid: h*(u) = 1 / rho(u), sampled at the same angles. Requires
    /// the origin in the interior (h_min > 0 guarantees it).
    pub fn polar(&self) -> Result<SupportGrid> {
        let h: Vec<f64> = (0..self.n).map(|k| 1.0 / self.radial(self.unit(k))).collect();
        SupportGrid::new(h)
    }

    /// Reflection through the origin: h_{-K}(u) = h_K(-u), an exact shift by
    /// n/2 indices.
    pub fn reflected(&self) -> SupportGrid {
        let n = self.n;
        let h = (0..n).map(|k| self.h[(k + n / 2) % n]).collect();
        SupportGrid {
            n,
            dtheta: self.dtheta,
            h,
        }
    }

    /// Clockwise quarter rotation of the body, an exact shift by n/4 indices:
    /// h_{RK}(u(t)) = h_K(u(t + pi/2)).
    pub fn rotated_quarter_cw(&self) -> SupportGrid {
        let n = self.n;
        let h = (0..n).map(|k| self.h[(k + n / 4) % n]).collect();
        SupportGrid {
            n,
            dtheta: self.dtheta,
            h,
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<SupportGrid> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(GeomError::domain(format!(
                "scale factor {lambda} must be finite and positive"
            )));
        }
        SupportGrid::new(self.h.iter().map(|&v| v * lambda).collect())
    }

    /// Translate the body by v: h_{K+v}(u) = h_K(u) + <v, u>. Fails when the
    /// translation pulls the origin out of the body (some h_k <= 0).
    pub fn translated(&self, v: Vec2) -> Result<SupportGrid> {
        let h = (0..self.n).map(|k| self.h[k] + v.dot(self.unit(k))).collect();
        SupportGrid::new(h)
    }

    /// Minkowski sum of two grids with matching resolution: supports add.
    pub fn add(&self, other: &SupportGrid) -> Result<SupportGrid> {
        if self.n != other.n {
            return Err(GeomError::domain(format!(
                "grid sizes differ: {} vs {}",
                self.n, other.n
            )));
        }
        let h = (0..self.n).map(|k| self.h[k] + other.h[k]).collect();
        SupportGrid::new(h)
    }

    /// Resample to m angles (m a power of two). Exact at shared knots; the
    /// support-line-body evaluation elsewhere, which keeps the samples a
    /// genuine support function.
    pub fn resampled(&self, m: usize) -> Result<SupportGrid> {
        if m == self.n {
            return Ok(self.clone());
        }
        let dt = TAU / m as f64;
        let h = (0..m).map(|j| self.support_at(j as f64 * dt)).collect();
        SupportGrid::new(h)
    }
}
