//! Convex bodies in four representations and the functional calculus on
//! them: support, gauge, radial, polar, curvature, Minkowski sums, boundary
//! sampling, and the equal-area polygonization used by the clipping pipeline.

use crate::error::{GeomError, Result};
use crate::geom::{perp_ccw, perp_cw, wrap_angle, Direction, Vec2};
use crate::grid::{SupportGrid, DEFAULT_GRID_N};
use crate::polygon;
use std::f64::consts::{PI, TAU};

/// Bodies with area below this are rejected as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Default direction count for direction-sweep quantities (diameter,
/// symmetry checks, Hausdorff distance).
pub const DEFAULT_DIRS: usize = 1024;

/// A compact convex body in the plane with nonempty interior.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    /// Disk of the given radius centered at the origin.
    Disk { radius: f64 },
    /// Ellipse with semi-axes a >= b > 0, rotated by `rotation` and then
    /// translated by `center`.
    Ellipse {
        a: f64,
        b: f64,
        center: Vec2,
        rotation: f64,
    },
    /// Strictly convex polygon, counterclockwise vertices.
    Polygon { vertices: Vec<Vec2> },
    /// Support-function samples; see [`SupportGrid`].
    Grid(SupportGrid),
}

/// One boundary sample: arc-length position, the point, the inward unit
/// normal, and the curvature (infinite at polygon vertices).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BoundaryPoint {
    /// Arc length from the sampling start point.
    pub s: f64,
    pub point: Vec2,
    /// Inward unit normal.
    pub nu: Vec2,
    /// Curvature of the boundary at the point; `f64::INFINITY` at corners.
    pub kappa: f64,
}

impl ConvexBody {
    pub fn disk(radius: f64) -> Result<ConvexBody> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeomError::invalid_shape(
                "radius",
                format!("{radius} must be finite and positive"),
            ));
        }
        Ok(ConvexBody::Disk { radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<ConvexBody> {
        ConvexBody::ellipse_at(a, b, Vec2::ZERO, 0.0)
    }

    pub fn ellipse_at(a: f64, b: f64, center: Vec2, rotation: f64) -> Result<ConvexBody> {
        if !(a.is_finite() && a > 0.0) {
            return Err(GeomError::invalid_shape("a", format!("{a} must be finite and positive")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(GeomError::invalid_shape("b", format!("{b} must be finite and positive")));
        }
        if !center.is_finite() {
            return Err(GeomError::invalid_shape("center", "coordinates must be finite"));
        }
        if !rotation.is_finite() {
            return Err(GeomError::invalid_shape("rotation", "must be finite"));
        }
        Ok(ConvexBody::Ellipse {
            a,
            b,
            center,
            rotation,
        })
    }

    /// Strictly convex counterclockwise polygon. Consecutive duplicates are
    /// merged; anything else that violates the invariant is an error.
    pub fn polygon(vertices: Vec<Vec2>) -> Result<ConvexBody> {
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(GeomError::invalid_shape(
                    "vertices",
                    format!("vertex {i} has a non-finite coordinate"),
                ));
            }
        }
        let vs = polygon::dedup_ring(&vertices);
        if vs.len() < 3 {
            return Err(GeomError::invalid_shape(
                "vertices",
                "need at least 3 distinct vertices",
            ));
        }
        if !polygon::is_strictly_convex_ccw(&vs) {
            return Err(GeomError::invalid_shape(
                "vertices",
                "must be strictly convex in counterclockwise order \
                 (all consecutive cross products positive)",
            ));
        }
        if polygon::signed_area(&vs) < DEGENERATE_AREA {
            return Err(GeomError::invalid_shape("vertices", "polygon area is degenerate"));
        }
        Ok(ConvexBody::Polygon { vertices: vs })
    }

    pub fn grid(g: SupportGrid) -> ConvexBody {
        ConvexBody::Grid(g)
    }

    /// Axis-aligned square [-s, s]^2.
    pub fn square(s: f64) -> Result<ConvexBody> {
        ConvexBody::polygon(vec![
            Vec2::new(-s, -s),
            Vec2::new(s, -s),
            Vec2::new(s, s),
            Vec2::new(-s, s),
        ])
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConvexBody::Disk { .. } => "disk",
            ConvexBody::Ellipse { .. } => "ellipse",
            ConvexBody::Polygon { .. } => "polygon",
            ConvexBody::Grid(_) => "support_grid",
        }
    }

    /// Ellipse frame axes (e1 toward the a semi-axis, e2 = ccw perp).
    fn ellipse_axes(rotation: f64) -> (Vec2, Vec2) {
        let (s, c) = rotation.sin_cos();
        let e1 = Vec2::new(c, s);
        (e1, perp_ccw(e1))
    }

    pub fn area(&self) -> f64 {
        match self {
            ConvexBody::Disk { radius } => PI * radius * radius,
            ConvexBody::Ellipse { a, b, .. } => PI * a * b,
            ConvexBody::Polygon { vertices } => polygon::signed_area(vertices),
            ConvexBody::Grid(g) => g.area(),
        }
    }

    pub fn centroid(&self) -> Vec2 {
        match self {
            ConvexBody::Disk { .. } => Vec2::ZERO,
            ConvexBody::Ellipse { center, .. } => *center,
            ConvexBody::Polygon { vertices } => polygon::centroid(vertices),
            ConvexBody::Grid(g) => polygon::centroid(&g.boundary_points()),
        }
    }

    /// Support function h(u) = max over the body of <x, u>, u a unit vector.
    pub fn support_u(&self, u: Vec2) -> f64 {
        match self {
            ConvexBody::Disk { radius } => *radius,
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let h0 = ((a * u.dot(e1)).powi(2) + (b * u.dot(e2)).powi(2)).sqrt();
                center.dot(u) + h0
            }
            ConvexBody::Polygon { vertices } => polygon::support_of_vertices(vertices, u),
            ConvexBody::Grid(g) => g.support_at(u.angle()),
        }
    }

    pub fn support(&self, dir: Direction) -> f64 {
        match self {
            // Grids evaluate by angle so knots stay exact.
            ConvexBody::Grid(g) => g.support_at(dir.theta()),
            _ => self.support_u(dir.unit()),
        }
    }

    /// Minkowski gauge ||p||_K = inf { t > 0 : p in tK }, anchored at the
    /// origin. Requires the origin in the interior.
    pub fn gauge(&self, p: Vec2) -> Result<f64> {
        self.require_origin_interior("gauge")?;
        Ok(match self {
            ConvexBody::Disk { radius } => p.norm() / radius,
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let w = Vec2::new(p.dot(e1) / a, p.dot(e2) / b);
                let z = Vec2::new(center.dot(e1) / a, center.dot(e2) / b);
                let one_mz = 1.0 - z.norm_sq();
                let wz = w.dot(z);
                // Positive root of g^2 (1 - |z|^2) + 2 g <w,z> - |w|^2 = 0.
                let disc = wz * wz + one_mz * w.norm_sq();
                if w.norm_sq() == 0.0 {
                    0.0
                } else {
                    (-wz + disc.sqrt()) / one_mz
                }
            }
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                let mut g: f64 = 0.0;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let nrm = perp_cw(b - a);
                    let d = a.dot(nrm);
                    g = g.max(p.dot(nrm) / d);
                }
                g
            }
            ConvexBody::Grid(g) => g.gauge(p),
        })
    }

    /// Radial function rho(u) = sup { t > 0 : t u in K }, u a unit vector.
    /// Requires the origin in the interior.
    pub fn radial_u(&self, u: Vec2) -> Result<f64> {
        self.require_origin_interior("radial")?;
        Ok(match self {
            ConvexBody::Disk { radius } => *radius,
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let w = Vec2::new(u.dot(e1) / a, u.dot(e2) / b);
                let z = Vec2::new(center.dot(e1) / a, center.dot(e2) / b);
                // ||t w - z|| = 1, positive root.
                let wz = w.dot(z);
                let disc = wz * wz - w.norm_sq() * (z.norm_sq() - 1.0);
                (wz + disc.sqrt()) / w.norm_sq()
            }
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                let mut rho = f64::INFINITY;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let nrm = perp_cw(b - a);
                    let d = nrm.dot(u);
                    if d > 1e-15 {
                        rho = rho.min(a.dot(nrm) / d);
                    }
                }
                rho
            }
            ConvexBody::Grid(g) => g.radial(u),
        })
    }

    pub fn radial(&self, dir: Direction) -> Result<f64> {
        self.radial_u(dir.unit())
    }

    /// Curvature function f = h + h'' evaluated at the outer-normal
    /// direction u; equals the curvature radius of the boundary point whose
    /// outward normal is u. Polygons have no curvature function.
    pub fn curvature_function_u(&self, u: Vec2) -> Result<f64> {
        match self {
            ConvexBody::Disk { radius } => Ok(*radius),
            ConvexBody::Ellipse { a, b, rotation, .. } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let h0 = ((a * u.dot(e1)).powi(2) + (b * u.dot(e2)).powi(2)).sqrt();
                Ok(a * a * b * b / (h0 * h0 * h0))
            }
            ConvexBody::Polygon { .. } => Err(GeomError::curvature_undefined("curvature_function")),
            ConvexBody::Grid(g) => Ok(g.curvature_at(u.angle())),
        }
    }

    pub fn curvature_function(&self, dir: Direction) -> Result<f64> {
        match self {
            ConvexBody::Grid(g) => Ok(g.curvature_at(dir.theta())),
            _ => self.curvature_function_u(dir.unit()),
        }
    }

    /// True when the origin lies strictly inside the body.
    pub fn origin_interior(&self) -> bool {
        match self {
            ConvexBody::Disk { .. } => true,
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let z = Vec2::new(center.dot(e1) / a, center.dot(e2) / b);
                z.norm_sq() < 1.0
            }
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    a.dot(perp_cw(b - a)) > 0.0
                })
            }
            // Grid validation already enforces h_k > 0.
            ConvexBody::Grid(_) => true,
        }
    }

    pub(crate) fn require_origin_interior(&self, what: &str) -> Result<()> {
        if self.origin_interior() {
            Ok(())
        } else {
            Err(GeomError::origin_not_interior(what))
        }
    }

    /// Polar body K* = { y : <x, y> <= 1 for all x in K }. Requires the
    /// origin in the interior.
    pub fn polar(&self) -> Result<ConvexBody> {
        self.require_origin_interior("polar")?;
        match self {
            ConvexBody::Disk { radius } => ConvexBody::disk(1.0 / radius),
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let scale = a.max(*b);
                if center.norm() <= 1e-14 * scale {
                    // Polarity commutes with rotation; centered ellipses map
                    // to centered ellipses with reciprocal axes.
                    ConvexBody::ellipse_at(1.0 / a, 1.0 / b, Vec2::ZERO, *rotation)
                } else {
                    let g = self.to_support_grid(DEFAULT_GRID_N)?;
                    Ok(ConvexBody::Grid(g.polar()?))
                }
            }
            ConvexBody::Polygon { vertices } => {
                // Edge {x : <x, n_i> = d_i} maps to the vertex n_i / d_i.
                let n = vertices.len();
                let dual: Vec<Vec2> = (0..n)
                    .map(|i| {
                        let a = vertices[i];
                        let b = vertices[(i + 1) % n];
                        let nrm = perp_cw(b - a);
                        let d = a.dot(nrm);
                        nrm * (1.0 / d)
                    })
                    .collect();
                ConvexBody::polygon(dual)
            }
            ConvexBody::Grid(g) => Ok(ConvexBody::Grid(g.polar()?)),
        }
    }

    /// Reflection through the origin, -K.
    pub fn reflected(&self) -> ConvexBody {
        match self {
            ConvexBody::Disk { radius } => ConvexBody::Disk { radius: *radius },
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => ConvexBody::Ellipse {
                a: *a,
                b: *b,
                center: -*center,
                rotation: *rotation,
            },
            ConvexBody::Polygon { vertices } => {
                let mut v: Vec<Vec2> = vertices.iter().map(|&p| -p).collect();
                v.reverse();
                ConvexBody::Polygon { vertices: v }
            }
            ConvexBody::Grid(g) => ConvexBody::Grid(g.reflected()),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<ConvexBody> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(GeomError::domain(format!(
                "scale factor {lambda} must be finite and positive"
            )));
        }
        Ok(match self {
            ConvexBody::Disk { radius } => ConvexBody::Disk {
                radius: radius * lambda,
            },
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => ConvexBody::Ellipse {
                a: a * lambda,
                b: b * lambda,
                center: *center * lambda,
                rotation: *rotation,
            },
            ConvexBody::Polygon { vertices } => ConvexBody::Polygon {
                vertices: vertices.iter().map(|&p| p * lambda).collect(),
            },
            ConvexBody::Grid(g) => ConvexBody::Grid(g.scaled(lambda)?),
        })
    }

    /// Translate the body by v. Disks become centered ellipses because the
    /// disk representation is pinned to the origin.
    pub fn translated(&self, v: Vec2) -> Result<ConvexBody> {
        if !v.is_finite() {
            return Err(GeomError::domain("translation must be finite"));
        }
        Ok(match self {
            ConvexBody::Disk { radius } => ConvexBody::Ellipse {
                a: *radius,
                b: *radius,
                center: v,
                rotation: 0.0,
            },
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => ConvexBody::Ellipse {
                a: *a,
                b: *b,
                center: *center + v,
                rotation: *rotation,
            },
            ConvexBody::Polygon { vertices } => ConvexBody::Polygon {
                vertices: vertices.iter().map(|&p| p + v).collect(),
            },
            ConvexBody::Grid(g) => ConvexBody::Grid(g.translated(v)?),
        })
    }

    /// Rotate the body about the origin.
    pub fn rotated(&self, angle: f64) -> Result<ConvexBody> {
        if !angle.is_finite() {
            return Err(GeomError::domain("rotation angle must be finite"));
        }
        Ok(match self {
            ConvexBody::Disk { radius } => ConvexBody::Disk { radius: *radius },
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => ConvexBody::Ellipse {
                a: *a,
                b: *b,
                center: center.rotated(angle),
                rotation: rotation + angle,
            },
            ConvexBody::Polygon { vertices } => ConvexBody::Polygon {
                vertices: vertices.iter().map(|p| p.rotated(angle)).collect(),
            },
            ConvexBody::Grid(g) => {
                // Quarter turns are exact index shifts.
                let quarter = angle / std::f64::consts::FRAC_PI_2;
                let q = quarter.round();
                if (quarter - q).abs() < 1e-12 {
                    let mut out = g.clone();
                    let steps = (q.rem_euclid(4.0)) as usize % 4;
                    // Clockwise quarter = shift +n/4; counterclockwise is
                    // three clockwise quarters.
                    let cw_steps = (4 - steps) % 4;
                    for _ in 0..cw_steps {
                        out = out.rotated_quarter_cw();
                    }
                    ConvexBody::Grid(out)
                } else {
                    let src = g.clone();
                    ConvexBody::Grid(SupportGrid::from_fn(g.n(), |t| {
                        src.support_at(t - angle)
                    })?)
                }
            }
        })
    }

    /// Clockwise quarter turn, (.)^perp composed with polarity gives the
    /// rotated-polar body used by the inequality chain. Exact for grids.
    pub fn rotated_quarter_cw(&self) -> ConvexBody {
        match self {
            ConvexBody::Grid(g) => ConvexBody::Grid(g.rotated_quarter_cw()),
            other => other
                .rotated(-std::f64::consts::FRAC_PI_2)
                .expect("finite quarter angle"),
        }
    }

    /// Image under an invertible linear map m (row-major).
    pub fn transform(&self, m: [[f64; 2]; 2]) -> Result<ConvexBody> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !det.is_finite() || det == 0.0 {
            return Err(GeomError::domain(format!(
                "transform matrix must be invertible (det = {det})"
            )));
        }
        let map = |p: Vec2| {
            Vec2::new(
                m[0][0] * p.x + m[0][1] * p.y,
                m[1][0] * p.x + m[1][1] * p.y,
            )
        };
        match self {
            ConvexBody::Disk { radius } => {
                ellipse_from_generator(map(Vec2::new(*radius, 0.0)), map(Vec2::new(0.0, *radius)), Vec2::ZERO)
            }
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                ellipse_from_generator(map(e1 * *a), map(e2 * *b), map(*center))
            }
            ConvexBody::Polygon { vertices } => {
                let mut v: Vec<Vec2> = vertices.iter().map(|&p| map(p)).collect();
                if det < 0.0 {
                    v.reverse();
                }
                ConvexBody::polygon(v)
            }
            ConvexBody::Grid(g) => {
                // h_{AK}(u) = |A^T u| h_K(A^T u / |A^T u|).
                let src = g.clone();
                let mt = move |u: Vec2| Vec2::new(m[0][0] * u.x + m[1][0] * u.y, m[0][1] * u.x + m[1][1] * u.y);
                Ok(ConvexBody::Grid(SupportGrid::from_fn(g.n(), move |t| {
                    let (s, c) = t.sin_cos();
                    let v = mt(Vec2::new(c, s));
                    let n = v.norm();
                    n * src.support_at(v.angle())
                })?))
            }
        }
    }

    /// Minkowski sum. Closed under the representation where exact (disks,
    /// polygons, homothetic aligned ellipses, equal-size grids); other
    /// combinations are rendered onto a support grid, where supports add.
    pub fn minkowski_sum(&self, other: &ConvexBody) -> Result<ConvexBody> {
        use ConvexBody::*;
        match (self, other) {
            (Disk { radius: r1 }, Disk { radius: r2 }) => ConvexBody::disk(r1 + r2),
            (Polygon { vertices: va }, Polygon { vertices: vb }) => {
                ConvexBody::polygon(polygon::minkowski_sum_convex(va, vb))
            }
            (
                Ellipse {
                    a: a1,
                    b: b1,
                    center: c1,
                    rotation: r1,
                },
                Ellipse {
                    a: a2,
                    b: b2,
                    center: c2,
                    rotation: r2,
                },
            ) if {
                let dr = wrap_angle(r1 - r2);
                let aligned = dr.min((dr - PI).abs()).min((dr - TAU).abs()) < 1e-12;
                aligned && (a1 * b2 - a2 * b1).abs() <= 1e-12 * (a1 * b2).abs().max(1.0)
            } =>
            {
                ConvexBody::ellipse_at(a1 + a2, b1 + b2, *c1 + *c2, *r1)
            }
            (Disk { radius }, Ellipse { a, b, center, rotation })
            | (Ellipse { a, b, center, rotation }, Disk { radius })
                if (a - b).abs() <= 1e-12 * a =>
            {
                ConvexBody::ellipse_at(a + radius, b + radius, *center, *rotation)
            }
            (x, y) => {
                let n = match (x, y) {
                    (Grid(gx), Grid(gy)) => gx.n().max(gy.n()),
                    (Grid(gx), _) => gx.n(),
                    (_, Grid(gy)) => gy.n(),
                    _ => DEFAULT_GRID_N,
                };
                let gx = x.to_support_grid(n)?;
                let gy = y.to_support_grid(n)?;
                Ok(Grid(gx.add(&gy)?))
            }
        }
    }

    /// Smoothing: Minkowski sum with a disk of the given radius, rendered on
    /// a support grid of n angles. The result always has a curvature
    /// function bounded below by `radius`.
    pub fn smoothed(&self, radius: f64, n: usize) -> Result<ConvexBody> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeomError::domain(format!(
                "smoothing radius {radius} must be finite and positive"
            )));
        }
        let g = self.to_support_grid(n)?;
        let h = g.values().iter().map(|&v| v + radius).collect();
        Ok(ConvexBody::Grid(SupportGrid::new(h)?))
    }

    /// Sample the support function onto a grid of n angles.
    pub fn to_support_grid(&self, n: usize) -> Result<SupportGrid> {
        match self {
            ConvexBody::Grid(g) => g.resampled(n),
            _ => SupportGrid::from_fn(n, |t| {
                let (s, c) = t.sin_cos();
                self.support_u(Vec2::new(c, s))
            }),
        }
    }

    /// Largest distance between two points of the body, via the width sweep
    /// max_u (h(u) + h(-u)). Exact for disks, ellipses, and grid knots.
    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Disk { radius } => 2.0 * radius,
            ConvexBody::Ellipse { a, b, .. } => 2.0 * a.max(*b),
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                let mut d2: f64 = 0.0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        d2 = d2.max((vertices[i] - vertices[j]).norm_sq());
                    }
                }
                d2.sqrt()
            }
            ConvexBody::Grid(g) => {
                let n = g.n();
                let h = g.values();
                (0..n / 2)
                    .map(|k| h[k] + h[k + n / 2])
                    .fold(0.0, f64::max)
            }
        }
    }

    /// True when K = -K within `tol` relative to the body scale.
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        match self {
            ConvexBody::Disk { .. } => true,
            ConvexBody::Ellipse { a, center, .. } => center.norm() <= tol * a,
            ConvexBody::Polygon { vertices } => {
                let n = vertices.len();
                if n % 2 != 0 {
                    return false;
                }
                let scale = polygon::coord_scale(vertices);
                (0..n).all(|i| {
                    (vertices[i] + vertices[(i + n / 2) % n]).norm() <= tol * scale
                })
            }
            ConvexBody::Grid(g) => {
                let n = g.n();
                let h = g.values();
                let scale = g.h_max();
                (0..n / 2).all(|k| (h[k] - h[k + n / 2]).abs() <= tol * scale)
            }
        }
    }

    /// Closed membership test with absolute slack `tol`.
    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        match self {
            ConvexBody::Disk { radius } => p.norm() <= radius + tol,
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let q = Vec2::new((p - *center).dot(e1) / a, (p - *center).dot(e2) / b);
                // Scale the slack into frame units by the smaller semi-axis.
                q.norm() <= 1.0 + tol / a.min(*b)
            }
            ConvexBody::Polygon { vertices } => polygon::contains(vertices, p, tol),
            ConvexBody::Grid(g) => {
                (0..g.n()).all(|k| p.dot(g.unit(k)) <= g.values()[k] + tol)
            }
        }
    }

    /// Equal-area polygonization for the clipping pipeline: an n-gon whose
    /// area equals the body area exactly, obtained by scaling the inscribed
    /// polygon radially about the center by sqrt(dtheta / sin dtheta).
    /// Polygons return their own vertices; grids are evaluated at their own
    /// resolution when it is below n (upsampling adds no information).
    pub fn clip_polygon(&self, n: usize) -> Vec<Vec2> {
        match self {
            ConvexBody::Disk { radius } => {
                let lambda = equal_area_factor(n);
                let dt = TAU / n as f64;
                (0..n)
                    .map(|k| {
                        let (s, c) = (k as f64 * dt).sin_cos();
                        Vec2::new(c, s) * (radius * lambda)
                    })
                    .collect()
            }
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => {
                let lambda = equal_area_factor(n);
                let (e1, e2) = Self::ellipse_axes(*rotation);
                let dt = TAU / n as f64;
                (0..n)
                    .map(|k| {
                        let (s, c) = (k as f64 * dt).sin_cos();
                        *center + (e1 * (a * c) + e2 * (b * s)) * lambda
                    })
                    .collect()
            }
            ConvexBody::Polygon { vertices } => vertices.clone(),
            ConvexBody::Grid(g) => {
                let eff = n.min(g.n());
                let gg;
                let g = if eff == g.n() {
                    g
                } else {
                    gg = g.resampled(eff).expect("downsampling a valid grid");
                    &gg
                };
                let pts = g.boundary_points();
                let c = {
                    let mut m = Vec2::ZERO;
                    for &p in &pts {
                        m += p;
                    }
                    m * (1.0 / pts.len() as f64)
                };
                let raw = polygon::signed_area(&pts);
                let target = g.area();
                let lambda = if raw > DEGENERATE_AREA && target > 0.0 {
                    (target / raw).sqrt()
                } else {
                    1.0
                };
                pts.iter().map(|&p| c + (p - c) * lambda).collect()
            }
        }
    }

    /// n boundary points uniformly spaced in arc length, starting at the
    /// angle-zero point (disks, ellipses, grids) or at vertex 0 (polygons).
    pub fn boundary_sample(&self, n: usize) -> Result<Vec<BoundaryPoint>> {
        if n < 3 {
            return Err(GeomError::domain(format!(
                "boundary sample count {n} must be at least 3"
            )));
        }
        match self {
            ConvexBody::Disk { radius } => {
                let dt = TAU / n as f64;
                Ok((0..n)
                    .map(|j| {
                        let t = j as f64 * dt;
                        let (s, c) = t.sin_cos();
                        let u = Vec2::new(c, s);
                        BoundaryPoint {
                            s: radius * t,
                            point: u * *radius,
                            nu: -u,
                            kappa: 1.0 / radius,
                        }
                    })
                    .collect())
            }
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => Ok(sample_ellipse(*a, *b, *center, *rotation, n)),
            ConvexBody::Polygon { vertices } => sample_polygon(vertices, n),
            ConvexBody::Grid(g) => Ok(sample_grid(g, n)),
        }
    }
}

/// sqrt(dtheta / sin dtheta): radial factor that makes the inscribed n-gon
/// of a disk have the disk's exact area.
pub fn equal_area_factor(n: usize) -> f64 {
    let dt = TAU / n as f64;
    (dt / dt.sin()).sqrt()
}

/// Ellipse through a generator pair: the image of the unit circle under the
/// matrix with columns g1, g2, translated to `center`. Recovered via the
/// eigendecomposition of G G^T.
fn ellipse_from_generator(g1: Vec2, g2: Vec2, center: Vec2) -> Result<ConvexBody> {
    let p = g1.x * g1.x + g2.x * g2.x;
    let q = g1.x * g1.y + g2.x * g2.y;
    let r = g1.y * g1.y + g2.y * g2.y;
    let tr = p + r;
    let det = p * r - q * q;
    let gap = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let l1 = 0.5 * (tr + gap);
    let l2 = 0.5 * (tr - gap);
    if !(l2 > 0.0) {
        return Err(GeomError::domain("transform collapses the body"));
    }
    let (a, b) = (l1.sqrt(), l2.sqrt());
    let v1 = if q.abs() > 1e-14 * tr {
        Vec2::new(q, l1 - p)
    } else if p >= r {
        Vec2::new(1.0, 0.0)
    } else {
        Vec2::new(0.0, 1.0)
    };
    ConvexBody::ellipse_at(a, b, center, v1.angle())
}

/// Supremum over directions of |h_A - h_B|: the Hausdorff distance between
/// convex bodies.
pub fn hausdorff_distance(a: &ConvexBody, b: &ConvexBody, n_dirs: usize) -> f64 {
    let mut d: f64 = 0.0;
    let dt = TAU / n_dirs as f64;
    for k in 0..n_dirs {
        let t = k as f64 * dt;
        let (s, c) = t.sin_cos();
        let u = Vec2::new(c, s);
        let ha = match a {
            ConvexBody::Grid(g) => g.support_at(t),
            _ => a.support_u(u),
        };
        let hb = match b {
            ConvexBody::Grid(g) => g.support_at(t),
            _ => b.support_u(u),
        };
        d = d.max((ha - hb).abs());
    }
    d
}

fn sample_ellipse(a: f64, b: f64, center: Vec2, rotation: f64, n: usize) -> Vec<BoundaryPoint> {
    let (e1, e2) = {
        let (s, c) = rotation.sin_cos();
        let e1 = Vec2::new(c, s);
        (e1, perp_ccw(e1))
    };
    // Cumulative arc length over the angle parameter, trapezoid rule on a
    // fine grid; inversion by bisection plus linear interpolation.
    let m = 16384usize;
    let dt = TAU / m as f64;
    let speed = |t: f64| {
        let (s, c) = t.sin_cos();
        ((a * s).powi(2) + (b * c).powi(2)).sqrt()
    };
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    let mut prev = speed(0.0);
    let mut acc = 0.0;
    for i in 1..=m {
        let cur = speed(i as f64 * dt);
        acc += 0.5 * (prev + cur) * dt;
        cum.push(acc);
        prev = cur;
    }
    let total = acc;
    let invert = |s_target: f64| -> f64 {
        let mut lo = 0usize;
        let mut hi = m;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cum[mid] <= s_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let seg = cum[hi] - cum[lo];
        let frac = if seg > 0.0 { (s_target - cum[lo]) / seg } else { 0.0 };
        (lo as f64 + frac) * dt
    };
    (0..n)
        .map(|j| {
            let s_j = j as f64 * total / n as f64;
            let t = invert(s_j);
            let (st, ct) = t.sin_cos();
            let point = center + e1 * (a * ct) + e2 * (b * st);
            let outward = (e1 * (ct / a) + e2 * (st / b)).normalized();
            let kappa = a * b / ((a * st).powi(2) + (b * ct).powi(2)).powf(1.5);
            BoundaryPoint {
                s: s_j,
                point,
                nu: -outward,
                kappa,
            }
        })
        .collect()
}

fn sample_polygon(vertices: &[Vec2], n: usize) -> Result<Vec<BoundaryPoint>> {
    let nv = vertices.len();
    let mut cum = Vec::with_capacity(nv + 1);
    cum.push(0.0);
    for i in 0..nv {
        let l = vertices[i].distance(vertices[(i + 1) % nv]);
        cum.push(cum[i] + l);
    }
    let total = cum[nv];
    let vertex_tol = 1e-9 * total;
    let outward = |i: usize| -> Vec2 {
        let e = vertices[(i + 1) % nv] - vertices[i];
        perp_cw(e).normalized()
    };
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let s_j = j as f64 * total / n as f64;
        // Edge index with cum[i] <= s_j < cum[i+1].
        let mut i = match cum.binary_search_by(|c| c.partial_cmp(&s_j).unwrap()) {
            Ok(k) => k,
            Err(k) => k - 1,
        };
        if i >= nv {
            i = nv - 1;
        }
        let ds = s_j - cum[i];
        let at_start = ds <= vertex_tol;
        let at_end = (cum[i + 1] - s_j) <= vertex_tol;
        if at_start || at_end {
            let vi = if at_start { i } else { (i + 1) % nv };
            let n_in = outward((vi + nv - 1) % nv);
            let n_out = outward(vi);
            out.push(BoundaryPoint {
                s: s_j,
                point: vertices[vi],
                nu: -(n_in + n_out).normalized(),
                kappa: f64::INFINITY,
            });
        } else {
            let dir = (vertices[(i + 1) % nv] - vertices[i]).normalized();
            out.push(BoundaryPoint {
                s: s_j,
                point: vertices[i] + dir * ds,
                nu: -outward(i),
                kappa: 0.0,
            });
        }
    }
    Ok(out)
}

fn sample_grid(g: &SupportGrid, n: usize) -> Vec<BoundaryPoint> {
    let m = g.n();
    let pts = g.boundary_points();
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    for k in 0..m {
        cum.push(cum[k] + pts[k].distance(pts[(k + 1) % m]));
    }
    let total = cum[m];
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let s_j = j as f64 * total / n as f64;
        let mut k = match cum.binary_search_by(|c| c.partial_cmp(&s_j).unwrap()) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if k >= m {
            k = m - 1;
        }
        let seg = cum[k + 1] - cum[k];
        let frac = if seg > 0.0 { (s_j - cum[k]) / seg } else { 0.0 };
        let point = pts[k] + (pts[(k + 1) % m] - pts[k]) * frac;
        let theta = (k as f64 + frac) * g.dtheta();
        let (s, c) = theta.sin_cos();
        let u = Vec2::new(c, s);
        let f = g.curvature_at(theta);
        let kappa = if f > 1e-300 { 1.0 / f } else { f64::INFINITY };
        out.push(BoundaryPoint {
            s: s_j,
            point,
            nu: -u,
            kappa,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn rotated_shifted_ellipse() -> ConvexBody {
        ConvexBody::ellipse_at(2.0, 1.0, Vec2::new(0.3, -0.4), 0.7).unwrap()
    }

    #[test]
    fn support_gauge_radial_consistency_ellipse() {
        let e = rotated_shifted_ellipse();
        for k in 0..32 {
            let d = Direction::from_angle(k as f64 * 0.21);
            let rho = e.radial(d).unwrap();
            // The boundary point rho*u has gauge 1.
            let g = e.gauge(d.unit() * rho).unwrap();
            assert_abs_diff_eq!(g, 1.0, epsilon = 1e-12);
            // Support dominates the boundary point in its own direction.
            assert!(e.support(d) >= rho * 1.0 - 1e-12);
        }
    }

    #[test]
    fn support_of_shifted_ellipse_matches_vertex_sweep() {
        let e = rotated_shifted_ellipse();
        let poly = ConvexBody::polygon(e.clip_polygon(4096)).unwrap();
        for k in 0..16 {
            let d = Direction::from_angle(k as f64 * 0.39 + 0.05);
            let h_true = e.support(d);
            let h_poly = poly.support(d);
            assert_abs_diff_eq!(h_true, h_poly, epsilon = 2e-6);
        }
    }

    #[test]
    fn gauge_duality_with_polar_ellipse() {
        // gauge_K(p) = h_{K*}(p) for centered bodies.
        let e = ConvexBody::ellipse_at(2.0, 1.0, Vec2::ZERO, 0.7).unwrap();
        let p = e.polar().unwrap();
        for k in 0..24 {
            let v = Vec2::new(0.3, 0.1).rotated(k as f64 * 0.26) * (1.0 + 0.1 * k as f64);
            let g = e.gauge(v).unwrap();
            let h = p.support_u(v.normalized()) * v.norm();
            assert_abs_diff_eq!(g, h, epsilon = 1e-12);
        }
    }

    #[test]
    fn polar_involution_polygon() {
        let sq = ConvexBody::square(1.0).unwrap();
        let dual = sq.polar().unwrap();
        // [-1,1]^2 polar is the diamond with vertices (+-1, 0), (0, +-1).
        assert_abs_diff_eq!(dual.area(), 2.0, epsilon = 1e-12);
        let back = dual.polar().unwrap();
        assert_abs_diff_eq!(back.area(), 4.0, epsilon = 1e-12);
        for k in 0..16 {
            let d = Direction::from_angle(k as f64 * 0.4);
            assert_abs_diff_eq!(back.support(d), sq.support(d), epsilon = 1e-12);
        }
    }

    #[test]
    fn clip_polygon_area_is_exact() {
        let bodies = [
            ConvexBody::disk(1.0).unwrap(),
            ConvexBody::ellipse(2.0, 1.0).unwrap(),
            rotated_shifted_ellipse(),
        ];
        for body in &bodies {
            for &n in &[64usize, 256, 1024] {
                let p = body.clip_polygon(n);
                assert_abs_diff_eq!(
                    polygon::signed_area(&p),
                    body.area(),
                    epsilon = 1e-12 * body.area()
                );
            }
        }
    }

    #[test]
    fn grid_clip_polygon_matches_disk_clip_polygon() {
        let g = ConvexBody::Grid(SupportGrid::from_fn(1024, |_| 1.0).unwrap());
        let d = ConvexBody::disk(1.0).unwrap();
        let pg = g.clip_polygon(1024);
        let pd = d.clip_polygon(1024);
        for (a, b) in pg.iter().zip(pd.iter()) {
            assert_abs_diff_eq!(a.x, b.x, epsilon = 1e-12);
            assert_abs_diff_eq!(a.y, b.y, epsilon = 1e-12);
        }
        // Requesting more resolution than the grid has caps at the grid size.
        assert_eq!(g.clip_polygon(4096).len(), 1024);
    }

    #[test]
    fn transform_disk_to_ellipse() {
        let d = ConvexBody::disk(1.0).unwrap();
        let e = d.transform([[2.0, 0.0], [0.0, 1.0]]).unwrap();
        match &e {
            ConvexBody::Ellipse { a, b, .. } => {
                assert_abs_diff_eq!(*a, 2.0, epsilon = 1e-12);
                assert_abs_diff_eq!(*b, 1.0, epsilon = 1e-12);
            }
            other => panic!("expected ellipse, got {}", other.kind_name()),
        }
        assert_abs_diff_eq!(e.area(), 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn transform_rotation_keeps_support() {
        let e = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let (s, c) = 0.7f64.sin_cos();
        let r = e.transform([[c, -s], [s, c]]).unwrap();
        let direct = e.rotated(0.7).unwrap();
        for k in 0..32 {
            let d = Direction::from_angle(k as f64 * 0.2);
            assert_abs_diff_eq!(r.support(d), direct.support(d), epsilon = 1e-12);
        }
    }

    #[test]
    fn minkowski_disk_with_reflection_is_scaled_disk() {
        let d = ConvexBody::disk(1.0).unwrap();
        let sum = d.minkowski_sum(&d.reflected()).unwrap();
        let twice = d.scaled(2.0).unwrap();
        assert_abs_diff_eq!(hausdorff_distance(&sum, &twice, 512), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn minkowski_homothetic_ellipses_stay_ellipses() {
        let e1 = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let e2 = ConvexBody::ellipse(4.0, 2.0).unwrap();
        let sum = e1.minkowski_sum(&e2).unwrap();
        match &sum {
            ConvexBody::Ellipse { a, b, .. } => {
                assert_abs_diff_eq!(*a, 6.0, epsilon = 1e-12);
                assert_abs_diff_eq!(*b, 3.0, epsilon = 1e-12);
            }
            other => panic!("expected ellipse, got {}", other.kind_name()),
        }
    }

    #[test]
    fn minkowski_mixed_goes_to_grid_with_additive_support() {
        let e = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let sq = ConvexBody::square(1.0).unwrap();
        let sum = e.minkowski_sum(&sq).unwrap();
        for k in 0..64 {
            let d = Direction::from_angle(k as f64 * TAU / 64.0);
            assert_abs_diff_eq!(
                sum.support(d),
                e.support(d) + sq.support(d),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn smoothed_square_has_positive_curvature() {
        let sq = ConvexBody::square(1.0).unwrap();
        let sm = sq.smoothed(0.1, 1024).unwrap();
        assert!(sq.curvature_function(Direction::from_angle(0.3)).is_err());
        for k in 0..64 {
            let f = sm
                .curvature_function(Direction::from_angle(k as f64 * TAU / 64.0))
                .unwrap();
            assert!(f >= -1e-9);
        }
        assert_abs_diff_eq!(
            sm.area(),
            4.0 + 4.0 * 2.0 * 0.1 + PI * 0.01,
            epsilon = 1e-3
        );
    }

    #[test]
    fn boundary_sample_disk_angles() {
        let d = ConvexBody::disk(1.0).unwrap();
        let bs = d.boundary_sample(4).unwrap();
        let expect = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
        for (b, t) in bs.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(b.point.x, t.cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(b.point.y, t.sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(b.kappa, 1.0);
            assert_abs_diff_eq!(b.nu.dot(b.point), -1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn boundary_sample_ellipse_is_arclength_uniform() {
        let e = rotated_shifted_ellipse();
        let n = 64;
        let bs = e.boundary_sample(n).unwrap();
        let mut gaps = Vec::new();
        for j in 0..n {
            gaps.push(bs[j].point.distance(bs[(j + 1) % n].point));
        }
        let mean: f64 = gaps.iter().sum::<f64>() / n as f64;
        // Equal arcs give chords differing by (kappa * s)^2 / 24 with
        // kappa up to a/b^2 = 2, so allow that second-order spread.
        let tol = (2.0 * mean).powi(2) / 12.0 + 1e-6;
        for g in gaps {
            assert!((g - mean).abs() < tol * mean.max(1.0), "gap {g} vs mean {mean}");
        }
        // Normals point inward.
        for b in &bs {
            assert!(e.contains(b.point + b.nu * 1e-3, 0.0));
        }
    }

    #[test]
    fn boundary_sample_square_hits_corners() {
        let sq = ConvexBody::square(1.0).unwrap();
        let bs = sq.boundary_sample(8).unwrap();
        // Perimeter 8, so every second sample is a corner.
        let corners: Vec<&BoundaryPoint> = bs.iter().filter(|b| b.kappa.is_infinite()).collect();
        assert_eq!(corners.len(), 4);
        // Corner normal bisects the adjacent edges.
        let c = corners
            .iter()
            .find(|b| (b.point - Vec2::new(1.0, -1.0)).norm() < 1e-12)
            .expect("corner (1,-1) sampled");
        let expected = Vec2::new(-1.0, 1.0).normalized();
        assert_abs_diff_eq!(c.nu.x, expected.x, epsilon = 1e-12);
        assert_abs_diff_eq!(c.nu.y, expected.y, epsilon = 1e-12);
        // Edge samples have zero curvature.
        assert!(bs.iter().any(|b| b.kappa == 0.0));
    }

    #[test]
    fn symmetry_checks() {
        assert!(ConvexBody::disk(1.0).unwrap().is_centrally_symmetric(1e-12));
        assert!(ConvexBody::square(1.0).unwrap().is_centrally_symmetric(1e-12));
        assert!(ConvexBody::ellipse(2.0, 1.0).unwrap().is_centrally_symmetric(1e-12));
        let tri = ConvexBody::polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(0.0, 2.0),
        ])
        .unwrap();
        assert!(!tri.is_centrally_symmetric(1e-6));
        assert!(!rotated_shifted_ellipse().is_centrally_symmetric(1e-6));
    }

    #[test]
    fn diameter_values() {
        assert_abs_diff_eq!(ConvexBody::disk(1.5).unwrap().diameter(), 3.0);
        assert_abs_diff_eq!(ConvexBody::ellipse(2.0, 1.0).unwrap().diameter(), 4.0);
        assert_abs_diff_eq!(
            ConvexBody::square(1.0).unwrap().diameter(),
            8.0f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn polygon_constructor_rejects_bad_input() {
        // Clockwise ordering.
        assert!(ConvexBody::polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, -1.0),
        ])
        .is_err());
        // Collinear triple.
        assert!(ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
        ])
        .is_err());
        // Too few distinct points.
        assert!(ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
        ])
        .is_err());
    }

    #[test]
    fn gauge_requires_origin_interior() {
        let far = ConvexBody::ellipse_at(1.0, 1.0, Vec2::new(5.0, 0.0), 0.0).unwrap();
        assert!(matches!(
            far.gauge(Vec2::new(1.0, 0.0)),
            Err(GeomError::OriginNotInterior { .. })
        ));
    }

    #[test]
    fn quarter_rotation_matches_general_rotation() {
        let e = ConvexBody::ellipse(2.0, 1.0).unwrap();
        let q = e.rotated_quarter_cw();
        let r = e.rotated(-FRAC_PI_2).unwrap();
        assert!(hausdorff_distance(&q, &r, 256) < 1e-12);
        let g = e.to_support_grid(64).unwrap();
        let gq = ConvexBody::Grid(g.clone()).rotated_quarter_cw();
        let gr = ConvexBody::Grid(g).rotated(-FRAC_PI_2).unwrap();
        assert!(hausdorff_distance(&gq, &gr, 256) < 1e-12);
    }
}
