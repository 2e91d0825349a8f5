//! Convex polygon primitives: area, clipping, intersection, Minkowski sums,
//! hulls. Rings are counterclockwise vertex lists without a repeated closing
//! vertex.

use crate::geom::{perp_cw, Vec2};

/// Consecutive vertices closer than this (relative to the ring's scale) are
/// merged during cleanup.
pub const DEDUP_REL_TOL: f64 = 1e-12;

/// Signed area by the shoelace formula; positive for counterclockwise rings.
pub fn signed_area(pts: &[Vec2]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..pts.len() {
        let j = (i + 1) % pts.len();
        acc += pts[i].cross(pts[j]);
    }
    0.5 * acc
}

/// Area centroid of a simple polygon. Falls back to the vertex mean when the
/// area is numerically zero.
pub fn centroid(pts: &[Vec2]) -> Vec2 {
    let a = signed_area(pts);
    if a.abs() < 1e-300 || pts.len() < 3 {
        let mut m = Vec2::ZERO;
        for &p in pts {
            m += p;
        }
        return m * (1.0 / pts.len().max(1) as f64);
    }
    let mut c = Vec2::ZERO;
    for i in 0..pts.len() {
        let j = (i + 1) % pts.len();
        let w = pts[i].cross(pts[j]);
        c += (pts[i] + pts[j]) * w;
    }
    c * (1.0 / (6.0 * a))
}

/// Largest coordinate magnitude in the ring; the scale used for relative
/// tolerances.
pub fn coord_scale(pts: &[Vec2]) -> f64 {
    let mut s: f64 = 0.0;
    for p in pts {
        s = s.max(p.x.abs()).max(p.y.abs());
    }
    if s == 0.0 {
        1.0
    } else {
        s
    }
}

/// Remove consecutive duplicate vertices (including the wrap-around pair).
pub fn dedup_ring(pts: &[Vec2]) -> Vec<Vec2> {
    if pts.is_empty() {
        return Vec::new();
    }
    let tol = DEDUP_REL_TOL * coord_scale(pts);
    let mut out: Vec<Vec2> = Vec::with_capacity(pts.len());
    for &p in pts {
        if out.last().map_or(true, |&q| p.distance(q) > tol) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].distance(*out.last().unwrap()) <= tol {
        out.pop();
    }
    out
}

/// True when every consecutive edge pair turns strictly left.
pub fn is_strictly_convex_ccw(pts: &[Vec2]) -> bool {
    if pts.len() < 3 {
        return false;
    }
    let n = pts.len();
    for i in 0..n {
        let e1 = pts[(i + 1) % n] - pts[i];
        let e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
        if e1.cross(e2) <= 0.0 {
            return false;
        }
    }
    true
}

/// Axis-aligned bounding box as (min corner, max corner).
pub fn bbox(pts: &[Vec2]) -> (Vec2, Vec2) {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Support value of the box {lo..hi} in direction `n`.
fn bbox_support(lo: Vec2, hi: Vec2, n: Vec2) -> f64 {
    let x = if n.x >= 0.0 { hi.x } else { lo.x };
    let y = if n.y >= 0.0 { hi.y } else { lo.y };
    n.x * x + n.y * y
}

/// Sutherland-Hodgman pass keeping the side {p : <p, n> <= c}. Points on the
/// line are kept, so clipping a ring by its own edge is exact.
pub fn clip_halfplane(subject: &[Vec2], n: Vec2, c: f64) -> Vec<Vec2> {
    let len = subject.len();
    if len == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(len + 4);
    let mut prev = subject[len - 1];
    let mut d_prev = prev.dot(n) - c;
    for &cur in subject {
        let d_cur = cur.dot(n) - c;
        if d_cur <= 0.0 {
            if d_prev > 0.0 {
                let t = d_prev / (d_prev - d_cur);
                out.push(prev + (cur - prev) * t);
            }
            out.push(cur);
        } else if d_prev <= 0.0 {
            let t = d_prev / (d_prev - d_cur);
            out.push(prev + (cur - prev) * t);
        }
        prev = cur;
        d_prev = d_cur;
    }
    out
}

/// Intersection of two convex counterclockwise rings. Returns an empty vector
/// for an empty (or degenerate) intersection.
///
/// The smaller ring is clipped against the larger one's edges; a bounding-box
/// support test skips edges that cannot cut, which keeps the common
/// mostly-contained case cheap.
pub fn intersect_convex(a: &[Vec2], b: &[Vec2]) -> Vec<Vec2> {
    if a.len() < 3 || b.len() < 3 {
        return Vec::new();
    }
    let (alo, ahi) = bbox(a);
    let (blo, bhi) = bbox(b);
    // Disjoint boxes cannot intersect.
    if alo.x > bhi.x || blo.x > ahi.x || alo.y > bhi.y || blo.y > ahi.y {
        return Vec::new();
    }
    let a_extent = (ahi - alo).norm_sq();
    let b_extent = (bhi - blo).norm_sq();
    let (subject, clip) = if a_extent <= b_extent { (a, b) } else { (b, a) };

    let mut poly = subject.to_vec();
    let (mut lo, mut hi) = bbox(&poly);
    let m = clip.len();
    for i in 0..m {
        if poly.len() < 3 {
            return Vec::new();
        }
        let p = clip[i];
        let q = clip[(i + 1) % m];
        let n = perp_cw(q - p);
        let c = p.dot(n);
        // If the subject's box lies inside this half-plane the edge cannot cut.
        if bbox_support(lo, hi, n) <= c {
            continue;
        }
        poly = clip_halfplane(&poly, n, c);
        if poly.len() < 3 {
            return Vec::new();
        }
        let bb = bbox(&poly);
        lo = bb.0;
        hi = bb.1;
    }
    poly
}

/// Index of the lowest vertex, ties broken toward the smallest x. The edge
/// leaving it has a nonnegative y-component, so its polar angle lies in
/// [0, pi] exactly.
fn lowest_index(pts: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, p) in pts.iter().enumerate() {
        let b = pts[best];
        if p.y < b.y || (p.y == b.y && p.x < b.x) {
            best = i;
        }
    }
    best
}

/// Unwrapped edge angles of a strictly convex counterclockwise ring, starting
/// from the lowest vertex. Monotone increasing, first value in [0, pi].
fn unwrapped_edge_angles(pts: &[Vec2], start: usize) -> Vec<f64> {
    let n = pts.len();
    let edge = |k: usize| pts[(start + k + 1) % n] - pts[(start + k) % n];
    let mut angles = Vec::with_capacity(n);
    let e0 = edge(0);
    let mut a = e0.y.atan2(e0.x);
    angles.push(a);
    let mut prev = e0;
    for k in 1..n {
        let e = edge(k);
        // Exterior turn in (0, pi) for a strictly convex ring.
        let turn = prev.cross(e).atan2(prev.dot(e));
        a += turn.max(0.0);
        angles.push(a);
        prev = e;
    }
    angles
}

/// Minkowski sum of two strictly convex counterclockwise rings by the edge
/// merge: output edges are the union of input edges sorted by angle, parallel
/// edges combined.
pub fn minkowski_sum_convex(a: &[Vec2], b: &[Vec2]) -> Vec<Vec2> {
    assert!(a.len() >= 3 && b.len() >= 3, "minkowski sum needs full rings");
    const PARALLEL_TOL: f64 = 1e-12;
    let ia = lowest_index(a);
    let ib = lowest_index(b);
    let n = a.len();
    let m = b.len();
    let ang_a = unwrapped_edge_angles(a, ia);
    let ang_b = unwrapped_edge_angles(b, ib);
    let edge_a = |k: usize| a[(ia + k + 1) % n] - a[(ia + k) % n];
    let edge_b = |k: usize| b[(ib + k + 1) % m] - b[(ib + k) % m];

    let mut out = Vec::with_capacity(n + m);
    let mut cur = a[ia] + b[ib];
    let (mut i, mut j) = (0usize, 0usize);
    while i < n || j < m {
        out.push(cur);
        let step = if i >= n {
            let e = edge_b(j);
            j += 1;
            e
        } else if j >= m {
            let e = edge_a(i);
            i += 1;
            e
        } else if (ang_a[i] - ang_b[j]).abs() <= PARALLEL_TOL {
            let e = edge_a(i) + edge_b(j);
            i += 1;
            j += 1;
            e
        } else if ang_a[i] < ang_b[j] {
            let e = edge_a(i);
            i += 1;
            e
        } else {
            let e = edge_b(j);
            j += 1;
            e
        };
        cur += step;
    }
    dedup_ring(&out)
}

/// Convex hull by Andrew's monotone chain; collinear points are dropped so
/// the result is strictly convex. Returns fewer than 3 points for degenerate
/// input.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|p, q| p.x.partial_cmp(&q.x).unwrap().then(p.y.partial_cmp(&q.y).unwrap()));
    pts.dedup_by(|p, q| p.x == q.x && p.y == q.y);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let chain = |iter: &mut dyn Iterator<Item = Vec2>| -> Vec<Vec2> {
        let mut out: Vec<Vec2> = Vec::new();
        for p in iter {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if (b - a).cross(p - b) <= 0.0 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        out
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True when `p` lies in the closed polygon, with slack `tol` in support
/// units.
pub fn contains(pts: &[Vec2], p: Vec2, tol: f64) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let nrm = perp_cw(b - a);
        if (p - a).dot(nrm) > tol * nrm.norm().max(1e-300) {
            return false;
        }
    }
    true
}

/// max_i <v_i, u>: the support function of the vertex set.
pub fn support_of_vertices(pts: &[Vec2], u: Vec2) -> f64 {
    let mut h = f64::NEG_INFINITY;
    for p in pts {
        h = h.max(p.dot(u));
    }
    h
}

/// Total boundary length of the ring.
pub fn perimeter(pts: &[Vec2]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += pts[i].distance(pts[(i + 1) % n]);
    }
    acc
}
