//! Planar vectors and unit directions shared by every module.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` lies
    /// counterclockwise of `self`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction. Must not be called on a zero
    /// vector; callers that may hold one check `norm` first.
    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        debug_assert!(n > 0.0, "normalizing a zero vector");
        Vec2::new(self.x / n, self.y / n)
    }

    /// Polar angle in [0, 2*pi).
    pub fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, rhs: Vec2) {
        self.x -= rhs.x;
        self.y -= rhs.y;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

/// Clockwise quarter turn. This is the one place that fixes the orientation
/// of `perp`: perp((cos t, sin t)) = (sin t, -cos t) = (cos(t - pi/2), sin(t - pi/2)).
pub fn perp_cw(v: Vec2) -> Vec2 {
    Vec2::new(v.y, -v.x)
}

/// Counterclockwise quarter turn, the derivative of t -> (cos t, sin t).
/// Used only where a parametrization derivative is meant, not as the
/// perp operator.
pub fn perp_ccw(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// Normalize an angle into [0, 2*pi).
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can return TAU when theta is a tiny negative number.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A unit direction, kept as both its angle and its unit vector so callers
/// never re-derive one from the other inconsistently.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    theta: f64,
    u: Vec2,
}

impl Direction {
    /// Direction at polar angle `theta` (any finite value; stored wrapped
    /// into [0, 2*pi)).
    pub fn from_angle(theta: f64) -> Direction {
        let t = wrap_angle(theta);
        let (s, c) = t.sin_cos();
        Direction {
            theta: t,
            u: Vec2::new(c, s),
        }
    }

    /// Direction of a nonzero vector.
    pub fn from_vector(v: Vec2) -> Direction {
        assert!(v.norm() > 0.0, "direction of a zero vector");
        let t = v.angle();
        Direction {
            theta: t,
            u: v.normalized(),
        }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    /// The unit vector (cos theta, sin theta).
    pub fn unit(self) -> Vec2 {
        self.u
    }

    /// Clockwise perpendicular direction, angle theta - pi/2.
    pub fn perp(self) -> Direction {
        Direction::from_angle(self.theta - std::f64::consts::FRAC_PI_2)
    }

    pub fn opposite(self) -> Direction {
        Direction {
            theta: wrap_angle(self.theta + std::f64::consts::PI),
            u: -self.u,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn perp_is_clockwise() {
        let v = Vec2::new(0.0, 1.0);
        let p = perp_cw(v);
        assert_abs_diff_eq!(p.x, 1.0);
        assert_abs_diff_eq!(p.y, 0.0);
        // perp of e1 points down
        let q = perp_cw(Vec2::new(1.0, 0.0));
        assert_abs_diff_eq!(q.x, 0.0);
        assert_abs_diff_eq!(q.y, -1.0);
    }

    #[test]
    fn perp_matches_angle_shift() {
        for k in 0..16 {
            let t = k as f64 * PI / 8.0;
            let d = Direction::from_angle(t);
            let p = d.perp();
            assert_abs_diff_eq!(p.unit().x, perp_cw(d.unit()).x, epsilon = 1e-15);
            assert_abs_diff_eq!(p.unit().y, perp_cw(d.unit()).y, epsilon = 1e-15);
            assert_abs_diff_eq!(p.theta(), wrap_angle(t - FRAC_PI_2), epsilon = 1e-12);
        }
    }

    #[test]
    fn cross_orientation() {
        let e1 = Vec2::new(1.0, 0.0);
        let e2 = Vec2::new(0.0, 1.0);
        assert!(e1.cross(e2) > 0.0);
        assert!(e2.cross(e1) < 0.0);
    }

    #[test]
    fn angle_wraps_into_period() {
        assert_abs_diff_eq!(wrap_angle(-FRAC_PI_2), 3.0 * FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(wrap_angle(TAU + 0.25), 0.25, epsilon = 1e-15);
        assert_eq!(wrap_angle(-1e-300), 0.0);
    }

    #[test]
    fn direction_unit_is_unit() {
        for k in 0..32 {
            let d = Direction::from_angle(k as f64 * 0.7);
            assert_abs_diff_eq!(d.unit().norm(), 1.0, epsilon = 1e-15);
        }
    }
}
