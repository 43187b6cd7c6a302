//! Plane vectors and the handful of exact maps everything else is built on.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::tol;

/// A point or vector in the Euclidean plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector at angle `theta` from the x axis.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2::new(c, s)
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// The 2x2 determinant `[self; other]`, i.e. `<self, -J other>`.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    /// `self / |self|`, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self / n)
    }

    /// Quarter turn counterclockwise.
    #[inline]
    pub fn perp(self) -> Vec2 {
        perp(self)
    }

    #[inline]
    pub fn rotate(self, phi: f64) -> Vec2 {
        rotate(self, phi)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, rhs: Vec2) {
        self.x -= rhs.x;
        self.y -= rhs.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// The rotation `J = [[0, -1], [1, 0]]`.
#[inline]
pub fn perp(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// `R(phi) v`, counterclockwise by `phi` radians.
#[inline]
pub fn rotate(v: Vec2, phi: f64) -> Vec2 {
    let (s, c) = phi.sin_cos();
    Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y)
}

/// Inversion in the unit circle, `x / |x|^2`.
pub fn invert(x: Vec2) -> Result<Vec2> {
    let n2 = x.norm_squared();
    let norm = n2.sqrt();
    if !(norm >= tol::ORIGIN_GUARD) {
        return Err(Error::OriginSingularity { norm });
    }
    Ok(x / n2)
}

/// The line `{x | <x, a> = c}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub a: Vec2,
    pub c: f64,
}

impl Line {
    pub fn new(a: Vec2, c: f64) -> Result<Self> {
        if a == Vec2::ZERO || !a.is_finite() || !c.is_finite() {
            return Err(Error::range("line normal must be finite and nonzero"));
        }
        Ok(Line { a, c })
    }

    /// Signed residual `<x, a> - c`.
    pub fn eval(&self, x: Vec2) -> f64 {
        x.dot(self.a) - self.c
    }

    /// Representative with `|a| = 1` and `c >= 0`; when `c = 0` the first
    /// nonzero component of `a` is positive.
    pub fn canonical(&self) -> Line {
        let n = self.a.norm();
        let (mut a, mut c) = (self.a / n, self.c / n);
        let flip = if c != 0.0 {
            c < 0.0
        } else if a.x != 0.0 {
            a.x < 0.0
        } else {
            a.y < 0.0
        };
        if flip {
            a = -a;
            c = -c;
        }
        Line { a, c: c + 0.0 }
    }

    /// Whether two lines are the same point set, up to `tol` on the
    /// canonical coefficients.
    pub fn approx_eq(&self, other: &Line, tol: f64) -> bool {
        let (p, q) = (self.canonical(), other.canonical());
        (p.a - q.a).norm() <= tol && (p.c - q.c).abs() <= tol
    }

    /// Endpoints of the chord cut by an axis-aligned box, if any.
    pub fn clip(&self, min: Vec2, max: Vec2) -> Option<(Vec2, Vec2)> {
        let base = self.a * (self.c / self.a.norm_squared());
        let dir = perp(self.a);
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (o, d, a, b) in [(base.x, dir.x, min.x, max.x), (base.y, dir.y, min.y, max.y)] {
            if d == 0.0 {
                if o < a || o > b {
                    return None;
                }
            } else {
                let (t0, t1) = ((a - o) / d, (b - o) / d);
                lo = lo.max(t0.min(t1));
                hi = hi.min(t0.max(t1));
            }
        }
        (lo < hi).then(|| (base + dir * lo, base + dir * hi))
    }
}
