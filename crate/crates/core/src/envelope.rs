//! Envelopes of one-parameter line families, solved directly.
//!
//! A family `{x | <x, a(s)> = c(s)}` has its envelope where both the line
//! equation and its `s`-derivative vanish, i.e. where
//! `[a; a'] x = (c, c')`. Solving that 2x2 system per sample gives an
//! independent route to every closed-form primitivoid.

use std::fmt;

use crate::curve::CurveDef;
use crate::error::Result;
use crate::geom::{invert, perp, Line, Vec2};
use crate::mapped::{Flag, MappedCurve, TransformKind};
use crate::tol;

/// Line coefficients and their parameter derivatives at one `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyJet {
    pub a: Vec2,
    pub c: f64,
    pub da: Vec2,
    pub dc: f64,
}

impl FamilyJet {
    pub fn line(&self) -> Result<Line> {
        Line::new(self.a, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyKind {
    /// `<x - γ, γ> = 0`
    Primitive,
    /// `<x - rγ, γ> = 0`
    Parallel(f64),
    /// `<x - γ, N> = 0`, `N = cos φ γ + sin φ Jγ`
    Slant(f64),
    /// `<x, γ> = 1`
    Antipedal,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Primitive => f.write_str("primitive"),
            FamilyKind::Parallel(r) => write!(f, "parallel({r})"),
            FamilyKind::Slant(phi) => write!(f, "slant({phi})"),
            FamilyKind::Antipedal => f.write_str("antipedal"),
        }
    }
}

type JetFn = dyn Fn(f64) -> Result<FamilyJet> + Send + Sync;

/// A one-parameter family of lines over a curve's parameter interval.
pub struct LineFamily {
    pub source: CurveDef,
    pub label: String,
    jet: Box<JetFn>,
}

impl fmt::Debug for LineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LineFamily")
            .field("source", &self.source.name())
            .field("label", &self.label)
            .finish()
    }
}

impl LineFamily {
    /// A family from an explicit jet function; `source` supplies the
    /// parameter interval and grid.
    pub fn from_fn(
        source: CurveDef,
        label: impl Into<String>,
        jet: impl Fn(f64) -> Result<FamilyJet> + Send + Sync + 'static,
    ) -> Self {
        LineFamily {
            source,
            label: label.into(),
            jet: Box::new(jet),
        }
    }

    pub fn jet(&self, s: f64) -> Result<FamilyJet> {
        (self.jet)(s)
    }

    pub fn line(&self, s: f64) -> Result<Line> {
        self.jet(s)?.line()
    }
}

/// The defining line family of a primitivoid or anti-pedal of `curve`.
/// Derivatives come from the curve's symbolic jets.
pub fn make_family(kind: FamilyKind, curve: &CurveDef) -> Result<LineFamily> {
    curve.ensure_avoids_origin()?;
    let c = curve.clone();
    let jet = move |s: f64| -> Result<FamilyJet> {
        let j = c.jet(s)?;
        let (g, dg) = (j.p, j.d1);
        if g.norm() < tol::ORIGIN_GUARD {
            return Err(crate::Error::OriginSingularity { norm: g.norm() });
        }
        let g2 = g.norm_squared();
        let dg2 = 2.0 * g.dot(dg);
        Ok(match kind {
            FamilyKind::Primitive => FamilyJet { a: g, c: g2, da: dg, dc: dg2 },
            FamilyKind::Parallel(r) => FamilyJet { a: g, c: r * g2, da: dg, dc: r * dg2 },
            FamilyKind::Slant(phi) => {
                let (sn, cs) = phi.sin_cos();
                FamilyJet {
                    a: g * cs + perp(g) * sn,
                    c: cs * g2,
                    da: dg * cs + perp(dg) * sn,
                    dc: cs * dg2,
                }
            }
            FamilyKind::Antipedal => FamilyJet { a: g, c: 1.0, da: dg, dc: 0.0 },
        })
    };
    Ok(LineFamily::from_fn(curve.clone(), kind.to_string(), jet))
}

/// Solve `[a; a'] x = (c, c')` by elimination with partial pivoting.
/// `None` when the determinant is below `1e-10 |a| |a'|`.
pub fn envelope_point(j: &FamilyJet) -> Option<Vec2> {
    let det = j.a.cross(j.da);
    let guard = tol::ENVELOPE_DET_REL * j.a.norm() * j.da.norm();
    if !(det.abs() >= guard) || det == 0.0 {
        return None;
    }
    // rows (a0, a1 | r)
    let mut r1 = (j.a.x, j.a.y, j.c);
    let mut r2 = (j.da.x, j.da.y, j.dc);
    if r2.0.abs() > r1.0.abs() {
        std::mem::swap(&mut r1, &mut r2);
    }
    let m = r2.0 / r1.0;
    let u = r2.1 - m * r1.1;
    let v = r2.2 - m * r1.2;
    let y = v / u;
    let x = (r1.2 - r1.1 * y) / r1.0;
    let p = Vec2::new(x, y);
    p.is_finite().then_some(p)
}

/// Whether the determinant `[a; a']` is below the envelope guard.
pub fn is_degenerate(j: &FamilyJet) -> bool {
    let det = j.a.cross(j.da);
    !(det.abs() >= tol::ENVELOPE_DET_REL * j.a.norm() * j.da.norm())
}

/// Envelope of `fam` at each grid parameter.
pub fn envelope(fam: &LineFamily, grid: &[f64]) -> Result<MappedCurve> {
    let mut points = Vec::with_capacity(grid.len());
    let mut flags = Vec::with_capacity(grid.len());
    for &s in grid {
        match envelope_point(&fam.jet(s)?) {
            Some(p) => {
                points.push(p);
                flags.push(Flag::Ok);
            }
            None => {
                points.push(Vec2::new(f64::NAN, f64::NAN));
                flags.push(Flag::Undefined);
            }
        }
    }
    Ok(MappedCurve::new(
        fam.source.clone(),
        vec![TransformKind::Envelope {
            family: fam.label.clone(),
        }],
        grid.to_vec(),
        points,
        flags,
    ))
}

/// Residuals of the circle-family picture of the pedal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleFamilyResidual {
    /// `max |G(s, Pe(s))|` with `G(s, x) = |x - γ/2|² - |γ|²/4`.
    pub pedal_on_circle: f64,
    /// `max |<Ψ(x), γ> - 1|` over points `x` of each circle.
    pub inverted_circle_on_line: f64,
}

impl CircleFamilyResidual {
    pub fn max(&self) -> f64 {
        self.pedal_on_circle.max(self.inverted_circle_on_line)
    }
}

/// Check that the pedal lies on the circles with diameter `[0, γ(s)]`, and
/// that inversion sends each such circle onto the line `<x, γ(s)> = 1`.
pub fn circle_family_check(curve: &CurveDef, grid: &[f64]) -> Result<CircleFamilyResidual> {
    curve.ensure_avoids_origin()?;
    let mut res = CircleFamilyResidual {
        pedal_on_circle: 0.0,
        inverted_circle_on_line: 0.0,
    };
    for &s in grid {
        let g = curve.position(s)?;
        let n = curve.frenet(s)?.n_hat;
        let pe = n * g.dot(n);
        let center = g * 0.5;
        let r = 0.5 * g.norm();
        let gval = (pe - center).norm_squared() - 0.25 * g.norm_squared();
        res.pedal_on_circle = res.pedal_on_circle.max(gval.abs());
        // sample the circle away from the origin, which maps to infinity
        let base = (-center).normalized().unwrap_or(Vec2::new(1.0, 0.0));
        for k in 1..8 {
            let ang = std::f64::consts::TAU * k as f64 / 8.0;
            let x = center + base.rotate(ang) * r;
            let y = invert(x)?;
            let resid = (y.dot(g) - 1.0).abs();
            res.inverted_circle_on_line = res.inverted_circle_on_line.max(resid);
        }
    }
    Ok(res)
}
