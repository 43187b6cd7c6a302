//! Inflections, vertices and cusps of primitives.
//!
//! The primitive `Pr_γ` is singular exactly where
//! `κ|γ|² + 2<γ, n> = 0`, which is also where the osculating circle of γ
//! passes through the origin. Such a point is an ordinary cusp of the
//! primitive when additionally `κ' ≠ 0`.

use std::fmt;

use crate::curve::CurveDef;
use crate::error::{Error, Result};
use crate::frame::{median, resolved_samples};
use crate::geom::Vec2;
use crate::mapped::{bbox_diagonal, sig12, MappedCurve};
use crate::roots::{find_roots, find_roots_periodic};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OsculatingCircle {
    pub center: Vec2,
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    Inflection,
    Vertex,
    PrimitiveCuspCandidate,
}

impl SingularityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularityKind::Inflection => "inflection",
            SingularityKind::Vertex => "vertex",
            SingularityKind::PrimitiveCuspCandidate => "primitive-cusp-candidate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspClass {
    OrdinaryCusp,
    Degenerate,
    NotSingular,
}

impl CuspClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CuspClass::OrdinaryCusp => "ordinary-cusp",
            CuspClass::Degenerate => "degenerate",
            CuspClass::NotSingular => "not-singular",
        }
    }
}

/// Outcome of the cusp test at one parameter, with the quantities it used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspClassification {
    pub class: CuspClass,
    /// `κ|γ|² + 2<γ, n>`
    pub criterion: f64,
    pub kappa_prime_arc: f64,
    /// `| |x₀| - radius |` for the osculating circle centre `x₀`; zero when
    /// the circle passes through the origin. `None` at inflections.
    pub origin_witness: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularityReport {
    pub kind: SingularityKind,
    pub t: f64,
    /// `|f(t)|` of the defining function at the refined root.
    pub residual: f64,
    pub classification: Option<CuspClass>,
}

impl fmt::Display for SingularityReport {
    /// `kind\tt\tresidual\tclassification`, 12 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = self.classification.map_or("-", CuspClass::as_str);
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.kind.as_str(),
            sig12(self.t),
            sig12(self.residual),
            class
        )
    }
}

/// `κ|γ|² + 2<γ, n>` at `t`; zero exactly where the primitive is singular.
pub fn cusp_criterion(curve: &CurveDef, t: f64) -> Result<f64> {
    let p = curve.position(t)?;
    let f = curve.frenet(t)?;
    Ok(f.kappa * p.norm_squared() + 2.0 * p.dot(f.n_hat))
}

pub fn osculating_circle(curve: &CurveDef, t: f64) -> Result<OsculatingCircle> {
    let f = curve.frenet(t)?;
    if !(f.kappa.abs() >= tol::INFLECTION_GUARD) {
        return Err(Error::InflectionPoint { t, kappa: f.kappa });
    }
    let p = curve.position(t)?;
    Ok(OsculatingCircle {
        center: p + f.n_hat / f.kappa,
        radius: 1.0 / f.kappa.abs(),
    })
}

/// Roots of a curve function over the curve's own sample grid, wrapping
/// around for closed curves. Evaluation failures break brackets.
pub fn scan_curve(curve: &CurveDef, f: impl Fn(f64) -> Result<f64>) -> Vec<f64> {
    let g = |t: f64| f(t).unwrap_or(f64::NAN);
    let grid = curve.sample_grid();
    if curve.closed() {
        find_roots_periodic(g, &grid, curve.span())
    } else {
        find_roots(g, &grid)
    }
}

fn reports(
    curve: &CurveDef,
    kind: SingularityKind,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<Vec<SingularityReport>> {
    scan_curve(curve, &f)
        .into_iter()
        .map(|t| {
            Ok(SingularityReport {
                kind,
                t,
                residual: f(t)?.abs(),
                classification: None,
            })
        })
        .collect()
}

/// Parameters where κ changes sign.
pub fn inflections(curve: &CurveDef) -> Result<Vec<SingularityReport>> {
    reports(curve, SingularityKind::Inflection, |t| Ok(curve.frenet(t)?.kappa))
}

/// Parameters where `dκ/ds` changes sign.
pub fn vertices(curve: &CurveDef) -> Result<Vec<SingularityReport>> {
    reports(curve, SingularityKind::Vertex, |t| {
        Ok(curve.frenet(t)?.kappa_prime_arc)
    })
}

/// Singular parameters of the primitive, each classified.
pub fn primitive_singularities(curve: &CurveDef) -> Result<Vec<SingularityReport>> {
    curve.ensure_avoids_origin()?;
    let mut out = reports(curve, SingularityKind::PrimitiveCuspCandidate, |t| {
        cusp_criterion(curve, t)
    })?;
    for r in out.iter_mut() {
        r.classification = Some(classify_cusp(curve, r.t)?.class);
    }
    Ok(out)
}

/// Ordinary cusp iff the criterion vanishes (to 1e-8) and `|κ'| > 1e-6`;
/// degenerate if the criterion vanishes with `κ'`; not singular otherwise.
pub fn classify_cusp(curve: &CurveDef, t0: f64) -> Result<CuspClassification> {
    let p = curve.position(t0)?;
    let f = curve.frenet(t0)?;
    let guard = tol::DENOMINATOR_REL * curve_diameter(curve)?;
    let support = p.dot(f.n_hat);
    if !(support.abs() >= guard) {
        return Err(Error::HypothesisViolated(format!(
            "<γ, n> = {support:e} at t = {t0}: tangent line passes through the origin"
        )));
    }
    let criterion = f.kappa * p.norm_squared() + 2.0 * support;
    let origin_witness = osculating_circle(curve, t0)
        .ok()
        .map(|c| (c.center.norm() - c.radius).abs());
    let class = if criterion.abs() > tol::CUSP_CRITERION {
        CuspClass::NotSingular
    } else if f.kappa_prime_arc.abs() > tol::CUSP_KAPPA_PRIME {
        CuspClass::OrdinaryCusp
    } else {
        CuspClass::Degenerate
    };
    Ok(CuspClassification {
        class,
        criterion,
        kappa_prime_arc: f.kappa_prime_arc,
        origin_witness,
    })
}

/// Bounding-box diagonal of the sampled curve.
pub fn curve_diameter(curve: &CurveDef) -> Result<f64> {
    let pts = curve
        .sample_grid()
        .into_iter()
        .map(|t| curve.position(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(bbox_diagonal(pts.into_iter()))
}

/// Model-free cusp detector for sampled curves.
///
/// Looks for local minima of the central-difference speed whose
/// extrapolated minimum falls below `1e-3 · median` speed, and where the
/// secant direction reverses across the sample. Returns interpolated
/// parameters of the detected cusps.
pub fn detect_cusps_numeric(mc: &MappedCurve) -> Vec<f64> {
    let n = mc.len();
    let h = mc.step();
    let periodic = mc.periodic();
    let idx = |i: isize| -> Option<usize> {
        if periodic {
            Some(i.rem_euclid(n as isize) as usize)
        } else if i < 0 || i >= n as isize {
            None
        } else {
            Some(i as usize)
        }
    };
    let point = |i: isize| -> Option<Vec2> {
        let j = idx(i)?;
        mc.flags[j].is_ok().then(|| mc.points[j])
    };
    let speed: Vec<Option<f64>> = (0..n as isize)
        .map(|i| Some((point(i + 1)? - point(i - 1)?).norm() / (2.0 * h)))
        .collect();
    let mut all: Vec<f64> = speed.iter().flatten().copied().collect();
    let threshold = tol::CUSP_VELOCITY_REL * median(&mut all);

    let mut found = Vec::new();
    for i in 0..n as isize {
        let sp = |k: isize| idx(i + k).and_then(|j| speed[j]);
        let (Some(prev), Some(here), Some(next)) = (sp(-1), sp(0), sp(1)) else {
            continue;
        };
        if !(here <= prev && here < next) {
            continue;
        }
        // a V-shaped speed profile |t - t0| extrapolates to zero at the cusp
        let floor = here - 0.5 * (prev - next).abs();
        if floor >= threshold {
            continue;
        }
        let (Some(a), Some(b), Some(c)) = (point(i - 2), point(i), point(i + 2)) else {
            continue;
        };
        if (b - a).dot(c - b) >= 0.0 {
            continue;
        }
        let shift = (h * (prev - next) / (prev + next)).clamp(-0.5 * h, 0.5 * h);
        let mut t = mc.grid[i as usize] + shift;
        if periodic {
            let (lo, span) = (mc.source.t_min(), mc.source.span());
            t = lo + (t - lo).rem_euclid(span);
        }
        found.push(t);
    }
    found
}

/// Mask of samples more than `margin` grid steps from every cusp found by
/// [`detect_cusps_numeric`]: the regular parts of a derived curve.
pub fn away_from_cusps(mc: &MappedCurve, margin: usize) -> Vec<bool> {
    let n = mc.len();
    let h = mc.step();
    let span = h * n as f64;
    let cusps = detect_cusps_numeric(mc);
    mc.grid
        .iter()
        .map(|&t| {
            cusps.iter().all(|&c| {
                let mut d = (t - c).abs();
                if mc.periodic() {
                    d = d.min(span - d);
                }
                d > margin as f64 * h
            })
        })
        .collect()
}

/// The regular parts of a derived curve for checks at `accuracy`: more
/// than four grid steps from every detected cusp and resolved by the grid
/// (see [`resolved_samples`]).
pub fn regular_parts(mc: &MappedCurve, accuracy: f64) -> Vec<bool> {
    away_from_cusps(mc, 4)
        .into_iter()
        .zip(resolved_samples(mc, accuracy))
        .map(|(a, b)| a && b)
        .collect()
}
