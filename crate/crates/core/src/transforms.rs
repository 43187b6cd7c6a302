//! Closed-form pedal/primitive transforms.
//!
//! All formulas are written with the unit tangent `t` and unit normal
//! `n = J t`, so they hold for any regular parametrisation. Transforms with
//! a `<γ, n>` denominator flag samples where it drops below
//! `1e-6 · diameter` as near-singular.
//!
//! Every transform accepts any [`FrameSource`]: a symbolic [`CurveDef`] or
//! the [`MappedCurve`] output of another transform.

use crate::curve::CurveDef;
use crate::error::{Error, Result};
use crate::frame::{FrameSource, Frames};
use crate::geom::{invert, perp, rotate, Vec2};
use crate::mapped::{Flag, MappedCurve, TransformKind};
use crate::tol;

/// `cos φ` below this counts as zero for slant primitivoids.
const DEGENERATE_COS: f64 = 1e-12;

/// A pointwise image value together with its denominator, if any.
struct Image {
    point: Vec2,
    denominator: Option<f64>,
}

fn pointwise(
    frames: Frames,
    kind: TransformKind,
    f: impl Fn(Vec2, Vec2, Vec2) -> Image,
) -> MappedCurve {
    let guard = tol::DENOMINATOR_REL * frames.diameter;
    let mut points = Vec::with_capacity(frames.samples.len());
    let mut flags = Vec::with_capacity(frames.samples.len());
    for s in &frames.samples {
        let Some((t_hat, n_hat)) = s.tangent else {
            points.push(Vec2::new(f64::NAN, f64::NAN));
            flags.push(Flag::Undefined);
            continue;
        };
        let img = f(s.p, t_hat, n_hat);
        let flag = match img.denominator {
            Some(d) if !(d.abs() >= guard) => Flag::NearSingular,
            _ if !img.point.is_finite() => Flag::Undefined,
            _ => Flag::Ok,
        };
        points.push(img.point);
        flags.push(flag);
    }
    let mut provenance = frames.provenance;
    provenance.push(kind);
    MappedCurve::new(frames.source, provenance, frames.grid, points, flags)
}

fn plain(point: Vec2) -> Image {
    Image {
        point,
        denominator: None,
    }
}

/// `2γ - (|γ|² / <γ, n>) n`
fn primitive_point(p: Vec2, n: Vec2) -> Image {
    let d = p.dot(n);
    Image {
        point: 2.0 * p - n * (p.norm_squared() / d),
        denominator: Some(d),
    }
}

/// Pedal `<γ, n> n`: feet of the perpendiculars from the origin to the
/// tangent lines.
pub fn pedal<S: FrameSource + ?Sized>(curve: &S) -> Result<MappedCurve> {
    Ok(pointwise(curve.frames()?, TransformKind::Pedal, |p, _, n| {
        plain(n * p.dot(n))
    }))
}

/// Contrapedal `<γ, t> t`.
pub fn contrapedal<S: FrameSource + ?Sized>(curve: &S) -> Result<MappedCurve> {
    Ok(pointwise(curve.frames()?, TransformKind::Contrapedal, |p, t, _| {
        plain(t * p.dot(t))
    }))
}

/// ψ-pedaloid `<γ, u> u` with `u = cos ψ t + sin ψ n`; ψ = π/2 gives the
/// pedal and ψ = 0 the contrapedal.
pub fn pedaloid<S: FrameSource + ?Sized>(curve: &S, psi: f64) -> Result<MappedCurve> {
    let (s, c) = psi.sin_cos();
    Ok(pointwise(curve.frames()?, TransformKind::Pedaloid { psi }, |p, t, n| {
        let u = t * c + n * s;
        plain(u * p.dot(u))
    }))
}

/// Anti-pedal `n / <γ, n>`.
pub fn antipedal<S: FrameSource + ?Sized>(curve: &S) -> Result<MappedCurve> {
    Ok(pointwise(curve.frames()?, TransformKind::Antipedal, |p, _, n| {
        let d = p.dot(n);
        Image {
            point: n / d,
            denominator: Some(d),
        }
    }))
}

/// Primitive: envelope of the lines through `γ(s)` orthogonal to `γ(s)`.
pub fn primitive<S: FrameSource + ?Sized>(curve: &S) -> Result<MappedCurve> {
    Ok(pointwise(curve.frames()?, TransformKind::Primitive, |p, _, n| {
        primitive_point(p, n)
    }))
}

/// r-parallel primitivoid `r · Pr`.
pub fn parallel_primitivoid<S: FrameSource + ?Sized>(curve: &S, r: f64) -> Result<MappedCurve> {
    if r == 0.0 || !r.is_finite() {
        return Err(Error::range("parallel primitivoid ratio must be finite and nonzero"));
    }
    Ok(pointwise(curve.frames()?, TransformKind::Parallel { r }, |p, _, n| {
        let img = primitive_point(p, n);
        Image {
            point: img.point * r,
            ..img
        }
    }))
}

fn slant_kind(phi: f64) -> (f64, TransformKind) {
    let c = phi.cos();
    let degenerate = c.abs() < DEGENERATE_COS;
    (c, TransformKind::Slant { phi, degenerate })
}

/// φ-slant primitivoid `cos φ · R(φ) · Pr`.
///
/// For `φ = π/2 + kπ` the image collapses to the origin; the returned kind
/// carries `degenerate: true`.
pub fn slant_primitivoid<S: FrameSource + ?Sized>(curve: &S, phi: f64) -> Result<MappedCurve> {
    let (c, kind) = slant_kind(phi);
    Ok(pointwise(curve.frames()?, kind, |p, _, n| {
        let img = primitive_point(p, n);
        Image {
            point: rotate(img.point, phi) * c,
            ..img
        }
    }))
}

/// The same primitivoid assembled as `cos φ (cos φ Pr_γ + sin φ Pr_{Jγ})`.
///
/// Kept as a cross-check of [`slant_primitivoid`].
pub fn slant_primitivoid_direct<S: FrameSource + ?Sized>(
    curve: &S,
    phi: f64,
) -> Result<MappedCurve> {
    let (c, kind) = slant_kind(phi);
    let s = phi.sin();
    Ok(pointwise(curve.frames()?, kind, |p, t, n| {
        let pr = primitive_point(p, n);
        let pr_perp = primitive_of_perp_point(p, t, n);
        Image {
            point: (pr.point * c + pr_perp * s) * c,
            ..pr
        }
    }))
}

/// `Pr_{Jγ} = 2Jγ + (|γ|² / <γ, n>) t`
fn primitive_of_perp_point(p: Vec2, t: Vec2, n: Vec2) -> Vec2 {
    2.0 * perp(p) + t * (p.norm_squared() / p.dot(n))
}

/// Primitive of the quarter-turned curve `Jγ`, from its closed form.
pub fn primitive_of_perp<S: FrameSource + ?Sized>(curve: &S) -> Result<MappedCurve> {
    Ok(pointwise(curve.frames()?, TransformKind::PrimitiveOfPerp, |p, t, n| {
        Image {
            point: primitive_of_perp_point(p, t, n),
            denominator: Some(p.dot(n)),
        }
    }))
}

/// `λ R(φ) γ` as a new symbolic curve.
pub fn transform_curve(curve: &CurveDef, phi: f64, lambda: f64) -> Result<CurveDef> {
    curve.rotated_scaled(phi, lambda)
}

/// Pointwise inversion of a mapped curve; samples within the origin guard
/// become undefined.
pub fn invert_mapped(mc: &MappedCurve) -> MappedCurve {
    let mut out = mc.map_points(TransformKind::Inversion, |p| {
        invert(p).unwrap_or(Vec2::new(f64::NAN, f64::NAN))
    });
    for (p, f) in out.points.iter().zip(out.flags.iter_mut()) {
        if !p.is_finite() && *f == Flag::Ok {
            *f = Flag::Undefined;
        }
    }
    out
}

/// The source curve itself, sampled on its grid.
pub fn sampled(curve: &CurveDef) -> Result<MappedCurve> {
    let grid = curve.sample_grid();
    let points = grid
        .iter()
        .map(|&t| curve.position(t))
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    Ok(MappedCurve::new(
        curve.clone(),
        vec![TransformKind::Source],
        grid,
        points,
        vec![Flag::Ok; n],
    ))
}

/// Curvature of the inversion image `Ψ∘γ` at `t`: `-κ|γ|² - 2<γ, n>`.
pub fn inversion_curvature(curve: &CurveDef, t: f64) -> Result<f64> {
    let p = curve.position(t)?;
    if p.norm() < tol::ORIGIN_GUARD {
        return Err(Error::OriginSingularity { norm: p.norm() });
    }
    let f = curve.frenet(t)?;
    Ok(-f.kappa * p.norm_squared() - 2.0 * p.dot(f.n_hat))
}

/// Arc-length derivative (along γ) of [`inversion_curvature`]: `-κ' |γ|²`.
pub fn inversion_curvature_derivative(curve: &CurveDef, t: f64) -> Result<f64> {
    let p = curve.position(t)?;
    if p.norm() < tol::ORIGIN_GUARD {
        return Err(Error::OriginSingularity { norm: p.norm() });
    }
    let f = curve.frenet(t)?;
    Ok(-f.kappa_prime_arc * p.norm_squared())
}

/// Whether `cos φ` vanishes, collapsing the slant primitivoid.
pub fn is_degenerate_angle(phi: f64) -> bool {
    phi.cos().abs() < DEGENERATE_COS
}
