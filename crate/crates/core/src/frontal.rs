//! Fronts, their Legendrian lifts, and frontal pedals and primitivoids.
//!
//! A frontal carries a unit normal field `ν` with `<γ', ν> = 0` even where
//! `γ' = 0`. [`lift_front`] builds `ν` for a symbolic curve with finitely
//! many singular parameters: `ν = -J(γ'/|γ'|)` on the first regular piece,
//! continued across each singular point, flipping sign where the tangent
//! direction reverses.
//!
//! Frontal transforms act on [`SampledFrontal`]s, which carry position,
//! velocity, `ν` and `ν'` per sample. The primitivoids compute all four
//! exactly (their normal is `γ/|γ|`, suitably rotated), so they can be
//! composed without finite differences.

use std::fmt::Write as _;

use crate::curve::{CurveDef, CurveJet};
use crate::error::{Error, Result};
use crate::frame::median;
use crate::geom::{invert, perp, rotate, Vec2};
use crate::mapped::{bbox_diagonal, sig17, Flag, MappedCurve, TransformKind};
use crate::tol;

/// Refined speed below this fraction of the median speed marks a genuine
/// singular parameter rather than a slow regular point.
const SINGULAR_SPEED_REL: f64 = 1e-6;

/// `cos φ` below this counts as zero.
const DEGENERATE_COS: f64 = 1e-12;

/// A singular parameter of the lift and whether `ν` changes sign across
/// it relative to `-J(γ'/|γ'|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularPoint {
    pub t: f64,
    pub flips: bool,
}

/// A curve together with a continuous unit normal field.
#[derive(Clone, Debug)]
pub struct LegendrianCurve {
    gamma: CurveDef,
    singular: Vec<SingularPoint>,
}

/// The curvature pair: `ν' = ℓ μ` and `γ' = β μ` with `μ = Jν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LegendrianCurvature {
    pub ell: f64,
    pub beta: f64,
}

impl LegendrianCurvature {
    /// Whether `(ℓ, β) ≠ (0, 0)`, i.e. the lift is an immersion here.
    pub fn is_front(&self, eps: f64) -> bool {
        self.ell.abs() > eps || self.beta.abs() > eps
    }
}

/// Position, velocity, normal and normal derivative at one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrontalJet {
    pub p: Vec2,
    pub dp: Vec2,
    pub nu: Vec2,
    pub dnu: Vec2,
}

impl FrontalJet {
    pub fn mu(&self) -> Vec2 {
        perp(self.nu)
    }

    pub fn curvature(&self) -> LegendrianCurvature {
        let mu = self.mu();
        LegendrianCurvature {
            ell: self.dnu.dot(mu),
            beta: self.dp.dot(mu),
        }
    }

    /// `|<γ', ν>| / max(1, |γ'|)`.
    pub fn legendrian_residual(&self) -> f64 {
        self.dp.dot(self.nu).abs() / self.dp.norm().max(1.0)
    }

    fn nan() -> FrontalJet {
        let n = Vec2::new(f64::NAN, f64::NAN);
        FrontalJet { p: n, dp: n, nu: n, dnu: n }
    }
}

/// A frontal sampled on a parameter grid.
#[derive(Clone, Debug)]
pub struct SampledFrontal {
    pub source: CurveDef,
    pub provenance: Vec<TransformKind>,
    pub grid: Vec<f64>,
    pub jets: Vec<FrontalJet>,
    pub flags: Vec<Flag>,
}

fn unit_tangent(d1: Vec2) -> Vec2 {
    d1 / d1.norm()
}

impl LegendrianCurve {
    pub fn gamma(&self) -> &CurveDef {
        &self.gamma
    }

    pub fn singular_points(&self) -> &[SingularPoint] {
        &self.singular
    }

    /// Sign relating `ν` to `-J(γ'/|γ'|)` just after `t`.
    fn sign_after(&self, t: f64) -> f64 {
        let flips = self
            .singular
            .iter()
            .filter(|s| s.flips && s.t <= t)
            .count();
        if flips % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    fn sign_before(&self, t: f64) -> f64 {
        let flips = self.singular.iter().filter(|s| s.flips && s.t < t).count();
        if flips % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `ν` and `ν'` from a jet.
    fn normal_from_jet(&self, t: f64, j: &CurveJet) -> (Vec2, Vec2) {
        let speed = j.d1.norm();
        if speed >= tol::REGULARITY_GUARD {
            let sigma = self.sign_after(t);
            let tan = unit_tangent(j.d1);
            let dtan = (j.d2 - tan * j.d2.dot(tan)) / speed;
            return (-perp(tan) * sigma, -perp(dtan) * sigma);
        }
        // at a singular point γ' ≈ (t - s) γ''(s) + (t - s)²/2 γ'''(s):
        // take the limit from the left, where the unit tangent is -γ''/|γ''|
        let sigma = self.sign_before(t);
        let a = j.d2;
        let a_norm = a.norm();
        let a_hat = a / a_norm;
        let half_b = j.d3 * 0.5;
        let tan = -a_hat;
        let dtan = -(half_b - a_hat * half_b.dot(a_hat)) / a_norm;
        (-perp(tan) * sigma, -perp(dtan) * sigma)
    }

    pub fn nu(&self, t: f64) -> Result<Vec2> {
        let j = self.gamma.jet(t)?;
        Ok(self.normal_from_jet(t, &j).0)
    }

    pub fn frontal_jet(&self, t: f64) -> Result<FrontalJet> {
        let j = self.gamma.jet(t)?;
        let (nu, dnu) = self.normal_from_jet(t, &j);
        Ok(FrontalJet {
            p: j.p,
            dp: j.d1,
            nu,
            dnu,
        })
    }

    pub fn curvature(&self, t: f64) -> Result<LegendrianCurvature> {
        Ok(self.frontal_jet(t)?.curvature())
    }

    /// The lift sampled on the curve's grid.
    pub fn sample(&self) -> Result<SampledFrontal> {
        let grid = self.gamma.sample_grid();
        let jets = grid
            .iter()
            .map(|&t| self.frontal_jet(t))
            .collect::<Result<Vec<_>>>()?;
        let n = grid.len();
        Ok(SampledFrontal {
            source: self.gamma.clone(),
            provenance: vec![TransformKind::Source],
            grid,
            jets,
            flags: vec![Flag::Ok; n],
        })
    }

    /// CSV with header `t,x,y,nu_x,nu_y,ell,beta,flag`.
    pub fn to_csv(&self) -> Result<String> {
        Ok(self.sample()?.to_csv())
    }
}

/// `(ℓ, β)` of a lift at `t`.
pub fn legendrian_curvature(lc: &LegendrianCurve, t: f64) -> Result<LegendrianCurvature> {
    lc.curvature(t)
}

/// Lift a front with finitely many singular parameters.
///
/// Singular parameters are found as local minima of `|γ'|` on the sample
/// grid, refined by bisection on `<γ', γ''>`, and kept when the refined
/// speed is below `1e-6 · median`. Across each, `ν` is continued by
/// comparing the unit tangents half a grid step on either side.
pub fn lift_front(curve: &CurveDef) -> Result<LegendrianCurve> {
    let grid = curve.sample_grid();
    let n = grid.len();
    let h = grid[1] - grid[0];
    let jets = grid
        .iter()
        .map(|&t| curve.jet(t))
        .collect::<Result<Vec<_>>>()?;
    let speeds: Vec<f64> = jets.iter().map(|j| j.d1.norm()).collect();
    let med = median(&mut speeds.clone());
    let periodic = curve.closed();

    let mut singular: Vec<SingularPoint> = Vec::new();
    for i in 0..n {
        let (prev, next) = if periodic {
            ((i + n - 1) % n, (i + 1) % n)
        } else if i == 0 || i + 1 == n {
            // endpoint minima: only an exact zero counts
            if speeds[i] < tol::REGULARITY_GUARD {
                singular.push(SingularPoint { t: grid[i], flips: false });
            }
            continue;
        } else {
            (i - 1, i + 1)
        };
        if !(speeds[i] <= speeds[prev] && speeds[i] < speeds[next]) {
            continue;
        }
        let lo = grid[i] - h;
        let hi = grid[i] + h;
        let slope = |t: f64| {
            let tt = wrap(curve, t);
            curve.jet(tt).map(|j| j.d1.dot(j.d2)).unwrap_or(f64::NAN)
        };
        let s = if speeds[i] == 0.0 {
            grid[i]
        } else if slope(lo) < 0.0 && slope(hi) > 0.0 {
            refine_minimum(slope, lo, hi)
        } else {
            grid[i]
        };
        let s = wrap(curve, s);
        let refined = curve.jet(s)?.d1.norm();
        if refined >= SINGULAR_SPEED_REL * med {
            continue;
        }
        let probe = 0.5 * h;
        let before = curve.jet(wrap(curve, s - probe))?.d1;
        let after = curve.jet(wrap(curve, s + probe))?.d1;
        let cos = unit_tangent(before).dot(unit_tangent(after));
        let flips = if cos < -0.5 {
            true
        } else if cos > 0.5 {
            false
        } else {
            return Err(Error::LiftFailure { t: s });
        };
        singular.push(SingularPoint { t: s, flips });
    }
    singular.sort_by(|a, b| a.t.total_cmp(&b.t));
    singular.dedup_by(|a, b| (a.t - b.t).abs() < 1e-12);

    if periodic && singular.iter().filter(|s| s.flips).count() % 2 == 1 {
        let t = singular.last().map_or(curve.t_min(), |s| s.t);
        return Err(Error::LiftFailure { t });
    }

    let lc = LegendrianCurve {
        gamma: curve.clone(),
        singular,
    };
    for &t in &grid {
        let j = lc.frontal_jet(t)?;
        if !((j.nu.norm() - 1.0).abs() <= tol::UNIT_NORM && j.legendrian_residual() <= tol::LEGENDRIAN) {
            return Err(Error::LiftFailure { t });
        }
    }
    Ok(lc)
}

fn wrap(curve: &CurveDef, t: f64) -> f64 {
    if curve.closed() {
        curve.t_min() + (t - curve.t_min()).rem_euclid(curve.span())
    } else {
        t.clamp(curve.t_min(), curve.t_max())
    }
}

/// Bisection on `<γ', γ''>` (the derivative of `|γ'|²/2`) run to the
/// bracket's floating-point resolution.
fn refine_minimum(slope: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = slope(mid);
        if s == 0.0 {
            return mid;
        }
        if s < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl SampledFrontal {
    pub fn len(&self) -> usize {
        self.jets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    pub fn ok_jets(&self) -> impl Iterator<Item = (usize, &FrontalJet)> + '_ {
        self.jets
            .iter()
            .zip(&self.flags)
            .enumerate()
            .filter(|(_, (_, f))| f.is_ok())
            .map(|(i, (j, _))| (i, j))
    }

    pub fn diameter(&self) -> f64 {
        bbox_diagonal(self.ok_jets().map(|(_, j)| j.p))
    }

    /// Largest Legendrian residual over ok samples.
    pub fn max_legendrian_residual(&self) -> f64 {
        self.ok_jets()
            .map(|(_, j)| j.legendrian_residual())
            .fold(0.0, f64::max)
    }

    /// The same frontal with `ν` replaced by `-ν`.
    pub fn negate_nu(&self) -> SampledFrontal {
        let mut out = self.clone();
        for j in out.jets.iter_mut() {
            j.nu = -j.nu;
            j.dnu = -j.dnu;
        }
        out
    }

    /// Image points with flags, dropping the normal field.
    pub fn to_mapped(&self) -> MappedCurve {
        MappedCurve::new(
            self.source.clone(),
            self.provenance.clone(),
            self.grid.clone(),
            self.jets.iter().map(|j| j.p).collect(),
            self.flags.clone(),
        )
    }

    /// The normal field as a sampled curve (for finite-difference checks).
    pub fn normals_as_curve(&self) -> MappedCurve {
        MappedCurve::new(
            self.source.clone(),
            self.provenance.clone(),
            self.grid.clone(),
            self.jets.iter().map(|j| j.nu).collect(),
            self.flags.clone(),
        )
    }

    /// CSV with header `t,x,y,nu_x,nu_y,ell,beta,flag`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,nu_x,nu_y,ell,beta,flag\n");
        for ((t, j), f) in self.grid.iter().zip(&self.jets).zip(&self.flags) {
            let k = j.curvature();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                sig17(*t),
                sig17(j.p.x),
                sig17(j.p.y),
                sig17(j.nu.x),
                sig17(j.nu.y),
                sig17(k.ell),
                sig17(k.beta),
                f
            );
        }
        out
    }

    fn map(
        &self,
        kind: TransformKind,
        f: impl Fn(&FrontalJet) -> (FrontalJet, Option<f64>),
    ) -> SampledFrontal {
        let guard = tol::DENOMINATOR_REL * self.diameter();
        let mut jets = Vec::with_capacity(self.len());
        let mut flags = Vec::with_capacity(self.len());
        for (j, &flag) in self.jets.iter().zip(&self.flags) {
            if !flag.is_ok() {
                jets.push(FrontalJet::nan());
                flags.push(Flag::Undefined);
                continue;
            }
            let (out, denom) = f(j);
            let flag = match denom {
                Some(d) if !(d.abs() >= guard) => Flag::NearSingular,
                _ if !out.p.is_finite() => Flag::Undefined,
                _ => Flag::Ok,
            };
            jets.push(out);
            flags.push(flag);
        }
        let mut provenance = self.provenance.clone();
        provenance.push(kind);
        SampledFrontal {
            source: self.source.clone(),
            provenance,
            grid: self.grid.clone(),
            jets,
            flags,
        }
    }
}

/// `𝒫r = 2γ - (|γ|²/<γ,ν>) ν` with its exact derivative and the normal
/// `γ/|γ|`.
fn primitive_jet(j: &FrontalJet) -> (FrontalJet, Option<f64>) {
    let d = j.p.dot(j.nu);
    let g2 = j.p.norm_squared();
    let coef = g2 / d;
    let dd = j.dp.dot(j.nu) + j.p.dot(j.dnu);
    let dcoef = (2.0 * j.p.dot(j.dp) * d - g2 * dd) / (d * d);
    let r = g2.sqrt();
    let u = j.p / r;
    let du = (j.dp - u * j.dp.dot(u)) / r;
    (
        FrontalJet {
            p: 2.0 * j.p - j.nu * coef,
            dp: 2.0 * j.dp - j.nu * dcoef - j.dnu * coef,
            nu: u,
            dnu: du,
        },
        Some(d),
    )
}

fn scaled_rotated(j: FrontalJet, scale: f64, phi: f64) -> FrontalJet {
    FrontalJet {
        p: rotate(j.p, phi) * scale,
        dp: rotate(j.dp, phi) * scale,
        nu: rotate(j.nu, phi),
        dnu: rotate(j.dnu, phi),
    }
}

/// Frontal pedal `<γ, ν> ν`.
pub fn frontal_pedal(f: &SampledFrontal) -> MappedCurve {
    f.map(TransformKind::FrontalPedal, |j| {
        let p = j.nu * j.p.dot(j.nu);
        (FrontalJet { p, ..FrontalJet::nan() }, None)
    })
    .to_mapped()
}

/// Frontal anti-pedal `ν / <γ, ν>`.
pub fn frontal_antipedal(f: &SampledFrontal) -> MappedCurve {
    f.map(TransformKind::FrontalAntipedal, |j| {
        let d = j.p.dot(j.nu);
        (FrontalJet { p: j.nu / d, ..FrontalJet::nan() }, Some(d))
    })
    .to_mapped()
}

/// Frontal primitive, carrying the normal `γ/|γ|`.
pub fn frontal_primitive(f: &SampledFrontal) -> Result<SampledFrontal> {
    ensure_avoids_origin(f)?;
    Ok(f.map(TransformKind::FrontalPrimitive, primitive_jet))
}

/// `r · 𝒫r`.
pub fn frontal_parallel_primitivoid(f: &SampledFrontal, r: f64) -> Result<SampledFrontal> {
    if r == 0.0 || !r.is_finite() {
        return Err(Error::range("parallel primitivoid ratio must be finite and nonzero"));
    }
    ensure_avoids_origin(f)?;
    Ok(f.map(TransformKind::FrontalParallel { r }, |j| {
        let (out, d) = primitive_jet(j);
        (scaled_rotated(out, r, 0.0), d)
    }))
}

/// `cos φ · R(φ) · 𝒫r`, carrying the normal `R(φ) γ/|γ|`.
pub fn frontal_slant_primitivoid(f: &SampledFrontal, phi: f64) -> Result<SampledFrontal> {
    ensure_avoids_origin(f)?;
    let c = phi.cos();
    let degenerate = c.abs() < DEGENERATE_COS;
    Ok(f.map(TransformKind::FrontalSlant { phi, degenerate }, |j| {
        let (out, d) = primitive_jet(j);
        (scaled_rotated(out, c, phi), d)
    }))
}

/// Pointwise inversion of a sampled frontal. The normal is reflected in
/// the position direction, which is how the differential of inversion acts.
pub fn frontal_invert(f: &SampledFrontal) -> Result<SampledFrontal> {
    ensure_avoids_origin(f)?;
    Ok(f.map(TransformKind::Inversion, |j| {
        let r2 = j.p.norm_squared();
        let r = r2.sqrt();
        let u = j.p / r;
        let du = (j.dp - u * j.dp.dot(u)) / r;
        let reflect = |v: Vec2| v - u * (2.0 * v.dot(u));
        let nu = reflect(j.nu);
        let dnu = j.dnu - u * (2.0 * (j.dnu.dot(u) + j.nu.dot(du))) - du * (2.0 * j.nu.dot(u));
        let p = invert(j.p).unwrap_or(Vec2::new(f64::NAN, f64::NAN));
        (
            FrontalJet {
                p,
                dp: reflect(j.dp) / r2,
                nu,
                dnu,
            },
            None,
        )
    }))
}

fn ensure_avoids_origin(f: &SampledFrontal) -> Result<()> {
    let d = f
        .ok_jets()
        .map(|(_, j)| j.p.norm())
        .fold(f64::INFINITY, f64::min);
    if d < tol::ORIGIN_GUARD {
        Err(Error::OriginSingularity { norm: d })
    } else {
        Ok(())
    }
}

/// Residuals of `cos(ψ+φ) 𝒫r[ψ](𝒫r[φ]_γ) = cos ψ cos φ 𝒫r[ψ+φ]_γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompositionResidual {
    /// Largest `|LHS - RHS|` over samples ok on both sides.
    pub residual: f64,
    pub lhs_max_norm: f64,
    pub rhs_max_norm: f64,
    /// Samples compared.
    pub compared: usize,
}

pub fn composition_check(lc: &LegendrianCurve, psi: f64, phi: f64) -> Result<CompositionResidual> {
    composition_check_sampled(&lc.sample()?, psi, phi)
}

pub fn composition_check_sampled(
    base: &SampledFrontal,
    psi: f64,
    phi: f64,
) -> Result<CompositionResidual> {
    if phi.cos().abs() < DEGENERATE_COS {
        return Err(Error::HypothesisViolated(format!(
            "inner angle φ = {phi} is π/2 + nπ"
        )));
    }
    let inner = frontal_slant_primitivoid(base, phi)?;
    let lhs = frontal_slant_primitivoid(&inner, psi)?;
    let rhs = frontal_slant_primitivoid(base, psi + phi)?;
    let (cl, cr) = ((psi + phi).cos(), psi.cos() * phi.cos());
    let mut out = CompositionResidual {
        residual: 0.0,
        lhs_max_norm: 0.0,
        rhs_max_norm: 0.0,
        compared: 0,
    };
    for i in 0..base.len() {
        if !(lhs.flags[i].is_ok() && rhs.flags[i].is_ok()) {
            continue;
        }
        let a = lhs.jets[i].p * cl;
        let b = rhs.jets[i].p * cr;
        out.residual = out.residual.max((a - b).norm());
        out.lhs_max_norm = out.lhs_max_norm.max(a.norm());
        out.rhs_max_norm = out.rhs_max_norm.max(b.norm());
        out.compared += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::frame::finite_difference_velocity;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    #[test]
    fn circle_lift() {
        let c = builtin::circle();
        let lc = lift_front(&c).unwrap();
        assert!(lc.singular_points().is_empty());
        for &t in &[0.0, 1.0, 3.0] {
            let nu = lc.nu(t).unwrap();
            assert!((nu - Vec2::new(t.cos(), t.sin())).norm() < 1e-15);
            let k = legendrian_curvature(&lc, t).unwrap();
            assert!((k.ell - 1.0).abs() < 1e-14 && (k.beta - 1.0).abs() < 1e-14);
            // ℓ = |γ'| κ on regular curves
            let f = c.frenet(t).unwrap();
            assert!((k.ell - f.speed * f.kappa).abs() < 1e-9);
        }
    }

    #[test]
    fn front_lift_has_four_flipping_cusps() {
        let f = builtin::front().with_samples(4096).unwrap();
        let lc = lift_front(&f).unwrap();
        let s = lc.singular_points();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|p| p.flips));
        // θ ≈ 0.980186 and its mirror images
        let t0 = 0.980_185_989_137;
        for (p, want) in s.iter().zip([t0, PI - t0, PI + t0, 2.0 * PI - t0]) {
            assert!((p.t - want).abs() < 1e-9, "{} vs {want}", p.t);
        }
        let sampled = lc.sample().unwrap();
        assert!(sampled.max_legendrian_residual() <= tol::LEGENDRIAN);
        for (_, j) in sampled.ok_jets() {
            assert!((j.nu.norm() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn front_curvature_pair() {
        let f = builtin::front();
        let lc = lift_front(&f).unwrap();
        let k0 = lc.curvature(0.0).unwrap();
        assert!((k0.beta - 3.0 * 2f64.sqrt() / 4.0).abs() < 1e-14);
        assert!((lc.nu(0.0).unwrap() - Vec2::new(1.0, 0.0)).norm() < 1e-15);
        for s in lc.singular_points() {
            let k = lc.curvature(s.t).unwrap();
            assert!(k.beta.abs() < 1e-9, "β = {}", k.beta);
            assert!(k.ell.abs() > 1e-3, "ℓ = {}", k.ell);
            assert!(k.is_front(1e-6));
        }
    }

    #[test]
    fn nu_is_continuous_through_the_cusp() {
        let c = builtin::cusp();
        let lc = lift_front(&c).unwrap();
        assert_eq!(lc.singular_points().len(), 1);
        let s = lc.singular_points()[0].t;
        assert!(s.abs() < 1e-12);
        let left = lc.nu(s - 1e-6).unwrap();
        let mid = lc.nu(s).unwrap();
        let right = lc.nu(s + 1e-6).unwrap();
        assert!((left - mid).norm() < 1e-5 && (right - mid).norm() < 1e-5);
        let k = lc.curvature(s).unwrap();
        assert!(k.beta.abs() < 1e-12);
        assert!(k.ell.abs() > 0.1);
        // exact singular parameter: limit formulas take over
        let exact = lc.frontal_jet(0.0).unwrap();
        assert!(exact.dp.norm() == 0.0);
        assert!((exact.nu - mid).norm() < 1e-9);
    }

    #[test]
    fn frenet_type_closure_by_finite_differences() {
        let f = builtin::front().with_samples(4096).unwrap();
        let lc = lift_front(&f).unwrap();
        let sampled = lc.sample().unwrap();
        let normals = sampled.normals_as_curve();
        let dnu_fd = finite_difference_velocity(&normals);
        let mut worst: f64 = 0.0;
        for (i, j) in sampled.jets.iter().enumerate() {
            let k = j.curvature();
            let fd = dnu_fd[i].unwrap();
            worst = worst.max((fd - j.mu() * k.ell).norm());
            // μ' = J ν' = -ℓ ν
            worst = worst.max((perp(fd) + j.nu * k.ell).norm());
        }
        assert!(worst <= 1e-6, "{worst:e}");
    }

    #[test]
    fn circle_frontal_transforms() {
        let lc = lift_front(&builtin::circle()).unwrap();
        let s = lc.sample().unwrap();
        let src = s.to_mapped();
        assert!(frontal_pedal(&s).max_distance(&src) < 1e-15);
        assert!(frontal_antipedal(&s).max_distance(&src) < 1e-15);
        assert!(frontal_primitive(&s).unwrap().to_mapped().max_distance(&src) < 1e-15);
        let p3 = frontal_parallel_primitivoid(&s, 3.0).unwrap();
        assert!(p3.jets.iter().all(|j| (j.p.norm() - 3.0).abs() < 1e-14));
        let sl = frontal_slant_primitivoid(&s, FRAC_PI_3).unwrap();
        assert!(sl.jets.iter().all(|j| (j.p.norm() - 0.5).abs() < 1e-14));
        assert!(matches!(frontal_parallel_primitivoid(&s, 0.0), Err(Error::Range(_))));
    }

    #[test]
    fn front_primitive_at_zero() {
        let lc = lift_front(&builtin::front()).unwrap();
        let s = lc.sample().unwrap();
        let pr = frontal_primitive(&s).unwrap();
        assert!((pr.jets[0].p - Vec2::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derived_velocity_matches_finite_differences() {
        let f = builtin::front().with_samples(4096).unwrap();
        let s = lift_front(&f).unwrap().sample().unwrap();
        let pr = frontal_slant_primitivoid(&s, 0.3).unwrap();
        let fd = finite_difference_velocity(&pr.to_mapped());
        for (i, j) in pr.ok_jets() {
            // away from the poles where <γ, ν> vanishes, so the stencil
            // error stays small
            if j.p.norm() > 4.0 {
                continue;
            }
            if let Some(v) = fd[i] {
                assert!((v - j.dp).norm() <= 1e-6 * j.dp.norm().max(1.0), "i = {i}");
            }
        }
    }

    #[test]
    fn primitivoids_are_frontals_with_nonvanishing_support() {
        let f = builtin::front().with_samples(4096).unwrap();
        let s = lift_front(&f).unwrap().sample().unwrap();
        for derived in [
            frontal_primitive(&s).unwrap(),
            frontal_parallel_primitivoid(&s, 2.0).unwrap(),
            frontal_slant_primitivoid(&s, PI / 10.0).unwrap(),
        ] {
            assert!(derived.max_legendrian_residual() <= tol::LEGENDRIAN);
            assert!(derived.ok_jets().all(|(_, j)| j.p.dot(j.nu).abs() > 1e-6));
        }
    }

    #[test]
    fn sign_of_nu_does_not_matter() {
        let f = builtin::front();
        let s = lift_front(&f).unwrap().sample().unwrap();
        let flipped = s.negate_nu();
        assert!(frontal_pedal(&s).max_distance(&frontal_pedal(&flipped)) <= 1e-12);
        assert!(frontal_antipedal(&s).max_distance(&frontal_antipedal(&flipped)) <= 1e-12);
        let a = frontal_primitive(&s).unwrap().to_mapped();
        let b = frontal_primitive(&flipped).unwrap().to_mapped();
        assert!(a.max_distance(&b) <= 1e-12);
    }

    #[test]
    fn primitive_is_inverted_pedal_of_inverted_curve() {
        let f = builtin::front();
        let s = lift_front(&f).unwrap().sample().unwrap();
        let pr = frontal_primitive(&s).unwrap().to_mapped();
        let inv = frontal_invert(&s).unwrap();
        assert!(inv.max_legendrian_residual() <= 1e-12);
        let via = crate::transforms::invert_mapped(&frontal_pedal(&inv));
        let worst = pr
            .ok_points()
            .filter(|&(i, _)| via.flags[i].is_ok())
            .map(|(i, a)| (a - via.points[i]).norm() / a.norm().max(1.0))
            .fold(0.0, f64::max);
        assert!(worst <= 1e-9, "{worst:e}");
    }

    #[test]
    fn composition_examples() {
        let lc = lift_front(&builtin::circle()).unwrap();
        let r = composition_check(&lc, FRAC_PI_6, FRAC_PI_6).unwrap();
        assert!(r.residual <= 1e-9);
        let z = composition_check(&lc, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!(z.lhs_max_norm <= 1e-9 && z.rhs_max_norm <= 1e-9);
        assert!(matches!(
            composition_check(&lc, 0.1, PI / 2.0),
            Err(Error::HypothesisViolated(_))
        ));

        // origin-centred circles of any radius satisfy the identity
        let c2 = lift_front(&builtin::radius_two_circle()).unwrap();
        assert!(composition_check(&c2, PI / 10.0, PI / 5.0).unwrap().residual <= 1e-9);
    }

    #[test]
    fn composed_primitivoid_closed_form() {
        // 𝒫r[ψ] of 𝒫r[φ]_γ with the derived normal is
        // cos ψ cos φ R(ψ+φ)(2𝒫r - |γ|²/<γ,ν>² γ)
        let e = lift_front(&builtin::ellipse()).unwrap().sample().unwrap();
        let (psi, phi) = (PI / 10.0, PI / 5.0);
        let lhs = frontal_slant_primitivoid(&frontal_slant_primitivoid(&e, phi).unwrap(), psi).unwrap();
        let pr = frontal_primitive(&e).unwrap();
        for (i, j) in e.jets.iter().enumerate() {
            let d = j.p.dot(j.nu);
            let inner = 2.0 * pr.jets[i].p - j.p * (j.p.norm_squared() / (d * d));
            let want = rotate(inner, psi + phi) * (psi.cos() * phi.cos());
            assert!((lhs.jets[i].p - want).norm() <= 1e-12);
        }
    }

    #[test]
    fn legendrian_csv_header() {
        let lc = lift_front(&builtin::circle().with_samples(16).unwrap()).unwrap();
        let csv = lc.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,x,y,nu_x,nu_y,ell,beta,flag"));
        assert_eq!(lines.count(), 16);
    }
}
