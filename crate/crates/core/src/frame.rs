//! Moving frames along sampled curves.
//!
//! Transforms only need the position and the unit tangent/normal at each
//! sample. Symbolic curves supply exact Frenet frames; sampled curves
//! (images of other transforms) get five-point finite-difference frames.

use crate::curve::CurveDef;
use crate::error::Result;
use crate::geom::{perp, Vec2};
use crate::mapped::{bbox_diagonal, MappedCurve, TransformKind};
use crate::tol;

/// Position and, where available, the unit tangent and normal.
#[derive(Clone, Copy, Debug)]
pub struct FrameSample {
    pub p: Vec2,
    pub tangent: Option<(Vec2, Vec2)>,
}

/// Sampled frames along a curve, together with what the curve came from.
#[derive(Clone, Debug)]
pub struct Frames {
    pub source: CurveDef,
    pub provenance: Vec<TransformKind>,
    pub grid: Vec<f64>,
    pub samples: Vec<FrameSample>,
    /// Bounding-box diagonal of the sampled positions.
    pub diameter: f64,
}

/// Anything a pointwise transform can be applied to.
pub trait FrameSource {
    fn frames(&self) -> Result<Frames>;
}

impl FrameSource for CurveDef {
    fn frames(&self) -> Result<Frames> {
        let grid = self.sample_grid();
        let samples = grid
            .iter()
            .map(|&t| {
                let f = self.frenet(t)?;
                Ok(FrameSample {
                    p: self.position(t)?,
                    tangent: Some((f.t_hat, f.n_hat)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let diameter = bbox_diagonal(samples.iter().map(|s| s.p));
        Ok(Frames {
            source: self.clone(),
            provenance: vec![],
            grid,
            samples,
            diameter,
        })
    }
}

impl FrameSource for MappedCurve {
    fn frames(&self) -> Result<Frames> {
        let velocity = finite_difference_velocity(self);
        let mut speeds: Vec<f64> = velocity.iter().flatten().map(|v| v.norm()).collect();
        let floor = tol::SAMPLED_REGULAR_REL * median(&mut speeds);
        let samples = self
            .points
            .iter()
            .zip(&velocity)
            .map(|(&p, v)| FrameSample {
                p,
                tangent: v.filter(|v| v.norm() >= floor && v.norm() > 0.0).map(|v| {
                    let t_hat = v / v.norm();
                    (t_hat, perp(t_hat))
                }),
            })
            .collect();
        Ok(Frames {
            source: self.source.clone(),
            provenance: self.provenance.clone(),
            grid: self.grid.clone(),
            samples,
            diameter: self.diameter(),
        })
    }
}

/// Sample `i + k`, wrapping on closed curves; `None` off the ends of an
/// open curve or at a non-ok sample.
fn stencil(mc: &MappedCurve, i: usize, k: isize) -> Option<Vec2> {
    let n = mc.len() as isize;
    let j = i as isize + k;
    let j = if mc.periodic() {
        j.rem_euclid(n)
    } else if j < 0 || j >= n {
        return None;
    } else {
        j
    } as usize;
    mc.flags[j].is_ok().then(|| mc.points[j])
}

/// Five-point velocity at `i` with stencil spacing `s` grid steps.
fn velocity_at(mc: &MappedCurve, i: usize, s: isize) -> Option<Vec2> {
    let at = |k: isize| stencil(mc, i, k * s);
    at(0)?;
    let (m2, m1, p1, p2) = (at(-2)?, at(-1)?, at(1)?, at(2)?);
    Some((m2 - p2 + (p1 - m1) * 8.0) / (12.0 * mc.step() * s as f64))
}

/// Five-point central-difference velocity of a sampled curve; `None` where
/// the stencil leaves the grid (open curves) or touches a non-ok sample.
pub fn finite_difference_velocity(mc: &MappedCurve) -> Vec<Option<Vec2>> {
    (0..mc.len()).map(|i| velocity_at(mc, i, 1)).collect()
}

/// Five-point central-difference second derivative, same conventions as
/// [`finite_difference_velocity`].
pub fn finite_difference_acceleration(mc: &MappedCurve) -> Vec<Option<Vec2>> {
    let h = mc.step();
    (0..mc.len())
        .map(|i| {
            let at = |k: isize| stencil(mc, i, k);
            let (m2, m1, c, p1, p2) = (at(-2)?, at(-1)?, at(0)?, at(1)?, at(2)?);
            Some(((m1 + p1) * 16.0 - (m2 + p2) - c * 30.0) / (12.0 * h * h))
        })
        .collect()
}

/// Samples where the grid resolves the tangent direction: the Richardson
/// estimate `|v(2h) - v(h)| / (15 |v(h)|)` of the angle error, times
/// `|p|`, is at most `accuracy`. That product bounds how far a pedal foot
/// or tangent line moves, so it is the error scale of identities checked
/// on finite-difference frames. Cusps and unresolved poles fail it.
pub fn resolved_samples(mc: &MappedCurve, accuracy: f64) -> Vec<bool> {
    (0..mc.len())
        .map(|i| {
            let (Some(v1), Some(v2)) = (velocity_at(mc, i, 1), velocity_at(mc, i, 2)) else {
                return false;
            };
            let angle = (v2 - v1).norm() / (15.0 * v1.norm());
            angle * mc.points[i].norm() <= accuracy
        })
        .collect()
}

/// Signed curvature `v × a / |v|³` from five-point stencils at spacing
/// `s` grid steps.
fn curvature_at(mc: &MappedCurve, i: usize, s: isize) -> Option<f64> {
    let at = |k: isize| stencil(mc, i, k * s);
    let (m2, m1, c, p1, p2) = (at(-2)?, at(-1)?, at(0)?, at(1)?, at(2)?);
    let h = mc.step() * s as f64;
    let v = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
    let a = ((m1 + p1) * 16.0 - (m2 + p2) - c * 30.0) / (12.0 * h * h);
    let speed = v.norm();
    (speed > 0.0).then(|| v.cross(a) / speed.powi(3))
}

/// Finite-difference curvature with its Richardson error estimate
/// `|κ(2h) - κ(h)| / 15`.
pub fn finite_difference_curvature(mc: &MappedCurve) -> Vec<Option<(f64, f64)>> {
    (0..mc.len())
        .map(|i| {
            let k1 = curvature_at(mc, i, 1)?;
            let k2 = curvature_at(mc, i, 2)?;
            Some((k1, (k2 - k1).abs() / 15.0))
        })
        .collect()
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}
