//! Sampled images of transforms.

use std::fmt::{self, Write as _};

use crate::curve::CurveDef;
use crate::geom::Vec2;

/// Per-sample status of a mapped curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    Ok,
    /// The transform's denominator is below its guard here.
    NearSingular,
    /// No value: the source sample is irregular or unavailable.
    Undefined,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Ok => "ok",
            Flag::NearSingular => "near_singular",
            Flag::Undefined => "undefined",
        }
    }

    pub fn is_ok(self) -> bool {
        self == Flag::Ok
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which transform produced a mapped curve.
#[derive(Clone, Debug, PartialEq)]
pub enum TransformKind {
    Source,
    Pedal,
    Contrapedal,
    Pedaloid { psi: f64 },
    Antipedal,
    Primitive,
    PrimitiveOfPerp,
    Parallel { r: f64 },
    /// `degenerate` is set when `cos φ` vanishes and the image collapses to
    /// the origin.
    Slant { phi: f64, degenerate: bool },
    Inversion,
    Envelope { family: String },
    FrontalPedal,
    FrontalAntipedal,
    FrontalPrimitive,
    FrontalParallel { r: f64 },
    FrontalSlant { phi: f64, degenerate: bool },
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformKind::Source => f.write_str("source"),
            TransformKind::Pedal => f.write_str("pedal"),
            TransformKind::Contrapedal => f.write_str("contrapedal"),
            TransformKind::Pedaloid { psi } => write!(f, "pedaloid({psi})"),
            TransformKind::Antipedal => f.write_str("antipedal"),
            TransformKind::Primitive => f.write_str("primitive"),
            TransformKind::PrimitiveOfPerp => f.write_str("primitive-of-perp"),
            TransformKind::Parallel { r } => write!(f, "parallel({r})"),
            TransformKind::Slant { phi, degenerate } => {
                write!(f, "slant({phi}{})", if *degenerate { ", degenerate" } else { "" })
            }
            TransformKind::Inversion => f.write_str("inversion"),
            TransformKind::Envelope { family } => write!(f, "envelope({family})"),
            TransformKind::FrontalPedal => f.write_str("frontal-pedal"),
            TransformKind::FrontalAntipedal => f.write_str("frontal-antipedal"),
            TransformKind::FrontalPrimitive => f.write_str("frontal-primitive"),
            TransformKind::FrontalParallel { r } => write!(f, "frontal-parallel({r})"),
            TransformKind::FrontalSlant { phi, degenerate } => write!(
                f,
                "frontal-slant({phi}{})",
                if *degenerate { ", degenerate" } else { "" }
            ),
        }
    }
}

/// A derived curve: image points on the source's parameter grid.
///
/// `provenance` lists the transforms applied to `source`, first to last.
#[derive(Clone, Debug)]
pub struct MappedCurve {
    pub source: CurveDef,
    pub provenance: Vec<TransformKind>,
    pub grid: Vec<f64>,
    pub points: Vec<Vec2>,
    pub flags: Vec<Flag>,
}

impl MappedCurve {
    pub fn new(
        source: CurveDef,
        provenance: Vec<TransformKind>,
        grid: Vec<f64>,
        points: Vec<Vec2>,
        flags: Vec<Flag>,
    ) -> Self {
        debug_assert_eq!(grid.len(), points.len());
        debug_assert_eq!(grid.len(), flags.len());
        MappedCurve {
            source,
            provenance,
            grid,
            points,
            flags,
        }
    }

    /// The most recent transform.
    pub fn kind(&self) -> &TransformKind {
        self.provenance.last().unwrap_or(&TransformKind::Source)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether the sample grid wraps around.
    pub fn periodic(&self) -> bool {
        self.source.closed()
    }

    /// Grid spacing.
    pub fn step(&self) -> f64 {
        if self.grid.len() < 2 {
            0.0
        } else {
            self.grid[1] - self.grid[0]
        }
    }

    pub fn ok_count(&self) -> usize {
        self.flags.iter().filter(|f| f.is_ok()).count()
    }

    pub fn ok_points(&self) -> impl Iterator<Item = (usize, Vec2)> + '_ {
        self.points
            .iter()
            .zip(&self.flags)
            .enumerate()
            .filter(|(_, (_, f))| f.is_ok())
            .map(|(i, (p, _))| (i, *p))
    }

    /// Bounding-box diagonal of the ok samples.
    pub fn diameter(&self) -> f64 {
        bbox_diagonal(self.ok_points().map(|(_, p)| p))
    }

    /// Map points through `f`, keeping flags and grid.
    pub fn map_points(&self, kind: TransformKind, f: impl Fn(Vec2) -> Vec2) -> MappedCurve {
        let mut provenance = self.provenance.clone();
        provenance.push(kind);
        MappedCurve {
            source: self.source.clone(),
            provenance,
            grid: self.grid.clone(),
            points: self.points.iter().map(|&p| f(p)).collect(),
            flags: self.flags.clone(),
        }
    }

    /// Largest distance to `other` over samples that are ok in both.
    pub fn max_distance(&self, other: &MappedCurve) -> f64 {
        self.max_distance_to(|i| (other.flags[i].is_ok()).then(|| other.points[i]))
    }

    /// Largest `|p - q| / max(1, |p|)` over samples ok in both: absolute
    /// near the origin, relative for far-out points such as those next to
    /// a pole.
    pub fn max_scaled_distance(&self, other: &MappedCurve) -> f64 {
        self.ok_points()
            .filter(|&(i, _)| other.flags[i].is_ok())
            .map(|(i, p)| (p - other.points[i]).norm() / p.norm().max(1.0))
            .fold(0.0, f64::max)
    }

    /// Number of samples ok in both curves.
    pub fn overlap(&self, other: &MappedCurve) -> usize {
        self.ok_points().filter(|&(i, _)| other.flags[i].is_ok()).count()
    }

    /// Largest distance to `reference(i)` over ok samples where the
    /// reference is defined.
    pub fn max_distance_to(&self, reference: impl Fn(usize) -> Option<Vec2>) -> f64 {
        self.ok_points()
            .filter_map(|(i, p)| reference(i).map(|q| (p - q).norm()))
            .fold(0.0, f64::max)
    }

    /// CSV with header `t,x,y,flag`, floats at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,flag\n");
        for ((t, p), flag) in self.grid.iter().zip(&self.points).zip(&self.flags) {
            let _ = writeln!(out, "{},{},{},{}", sig17(*t), sig17(p.x), sig17(p.y), flag);
        }
        out
    }
}

pub(crate) fn bbox_diagonal(points: impl Iterator<Item = Vec2>) -> f64 {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut any = false;
    for p in points.filter(|p| p.is_finite()) {
        any = true;
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if any {
        (hi - lo).norm()
    } else {
        0.0
    }
}

/// Scientific notation with 17 significant digits.
pub fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Scientific notation with 12 significant digits.
pub fn sig12(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        format!("{v}")
    }
}
