//! The ten reference figures: the ellipse x² + 3y² = 1 with its
//! primitivoids, and the four-cusped front with its primitive.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use primitivoid::envelope::{make_family, FamilyKind};
use primitivoid::frontal::{frontal_primitive, lift_front};
use primitivoid::transforms::{sampled, slant_primitivoid};
use primitivoid::{builtin, Result};

use crate::plot::{render_svg, PlotSpec};

/// Angles of the ellipse primitivoid figures.
pub const PRIMITIVOID_ANGLES: [f64; 4] = [0.0, PI / 10.0, FRAC_PI_4, FRAC_PI_3];

/// Family lines drawn in the last figure.
pub const FAMILY_LINES: usize = 64;

pub struct Figure {
    pub number: usize,
    pub title: &'static str,
    pub svg: String,
}

impl Figure {
    pub fn file_name(&self) -> String {
        format!("fig{:02}.svg", self.number)
    }
}

pub const TITLES: [&str; 10] = [
    "The ellipse",
    "The 0-primitivoid (the primitive)",
    "The π/10-primitivoid",
    "The π/4-primitivoid",
    "The π/3-primitivoid",
    "The ellipse and primitivoids",
    "The front",
    "The primitive of the front",
    "The front and its primitive",
    "The primitive of the front with the family of lines",
];

/// The plot for figure `number` (1-based), with curves at `samples`.
pub fn figure_spec(number: usize, samples: usize) -> Result<PlotSpec> {
    let ellipse = builtin::ellipse().with_samples(samples)?;
    let front = builtin::front().with_samples(samples)?;
    let front_primitive = || -> Result<_> {
        let lifted = lift_front(&front)?.sample()?;
        Ok(frontal_primitive(&lifted)?.to_mapped())
    };
    let mut spec = PlotSpec::new();
    match number {
        1 => {
            spec.push(sampled(&ellipse)?);
        }
        2..=5 => {
            spec.push(slant_primitivoid(&ellipse, PRIMITIVOID_ANGLES[number - 2])?);
        }
        6 => {
            spec.push(sampled(&ellipse)?);
            for phi in PRIMITIVOID_ANGLES {
                spec.push(slant_primitivoid(&ellipse, phi)?);
            }
        }
        7 => {
            spec.push(sampled(&front)?);
        }
        8 => {
            spec.push(front_primitive()?);
        }
        9 => {
            spec.push(sampled(&front)?);
            spec.push(front_primitive()?);
        }
        10 => {
            spec.push(front_primitive()?);
            let family = make_family(FamilyKind::Primitive, &front)?;
            spec = spec.with_family(family, FAMILY_LINES);
        }
        _ => {
            return Err(primitivoid::Error::Range(format!(
                "figure number {number} is not in 1..=10"
            )))
        }
    }
    Ok(spec)
}

pub fn figure(number: usize, samples: usize) -> Result<Figure> {
    let spec = figure_spec(number, samples)?;
    Ok(Figure {
        number,
        title: TITLES[number - 1],
        svg: render_svg(&spec)?,
    })
}

pub fn all_figures(samples: usize) -> Result<Vec<Figure>> {
    (1..=10).map(|n| figure(n, samples)).collect()
}
