//! Curves shipped with the crate, stored as curve documents.

use crate::curve::{parse_curve, CurveDef};

pub const CIRCLE: &str = "\
name = \"circle\"
x = cos(t)
y = sin(t)
t_min = 0
t_max = 2*pi
";

/// The ellipse `x² + 3y² = 1`.
pub const ELLIPSE: &str = "\
name = \"ellipse\"
x = cos(t)
y = sin(t)/sqrt(3)
t_min = 0
t_max = 2*pi
";

/// A closed front with four ordinary cusps.
pub const FRONT: &str = "\
name = \"front\"
x = (30*cos(t) - 17*cos(3*t) + 3*cos(5*t)) / 32
y = sin(t) * (23 + 4*cos(2*t) - 3*cos(4*t)) / (16*sqrt(2))
t_min = 0
t_max = 2*pi
";

/// Unit circle centred at (2, 0); its tangent lines through the origin
/// sit at t = 2π/3 and 4π/3.
pub const OFF_CENTER_CIRCLE: &str = "\
name = \"off-center-circle\"
x = 2 + cos(t)
y = sin(t)
t_min = 0
t_max = 2*pi
";

pub const RADIUS_TWO_CIRCLE: &str = "\
name = \"circle-r2\"
x = 2*cos(t)
y = 2*sin(t)
t_min = 0
t_max = 2*pi
";

/// Unit circle through the origin (at t = π).
pub const CIRCLE_THROUGH_ORIGIN: &str = "\
name = \"circle-through-origin\"
x = 1 + cos(t)
y = sin(t)
t_min = 0
t_max = 2*pi
";

/// Cubic graph with an ordinary inflection at t = 0.
pub const CUBIC: &str = "\
name = \"cubic\"
x = t
y = t^3 + 1
t_min = -1
t_max = 1
closed = false
";

/// Semicubical parabola with its cusp at t = 0, moved off the origin.
pub const CUSP: &str = "\
name = \"cusp\"
x = t^2
y = t^3 + 1
t_min = -1
t_max = 1
closed = false
";

fn load(doc: &str) -> CurveDef {
    parse_curve(doc).expect("built-in curve document is valid")
}

pub fn circle() -> CurveDef {
    load(CIRCLE)
}

pub fn ellipse() -> CurveDef {
    load(ELLIPSE)
}

pub fn front() -> CurveDef {
    load(FRONT)
}

pub fn off_center_circle() -> CurveDef {
    load(OFF_CENTER_CIRCLE)
}

pub fn radius_two_circle() -> CurveDef {
    load(RADIUS_TWO_CIRCLE)
}

pub fn circle_through_origin() -> CurveDef {
    load(CIRCLE_THROUGH_ORIGIN)
}

pub fn cubic() -> CurveDef {
    load(CUBIC)
}

pub fn cusp() -> CurveDef {
    load(CUSP)
}

/// The four reference curves every identity suite runs on.
pub fn all() -> Vec<CurveDef> {
    vec![circle(), ellipse(), front(), off_center_circle()]
}

/// Reference curves plus the auxiliary test curves.
pub fn everything() -> Vec<CurveDef> {
    let mut v = all();
    v.extend([radius_two_circle(), circle_through_origin(), cubic(), cusp()]);
    v
}

pub fn by_name(name: &str) -> Option<CurveDef> {
    everything().into_iter().find(|c| c.name() == name)
}
