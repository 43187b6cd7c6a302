//! Pedals, anti-pedals, primitives and primitivoids of plane curves and
//! frontals.
//!
//! Curves are ingested as parametric expressions in `t`, differentiated
//! symbolically, and sampled on a uniform grid. Every derived curve is a
//! [`MappedCurve`]: the image points together with a per-sample status flag
//! that marks where a transform's denominator gets too close to zero.
//!
//! ```
//! use primitivoid::{builtin, transforms};
//!
//! let ellipse = builtin::ellipse();
//! let pr = transforms::primitive(&ellipse).unwrap();
//! let p0 = pr.points[0];
//! assert!((p0.x - 1.0).abs() < 1e-12 && p0.y.abs() < 1e-12);
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`geom`]: plane vectors, the quarter turn, rotations, inversion, lines.
//! * [`expr`] and [`curve`]: expression parsing, symbolic derivatives,
//!   curve definitions and Frenet data.
//! * [`transforms`]: closed-form pedal/primitive family.
//! * [`envelope`]: an independent envelope solver for line families.
//! * [`roots`] and [`singularity`]: root scanning, vertex/inflection and
//!   cusp classification.
//! * [`frontal`]: Legendrian lifts of fronts and their transforms.

// `!(x >= guard)` is how guards reject NaN; float guards read better than
// float literal patterns.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::redundant_guards)]

pub mod builtin;
pub mod curve;
pub mod envelope;
pub mod error;
pub mod expr;
pub mod frame;
pub mod frontal;
pub mod geom;
pub mod mapped;
pub mod roots;
pub mod singularity;
pub mod tol;
pub mod transforms;

pub use curve::{parse_curve, CurveDef, CurveJet, FrenetData};
pub use error::{Error, ParseError, Result};
pub use expr::Expr;
pub use geom::{Line, Vec2};
pub use mapped::{Flag, MappedCurve, TransformKind};
