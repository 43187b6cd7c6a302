//! Command-line front end: transforms, detectors, verification suites and
//! SVG figures.

pub mod app;
pub mod figures;
pub mod plot;
pub mod verify;

pub use app::main_with;
pub use plot::{corner_points, parse_overlays, render_svg, PlotSpec};
pub use verify::{Suite, VerifyReport};
