//! Deterministic SVG rendering of sampled curves and line families.

use std::fmt::Write as _;

use primitivoid::envelope::LineFamily;
use primitivoid::{CurveDef, MappedCurve, Result, Vec2};

/// Stroke colours cycled over overlays.
pub const PALETTE: [&str; 6] = ["#1f3b73", "#c0392b", "#27864a", "#b9770e", "#7d3c98", "#5d6d7e"];

const FAMILY_COLOUR: &str = "#9aa5b1";
const MARGIN: f64 = 0.05;
const STROKE_REL: f64 = 0.005;

#[derive(Clone, Debug)]
pub struct Overlay {
    pub curve: MappedCurve,
    pub colour: String,
    /// Multiple of the default stroke width.
    pub weight: f64,
}

/// What to draw. The viewport is always fitted to the overlays.
#[derive(Debug)]
pub struct PlotSpec {
    pub overlays: Vec<Overlay>,
    pub family_lines: Option<(LineFamily, usize)>,
    pub width: u32,
    pub height: u32,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self::new()
    }
}

impl PlotSpec {
    pub fn new() -> Self {
        PlotSpec {
            overlays: Vec::new(),
            family_lines: None,
            width: 800,
            height: 800,
        }
    }

    /// Add an overlay in the next palette colour.
    pub fn push(&mut self, curve: MappedCurve) -> &mut Self {
        let colour = PALETTE[self.overlays.len() % PALETTE.len()].to_string();
        self.overlays.push(Overlay {
            curve,
            colour,
            weight: 1.0,
        });
        self
    }

    pub fn push_source(&mut self, curve: &CurveDef) -> Result<&mut Self> {
        Ok(self.push(primitivoid::transforms::sampled(curve)?))
    }

    pub fn with_family(mut self, family: LineFamily, count: usize) -> Self {
        self.family_lines = Some((family, count));
        self
    }

    /// Bounding box of every finite ok point, padded by 5% per side.
    pub fn viewport(&self) -> Option<(Vec2, Vec2)> {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for o in &self.overlays {
            for (_, p) in o.curve.ok_points().filter(|(_, p)| p.is_finite()) {
                lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
            }
        }
        if !lo.is_finite() {
            return None;
        }
        let size = hi - lo;
        // a degenerate box (a point or a segment) still gets some extent
        let extent = size.x.max(size.y).max(1e-9);
        let pad = Vec2::new(
            MARGIN * size.x.max(0.05 * extent),
            MARGIN * size.y.max(0.05 * extent),
        );
        Some((lo - pad, hi + pad))
    }
}

/// Runs of consecutive ok samples; closed curves join across the seam
/// when both ends are ok.
pub fn polyline_runs(mc: &MappedCurve) -> Vec<Vec<Vec2>> {
    let n = mc.len();
    let ok = |i: usize| mc.flags[i].is_ok() && mc.points[i].is_finite();
    let mut runs: Vec<Vec<Vec2>> = Vec::new();
    let mut current: Vec<Vec2> = Vec::new();
    for i in 0..n {
        if ok(i) {
            current.push(mc.points[i]);
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    if mc.periodic() && n > 0 && ok(0) && ok(n - 1) {
        if runs.len() == 1 {
            let first = runs[0][0];
            runs[0].push(first);
        } else if runs.len() > 1 {
            let head = runs.remove(0);
            runs.last_mut().expect("nonempty").extend(head);
        }
    }
    runs.retain(|r| r.len() >= 2);
    runs
}

fn num(v: f64) -> String {
    // fixed precision keeps output byte-stable; -0 prints as 0
    let s = format!("{:.6}", v + 0.0);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn points_attr(run: &[Vec2]) -> String {
    let mut s = String::new();
    for (k, p) in run.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        // SVG's y axis points down
        let _ = write!(s, "{},{}", num(p.x), num(-p.y));
    }
    s
}

/// Render to a standalone SVG document.
pub fn render_svg(spec: &PlotSpec) -> Result<String> {
    let (lo, hi) = spec
        .viewport()
        .unwrap_or((Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0)));
    let size = hi - lo;
    let stroke = STROKE_REL * size.norm();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        spec.width,
        spec.height,
        num(lo.x),
        num(-hi.y),
        num(size.x),
        num(size.y)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        num(lo.x),
        num(-hi.y),
        num(size.x),
        num(size.y)
    );

    if let Some((family, count)) = &spec.family_lines {
        let _ = writeln!(
            out,
            r#"<g class="family" stroke="{FAMILY_COLOUR}" stroke-width="{}" fill="none">"#,
            num(0.4 * stroke)
        );
        let src = &family.source;
        let count = (*count).max(1);
        let step = src.span() / if src.closed() { count } else { count.max(2) - 1 } as f64;
        for k in 0..count {
            let s = src.t_min() + step * k as f64;
            let Ok(line) = family.line(s) else { continue };
            if let Some((a, b)) = line.clip(lo, hi) {
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    num(a.x),
                    num(-a.y),
                    num(b.x),
                    num(-b.y)
                );
            }
        }
        out.push_str("</g>\n");
    }

    for (k, o) in spec.overlays.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<g class="overlay" id="overlay-{k}" stroke="{}" stroke-width="{}" fill="none" stroke-linejoin="miter" stroke-miterlimit="50">"#,
            o.colour,
            num(stroke * o.weight)
        );
        for run in polyline_runs(&o.curve) {
            let _ = writeln!(out, r#"<polyline points="{}"/>"#, points_attr(&run));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Polylines of each overlay group, parsed back out of an SVG produced
/// by [`render_svg`] (y flipped back to curve coordinates).
pub fn parse_overlays(svg: &str) -> Vec<Vec<Vec<Vec2>>> {
    let mut groups: Vec<Vec<Vec<Vec2>>> = Vec::new();
    for line in svg.lines() {
        if line.starts_with(r#"<g class="overlay""#) {
            groups.push(Vec::new());
        } else if let Some(rest) = line.strip_prefix(r#"<polyline points=""#) {
            let body = rest.trim_end_matches(r#""/>"#);
            let pts = body
                .split(' ')
                .filter_map(|pair| {
                    let (x, y) = pair.split_once(',')?;
                    Some(Vec2::new(x.parse().ok()?, -y.parse::<f64>().ok()?))
                })
                .collect();
            if let Some(g) = groups.last_mut() {
                g.push(pts);
            }
        }
    }
    groups
}

/// Vertices of a polyline where the direction turns by more than 90°:
/// the drawn corners. Interior vertices only, plus the seam of a closed run.
pub fn corner_points(run: &[Vec2]) -> Vec<Vec2> {
    let closed = run.len() > 2 && run.first() == run.last();
    let pts = if closed { &run[..run.len() - 1] } else { run };
    let n = pts.len();
    if n < 3 {
        return Vec::new();
    }
    let turns = |i: usize| {
        let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
        (b - a).dot(c - b) < 0.0
    };
    let range = if closed { 0..n } else { 1..n - 1 };
    range.filter(|&i| turns(i)).map(|i| pts[i]).collect()
}

pub fn corner_count(run: &[Vec2]) -> usize {
    corner_points(run).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use primitivoid::builtin;
    use primitivoid::mapped::Flag;
    use primitivoid::transforms::{primitive, sampled};

    #[test]
    fn unit_circle_is_one_closed_polyline() {
        let mut spec = PlotSpec::new();
        spec.push_source(&builtin::circle()).unwrap();
        let svg = render_svg(&spec).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let groups = parse_overlays(&svg);
        let run = &groups[0][0];
        assert_eq!(run.first(), run.last());
        assert_eq!(run.len(), builtin::circle().samples() + 1);
        assert_eq!(corner_count(run), 0);
        // 5% margin on a 2x2 box, stroke 0.5% of the diagonal
        assert!(svg.contains(r#"viewBox="-1.100000 -1.100000 2.200000 2.200000""#));
        assert!(svg.contains(&format!(r#"stroke-width="{}""#, num(0.005 * 2.2 * 2f64.sqrt()))));
    }

    #[test]
    fn flagged_samples_break_polylines() {
        let mut mc = sampled(&builtin::circle().with_samples(16).unwrap()).unwrap();
        mc.flags[4] = Flag::NearSingular;
        mc.flags[10] = Flag::Undefined;
        let runs = polyline_runs(&mc);
        assert_eq!(runs.len(), 2);
        // the run through the seam: samples 11..16 then 0..4
        assert!(runs.iter().any(|r| r.len() == 9));
        assert!(runs.iter().any(|r| r.len() == 5));
    }

    #[test]
    fn ellipse_primitive_has_four_corners() {
        let mut spec = PlotSpec::new();
        spec.push(primitive(&builtin::ellipse()).unwrap());
        let svg = render_svg(&spec).unwrap();
        let groups = parse_overlays(&svg);
        let corners: usize = groups[0].iter().map(|r| corner_count(r)).sum();
        assert_eq!(corners, 4);
    }

    #[test]
    fn rendering_is_deterministic() {
        let build = || {
            let mut spec = PlotSpec::new();
            spec.push_source(&builtin::ellipse()).unwrap();
            spec.push(primitive(&builtin::ellipse()).unwrap());
            let fam = primitivoid::envelope::make_family(
                primitivoid::envelope::FamilyKind::Primitive,
                &builtin::ellipse(),
            )
            .unwrap();
            render_svg(&spec.with_family(fam, 64)).unwrap()
        };
        let a = build();
        assert_eq!(a, build());
        assert!(a.matches("<line ").count() > 32);
    }
}
