//! Parametric curve definitions, their jets and Frenet data.
//!
//! A [`CurveDef`] keeps the two coordinate expressions together with their
//! symbolic derivatives up to order three, so curvature and its arc-length
//! derivative never go through finite differences. Curves need not be
//! parametrised by arc length; all quantities here are written in the
//! parametrisation-invariant form.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::expr::{self, parse_expr_at, Cursor, Expr};
use crate::geom::{perp, Vec2};
use crate::tol;

pub const DEFAULT_SAMPLES: usize = 1024;
pub const MIN_SAMPLES: usize = 16;

#[derive(Debug)]
struct Derivatives {
    x: [Expr; 3],
    y: [Expr; 3],
}

/// A parametric plane curve `t -> (x(t), y(t))` on `[t_min, t_max]`.
#[derive(Clone, Debug)]
pub struct CurveDef {
    name: String,
    x: Expr,
    y: Expr,
    t_min: f64,
    t_max: f64,
    samples: usize,
    closed: bool,
    derivs: Arc<Derivatives>,
}

/// Position and parameter derivatives of order 1 to 3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveJet {
    pub p: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
    pub d3: Vec2,
}

/// Unit tangent and normal, speed, curvature and `dκ/ds`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetData {
    pub t_hat: Vec2,
    pub n_hat: Vec2,
    pub speed: f64,
    pub kappa: f64,
    pub kappa_prime_arc: f64,
}

impl FrenetData {
    /// Frenet data of a jet; `None` when the speed is below the regularity
    /// guard.
    pub fn from_jet(jet: &CurveJet) -> Option<FrenetData> {
        let speed = jet.d1.norm();
        if !(speed >= tol::REGULARITY_GUARD) {
            return None;
        }
        let t_hat = jet.d1 / speed;
        let cross12 = jet.d1.cross(jet.d2);
        let v2 = speed * speed;
        let kappa = cross12 / (v2 * speed);
        // dκ/dt = (d1×d3 |d1|² - 3 (d1×d2) <d1,d2>) / |d1|⁵
        let dkappa_dt =
            (jet.d1.cross(jet.d3) * v2 - 3.0 * cross12 * jet.d1.dot(jet.d2)) / (v2 * v2 * speed);
        Some(FrenetData {
            t_hat,
            n_hat: perp(t_hat),
            speed,
            kappa,
            kappa_prime_arc: dkappa_dt / speed,
        })
    }
}

impl CurveDef {
    pub fn new(
        name: impl Into<String>,
        x: Expr,
        y: Expr,
        t_min: f64,
        t_max: f64,
        samples: usize,
        closed: bool,
    ) -> Result<CurveDef> {
        if !(t_min.is_finite() && t_max.is_finite()) {
            return Err(Error::range("parameter bounds must be finite"));
        }
        if t_min >= t_max {
            return Err(Error::range(format!("t_min = {t_min} must be below t_max = {t_max}")));
        }
        check_samples(samples)?;
        let dx1 = x.differentiate();
        let dy1 = y.differentiate();
        let dx2 = dx1.differentiate();
        let dy2 = dy1.differentiate();
        let derivs = Derivatives {
            x: [dx1, dx2.clone(), dx2.differentiate()],
            y: [dy1, dy2.clone(), dy2.differentiate()],
        };
        let curve = CurveDef {
            name: name.into(),
            x,
            y,
            t_min,
            t_max,
            samples,
            closed,
            derivs: Arc::new(derivs),
        };
        if closed {
            let a = curve.position(t_min)?;
            let b = curve.position(t_max)?;
            let gap = (a - b).norm();
            if !(gap <= tol::CLOSURE) {
                return Err(Error::range(format!(
                    "curve '{}' declared closed but endpoints differ by {gap:e}",
                    curve.name
                )));
            }
        }
        Ok(curve)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x(&self) -> &Expr {
        &self.x
    }

    pub fn y(&self) -> &Expr {
        &self.y
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn span(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Symbolic derivative of order `k` (1 to 3) of both coordinates.
    pub fn derivative_exprs(&self, k: usize) -> (&Expr, &Expr) {
        (&self.derivs.x[k - 1], &self.derivs.y[k - 1])
    }

    pub fn with_samples(&self, samples: usize) -> Result<CurveDef> {
        check_samples(samples)?;
        Ok(CurveDef {
            samples,
            ..self.clone()
        })
    }

    pub fn with_name(&self, name: impl Into<String>) -> CurveDef {
        CurveDef {
            name: name.into(),
            ..self.clone()
        }
    }

    fn check_param(&self, t: f64) -> Result<()> {
        let slack = 1e-12 * self.span().max(1.0);
        if t.is_finite() && t >= self.t_min - slack && t <= self.t_max + slack {
            Ok(())
        } else {
            Err(Error::range(format!(
                "t = {t} outside [{}, {}]",
                self.t_min, self.t_max
            )))
        }
    }

    fn eval_pair(x: &Expr, y: &Expr, t: f64) -> Result<Vec2> {
        let ev = |e: &Expr| {
            e.eval(t).map_err(|err| Error::Eval {
                t,
                reason: err.0,
            })
        };
        Ok(Vec2::new(ev(x)?, ev(y)?))
    }

    pub fn position(&self, t: f64) -> Result<Vec2> {
        Self::eval_pair(&self.x, &self.y, t)
    }

    /// Position and exact derivatives at `t`.
    pub fn jet(&self, t: f64) -> Result<CurveJet> {
        self.check_param(t)?;
        let d = &self.derivs;
        Ok(CurveJet {
            p: self.position(t)?,
            d1: Self::eval_pair(&d.x[0], &d.y[0], t)?,
            d2: Self::eval_pair(&d.x[1], &d.y[1], t)?,
            d3: Self::eval_pair(&d.x[2], &d.y[2], t)?,
        })
    }

    pub fn frenet(&self, t: f64) -> Result<FrenetData> {
        let jet = self.jet(t)?;
        FrenetData::from_jet(&jet).ok_or(Error::IrregularPoint {
            t,
            speed: jet.d1.norm(),
        })
    }

    /// Uniform parameter grid with `samples` values; closed curves omit the
    /// duplicated endpoint.
    pub fn sample_grid(&self) -> Vec<f64> {
        grid(self.t_min, self.t_max, self.samples, self.closed)
    }

    /// The curve `λ R(φ) γ`, as a new symbolic definition.
    pub fn rotated_scaled(&self, phi: f64, lambda: f64) -> Result<CurveDef> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::range("scale factor must be finite and nonzero"));
        }
        let (s, c) = phi.sin_cos();
        let lin = |a: f64, b: f64| {
            expr::add(
                expr::mul(Expr::Num(lambda * a), self.x.clone()),
                expr::mul(Expr::Num(lambda * b), self.y.clone()),
            )
        };
        CurveDef::new(
            format!("{}-rot{phi}-scale{lambda}", self.name),
            lin(c, -s),
            lin(s, c),
            self.t_min,
            self.t_max,
            self.samples,
            self.closed,
        )
    }

    /// The inversion image `γ / |γ|²`, as a new symbolic definition.
    pub fn inverted(&self) -> Result<CurveDef> {
        let r2 = || {
            expr::add(
                expr::pow_expr(self.x.clone(), Expr::Num(2.0)),
                expr::pow_expr(self.y.clone(), Expr::Num(2.0)),
            )
        };
        CurveDef::new(
            format!("{}-inverted", self.name),
            expr::div(self.x.clone(), r2()),
            expr::div(self.y.clone(), r2()),
            self.t_min,
            self.t_max,
            self.samples,
            self.closed,
        )
    }

    /// Smallest `|γ|` over the sample grid.
    pub fn min_origin_distance(&self) -> Result<f64> {
        let mut best = f64::INFINITY;
        for t in self.sample_grid() {
            best = best.min(self.position(t)?.norm());
        }
        Ok(best)
    }

    /// Fails with `OriginSingularity` when a grid sample is within the
    /// origin guard.
    pub fn ensure_avoids_origin(&self) -> Result<()> {
        let d = self.min_origin_distance()?;
        if d < tol::ORIGIN_GUARD {
            Err(Error::OriginSingularity { norm: d })
        } else {
            Ok(())
        }
    }

    /// Parse a curve document.
    pub fn parse(text: &str) -> Result<CurveDef> {
        parse_curve(text)
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        Err(Error::range(format!(
            "samples = {samples} below the minimum of {MIN_SAMPLES}"
        )))
    } else {
        Ok(())
    }
}

/// `n` uniformly spaced values on `[a, b]`, omitting `b` when `periodic`.
pub fn grid(a: f64, b: f64, n: usize, periodic: bool) -> Vec<f64> {
    let steps = if periodic { n } else { n - 1 };
    let h = (b - a) / steps as f64;
    (0..n)
        .map(|i| if !periodic && i == n - 1 { b } else { a + h * i as f64 })
        .collect()
}

/// Uniform grid of `samples` points on `[t_min, t_max]`.
pub fn sample_grid_n(curve: &CurveDef, samples: usize) -> Result<Vec<f64>> {
    check_samples(samples)?;
    Ok(grid(curve.t_min, curve.t_max, samples, curve.closed))
}

impl fmt::Display for CurveDef {
    /// The document form accepted by [`parse_curve`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name = \"{}\"", self.name)?;
        writeln!(f, "x = {}", self.x)?;
        writeln!(f, "y = {}", self.y)?;
        writeln!(f, "t_min = {}", Expr::Num(self.t_min))?;
        writeln!(f, "t_max = {}", Expr::Num(self.t_max))?;
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "closed = {}", self.closed)
    }
}

const KEYS: [&str; 7] = ["x", "y", "t_min", "t_max", "name", "samples", "closed"];

/// Parse a curve document: one `key = value` per line, `#` comments.
///
/// Required keys are `x`, `y`, `t_min` and `t_max`; `name`, `samples`
/// (default 1024) and `closed` (default true) are optional.
pub fn parse_curve(text: &str) -> Result<CurveDef> {
    let mut x = None;
    let mut y = None;
    let mut t_min = None;
    let mut t_max = None;
    let mut name = None;
    let mut samples = None;
    let mut closed = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError {
                line,
                column: col + content.trim().len(),
                found: "end of line".into(),
                expected: vec!["'='".into()],
            }
            .into());
        };
        let key = content[..eq].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let value = &content[eq + 1..];
        let value_col = eq + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        let at = Cursor {
            line,
            column: value_col,
        };
        let bad_value = |expected: &str| -> Error {
            ParseError {
                line,
                column: value_col,
                found: format!("'{value}'"),
                expected: vec![expected.into()],
            }
            .into()
        };
        let slot_taken = match key {
            "x" => x.replace(parse_expr_at(value, at)?).is_some(),
            "y" => y.replace(parse_expr_at(value, at)?).is_some(),
            "t_min" => t_min.replace(constant(value, at)?).is_some(),
            "t_max" => t_max.replace(constant(value, at)?).is_some(),
            "name" => {
                let s = value
                    .strip_prefix('"')
                    .and_then(|v| v.strip_suffix('"'))
                    .filter(|s| !s.contains('"'))
                    .ok_or_else(|| bad_value("quoted string"))?;
                name.replace(s.to_string()).is_some()
            }
            "samples" => {
                let n: usize = value.parse().map_err(|_| bad_value("positive integer"))?;
                samples.replace(n).is_some()
            }
            "closed" => {
                let b = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad_value("true or false")),
                };
                closed.replace(b).is_some()
            }
            _ => {
                return Err(ParseError {
                    line,
                    column: key_col,
                    found: format!("key '{key}'"),
                    expected: KEYS.iter().map(|k| k.to_string()).collect(),
                }
                .into())
            }
        };
        if slot_taken {
            return Err(ParseError {
                line,
                column: key_col,
                found: format!("duplicate key '{key}'"),
                expected: vec![],
            }
            .into());
        }
    }

    let missing = |what: &str| -> Error {
        ParseError {
            line: last_line + 1,
            column: 1,
            found: "end of document".into(),
            expected: vec![format!("key '{what}'")],
        }
        .into()
    };
    CurveDef::new(
        name.unwrap_or_else(|| "curve".to_string()),
        x.ok_or_else(|| missing("x"))?,
        y.ok_or_else(|| missing("y"))?,
        t_min.ok_or_else(|| missing("t_min"))?,
        t_max.ok_or_else(|| missing("t_max"))?,
        samples.unwrap_or(DEFAULT_SAMPLES),
        closed.unwrap_or(true),
    )
}

fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn constant(src: &str, at: Cursor) -> Result<f64> {
    let e = parse_expr_at(src, at)?;
    if !e.is_constant() {
        return Err(Error::range(format!(
            "line {}: parameter bound '{src}' depends on t",
            at.line
        )));
    }
    e.eval(0.0).map_err(|err| Error::Eval {
        t: 0.0,
        reason: err.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    const ELLIPSE_DOC: &str = "x = cos(t)\ny = sin(t)/sqrt(3)\nt_min = 0\nt_max = 2*pi";

    #[test]
    fn parses_ellipse_document() {
        let c = parse_curve(ELLIPSE_DOC).unwrap();
        assert_eq!(c.t_min(), 0.0);
        assert_eq!(c.t_max(), TAU);
        assert_eq!(c.samples(), DEFAULT_SAMPLES);
        assert!(c.closed());
        let p = c.position(FRAC_PI_2).unwrap();
        assert!((p.y - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn parses_circle_with_options_and_comments() {
        let doc = "# unit circle\nname = \"circle # one\"\nx = cos(t)  # abscissa\ny = sin(t)\n\nt_min = 0\nt_max = 2*pi\nsamples = 64\nclosed = true\n";
        let c = parse_curve(doc).unwrap();
        assert_eq!(c.name(), "circle # one");
        assert_eq!(c.samples(), 64);
    }

    #[test]
    fn unclosed_parenthesis() {
        match parse_curve("x = cos(t\ny = t").unwrap_err() {
            Error::Parse(e) => {
                assert_eq!((e.line, e.column), (1, 10));
                assert!(e.expected.contains(&"')'".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn document_errors() {
        let base = "x = t\ny = t\nt_min = 0\nt_max = 1\nclosed = false\n";
        assert!(parse_curve(base).is_ok());
        assert!(matches!(
            parse_curve("x = t\ny = t\nt_min = 1\nt_max = 1\nclosed = false"),
            Err(Error::Range(_))
        ));
        assert!(matches!(parse_curve("x = t\ny = t\nt_min = 0"), Err(Error::Parse(_))));
        assert!(matches!(parse_curve(&format!("{base}z = 1")), Err(Error::Parse(_))));
        assert!(matches!(parse_curve(&format!("{base}x = 1")), Err(Error::Parse(_))));
        assert!(matches!(parse_curve(&format!("{base}samples = many")), Err(Error::Parse(_))));
        assert!(matches!(parse_curve(&format!("{base}samples = 8")), Err(Error::Range(_))));
        assert!(matches!(parse_curve("x = t\ny = t\nt_min = t\nt_max = 1"), Err(Error::Range(_))));
        // default closed = true, but the endpoints differ
        assert!(matches!(parse_curve("x = t\ny = t\nt_min = 0\nt_max = 1"), Err(Error::Range(_))));
        assert!(matches!(parse_curve("x = t\ny t"), Err(Error::Parse(_))));
    }

    #[test]
    fn print_parse_fixed_point() {
        for c in builtin::all() {
            let printed = c.to_string();
            let again = parse_curve(&printed).unwrap();
            assert_eq!(again.to_string(), printed);
            assert_eq!(again.t_max(), c.t_max());
        }
    }

    #[test]
    fn jet_examples() {
        let e = builtin::ellipse();
        let j = e.jet(0.0).unwrap();
        assert!((j.p - Vec2::new(1.0, 0.0)).norm() < 1e-15);
        assert!((j.d1 - Vec2::new(0.0, 1.0 / 3f64.sqrt())).norm() < 1e-15);

        let c = builtin::circle();
        let j = c.jet(FRAC_PI_2).unwrap();
        assert!((j.p - Vec2::new(0.0, 1.0)).norm() < 1e-15);
        assert!((j.d1 - Vec2::new(-1.0, 0.0)).norm() < 1e-15);
        let j0 = c.jet(0.0).unwrap();
        assert!((j0.d3 - Vec2::new(0.0, -1.0)).norm() < 1e-15);

        assert!(matches!(c.jet(7.0), Err(Error::Range(_))));
        let bad = parse_curve("x = log(t)\ny = t\nt_min = -1\nt_max = 1\nclosed = false");
        assert!(matches!(bad.and_then(|c| c.jet(-0.5)), Err(Error::Eval { .. })));
    }

    #[test]
    fn frenet_examples() {
        let e = builtin::ellipse();
        let f = e.frenet(0.0).unwrap();
        assert!((f.t_hat - Vec2::new(0.0, 1.0)).norm() < 1e-15);
        assert!((f.n_hat - Vec2::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((f.speed - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((f.kappa - 3.0).abs() < 1e-13);
        assert!(f.kappa_prime_arc.abs() < 1e-12);

        // κ(t) = ab / (a² sin² t + b² cos² t)^{3/2}
        let b = 1.0 / 3f64.sqrt();
        for &t in &[0.3f64, 1.0, 2.5, 4.0] {
            let closed_form = b / (t.sin().powi(2) + b * b * t.cos().powi(2)).powf(1.5);
            assert!((e.frenet(t).unwrap().kappa - closed_form).abs() < 1e-12);
        }

        let c = builtin::circle();
        for &t in &[0.0, 1.0, PI, 5.0] {
            let f = c.frenet(t).unwrap();
            assert!((f.kappa - 1.0).abs() < 1e-14);
            assert!((f.speed - 1.0).abs() < 1e-15);
        }

        let cusp = builtin::cusp();
        assert!(matches!(cusp.frenet(0.0), Err(Error::IrregularPoint { .. })));
    }

    #[test]
    fn kappa_prime_matches_finite_difference() {
        let e = builtin::ellipse();
        for &t in &[0.2, 0.9, 2.0, 3.3, 5.5] {
            let h = 1e-5;
            let k = |s: f64| e.frenet(s).unwrap().kappa;
            let dk_dt = (k(t + h) - k(t - h)) / (2.0 * h);
            let f = e.frenet(t).unwrap();
            assert!((dk_dt / f.speed - f.kappa_prime_arc).abs() < 1e-6);
        }
    }

    #[test]
    fn grids() {
        let c = builtin::circle();
        assert_eq!(grid(0.0, 1.0, 5, false), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = grid(0.0, TAU, 4, true);
        assert_eq!(g, vec![0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]);
        assert!(matches!(sample_grid_n(&c, 8), Err(Error::Range(_))));
        assert_eq!(c.sample_grid().len(), c.samples());
        assert!(matches!(c.with_samples(8), Err(Error::Range(_))));
    }

    #[test]
    fn rotated_and_inverted_definitions() {
        let c = builtin::circle();
        let r = c.rotated_scaled(FRAC_PI_2, 1.0).unwrap();
        for &t in &[0.0, 1.0, 2.0] {
            let p = r.position(t).unwrap();
            assert!((p - Vec2::new(-t.sin(), t.cos())).norm() < 1e-15);
        }
        let e2 = builtin::ellipse().rotated_scaled(0.0, 2.0).unwrap();
        let p = e2.position(1.0).unwrap();
        assert!((p - Vec2::new(2.0 * 1f64.cos(), 2.0 * 1f64.sin() / 3f64.sqrt())).norm() < 1e-15);
        assert!(matches!(c.rotated_scaled(0.0, 0.0), Err(Error::Range(_))));

        let off = builtin::off_center_circle();
        let inv = off.inverted().unwrap();
        let p = off.position(0.7).unwrap();
        assert!((inv.position(0.7).unwrap() - p / p.norm_squared()).norm() < 1e-15);
    }
}
