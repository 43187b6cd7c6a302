//! Named verification suites: each identity is evaluated on a curve and
//! compared with its tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::fmt;

use clap::ValueEnum;
use primitivoid::envelope::{envelope, is_degenerate, make_family, FamilyKind};
use primitivoid::frame::{finite_difference_curvature, finite_difference_velocity};
use primitivoid::frontal::{
    composition_check_sampled, frontal_antipedal, frontal_invert, frontal_parallel_primitivoid,
    frontal_pedal, frontal_primitive, frontal_slant_primitivoid, lift_front,
};
use primitivoid::geom::invert;
use primitivoid::roots::find_roots_periodic;
use primitivoid::singularity::{
    classify_cusp, cusp_criterion, detect_cusps_numeric, osculating_circle, regular_parts,
    primitive_singularities, CuspClass,
};
use primitivoid::transforms::*;
use primitivoid::{tol, CurveDef, Error, MappedCurve, Result};

/// Figure angles plus one generic value.
pub const SLANT_ANGLES: [f64; 5] = [0.0, PI / 10.0, FRAC_PI_4, FRAC_PI_3, 2.0];

/// Relative tolerance of the sampled inversion curvature.
const INVERSION_CURVATURE: f64 = 1e-5;

/// Regular parts of a derived curve, resolved a decade below the
/// tolerance of the identities checked there.
fn regular(mc: &MappedCurve) -> Vec<bool> {
    regular_parts(mc, 0.1 * tol::SAMPLED_IDENTITY)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Inversion,
    Duality,
    Parallel,
    Slant,
    InversePair,
    Oracle,
    Singularity,
    Frontal,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Inversion,
        Suite::Duality,
        Suite::Parallel,
        Suite::Slant,
        Suite::InversePair,
        Suite::Oracle,
        Suite::Singularity,
        Suite::Frontal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Inversion => "inversion",
            Suite::Duality => "duality",
            Suite::Parallel => "parallel",
            Suite::Slant => "slant",
            Suite::InversePair => "inverse-pair",
            Suite::Oracle => "oracle",
            Suite::Singularity => "singularity",
            Suite::Frontal => "frontal",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    /// Pass when the value is at most this.
    AtMost(f64),
    /// Pass when the value is at least this.
    AtLeast(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub bound: Bound,
}

impl Check {
    /// NaN never passes.
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost(b) => self.value <= b,
            Bound::AtLeast(b) => self.value >= b,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, b) = match self.bound {
            Bound::AtMost(b) => ("<=", b),
            Bound::AtLeast(b) => (">=", b),
        };
        write!(
            f,
            "{}\t{}\t{:.3e}\t{op} {:.0e}\t{}",
            self.suite,
            self.name,
            self.value,
            b,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub curve: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# curve {}", self.curve)?;
        writeln!(f, "suite\tidentity\tresidual\ttolerance\tresult")?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "# {} checks, {} failed",
            self.checks.len(),
            failed
        )
    }
}

struct Recorder<'a> {
    suite: &'static str,
    out: &'a mut Vec<Check>,
}

impl Recorder<'_> {
    fn at_most(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            value,
            bound: Bound::AtMost(tol),
        });
    }

    fn at_least(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            value,
            bound: Bound::AtLeast(bound),
        });
    }

    /// Record a boolean condition as residual 0 (holds) or 1 (fails).
    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.at_most(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

/// Run a suite (or all of them) on a curve.
pub fn run(suite: Suite, curve: &CurveDef) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        curve: curve.name().to_string(),
        checks: Vec::new(),
    };
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        let mut rec = Recorder {
            suite: s.name(),
            out: &mut report.checks,
        };
        match s {
            Suite::Inversion => inversion(curve, &mut rec)?,
            Suite::Duality => duality(curve, &mut rec)?,
            Suite::Parallel => parallel(curve, &mut rec)?,
            Suite::Slant => slant(curve, &mut rec)?,
            Suite::InversePair => inverse_pair(curve, &mut rec)?,
            Suite::Oracle => oracle(curve, &mut rec)?,
            Suite::Singularity => singularity(curve, &mut rec)?,
            Suite::Frontal => frontal(curve, &mut rec)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(report)
}

fn inversion(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    c.ensure_avoids_origin()?;
    let src = sampled(c)?;
    let mut involution: f64 = 0.0;
    let mut conformal: f64 = 0.0;
    for &p in &src.points {
        let q = invert(p)?;
        involution = involution.max((invert(q)? - p).norm() / p.norm());
        conformal = conformal.max((q.norm() * p.norm() - 1.0).abs());
    }
    rec.at_most("involution", involution, 1e-12);
    rec.at_most("conformal scaling", conformal, 1e-12);

    let pe = pedal(c)?;
    let ap = antipedal(c)?;
    rec.at_most("inverse of antipedal = pedal", invert_mapped(&ap).max_scaled_distance(&pe), tol::IDENTITY);
    rec.at_most("inverse of pedal = antipedal", invert_mapped(&pe).max_scaled_distance(&ap), tol::IDENTITY);

    // compare only where the finite differences resolve the curvature a
    // decade below the tolerance; curvature blows up at the source's cusps
    let inv = invert_mapped(&src);
    let fd = finite_difference_curvature(&inv);
    let mut worst: f64 = 0.0;
    let mut compared = 0usize;
    for (i, &t) in src.grid.iter().enumerate() {
        let Some((k, err)) = fd[i] else { continue };
        if err > 0.1 * INVERSION_CURVATURE * k.abs().max(1.0) {
            continue;
        }
        let exact = inversion_curvature(c, t)?;
        worst = worst.max((k - exact).abs() / exact.abs().max(1.0));
        compared += 1;
    }
    rec.at_least(
        "inversion curvature samples resolved (fraction)",
        compared as f64 / src.len() as f64,
        0.5,
    );
    rec.at_most("inversion curvature vs finite differences", worst, INVERSION_CURVATURE);

    if c.closed() {
        vertices_shared(c, rec)?;
    }
    Ok(())
}

/// Sign-change roots of `κ'` against those of the inversion image's
/// curvature derivative; residual is the worst offset in grid steps, or
/// infinity on a count mismatch.
fn vertices_shared(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let grid = c.sample_grid();
    let h = grid[1] - grid[0];
    let kappa_prime = |t: f64| c.frenet(t).map_or(f64::NAN, |f| f.kappa_prime_arc);
    let flat = grid.iter().map(|&t| kappa_prime(t).abs()).fold(0.0, f64::max);
    if flat <= 1e-9 {
        // constant curvature: every point is a vertex, and the image must
        // have constant curvature too
        let image = grid
            .iter()
            .map(|&t| inversion_curvature_derivative(c, t).map(f64::abs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        rec.at_most("constant curvature preserved by inversion", image, 1e-8);
        return Ok(());
    }
    let kp = find_roots_periodic(kappa_prime, &grid, c.span());
    let kpi = find_roots_periodic(
        |t| inversion_curvature_derivative(c, t).unwrap_or(f64::NAN),
        &grid,
        c.span(),
    );
    let inv = c.inverted()?;
    let kq = find_roots_periodic(|t| inv.frenet(t).map_or(f64::NAN, |f| f.kappa_prime_arc), &grid, c.span());
    for (label, other) in [("derivative formula", &kpi), ("inverted curve", &kq)] {
        let offset = if other.len() != kp.len() {
            f64::INFINITY
        } else {
            kp.iter()
                .zip(other.iter())
                .map(|(a, b)| (a - b).abs() / h)
                .fold(0.0, f64::max)
        };
        rec.at_most(format!("vertices shared with inversion ({label}), grid steps"), offset, 1.0);
    }
    Ok(())
}

fn duality(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    c.ensure_avoids_origin()?;
    let inv = c.inverted()?;
    let pr = primitive(c)?;
    let ap = antipedal(&inv)?;
    let via = invert_mapped(&pedal(&inv)?);
    rec.at_most("primitive = antipedal of inverse", pr.max_scaled_distance(&ap), tol::IDENTITY);
    rec.at_most("primitive = inverse of pedal of inverse", pr.max_scaled_distance(&via), tol::IDENTITY);
    rec.at_least("samples compared", pr.overlap(&ap) as f64, 1.0);
    Ok(())
}

fn parallel(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let pr = primitive(c)?;
    for r in [2.0, -1.0, 0.5] {
        let par = parallel_primitivoid(c, r)?;
        let scaled = pr.map_points(pr.kind().clone(), |p| p * r);
        let of_scaled = primitive(&transform_curve(c, 0.0, r)?)?;
        rec.at_most(format!("r={r}: r-primitivoid = r * primitive"), par.max_scaled_distance(&scaled), tol::IDENTITY);
        rec.at_most(format!("r={r}: r-primitivoid = primitive of r*curve"), par.max_scaled_distance(&of_scaled), tol::IDENTITY);
    }
    Ok(())
}

fn slant(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let pr = primitive(c)?;
    for phi in SLANT_ANGLES {
        let direct = slant_primitivoid_direct(c, phi)?;
        let rotated = slant_primitivoid(c, phi)?;
        rec.at_most(format!("φ={phi:.6}: perp form = rotated form"), direct.max_scaled_distance(&rotated), tol::IDENTITY);
        let similar = pr.map_points(pr.kind().clone(), |p| p.rotate(phi) * phi.cos());
        rec.at_most(format!("φ={phi:.6}: similar to primitive"), rotated.max_scaled_distance(&similar), tol::IDENTITY);
        if c.min_origin_distance()? > tol::ORIGIN_GUARD {
            let inv_rot = transform_curve(c, phi, 1.0)?.inverted()?;
            let ap = antipedal(&inv_rot)?;
            let ap = ap.map_points(ap.kind().clone(), |p| p * phi.cos());
            rec.at_most(format!("φ={phi:.6}: = cosφ antipedal of inverted rotation"), rotated.max_scaled_distance(&ap), tol::IDENTITY);
        }
        let par = parallel_primitivoid(c, phi.cos())?;
        let par = par.map_points(par.kind().clone(), |p| p.rotate(phi));
        rec.at_most(format!("φ={phi:.6}: = rotated cosφ-primitivoid"), rotated.max_scaled_distance(&par), tol::IDENTITY);
    }
    let degenerate = slant_primitivoid(c, FRAC_PI_2)?;
    let worst = degenerate.ok_points().map(|(_, p)| p.norm()).fold(0.0, f64::max);
    rec.at_most("φ=π/2 collapses to the origin", worst, 1e-12);
    Ok(())
}

/// Largest distance on samples flagged true in `mask`.
fn masked_distance(a: &MappedCurve, b: &MappedCurve, mask: &[bool]) -> f64 {
    a.ok_points()
        .filter(|&(i, _)| mask[i] && b.flags[i].is_ok())
        .map(|(i, p)| (p - b.points[i]).norm())
        .fold(0.0, f64::max)
}

fn inverse_pair(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let src = sampled(c)?;
    let pr = primitive(c)?;
    let back = pedal(&pr)?;
    rec.at_most(
        "pedal of primitive = curve (regular parts)",
        masked_distance(&back, &src, &regular(&pr)),
        tol::SAMPLED_IDENTITY,
    );
    let pe = pedal(c)?;
    let back = primitive(&pe)?;
    rec.at_most(
        "primitive of pedal = curve (regular parts)",
        masked_distance(&back, &src, &regular(&pe)),
        tol::SAMPLED_IDENTITY,
    );
    let phi = PI / 10.0;
    let target = sampled(&transform_curve(c, phi, phi.cos())?)?;
    let sl = slant_primitivoid(c, phi)?;
    rec.at_most(
        "pedal of π/10-primitivoid = cosφ rotated curve",
        masked_distance(&pedal(&sl)?, &target, &regular(&sl)),
        tol::SAMPLED_IDENTITY,
    );
    rec.at_most(
        "π/10-primitivoid of pedal = cosφ rotated curve",
        masked_distance(&slant_primitivoid(&pe, phi)?, &target, &regular(&pe)),
        tol::SAMPLED_IDENTITY,
    );
    Ok(())
}

fn oracle(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let grid = c.sample_grid();
    let cases = [
        (FamilyKind::Primitive, primitive(c)?),
        (FamilyKind::Parallel(2.0), parallel_primitivoid(c, 2.0)?),
        (FamilyKind::Parallel(-1.0), parallel_primitivoid(c, -1.0)?),
        (FamilyKind::Slant(PI / 10.0), slant_primitivoid(c, PI / 10.0)?),
        (FamilyKind::Slant(FRAC_PI_4), slant_primitivoid(c, FRAC_PI_4)?),
        (FamilyKind::Slant(FRAC_PI_3), slant_primitivoid(c, FRAC_PI_3)?),
        (FamilyKind::Antipedal, antipedal(c)?),
    ];
    for (kind, closed) in cases {
        let fam = make_family(kind, c)?;
        let env = envelope(&fam, &grid)?;
        rec.at_most(format!("envelope = closed form: {kind}"), env.max_scaled_distance(&closed), tol::IDENTITY);
    }
    // flagged closed-form samples must be degenerate for the oracle too,
    // at the sample or a neighbour
    let pr = primitive(c)?;
    let fam = make_family(FamilyKind::Primitive, c)?;
    let n = grid.len();
    let degenerate = |i: usize| fam.jet(grid[i]).map_or(true, |j| is_degenerate(&j));
    let disagreements = (0..n)
        .filter(|&i| pr.flags[i] == primitivoid::Flag::NearSingular)
        .filter(|&i| {
            let near = [i.checked_sub(1), Some(i), (i + 1 < n).then_some(i + 1)];
            !near.into_iter().flatten().any(degenerate)
        })
        .count();
    rec.at_most("near-singular samples missed by the oracle", disagreements as f64, 0.0);
    Ok(())
}

fn singularity(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let reports = primitive_singularities(c)?;
    let grid = c.sample_grid();
    let h = grid[1] - grid[0];
    let mut criterion: f64 = 0.0;
    let mut osculating: f64 = 0.0;
    let mut inversion_sign = true;
    let mut ordinary = 0;
    for r in &reports {
        criterion = criterion.max(cusp_criterion(c, r.t)?.abs());
        let osc = osculating_circle(c, r.t)?;
        osculating = osculating.max((osc.center.norm() - osc.radius).abs());
        let (a, b) = (inversion_curvature(c, r.t - h)?, inversion_curvature(c, r.t + h)?);
        inversion_sign &= a * b < 0.0;
        match classify_cusp(c, r.t) {
            Ok(cls) if cls.class == CuspClass::OrdinaryCusp => ordinary += 1,
            Ok(_) | Err(Error::HypothesisViolated(_)) => {}
            Err(e) => return Err(e),
        }
    }
    rec.at_most("criterion at roots", criterion, tol::ROOT_RESIDUAL);
    rec.at_most("osculating circle through origin", osculating, 1e-8);
    rec.holds("inversion curvature changes sign at roots", inversion_sign);
    rec.at_least("ordinary cusps among roots", ordinary as f64, reports.len() as f64);

    let pr = primitive(c)?;
    let numeric = detect_cusps_numeric(&pr);
    let located = numeric.len() == reports.len()
        && reports.iter().all(|r| {
            numeric.iter().any(|&t| {
                let d = (t - r.t).abs();
                d.min(c.span() - d) <= h
            })
        });
    rec.holds(
        format!("numeric cusps of primitive match roots ({} vs {})", numeric.len(), reports.len()),
        located,
    );
    if c.closed() {
        vertices_shared(c, rec)?;
    }
    Ok(())
}

fn frontal(c: &CurveDef, rec: &mut Recorder) -> Result<()> {
    let lc = lift_front(c)?;
    let s = lc.sample()?;
    rec.at_most("Legendrian residual", s.max_legendrian_residual(), tol::LEGENDRIAN);
    let unit = s.jets.iter().map(|j| (j.nu.norm() - 1.0).abs()).fold(0.0, f64::max);
    rec.at_most("unit normal", unit, tol::UNIT_NORM);

    let normals = s.normals_as_curve();
    let dnu = finite_difference_velocity(&normals);
    let mut closure: f64 = 0.0;
    for (j, d) in s.jets.iter().zip(&dnu) {
        let Some(d) = *d else { continue };
        let k = j.curvature();
        closure = closure.max((d - j.mu() * k.ell).norm());
        closure = closure.max((d.perp() + j.nu * k.ell).norm());
    }
    rec.at_most("Frenet-type closure (finite differences)", closure, 1e-6);

    let flipped = s.negate_nu();
    let sign = [
        frontal_pedal(&s).max_distance(&frontal_pedal(&flipped)),
        frontal_antipedal(&s).max_distance(&frontal_antipedal(&flipped)),
        frontal_primitive(&s)?.to_mapped().max_distance(&frontal_primitive(&flipped)?.to_mapped()),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    rec.at_most("invariance under ν -> -ν", sign, 1e-12);

    let pr = frontal_primitive(&s)?;
    let via = primitivoid::transforms::invert_mapped(&frontal_pedal(&frontal_invert(&s)?));
    rec.at_most("primitive = inverse of pedal of inverse", pr.to_mapped().max_scaled_distance(&via), tol::IDENTITY);

    let phi = PI / 10.0;
    for (label, derived) in [
        ("primitive", pr.clone()),
        ("2-primitivoid", frontal_parallel_primitivoid(&s, 2.0)?),
        ("π/10-primitivoid", frontal_slant_primitivoid(&s, phi)?),
    ] {
        rec.at_most(format!("{label} is a frontal"), derived.max_legendrian_residual(), tol::LEGENDRIAN);
    }
    let sl = frontal_slant_primitivoid(&s, phi)?;
    let support = sl.ok_jets().map(|(_, j)| j.p.dot(j.nu).abs()).fold(f64::INFINITY, f64::min);
    rec.at_least("π/10-primitivoid support stays nonzero", support, tol::DENOMINATOR_REL * sl.diameter());

    let r = composition_check_sampled(&s, PI / 10.0, PI / 5.0)?;
    rec.at_most("composition ψ=π/10, φ=π/5", r.residual, 1e-6);
    let z = composition_check_sampled(&s, FRAC_PI_4, FRAC_PI_4)?;
    rec.at_most("composition ψ=φ=π/4: both sides zero", z.lhs_max_norm.max(z.rhs_max_norm), 1e-9);
    let refused = matches!(
        composition_check_sampled(&s, 0.1, FRAC_PI_2),
        Err(Error::HypothesisViolated(_))
    );
    rec.holds("composition refuses φ=π/2", refused);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use primitivoid::builtin;

    #[test]
    fn ellipse_slant_suite_passes() {
        let r = run(Suite::Slant, &builtin::ellipse()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn origin_curve_is_an_input_error() {
        let err = run(Suite::Duality, &builtin::circle_through_origin()).unwrap_err();
        assert!(matches!(err, Error::OriginSingularity { .. }));
    }

    #[test]
    fn report_table_layout() {
        let r = run(Suite::Parallel, &builtin::circle()).unwrap();
        let text = r.to_string();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# curve circle"));
        assert_eq!(lines.next(), Some("suite\tidentity\tresidual\ttolerance\tresult"));
        assert!(lines.next().unwrap().starts_with("parallel\tr=2: r-primitivoid = r * primitive\t"));
        assert!(text.ends_with("# 6 checks, 0 failed"));
    }

    #[test]
    fn nan_residual_fails() {
        let c = Check {
            suite: "x",
            name: "y".into(),
            value: f64::NAN,
            bound: Bound::AtMost(1.0),
        };
        assert!(!c.passed());
    }
}
