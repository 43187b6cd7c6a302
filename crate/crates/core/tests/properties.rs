use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use primitivoid::builtin;
use primitivoid::envelope::{envelope, is_degenerate, make_family, FamilyKind};
use primitivoid::frame::finite_difference_velocity;
use primitivoid::singularity::{
    away_from_cusps, classify_cusp, cusp_criterion, detect_cusps_numeric, osculating_circle,
    primitive_singularities, CuspClass,
};
use primitivoid::transforms::*;
use primitivoid::{CurveDef, MappedCurve, Vec2};

const TOL: f64 = 1e-9;

/// Regular-source curves the closed-form transforms accept everywhere.
fn regular_curves() -> Vec<CurveDef> {
    builtin::everything()
        .into_iter()
        .filter(|c| c.sample_grid().iter().all(|&t| c.frenet(t).is_ok()))
        .filter(|c| c.min_origin_distance().is_ok_and(|d| d > 1e-6))
        .collect()
}

fn rel_distance(a: &MappedCurve, b: &MappedCurve) -> f64 {
    a.max_scaled_distance(b)
}

#[test]
fn duality_primitive_antipedal_pedal() {
    for c in [builtin::ellipse(), builtin::off_center_circle(), builtin::circle(), builtin::radius_two_circle()] {
        let inv = c.inverted().unwrap();
        let pr = primitive(&c).unwrap();
        let ap = antipedal(&inv).unwrap();
        let via_pedal = invert_mapped(&pedal(&inv).unwrap());
        assert!(pr.overlap(&ap) > c.samples() / 2);
        assert!(pr.max_distance(&ap) <= TOL, "{}", c.name());
        assert!(pr.max_distance(&via_pedal) <= TOL, "{}", c.name());
    }
}

#[test]
fn inversion_swaps_pedal_and_antipedal() {
    for c in regular_curves() {
        let pe = pedal(&c).unwrap();
        let ap = antipedal(&c).unwrap();
        assert!(invert_mapped(&ap).max_distance(&pe) <= TOL, "{}", c.name());
        assert!(rel_distance(&invert_mapped(&pe), &ap) <= TOL, "{}", c.name());
    }
}

#[test]
fn parallel_primitivoid_is_scaled_primitive() {
    for c in regular_curves() {
        let pr = primitive(&c).unwrap();
        for r in [2.0, -1.0, 0.5] {
            let par = parallel_primitivoid(&c, r).unwrap();
            let scaled = pr.map_points(pr.kind().clone(), |p| p * r);
            let of_scaled = primitive(&transform_curve(&c, 0.0, r).unwrap()).unwrap();
            assert!(rel_distance(&par, &scaled) <= TOL, "{} r={r}", c.name());
            assert!(rel_distance(&par, &of_scaled) <= TOL, "{} r={r}", c.name());
        }
    }
}

#[test]
fn slant_forms_agree() {
    for c in regular_curves() {
        for phi in [0.0, PI / 10.0, FRAC_PI_4, FRAC_PI_3, 2.0] {
            let direct = slant_primitivoid_direct(&c, phi).unwrap();
            let rotated = slant_primitivoid(&c, phi).unwrap();
            assert!(rel_distance(&direct, &rotated) <= TOL, "{} φ={phi}", c.name());
        }
    }
}

#[test]
fn slant_primitivoids_are_similar() {
    for c in regular_curves() {
        let pr = primitive(&c).unwrap();
        for phi in [0.0, PI / 10.0, FRAC_PI_4, FRAC_PI_3] {
            let sl = slant_primitivoid(&c, phi).unwrap();
            let similar = pr.map_points(pr.kind().clone(), |p| p.rotate(phi) * phi.cos());
            assert!(rel_distance(&sl, &similar) <= TOL);
            assert_eq!(sl.flags, pr.flags);
        }
    }
}

#[test]
fn slant_via_antipedal_and_parallel() {
    for c in [builtin::ellipse(), builtin::off_center_circle(), builtin::circle()] {
        for phi in [PI / 10.0, FRAC_PI_4, FRAC_PI_3] {
            let sl = slant_primitivoid(&c, phi).unwrap();
            let inv_rot = transform_curve(&c, phi, 1.0).unwrap().inverted().unwrap();
            let ap = antipedal(&inv_rot).unwrap();
            let ap = ap.map_points(ap.kind().clone(), |p| p * phi.cos());
            let par = parallel_primitivoid(&c, phi.cos()).unwrap();
            let par = par.map_points(par.kind().clone(), |p| p.rotate(phi));
            assert!(rel_distance(&sl, &ap) <= TOL, "{} φ={phi}", c.name());
            assert!(rel_distance(&sl, &par) <= TOL, "{} φ={phi}", c.name());
        }
    }
}

#[test]
fn degenerate_angle_collapses_to_origin() {
    let sl = slant_primitivoid(&builtin::ellipse(), FRAC_PI_2).unwrap();
    assert!(sl.ok_points().all(|(_, p)| p.norm() <= 1e-15));
    assert!(is_degenerate_angle(3.0 * FRAC_PI_2));
}

#[test]
fn pedal_of_primitive_recovers_curve() {
    let c = builtin::ellipse();
    let src = sampled(&c).unwrap();
    let pr = primitive(&c).unwrap();
    let back = pedal(&pr).unwrap();
    let mask = away_from_cusps(&pr, 4);
    let worst = back
        .ok_points()
        .filter(|&(i, _)| mask[i])
        .map(|(i, p)| (p - src.points[i]).norm())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-6, "{worst:e}");
    assert!(back.ok_count() > c.samples() * 9 / 10);

    let pe = pedal(&c).unwrap();
    let back = primitive(&pe).unwrap();
    assert!(back.max_distance(&src) <= 1e-6);
}

#[test]
fn pedal_of_slant_primitivoid_is_rotated_curve() {
    let c = builtin::ellipse();
    for phi in [PI / 10.0, FRAC_PI_4] {
        let sl = slant_primitivoid(&c, phi).unwrap();
        let pe = pedal(&sl).unwrap();
        let target = sampled(&transform_curve(&c, phi, phi.cos()).unwrap()).unwrap();
        let mask = away_from_cusps(&sl, 4);
        let worst = pe
            .ok_points()
            .filter(|&(i, _)| mask[i])
            .map(|(i, p)| (p - target.points[i]).norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "φ={phi}: {worst:e}");

        let of_pedal = slant_primitivoid(&pedal(&c).unwrap(), phi).unwrap();
        assert!(of_pedal.max_distance(&target) <= 1e-6, "φ={phi}");
    }
}

#[test]
fn inversion_curvature_matches_sampled_inverse() {
    for c in [builtin::ellipse(), builtin::off_center_circle()] {
        let inv = invert_mapped(&sampled(&c).unwrap());
        let v = finite_difference_velocity(&inv);
        let a = primitivoid::frame::finite_difference_acceleration(&inv);
        for (i, &t) in inv.grid.iter().enumerate() {
            let (v, a) = (v[i].unwrap(), a[i].unwrap());
            let fd = v.cross(a) / v.norm().powi(3);
            let exact = inversion_curvature(&c, t).unwrap();
            assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1.0), "{} t={t}", c.name());
        }
    }
    for &t in &[0.0, 1.0, 4.0] {
        let k = inversion_curvature(&builtin::radius_two_circle(), t).unwrap();
        assert!((k - 2.0).abs() < 1e-12);
    }
}

#[test]
fn vertices_survive_inversion() {
    let c = builtin::ellipse();
    let grid = c.sample_grid();
    let period = c.span();
    let kp = primitivoid::roots::find_roots_periodic(|t| c.frenet(t).unwrap().kappa_prime_arc, &grid, period);
    let kpi = primitivoid::roots::find_roots_periodic(
        |t| inversion_curvature_derivative(&c, t).unwrap(),
        &grid,
        period,
    );
    assert_eq!(kp.len(), 4);
    assert_eq!(kp.len(), kpi.len());
    let h = grid[1] - grid[0];
    for (a, b) in kp.iter().zip(&kpi) {
        assert!((a - b).abs() <= h);
    }

    // the symbolically inverted curve has its vertices at the same parameters
    let inv = c.inverted().unwrap();
    let kq = primitivoid::roots::find_roots_periodic(|t| inv.frenet(t).unwrap().kappa_prime_arc, &grid, period);
    assert_eq!(kq.len(), 4);
    for (a, b) in kp.iter().zip(&kq) {
        assert!((a - b).abs() <= h);
    }
}

#[test]
fn envelope_matches_closed_forms() {
    for c in regular_curves() {
        let grid = c.sample_grid();
        let cases: Vec<(FamilyKind, MappedCurve)> = vec![
            (FamilyKind::Primitive, primitive(&c).unwrap()),
            (FamilyKind::Parallel(2.0), parallel_primitivoid(&c, 2.0).unwrap()),
            (FamilyKind::Parallel(-1.0), parallel_primitivoid(&c, -1.0).unwrap()),
            (FamilyKind::Slant(PI / 10.0), slant_primitivoid(&c, PI / 10.0).unwrap()),
            (FamilyKind::Slant(FRAC_PI_4), slant_primitivoid(&c, FRAC_PI_4).unwrap()),
            (FamilyKind::Slant(FRAC_PI_3), slant_primitivoid(&c, FRAC_PI_3).unwrap()),
            (FamilyKind::Antipedal, antipedal(&c).unwrap()),
        ];
        for (kind, closed) in cases {
            let env = envelope(&make_family(kind, &c).unwrap(), &grid).unwrap();
            assert!(env.overlap(&closed) > 0);
            assert!(rel_distance(&env, &closed) <= TOL, "{} {kind}", c.name());
        }
    }
}

#[test]
fn degenerate_detectors_agree() {
    // the off-center circle's primitive has denominators vanishing at
    // t = 2π/3 and 4π/3, both on a 1536-sample grid
    let c = builtin::off_center_circle().with_samples(1536).unwrap();
    let pr = primitive(&c).unwrap();
    let fam = make_family(FamilyKind::Primitive, &c).unwrap();
    let flagged: Vec<usize> = (0..pr.len()).filter(|&i| !pr.flags[i].is_ok()).collect();
    assert!(!flagged.is_empty());
    for i in flagged {
        assert!(is_degenerate(&fam.jet(pr.grid[i]).unwrap()), "i = {i}");
    }
}

#[test]
fn ellipse_primitive_cusps_satisfy_every_characterisation() {
    let c = builtin::ellipse();
    let reports = primitive_singularities(&c).unwrap();
    assert_eq!(reports.len(), 4);
    let numeric = detect_cusps_numeric(&primitive(&c).unwrap());
    assert_eq!(numeric.len(), 4);
    let h = c.span() / c.samples() as f64;
    for (r, n) in reports.iter().zip(&numeric) {
        let t = r.t;
        assert!((t.tan().powi(2) - 0.2).abs() < 1e-9);
        assert!(cusp_criterion(&c, t).unwrap().abs() <= 1e-10);
        let cls = classify_cusp(&c, t).unwrap();
        assert_eq!(cls.class, CuspClass::OrdinaryCusp);
        let osc = osculating_circle(&c, t).unwrap();
        assert!((osc.center.norm() - osc.radius).abs() <= 1e-8);
        // inversion curvature changes sign across the root
        let a = inversion_curvature(&c, t - h).unwrap();
        let b = inversion_curvature(&c, t + h).unwrap();
        assert!(a * b < 0.0);
        assert!((n - t).abs() <= h);
    }
}

#[test]
fn criterion_roots_have_osculating_circle_through_origin() {
    for c in [builtin::ellipse(), builtin::off_center_circle(), builtin::circle_through_origin()] {
        let Ok(reports) = primitive_singularities(&c) else { continue };
        for r in reports {
            let osc = osculating_circle(&c, r.t).unwrap();
            assert!((osc.center.norm() - osc.radius).abs() <= 1e-8, "{}", c.name());
        }
    }
    // converse on the grid: where the osculating circle misses the origin
    // by a margin, the criterion is nonzero
    let c = builtin::ellipse();
    for t in c.sample_grid() {
        let osc = osculating_circle(&c, t).unwrap();
        if (osc.center.norm() - osc.radius).abs() > 1e-3 {
            assert!(cusp_criterion(&c, t).unwrap().abs() > 1e-8);
        }
    }
}

#[test]
fn transforms_map_circle_to_itself() {
    let c = builtin::circle();
    let src = sampled(&c).unwrap();
    for mc in [
        pedal(&c).unwrap(),
        antipedal(&c).unwrap(),
        primitive(&c).unwrap(),
        primitive_of_perp(&c).unwrap().map_points(primitivoid::TransformKind::Source, |p| -p.perp()),
    ] {
        assert!(mc.max_distance(&src) <= 1e-12);
    }
    let cp = contrapedal(&c).unwrap();
    assert!(cp.ok_points().all(|(_, p)| p.norm() <= 1e-15));
    let po = pedaloid(&c, FRAC_PI_2).unwrap();
    assert!(po.max_distance(&src) <= 1e-12);
    assert_eq!(Vec2::new(1.0, 0.0).perp(), Vec2::new(0.0, 1.0));
}
