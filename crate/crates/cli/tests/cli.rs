use std::path::PathBuf;
use std::process::{Command, Output};

use primitivoid_cli::{corner_points, parse_overlays};

fn curve(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../curves").join(format!("{name}.curve"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primitivoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(sub: &str, name: &str, rest: &[&str]) -> Output {
    let path = curve(name);
    let mut args = vec![sub, "--curve", path.to_str().unwrap()];
    args.extend_from_slice(rest);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn parallel_of_circle_is_radius_two_circle() {
    let o = run_on("transform", "circle", &["--kind", "parallel", "--ratio", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,flag"));
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (x, y): (f64, f64) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        assert!((x.hypot(y) - 2.0).abs() < 1e-12);
        assert_eq!(f[3], "ok");
        rows += 1;
    }
    assert_eq!(rows, 1024);
}

#[test]
fn ellipse_primitive_svg_has_four_corners() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig2.svg");
    let o = run_on("transform", "ellipse", &["--kind", "primitive", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let groups = parse_overlays(&std::fs::read_to_string(svg).unwrap());
    assert_eq!(groups.len(), 2, "source and result");
    let corners: usize = groups[1].iter().map(|r| corner_points(r).len()).sum();
    assert_eq!(corners, 4);
}

#[test]
fn slant_transform_accepts_angle_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let render = |file: &str| {
        let svg = dir.path().join(file);
        let o = run_on("transform", "ellipse", &["--kind", "slant", "--angle", "0.31415", "--svg", svg.to_str().unwrap()]);
        assert!(o.status.success());
        (stdout(&o), std::fs::read(svg).unwrap())
    };
    assert_eq!(render("a.svg"), render("b.svg"));
}

#[test]
fn detect_reports() {
    let o = run_on("detect", "ellipse", &["--what", "primitive-cusps"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.ends_with("\tordinary-cusp")));

    let o = run_on("detect", "ellipse", &["--what", "vertices"]);
    let ts: Vec<f64> = stdout(&o).lines().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(ts.len(), 4);
    for (t, want) in ts.iter().zip([0.0, 1.0, 2.0, 3.0]) {
        assert!((t - want * std::f64::consts::FRAC_PI_2).abs() < 1e-8, "{t}");
    }

    let o = run_on("detect", "circle", &["--what", "inflections"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 0);
}

#[test]
fn verify_slant_on_ellipse_passes() {
    let o = run_on("verify", "ellipse", &["--suite", "slant"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# ") && !stdout(&o).contains("\tFAIL"));
}

#[test]
fn verify_frontal_on_front_fails_only_the_composition_identity() {
    let o = run_on("verify", "front56", &["--suite", "frontal"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failed: Vec<&str> = text.lines().filter(|l| l.ends_with("\tFAIL")).collect();
    assert_eq!(failed.len(), 1, "{text}");
    assert!(failed[0].contains("composition ψ=π/10, φ=π/5"));
}

#[test]
fn curve_through_origin_is_an_input_error() {
    let o = run_on("verify", "circle-through-origin", &["--suite", "duality"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_and_parse_errors() {
    let o = run_on("transform", "circle", &["--kind", "parallel"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["transform", "--kind", "pedal"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.curve");
    std::fs::write(&bad, "x = cos(t\n").unwrap();
    let o = run(&["transform", "--curve", bad.to_str().unwrap(), "--kind", "pedal"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn plot_unit_circle_is_one_closed_polyline() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("circle.svg");
    let o = run_on("plot", "circle", &["--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let groups = parse_overlays(&std::fs::read_to_string(svg).unwrap());
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].len(), 1);
    assert_eq!(groups[0][0].first(), groups[0][0].last());
}

#[test]
fn plot_with_primitivoids_and_family() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let path = svg.to_str().unwrap();
    let o = run_on(
        "plot",
        "ellipse",
        &["--primitivoid", "0", "--primitivoid", "pi/10", "--primitivoid", "pi/4", "--primitivoid", "pi/3", "--svg", path],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(parse_overlays(&text).len(), 5);

    let o = run_on("plot", "front56", &["--family", "primitive", "--svg", path]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"<g class="family""#));
    assert!(text.matches("<line ").count() > 0);
}

#[test]
fn curve_files_match_builtins() {
    for c in primitivoid::builtin::everything() {
        let file = match c.name() {
            "front" => "front56",
            other => other,
        };
        let text = std::fs::read_to_string(curve(file)).unwrap();
        let parsed = primitivoid::parse_curve(&text).unwrap();
        assert_eq!(parsed.to_string(), c.to_string(), "{file}");
    }
}
