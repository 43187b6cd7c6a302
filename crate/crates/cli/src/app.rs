//! Command-line definitions and dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use primitivoid::envelope::{envelope, make_family, FamilyKind};
use primitivoid::expr::parse_expr;
use primitivoid::frontal::{
    frontal_antipedal, frontal_parallel_primitivoid, frontal_pedal, frontal_primitive,
    frontal_slant_primitivoid, lift_front,
};
use primitivoid::singularity::{inflections, primitive_singularities, vertices};
use primitivoid::transforms::*;
use primitivoid::{builtin, mapped::Flag, parse_curve, CurveDef, Error, MappedCurve};

use crate::figures::all_figures;
use crate::plot::{render_svg, PlotSpec};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "primitivoid", version, about = "Pedals, primitives and primitivoids of plane curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a transform and write the sampled result as CSV.
    Transform(TransformArgs),
    /// Report inflections, vertices or cusps of the primitive.
    Detect(DetectArgs),
    /// Check identities on a curve against their tolerances.
    Verify(VerifyArgs),
    /// Draw curves, primitivoids and line families as SVG.
    Plot(PlotArgs),
    /// Write the ten reference figures.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Curve file, or the name of a built-in curve.
    #[arg(long, value_name = "FILE")]
    pub curve: String,
    /// Override the curve's sample count.
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Source,
    Pedal,
    Contrapedal,
    Pedaloid,
    Antipedal,
    Primitive,
    Parallel,
    Slant,
    Inversion,
    EnvelopePrimitive,
    EnvelopeParallel,
    EnvelopeSlant,
    EnvelopeAntipedal,
    /// Legendrian lift: `t,x,y,nu_x,nu_y,ell,beta,flag`.
    Lift,
    FrontalPedal,
    FrontalAntipedal,
    FrontalPrimitive,
    FrontalParallel,
    FrontalSlant,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub kind: Kind,
    /// Angle in radians for pedaloid and slant kinds; constant
    /// expressions such as `pi/10` are accepted.
    #[arg(long, value_parser = parse_constant, allow_hyphen_values = true)]
    pub angle: Option<f64>,
    /// Ratio for parallel kinds.
    #[arg(long, value_parser = parse_constant, allow_hyphen_values = true)]
    pub ratio: Option<f64>,
    /// CSV destination; standard output if absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also draw the source and the result.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Inflections,
    Vertices,
    PrimitiveCusps,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub what: What,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Primitive,
    Parallel,
    Slant,
    Antipedal,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Curves to draw; repeat for several overlays.
    #[arg(long, value_name = "FILE", required = true)]
    pub curve: Vec<String>,
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
    /// Add the slant primitivoid of the first curve at this angle; repeatable.
    #[arg(long, value_name = "ANGLE", value_parser = parse_constant, allow_hyphen_values = true)]
    pub primitivoid: Vec<f64>,
    /// Draw lines of this family over the first curve.
    #[arg(long)]
    pub family: Option<Family>,
    /// Number of family lines.
    #[arg(long, default_value_t = 64)]
    pub lines: usize,
    /// Angle of a slant family.
    #[arg(long, value_parser = parse_constant, allow_hyphen_values = true)]
    pub angle: Option<f64>,
    /// Ratio of a parallel family.
    #[arg(long, value_parser = parse_constant, allow_hyphen_values = true)]
    pub ratio: Option<f64>,
    #[arg(long, value_name = "PATH")]
    pub svg: PathBuf,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "figures")]
    pub out: PathBuf,
    #[arg(long, value_name = "N", default_value_t = 1024)]
    pub samples: usize,
}

/// A constant expression such as `0.31415`, `-1` or `pi/10`.
pub fn parse_constant(src: &str) -> Result<f64, String> {
    let e = parse_expr(src).map_err(|e| e.to_string())?;
    if !e.is_constant() {
        return Err(format!("`{src}` depends on t"));
    }
    e.eval(0.0).map_err(|e| e.0)
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match run(cli, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Transform(a) => transform(a, stdout, stderr),
        Command::Detect(a) => detect(a, stdout),
        Command::Verify(a) => verify_cmd(a, stdout),
        Command::Plot(a) => plot(a),
        Command::Figures(a) => figures(a, stdout),
    }
}

/// Load a curve file, falling back to a built-in name.
pub fn load_curve(spec: &str, samples: Option<usize>) -> Result<CurveDef, Failure> {
    let path = Path::new(spec);
    let curve = if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{spec}: {e}")))?;
        parse_curve(&text).map_err(|e| Failure::input(format!("{spec}: {e}")))?
    } else if let Some(c) = builtin::by_name(spec) {
        c
    } else {
        return Err(Failure::input(format!(
            "{spec}: no such file or built-in curve"
        )));
    };
    match samples {
        Some(n) => Ok(curve.with_samples(n)?),
        None => Ok(curve),
    }
}

fn require(value: Option<f64>, flag: &str, kind: Kind) -> Result<f64, Failure> {
    value.ok_or_else(|| {
        let name = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Failure::usage(format!("--kind {name} requires {flag}"))
    })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn flag_summary(mc: &MappedCurve) -> String {
    let count = |f: Flag| mc.flags.iter().filter(|&&g| g == f).count();
    format!(
        "{} samples: {} ok, {} near_singular, {} undefined",
        mc.len(),
        count(Flag::Ok),
        count(Flag::NearSingular),
        count(Flag::Undefined)
    )
}

fn transform(a: TransformArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let c = load_curve(&a.curve.curve, a.curve.samples)?;
    let kind = a.kind;
    let angle = || require(a.angle, "--angle", kind);
    let ratio = || require(a.ratio, "--ratio", kind);
    let family = |fk: FamilyKind| -> Result<MappedCurve, Failure> {
        Ok(envelope(&make_family(fk, &c)?, &c.sample_grid())?)
    };
    let lifted = || -> Result<_, Failure> { Ok(lift_front(&c)?.sample()?) };
    let result = match kind {
        Kind::Source => sampled(&c)?,
        Kind::Pedal => pedal(&c)?,
        Kind::Contrapedal => contrapedal(&c)?,
        Kind::Pedaloid => pedaloid(&c, angle()?)?,
        Kind::Antipedal => antipedal(&c)?,
        Kind::Primitive => primitive(&c)?,
        Kind::Parallel => parallel_primitivoid(&c, ratio()?)?,
        Kind::Slant => slant_primitivoid(&c, angle()?)?,
        Kind::Inversion => {
            c.ensure_avoids_origin()?;
            invert_mapped(&sampled(&c)?)
        }
        Kind::EnvelopePrimitive => family(FamilyKind::Primitive)?,
        Kind::EnvelopeParallel => family(FamilyKind::Parallel(ratio()?))?,
        Kind::EnvelopeSlant => family(FamilyKind::Slant(angle()?))?,
        Kind::EnvelopeAntipedal => family(FamilyKind::Antipedal)?,
        Kind::Lift => {
            let s = lifted()?;
            emit(&a.out, &s.to_csv(), stdout)?;
            let mc = s.to_mapped();
            let _ = writeln!(stderr, "{}", flag_summary(&mc));
            write_transform_svg(&a.svg, &c, mc)?;
            return Ok(EXIT_OK);
        }
        Kind::FrontalPedal => frontal_pedal(&lifted()?),
        Kind::FrontalAntipedal => frontal_antipedal(&lifted()?),
        Kind::FrontalPrimitive => frontal_primitive(&lifted()?)?.to_mapped(),
        Kind::FrontalParallel => frontal_parallel_primitivoid(&lifted()?, ratio()?)?.to_mapped(),
        Kind::FrontalSlant => frontal_slant_primitivoid(&lifted()?, angle()?)?.to_mapped(),
    };
    emit(&a.out, &result.to_csv(), stdout)?;
    let _ = writeln!(stderr, "{}", flag_summary(&result));
    write_transform_svg(&a.svg, &c, result)?;
    Ok(EXIT_OK)
}

fn write_transform_svg(path: &Option<PathBuf>, c: &CurveDef, result: MappedCurve) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    let mut spec = PlotSpec::new();
    spec.push_source(c)?;
    spec.push(result);
    write_file(path, &render_svg(&spec)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn detect(a: DetectArgs, stdout: &mut dyn Write) -> Outcome {
    let c = load_curve(&a.curve.curve, a.curve.samples)?;
    let reports = match a.what {
        What::Inflections => inflections(&c)?,
        What::Vertices => vertices(&c)?,
        What::PrimitiveCusps => primitive_singularities(&c)?,
    };
    let mut text = String::new();
    for r in reports {
        text.push_str(&r.to_string());
        text.push('\n');
    }
    emit(&a.out, &text, stdout)?;
    Ok(EXIT_OK)
}

fn verify_cmd(a: VerifyArgs, stdout: &mut dyn Write) -> Outcome {
    let c = load_curve(&a.curve.curve, a.curve.samples)?;
    let report = verify::run(a.suite, &c)?;
    emit(&a.out, &format!("{report}\n"), stdout)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn plot(a: PlotArgs) -> Outcome {
    let curves = a
        .curve
        .iter()
        .map(|s| load_curve(s, a.samples))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &curves[0];
    let mut spec = PlotSpec::new();
    for c in &curves {
        spec.push_source(c)?;
    }
    for &phi in &a.primitivoid {
        spec.push(slant_primitivoid(first, phi)?);
    }
    if let Some(f) = a.family {
        let kind = match f {
            Family::Primitive => FamilyKind::Primitive,
            Family::Antipedal => FamilyKind::Antipedal,
            Family::Parallel => FamilyKind::Parallel(
                a.ratio.ok_or_else(|| Failure::usage("--family parallel requires --ratio"))?,
            ),
            Family::Slant => FamilyKind::Slant(
                a.angle.ok_or_else(|| Failure::usage("--family slant requires --angle"))?,
            ),
        };
        spec = spec.with_family(make_family(kind, first)?, a.lines);
    }
    write_file(&a.svg, &render_svg(&spec)?)?;
    Ok(EXIT_OK)
}

fn figures(a: FiguresArgs, stdout: &mut dyn Write) -> Outcome {
    std::fs::create_dir_all(&a.out)
        .map_err(|e| Failure::input(format!("{}: {e}", a.out.display())))?;
    for fig in all_figures(a.samples)? {
        let path = a.out.join(fig.file_name());
        write_file(&path, &fig.svg)?;
        writeln!(stdout, "{}\t{}", path.display(), fig.title)?;
    }
    Ok(EXIT_OK)
}
