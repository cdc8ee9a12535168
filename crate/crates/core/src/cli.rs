//! Command-line front end. [`run`] does all the work and returns the exit
//! code, so the binary is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: `0` everything passed, `1` a mathematical claim failed,
//! `2` bad usage or unreadable input.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::amplitudes::{AmplitudeMode, AmplitudeSet};
use crate::jsonl::{read_roots, write_roots, JsonlError};
use crate::project::{project_first_coordinate, to_csv, to_json, ProjectionPoint};
use crate::render::{render_svg, ColorScheme, RenderStyle};
use crate::roots::{e8_roots, h4_roots, RootSystemKind, Roots};
use crate::suite::{run_suite, verify_roots, Selection};
use crate::tolerance::Tolerances;
use crate::verify::VerificationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "triacontagonal", version, about = "Build, verify and draw the E8 and H4 root systems in triacontagonal coordinates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the roots as JSON lines.
    Generate(GenerateArgs),
    /// Check every claim about the roots; exit 0 iff all pass.
    Verify(VerifyArgs),
    /// Write the first-coordinate projection as CSV or JSON.
    Project(ProjectArgs),
    /// Draw the first-coordinate projection as SVG.
    Render(RenderArgs),
    /// Run every check on both systems and write a summary.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    E8,
    H4,
}

impl From<SystemArg> for RootSystemKind {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::E8 => RootSystemKind::E8,
            SystemArg::H4 => RootSystemKind::H4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Surd,
    Cyclotomic,
}

impl From<ModeArg> for AmplitudeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Surd => AmplitudeMode::Surd,
            ModeArg::Cyclotomic => AmplitudeMode::Cyclotomic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorArg {
    ByFamily,
    ByRadius,
    Monochrome,
}

impl From<ColorArg> for ColorScheme {
    fn from(c: ColorArg) -> Self {
        match c {
            ColorArg::ByFamily => ColorScheme::ByFamily,
            ColorArg::ByRadius => ColorScheme::ByRadius,
            ColorArg::Monochrome => ColorScheme::Monochrome,
        }
    }
}

/// Which roots to work on: generated from `--system` and
/// `--amplitude-mode`, or read from `--input`.
#[derive(Debug, Args)]
pub struct Source {
    #[arg(long, value_enum)]
    pub system: Option<SystemArg>,
    #[arg(long = "amplitude-mode", value_enum)]
    pub amplitude_mode: Option<ModeArg>,
    /// JSON-lines roots as written by `generate`; `-` reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Default, Args)]
pub struct ToleranceArgs {
    #[arg(long = "tol-residual")]
    pub residual: Option<f64>,
    #[arg(long = "tol-identity")]
    pub identity: Option<f64>,
    #[arg(long = "tol-ratio")]
    pub ratio: Option<f64>,
    #[arg(long = "tol-norm")]
    pub norm: Option<f64>,
    #[arg(long = "tol-membership")]
    pub membership: Option<f64>,
    #[arg(long = "tol-spectrum")]
    pub spectrum: Option<f64>,
    #[arg(long = "tol-isometry")]
    pub isometry: Option<f64>,
    #[arg(long = "tol-projection")]
    pub projection: Option<f64>,
    #[arg(long = "tol-reference-radius")]
    pub reference_radius: Option<f64>,
}

impl ToleranceArgs {
    pub fn resolve(&self) -> Result<Tolerances, CliError> {
        let d = Tolerances::default();
        let pick = |name: &str, v: Option<f64>, default: f64| match v {
            Some(x) if !(x.is_finite() && x >= 0.0) => Err(CliError::Usage(format!("--tol-{name} must be a non-negative number, got {x}"))),
            Some(x) => Ok(x),
            None => Ok(default),
        };
        Ok(Tolerances {
            residual: pick("residual", self.residual, d.residual)?,
            identity: pick("identity", self.identity, d.identity)?,
            ratio: pick("ratio", self.ratio, d.ratio)?,
            norm: pick("norm", self.norm, d.norm)?,
            membership: pick("membership", self.membership, d.membership)?,
            spectrum: pick("spectrum", self.spectrum, d.spectrum)?,
            isometry: pick("isometry", self.isometry, d.isometry)?,
            projection: pick("projection", self.projection, d.projection)?,
            reference_radius: pick("reference-radius", self.reference_radius, d.reference_radius)?,
        })
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[arg(long = "canvas-size", default_value_t = 800)]
    pub canvas_size: u32,
    #[arg(long = "point-radius", default_value_t = 4.0)]
    pub point_radius: f64,
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
    #[arg(long = "color-scheme", value_enum, default_value = "by-family")]
    pub color_scheme: ColorArg,
    #[arg(long, default_value = "#ffffff")]
    pub background: String,
    /// Draw one faint circle per radius.
    #[arg(long = "guide-circles")]
    pub guide_circles: bool,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Claim(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Claim(_) => EXIT_CLAIM_FAILED,
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_format(given: Option<Format>, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    match given {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(usage(format!("`{command}` does not write {f:?} output; choose one of {allowed:?}").to_lowercase())),
    }
}

/// Resolves the roots to work on. Generated roots default to E8 with surd
/// amplitudes; cyclotomic amplitudes exist for E8 only.
fn load_roots(source: &Source, stdin: &mut dyn Read) -> Result<(RootSystemKind, Roots), CliError> {
    if let Some(path) = &source.input {
        if source.amplitude_mode.is_some() {
            return Err(usage("--amplitude-mode applies to generated roots and cannot be combined with --input"));
        }
        let parsed = if path == Path::new("-") {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            read_roots(text.as_bytes())
        } else {
            let file = File::open(path).map_err(|e| usage(format!("cannot open {}: {e}", path.display())))?;
            read_roots(BufReader::new(file))
        };
        let (kind, roots) = parsed.map_err(|e| match e {
            JsonlError::Io(e) => CliError::Io(e),
            other => usage(format!("invalid root file: {other}")),
        })?;
        if let Some(s) = source.system {
            if RootSystemKind::from(s) != kind {
                return Err(usage(format!("--system {} does not match the {kind} roots in the input", RootSystemKind::from(s))));
            }
        }
        return Ok((kind, roots));
    }
    let kind = source.system.map(RootSystemKind::from).unwrap_or(RootSystemKind::E8);
    let mode = source.amplitude_mode.map(AmplitudeMode::from).unwrap_or(AmplitudeMode::Surd);
    generate(kind, mode).map(|roots| (kind, roots))
}

fn generate(kind: RootSystemKind, mode: AmplitudeMode) -> Result<Roots, CliError> {
    if kind == RootSystemKind::H4 && mode == AmplitudeMode::Cyclotomic {
        return Err(usage("cyclotomic amplitudes are only defined for e8; use --amplitude-mode surd with --system h4"));
    }
    let amps = AmplitudeSet::of(mode).map_err(|e| CliError::Claim(e.to_string()))?;
    match kind {
        RootSystemKind::E8 => e8_roots(&amps),
        RootSystemKind::H4 => h4_roots(&amps).map(Roots::Numeric),
    }
    .map_err(|e| CliError::Claim(e.to_string()))
}

fn write_output(out: &Option<PathBuf>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn tolerance_header(tol: &Tolerances) -> String {
    format!(
        "tolerances: residual {:e}, identity {:e}, ratio {:e}, norm {:e}, membership {:e}, spectrum {:e}, isometry {:e}, projection {:e}, reference radius {:e}\n\n",
        tol.residual, tol.identity, tol.ratio, tol.norm, tol.membership, tol.spectrum, tol.isometry, tol.projection, tol.reference_radius
    )
}

fn emit_report(report: &VerificationReport, tol: &Tolerances, format: Format, output: &Output, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let text = match format {
        Format::Json => {
            let value = serde_json::json!({ "tolerances": tol, "all_passed": report.all_passed(), "checks": report.checks });
            serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
        }
        _ => tolerance_header(tol) + &report.to_string(),
    };
    write_output(&output.out, stdout, text.as_bytes())?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_CLAIM_FAILED })
}

fn projection(roots: &Roots, tol: &Tolerances) -> Result<Vec<ProjectionPoint>, CliError> {
    project_first_coordinate(&roots.to_numeric(), tol.projection).map_err(|e| CliError::Claim(e.to_string()))
}

/// Executes one command, writing results to `stdout` unless `--out` is set.
pub fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Generate(args) => {
            check_format(args.output.format, &[Format::Json], "generate")?;
            if args.source.input.is_some() {
                return Err(usage("`generate` builds roots from formulas and takes no --input"));
            }
            let (kind, roots) = load_roots(&args.source, stdin)?;
            let mut buf = Vec::new();
            write_roots(&mut buf, kind, &roots).map_err(|e| CliError::Claim(e.to_string()))?;
            write_output(&args.output.out, stdout, &buf)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let format = check_format(args.output.format, &[Format::Text, Format::Json], "verify")?;
            let tol = args.tolerances.resolve()?;
            let report = match (&args.source.input, args.source.system, args.source.amplitude_mode) {
                (Some(_), _, _) => {
                    let (kind, roots) = load_roots(&args.source, stdin)?;
                    verify_roots(kind, &roots, &tol)
                }
                (None, Some(SystemArg::H4), Some(ModeArg::Cyclotomic)) => {
                    return Err(usage("cyclotomic amplitudes are only defined for e8"));
                }
                (None, system, mode) => {
                    run_suite(Selection { system: system.map(Into::into), mode: mode.map(Into::into) }, &tol)
                }
            };
            emit_report(&report, &tol, format, &args.output, stdout)
        }
        Command::Project(args) => {
            let format = check_format(args.output.format, &[Format::Csv, Format::Json], "project")?;
            let tol = args.tolerances.resolve()?;
            let (_, roots) = load_roots(&args.source, stdin)?;
            let points = projection(&roots, &tol)?;
            let text = match format {
                Format::Json => to_json(&points) + "\n",
                _ => to_csv(&points).map_err(|e| CliError::Io(io::Error::other(e)))?,
            };
            write_output(&args.output.out, stdout, text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Render(args) => {
            check_format(args.output.format, &[Format::Svg], "render")?;
            let tol = args.tolerances.resolve()?;
            let style = RenderStyle {
                canvas_size: args.canvas_size,
                point_radius: args.point_radius,
                margin: args.margin,
                color_scheme: args.color_scheme.into(),
                background: args.background.clone(),
                draw_guide_circles: args.guide_circles,
            };
            style.validate().map_err(|e| usage(e.to_string()))?;
            let (_, roots) = load_roots(&args.source, stdin)?;
            let points = projection(&roots, &tol)?;
            let svg = render_svg(&points, &style).map_err(|e| usage(e.to_string()))?;
            write_output(&args.output.out, stdout, svg.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Report(args) => {
            let format = check_format(args.output.format, &[Format::Text, Format::Json], "report")?;
            let tol = args.tolerances.resolve()?;
            emit_report(&run_suite(Selection::default(), &tol), &tol, format, &args.output, stdout)
        }
    }
}

/// Parses `args` (including the program name) and executes the command,
/// printing errors to `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("triacontagonal").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generate_writes_240_lines() {
        let (code, out, _) = run_capture(&["generate", "--system", "e8", "--amplitude-mode", "cyclotomic"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 240);
        assert!(out.lines().all(|l| l.contains(r#""mode":"exact""#)));
    }

    #[test]
    fn usage_errors_exit_2() {
        for args in [
            &["generate", "--system", "h4", "--amplitude-mode", "cyclotomic"][..],
            &["verify", "--system", "h4", "--amplitude-mode", "cyclotomic"],
            &["render", "--format", "csv"],
            &["project", "--format", "svg"],
            &["render", "--margin", "0.7"],
            &["verify", "--tol-norm", "-1"],
            &["frobnicate"],
            &["verify", "--input", "/nonexistent/roots.jsonl"],
        ] {
            let (code, _, err) = run_capture(args, "");
            assert_eq!(code, 2, "{args:?}: {err}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn pipeline_matches_in_process_verification() {
        let (_, roots, _) = run_capture(&["generate", "--system", "h4"], "");
        let (code, piped, _) = run_capture(&["verify", "--input", "-", "--format", "json"], &roots);
        assert_eq!(code, 0);
        let (code, direct, _) = run_capture(&["verify", "--system", "h4", "--amplitude-mode", "surd", "--format", "json"], "");
        assert_eq!(code, 0);
        assert_eq!(piped, direct);
    }

    #[test]
    fn corrupted_input_fails_verification() {
        let (_, roots, _) = run_capture(&["generate", "--system", "h4"], "");
        let damaged: String = roots.lines().skip(1).map(|l| format!("{l}\n")).collect();
        let (code, out, _) = run_capture(&["verify", "--input", "-"], &damaged);
        assert_eq!(code, 1);
        assert!(out.contains("[FAIL] h4.numeric.cardinality"));
    }

    #[test]
    fn system_flag_must_match_input() {
        let (_, roots, _) = run_capture(&["generate", "--system", "h4"], "");
        let (code, _, err) = run_capture(&["verify", "--system", "e8", "--input", "-"], &roots);
        assert_eq!(code, 2);
        assert!(err.contains("does not match"));
    }

    #[test]
    fn tight_tolerance_makes_a_claim_fail() {
        let (code, out, _) = run_capture(&["verify", "--system", "e8", "--amplitude-mode", "surd", "--tol-reference-radius", "1e-9"], "");
        assert_eq!(code, 1);
        assert!(out.contains("[FAIL] e8.projection.radii"));
        assert!(out.starts_with("tolerances: "));
    }
}
