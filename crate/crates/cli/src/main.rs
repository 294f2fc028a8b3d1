//! `quatregular`: verification suites, norms and Bloch-Landau reports for
//! quaternionic power series stored as JSON function files.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on
//! input or configuration errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use quatregular::bloch_landau::{
    bl_search, coverage_report, inscribed_disc_check, oset_slice_curve, rho_lemma, NewtonConfig, SearchConfig,
};
use quatregular::io::read_series;
use quatregular::norms::{inf_norm_ball, slice_norm_report, split_norm, sup_norm_ball, uniform_norm};
use quatregular::verify::{run_verification, Suite, VerifyConfig};
use quatregular::{Error, NormConfig, Series, UnitImaginary};

const SCHEMA: &str = "quatregular/1";

#[derive(Parser)]
#[command(name = "quatregular", version, about = "Slice regular quaternionic series: checks and reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    /// Points per boundary circle.
    #[arg(long, default_value_t = 512)]
    theta_grid: usize,
    /// Samples of the sphere of imaginary units.
    #[arg(long, default_value_t = 2048)]
    sphere_grid: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GridArgs {
    fn norm_config(&self) -> NormConfig {
        NormConfig { theta_grid: self.theta_grid, sphere_grid: self.sphere_grid, seed: self.seed, ..NormConfig::default() }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites.
    Verify {
        /// Optional function file checked alongside the built-in corpus.
        input: Option<PathBuf>,
        /// Restrict to these suites (algebra, slice, norms, bloch-landau).
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        /// Maximal degree of random test polynomials.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Tolerance of the exact algebraic identities.
        #[arg(long)]
        tol: Option<f64>,
        /// Coverage samples.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Image radius of the covering lemma.
    Rho {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Constructive Bloch-Landau search at working radius r.
    Search {
        input: PathBuf,
        #[arg(long, default_value_t = 0.99)]
        r: f64,
        /// Bracketing grid for the radius equation.
        #[arg(long, default_value_t = 1024)]
        mu_grid: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Newton certificates that sampled points of O(rho) are attained.
    Coverage {
        input: PathBuf,
        /// Defaults to the lemma radius of the input.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Norms of a function.
    Norm {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = NormKind::Split)]
        kind: NormKind,
        /// Ball radius for `sup` and `inf`.
        #[arg(long)]
        s: Option<f64>,
        /// Imaginary unit for `slice`, as three comma-separated coordinates.
        #[arg(long, value_parser = parse_unit)]
        unit: Option<UnitImaginary>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Boundary curve of O(rho) in a slice, as CSV.
    Oset {
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Inscribed disc check for O(rho).
    Disc {
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NormKind {
    /// sup over imaginary units of the slice norm.
    Split,
    /// sup of |f| over the whole ball.
    Uniform,
    /// Slice norm for one unit.
    Slice,
    /// sup of |f| over B(0, s).
    Sup,
    /// inf of |f| over B(0, s).
    Inf,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_unit(s: &str) -> Result<UnitImaginary, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != 3 {
        return Err(format!("expected 3 coordinates, got {}", v.len()));
    }
    UnitImaginary::from_vector(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Numerical(m) => Failure::Check(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<bool, Failure>;

fn report(command: &str, body: impl Serialize) -> Value {
    json!({ "schema": SCHEMA, "command": command, "report": body })
}

fn emit(text: &str, out: &OutputArgs) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(format!("cannot write to stdout: {e}")))
        }
    }
}

fn emit_json(value: &Value, out: &OutputArgs) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(&text, out)
}

fn load(path: &Path) -> Result<Series, Failure> {
    read_series(path).map_err(|e| Failure::Input(e.to_string()))
}

fn cmd_verify(
    input: Option<&Path>,
    suites: Vec<Suite>,
    degree: usize,
    tol: Option<f64>,
    samples: usize,
    grid: GridArgs,
    out: &OutputArgs,
) -> CmdResult {
    if tol.is_some_and(|t| !(t > 0.0)) {
        return Err(Failure::Input("--tol must be positive".into()));
    }
    let user = input.map(load).transpose()?;
    let cfg = VerifyConfig {
        seed: grid.seed,
        suites: if suites.is_empty() { Suite::ALL.to_vec() } else { suites },
        degree,
        tol,
        samples,
        norm: grid.norm_config(),
        user,
        ..VerifyConfig::default()
    };
    let rep = run_verification(&cfg)?;
    for c in rep.failures() {
        eprintln!("FAIL {}/{}: value {:e}, tolerance {:e}", c.suite, c.name, c.value, c.tolerance);
    }
    emit_json(&report("verify", &rep), out)?;
    Ok(rep.passed)
}

fn cmd_rho(input: &Path, grid: GridArgs, out: &OutputArgs) -> CmdResult {
    let f = load(input)?;
    let rep = rho_lemma(&f, &grid.norm_config())?;
    emit_json(&report("rho", rep), out)?;
    Ok(true)
}

fn cmd_search(input: &Path, r: f64, mu_grid: usize, grid: GridArgs, out: &OutputArgs) -> CmdResult {
    let f = load(input)?;
    let rep = bl_search(&f, r, &SearchConfig { norm: grid.norm_config(), mu_grid })?;
    emit_json(&report("search", &rep), out)?;
    Ok(rep.passed())
}

fn cmd_coverage(input: &Path, rho: Option<f64>, samples: usize, grid: GridArgs, out: &OutputArgs) -> CmdResult {
    let f = load(input)?;
    let rho = match rho {
        Some(r) => r,
        None => rho_lemma(&f, &grid.norm_config())?.rho,
    };
    let rep = coverage_report(&f, rho, samples, grid.seed, &NewtonConfig::default())?;
    emit_json(&report("coverage", &rep), out)?;
    Ok(rep.all_hit())
}

fn cmd_norm(
    input: &Path,
    kind: NormKind,
    s: Option<f64>,
    unit: Option<UnitImaginary>,
    grid: GridArgs,
    out: &OutputArgs,
) -> CmdResult {
    let f = load(input)?;
    let cfg = grid.norm_config();
    let need_s = || s.ok_or_else(|| Failure::Input("--s is required for this norm".into()));
    let (name, rep) = match kind {
        NormKind::Split => ("split", split_norm(&f, &cfg)),
        NormKind::Uniform => ("uniform", uniform_norm(&f, &cfg)),
        NormKind::Sup => ("sup", sup_norm_ball(&f, need_s()?, &cfg)?),
        NormKind::Inf => ("inf", inf_norm_ball(&f, need_s()?, &cfg)?),
        NormKind::Slice => ("slice", slice_norm_report(&f, unit.unwrap_or(UnitImaginary::I), &cfg)),
    };
    emit_json(&json!({ "schema": SCHEMA, "command": "norm", "kind": name, "report": rep }), out)?;
    Ok(true)
}

fn cmd_oset(rho: f64, n: usize, out: &OutputArgs) -> CmdResult {
    let curve = oset_slice_curve(rho, n)?;
    let mut text = String::from("x,y\n");
    for (x, y) in curve {
        text.push_str(&format!("{x:e},{y:e}\n"));
    }
    emit(&text, out)?;
    Ok(true)
}

fn cmd_disc(rho: f64, out: &OutputArgs) -> CmdResult {
    let rep = inscribed_disc_check(rho)?;
    if let Some(w) = &rep.warning {
        eprintln!("warning: {w}");
    }
    emit_json(&report("disc", &rep), out)?;
    Ok(rep.contained)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Verify { input, suites, degree, tol, samples, grid, out } => {
            cmd_verify(input.as_deref(), suites, degree, tol, samples, grid, &out)
        }
        Command::Rho { input, grid, out } => cmd_rho(&input, grid, &out),
        Command::Search { input, r, mu_grid, grid, out } => cmd_search(&input, r, mu_grid, grid, &out),
        Command::Coverage { input, rho, samples, grid, out } => cmd_coverage(&input, rho, samples, grid, &out),
        Command::Norm { input, kind, s, unit, grid, out } => cmd_norm(&input, kind, s, unit, grid, &out),
        Command::Oset { rho, n, out } => cmd_oset(rho, n, &out),
        Command::Disc { rho, out } => cmd_disc(rho, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
