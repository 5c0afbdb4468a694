use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use automorphic_halfplane::HalfPlanePoint;
use cli_harness::commands::{self, parse_complex, TfArgs};
use cli_harness::{emit_report, emit_reports, run_all, run_suite, write_output, Format, HarnessError, RunConfig};

#[derive(Parser)]
#[command(name = "regspec", version, about = "Regularized spectral calculus: verification suites and evaluators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite, or `all`.
    Verify(VerifyArgs),
    /// Trace formula reports.
    Tf {
        #[command(subcommand)]
        command: TfCommand,
    },
    /// Automorphic evaluators on the upper half-plane.
    Auto {
        #[command(subcommand)]
        command: AutoCommand,
    },
    /// Special function evaluation.
    Special {
        #[command(subcommand)]
        command: SpecialCommand,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    /// Config file; defaults to $REGSPEC_CONFIG when set.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Tolerance override `suite=1e-6` or `suite.check=1e-6`; repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE")]
    tol: Vec<String>,
    /// Override any config key, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct OutArg {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TfCommand {
    /// Both sides of the trace formula for h1 * h2.
    Report {
        /// gaussian or polynomial-gaussian.
        #[arg(long = "h", default_value = "gaussian")]
        h: String,
        #[arg(long, default_value_t = 1.0)]
        width: f64,
        /// Second factor; defaults to the first.
        #[arg(long)]
        h2: Option<String>,
        #[arg(long)]
        width2: Option<f64>,
        /// Include the residual spectrum.
        #[arg(long)]
        residual: bool,
        /// File of cusp form spectral parameters.
        #[arg(long)]
        cusp_data: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum AutoCommand {
    /// Constant term of the pseudo-Eisenstein series of y^α e^{−β(y+1/y)}.
    Ct {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        y: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Eisenstein series E(z, s).
    Eis {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// `x,y` with y > 0.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: HalfPlanePoint,
        #[command(flatten)]
        out: OutArg,
    },
    /// Truncated inner product of two Eisenstein series against the closed form.
    MaassSelberg {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s1: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s2: Complex64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Spectral expansion of ⟨Ψf1, Ψf2⟩ for f = y^α e^{−β(y+1/y)}.
    Plancherel {
        /// `alpha,beta`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        f1: (f64, f64),
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        f2: (f64, f64),
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum SpecialCommand {
    /// xi, zeta, gamma, c, c-log-derivative or kbessel.
    Eval {
        function: String,
        /// `re,im`, `re` or `a+bi`; the order for kbessel.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long)]
        x: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_pair(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text.split_once(',').ok_or_else(|| format!("{text}: expected a,b"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("{text}: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("{text}: {e}"))?;
    Ok((a, b))
}

fn parse_point(text: &str) -> Result<HalfPlanePoint, String> {
    let (x, y) = parse_pair(text)?;
    if !(y > 0.0) {
        return Err(format!("{text}: imaginary part must be positive"));
    }
    Ok(HalfPlanePoint::new(x, y))
}

fn emit_json(value: &impl Serialize, out: &OutArg) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| HarnessError::Report(e.to_string()))?;
    text.push('\n');
    write_output(&text, out.out.as_deref())
}

fn verify(args: VerifyArgs) -> Result<i32, HarnessError> {
    let mut config = RunConfig::resolve(args.config.as_deref())?;
    for kv in &args.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("--set {kv}: expected key=value")))?;
        config.set(k.trim(), v.trim())?;
    }
    for t in &args.tol {
        config.set_tolerance_flag(t)?;
    }
    if let Some(out) = args.out {
        config.output_path = Some(out);
    }
    if let Some(f) = args.format {
        config.format = f;
    }
    if args.suite == "all" {
        let all = run_all(&config)?;
        write_output(&emit_reports(&all.reports, config.format)?, config.output_path.as_deref())?;
        eprint!("{}", all.summary_table());
        return Ok(all.exit_code());
    }
    let start = std::time::Instant::now();
    let report = run_suite(&args.suite, &config)?;
    write_output(&emit_report(&report, config.format)?, config.output_path.as_deref())?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "{}: {} checks, {} failures, max deviation {:.3e}, {:.2} s",
        report.suite,
        report.checks.len(),
        report.failures().count(),
        report.max_deviation(),
        start.elapsed().as_secs_f64()
    );
    Ok(if report.pass { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Tf { command: TfCommand::Report { h, width, h2, width2, residual, cusp_data, out } } => {
            let cusp = cusp_data.as_deref().map(commands::read_cusp_data).transpose()?;
            let h2 = h2.unwrap_or_else(|| h.clone());
            let args = TfArgs { h1: (&h, width), h2: (&h2, width2.unwrap_or(width)), residual, cusp_data: cusp };
            emit_json(&commands::tf_report_json(&args)?, &out)?;
            Ok(0)
        }
        Command::Auto { command } => {
            match command {
                AutoCommand::Ct { alpha, beta, y, out } => emit_json(&commands::auto_constant_term(alpha, beta, y)?, &out)?,
                AutoCommand::Eis { s, z, out } => emit_json(&commands::auto_eisenstein(s, z)?, &out)?,
                AutoCommand::MaassSelberg { s1, s2, t, out } => {
                    emit_json(&commands::auto_maass_selberg(s1, s2, t)?, &out)?
                }
                AutoCommand::Plancherel { f1, f2, out } => emit_json(&commands::auto_plancherel(f1, f2)?, &out)?,
            }
            Ok(0)
        }
        Command::Special { command: SpecialCommand::Eval { function, s, x, out } } => {
            emit_json(&commands::special_eval(&function, s, x)?, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
