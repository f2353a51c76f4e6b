//! The `qlra` command line.
//!
//! Exit codes: `0` success (trigonometric data), `2` hyperbolic data (valid,
//! but no state or point exists), `1` invalid input or I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bloch::{to_bloch, BlochPoint};
use crate::error::QlraError;
use crate::interference::{self, Classification, SignBranch};
use crate::prob_model::{
    estimate_context, validate_context, ContextData, SampleCounts, ValidContext,
};
use crate::representation::{a_canonical_basis, b_basis, born_probabilities, represent, QLState};
use crate::sweep::{run_sweep, SweepConfig, SweepSign, DEFAULT_MARGIN};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_HYPERBOLIC: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qlra",
    version,
    about = "Complex amplitudes for two-observable probabilistic data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a context and classify it as trigonometric or hyperbolic.
    Check {
        #[command(flatten)]
        context: ContextArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the complex amplitude of a trigonometric context.
    Represent {
        #[command(flatten)]
        context: ContextArgs,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Map a trigonometric context to the Bloch sphere.
    Bloch {
        #[command(flatten)]
        context: ContextArgs,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a (q, p) grid at fixed P and emit a Bloch point cloud.
    Sweep {
        #[arg(long = "P")]
        transition: f64,
        #[arg(long, default_value_t = 101)]
        q_steps: usize,
        #[arg(long, default_value_t = 101)]
        p_steps: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[arg(long, default_value_t = crate::DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate a context from a JSON counts file and represent it.
    Ingest {
        #[arg(long)]
        counts: PathBuf,
        #[arg(long, default_value_t = crate::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct ContextArgs {
    /// p^a of the first a outcome.
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    /// p^b of the first b outcome.
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    /// Diagonal entry of the doubly stochastic transition matrix.
    #[arg(long = "P", allow_hyphen_values = true)]
    transition: f64,
    #[arg(long, default_value_t = crate::DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    Both,
}

impl SignArg {
    fn single(self) -> Result<SignBranch, Failure> {
        match self {
            SignArg::Plus => Ok(SignBranch::Plus),
            SignArg::Minus => Ok(SignBranch::Minus),
            SignArg::Both => Err(Failure::Invalid(
                "--sign both is only accepted by sweep".into(),
            )),
        }
    }
}

impl From<SignArg> for SweepSign {
    fn from(sign: SignArg) -> SweepSign {
        match sign {
            SignArg::Plus => SweepSign::Plus,
            SignArg::Minus => SweepSign::Minus,
            SignArg::Both => SweepSign::Both,
        }
    }
}

enum Failure {
    Invalid(String),
    /// Valid data without a representation; the report, if any, is still emitted.
    Hyperbolic(Option<(Value, Option<PathBuf>)>, String),
}

impl From<QlraError> for Failure {
    fn from(e: QlraError) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_INVALID
                }
            };
        }
    };

    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Hyperbolic(report, msg)) => {
            if let Some((report, out)) = report {
                if emit_json(&report, out.as_ref(), stdout).is_err() {
                    let _ = writeln!(stderr, "error: failed to write report");
                    return EXIT_INVALID;
                }
            }
            let _ = writeln!(stderr, "hyperbolic: {msg}");
            EXIT_HYPERBOLIC
        }
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    match command {
        Command::Check { context, output } => {
            require_json(&output)?;
            let c = context.validate()?;
            let report = check_report(&c);
            if interference::classify(&c) == Classification::Hyperbolic {
                return Err(Failure::Hyperbolic(
                    Some((report, output.out)),
                    hyperbolic_message(&c),
                ));
            }
            emit_json(&report, output.out.as_ref(), stdout)
        }
        Command::Represent {
            context,
            sign,
            output,
        } => {
            require_json(&output)?;
            let sign = sign.single()?;
            let c = context.validate()?;
            let state = state_or_hyperbolic(&c, sign)?;
            emit_json(&state_report(&state)?, output.out.as_ref(), stdout)
        }
        Command::Bloch {
            context,
            sign,
            output,
        } => {
            require_json(&output)?;
            let sign = sign.single()?;
            let c = context.validate()?;
            state_or_hyperbolic(&c, sign)?;
            emit_json(
                &bloch_report(&to_bloch(&c, sign)?),
                output.out.as_ref(),
                stdout,
            )
        }
        Command::Sweep {
            transition,
            q_steps,
            p_steps,
            margin,
            sign,
            tol,
            output,
        } => {
            let cfg = SweepConfig {
                transition_probability: transition,
                q_steps,
                p_steps,
                sign: sign.into(),
                tol,
                margin,
            };
            let result = run_sweep(&cfg)?;
            let mut buf = Vec::new();
            match output.format {
                Format::Csv => result.write_csv(&mut buf)?,
                Format::Json => result.write_json(&mut buf)?,
            }
            let summary = json!({
                "total": result.total,
                "skipped": result.skipped,
                "points": result.points.len(),
            });
            match &output.out {
                Some(path) => {
                    write_file(path, &buf)?;
                    emit_json(&summary, None, stdout)
                }
                None => {
                    stdout.write_all(&buf)?;
                    writeln!(stderr, "{summary}")?;
                    Ok(())
                }
            }
        }
        Command::Ingest {
            counts,
            tol,
            sign,
            output,
        } => {
            require_json(&output)?;
            let sign = sign.single()?;
            let sample = SampleCounts::from_path(&counts)?;
            let c = estimate_context(&sample, tol)?;
            let mut report = check_report(&c);
            report["counts"] = json!(sample);
            report["doubly_stochastic"] = json!(true);
            match represent(&c, sign) {
                Ok(state) => {
                    report["state"] = state_report(&state)?;
                    report["bloch"] = bloch_report(&to_bloch(&c, sign)?);
                    emit_json(&report, output.out.as_ref(), stdout)
                }
                Err(QlraError::NotTrigonometric { .. }) => Err(Failure::Hyperbolic(
                    Some((report, output.out)),
                    hyperbolic_message(&c),
                )),
                Err(e) => Err(e.into()),
            }
        }
    }
}

impl ContextArgs {
    fn validate(&self) -> Result<ValidContext, Failure> {
        Ok(validate_context(
            &ContextData::from_parameters(self.q, self.p, self.transition),
            self.tol,
        )?)
    }
}

fn require_json(output: &OutputArgs) -> Result<(), Failure> {
    match output.format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::Invalid(
            "csv output is only available for sweep".into(),
        )),
    }
}

fn hyperbolic_message(c: &ValidContext) -> String {
    let lambda = interference::lambdas(c);
    format!(
        "|lambda| = {} exceeds 1, no amplitude and no Bloch point",
        lambda[0].abs().max(lambda[1].abs())
    )
}

fn state_or_hyperbolic(c: &ValidContext, sign: SignBranch) -> Result<QLState, Failure> {
    match represent(c, sign) {
        Ok(state) => Ok(state),
        Err(QlraError::NotTrigonometric { .. }) => {
            Err(Failure::Hyperbolic(None, hyperbolic_message(c)))
        }
        Err(e) => Err(e.into()),
    }
}

fn context_json(c: &ValidContext) -> Value {
    json!({
        "q": c.q(),
        "p": c.p(),
        "P": c.transition_probability(),
        "pa": c.pa,
        "pb": c.pb,
        "matrix": c.matrix.entries(),
    })
}

fn check_report(c: &ValidContext) -> Value {
    let lambda = interference::lambdas(c);
    let ftp = [
        interference::ftp_prediction(c, crate::Outcome::First),
        interference::ftp_prediction(c, crate::Outcome::Second),
    ];
    json!({
        "valid": true,
        "context": context_json(c),
        "ftp": ftp,
        "lambda": lambda,
        "classification": interference::classify_lambdas(&lambda),
    })
}

fn state_report(s: &QLState) -> Result<Value, Failure> {
    let phases = s.profile.phases.unwrap_or([f64::NAN; 2]);
    let a_basis = a_canonical_basis(&s.source.matrix)?;
    Ok(json!({
        "context": context_json(&s.source),
        "sign": s.profile.sign_branch,
        "lambda": s.profile.lambda,
        "phases": phases,
        "psi": s.psi.components().iter().map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>(),
        "born": {
            "b_standard": born_probabilities(s, &b_basis()),
            "a_canonical": born_probabilities(s, &a_basis),
        },
        "norm": s.psi.norm_sqr(),
    }))
}

fn bloch_report(pt: &BlochPoint) -> Value {
    json!({
        "x": pt.x,
        "y": pt.y,
        "z": pt.z,
        "color": pt.color,
        "branch": pt.branch,
    })
}

fn write_file(path: &PathBuf, bytes: &[u8]) -> Result<(), Failure> {
    let file =
        File::create(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    w.write_all(bytes)?;
    w.flush()?;
    Ok(())
}

fn emit_json(value: &Value, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::Invalid(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => write_file(path, text.as_bytes()),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}
