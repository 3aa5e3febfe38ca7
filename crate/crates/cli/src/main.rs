//! `grilab`: verification scenarios, expression fuzzing and evaluation.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage and
//! configuration errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grilab_core::harness::{
    cmd_eval, cmd_fuzz, cmd_verify_lemma11, cmd_verify_lemma21, cmd_verify_lemma31,
    cmd_verify_prop22, cmd_verify_theorem, Report, ScenarioConfig,
};
use grilab_core::rings::{QuadField, RationalField};
use grilab_core::series::SeriesRing;
use grilab_core::{QuatAlgebra, QuatParams, Rational};

#[derive(Parser, Debug)]
#[command(
    name = "grilab",
    version,
    about = "Exact checks of generalized rational identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification scenario and print its report.
    Verify {
        #[arg(value_enum)]
        scenario: Scenario,
        #[command(flatten)]
        common: Common,
    },
    /// Monte-Carlo identity test of each expression in a file (one per line, `#` comments).
    Fuzz {
        #[arg(long)]
        file: std::path::PathBuf,
        #[command(flatten)]
        bindings: Bindings,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one expression; unbound variables are drawn from the seed.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        bindings: Bindings,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Scenario {
    Lemma21,
    Lemma31,
    Lemma11,
    Prop22,
    Theorem,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum RingKind {
    /// The rationals.
    Rational,
    /// Q(sqrt d) with d from --quad.
    Quad,
    /// H(a,b) with a,b from --algebra.
    #[default]
    Quat,
    /// Untwisted H(a,b)((t)) truncated at --prec.
    Series,
}

#[derive(Args, Debug)]
struct Bindings {
    /// Bind a constant, e.g. `--let a=(0,1,0,0)`.
    #[arg(long = "let", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    lets: Vec<String>,
    /// Ring for expression constants and substitutions.
    #[arg(long, value_enum, default_value_t)]
    ring: RingKind,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, env = "GRILAB_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 12, allow_hyphen_values = true)]
    prec: i64,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    #[arg(long, default_value_t = 10)]
    height: u32,
    #[arg(long, default_value_t = 10)]
    dmax: u32,
    /// Quaternion parameters `a,b` of H(a,b).
    #[arg(long, default_value = "-1,-1", allow_hyphen_values = true)]
    algebra: String,
    /// Radicand of the quadratic field.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    quad: String,
    /// Evaluate Monte-Carlo draws concurrently (reports are unchanged).
    #[arg(long)]
    parallel: bool,
}

impl Common {
    fn config(&self) -> Result<ScenarioConfig, String> {
        let (a, b) = self
            .algebra
            .split_once(',')
            .ok_or_else(|| format!("--algebra expects a,b, got `{}`", self.algebra))?;
        let parse = |s: &str, flag: &str| {
            s.trim()
                .parse::<Rational>()
                .map_err(|e| format!("{flag}: {e}"))
        };
        let algebra = QuatParams::new(parse(a, "--algebra")?, parse(b, "--algebra")?)
            .map_err(|e| format!("--algebra: {e}"))?;
        Ok(ScenarioConfig {
            seed: self.seed,
            trials: self.trials,
            prec: self.prec,
            tower_depth: self.depth,
            height: self.height,
            d_bound: self.dmax,
            algebra,
            quad_d: parse(&self.quad, "--quad")?,
            parallel: self.parallel,
        })
    }
}

fn parse_lets(lets: &[String]) -> Result<Vec<(String, String)>, String> {
    lets.iter()
        .map(|l| {
            l.split_once('=')
                .map(|(n, v)| (n.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("--let expects NAME=VALUE, got `{l}`"))
        })
        .collect()
}

fn ring_choice(kind: RingKind, cfg: &ScenarioConfig) -> Result<RingChoice, String> {
    let alg = cfg.quat_algebra();
    Ok(match kind {
        RingKind::Rational => RingChoice::Rational,
        RingKind::Quad => RingChoice::Quad(
            QuadField::new(cfg.quad_d.clone()).map_err(|e| format!("--quad: {e}"))?,
        ),
        RingKind::Quat => RingChoice::Quat(alg),
        RingKind::Series => RingChoice::Series(SeriesRing::untwisted(alg).with_precision(cfg.prec)),
    })
}

enum RingChoice {
    Rational,
    Quad(QuadField),
    Quat(QuatAlgebra),
    Series(SeriesRing<grilab_core::Quaternion>),
}

macro_rules! on_ring {
    ($choice:expr, |$r:ident| $body:expr) => {
        match $choice {
            RingChoice::Rational => {
                let $r = RationalField;
                $body
            }
            RingChoice::Quad($r) => $body,
            RingChoice::Quat($r) => $body,
            RingChoice::Series($r) => $body,
        }
    };
}

fn run(cli: Cli) -> Result<Report, String> {
    match cli.command {
        Command::Verify { scenario, common } => {
            let cfg = common.config()?;
            match scenario {
                Scenario::Lemma21 => cmd_verify_lemma21(&cfg),
                Scenario::Lemma31 => cmd_verify_lemma31(&cfg),
                Scenario::Lemma11 => cmd_verify_lemma11(&cfg),
                Scenario::Prop22 => cmd_verify_prop22(&cfg),
                Scenario::Theorem => cmd_verify_theorem(&cfg),
            }
            .map_err(|e| e.to_string())
        }
        Command::Fuzz {
            file,
            bindings,
            common,
        } => {
            let cfg = common.config()?;
            let lets = parse_lets(&bindings.lets)?;
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let choice = ring_choice(bindings.ring, &cfg)?;
            on_ring!(choice, |r| cmd_fuzz(r, &text, &lets, &cfg))
                .map_err(|e| format!("{}: {e}", file.display()))
        }
        Command::Eval {
            expr,
            bindings,
            common,
        } => {
            let cfg = common.config()?;
            let lets = parse_lets(&bindings.lets)?;
            let choice = ring_choice(bindings.ring, &cfg)?;
            on_ring!(choice, |r| cmd_eval(r, &expr, &lets, &cfg)).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("grilab: {msg}");
            ExitCode::from(2)
        }
    }
}
