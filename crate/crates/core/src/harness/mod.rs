//! Reproducible verification scenarios. Each scenario turns a [`ScenarioConfig`] into a
//! [`Report`] whose pass/fail statuses are decided by exact comparisons only.
//!
//! Counts derive from `trials` (default 200) so one knob scales every scenario:
//!
//! | scenario  | quantity                                   | count        |
//! |-----------|--------------------------------------------|--------------|
//! | lemma21   | random center candidates per series branch | `trials / 4` |
//! | lemma21   | random rationals in the outer ring         | `trials / 10`|
//! | prop22    | random non-rational outer elements         | `trials / 2` |
//! | lemma31   | non-central quaternions, substitutions each | `trials / 2` |
//! | lemma31   | central quaternions                        | `trials / 10`|
//! | lemma11   | identity pairs `(a, b)`                    | `trials / 8` |
//! | lemma11   | independence pairs `(a, b)`                | `trials / 20`|
//! | lemma11   | witness draws per `n`                      | `trials`     |
//! | theorem   | draws per element `a`                      | `5 * trials` |
//! | fuzz      | permissible trials per expression          | `trials`     |

mod fuzz;
mod lemma11;
mod lemma21;
mod lemma31;
mod prop22;
mod report;
mod theorem;

pub use fuzz::{cmd_eval, cmd_fuzz, LiteralRing};
pub use lemma11::cmd_verify_lemma11;
pub use lemma21::cmd_verify_lemma21;
pub use lemma31::cmd_verify_lemma31;
pub use prop22::cmd_verify_prop22;
pub use report::{Check, Report, Status};
pub use theorem::{cmd_verify_theorem, theorem_candidates};

use crate::gri::{GriError, ParseError};
use crate::quat::{QuatAlgebra, QuatParams};
use crate::rings::{AlgebraError, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub trials: usize,
    pub prec: i64,
    pub tower_depth: u32,
    pub height: u32,
    pub d_bound: u32,
    pub algebra: QuatParams,
    pub quad_d: Rational,
    /// Evaluate Monte-Carlo draws concurrently; reports are unchanged.
    pub parallel: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            seed: 42,
            trials: 200,
            prec: 12,
            tower_depth: 2,
            height: 10,
            d_bound: 10,
            algebra: QuatParams::hamilton(),
            quad_d: Rational::from(-1),
            parallel: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> HarnessResult<()> {
        let positive = [
            ("trials", self.trials as i64),
            ("prec", self.prec),
            ("depth", self.tower_depth as i64),
            ("height", self.height as i64),
            ("dmax", self.d_bound as i64),
        ];
        for (name, v) in positive {
            if v < 1 {
                return Err(HarnessError::Config(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn quat_algebra(&self) -> QuatAlgebra {
        QuatAlgebra::new(self.algebra.clone())
    }

    /// `max(1, trials / divisor)`, the derived counts of the module table.
    pub fn share(&self, divisor: usize) -> usize {
        (self.trials / divisor).max(1)
    }

    fn header(&self, scenario: &str) -> Report {
        let mut r = Report::new(self.seed);
        r.note(format!(
            "scenario={scenario} trials={} prec={} depth={} height={} dmax={} algebra=H({},{}) \
             quad_d={}",
            self.trials,
            self.prec,
            self.tower_depth,
            self.height,
            self.d_bound,
            self.algebra.a,
            self.algebra.b,
            self.quad_d
        ));
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error(transparent)]
    Gri(#[from] GriError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type HarnessResult<T> = Result<T, HarnessError>;

pub use crate::gri::DEGREE_CONVENTION;

/// Note attached to every report that tests `g_n`.
fn convention_note() -> String {
    format!("degree convention: {DEGREE_CONVENTION} (g_2 vanishes on every element of degree 2)")
}

/// Independent seed for a named sub-scenario: FNV-1a of `label`, mixed with `seed`.
pub fn sub_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
