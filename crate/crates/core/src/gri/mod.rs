//! Generalized rational expressions over a ring, the alternating polynomials `g_n`, and
//! randomized identity testing.
//!
//! Inversion of a non-invertible value during evaluation is not an error: it makes the
//! substitution non-permissible, and identity testing skips such draws. Verdicts are
//! one-sided; only a counterexample is conclusive.

mod degree;
mod eval;
mod expr;
mod gn;
mod identity;
mod parse;
mod sample;

pub use degree::{
    algebraic_degree_probe, degree_seed, quaternion_degree_check, DegreeProbe, QuatDegreeCheck,
    DEGREE_CONVENTION,
};
pub use eval::{eval_expr, Environment, EvalOutcome, Substitution};
pub use expr::{format_expr, AstPath, Expr};
pub use gn::{build_gn, eval_gn_dp, eval_gn_naive, gn_variable, MAX_AST_N, MAX_DP_N, MAX_NAIVE_N};
pub use identity::{
    is_gri_monte_carlo, is_gri_monte_carlo_with, run_monte_carlo, MonteCarlo, Verdict,
};
pub use parse::{parse_expr, ParseError};
pub use sample::{
    random_rational, sample_element, trial_rng, ElementSampler, Sample, SampleSpec, Sampler,
};

use crate::rings::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GriError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("unbound identifier `{name}`")]
    Unbound { name: String },
    #[error("{what}: n = {n} outside the supported range 1..={max}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error(
        "resample cap exhausted: {permissible} of {required} permissible trials after \
         {attempts} draws"
    )]
    ResampleCapExhausted {
        attempts: usize,
        permissible: usize,
        required: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type GriResult<T> = Result<T, GriError>;
