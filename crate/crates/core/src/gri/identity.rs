use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eval::{eval_expr, Environment, EvalOutcome, Substitution};
use super::expr::Expr;
use super::sample::{trial_rng, Sampler};
use super::{GriError, GriResult};
use crate::rings::RingElement;

/// Outcome of randomized identity testing. Only `Counterexample` is conclusive.
#[derive(Debug, Clone)]
pub enum Verdict<E> {
    Counterexample {
        substitution: Substitution<E>,
        /// Nonzero at its certified precision.
        value: E,
        /// Index of the draw that produced it.
        attempt: u64,
    },
    NoCounterexample {
        permissible_trials: usize,
        skipped_nonpermissible: usize,
    },
}

impl<E> Verdict<E> {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Verdict::Counterexample { .. })
    }
}

impl<E: std::fmt::Display> std::fmt::Display for Verdict<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Counterexample {
                substitution,
                value,
                attempt,
            } => write!(
                f,
                "COUNTEREXAMPLE at draw {attempt}: {substitution} -> {value}"
            ),
            Verdict::NoCounterexample {
                permissible_trials,
                skipped_nonpermissible,
            } => write!(
                f,
                "NO-COUNTEREXAMPLE ({permissible_trials} permissible trials, \
                 {skipped_nonpermissible} non-permissible skipped; evidence, not a proof)"
            ),
        }
    }
}

/// Trial budget and seeding for a Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    /// Permissible trials required for `NoCounterexample`.
    pub trials: usize,
    pub seed: u64,
    /// Evaluate draws on the rayon pool. Verdicts do not depend on this.
    pub parallel: bool,
}

impl MonteCarlo {
    pub fn new(trials: usize, seed: u64) -> Self {
        MonteCarlo {
            trials,
            seed,
            parallel: false,
        }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    /// Total draws allowed, non-permissible ones included.
    pub fn attempt_cap(&self) -> usize {
        self.trials.saturating_mul(10)
    }
}

/// Drive `trial` over draw indices `0, 1, …` until a nonzero value appears, `trials`
/// permissible values were zero, or the draw cap is hit. Draw `i` receives the generator
/// [`trial_rng`]`(seed, i)`, so the verdict is independent of scheduling.
pub fn run_monte_carlo<E, F>(mc: &MonteCarlo, trial: F) -> GriResult<Verdict<E>>
where
    E: RingElement,
    F: Fn(&mut ChaCha8Rng) -> GriResult<(Substitution<E>, EvalOutcome<E>)> + Sync,
{
    if mc.trials == 0 {
        return Err(GriError::InvalidArgument(
            "trials must be at least 1".into(),
        ));
    }
    let cap = mc.attempt_cap();
    let batch = if mc.parallel {
        (rayon::current_num_threads() * 4).max(1)
    } else {
        1
    };
    let run = |i: usize| trial(&mut trial_rng(mc.seed, i as u64));
    let (mut permissible, mut skipped) = (0usize, 0usize);
    let mut next = 0usize;
    while next < cap {
        let end = (next + batch).min(cap);
        let results: Vec<_> = if mc.parallel {
            (next..end).into_par_iter().map(run).collect()
        } else {
            (next..end).map(run).collect()
        };
        for (offset, r) in results.into_iter().enumerate() {
            let (substitution, outcome) = r?;
            match outcome {
                EvalOutcome::NonPermissible { .. } => skipped += 1,
                EvalOutcome::Value(v) if !v.is_zero() => {
                    return Ok(Verdict::Counterexample {
                        substitution,
                        value: v,
                        attempt: (next + offset) as u64,
                    })
                }
                EvalOutcome::Value(_) => {
                    permissible += 1;
                    if permissible == mc.trials {
                        return Ok(Verdict::NoCounterexample {
                            permissible_trials: permissible,
                            skipped_nonpermissible: skipped,
                        });
                    }
                }
            }
        }
        next = end;
    }
    Err(GriError::ResampleCapExhausted {
        attempts: cap,
        permissible,
        required: mc.trials,
    })
}

/// Test whether `e` vanishes on random permissible substitutions of its free variables
/// (those not bound in `env`), drawn independently from `sampler` in sorted name order.
pub fn is_gri_monte_carlo<E, S>(
    e: &Expr,
    env: &Environment<E>,
    trials: usize,
    sampler: &S,
    seed: u64,
) -> GriResult<Verdict<E>>
where
    E: RingElement,
    S: Sampler<E>,
{
    is_gri_monte_carlo_with(e, env, sampler, &MonteCarlo::new(trials, seed))
}

pub fn is_gri_monte_carlo_with<E, S>(
    e: &Expr,
    env: &Environment<E>,
    sampler: &S,
    mc: &MonteCarlo,
) -> GriResult<Verdict<E>>
where
    E: RingElement,
    S: Sampler<E>,
{
    let e = env.bind_constants(e);
    let vars: Vec<String> = e.free_variables().into_iter().collect();
    run_monte_carlo(mc, |rng| {
        let mut s = Substitution::new();
        for v in &vars {
            s = s.with(v, sampler.draw(rng));
        }
        let out = eval_expr(&e, env, &s)?;
        Ok((s, out))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gri::{build_gn, parse_expr, ElementSampler, SampleSpec};
    use crate::quat::QuatAlgebra;
    use crate::rings::RingContext;

    fn quat_sampler() -> ElementSampler<QuatAlgebra> {
        ElementSampler::new(QuatAlgebra::hamilton(), SampleSpec::new(10))
    }

    #[test]
    fn central_constant_gives_no_counterexample() {
        let h = QuatAlgebra::hamilton();
        let env = Environment::new(h.clone())
            .with("x", h.from_rational(&5.into()))
            .unwrap();
        let v = is_gri_monte_carlo(&build_gn(1).unwrap(), &env, 50, &quat_sampler(), 1).unwrap();
        assert!(matches!(
            v,
            Verdict::NoCounterexample {
                permissible_trials: 50,
                skipped_nonpermissible: 0
            }
        ));
    }

    #[test]
    fn noncentral_constant_gives_counterexample() {
        let h = QuatAlgebra::hamilton();
        let env = Environment::new(h.clone()).with("x", h.i()).unwrap();
        let v = is_gri_monte_carlo(&build_gn(1).unwrap(), &env, 50, &quat_sampler(), 1).unwrap();
        let Verdict::Counterexample {
            substitution,
            value,
            ..
        } = v
        else {
            panic!("expected a counterexample")
        };
        let y = substitution.get("y1").unwrap();
        assert_eq!(
            value,
            y.mul(&h.i()).unwrap().sub(&h.i().mul(y).unwrap()).unwrap()
        );
    }

    #[test]
    fn g3_vanishes_on_quaternions() {
        let h = QuatAlgebra::hamilton();
        let env = Environment::new(h.clone())
            .with("x", h.int(2, -1, 3, 1))
            .unwrap();
        let v = is_gri_monte_carlo(&build_gn(3).unwrap(), &env, 30, &quat_sampler(), 4).unwrap();
        assert!(!v.is_counterexample());
    }

    #[test]
    fn never_permissible_exhausts_the_cap() {
        let env = Environment::new(QuatAlgebra::hamilton());
        let e = parse_expr("(x-x)^-1").unwrap();
        assert!(matches!(
            is_gri_monte_carlo(&e, &env, 20, &quat_sampler(), 3),
            Err(GriError::ResampleCapExhausted {
                attempts: 200,
                permissible: 0,
                required: 20
            })
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let h = QuatAlgebra::hamilton();
        let env = Environment::new(h.clone())
            .with("x", h.int(0, 1, 1, 0))
            .unwrap();
        let e = parse_expr("x*y*x^-1*y^-1 + z - z").unwrap();
        for seed in 0..5 {
            let seq = MonteCarlo::new(40, seed);
            let a = is_gri_monte_carlo_with(&e, &env, &quat_sampler(), &seq).unwrap();
            let b =
                is_gri_monte_carlo_with(&e, &env, &quat_sampler(), &seq.parallel(true)).unwrap();
            assert_eq!(format!("{a}"), format!("{b}"));
        }
    }
}
