use super::eval::{EvalOutcome, Substitution};
use super::gn::{eval_gn_dp, gn_variable};
use super::identity::{run_monte_carlo, MonteCarlo, Verdict};
use super::sample::Sampler;
use super::GriResult;
use crate::quat::Quaternion;
use crate::rings::RingElement;

/// The reading of "algebraic of degree n" under which `g_n` is tested.
pub const DEGREE_CONVENTION: &str = "g_n(a,.) vanishes identically iff deg(a) <= n";

/// Per-degree verdicts for `g_k(a, ·)`, `k = 1, 2, …`, stopping at the first `k`
/// without a counterexample.
#[derive(Debug, Clone)]
pub struct DegreeProbe<E> {
    pub n_max: usize,
    pub per_degree: Vec<(usize, Verdict<E>)>,
    /// Least `k ≤ n_max` for which no counterexample was found.
    pub least_vanishing: Option<usize>,
}

impl<E> DegreeProbe<E> {
    /// Degrees below `least_vanishing` with their (conclusive) counterexamples.
    pub fn counterexamples(&self) -> impl Iterator<Item = (usize, &Verdict<E>)> {
        self.per_degree
            .iter()
            .filter(|(_, v)| v.is_counterexample())
            .map(|(k, v)| (*k, v))
    }
}

/// Seed for the degree-`k` run, distinct per `k`.
pub fn degree_seed(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Monte-Carlo test of `g_k(a, y_1, …, y_k) = 0` for `k = 1, …, n_max`, with each
/// `y_i` drawn from `sampler`.
pub fn algebraic_degree_probe<E, S>(
    a: &E,
    sampler: &S,
    n_max: usize,
    mc: &MonteCarlo,
) -> GriResult<DegreeProbe<E>>
where
    E: RingElement,
    S: Sampler<E>,
{
    if n_max == 0 {
        return Err(super::GriError::InvalidArgument(
            "n_max must be at least 1".into(),
        ));
    }
    let mut per_degree = Vec::new();
    for k in 1..=n_max {
        let run = MonteCarlo {
            seed: degree_seed(mc.seed, k),
            ..*mc
        };
        let verdict = run_monte_carlo(&run, |rng| {
            let ys: Vec<E> = (0..k).map(|_| sampler.draw(rng)).collect();
            let value = eval_gn_dp(a, &ys)?;
            let mut s = Substitution::new().with("x", a.clone());
            for (i, y) in ys.into_iter().enumerate() {
                s = s.with(&gn_variable(i + 1), y);
            }
            Ok((s, EvalOutcome::Value(value)))
        })?;
        let vanishes = !verdict.is_counterexample();
        per_degree.push((k, verdict));
        if vanishes {
            return Ok(DegreeProbe {
                n_max,
                per_degree,
                least_vanishing: Some(k),
            });
        }
    }
    Ok(DegreeProbe {
        n_max,
        per_degree,
        least_vanishing: None,
    })
}

/// A degree probe on a quaternion, checked against the exact minimal polynomial.
#[derive(Debug, Clone)]
pub struct QuatDegreeCheck {
    pub probe: DegreeProbe<Quaternion>,
    pub min_poly_degree: usize,
}

impl QuatDegreeCheck {
    pub fn agrees(&self) -> bool {
        self.probe.least_vanishing == Some(self.min_poly_degree)
    }
}

pub fn quaternion_degree_check<S: Sampler<Quaternion>>(
    a: &Quaternion,
    sampler: &S,
    n_max: usize,
    mc: &MonteCarlo,
) -> GriResult<QuatDegreeCheck> {
    Ok(QuatDegreeCheck {
        probe: algebraic_degree_probe(a, sampler, n_max, mc)?,
        min_poly_degree: a.min_poly().degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gri::{ElementSampler, SampleSpec};
    use crate::quat::QuatAlgebra;
    use crate::rings::RingContext;

    #[test]
    fn probe_i_and_seven() {
        let h = QuatAlgebra::hamilton();
        let sampler = ElementSampler::new(h.clone(), SampleSpec::new(10));
        let mc = MonteCarlo::new(40, 42);
        let c = quaternion_degree_check(&h.i(), &sampler, 3, &mc).unwrap();
        assert_eq!(c.probe.least_vanishing, Some(2));
        assert_eq!(
            c.probe
                .counterexamples()
                .map(|(k, _)| k)
                .collect::<Vec<_>>(),
            vec![1]
        );
        assert!(c.agrees());
        let seven = h.from_rational(&7.into());
        let c = quaternion_degree_check(&seven, &sampler, 3, &mc).unwrap();
        assert_eq!(c.probe.least_vanishing, Some(1));
        assert!(c.agrees());
    }
}
