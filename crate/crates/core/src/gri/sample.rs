use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{QuadField, Rational, RationalField, RingContext, RingElement, Twistable};
use crate::series::{SeriesRing, TowerRing};

/// Shape of a random element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpec {
    /// Rational coordinates are `p/q` with `|p| ≤ height`, `1 ≤ q ≤ height`.
    pub height: u32,
    /// Inclusive series-degree range; ignored by non-series rings.
    pub degrees: (i64, i64),
    /// Never return a non-invertible element.
    pub unit: bool,
}

impl SampleSpec {
    pub fn new(height: u32) -> Self {
        SampleSpec {
            height,
            degrees: (0, 3),
            unit: false,
        }
    }

    pub fn with_degrees(mut self, lo: i64, hi: i64) -> Self {
        self.degrees = (lo, hi.max(lo));
        self
    }

    pub fn units(mut self) -> Self {
        self.unit = true;
        self
    }

    fn nonunit(&self) -> SampleSpec {
        SampleSpec {
            unit: false,
            ..self.clone()
        }
    }
}

/// Deterministic generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_rational(rng: &mut impl Rng, height: u32, nonzero: bool) -> Rational {
    let h = height.max(1) as i64;
    loop {
        let p = rng.random_range(-h..=h);
        if nonzero && p == 0 {
            continue;
        }
        let q = rng.random_range(1..=h);
        return Rational::new(p, q).expect("positive denominator");
    }
}

/// Rings that can produce bounded-height random elements.
pub trait Sample: RingContext {
    fn sample(&self, rng: &mut ChaCha8Rng, spec: &SampleSpec) -> Self::Elem;
}

impl Sample for RationalField {
    fn sample(&self, rng: &mut ChaCha8Rng, spec: &SampleSpec) -> Rational {
        random_rational(rng, spec.height, spec.unit)
    }
}

impl Sample for QuadField {
    fn sample(&self, rng: &mut ChaCha8Rng, spec: &SampleSpec) -> Self::Elem {
        loop {
            let u = random_rational(rng, spec.height, false);
            let v = random_rational(rng, spec.height, false);
            let x = self.elem(u, v);
            if !spec.unit || !x.norm().is_zero() {
                return x;
            }
        }
    }
}

impl Sample for QuatAlgebra {
    fn sample(&self, rng: &mut ChaCha8Rng, spec: &SampleSpec) -> Quaternion {
        loop {
            let mut c = || random_rational(rng, spec.height, false);
            let q = self.elem(c(), c(), c(), c());
            if !spec.unit || !q.nrd().is_zero() {
                return q;
            }
        }
    }
}

impl Sample for TowerRing {
    /// A quaternion plus quaternion multiples of some of `t_{-m}, …, t_{m-1}`; the top
    /// variable is left out so one outer shift stays inside the window.
    fn sample(&self, rng: &mut ChaCha8Rng, spec: &SampleSpec) -> Self::Elem {
        let m = self.depth() as i64;
        let mut acc = self
            .quat(self.algebra().sample(rng, spec))
            .expect("same algebra");
        for i in -m..m {
            if rng.random_bool(0.5) {
                let c = self.algebra().sample(rng, &spec.nonunit());
                let term = self.monomial(c, &[(i, 1)]).expect("index in window");
                acc = acc.add(&term).expect("same tower");
            }
        }
        acc
    }
}

impl<C> Sample for SeriesRing<C>
where
    C: Twistable,
    C::Ring: Sample,
{
    /// Random coefficients on `spec.degrees`, precision at least the ring default. A
    /// unit has an invertible lowest coefficient.
    fn sample(&self, rng: &mut ChaCha8Rng, spec: &SampleSpec) -> Self::Elem {
        let (lo, hi) = spec.degrees;
        let mut terms = Vec::new();
        for d in lo..=hi {
            let coeff_spec = if d == lo {
                spec.clone()
            } else {
                spec.nonunit()
            };
            terms.push((d, self.base().sample(rng, &coeff_spec)));
        }
        let prec = self.default_precision().max(hi + 1);
        self.series(terms, prec)
            .expect("coefficients from the base ring")
    }
}

/// Source of substitution values for Monte-Carlo runs.
pub trait Sampler<E>: Sync {
    fn draw(&self, rng: &mut ChaCha8Rng) -> E;
}

impl<E, F> Sampler<E> for F
where
    F: Fn(&mut ChaCha8Rng) -> E + Sync,
{
    fn draw(&self, rng: &mut ChaCha8Rng) -> E {
        self(rng)
    }
}

/// [`Sample`] bound to a fixed ring and shape.
#[derive(Debug, Clone)]
pub struct ElementSampler<R> {
    pub ring: R,
    pub spec: SampleSpec,
}

impl<R: Sample> ElementSampler<R> {
    pub fn new(ring: R, spec: SampleSpec) -> Self {
        ElementSampler { ring, spec }
    }
}

impl<R: Sample> Sampler<R::Elem> for ElementSampler<R> {
    fn draw(&self, rng: &mut ChaCha8Rng) -> R::Elem {
        self.ring.sample(rng, &self.spec)
    }
}

/// One element from a fresh generator seeded with `seed`.
pub fn sample_element<R: Sample>(ring: &R, spec: &SampleSpec, seed: u64) -> R::Elem {
    ring.sample(&mut ChaCha8Rng::seed_from_u64(seed), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rational_height_bound() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..500 {
            let q = RationalField.sample(&mut rng, &SampleSpec::new(10));
            assert!(q.numer() <= &BigInt::from(10) && q.numer() >= &BigInt::from(-10));
            assert!(q.denom() >= &BigInt::from(1) && q.denom() <= &BigInt::from(10));
        }
    }

    #[test]
    fn unit_requests_are_invertible() {
        let mut rng = trial_rng(2, 0);
        let h = QuatAlgebra::hamilton();
        let s: SeriesRing<Quaternion> = SeriesRing::untwisted(h.clone());
        let spec = SampleSpec::new(1).units();
        for _ in 0..200 {
            assert!(!h.sample(&mut rng, &spec).nrd().is_zero());
            assert!(s.sample(&mut rng, &spec).inv().is_ok());
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let h = QuatAlgebra::hamilton();
        let spec = SampleSpec::new(10);
        assert_eq!(sample_element(&h, &spec, 9), sample_element(&h, &spec, 9));
        let draw = |seed| {
            let mut rng = trial_rng(seed, 3);
            (0..5)
                .map(|_| h.sample(&mut rng, &spec))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        assert_ne!(draw(5), draw(6));
    }

    #[test]
    fn tower_samples_stay_shiftable() {
        let tower = TowerRing::new(QuatAlgebra::hamilton(), 2);
        let mut rng = trial_rng(3, 0);
        for _ in 0..50 {
            let x = tower.sample(&mut rng, &SampleSpec::new(5));
            assert!(x.tower_shift(1).is_ok());
        }
    }
}
