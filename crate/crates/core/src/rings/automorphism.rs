use std::fmt;

use super::{AlgebraError, AlgebraResult, RingContext, RingElement};

/// The ring automorphisms used as series twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Identity,
    /// `u + v√d ↦ u − v√d`
    QuadConjugation,
    /// `t_i ↦ t_{i+offset}` on the tower, fixing quaternion coefficients.
    TowerShift(i64),
}

impl Automorphism {
    /// Canonical form: `TowerShift(0)` is the identity.
    pub fn normalized(self) -> Self {
        match self {
            Automorphism::TowerShift(0) => Automorphism::Identity,
            other => other,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Automorphism::TowerShift(k) => Automorphism::TowerShift(-k),
            other => other,
        }
        .normalized()
    }

    /// `self^n` for any integer `n`.
    pub fn pow(self, n: i64) -> Self {
        match self {
            Automorphism::Identity => Automorphism::Identity,
            Automorphism::QuadConjugation if n.rem_euclid(2) == 0 => Automorphism::Identity,
            Automorphism::QuadConjugation => Automorphism::QuadConjugation,
            Automorphism::TowerShift(k) => Automorphism::TowerShift(k * n).normalized(),
        }
    }

    /// `self ∘ other`, when both are of compatible kinds.
    pub fn compose(self, other: Self) -> Option<Self> {
        use Automorphism::*;
        match (self.normalized(), other.normalized()) {
            (Identity, x) | (x, Identity) => Some(x),
            (QuadConjugation, QuadConjugation) => Some(Identity),
            (TowerShift(a), TowerShift(b)) => Some(TowerShift(a + b).normalized()),
            _ => None,
        }
    }

    /// Multiplicative order; `None` for infinite order.
    pub fn order(self) -> Option<u64> {
        match self.normalized() {
            Automorphism::Identity => Some(1),
            Automorphism::QuadConjugation => Some(2),
            Automorphism::TowerShift(_) => None,
        }
    }

    pub fn is_identity(self) -> bool {
        self.normalized() == Automorphism::Identity
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Identity => f.write_str("id"),
            Automorphism::QuadConjugation => f.write_str("conj"),
            Automorphism::TowerShift(k) => write!(f, "shift({k})"),
        }
    }
}

/// Elements on which automorphisms can act.
pub trait Twistable: RingElement {
    /// Apply `h`; errors when `h` is not an automorphism of the element's ring.
    fn apply_automorphism(&self, h: Automorphism) -> AlgebraResult<Self>;
}

pub fn apply_automorphism<E: Twistable>(h: Automorphism, x: &E) -> AlgebraResult<E> {
    x.apply_automorphism(h)
}

pub(crate) fn inapplicable<R: RingContext>(h: Automorphism, ring: &R) -> AlgebraError {
    AlgebraError::InapplicableAutomorphism {
        automorphism: h,
        ring: Box::new(ring.handle()),
    }
}

impl Twistable for super::Rational {
    fn apply_automorphism(&self, h: Automorphism) -> AlgebraResult<Self> {
        if h.is_identity() {
            Ok(self.clone())
        } else {
            Err(inapplicable(h, self.ring()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_powers_compose() {
        let s = Automorphism::TowerShift(1);
        let mut acc = Automorphism::Identity;
        for n in 1..6 {
            acc = acc.compose(s).unwrap();
            assert_eq!(acc, s.pow(n));
            assert_eq!(acc, Automorphism::TowerShift(n));
        }
        assert_eq!(s.compose(s.inverse()), Some(Automorphism::Identity));
    }

    #[test]
    fn conjugation_has_order_two() {
        let c = Automorphism::QuadConjugation;
        assert_eq!(c.order(), Some(2));
        assert_eq!(c.pow(2), Automorphism::Identity);
        assert_eq!(c.pow(-3), c);
        assert_eq!(c.compose(c), Some(Automorphism::Identity));
        assert_eq!(c.compose(Automorphism::TowerShift(1)), None);
        assert_eq!(Automorphism::TowerShift(3).order(), None);
    }
}
