use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};

use super::automorphism::inapplicable;
use super::{
    AlgebraError, AlgebraResult, Automorphism, Rational, RingContext, RingElement, RingHandle,
    Twistable,
};

const CHECK_LIMIT: u64 = 1_000_000_000;

#[derive(Debug, PartialEq, Eq)]
struct QuadParams {
    d: Rational,
    unchecked: bool,
}

/// The field ℚ(√d).
#[derive(Debug, Clone)]
pub struct QuadField(Arc<QuadParams>);

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.0.d == other.0.d
    }
}

impl Eq for QuadField {}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn is_square_free(n: u128) -> bool {
    // Strip primes up to the cube root; what remains has at most two prime factors,
    // so it is square-free iff it is not a perfect square.
    let mut m = n;
    let mut p: u128 = 2;
    while p * p * p <= n {
        if m.is_multiple_of(p * p) {
            return false;
        }
        while m.is_multiple_of(p) {
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m <= 1 {
        return true;
    }
    let r = m.sqrt();
    r * r != m
}

impl QuadField {
    /// Build ℚ(√d). `d` must be nonzero and not a square, and `|numer·denom|` must be
    /// square-free. The checks run only when numerator and denominator are at most 10^9
    /// in absolute value; larger `d` are accepted with [`QuadField::is_unchecked`] set.
    pub fn new(d: Rational) -> AlgebraResult<Self> {
        if d.is_zero() {
            return Err(AlgebraError::InvalidParameter(
                "quadratic field with d = 0".into(),
            ));
        }
        let small = |n: &BigInt| n.abs().to_u64().is_some_and(|v| v <= CHECK_LIMIT);
        let unchecked = !(small(d.numer()) && small(d.denom()));
        if !unchecked {
            let prod = d.numer() * d.denom();
            if is_perfect_square(&prod) {
                return Err(AlgebraError::InvalidParameter(format!(
                    "d = {d} is a square in Q"
                )));
            }
            let abs = prod.abs().to_u128().expect("bounded by 10^18");
            if !is_square_free(abs) {
                return Err(AlgebraError::InvalidParameter(format!(
                    "d = {d} is not square-free"
                )));
            }
        }
        Ok(QuadField(Arc::new(QuadParams { d, unchecked })))
    }

    pub fn d(&self) -> &Rational {
        &self.0.d
    }

    /// Set when `d` was too large for the square-freeness check.
    pub fn is_unchecked(&self) -> bool {
        self.0.unchecked
    }

    pub fn elem(&self, u: Rational, v: Rational) -> QuadFieldElem {
        QuadFieldElem {
            field: self.clone(),
            u,
            v,
        }
    }

    /// √d
    pub fn generator(&self) -> QuadFieldElem {
        self.elem(Rational::zero(), Rational::one())
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.0.d)
    }
}

impl RingContext for QuadField {
    type Elem = QuadFieldElem;

    fn handle(&self) -> RingHandle {
        RingHandle::QuadField(self.0.d.clone())
    }

    fn zero(&self) -> QuadFieldElem {
        self.elem(Rational::zero(), Rational::zero())
    }

    fn one(&self) -> QuadFieldElem {
        self.elem(Rational::one(), Rational::zero())
    }

    fn from_rational(&self, q: &Rational) -> QuadFieldElem {
        self.elem(q.clone(), Rational::zero())
    }

    fn same_ring(&self, other: &Self) -> bool {
        self == other
    }

    fn admits(&self, h: &Automorphism) -> bool {
        matches!(
            h.normalized(),
            Automorphism::Identity | Automorphism::QuadConjugation
        )
    }
}

/// `u + v√d`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadFieldElem {
    field: QuadField,
    pub u: Rational,
    pub v: Rational,
}

impl QuadFieldElem {
    pub fn conjugate(&self) -> Self {
        self.field.elem(self.u.clone(), -&self.v)
    }

    /// `u² − d v²`
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - &(self.field.d() * &(&self.v * &self.v))
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }
}

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let root = format!("sqrt({})", self.field.d());
        let vpart = if self.v.is_one() {
            root
        } else if (-&self.v).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.v)
        };
        if self.u.is_zero() {
            f.write_str(&vpart)
        } else if let Some(rest) = vpart.strip_prefix('-') {
            write!(f, "{} - {}", self.u, rest)
        } else {
            write!(f, "{} + {}", self.u, vpart)
        }
    }
}

impl RingElement for QuadFieldElem {
    type Ring = QuadField;

    fn ring(&self) -> &QuadField {
        &self.field
    }

    fn add(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.field.elem(&self.u + &rhs.u, &self.v + &rhs.v))
    }

    fn neg(&self) -> Self {
        self.field.elem(-&self.u, -&self.v)
    }

    fn mul(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.field.check_same(&rhs.field)?;
        let d = self.field.d();
        let u = &self.u * &rhs.u + d * &(&self.v * &rhs.v);
        let v = &self.u * &rhs.v + &self.v * &rhs.u;
        Ok(self.field.elem(u, v))
    }

    fn inv(&self) -> AlgebraResult<Self> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInverse);
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(AlgebraError::NotADivisionRing {
                element: self.to_string(),
            });
        }
        let r = n.recip()?;
        Ok(self.conjugate().scale(&r))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.field.elem(&self.u * q, &self.v * q)
    }

    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn denominator_lcm(&self) -> BigInt {
        self.u.denom().lcm(self.v.denom())
    }
}

impl Twistable for QuadFieldElem {
    fn apply_automorphism(&self, h: Automorphism) -> AlgebraResult<Self> {
        match h.normalized() {
            Automorphism::Identity => Ok(self.clone()),
            Automorphism::QuadConjugation => Ok(self.conjugate()),
            other => Err(inapplicable(other, &self.field)),
        }
    }
}
