//! Exact scalar rings and the uniform ring interface.
//!
//! Every element carries the context of the ring it lives in ([`RingElement::ring`]),
//! and binary operations between elements of structurally different rings fail with
//! [`AlgebraError::RingMismatch`]. Values are immutable; every operation returns a new
//! value.

mod automorphism;
mod quad;
mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

pub(crate) use automorphism::inapplicable as automorphism_inapplicable;
pub use automorphism::{apply_automorphism, Automorphism, Twistable};
pub use quad::{QuadField, QuadFieldElem};
pub use rational::{ParseRationalError, Rational, RationalField};

/// Structural identifier of a ring instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingHandle {
    Rational,
    QuadField(Rational),
    QuatAlgebra(Rational, Rational),
    Series {
        base: Box<RingHandle>,
        variable: String,
        twist: Automorphism,
    },
    Tower {
        algebra: Box<RingHandle>,
        depth: u32,
    },
    /// Twisted series over a tower with twist `TowerShift(1)`.
    Outer {
        tower: Box<RingHandle>,
    },
}

impl fmt::Display for RingHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingHandle::Rational => f.write_str("Q"),
            RingHandle::QuadField(d) => write!(f, "Q(sqrt({d}))"),
            RingHandle::QuatAlgebra(a, b) => write!(f, "H({a},{b})"),
            RingHandle::Series {
                base,
                variable,
                twist: Automorphism::Identity,
            } => write!(f, "{base}(({variable}))"),
            RingHandle::Series {
                base,
                variable,
                twist,
            } => write!(f, "{base}(({variable},{twist}))"),
            RingHandle::Tower { algebra, depth } => write!(f, "{algebra}_inf[depth={depth}]"),
            RingHandle::Outer { tower } => write!(f, "{tower}((t,f))"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: Box<RingHandle>,
        right: Box<RingHandle>,
    },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("not a division ring: {element} is a nonzero zero divisor (reduced norm 0)")]
    NotADivisionRing { element: String },
    #[error("series has no known nonzero coefficient below precision {prec}")]
    ZeroOrUnknownLeading { prec: i64 },
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("automorphism {automorphism} does not apply to {ring}")]
    InapplicableAutomorphism {
        automorphism: Automorphism,
        ring: Box<RingHandle>,
    },
    #[error("window overflow: variable t{index} outside active window [-{depth}, {depth}]")]
    WindowOverflow { index: i64, depth: u32 },
    #[error("unsupported inverse: {0}")]
    UnsupportedInverse(String),
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
}

impl AlgebraError {
    /// True for the failures that mean "this value has no inverse", as opposed to
    /// configuration or representation limits.
    pub fn is_non_invertible(&self) -> bool {
        matches!(
            self,
            AlgebraError::ZeroInverse
                | AlgebraError::NotADivisionRing { .. }
                | AlgebraError::ZeroOrUnknownLeading { .. }
        )
    }
}

pub type AlgebraResult<T> = Result<T, AlgebraError>;

/// A ring instance: knows its identity and how to build its distinguished elements.
pub trait RingContext: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Elem: RingElement<Ring = Self>;

    fn handle(&self) -> RingHandle;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    /// Image of a rational under the structure map ℚ → ring.
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// Ring identity for mismatch checks. Configuration that does not change the ring
    /// (default precision, window bounds) is ignored.
    fn same_ring(&self, other: &Self) -> bool {
        self.handle() == other.handle()
    }

    fn check_same(&self, other: &Self) -> AlgebraResult<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: Box::new(self.handle()),
                right: Box::new(other.handle()),
            })
        }
    }

    /// Whether `h` is an automorphism of this ring.
    fn admits(&self, h: &Automorphism) -> bool {
        matches!(h, Automorphism::Identity)
    }
}

/// An immutable ring element.
pub trait RingElement: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ring: RingContext<Elem = Self>;

    fn ring(&self) -> &Self::Ring;

    fn add(&self, rhs: &Self) -> AlgebraResult<Self>;

    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> AlgebraResult<Self>;

    fn inv(&self) -> AlgebraResult<Self>;

    /// Multiplication by a central rational.
    fn scale(&self, q: &Rational) -> Self;

    /// For truncated values: no known nonzero coefficient.
    fn is_zero(&self) -> bool;

    /// Frontier below which every coefficient is certified; `None` means exact.
    fn precision(&self) -> Option<i64> {
        None
    }

    /// All known coefficients of degree below `p` vanish.
    fn is_zero_below(&self, p: i64) -> bool {
        let _ = p;
        self.is_zero()
    }

    /// Lcm of the denominators of all rational coordinates; used to move computations
    /// onto integral representatives.
    fn denominator_lcm(&self) -> BigInt {
        BigInt::one()
    }

    fn pow(&self, e: i64) -> AlgebraResult<Self> {
        if e == 0 {
            return Ok(self.ring().one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        // Starting from `base` rather than `one()` keeps truncated values from
        // inheriting the default precision of the ring's unit.
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }
}

/// `xy - yx`
pub fn lie_bracket<E: RingElement>(x: &E, y: &E) -> AlgebraResult<E> {
    x.mul(y)?.sub(&y.mul(x)?)
}

pub fn ring_add<E: RingElement>(x: &E, y: &E) -> AlgebraResult<E> {
    x.add(y)
}

pub fn ring_mul<E: RingElement>(x: &E, y: &E) -> AlgebraResult<E> {
    x.mul(y)
}

pub fn ring_inv<E: RingElement>(x: &E) -> AlgebraResult<E> {
    x.inv()
}
