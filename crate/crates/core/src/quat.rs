//! Generalized quaternion algebras `H(a,b | ℚ)` with `i² = a`, `j² = b`, `k = ij = −ji`.
//!
//! The division property is not decided up front. Inversion checks the reduced norm and
//! reports a nonzero element of norm zero as [`AlgebraError::NotADivisionRing`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::rings::automorphism_inapplicable;
use crate::rings::{
    AlgebraError, AlgebraResult, Automorphism, Rational, RingContext, RingElement, RingHandle,
    Twistable,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuatParams {
    pub a: Rational,
    pub b: Rational,
}

impl QuatParams {
    pub fn new(a: Rational, b: Rational) -> AlgebraResult<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::InvalidParameter(format!(
                "quaternion parameters must be nonzero, got ({a},{b})"
            )));
        }
        Ok(QuatParams { a, b })
    }

    /// Hamilton's quaternions over ℚ.
    pub fn hamilton() -> Self {
        QuatParams {
            a: Rational::from(-1),
            b: Rational::from(-1),
        }
    }
}

impl Default for QuatParams {
    fn default() -> Self {
        Self::hamilton()
    }
}

/// The algebra `H(a,b)` as a ring context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatAlgebra(Arc<QuatParams>);

impl QuatAlgebra {
    pub fn new(params: QuatParams) -> Self {
        QuatAlgebra(Arc::new(params))
    }

    pub fn hamilton() -> Self {
        Self::new(QuatParams::hamilton())
    }

    pub fn params(&self) -> &QuatParams {
        &self.0
    }

    pub fn elem(&self, w: Rational, x: Rational, y: Rational, z: Rational) -> Quaternion {
        Quaternion {
            alg: self.clone(),
            w,
            x,
            y,
            z,
        }
    }

    /// Element with integer coordinates.
    pub fn int(&self, w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        self.elem(w.into(), x.into(), y.into(), z.into())
    }

    pub fn i(&self) -> Quaternion {
        self.int(0, 1, 0, 0)
    }

    pub fn j(&self) -> Quaternion {
        self.int(0, 0, 1, 0)
    }

    pub fn k(&self) -> Quaternion {
        self.int(0, 0, 0, 1)
    }

    /// Parse the literal `(w,x,y,z)`, each coordinate `p` or `p/q`. A bare rational is
    /// accepted as a central element.
    pub fn parse(&self, text: &str) -> Result<Quaternion, QuaternionLiteralError> {
        let err = || QuaternionLiteralError(text.to_string());
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(err());
            }
            let coords = parts
                .iter()
                .map(|p| p.parse::<Rational>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err())?;
            let [w, x, y, z]: [Rational; 4] = coords.try_into().map_err(|_| err())?;
            Ok(self.elem(w, x, y, z))
        } else {
            let q: Rational = t.parse().map_err(|_| err())?;
            Ok(self.from_rational(&q))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid quaternion literal `{0}` (expected (w,x,y,z))")]
pub struct QuaternionLiteralError(pub String);

impl fmt::Display for QuatAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.0.a, self.0.b)
    }
}

impl RingContext for QuatAlgebra {
    type Elem = Quaternion;

    fn handle(&self) -> RingHandle {
        RingHandle::QuatAlgebra(self.0.a.clone(), self.0.b.clone())
    }

    fn zero(&self) -> Quaternion {
        self.int(0, 0, 0, 0)
    }

    fn one(&self) -> Quaternion {
        self.int(1, 0, 0, 0)
    }

    fn from_rational(&self, q: &Rational) -> Quaternion {
        self.elem(
            q.clone(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// `w + x·i + y·j + z·k`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quaternion {
    alg: QuatAlgebra,
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

/// Minimal polynomial over ℚ, monic, coefficients from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPoly {
    pub coeffs: Vec<Rational>,
}

impl MinPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluate at a quaternion by Horner's rule.
    pub fn eval(&self, q: &Quaternion) -> AlgebraResult<Quaternion> {
        let alg = q.ring();
        let mut acc = alg.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q)?.add(&alg.from_rational(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for MinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{deg}"),
            };
            let (neg, mag) = (c.is_negative(), c.abs());
            let body = match (mag.is_one(), mono.is_empty()) {
                (true, false) => mono,
                (_, true) => mag.to_string(),
                (false, false) => format!("{mag}*{mono}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Quaternion {
    pub fn algebra(&self) -> &QuatAlgebra {
        &self.alg
    }

    pub fn params(&self) -> &QuatParams {
        self.alg.params()
    }

    pub fn conjugate(&self) -> Quaternion {
        self.alg.elem(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Reduced trace `2w`.
    pub fn trd(&self) -> Rational {
        &self.w + &self.w
    }

    /// Reduced norm `w² − a·x² − b·y² + a·b·z²`.
    pub fn nrd(&self) -> Rational {
        let QuatParams { a, b } = self.params();
        let sq = |r: &Rational| r * r;
        sq(&self.w) - a * &sq(&self.x) - b * &sq(&self.y) + &(a * b) * &sq(&self.z)
    }

    pub fn is_central(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    /// Degree 1 (`X − w`) for central elements, else `X² − trd·X + nrd`.
    pub fn min_poly(&self) -> MinPoly {
        if self.is_central() {
            MinPoly {
                coeffs: vec![-&self.w, Rational::one()],
            }
        } else {
            MinPoly {
                coeffs: vec![self.nrd(), -self.trd(), Rational::one()],
            }
        }
    }

    /// Least `n ≤ bound` with `self^n` central, by iterated exact multiplication.
    pub fn central_order(&self, bound: u32) -> AlgebraResult<Option<u32>> {
        if RingElement::is_zero(self) {
            return Err(AlgebraError::ZeroInverse);
        }
        let mut power = self.clone();
        for n in 1..=bound {
            if power.is_central() {
                return Ok(Some(n));
            }
            power = power.mul(self)?;
        }
        Ok(None)
    }

    /// `p·q·p⁻¹·q⁻¹`
    pub fn commutator(&self, q: &Quaternion) -> AlgebraResult<Quaternion> {
        self.mul(q)?.mul(&self.inv()?)?.mul(&q.inv()?)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.w, self.x, self.y, self.z)
    }
}

impl RingElement for Quaternion {
    type Ring = QuatAlgebra;

    fn ring(&self) -> &QuatAlgebra {
        &self.alg
    }

    fn add(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.alg.check_same(&rhs.alg)?;
        Ok(self.alg.elem(
            &self.w + &rhs.w,
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.z + &rhs.z,
        ))
    }

    fn neg(&self) -> Self {
        self.alg.elem(-&self.w, -&self.x, -&self.y, -&self.z)
    }

    fn sub(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.alg.check_same(&rhs.alg)?;
        Ok(self.alg.elem(
            &self.w - &rhs.w,
            &self.x - &rhs.x,
            &self.y - &rhs.y,
            &self.z - &rhs.z,
        ))
    }

    fn mul(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.alg.check_same(&rhs.alg)?;
        let QuatParams { a, b } = self.params();
        let (w1, x1, y1, z1) = (&self.w, &self.x, &self.y, &self.z);
        let (w2, x2, y2, z2) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        // ij = k, ik = a·j, jk = −b·i, k² = −ab and the anticommuted forms.
        let w = w1 * w2 + a * &(x1 * x2) + b * &(y1 * y2) - &(a * b) * &(z1 * z2);
        let x = w1 * x2 + x1 * w2 + b * &(z1 * y2 - y1 * z2);
        let y = w1 * y2 + y1 * w2 + a * &(x1 * z2 - z1 * x2);
        let z = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2;
        Ok(self.alg.elem(w, x, y, z))
    }

    fn inv(&self) -> AlgebraResult<Self> {
        if RingElement::is_zero(self) {
            return Err(AlgebraError::ZeroInverse);
        }
        let n = self.nrd();
        if n.is_zero() {
            return Err(AlgebraError::NotADivisionRing {
                element: self.to_string(),
            });
        }
        Ok(self.conjugate().scale(&n.recip()?))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.alg
            .elem(&self.w * q, &self.x * q, &self.y * q, &self.z * q)
    }

    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.is_central()
    }

    fn denominator_lcm(&self) -> BigInt {
        self.w
            .denom()
            .lcm(self.x.denom())
            .lcm(self.y.denom())
            .lcm(self.z.denom())
    }
}

impl Twistable for Quaternion {
    fn apply_automorphism(&self, h: Automorphism) -> AlgebraResult<Self> {
        if h.is_identity() {
            Ok(self.clone())
        } else {
            Err(automorphism_inapplicable(h, &self.alg))
        }
    }
}

pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> AlgebraResult<Quaternion> {
    p.mul(q)
}

pub fn quat_inv(q: &Quaternion) -> AlgebraResult<Quaternion> {
    q.inv()
}
