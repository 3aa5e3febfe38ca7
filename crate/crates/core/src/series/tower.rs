//! Finite-depth approximation of the iterated Laurent tower `D_∞` over a quaternion
//! algebra.
//!
//! The nested construction `D_0 = D((t_0))`, `D_1 = D_0((t_1))`, `D_{-1} = D_1((t_{-1}))`,
//! … is flattened into multivariate Laurent terms in commuting variables
//! `t_{-m}, …, t_m`. Every nesting level is untwisted, so nested and flattened products
//! agree. Truncation is by total degree: terms of total degree below `total_prec` are
//! exactly known.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{
    automorphism_inapplicable, AlgebraError, AlgebraResult, Automorphism, Rational, RingContext,
    RingElement, RingHandle, Twistable,
};

pub const DEFAULT_DEPTH: u32 = 2;

/// Exponents of `t_{-m}, …, t_m`, stored at index `i + m`.
pub type Exponents = Vec<i32>;

/// Variable indices in the order the tower adjoins them: `0, 1, -1, 2, -2, …`.
pub fn construction_order(depth: u32) -> Vec<i64> {
    let mut out = vec![0];
    for n in 1..=depth as i64 {
        out.push(n);
        out.push(-n);
    }
    out
}

#[derive(Debug, Clone)]
pub struct TowerRing {
    algebra: QuatAlgebra,
    depth: u32,
    default_prec: i64,
}

impl TowerRing {
    pub fn new(algebra: QuatAlgebra, depth: u32) -> Self {
        TowerRing {
            algebra,
            depth: depth.max(1),
            default_prec: crate::series::DEFAULT_PRECISION,
        }
    }

    /// Total-degree precision given to constants and variables.
    pub fn with_precision(mut self, prec: i64) -> Self {
        self.default_prec = prec;
        self
    }

    pub fn algebra(&self) -> &QuatAlgebra {
        &self.algebra
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn default_precision(&self) -> i64 {
        self.default_prec
    }

    fn width(&self) -> usize {
        2 * self.depth as usize + 1
    }

    pub fn in_window(&self, index: i64) -> bool {
        index.unsigned_abs() <= self.depth as u64
    }

    fn slot(&self, index: i64) -> AlgebraResult<usize> {
        if self.in_window(index) {
            Ok((index + self.depth as i64) as usize)
        } else {
            Err(AlgebraError::WindowOverflow {
                index,
                depth: self.depth,
            })
        }
    }

    pub fn quat(&self, q: Quaternion) -> AlgebraResult<TowerElem> {
        self.term(q, vec![0; self.width()])
    }

    fn term(&self, q: Quaternion, exps: Exponents) -> AlgebraResult<TowerElem> {
        self.algebra.check_same(q.ring())?;
        let mut terms = BTreeMap::new();
        if !RingElement::is_zero(&q) {
            terms.insert(exps, q);
        }
        Ok(TowerElem::normalized(
            self.clone(),
            terms,
            self.default_prec,
        ))
    }

    /// `c · Π t_i^{e_i}` from `(index, exponent)` pairs.
    pub fn monomial(&self, c: Quaternion, vars: &[(i64, i32)]) -> AlgebraResult<TowerElem> {
        let mut exps = vec![0; self.width()];
        for &(i, e) in vars {
            exps[self.slot(i)?] += e;
        }
        let deg: i64 = exps.iter().map(|&e| e as i64).sum();
        let mut elem = self.term(c, exps)?;
        elem.total_prec = elem.total_prec.max(deg + 1);
        Ok(elem)
    }

    /// The variable `t_i`.
    pub fn var(&self, index: i64) -> AlgebraResult<TowerElem> {
        self.monomial(self.algebra.one(), &[(index, 1)])
    }
}

impl fmt::Display for TowerRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.handle())
    }
}

impl RingContext for TowerRing {
    type Elem = TowerElem;

    fn handle(&self) -> RingHandle {
        RingHandle::Tower {
            algebra: Box::new(self.algebra.handle()),
            depth: self.depth,
        }
    }

    fn zero(&self) -> TowerElem {
        TowerElem::normalized(self.clone(), BTreeMap::new(), self.default_prec)
    }

    fn one(&self) -> TowerElem {
        self.quat(self.algebra.one()).expect("same algebra")
    }

    fn from_rational(&self, q: &Rational) -> TowerElem {
        self.quat(self.algebra.from_rational(q))
            .expect("same algebra")
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.depth == other.depth && self.algebra.same_ring(&other.algebra)
    }

    fn admits(&self, h: &Automorphism) -> bool {
        matches!(
            h.normalized(),
            Automorphism::Identity | Automorphism::TowerShift(_)
        )
    }
}

/// Element of the depth-`m` tower: quaternion-coefficient Laurent terms in `t_{-m..m}`.
#[derive(Debug, Clone)]
pub struct TowerElem {
    ring: TowerRing,
    terms: BTreeMap<Exponents, Quaternion>,
    total_prec: i64,
}

fn total_degree(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

impl TowerElem {
    fn normalized(
        ring: TowerRing,
        mut terms: BTreeMap<Exponents, Quaternion>,
        total_prec: i64,
    ) -> Self {
        terms.retain(|e, c| total_degree(e) < total_prec && !RingElement::is_zero(c));
        TowerElem {
            ring,
            terms,
            total_prec,
        }
    }

    pub fn tower_ring(&self) -> &TowerRing {
        &self.ring
    }

    pub fn total_prec(&self) -> i64 {
        self.total_prec
    }

    /// Least total degree of a stored term, or `total_prec` if there is none.
    pub fn valuation(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| total_degree(e))
            .min()
            .unwrap_or(self.total_prec)
    }

    /// Stored terms as `(exponents indexed i + depth, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Quaternion)> {
        self.terms.iter()
    }

    /// Indices of variables that occur with nonzero exponent.
    pub fn variables(&self) -> Vec<i64> {
        let m = self.ring.depth as i64;
        let mut used: Vec<i64> = self
            .terms
            .keys()
            .flat_map(|e| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(move |(k, _)| k as i64 - m)
            })
            .collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Central rational value when the element is a rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                (e.iter().all(|&x| x == 0) && c.is_central()).then(|| c.w.clone())
            }
            _ => None,
        }
    }

    /// Apply `f^offset`: `t_i ↦ t_{i+offset}`, coefficients fixed.
    pub fn tower_shift(&self, offset: i64) -> AlgebraResult<TowerElem> {
        if offset == 0 {
            return Ok(self.clone());
        }
        let m = self.ring.depth as i64;
        let width = self.ring.width();
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut shifted = vec![0; width];
            for (k, &x) in e.iter().enumerate() {
                if x != 0 {
                    let target = k as i64 - m + offset;
                    shifted[self.ring.slot(target)?] = x;
                }
            }
            out.insert(shifted, c.clone());
        }
        Ok(TowerElem::normalized(
            self.ring.clone(),
            out,
            self.total_prec,
        ))
    }

    /// Compare exponent vectors by the nested valuation: the last-adjoined variable is
    /// the most significant.
    fn nested_cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        let m = self.ring.depth as i64;
        for &i in construction_order(self.ring.depth).iter().rev() {
            let k = (i + m) as usize;
            match a[k].cmp(&b[k]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring)
            && self.total_prec == other.total_prec
            && self.terms == other.terms
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let m = self.ring.depth as i64;
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| {
                    let i = k as i64 - m;
                    if x == 1 {
                        format!("t{i}")
                    } else {
                        format!("t{i}^{x}")
                    }
                })
                .collect();
            let coeff = if c.is_central() {
                c.w.to_string()
            } else {
                c.to_string()
            };
            if vars.is_empty() {
                f.write_str(&coeff)?;
            } else if c.is_central() && c.w.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl RingElement for TowerElem {
    type Ring = TowerRing;

    fn ring(&self) -> &TowerRing {
        &self.ring
    }

    fn add(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.ring.check_same(&rhs.ring)?;
        let prec = self.total_prec.min(rhs.total_prec);
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            let sum = match out.remove(e) {
                Some(prev) => prev.add(c)?,
                None => c.clone(),
            };
            out.insert(e.clone(), sum);
        }
        Ok(TowerElem::normalized(self.ring.clone(), out, prec))
    }

    fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        TowerElem::normalized(self.ring.clone(), terms, self.total_prec)
    }

    fn mul(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.ring.check_same(&rhs.ring)?;
        let prec = (self.total_prec + rhs.valuation()).min(rhs.total_prec + self.valuation());
        let mut out: BTreeMap<Exponents, Quaternion> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &rhs.terms {
                if d1 + total_degree(e2) >= prec {
                    continue;
                }
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let term = c1.mul(c2)?;
                let sum = match out.remove(&e) {
                    Some(prev) => prev.add(&term)?,
                    None => term,
                };
                out.insert(e, sum);
            }
        }
        Ok(TowerElem::normalized(self.ring.clone(), out, prec))
    }

    /// Supported when the element is `c·t^α·(1 + w)` with `c·t^α` its unique term of least
    /// total degree and every term of `w` positive both in total degree and in the nested
    /// valuation. Then the total-degree Neumann series is the genuine inverse in the tower.
    fn inv(&self) -> AlgebraResult<Self> {
        if self.terms.is_empty() {
            return Err(AlgebraError::ZeroOrUnknownLeading {
                prec: self.total_prec,
            });
        }
        let v = self.valuation();
        let leading: Vec<(&Exponents, &Quaternion)> = self
            .terms
            .iter()
            .filter(|(e, _)| total_degree(e) == v)
            .collect();
        if leading.len() != 1 {
            return Err(AlgebraError::UnsupportedInverse(format!(
                "leading form of {self} is not a monomial"
            )));
        }
        let (alpha, c) = leading[0];
        for e in self.terms.keys() {
            if e != alpha && self.nested_cmp(e, alpha) != Ordering::Greater {
                return Err(AlgebraError::UnsupportedInverse(format!(
                    "{self} is not led by its least-total-degree monomial in the nested order"
                )));
            }
        }
        let c_inv = c.inv()?;
        let neg_alpha: Exponents = alpha.iter().map(|x| -x).collect();
        let rel = self.total_prec - v;
        let y = TowerElem::normalized(
            self.ring.clone(),
            BTreeMap::from([(neg_alpha, c_inv)]),
            -v + rel + 1,
        );
        let z = y.mul(self)?;
        let one = TowerElem::normalized(
            self.ring.clone(),
            BTreeMap::from([(vec![0; self.ring.width()], self.ring.algebra.one())]),
            z.total_prec,
        );
        let neg_w = z.sub(&one)?.neg();
        let mut term = one.clone();
        let mut acc = one;
        for _ in 1..z.total_prec.max(1) {
            term = term.mul(&neg_w)?;
            if term.terms.is_empty() {
                break;
            }
            acc = acc.add(&term)?;
        }
        acc.mul(&y)
    }

    fn scale(&self, q: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.scale(q)))
            .collect();
        TowerElem::normalized(self.ring.clone(), terms, self.total_prec)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn precision(&self) -> Option<i64> {
        Some(self.total_prec)
    }

    fn is_zero_below(&self, p: i64) -> bool {
        self.terms.keys().all(|e| total_degree(e) >= p)
    }

    fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }
}

impl Twistable for TowerElem {
    fn apply_automorphism(&self, h: Automorphism) -> AlgebraResult<Self> {
        match h.normalized() {
            Automorphism::Identity => Ok(self.clone()),
            Automorphism::TowerShift(k) => self.tower_shift(k),
            other => Err(automorphism_inapplicable(other, &self.ring)),
        }
    }
}

pub fn tower_shift(x: &TowerElem, offset: i64) -> AlgebraResult<TowerElem> {
    x.tower_shift(offset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(depth: u32) -> TowerRing {
        TowerRing::new(QuatAlgebra::hamilton(), depth)
    }

    #[test]
    fn construction_order_interleaves() {
        assert_eq!(construction_order(2), vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn shift_moves_variables() {
        let d = ring(2);
        assert_eq!(d.var(0).unwrap().tower_shift(1).unwrap(), d.var(1).unwrap());
        let q = d.quat(d.algebra().int(1, 2, 0, -1)).unwrap();
        assert_eq!(q.tower_shift(1).unwrap(), q);
        let d1 = ring(1);
        assert_eq!(
            d1.var(1).unwrap().tower_shift(1),
            Err(AlgebraError::WindowOverflow { index: 2, depth: 1 })
        );
        assert!(matches!(
            d1.var(2),
            Err(AlgebraError::WindowOverflow { .. })
        ));
    }

    #[test]
    fn variables_commute_with_coefficients() {
        let d = ring(2);
        let t0 = d.var(0).unwrap();
        let t1 = d.var(-1).unwrap();
        let i = d.quat(d.algebra().i()).unwrap();
        assert_eq!(t0.mul(&i).unwrap(), i.mul(&t0).unwrap());
        assert_eq!(t0.mul(&t1).unwrap(), t1.mul(&t0).unwrap());
        let j = d.quat(d.algebra().j()).unwrap();
        assert_ne!(i.mul(&j).unwrap(), j.mul(&i).unwrap());
    }

    #[test]
    fn monomial_inverse() {
        let d = ring(2);
        let x = d
            .monomial(d.algebra().int(1, 1, 0, 0), &[(0, 2), (-1, -1)])
            .unwrap();
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).unwrap().sub(&d.one()).unwrap().is_zero());
    }

    #[test]
    fn neumann_inverse_in_nested_order() {
        let d = ring(1);
        // 1 + t1: t1 is positive in both gradings.
        let x = d.one().add(&d.var(1).unwrap()).unwrap();
        let inv = x.inv().unwrap();
        let prod = x.mul(&inv).unwrap();
        assert!(prod.sub(&d.one()).unwrap().is_zero_below(prod.total_prec()));
        assert!(prod.total_prec() >= d.default_precision());
    }

    #[test]
    fn unsupported_inverses_are_reported() {
        let d = ring(1);
        let sum = d.var(0).unwrap().add(&d.var(1).unwrap()).unwrap();
        assert!(matches!(
            sum.inv(),
            Err(AlgebraError::UnsupportedInverse(_))
        ));
        // 1 + t0^2 t1^-1 has positive total degree but is negative in the nested order.
        let w = d.monomial(d.algebra().one(), &[(0, 2), (1, -1)]).unwrap();
        let x = d.one().add(&w).unwrap();
        assert!(matches!(x.inv(), Err(AlgebraError::UnsupportedInverse(_))));
        assert!(matches!(
            d.zero().inv(),
            Err(AlgebraError::ZeroOrUnknownLeading { .. })
        ));
    }

    #[test]
    fn display() {
        let d = ring(2);
        let x = d
            .var(-1)
            .unwrap()
            .add(&d.quat(d.algebra().j()).unwrap())
            .unwrap();
        assert_eq!(x.to_string(), "(0,0,1,0) + t-1");
        assert_eq!(d.from_rational(&Rational::from(3)).to_string(), "3");
    }
}
