use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::rings::{
    AlgebraError, AlgebraResult, Automorphism, Rational, RingContext, RingElement, RingHandle,
    Twistable,
};

pub const DEFAULT_PRECISION: i64 = 12;
pub const DEFAULT_WINDOW: i64 = 64;

/// The ring `R((t, φ))` of truncated Laurent series with `t·a = φ(a)·t`.
#[derive(Debug, Clone)]
pub struct SeriesRing<C: RingElement> {
    base: C::Ring,
    variable: Arc<str>,
    twist: Automorphism,
    default_prec: i64,
    window: i64,
}

impl<C: Twistable> SeriesRing<C> {
    pub fn new(base: C::Ring, twist: Automorphism) -> AlgebraResult<Self> {
        let twist = twist.normalized();
        if !base.admits(&twist) {
            return Err(AlgebraError::InapplicableAutomorphism {
                automorphism: twist,
                ring: Box::new(base.handle()),
            });
        }
        Ok(SeriesRing {
            base,
            variable: Arc::from("t"),
            twist,
            default_prec: DEFAULT_PRECISION,
            window: DEFAULT_WINDOW,
        })
    }

    pub fn untwisted(base: C::Ring) -> Self {
        Self::new(base, Automorphism::Identity).expect("identity always applies")
    }

    pub fn with_variable(mut self, name: &str) -> Self {
        self.variable = Arc::from(name);
        self
    }

    /// Precision given to constants and monomials built from this ring.
    pub fn with_precision(mut self, prec: i64) -> Self {
        self.default_prec = prec;
        self
    }

    /// Bound on `prec − min_deg`; wider results have their precision lowered.
    pub fn with_window(mut self, window: i64) -> Self {
        self.window = window.max(1);
        self
    }

    pub fn base(&self) -> &C::Ring {
        &self.base
    }

    pub fn twist(&self) -> Automorphism {
        self.twist
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn default_precision(&self) -> i64 {
        self.default_prec
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Series with the given terms, known below `prec`. Terms at or above `prec` and zero
    /// coefficients are dropped.
    pub fn series(
        &self,
        terms: impl IntoIterator<Item = (i64, C)>,
        prec: i64,
    ) -> AlgebraResult<TruncSeries<C>> {
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (deg, c) in terms {
            self.base.check_same(c.ring())?;
            if deg >= prec {
                continue;
            }
            let sum = match coeffs.remove(&deg) {
                Some(prev) => prev.add(&c)?,
                None => c,
            };
            coeffs.insert(deg, sum);
        }
        Ok(TruncSeries::normalized(self.clone(), coeffs, prec))
    }

    pub fn monomial(&self, c: C, deg: i64) -> AlgebraResult<TruncSeries<C>> {
        let prec = self.default_prec.max(deg + 1);
        self.series([(deg, c)], prec)
    }

    pub fn constant(&self, c: C) -> AlgebraResult<TruncSeries<C>> {
        self.monomial(c, 0)
    }

    /// The series variable `t`.
    pub fn var(&self) -> TruncSeries<C> {
        self.monomial(self.base.one(), 1)
            .expect("unit belongs to base ring")
    }

    /// Zero known below `prec`.
    pub fn zero_to(&self, prec: i64) -> TruncSeries<C> {
        TruncSeries::normalized(self.clone(), BTreeMap::new(), prec)
    }
}

impl<C: Twistable> fmt::Display for SeriesRing<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.handle())
    }
}

impl<C: Twistable> RingContext for SeriesRing<C> {
    type Elem = TruncSeries<C>;

    fn handle(&self) -> RingHandle {
        let base = self.base.handle();
        match (&base, self.twist) {
            (RingHandle::Tower { .. }, Automorphism::TowerShift(1)) if &*self.variable == "t" => {
                RingHandle::Outer {
                    tower: Box::new(base),
                }
            }
            _ => RingHandle::Series {
                base: Box::new(base),
                variable: self.variable.to_string(),
                twist: self.twist,
            },
        }
    }

    fn zero(&self) -> TruncSeries<C> {
        self.zero_to(self.default_prec)
    }

    fn one(&self) -> TruncSeries<C> {
        self.constant(self.base.one())
            .expect("unit belongs to base ring")
    }

    fn from_rational(&self, q: &Rational) -> TruncSeries<C> {
        self.constant(self.base.from_rational(q))
            .expect("rational image belongs to base ring")
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.base.same_ring(&other.base)
            && self.variable == other.variable
            && self.twist == other.twist
    }

    fn admits(&self, h: &Automorphism) -> bool {
        h.is_identity() || (self.base.admits(h) && h.compose(self.twist).is_some())
    }
}

/// A truncated Laurent series `Σ c_i t^i + O(t^prec)`.
///
/// Coefficients below `prec` are exactly known; stored coefficients are nonzero.
#[derive(Debug, Clone)]
pub struct TruncSeries<C: RingElement> {
    ring: SeriesRing<C>,
    coeffs: BTreeMap<i64, C>,
    prec: i64,
}

impl<C: Twistable> TruncSeries<C> {
    fn normalized(ring: SeriesRing<C>, mut coeffs: BTreeMap<i64, C>, prec: i64) -> Self {
        coeffs.retain(|&d, c| d < prec && !c.is_zero());
        let mut prec = prec;
        if let Some(&low) = coeffs.keys().next() {
            if prec - low > ring.window {
                prec = low + ring.window;
                coeffs.retain(|&d, _| d < prec);
            }
        }
        TruncSeries { ring, coeffs, prec }
    }

    pub fn series_ring(&self) -> &SeriesRing<C> {
        &self.ring
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Least degree with a nonzero known coefficient, or `prec` if there is none.
    pub fn min_deg(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.prec)
    }

    /// Coefficient of `t^deg`; only defined below the precision frontier.
    pub fn coeff(&self, deg: i64) -> AlgebraResult<C> {
        if deg >= self.prec {
            return Err(AlgebraError::InsufficientPrecision {
                needed: deg + 1,
                available: self.prec,
            });
        }
        Ok(self
            .coeffs
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| self.ring.base.zero()))
    }

    /// Stored (nonzero) terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Forget everything at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        Self::normalized(self.ring.clone(), self.coeffs.clone(), self.prec.min(prec))
    }

    /// Equality of all coefficients below `p`; both sides must be known to `p`.
    pub fn eq_to_prec(&self, other: &Self, p: i64) -> AlgebraResult<bool> {
        self.ring.check_same(&other.ring)?;
        let available = self.prec.min(other.prec);
        if available < p {
            return Err(AlgebraError::InsufficientPrecision {
                needed: p,
                available,
            });
        }
        Ok(self.sub(other)?.is_zero_below(p))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let coeffs = self.coeffs.iter().map(|(&d, c)| (d, f(c))).collect();
        Self::normalized(self.ring.clone(), coeffs, self.prec)
    }

    fn try_map_coeffs(&self, f: impl Fn(&C) -> AlgebraResult<C>) -> AlgebraResult<Self> {
        let mut coeffs = BTreeMap::new();
        for (&d, c) in &self.coeffs {
            coeffs.insert(d, f(c)?);
        }
        Ok(Self::normalized(self.ring.clone(), coeffs, self.prec))
    }

    /// Twisted Cauchy product, `(a t^m)(b t^n) = a·φ^m(b)·t^(m+n)`.
    pub fn series_mul(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.ring.check_same(&rhs.ring)?;
        let prec = (self.prec + rhs.min_deg()).min(rhs.prec + self.min_deg());
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        let rhs_low = rhs.min_deg();
        for (&m, a) in &self.coeffs {
            if m + rhs_low >= prec {
                break;
            }
            let phi = self.ring.twist.pow(m);
            for (&n, b) in &rhs.coeffs {
                if m + n >= prec {
                    break;
                }
                let twisted = if phi.is_identity() {
                    b.clone()
                } else {
                    b.apply_automorphism(phi)?
                };
                let term = a.mul(&twisted)?;
                let slot = m + n;
                let sum = match out.remove(&slot) {
                    Some(prev) => prev.add(&term)?,
                    None => term,
                };
                out.insert(slot, sum);
            }
        }
        Ok(Self::normalized(self.ring.clone(), out, prec))
    }

    /// Inverse via `x = c_v t^v (1 + w)` and a truncated Neumann series for `(1 + w)⁻¹`.
    pub fn series_inv(&self) -> AlgebraResult<Self> {
        let (&v, lead) = self
            .coeffs
            .iter()
            .next()
            .ok_or(AlgebraError::ZeroOrUnknownLeading { prec: self.prec })?;
        let lead_inv = lead.inv()?;
        let rel = self.prec - v;
        // y = (c_v t^v)⁻¹ = φ^(-v)(c_v⁻¹) t^(-v), exact; give it ample precision.
        let y_coeff = lead_inv.apply_automorphism(self.ring.twist.pow(-v))?;
        let y = Self::normalized(
            self.ring.clone(),
            BTreeMap::from([(-v, y_coeff)]),
            -v + rel + 1,
        );
        let z = y.series_mul(self)?;
        // z = 1 + w with val(w) ≥ 1, known below `rel`.
        let one = Self::normalized(
            self.ring.clone(),
            BTreeMap::from([(0, self.ring.base.one())]),
            z.prec,
        );
        let w = z.sub(&one)?;
        let mut term = one.clone();
        let mut acc = one;
        let neg_w = w.neg();
        for _ in 1..z.prec.max(1) {
            term = term.series_mul(&neg_w)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        // Known below prec − 2v.
        acc.series_mul(&y)
    }
}

impl<C: Twistable> PartialEq for TruncSeries<C>
where
    C: PartialEq,
{
    /// Structural equality (same ring, same precision frontier, same known terms).
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.prec == other.prec && self.coeffs == other.coeffs
    }
}

fn wrap_coeff(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

impl<C: Twistable> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.ring.variable();
        let mut first = true;
        for (&d, c) in &self.coeffs {
            let mut cs = wrap_coeff(c.to_string());
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            let body = if d == 0 {
                cs
            } else {
                format!("{cs}*{var}^{d}")
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
            write!(f, "O({var}^{})", self.prec)
        } else {
            write!(f, " + O({var}^{})", self.prec)
        }
    }
}

impl<C: Twistable> RingElement for TruncSeries<C> {
    type Ring = SeriesRing<C>;

    fn ring(&self) -> &SeriesRing<C> {
        &self.ring
    }

    fn add(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.ring.check_same(&rhs.ring)?;
        let prec = self.prec.min(rhs.prec);
        let mut out: BTreeMap<i64, C> = self
            .coeffs
            .range(..prec)
            .map(|(&d, c)| (d, c.clone()))
            .collect();
        for (&d, c) in rhs.coeffs.range(..prec) {
            let sum = match out.remove(&d) {
                Some(prev) => prev.add(c)?,
                None => c.clone(),
            };
            out.insert(d, sum);
        }
        Ok(Self::normalized(self.ring.clone(), out, prec))
    }

    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    fn mul(&self, rhs: &Self) -> AlgebraResult<Self> {
        self.series_mul(rhs)
    }

    fn inv(&self) -> AlgebraResult<Self> {
        self.series_inv()
    }

    fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn precision(&self) -> Option<i64> {
        Some(self.prec)
    }

    fn is_zero_below(&self, p: i64) -> bool {
        self.coeffs.range(..p).next().is_none()
    }

    fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }
}

impl<C: Twistable> Twistable for TruncSeries<C> {
    /// Coefficientwise action; defined when `h` commutes with the twist.
    fn apply_automorphism(&self, h: Automorphism) -> AlgebraResult<Self> {
        if h.is_identity() {
            return Ok(self.clone());
        }
        if !self.ring.admits(&h) {
            return Err(AlgebraError::InapplicableAutomorphism {
                automorphism: h,
                ring: Box::new(self.ring.handle()),
            });
        }
        self.try_map_coeffs(|c| c.apply_automorphism(h))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid series literal `{text}`: {reason}")]
pub struct SeriesLiteralError {
    pub text: String,
    pub reason: String,
}

/// Split at top-level `+`/`-`, keeping the sign with the following term. A sign that
/// directly follows `^`, `/`, `*` or `(` belongs to a number, not a separator.
fn split_terms(text: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let is_sep = (ch == '+' || ch == '-')
            && depth == 0
            && !cur.trim().is_empty()
            && !matches!(prev, Some('^' | '/' | '*' | '('));
        if is_sep {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        terms.push(cur);
    }
    terms
}

impl<C: Twistable> SeriesRing<C> {
    /// Parse `coeff*t^n` terms joined by `+`/`-`, with an optional `O(t^P)` suffix.
    /// Without the suffix the ring's default precision is used. `coeff` parses one
    /// coefficient literal.
    pub fn parse(
        &self,
        text: &str,
        coeff: impl Fn(&str) -> Option<C>,
    ) -> Result<TruncSeries<C>, SeriesLiteralError> {
        let err = |reason: &str| SeriesLiteralError {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let var = self.variable();
        let mut prec: Option<i64> = None;
        let mut terms: Vec<(i64, C)> = Vec::new();
        for raw in split_terms(text) {
            let t = raw.trim();
            let (negative, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
            };
            if let Some(inner) = body.strip_prefix("O(").and_then(|s| s.strip_suffix(')')) {
                let p = inner
                    .trim()
                    .strip_prefix(var)
                    .and_then(|s| s.trim().strip_prefix('^'))
                    .and_then(|s| s.trim().parse::<i64>().ok())
                    .ok_or_else(|| err("malformed O(...) term"))?;
                if prec.replace(p).is_some() {
                    return Err(err("more than one O(...) term"));
                }
                continue;
            }
            let (coeff_text, deg) = match body.rsplit_once('*') {
                Some((c, v)) if v.trim().starts_with(var) => (c.trim(), parse_power(v, var)),
                _ if body.starts_with(var) => ("1", parse_power(body, var)),
                _ => (body, Some(0)),
            };
            let deg = deg.ok_or_else(|| err("malformed power of the variable"))?;
            let c = coeff(coeff_text).ok_or_else(|| err("unparseable coefficient"))?;
            terms.push((deg, if negative { c.neg() } else { c }));
        }
        let prec = prec.unwrap_or(self.default_prec);
        self.series(terms, prec).map_err(|e| err(&e.to_string()))
    }
}

fn parse_power(text: &str, var: &str) -> Option<i64> {
    let rest = text.trim().strip_prefix(var)?.trim();
    if rest.is_empty() {
        return Some(1);
    }
    rest.strip_prefix('^')?.trim().parse().ok()
}
