use crate::rings::{AlgebraError, AlgebraResult, RingElement};

/// Whether `xy − yx` vanishes in every degree below `p`.
///
/// Exact elements are compared exactly. For truncated values both products must be
/// known to `p`, otherwise the answer is [`AlgebraError::InsufficientPrecision`].
pub fn commutes_to_prec<E: RingElement>(x: &E, y: &E, p: i64) -> AlgebraResult<bool> {
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;
    for prod in [&xy, &yx] {
        if let Some(available) = prod.precision() {
            if available < p {
                return Err(AlgebraError::InsufficientPrecision {
                    needed: p,
                    available,
                });
            }
        }
    }
    Ok(xy.sub(&yx)?.is_zero_below(p))
}

/// Outcome of probing a candidate for centrality. Only `NotCentral` is conclusive.
#[derive(Debug, Clone)]
pub enum CenterVerdict<E> {
    CentralUpToP {
        precision: i64,
        probes: usize,
    },
    NotCentral {
        probe_index: usize,
        probe: E,
        /// `candidate·probe − probe·candidate`, certified nonzero.
        bracket: E,
    },
}

impl<E> CenterVerdict<E> {
    pub fn is_central(&self) -> bool {
        matches!(self, CenterVerdict::CentralUpToP { .. })
    }

    /// Commuting with finitely many probes to finite precision proves nothing.
    pub fn is_conclusive(&self) -> bool {
        !self.is_central()
    }
}

impl<E: std::fmt::Display> std::fmt::Display for CenterVerdict<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CenterVerdict::CentralUpToP { precision, probes } => write!(
                f,
                "CENTRAL-UP-TO-P (P={precision}, {probes} probes; one-sided, not a proof)"
            ),
            CenterVerdict::NotCentral {
                probe_index, probe, ..
            } => write!(
                f,
                "NOT-CENTRAL (fails against probe #{probe_index} = {probe})"
            ),
        }
    }
}

/// Test `candidate` against every probe to precision `p`.
pub fn center_probe<E: RingElement>(
    candidate: &E,
    probes: &[E],
    p: i64,
) -> AlgebraResult<CenterVerdict<E>> {
    if probes.is_empty() {
        return Err(AlgebraError::InvalidParameter(
            "center_probe needs at least one probe".into(),
        ));
    }
    for (idx, probe) in probes.iter().enumerate() {
        if !commutes_to_prec(candidate, probe, p)? {
            let bracket = candidate.mul(probe)?.sub(&probe.mul(candidate)?)?;
            return Ok(CenterVerdict::NotCentral {
                probe_index: idx,
                probe: probe.clone(),
                bracket,
            });
        }
    }
    Ok(CenterVerdict::CentralUpToP {
        precision: p,
        probes: probes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::QuatAlgebra;
    use crate::rings::{Automorphism, QuadField, Rational, RingContext};
    use crate::series::{OuterRing, SeriesRing};

    #[test]
    fn twisted_quadratic_center() {
        let f = QuadField::new(Rational::from(-1)).unwrap();
        let s = SeriesRing::new(f.clone(), Automorphism::QuadConjugation)
            .unwrap()
            .with_precision(14);
        let t = s.var();
        let t2 = t.mul(&t).unwrap();
        let i = s.constant(f.generator()).unwrap();
        assert!(commutes_to_prec(&t2, &i, 12).unwrap());
        assert!(!commutes_to_prec(&t, &i, 4).unwrap());
        assert!(commutes_to_prec(&s.one(), &i, 12).unwrap());
        assert!(matches!(
            commutes_to_prec(&t2, &i, 40),
            Err(AlgebraError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn untwisted_quaternion_center() {
        let h = QuatAlgebra::hamilton();
        let s = SeriesRing::untwisted(h.clone()).with_precision(12);
        let t = s.var();
        let probes = vec![
            s.constant(h.i()).unwrap(),
            s.constant(h.j()).unwrap(),
            s.constant(h.int(1, 0, 0, 1)).unwrap(),
        ];
        let v = center_probe(&t, &probes, 10).unwrap();
        assert!(v.is_central() && !v.is_conclusive());
        let i = s.constant(h.i()).unwrap();
        let v = center_probe(&i, &probes[1..2], 10).unwrap();
        assert!(matches!(
            v,
            CenterVerdict::NotCentral { probe_index: 0, .. }
        ));
        assert!(center_probe(&i, &[], 10).is_err());
    }

    #[test]
    fn outer_tower_variable_is_not_central() {
        let o = OuterRing::new(QuatAlgebra::hamilton(), 2, 12);
        let v = center_probe(&o.tower_var(0).unwrap(), &[o.t()], 10).unwrap();
        assert!(v.is_conclusive());
    }
}
