use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{AlgebraResult, Automorphism, Rational, RingContext};

use super::{SeriesRing, TowerElem, TowerRing, TruncSeries};

/// An element of `D_∞((t, f))`: `t·u = f(u)·t` with `f(t_i) = t_{i+1}`.
pub type OuterElem = TruncSeries<TowerElem>;

/// `D_∞((t, f))` at a fixed tower depth.
#[derive(Debug, Clone)]
pub struct OuterRing {
    series: SeriesRing<TowerElem>,
}

impl OuterRing {
    pub fn new(algebra: QuatAlgebra, depth: u32, prec: i64) -> Self {
        let tower = TowerRing::new(algebra, depth);
        let series = SeriesRing::new(tower, Automorphism::TowerShift(1))
            .expect("the tower admits shifts")
            .with_precision(prec);
        OuterRing { series }
    }

    pub fn series_ring(&self) -> &SeriesRing<TowerElem> {
        &self.series
    }

    pub fn tower(&self) -> &TowerRing {
        self.series.base()
    }

    pub fn algebra(&self) -> &QuatAlgebra {
        self.tower().algebra()
    }

    pub fn depth(&self) -> u32 {
        self.tower().depth()
    }

    pub fn precision(&self) -> i64 {
        self.series.default_precision()
    }

    /// The outer variable `t`.
    pub fn t(&self) -> OuterElem {
        self.series.var()
    }

    /// The tower variable `t_i` as a constant series.
    pub fn tower_var(&self, index: i64) -> AlgebraResult<OuterElem> {
        self.series.constant(self.tower().var(index)?)
    }

    pub fn quat(&self, q: Quaternion) -> AlgebraResult<OuterElem> {
        self.series.constant(self.tower().quat(q)?)
    }

    pub fn rational(&self, q: &Rational) -> OuterElem {
        self.series.from_rational(q)
    }

    /// `Σ c_n t^n` from tower coefficients.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (i64, TowerElem)>,
    ) -> AlgebraResult<OuterElem> {
        self.series.series(terms, self.precision())
    }

    /// Embed a quaternion series (whose coefficients commute with `t`, as `f` fixes `D`).
    pub fn embed(&self, x: &TruncSeries<Quaternion>) -> AlgebraResult<OuterElem> {
        let mut terms = Vec::new();
        for (d, c) in x.terms() {
            terms.push((d, self.tower().quat(c.clone())?));
        }
        self.series.series(terms, x.prec())
    }
}
