//! Truncated twisted Laurent series `R((t, φ))`, the tower `D_∞`, and the outer ring
//! `D_∞((t, f))`.
//!
//! Every value records the frontier below which its coefficients are exactly known and
//! all operations propagate it conservatively. Equality is only ever asserted "to
//! precision P", and asking for more than a value can certify is an error.

mod center;
mod outer;
mod tower;
mod trunc;

pub use center::{center_probe, commutes_to_prec, CenterVerdict};
pub use outer::{OuterElem, OuterRing};
pub use tower::{construction_order, tower_shift, Exponents, TowerElem, TowerRing, DEFAULT_DEPTH};
pub use trunc::{SeriesLiteralError, SeriesRing, TruncSeries, DEFAULT_PRECISION, DEFAULT_WINDOW};

use crate::rings::{AlgebraResult, Twistable};

pub fn series_mul<C: Twistable>(
    x: &TruncSeries<C>,
    y: &TruncSeries<C>,
) -> AlgebraResult<TruncSeries<C>> {
    x.series_mul(y)
}

pub fn series_inv<C: Twistable>(x: &TruncSeries<C>) -> AlgebraResult<TruncSeries<C>> {
    x.series_inv()
}
