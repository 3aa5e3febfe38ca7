//! Exact noncommutative computer algebra over ℚ.
//!
//! - [`rings`]: rationals, quadratic fields, the ring traits and automorphisms.
//! - [`quat`]: generalized quaternion algebras `H(a,b)`.
//! - [`series`]: twisted truncated Laurent series, the tower `D_∞` and `D_∞((t,f))`.
//! - [`gri`]: generalized rational expressions, `g_n`, randomized identity testing.
//! - [`harness`]: reproducible verification scenarios with line-oriented reports.

pub mod gri;
pub mod harness;
pub mod linalg;
pub mod quat;
pub mod rings;
pub mod series;

pub use quat::{QuatAlgebra, QuatParams, Quaternion};
pub use rings::{AlgebraError, Automorphism, Rational, RingContext, RingElement, RingHandle};
