//! Exact rational, interval, and polynomial arithmetic.
//!
//! This is the arithmetic substrate for everything else: arbitrary-precision
//! rationals with a fixed enumeration order, rational-endpoint intervals and
//! boxes, sparse multivariate integer polynomials with a fixed graded
//! enumeration, Sturm-sequence root isolation, and the zero-avoiding box
//! search.

mod avoid;
mod enumerate;
mod interval;
mod poly;
mod qorder;
mod rational;
mod sturm;

pub use avoid::{find_avoiding_box, find_avoiding_interval, AvoidOutcome};
pub use enumerate::{poly_enumerate, poly_grade, poly_index, PolyEnumerator, UnivariateScan};
pub use interval::{CoordBox, DimensionMismatch, IntervalKind, RationalInterval};
pub use poly::{eval_box, Monomial, MultiPoly};
pub use qorder::{first_rational, rational_by_index, rational_index};
pub use rational::{rat, Rational};
pub use sturm::{sturm_count, sturm_isolate, SturmChain};
