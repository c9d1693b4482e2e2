//! Prime-nonstandard real closed fields over a residue field and a derived
//! linear order: truncated-series arithmetic with infinitesimals, the
//! residue map, multiplicative-class comparison, derived-order extraction,
//! and the finite-injury copy builder.

mod exponent;
mod field;
mod order;
mod prime_copy;

pub use exponent::{cmp_exp, CoordId, Exponent};
pub use field::{Class, NaError, NonArchElement, NonArchField};
pub use order::{class_cmp, derived_order, DerivedOrder, MultClass};
pub use prime_copy::{build_prime_copy, Flip, OrderApproximation, PrimeCopyRun, PrimeEvent};
