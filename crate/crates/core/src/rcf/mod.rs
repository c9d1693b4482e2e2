//! The archimedean computable real closed field over independent cut
//! generators: exact arithmetic and order, root extraction, a systematic
//! enumeration of the cuts its elements realize, and the
//! transcendence-basis extraction with left and right shifts.

mod basis;
mod enumerate;
mod field;
mod kfrac;
mod kpoly;
mod resultant;

pub use basis::{
    extract_basis, BasisEvent, BasisRun, DependenceApproximator, GuideState,
};
pub use enumerate::{enumerate_field_cuts, FieldCuts};
pub use field::{Generator, RcField, RcfElement, RcfError};
pub use kfrac::KFrac;
pub use kpoly::KPoly;
pub use resultant::{resultant_prod, resultant_sum};
