//! Multiplication in cyclotomic rings `GF(p)[x]/(x^n - 1)`, cyclotomic
//! fields and finite fields with type-I and type-II optimal normal bases.
//!
//! Every multiplier threads an explicit [`OpCount`] through its ground-field
//! operations so that the number of multiplications, doublings and
//! additions can be compared against closed-form cost formulas.

pub mod algo;
pub mod complexity;
pub mod cyclo;
pub mod error;
pub mod gauss;
pub mod groundfield;
pub mod multiply;
pub mod oracle;
pub mod text;
pub mod verify;

pub use algo::MultiplierId;
pub use cyclo::{AlgebraKind, CycloElement};
pub use error::{Error, Result};
pub use gauss::{GaussParams, NormalBasisElement, Onb1Variant, Onb2Variant};
pub use groundfield::{Coord, GroundField, OpCount};
pub use multiply::{GeneralVariant, SqrtProduct};
