//! Wedderburn decompositions of total rings of quotients of Iwasawa algebras
//! `Q^F(H x| Z_p)`, computed from the character theory of the finite group `H`
//! and the Galois theory of abelian extensions of `Q_p`, together with exact
//! verification oracles.

pub mod arith;
pub mod chars;
pub mod cyclo;
pub mod decompose;
pub mod error;
pub mod fields;
pub mod group;
pub mod idem;
pub mod run;
pub mod scalar;
pub mod skew;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::ExactScalar;

/// Arbitrary-precision rationals; the default coefficient type.
pub type Rational = num_rational::BigRational;

/// Element of a cyclotomic field with arbitrary-precision rational coordinates.
pub type CycElem = cyclo::Cyclotomic<Rational>;

/// Machine-word variant, for small experiments where overflow is not a concern.
pub type CycElem64 = cyclo::Cyclotomic<num_rational::Rational64>;

pub type CycMatrix = cyclo::CycMatrixOf<Rational>;
