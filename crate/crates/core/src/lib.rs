//! Exact symbolic calculus for Lie algebroids with 1-cocycles.
//!
//! Coefficients are polynomials with rational coefficients over a single
//! coordinate patch, so every identity is decided by comparing canonical
//! normal forms: a check passes only when its residual is exactly zero.

pub mod algebroid;
pub mod bialgebroid;
pub mod biproduct;
pub mod check;
pub mod deformed;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod jacobi;
pub mod par;
pub mod sample;
pub mod scalar;
pub mod triangular;

pub use algebroid::Algebroid;
pub use bialgebroid::{GenBialgebroidPair, PairMorphism};
pub use biproduct::{SplitForm, SplitMultivector};
pub use check::{CheckEntry, CheckReport, Counterexample, Status};
pub use deformed::{Cocycle, DeformedCalculus};
pub use error::{AlgebraError, Result};
pub use graded::{Form, Multivector, Section};
pub use jacobi::JacobiStructure;
pub use sample::{SampleConfig, Sampler};
pub use scalar::{BasePatch, Rational, Scalar};
pub use triangular::TriangularDatum;
