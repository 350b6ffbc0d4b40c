//! Nilpotent Jordan algebras over Q and prime fields: structure constants,
//! central extensions, orbit enumeration and isomorphism testing.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod field;
pub mod format;
pub mod groebner;
pub mod isotest;
pub mod linalg;
pub mod orbits;
pub mod search;

pub use algebra::{Algebra, Fingerprint};
pub use error::{JordanError, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};
