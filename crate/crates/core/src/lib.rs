//! Irreducible components of module varieties over truncated path algebras,
//! with a prime-field representation toolkit used as a randomized oracle.

pub mod components;
pub mod error;
pub mod field;
pub mod hereditary;
pub mod layers;
pub mod poly;
pub mod quiver;
pub mod repfield;
pub mod rng;
pub mod skeleta;

pub use error::{Error, Result};
pub use field::{Matrix, Prime, Subspace};
pub use layers::{LayeringPair, SemisimpleSequence};
pub use quiver::{Arrow, DimVector, Path, Quiver, TruncatedAlgebra};
