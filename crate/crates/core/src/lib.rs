//! Exact integer specializations of Grassmannian coordinate rings.
//!
//! The crate realizes prescribed Plücker values by integer matrices,
//! decides and constructs representations whose columns are primitive
//! vectors, extends positive configurations to SL_k frieze patterns, and
//! verifies a handful of classical fixtures (Conway–Coxeter friezes, the
//! A3 / B3 reflection arrangements and the simplicial arrangement A(16,3)).
//!
//! All arithmetic is exact ([`num_bigint::BigInt`]).

pub mod error;
pub mod exactlin;
pub mod pluecker;
pub mod realize;
pub mod volume_one;
pub mod frieze;
pub mod arrangements;
pub mod sampling;
pub mod cli;

pub use error::{Error, Result};
pub use exactlin::{int, Int, Matrix};
pub use pluecker::{KSubset, IndexWord, Specialization};
