//! Exact arithmetic for the 63 real three-qubit Pauli operators and the
//! split Cayley hexagon of order two they realize.
//!
//! The crate is organized bottom-up:
//!
//! - [`pauli`]: signed operators in symplectic form, products, commutation, dense 8x8 realization
//! - [`fano`]: the Fano plane labelling, the 7x7 product table and the oriented dual plane
//! - [`group`]: CNOT gates, the order-7 automorphism and the `PSL(2,7)` generators, orbits,
//!   the Clifford structure of the antisymmetric operators
//! - [`hexagon`]: the 63 labelled lines, generalized-hexagon certification, Heawood and Coxeter
//!   subgeometries, automorphisms, distance-2-ovoids and the Klein quadric
//! - [`mub`]: nine maximal commuting sets and their mutually unbiased eigenbases
//! - [`blackhole`]: charge dictionary, central charge, the quartic invariant in Cartan and
//!   Cremmer-Julia form, Pfaffians and Cayley's hyperdeterminant
//! - [`certify`]: the assertion suites behind the `certify` command
//!
//! Nothing upstream of the entropy value uses floating point.

pub mod blackhole;
pub mod certify;
pub mod error;
pub mod exact_cover;
pub mod fano;
pub mod graph;
pub mod group;
pub mod hexagon;
pub mod incidence;
pub mod matrix;
pub mod mub;
pub mod par;
pub mod pauli;
pub mod search;

pub use error::{Error, Result};
pub use matrix::{DenseIntMatrix, GaussianIntMatrix, Matrix};
pub use par::Execution;
pub use pauli::{enumerate_universe, SignedPauliOp, SingleQubitOp};

/// Version tag written into every JSON document.
pub const SCHEMA: &str = "hexapauli/1";
