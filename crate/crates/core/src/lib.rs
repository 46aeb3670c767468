//! Exact (integer/rational-free) computational engine for homology and
//! cohomology of constructible sheaves on triangulated integral affine
//! manifolds with singularities, with cap-product pairings, duality
//! verification and tropical intersection numbers.
//!
//! Everything is computed over arbitrary-precision integers; there are no
//! floating point numbers anywhere in this crate.

pub mod arith;
pub mod matrix;
pub mod snf;
pub mod lattice;
pub mod exterior;
pub mod complex;
pub mod local_system;
pub mod sheaf;
pub mod chain;
pub mod cech;
pub mod pairing;
pub mod punctured;
pub mod models;
pub mod tac;
pub mod report;

pub use matrix::Mat;
pub use snf::Smith;
pub use lattice::Lattice;
pub use complex::DeltaComplex;
pub use local_system::LocalSystem;
pub use sheaf::{SheafFunctor, SheafKind};
