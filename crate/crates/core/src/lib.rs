//! Computations in discrete Orlicz spaces over finitely generated groups.

pub mod cohomology;
pub mod decompose;
pub mod error;
pub mod experiment;
pub mod groups;
pub mod laplacian;
pub mod nfunction;
pub mod numeric;
pub mod orlicz;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use groups::{CayleyBall, GroupElement, GroupSpec};
pub use laplacian::DirichletForm;
pub use nfunction::{NFunction, NFunctionError};
pub use orlicz::FiniteFunction;
pub use solver::{Init, Scheme, SolverConfig};
