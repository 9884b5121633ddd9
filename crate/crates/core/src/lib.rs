//! Exact calculus of Boolean type functions and their affine-subspace realizations.

pub mod boolfun;
pub mod error;
pub mod linal;
pub mod mobius;
pub mod perm;
pub mod poset;
pub mod quantum;
pub mod typealg;

pub use boolfun::{BoolFun, Mask};
pub use error::{Error, Result};
pub use mobius::{from_mobius, mobius, MobiusCoeffs};
