//! Exact rational scalars, dense matrices and subspace operations.

mod matrix;
pub mod rational;
mod subspace;

pub use matrix::Matrix;
pub use rational::{format_rational, parse_rational, Rational};
pub use subspace::{image_basis, intersect, is_subspace_of, kernel_basis, preimage, sum, Subspace};
