//! Exact decision procedures for functional observer existence in linear
//! time-invariant plants `x' = Ax + Bu, y = Cx + Du, z = Ex + Fu`.
//!
//! Every verdict is computed over the rationals. Floating point appears only
//! in [`sim`], which illustrates verdicts by simulation and never decides one.

pub mod decide;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod geometry;
pub mod markov;
pub mod polymat;
pub mod sim;
pub mod stability;
pub mod system;
pub mod witness;

pub use decide::{check_all, decide, Certificate, Property, Verdict};
pub use error::{Error, Result};
pub use exactlin::{Matrix, Rational, Subspace};
pub use format::{Report, SystemFile};
pub use polymat::{PolyMatrix, Polynomial, SmithDecomposition};
pub use stability::HurwitzReport;
pub use system::SystemSextuple;
pub use witness::{RationalFunction, RationalFunctionMatrix, WitnessReport};
