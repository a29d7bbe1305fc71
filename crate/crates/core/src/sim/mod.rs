//! Floating point demonstration layer. Nothing here feeds back into a verdict.

pub mod csv;
pub mod realize;
pub mod scenarios;
pub mod simulate;

pub use csv::{to_csv_string, write_csv};
pub use realize::{realize, spectral_abscissa, StateSpaceRealization};
pub use simulate::{
    convergence_metric, simulate, suggest_horizon, ConvergenceSummary, InputSignal, Scenario, SinusoidTerm,
    Trajectory, DEFAULT_THRESHOLD,
};
