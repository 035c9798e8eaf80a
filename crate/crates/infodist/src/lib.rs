//! Information and disturbance of quantum measurements on an unknown state.
//!
//! The library quantifies how much a measurement with known operators tells
//! us about a completely unknown pure state, and how much it disturbs it,
//! using four averaged quantities: estimation fidelity, entropy reduction,
//! operation fidelity, and physical reversibility. All of them depend on a
//! measurement operator only through its singular values, so the core API
//! works on [`Spectrum`] values; [`Measurement`] bridges from explicit
//! operator matrices. The [`oracle`] module re-derives everything by direct
//! Monte Carlo averaging over uniformly random pure states, and is used to
//! cross-check the closed forms.
//!
//! On top of the per-outcome measures sit the allowed regions in the
//! information-disturbance plane ([`region`]), the measurements attaining
//! their boundaries ([`optimal`]), and randomized inequality checks
//! ([`verify`]).

pub mod entropy;
pub mod error;
pub mod measurement;
pub mod measures;
pub mod optimal;
pub mod oracle;
pub mod quad;
pub mod region;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use measurement::Measurement;
pub use measures::{
    additive_measures_single, average_measures, average_measures_tol,
    estimation_fidelity_single, evaluate_pair, operation_fidelity_single,
    outcome_probability, physical_reversibility_single, DistKind, InfoKind,
    MeasurePair, MeasurePoint, DEFAULT_ENTROPY_TOL,
};
pub use spectrum::Spectrum;

/// Double-precision spectrum, the working type of all numerical routines.
pub type Spectrum64 = Spectrum<f64>;
/// Single-precision spectrum; the closed-form measures are generic over the
/// scalar, so quick low-precision evaluation stays available.
pub type Spectrum32 = Spectrum<f32>;
