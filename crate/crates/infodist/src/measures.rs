//! Closed-form single-outcome measures and their additive transforms.
//!
//! With `S = sum sigma_i^2` the closed forms are
//!
//! ```text
//! p(m) = S / d
//! G(m) = (S + sigma_1^2) / ((d+1) S)          estimation fidelity
//! F(m) = ((sum sigma_i)^2 + S) / ((d+1) S)    operation fidelity
//! R(m) = d sigma_d^2 / S                      physical reversibility
//! ```
//!
//! and the additive measures are `I_G = log2(d G)`, `D_F = -log2 F`,
//! `D_R = -log2 R` (infinite when `R = 0`). All are invariant under
//! rescaling the spectrum. The closed forms are validated against the
//! definitional `oracle` module in the test suite.

use num_traits::Float;

use crate::entropy::{entropy_auto, entropy_reduction_single, EntropyMethod};
use crate::error::Result;
use crate::measurement::Measurement;
use crate::spectrum::Spectrum;

/// Information axis of a measure pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InfoKind {
    /// Estimation fidelity `G(m)` (probability).
    G,
    /// Additive `I_G(m) = log2(d G(m))` (bits).
    Ig,
    /// Entropy reduction `I(m)` (bits).
    I,
}

/// Disturbance axis of a measure pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistKind {
    /// `1 - F(m)`.
    OneMinusF,
    /// Additive `D_F(m) = -log2 F(m)`.
    Df,
    /// `1 - R(m)`.
    OneMinusR,
    /// Additive `D_R(m) = -log2 R(m)`, infinite when `R(m) = 0`.
    Dr,
}

/// One information measure paired with one disturbance measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MeasurePair {
    pub info: InfoKind,
    pub dist: DistKind,
}

impl MeasurePair {
    pub const IG_DF: Self = Self { info: InfoKind::Ig, dist: DistKind::Df };
    pub const IG_DR: Self = Self { info: InfoKind::Ig, dist: DistKind::Dr };
    pub const I_DF: Self = Self { info: InfoKind::I, dist: DistKind::Df };
    pub const I_DR: Self = Self { info: InfoKind::I, dist: DistKind::Dr };

    /// The four additive pairs.
    pub const ADDITIVE: [Self; 4] = [Self::IG_DF, Self::IG_DR, Self::I_DF, Self::I_DR];
}

/// A point on an information-disturbance plane.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct MeasurePoint {
    pub info: f64,
    pub dist: f64,
    pub pair: MeasurePair,
    /// Outcome probability `p(m)`; 1 for whole-measurement averages.
    pub weight: f64,
}

/// Total probability of the outcome for a Haar-uniform prior: `S / d`.
pub fn outcome_probability<T: Float>(s: &Spectrum<T>) -> T {
    s.sum_sq() / T::from(s.dim()).unwrap()
}

/// Estimation fidelity `G(m)`.
pub fn estimation_fidelity_single<T: Float>(s: &Spectrum<T>) -> T {
    let ssq = s.sum_sq();
    let d = T::from(s.dim()).unwrap();
    (ssq + s.max() * s.max()) / ((d + T::one()) * ssq)
}

/// Operation fidelity `F(m)`, with the operator taken positive semidefinite.
pub fn operation_fidelity_single<T: Float>(s: &Spectrum<T>) -> T {
    let ssq = s.sum_sq();
    let sum = s.sum();
    let d = T::from(s.dim()).unwrap();
    (sum * sum + ssq) / ((d + T::one()) * ssq)
}

/// Physical reversibility `R(m)`.
pub fn physical_reversibility_single<T: Float>(s: &Spectrum<T>) -> T {
    let d = T::from(s.dim()).unwrap();
    d * s.min() * s.min() / s.sum_sq()
}

/// Additive measures `(I_G(m), D_F(m), D_R(m))`; `D_R` is infinite when the
/// smallest singular value vanishes.
pub fn additive_measures_single<T: Float>(s: &Spectrum<T>) -> (T, T, T) {
    let d = T::from(s.dim()).unwrap();
    let ig = (d * estimation_fidelity_single(s)).log2();
    let df = -operation_fidelity_single(s).log2();
    let r = physical_reversibility_single(s);
    let dr = if r > T::zero() { -r.log2() } else { T::infinity() };
    (ig, df, dr)
}

/// Evaluate one axis pair on a spectrum. Entropy reduction uses the
/// deterministic route at tolerance `tol`.
pub fn evaluate_pair(s: &Spectrum<f64>, pair: MeasurePair, tol: f64) -> (f64, f64) {
    let info = match pair.info {
        InfoKind::G => estimation_fidelity_single(s),
        InfoKind::Ig => (s.dim() as f64 * estimation_fidelity_single(s)).log2(),
        InfoKind::I => entropy_auto(s, tol),
    };
    let dist = match pair.dist {
        DistKind::OneMinusF => 1.0 - operation_fidelity_single(s),
        DistKind::Df => -operation_fidelity_single(s).log2(),
        DistKind::OneMinusR => 1.0 - physical_reversibility_single(s),
        DistKind::Dr => {
            let r = physical_reversibility_single(s);
            if r > 0.0 {
                -r.log2()
            } else {
                f64::INFINITY
            }
        }
    };
    (info, dist)
}

/// Default deterministic tolerance for entropy-reduction evaluations.
pub const DEFAULT_ENTROPY_TOL: f64 = 1e-6;

/// Outcome-averaged measures of a complete measurement:
/// `sum_m p(m) x(m)` per axis, with `p(m)` at the true operator scales.
pub fn average_measures(meas: &Measurement, pair: MeasurePair) -> Result<MeasurePoint> {
    average_measures_tol(meas, pair, DEFAULT_ENTROPY_TOL)
}

/// As [`average_measures`] with an explicit entropy tolerance.
pub fn average_measures_tol(meas: &Measurement, pair: MeasurePair, tol: f64) -> Result<MeasurePoint> {
    let mut info = 0.0;
    let mut dist = 0.0;
    for s in meas.spectra() {
        let p = outcome_probability(&s);
        if p == 0.0 {
            continue;
        }
        let i = match pair.info {
            InfoKind::I => entropy_reduction_single(&s, EntropyMethod::Quadrature, tol)?.value,
            _ => evaluate_pair(&s, pair, tol).0,
        };
        let d = evaluate_pair(&s, pair, tol).1;
        info += p * i;
        dist += p * d; // p * inf = inf propagates for DR outcomes
    }
    Ok(MeasurePoint { info, dist, pair, weight: 1.0 })
}
