//! Random complete measurements and inequality fuzzing.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::entropy::entropy_auto;
use crate::error::Result;
use crate::measurement::Measurement;
use crate::measures::{
    additive_measures_single, outcome_probability, MeasurePair,
};
use crate::optimal::{entropy_bound, gf_sides, gr_sides};
use crate::region::{tangent_from_identity, TangentResult};

/// Random complete measurement: a Haar-random isometry from `d` to
/// `n_outcomes * d` dimensions cut into `d x d` blocks. Deterministic in
/// the seed; complete to `1e-10`.
pub fn random_measurement(d: usize, n_outcomes: usize, seed: u64) -> Result<Measurement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let rows = n_outcomes * d;
    let a = DMatrix::from_fn(rows, d, |_, _| {
        let re: f64 = normal.sample(&mut rng);
        let im: f64 = normal.sample(&mut rng);
        Complex64::new(re, im)
    });
    let q = a.qr().q();
    let ops: Vec<DMatrix<Complex64>> = (0..n_outcomes)
        .map(|m| q.rows(m * d, d).into_owned())
        .collect();
    Measurement::new(d, ops, 1e-10)
}

/// Averaged additive measures `(I_G, D_F, D_R, I)` of a measurement.
pub fn averaged_additive(meas: &Measurement, entropy_tol: f64) -> (f64, f64, f64, f64) {
    let mut acc = (0.0, 0.0, 0.0, 0.0);
    for s in meas.spectra() {
        let p = outcome_probability(&s);
        if p == 0.0 {
            continue;
        }
        let (ig, df, dr) = additive_measures_single(&s);
        acc.0 += p * ig;
        acc.1 += p * df;
        acc.2 += p * dr;
        acc.3 += p * entropy_auto(&s, entropy_tol);
    }
    acc
}

/// Per-dimension fuzz summary.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DimFuzz {
    pub dim: usize,
    pub trials: usize,
    /// Minimum residuals seen for the GF, GR, IF, IR inequalities.
    pub min_residuals: [f64; 4],
    /// Trials with any residual below `-1e-6`.
    pub violations: usize,
}

/// Result of fuzzing all four inequalities with random measurements.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub per_dim: Vec<DimFuzz>,
}

impl FuzzReport {
    pub fn total_violations(&self) -> usize {
        self.per_dim.iter().map(|d| d.violations).sum()
    }
}

/// Residuals of the four inequalities for one measurement. Infinite `D_R`
/// leaves the GR inequality finite; an infinite IR residual is reported as
/// positive infinity (trivially satisfied).
pub fn inequality_residuals(
    meas: &Measurement,
    tangent_f: Option<&TangentResult>,
    tangent_r: Option<&TangentResult>,
) -> Result<[f64; 4]> {
    let d = meas.dim();
    let (ig, df, dr, i) = averaged_additive(meas, 1e-9);
    let (gf_l, gf_r) = gf_sides(d as f64, ig, df);
    let (gr_l, gr_r) = gr_sides(d as f64, ig, dr);
    let bound_f = entropy_bound(d, MeasurePair::I_DF, i, tangent_f)?;
    let bound_r = entropy_bound(d, MeasurePair::I_DR, i, tangent_r)?;
    let if_res = df - bound_f;
    let ir_res = if dr.is_finite() { dr - bound_r } else { f64::INFINITY };
    Ok([gf_r - gf_l, gr_r - gr_l, if_res, ir_res])
}

/// Tangent results needed by the entropy-based inequalities; `None` where
/// the `(1, d-1)` curve is convex and has no interior tangency.
pub fn fuzz_tangents(d: usize) -> (Option<TangentResult>, Option<TangentResult>) {
    (
        tangent_from_identity(d, MeasurePair::I_DF, 1e-8).ok(),
        tangent_from_identity(d, MeasurePair::I_DR, 1e-8).ok(),
    )
}

/// Fuzz all four inequalities with random measurements whose outcome count
/// is uniform in `1..=2d`. Violations are report content, not errors.
pub fn fuzz_inequalities(d_list: &[usize], trials: usize, seed: u64) -> Result<FuzzReport> {
    let mut per_dim = Vec::with_capacity(d_list.len());
    for &d in d_list {
        let (tf, tr) = fuzz_tangents(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut min_residuals = [f64::INFINITY; 4];
        let mut violations = 0usize;
        for _ in 0..trials {
            let n_outcomes = rng.gen_range(1..=2 * d);
            let trial_seed: u64 = rng.gen();
            let meas = random_measurement(d, n_outcomes, trial_seed)?;
            let res = inequality_residuals(&meas, tf.as_ref(), tr.as_ref())?;
            let mut bad = false;
            for (slot, r) in min_residuals.iter_mut().zip(res) {
                if r < *slot {
                    *slot = r;
                }
                if r < -1e-6 {
                    bad = true;
                }
            }
            if bad {
                violations += 1;
            }
        }
        per_dim.push(DimFuzz { dim: d, trials, min_residuals, violations });
    }
    Ok(FuzzReport { seed, per_dim })
}
