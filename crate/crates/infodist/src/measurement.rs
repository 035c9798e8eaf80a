//! Complete sets of measurement operators.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Default completeness tolerance in max-entry norm.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// A complete measurement: operators `M_m` with `sum_m M_m^dag M_m = I`
/// within the stored tolerance (max-entry norm).
#[derive(Debug, Clone)]
pub struct Measurement {
    dim: usize,
    ops: Vec<DMatrix<Complex64>>,
    tolerance: f64,
}

impl Measurement {
    pub fn new(dim: usize, ops: Vec<DMatrix<Complex64>>, tolerance: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {dim}")));
        }
        if ops.is_empty() {
            return Err(Error::InvalidArgument("measurement needs at least one operator".into()));
        }
        for m in &ops {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::InvalidArgument("operator dimension mismatch".into()));
            }
            if m.iter().all(|z| z.norm_sqr() == 0.0) {
                return Err(Error::InvalidArgument("zero operator in measurement".into()));
            }
        }
        let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
        for m in &ops {
            sum += m.adjoint() * m;
        }
        let mut deviation = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let expect = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                deviation = deviation.max((sum[(i, j)] - expect).norm());
            }
        }
        if deviation > tolerance {
            return Err(Error::Incomplete { deviation, tolerance });
        }
        Ok(Self { dim, ops, tolerance })
    }

    /// Build from real diagonal operators.
    pub fn from_diagonals(dim: usize, diags: Vec<Vec<f64>>, tolerance: f64) -> Result<Self> {
        let ops = diags
            .into_iter()
            .map(|d| {
                DMatrix::from_fn(dim, dim, |i, j| {
                    if i == j && i < d.len() {
                        Complex64::new(d[i], 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Self::new(dim, ops, tolerance)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn operators(&self) -> &[DMatrix<Complex64>] {
        &self.ops
    }

    pub fn outcomes(&self) -> usize {
        self.ops.len()
    }

    /// Singular-value spectrum of each operator, at the true scale.
    pub fn spectra(&self) -> Vec<Spectrum<f64>> {
        self.ops
            .iter()
            .map(|m| {
                let sv = m.clone().svd(false, false).singular_values;
                Spectrum::new(sv.iter().copied().collect()).expect("nonzero operator")
            })
            .collect()
    }

    /// Outcome probabilities for a Haar-uniform prior: `tr(M^dag M) / d`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.spectra()
            .iter()
            .map(|s| s.sum_sq() / self.dim as f64)
            .collect()
    }

    /// Positive-semidefinite polar parts `P = V S V^dag` of each operator.
    /// `M^dag M` is unchanged, so completeness and outcome probabilities
    /// are preserved while the polar unitary is dropped.
    pub fn psd_parts(&self) -> Vec<DMatrix<Complex64>> {
        self.ops
            .iter()
            .map(|m| {
                let svd = m.clone().svd(true, true);
                let v_t = svd.v_t.expect("requested");
                let s = DMatrix::from_fn(self.dim, self.dim, |i, j| {
                    if i == j {
                        Complex64::new(svd.singular_values[i], 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                v_t.adjoint() * s * v_t
            })
            .collect()
    }
}
