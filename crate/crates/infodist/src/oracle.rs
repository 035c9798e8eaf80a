//! Definitional implementation of the measures on a finite Haar-sampled
//! ensemble and explicit operator matrices.
//!
//! This module evaluates the defining sums directly, with no closed forms,
//! and is the ground truth the `measures` module is validated against.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::measurement::Measurement;
use crate::spectrum::Spectrum;

/// Uniformly weighted sample of Haar-random pure states.
#[derive(Debug, Clone)]
pub struct HaarEnsemble {
    dim: usize,
    states: Vec<DVector<Complex64>>,
    seed: u64,
}

impl HaarEnsemble {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn states(&self) -> &[DVector<Complex64>] {
        &self.states
    }

    /// Hand-built ensemble, for small exact checks. States are normalized.
    pub fn from_states(states: Vec<DVector<Complex64>>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::InvalidArgument("ensemble needs at least 2 states".into()));
        }
        let dim = states[0].len();
        if dim < 2 || states.iter().any(|s| s.len() != dim) {
            return Err(Error::InvalidArgument("inconsistent state dimensions".into()));
        }
        let states = states.into_iter().map(|s| {
            let n = s.norm();
            s.map(|z| z / n)
        }).collect();
        Ok(Self { dim, states, seed: 0 })
    }
}

/// Sample `n` Haar-random pure states in dimension `d`, deterministically
/// in the seed. Normalized i.i.d. complex standard normal vectors.
pub fn sample_haar(d: usize, n: usize, seed: u64) -> Result<HaarEnsemble> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {d}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("ensemble size must be >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut states = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v = DVector::<Complex64>::zeros(d);
        for i in 0..d {
            let re: f64 = normal.sample(&mut rng);
            let im: f64 = normal.sample(&mut rng);
            v[i] = Complex64::new(re, im);
        }
        let norm = v.norm();
        states.push(v.map(|z| z / norm));
    }
    Ok(HaarEnsemble { dim: d, states, seed })
}

/// A positive-semidefinite measurement operator in matrix form.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    mat: DMatrix<Complex64>,
    eigs: Vec<f64>,
}

impl OperatorMatrix {
    /// Validates Hermiticity and positive semidefiniteness.
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        let d = mat.nrows();
        if d < 2 || mat.ncols() != d {
            return Err(Error::InvalidArgument("operator must be square with dim >= 2".into()));
        }
        let herm = (&mat - mat.adjoint()).map(|z| z.norm()).max();
        if herm > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "operator not Hermitian (deviation {herm:e})"
            )));
        }
        let eig = mat.clone().symmetric_eigen();
        let mut eigs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if eigs.iter().any(|&e| e < -1e-10) {
            return Err(Error::InvalidArgument("operator not positive semidefinite".into()));
        }
        for e in eigs.iter_mut() {
            if *e < 0.0 {
                *e = 0.0;
            }
        }
        eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Self { mat, eigs })
    }

    /// Diagonal operator from a spectrum.
    pub fn from_spectrum(s: &Spectrum<f64>) -> Self {
        let d = s.dim();
        let mat = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                Complex64::new(s.values()[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self { mat, eigs: s.values().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Eigenvalues sorted descending; equals the operator's spectrum.
    pub fn spectrum(&self) -> Spectrum<f64> {
        Spectrum::new(self.eigs.clone()).expect("validated operator")
    }

    fn sigma_min_sq(&self) -> f64 {
        let e = *self.eigs.last().unwrap();
        e * e
    }
}

/// An oracle estimate together with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct OracleEstimate {
    pub value: f64,
    pub std_err: f64,
}

/// Whole-measurement oracle averages.
#[derive(Debug, Clone)]
pub struct OracleAverages {
    pub g: OracleEstimate,
    pub f: OracleEstimate,
    pub r: OracleEstimate,
    pub i: OracleEstimate,
}

struct Conditional {
    /// p(m|a) for every ensemble member.
    p_cond: Vec<f64>,
    /// sample mean of p(m|a); equals p(m) for uniform weights.
    p_m: f64,
}

fn conditionals(e: &HaarEnsemble, m: &OperatorMatrix) -> Result<Conditional> {
    if e.dim() != m.dim() {
        return Err(Error::InvalidArgument("ensemble and operator dimensions differ".into()));
    }
    let p_cond: Vec<f64> = e
        .states
        .iter()
        .map(|psi| {
            let mp = &m.mat * psi;
            mp.norm_squared()
        })
        .collect();
    let p_m = p_cond.iter().sum::<f64>() / p_cond.len() as f64;
    if p_m <= 0.0 {
        return Err(Error::ZeroProbability);
    }
    Ok(Conditional { p_cond, p_m })
}

/// Standard error of the ratio estimator `sum a / sum b` via the delta
/// method on per-member contributions.
fn ratio_std_err(a: &[f64], b: &[f64], ratio: f64) -> f64 {
    let n = a.len() as f64;
    let b_bar = b.iter().sum::<f64>() / n;
    let var = a
        .iter()
        .zip(b)
        .map(|(&ai, &bi)| {
            let r = ai - ratio * bi;
            r * r
        })
        .sum::<f64>()
        / (n - 1.0);
    (var / n).sqrt() / b_bar
}

/// Estimation fidelity by its defining sum: the best guess is the pure
/// state maximizing `p(m|a)`, the top eigenvector of the operator; only
/// the state average itself is sampled.
pub fn oracle_g(e: &HaarEnsemble, m: &OperatorMatrix) -> Result<OracleEstimate> {
    let c = conditionals(e, m)?;
    let eig = m.mat.clone().symmetric_eigen();
    let top = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let psi_best = eig.eigenvectors.column(top).into_owned();
    let overlaps: Vec<f64> = e
        .states
        .iter()
        .map(|psi| psi_best.dotc(psi).norm_sqr())
        .collect();
    let a: Vec<f64> = c.p_cond.iter().zip(&overlaps).map(|(&p, &o)| p * o).collect();
    let value = a.iter().sum::<f64>() / c.p_cond.iter().sum::<f64>();
    Ok(OracleEstimate { value, std_err: ratio_std_err(&a, &c.p_cond, value) })
}

/// Operation fidelity by its defining sum, with the post-measurement state
/// computed explicitly as `M psi / sqrt(p(m|a))`.
pub fn oracle_f(e: &HaarEnsemble, m: &OperatorMatrix) -> Result<OracleEstimate> {
    let c = conditionals(e, m)?;
    let a: Vec<f64> = e
        .states
        .iter()
        .zip(&c.p_cond)
        .map(|(psi, &p)| {
            if p <= 0.0 {
                return 0.0;
            }
            let post = (&m.mat * psi).map(|z| z / Complex64::new(p.sqrt(), 0.0));
            p * post.dotc(psi).norm_sqr()
        })
        .collect();
    let value = a.iter().sum::<f64>() / c.p_cond.iter().sum::<f64>();
    Ok(OracleEstimate { value, std_err: ratio_std_err(&a, &c.p_cond, value) })
}

/// Physical reversibility by its defining sum; the infimum over states is
/// taken spectrally as the smallest eigenvalue of `M^dag M`.
pub fn oracle_r(e: &HaarEnsemble, m: &OperatorMatrix) -> Result<OracleEstimate> {
    let c = conditionals(e, m)?;
    let inf = m.sigma_min_sq();
    // p(a|m) * inf / p(m|a) has the p(m|a) cancel member-by-member
    let a: Vec<f64> = c.p_cond.iter().map(|_| inf).collect();
    let value = a.iter().sum::<f64>() / c.p_cond.iter().sum::<f64>();
    Ok(OracleEstimate { value, std_err: ratio_std_err(&a, &c.p_cond, value) })
}

/// Discrete-ensemble entropy reduction `log2 N + sum_a p(a|m) log2 p(a|m)`.
pub fn oracle_i(e: &HaarEnsemble, m: &OperatorMatrix) -> Result<OracleEstimate> {
    let c = conditionals(e, m)?;
    let n = c.p_cond.len() as f64;
    let value = n.log2()
        + c.p_cond
            .iter()
            .map(|&p| {
                let pam = p / (n * c.p_m);
                if pam > 0.0 {
                    pam * pam.log2()
                } else {
                    0.0
                }
            })
            .sum::<f64>();
    // per-member contributions of the equivalent ratio form
    let contrib: Vec<f64> = c
        .p_cond
        .iter()
        .map(|&p| {
            let r = p / c.p_m;
            if r > 0.0 {
                r * r.log2()
            } else {
                0.0
            }
        })
        .collect();
    let mean = contrib.iter().sum::<f64>() / n;
    let var = contrib.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok(OracleEstimate { value, std_err: (var / n).sqrt() })
}

/// The two algebraically equal forms of the discrete entropy reduction;
/// exposed so tests can assert the identity numerically.
pub fn oracle_i_both_forms(e: &HaarEnsemble, m: &OperatorMatrix) -> Result<(f64, f64)> {
    let c = conditionals(e, m)?;
    let n = c.p_cond.len() as f64;
    let direct = n.log2()
        + c.p_cond
            .iter()
            .map(|&p| {
                let pam = p / (n * c.p_m);
                if pam > 0.0 { pam * pam.log2() } else { 0.0 }
            })
            .sum::<f64>();
    let ratio = c
        .p_cond
        .iter()
        .map(|&p| {
            let r = p / c.p_m;
            if r > 0.0 { r * r.log2() / n } else { 0.0 }
        })
        .sum::<f64>();
    Ok((direct, ratio))
}

/// Whole-measurement oracle: outcome-weighted single-outcome sums, with
/// `p(m)` estimated on the ensemble at the true operator scales. Operators
/// are canonicalized to their positive-semidefinite polar parts first.
pub fn oracle_full(e: &HaarEnsemble, meas: &Measurement) -> Result<OracleAverages> {
    let mut acc = [(0.0f64, 0.0f64); 4]; // (value, variance) per measure
    for psd in meas.psd_parts() {
        let op = OperatorMatrix::new(psd)?;
        let c = conditionals(e, &op)?;
        let p_m = c.p_m;
        let singles = [oracle_g(e, &op)?, oracle_f(e, &op)?, oracle_r(e, &op)?, oracle_i(e, &op)?];
        for (slot, est) in acc.iter_mut().zip(singles) {
            slot.0 += p_m * est.value;
            slot.1 += (p_m * est.std_err).powi(2);
        }
    }
    let mk = |(v, var): (f64, f64)| OracleEstimate { value: v, std_err: var.sqrt() };
    Ok(OracleAverages { g: mk(acc[0]), f: mk(acc[1]), r: mk(acc[2]), i: mk(acc[3]) })
}
