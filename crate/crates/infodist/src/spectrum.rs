//! Singular-value profile of a single measurement operator.
//!
//! Every measure in this crate is a function of the singular values of the
//! operator alone, so a `Spectrum` is the common currency between modules.

use num_traits::Float;

use crate::error::{Error, Result};

/// Singular values of a measurement operator, sorted descending.
///
/// Invariants enforced at construction: dimension at least 2, all values
/// finite and nonnegative, at least one strictly positive. All measures
/// computed from a `Spectrum` are invariant under uniform rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    sigma: Vec<T>,
}

impl<T: Float> Spectrum<T> {
    pub fn new(mut sigma: Vec<T>) -> Result<Self> {
        if sigma.len() < 2 {
            return Err(Error::InvalidSpectrum(format!(
                "dimension must be at least 2, got {}",
                sigma.len()
            )));
        }
        for &s in &sigma {
            if !s.is_finite() || s < T::zero() {
                return Err(Error::InvalidSpectrum(
                    "singular values must be finite and nonnegative".into(),
                ));
            }
        }
        if sigma.iter().all(|&s| s == T::zero()) {
            return Err(Error::InvalidSpectrum(
                "at least one singular value must be positive".into(),
            ));
        }
        sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Self { sigma })
    }

    /// Spectrum of the rank-`r` projector in dimension `d`.
    pub fn projector(d: usize, r: usize) -> Result<Self> {
        if r == 0 || r > d {
            return Err(Error::InvalidArgument(format!(
                "projector rank {r} out of range 1..={d}"
            )));
        }
        let mut v = vec![T::zero(); d];
        for s in v.iter_mut().take(r) {
            *s = T::one();
        }
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn values(&self) -> &[T] {
        &self.sigma
    }

    /// Largest singular value.
    pub fn max(&self) -> T {
        self.sigma[0]
    }

    /// Smallest singular value.
    pub fn min(&self) -> T {
        *self.sigma.last().unwrap()
    }

    pub fn sum(&self) -> T {
        self.sigma.iter().fold(T::zero(), |a, &b| a + b)
    }

    pub fn sum_sq(&self) -> T {
        self.sigma.iter().fold(T::zero(), |a, &b| a + b * b)
    }

    pub fn scaled(&self, c: T) -> Result<Self> {
        if c <= T::zero() || !c.is_finite() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        Spectrum::new(self.sigma.iter().map(|&s| s * c).collect())
    }

    /// Squared singular values, descending.
    pub fn squared(&self) -> Vec<T> {
        self.sigma.iter().map(|&s| s * s).collect()
    }

    /// Distinct squared values with multiplicities, descending, after
    /// normalizing the largest to 1. Values closer than `1e-12` are merged.
    pub fn squared_groups(&self) -> Vec<(T, usize)> {
        let tol = T::from(1e-12).unwrap();
        let top = self.sigma[0] * self.sigma[0];
        let mut groups: Vec<(T, usize)> = Vec::new();
        for &s in &self.sigma {
            let c = s * s / top;
            match groups.last_mut() {
                Some((v, n)) if (*v - c).abs() <= tol => *n += 1,
                _ => groups.push((c, 1)),
            }
        }
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_descending() {
        let s = Spectrum::new(vec![0.3, 1.0, 0.5]).unwrap();
        assert_eq!(s.values(), &[1.0, 0.5, 0.3]);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.max(), 1.0);
        assert_eq!(s.min(), 0.3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Spectrum::new(vec![1.0]).is_err());
        assert!(Spectrum::new(vec![1.0, -0.1]).is_err());
        assert!(Spectrum::new(vec![0.0, 0.0]).is_err());
        assert!(Spectrum::new(vec![1.0, f64::NAN]).is_err());
        assert!(Spectrum::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn groups_merge_equal_values() {
        let s = Spectrum::new(vec![1.0, 0.5, 0.5, 0.5]).unwrap();
        let g = s.squared_groups();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], (1.0, 1));
        assert_eq!(g[1].1, 3);
        assert!((g[1].0 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn projector_spectrum() {
        let s: Spectrum<f64> = Spectrum::projector(4, 2).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 0.0, 0.0]);
        assert!(Spectrum::<f64>::projector(4, 0).is_err());
        assert!(Spectrum::<f64>::projector(4, 5).is_err());
    }

    #[test]
    fn works_in_f32() {
        let s = Spectrum::new(vec![0.5f32, 1.0]).unwrap();
        assert_eq!(s.values(), &[1.0f32, 0.5]);
    }
}
