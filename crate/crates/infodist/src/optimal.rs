//! Optimal measurements and the four tradeoff inequalities.

use crate::entropy::entropy_auto;
use crate::error::{Error, Result};
use crate::measurement::Measurement;
use crate::measures::{
    average_measures_tol, estimation_fidelity_single, MeasurePair, MeasurePoint,
};
use crate::region::{curve_dist_at_entropy, family_spectrum, TangentResult};
use crate::spectrum::Spectrum;

/// The four tradeoff inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `sqrt(F - 1/(d+1)) <= sqrt(G - 1/(d+1)) + sqrt((d-1)(2/(d+1) - G))`
    /// with `G = 2^{I_G}/d`, `F = 2^{-D_F}`.
    Gf,
    /// `(d+1) 2^{I_G} + (d-1) 2^{-D_R} <= 2d`.
    Gr,
    /// `D_F >= k_F I` below the tangency information, else the curve value.
    If,
    /// `D_R >= k_R I` below the tangency information, else the curve value.
    Ir,
}

/// Verdict of an inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Saturated,
    Satisfied,
    Violated,
}

/// Evaluation of one inequality on one measurement.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SaturationReport {
    pub inequality: Inequality,
    /// Constrained side (the disturbance-derived quantity).
    pub left: f64,
    /// Bounding side.
    pub right: f64,
    /// Slack: nonnegative for every physical measurement.
    pub residual: f64,
    pub verdict: Verdict,
}

/// Saturation tolerance for the closed-form inequalities.
pub const SATURATION_TOL_CLOSED: f64 = 1e-6;
/// Saturation tolerance where quadrature noise enters (entropy-based).
pub const SATURATION_TOL_QUAD: f64 = 1e-4;
/// Residuals below this count as violations.
pub const VIOLATION_TOL: f64 = 1e-6;

/// The d-outcome optimal measurement: operator `m` is
/// `(|m><m| + lambda sum_{i != m} |i><i|) / sqrt(1 + (d-1) lambda^2)`.
/// Every operator is a basis rearrangement of the `(1, d-1)` family member.
pub fn build_type1(d: usize, lambda: f64) -> Result<Measurement> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
    }
    let norm = (1.0 + (d as f64 - 1.0) * lambda * lambda).sqrt();
    let diags = (0..d)
        .map(|m| {
            (0..d)
                .map(|i| if i == m { 1.0 / norm } else { lambda / norm })
                .collect()
        })
        .collect();
    Measurement::from_diagonals(d, diags, 1e-12)
}

/// The (d+1)-outcome optimal measurement for information below the
/// tangency point: `d` type-1 operators at `lambda_T` scaled by
/// `c = sqrt(I / I_T)`, plus `sqrt(1 - c^2)` times the identity.
pub fn build_type2(d: usize, target_info: f64, tangent: &TangentResult) -> Result<Measurement> {
    if tangent.dim != d {
        return Err(Error::InvalidArgument("tangent result is for a different dimension".into()));
    }
    if target_info <= 0.0 || target_info >= tangent.info_t {
        return Err(Error::TargetOutOfRange {
            target: target_info,
            min: 0.0,
            max: tangent.info_t,
        });
    }
    let c = (target_info / tangent.info_t).sqrt();
    let norm = (1.0 + (d as f64 - 1.0) * tangent.lambda_t * tangent.lambda_t).sqrt();
    let mut diags: Vec<Vec<f64>> = (0..d)
        .map(|m| {
            (0..d)
                .map(|i| {
                    let base = if i == m { 1.0 } else { tangent.lambda_t };
                    c * base / norm
                })
                .collect()
        })
        .collect();
    diags.push(vec![(1.0 - c * c).sqrt(); d]);
    Measurement::from_diagonals(d, diags, 1e-12)
}

/// Information kind for the type-1 solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfoTarget {
    Ig,
    I,
}

/// Solve for the `lambda` at which the type-1 measurement provides the
/// requested information (monotone decreasing in `lambda`).
pub fn solve_lambda_for_info(d: usize, kind: InfoTarget, target: f64) -> Result<f64> {
    let info_of = |lam: f64| -> f64 {
        let s = family_spectrum(d, 1, d - 1, lam).expect("valid family");
        match kind {
            InfoTarget::Ig => (d as f64 * estimation_fidelity_single(&s)).log2(),
            InfoTarget::I => entropy_auto(&s, 1e-9),
        }
    };
    let max = info_of(0.0);
    if !(0.0..=max).contains(&target) {
        return Err(Error::TargetOutOfRange { target, min: 0.0, max });
    }
    if target == 0.0 {
        return Ok(1.0);
    }
    if target == max {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if info_of(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Evaluate one tradeoff inequality on the measurement's averaged
/// measures. The entropy-based inequalities need the tangent result of
/// the matching plane and dimension.
pub fn check_saturation(
    meas: &Measurement,
    inequality: Inequality,
    tangent: Option<&TangentResult>,
) -> Result<SaturationReport> {
    let d = meas.dim() as f64;
    match inequality {
        Inequality::Gf => {
            let pt = average_measures_tol(meas, MeasurePair::IG_DF, 1e-9)?;
            let (left, right) = gf_sides(d, pt.info, pt.dist);
            Ok(report(Inequality::Gf, left, right, right - left, SATURATION_TOL_CLOSED))
        }
        Inequality::Gr => {
            let pt = average_measures_tol(meas, MeasurePair::IG_DR, 1e-9)?;
            let (left, right) = gr_sides(d, pt.info, pt.dist);
            Ok(report(Inequality::Gr, left, right, right - left, SATURATION_TOL_CLOSED))
        }
        Inequality::If => entropy_inequality(meas, MeasurePair::I_DF, Inequality::If, tangent),
        Inequality::Ir => entropy_inequality(meas, MeasurePair::I_DR, Inequality::Ir, tangent),
    }
}

/// Constrained and bounding sides of the estimation/operation fidelity
/// tradeoff, in averaged additive coordinates.
pub fn gf_sides(d: f64, ig: f64, df: f64) -> (f64, f64) {
    let g = 2f64.powf(ig) / d;
    let f = 2f64.powf(-df);
    let left = (f - 1.0 / (d + 1.0)).max(0.0).sqrt();
    let right = (g - 1.0 / (d + 1.0)).max(0.0).sqrt()
        + ((d - 1.0) * (2.0 / (d + 1.0) - g).max(0.0)).sqrt();
    (left, right)
}

/// Sides of `(d+1) 2^{I_G} + (d-1) 2^{-D_R} <= 2d`; an infinite `D_R`
/// contributes nothing to the reversibility term.
pub fn gr_sides(d: f64, ig: f64, dr: f64) -> (f64, f64) {
    let r_term = if dr.is_finite() { 2f64.powf(-dr) } else { 0.0 };
    ((d + 1.0) * 2f64.powf(ig) + (d - 1.0) * r_term, 2.0 * d)
}

/// Lower disturbance bound at a given averaged entropy reduction: the
/// tangent line below the tangency information, the `(1, d-1)` curve
/// above it. Without a tangent (a convex curve, as for the qubit `I`-`D_F`
/// plane) the curve applies everywhere.
pub fn entropy_bound(
    d: usize,
    pair: MeasurePair,
    info: f64,
    tangent: Option<&TangentResult>,
) -> Result<f64> {
    if info <= 0.0 {
        return Ok(0.0);
    }
    if let Some(t) = tangent {
        if info < t.info_t {
            return Ok(t.slope * info);
        }
    }
    curve_dist_at_entropy(d, pair, info.min(bound_cap(d)), 1e-10)
}

fn entropy_inequality(
    meas: &Measurement,
    pair: MeasurePair,
    id: Inequality,
    tangent: Option<&TangentResult>,
) -> Result<SaturationReport> {
    let tangent = tangent.ok_or_else(|| {
        Error::InvalidArgument("entropy-based inequality needs a tangent result".into())
    })?;
    if tangent.dim != meas.dim() || tangent.pair != pair {
        return Err(Error::InvalidArgument(
            "tangent result does not match the measurement's dimension or plane".into(),
        ));
    }
    let pt = average_measures_tol(meas, pair, 1e-9)?;
    let bound = entropy_bound(meas.dim(), pair, pt.info, Some(tangent))?;
    let residual = if pt.dist.is_finite() { pt.dist - bound } else { f64::INFINITY };
    Ok(report(id, bound, pt.dist, residual, SATURATION_TOL_QUAD))
}

// averaged I never exceeds the single-outcome maximum, but guard the
// curve inversion against rounding at the top end
fn bound_cap(d: usize) -> f64 {
    let s = family_spectrum(d, 1, d - 1, 0.0).expect("valid family");
    entropy_auto(&s, 1e-10)
}

fn report(inequality: Inequality, left: f64, right: f64, residual: f64, tol: f64) -> SaturationReport {
    let verdict = if !residual.is_finite() {
        Verdict::Satisfied
    } else if residual < -VIOLATION_TOL {
        Verdict::Violated
    } else if residual.abs() <= tol {
        Verdict::Saturated
    } else {
        Verdict::Satisfied
    };
    SaturationReport { inequality, left, right, residual, verdict }
}

/// Averaged measures of a type-1 measurement on the requested plane.
pub fn type1_point(d: usize, lambda: f64, pair: MeasurePair) -> Result<MeasurePoint> {
    let meas = build_type1(d, lambda)?;
    average_measures_tol(&meas, pair, 1e-9)
}

/// Spectra of all type-1 operators coincide with the `(1, d-1)` family
/// member, so the averaged measures equal the single-outcome ones.
pub fn type1_spectrum(d: usize, lambda: f64) -> Result<Spectrum<f64>> {
    let norm = (1.0 + (d as f64 - 1.0) * lambda * lambda).sqrt();
    family_spectrum(d, 1, d - 1, lambda)?.scaled(1.0 / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{average_measures, MeasurePair};

    #[test]
    fn type1_is_complete_and_projective_at_zero() {
        for d in [2usize, 3, 4, 6] {
            for lam in [0.0, 0.3, 0.7, 1.0] {
                let m = build_type1(d, lam).unwrap();
                assert_eq!(m.outcomes(), d);
            }
        }
        let proj = build_type1(2, 0.0).unwrap();
        let spectra = proj.spectra();
        assert_eq!(spectra[0].values(), &[1.0, 0.0]);
        assert!(build_type1(4, 1.2).is_err());
        assert!(build_type1(4, -0.1).is_err());
    }

    #[test]
    fn type1_identity_like_at_lambda_one() {
        let m = build_type1(4, 1.0).unwrap();
        for pair in MeasurePair::ADDITIVE {
            let pt = average_measures(&m, pair).unwrap();
            assert!(pt.info.abs() < 1e-12);
            assert!(pt.dist.abs() < 1e-12);
        }
    }

    #[test]
    fn solver_round_trip() {
        let target = (8.0f64 / 5.0).log2(); // I_G maximum for d = 4
        let lam = solve_lambda_for_info(4, InfoTarget::Ig, target).unwrap();
        assert!(lam.abs() < 1e-9);
        assert_eq!(solve_lambda_for_info(4, InfoTarget::Ig, 0.0).unwrap(), 1.0);

        let lam = solve_lambda_for_info(4, InfoTarget::Ig, 0.3).unwrap();
        let got = type1_point(4, lam, MeasurePair::IG_DF).unwrap().info;
        assert!((got - 0.3).abs() < 1e-8);

        let lam = solve_lambda_for_info(4, InfoTarget::I, 0.2).unwrap();
        let s = type1_spectrum(4, lam).unwrap();
        let got = crate::entropy::entropy_auto(&s, 1e-9);
        assert!((got - 0.2).abs() < 1e-5);

        assert!(solve_lambda_for_info(4, InfoTarget::Ig, 2.0).is_err());
    }

    #[test]
    fn type1_saturates_both_closed_inequalities() {
        let m = build_type1(4, 0.3).unwrap();
        let gf = check_saturation(&m, Inequality::Gf, None).unwrap();
        assert_eq!(gf.verdict, Verdict::Saturated);
        let gr = check_saturation(&m, Inequality::Gr, None).unwrap();
        assert_eq!(gr.verdict, Verdict::Saturated);
        assert!(gr.residual.abs() < 1e-9);
    }

    #[test]
    fn type2_construction() {
        let t = crate::region::tangent_from_identity(4, MeasurePair::I_DF, 1e-8).unwrap();
        let m = build_type2(4, 0.05, &t).unwrap();
        assert_eq!(m.outcomes(), 5);
        let pt = average_measures_tol(&m, MeasurePair::I_DF, 1e-9).unwrap();
        assert!((pt.info - 0.05).abs() < 1e-6, "averaged I = {}", pt.info);
        // rejects targets at or above the tangency information
        assert!(build_type2(4, t.info_t, &t).is_err());
        assert!(build_type2(4, 0.0, &t).is_err());
        // near the tangency the identity outcome weight vanishes
        let m = build_type2(4, t.info_t * (1.0 - 1e-9), &t).unwrap();
        let id_weight = m.probabilities()[4];
        assert!(id_weight < 1e-8);
    }

    #[test]
    fn type2_saturates_linear_branch() {
        let t = crate::region::tangent_from_identity(4, MeasurePair::I_DF, 1e-8).unwrap();
        let m = build_type2(4, 0.05, &t).unwrap();
        let rep = check_saturation(&m, Inequality::If, Some(&t)).unwrap();
        assert_eq!(rep.verdict, Verdict::Saturated);
        assert!(rep.residual.abs() < 1e-4, "residual {}", rep.residual);
    }

    #[test]
    fn entropy_inequality_requires_matching_tangent() {
        let m = build_type1(4, 0.3).unwrap();
        assert!(check_saturation(&m, Inequality::If, None).is_err());
        let t = crate::region::tangent_from_identity(4, MeasurePair::I_DR, 1e-8).unwrap();
        assert!(check_saturation(&m, Inequality::If, Some(&t)).is_err());
    }

    #[test]
    fn infinite_dr_makes_gr_trivially_satisfied() {
        let m = build_type1(4, 0.0).unwrap(); // projective: R = 0
        let rep = check_saturation(&m, Inequality::Gr, None).unwrap();
        // I_G at maximum makes the G-term alone reach 2d: still saturated
        assert!(rep.residual.abs() < 1e-9);
    }
}
