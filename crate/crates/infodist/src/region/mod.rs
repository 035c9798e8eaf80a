//! Information-disturbance regions: boundary families, convex hulls,
//! tangent points, curvature classification, and decrease profiles.

mod hull;

pub use hull::{convex_hull, HullRegion};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entropy::entropy_auto;
use crate::error::{Error, Result};
use crate::measures::{evaluate_pair, DistKind, InfoKind, MeasurePair};
use crate::spectrum::Spectrum;

/// Quadrature tolerance for entropy evaluations along boundary curves.
const CURVE_ENTROPY_TOL: f64 = 1e-9;

/// One sampled point of a boundary curve.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    pub lambda: f64,
    pub info: f64,
    pub dist: f64,
}

/// Sampled `(info, disturbance)` curve of the operator family `(k, l)`:
/// `k` unit singular values, `l` values of `lambda`, the rest zero.
///
/// Samples are ordered by strictly increasing `lambda`; the endpoints
/// `lambda = 0` and `lambda = 1` are the rank-`k` and rank-`k+l` projector
/// points. `off_plane` flags reversibility pairs with `k + l < d`, whose
/// disturbance is infinite at every `lambda`.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pub dim: usize,
    pub k: usize,
    pub l: usize,
    pub pair: MeasurePair,
    pub samples: Vec<CurveSample>,
    pub off_plane: bool,
}

/// Rank-`r` projector point on a plane.
#[derive(Debug, Clone, Copy)]
pub struct ProjectorPoint {
    pub dim: usize,
    pub rank: usize,
    pub info: f64,
    pub dist: f64,
}

/// Tangent line drawn from the identity point to the `(1, d-1)` curve.
#[derive(Debug, Clone, Copy)]
pub struct TangentResult {
    pub pair: MeasurePair,
    pub dim: usize,
    pub lambda_t: f64,
    pub info_t: f64,
    pub dist_t: f64,
    /// Slope of the tangent line through the origin: `dist_t / info_t`.
    pub slope: f64,
}

/// Curvature-sign classes of the `(1, d-1)` lower boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSign {
    Plus,
    Minus,
    Zero,
    /// Negative near the identity point (`lambda = 1`), turning positive.
    MinusPlus,
}

impl std::fmt::Display for CurvatureSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CurvatureSign::Plus => "+",
            CurvatureSign::Minus => "-",
            CurvatureSign::Zero => "0",
            CurvatureSign::MinusPlus => "-+",
        };
        f.write_str(s)
    }
}

/// Spectrum of the family operator: `k` ones, `l` copies of `lambda`,
/// `d - k - l` zeros.
pub fn family_spectrum(d: usize, k: usize, l: usize, lambda: f64) -> Result<Spectrum<f64>> {
    if k < 1 || l < 1 || k + l > d {
        return Err(Error::InvalidArgument(format!(
            "family (k={k}, l={l}) out of range for d={d}"
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
    }
    let mut v = vec![0.0; d];
    for s in v.iter_mut().take(k) {
        *s = 1.0;
    }
    for s in v.iter_mut().skip(k).take(l) {
        *s = lambda;
    }
    Spectrum::new(v)
}

/// Projector point `P_r` on the given plane.
pub fn projector_point(d: usize, r: usize, pair: MeasurePair) -> Result<ProjectorPoint> {
    let s = Spectrum::projector(d, r)?;
    let (info, dist) = evaluate_pair(&s, pair, CURVE_ENTROPY_TOL);
    Ok(ProjectorPoint { dim: d, rank: r, info, dist })
}

/// Sample the `(k, l)` family curve on a uniform `lambda` grid.
pub fn trace_curve(
    d: usize,
    k: usize,
    l: usize,
    pair: MeasurePair,
    grid_size: usize,
) -> Result<BoundaryCurve> {
    if grid_size < 3 {
        return Err(Error::InvalidArgument(format!("grid size must be >= 3, got {grid_size}")));
    }
    family_spectrum(d, k, l, 0.0)?; // validate (k, l)
    let off_plane = pair.dist == DistKind::Dr && k + l < d;
    let mut samples = Vec::with_capacity(grid_size);
    for j in 0..grid_size {
        let lambda = j as f64 / (grid_size - 1) as f64;
        let s = family_spectrum(d, k, l, lambda)?;
        let (info, dist) = evaluate_pair(&s, pair, CURVE_ENTROPY_TOL);
        samples.push(CurveSample {
            lambda,
            info,
            dist: if off_plane { f64::INFINITY } else { dist },
        });
    }
    Ok(BoundaryCurve { dim: d, k, l, pair, samples, off_plane })
}

/// Point cloud plus the named boundary curves of the single-outcome region.
#[derive(Debug, Clone)]
pub struct RegionSamples {
    pub dim: usize,
    pub pair: MeasurePair,
    pub cloud: Vec<(f64, f64)>,
    pub curves: Vec<BoundaryCurve>,
}

/// Draw a random spectrum, alternating sorted-uniform singular values and
/// Dirichlet-distributed squared values. Nearly degenerate draws are
/// redrawn so the deterministic entropy routes always apply.
pub(crate) fn random_spectrum(d: usize, rng: &mut impl Rng) -> Spectrum<f64> {
    loop {
        let mut v: Vec<f64> = if rng.gen_bool(0.5) {
            (0..d).map(|_| rng.gen::<f64>()).collect()
        } else {
            let e: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let tot: f64 = e.iter().sum();
            e.into_iter().map(|x| (x / tot).sqrt()).collect()
        };
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if v[0] == 0.0 {
            continue;
        }
        let min_gap = v
            .windows(2)
            .map(|w| (w[0] * w[0] - w[1] * w[1]) / (v[0] * v[0]))
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-4 {
            continue;
        }
        return Spectrum::new(v).unwrap();
    }
}

/// Sample the single-outcome region: random spectra (two sampling routes)
/// plus every `(k, l)` family curve.
pub fn single_outcome_region(
    d: usize,
    pair: MeasurePair,
    resolution: usize,
    seed: u64,
) -> Result<RegionSamples> {
    if resolution < 10 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be >= 10, got {resolution}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_cloud = 20 * resolution;
    let mut cloud = Vec::with_capacity(n_cloud);
    for _ in 0..n_cloud {
        let s = random_spectrum(d, &mut rng);
        cloud.push(evaluate_pair(&s, pair, 1e-8));
    }
    let mut curves = Vec::new();
    for k in 1..d {
        for l in 1..=(d - k) {
            curves.push(trace_curve(d, k, l, pair, resolution)?);
        }
    }
    Ok(RegionSamples { dim: d, pair, cloud, curves })
}

/// Convex hull of the averaged region: hull of all finite single-outcome
/// samples, flagged unbounded for reversibility-based pairs.
pub fn averaged_region(d: usize, pair: MeasurePair, resolution: usize, seed: u64) -> Result<HullRegion> {
    let samples = single_outcome_region(d, pair, resolution, seed)?;
    let mut pts: Vec<(f64, f64)> = samples.cloud;
    for c in &samples.curves {
        for s in &c.samples {
            pts.push((s.info, s.dist));
        }
    }
    let hull = convex_hull(&pts)?;
    Ok(hull.with_unbounded(pair.dist == DistKind::Dr))
}

fn pair_point_on_family(d: usize, pair: MeasurePair, lambda: f64) -> (f64, f64) {
    pair_point_on_family_tol(d, pair, lambda, CURVE_ENTROPY_TOL)
}

fn pair_point_on_family_tol(d: usize, pair: MeasurePair, lambda: f64, tol: f64) -> (f64, f64) {
    let s = family_spectrum(d, 1, d - 1, lambda).expect("valid family");
    evaluate_pair(&s, pair, tol)
}

/// Entropy reduction along the `(1, d-1)` family.
pub fn family_entropy(d: usize, lambda: f64, tol: f64) -> f64 {
    let s = family_spectrum(d, 1, d - 1, lambda).expect("valid family");
    entropy_auto(&s, tol)
}

/// Invert `lambda -> I(lambda)` on the `(1, d-1)` family (monotone
/// decreasing in `lambda`) by bisection.
pub fn lambda_for_entropy(d: usize, target: f64, tol: f64) -> Result<f64> {
    let max = family_entropy(d, 0.0, tol);
    if !(0.0..=max).contains(&target) {
        return Err(Error::TargetOutOfRange { target, min: 0.0, max });
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if family_entropy(d, mid, tol) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Disturbance of the `(1, d-1)` curve at a given entropy reduction.
pub fn curve_dist_at_entropy(d: usize, pair: MeasurePair, info: f64, tol: f64) -> Result<f64> {
    let lambda = lambda_for_entropy(d, info, tol)?;
    Ok(pair_point_on_family(d, pair, lambda).1)
}

/// Classify the curvature sign of the `(1, d-1)` curve on a `lambda`
/// window, via centered finite differences of the parametric derivatives
/// (step `1e-3`, Richardson-extrapolated once). An exactly linear curve is
/// recognized first from chord deviations.
pub fn curvature_sign(d: usize, pair: MeasurePair, window: (f64, f64)) -> Result<CurvatureSign> {
    let (lo, hi) = window;
    if !(0.0 < lo && lo < hi && hi < 1.0) {
        return Err(Error::InvalidArgument(format!("window ({lo}, {hi}) not inside (0, 1)")));
    }

    // exact-zero case: the curve is a straight segment
    let probe: Vec<(f64, f64)> = (0..=20)
        .map(|j| pair_point_on_family(d, pair, lo + (hi - lo) * j as f64 / 20.0))
        .collect();
    let a = probe[0];
    let b = probe[20];
    let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
    let max_dev = probe
        .iter()
        .map(|&p| ((b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0)).abs() / len)
        .fold(0.0f64, f64::max);
    if max_dev < 1e-9 {
        return Ok(CurvatureSign::Zero);
    }

    let n = 46;
    let h = 1e-3;
    let mut kappas = Vec::with_capacity(n);
    for j in 0..n {
        let lam = lo + (hi - lo) * j as f64 / (n - 1) as f64;
        kappas.push((lam, curvature_at(d, pair, lam, h)));
    }
    // quadrature noise amplified by 1/h^2 keeps finite-difference curvature
    // accurate to roughly 1e-5; true magnitudes on the window are >= 1e-2
    let eps = 1e-4;
    if kappas.iter().all(|&(_, k)| k.abs() < 1e-8) {
        return Ok(CurvatureSign::Zero);
    }
    let has_pos = kappas.iter().any(|&(_, k)| k > eps);
    let has_neg = kappas.iter().any(|&(_, k)| k < -eps);
    match (has_pos, has_neg) {
        (true, false) => Ok(CurvatureSign::Plus),
        (false, true) => Ok(CurvatureSign::Minus),
        (false, false) => Ok(CurvatureSign::Zero),
        (true, true) => {
            // negative branch must sit at larger lambda (near the identity)
            let max_pos_lam = kappas
                .iter()
                .filter(|&&(_, k)| k > eps)
                .map(|&(l, _)| l)
                .fold(f64::NEG_INFINITY, f64::max);
            let min_neg_lam = kappas
                .iter()
                .filter(|&&(_, k)| k < -eps)
                .map(|&(l, _)| l)
                .fold(f64::INFINITY, f64::min);
            if max_pos_lam < min_neg_lam {
                Ok(CurvatureSign::MinusPlus)
            } else {
                Err(Error::Unclassifiable(format!(
                    "mixed signs not split by lambda: last + at {max_pos_lam}, first - at {min_neg_lam}"
                )))
            }
        }
    }
}

/// Second derivative of disturbance with respect to information along the
/// parametric curve, from first and second `lambda` derivatives.
fn curvature_at(d: usize, pair: MeasurePair, lam: f64, h: f64) -> f64 {
    let eval = |l: f64| pair_point_on_family_tol(d, pair, l, 1e-12);
    let second = |h: f64| {
        let (i0, d0) = eval(lam);
        let (ip, dp) = eval(lam + h);
        let (im, dm) = eval(lam - h);
        let di1 = (ip - im) / (2.0 * h);
        let dd1 = (dp - dm) / (2.0 * h);
        let di2 = (ip - 2.0 * i0 + im) / (h * h);
        let dd2 = (dp - 2.0 * d0 + dm) / (h * h);
        (di1 * dd2 - dd1 * di2) / (di1 * di1 * di1)
    };
    let full = second(h);
    let half = second(h / 2.0);
    (4.0 * half - full) / 3.0
}

/// Find the point of tangency of the line drawn from the identity point
/// (the origin of the additive plane) to the `(1, d-1)` curve.
///
/// Solves `D'(lambda) I(lambda) - D(lambda) I'(lambda) = 0` by bracketed
/// bisection; failing to bracket signals a curve that is not inverted-S.
pub fn tangent_from_identity(d: usize, pair: MeasurePair, tol: f64) -> Result<TangentResult> {
    if pair.info != InfoKind::I || !matches!(pair.dist, DistKind::Df | DistKind::Dr) {
        return Err(Error::InvalidArgument(
            "tangent construction applies to the I-DF and I-DR pairs".into(),
        ));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let quad_tol = (tol / 10.0).min(1e-9);
    let h = 1e-4;
    let phi = |lam: f64| {
        let i = family_entropy(d, lam, quad_tol);
        let dist = pair_point_on_family(d, pair, lam).1;
        let di = (family_entropy(d, lam + h, quad_tol) - family_entropy(d, lam - h, quad_tol))
            / (2.0 * h);
        let dd = (pair_point_on_family(d, pair, lam + h).1
            - pair_point_on_family(d, pair, lam - h).1)
            / (2.0 * h);
        dd * i - dist * di
    };
    let n = 61;
    let lo_end = 0.02;
    let hi_end = 0.98;
    let mut prev = (lo_end, phi(lo_end));
    let mut bracket = None;
    for j in 1..n {
        let lam = lo_end + (hi_end - lo_end) * j as f64 / (n - 1) as f64;
        let v = phi(lam);
        if prev.1 == 0.0 || prev.1.signum() != v.signum() {
            bracket = Some((prev.0, lam));
            break;
        }
        prev = (lam, v);
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::NoBracket(format!("no tangency sign change on (1,{}) for d={d}", d - 1))
    })?;
    let mut f_lo = phi(lo);
    for _ in 0..80 {
        if hi - lo < 1e-11 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = phi(mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_lo.signum() == f_mid.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let lambda_t = 0.5 * (lo + hi);
    let info_t = family_entropy(d, lambda_t, quad_tol);
    let dist_t = pair_point_on_family(d, pair, lambda_t).1;
    Ok(TangentResult { pair, dim: d, lambda_t, info_t, dist_t, slope: dist_t / info_t })
}

/// One sample of the decrease profile.
#[derive(Debug, Clone, Copy)]
pub struct ProfilePoint {
    pub info: f64,
    /// Disturbance decrease from the `(1, d-1)` curve to the tangent line.
    pub amount: f64,
    /// Relative decrease: `amount / D_curve(info)`.
    pub rate: f64,
}

/// Amount and rate of disturbance decrease from the `(1, d-1)` curve to
/// the tangent line, on a uniform information grid in `(0, I_T)`.
pub fn decrease_profile(d: usize, tangent: &TangentResult, grid: usize) -> Result<Vec<ProfilePoint>> {
    if grid < 1 {
        return Err(Error::InvalidArgument("grid must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(grid);
    for j in 1..=grid {
        let info = tangent.info_t * j as f64 / (grid + 1) as f64;
        out.push(decrease_at(d, tangent, info)?);
    }
    Ok(out)
}

/// Decrease at a single information value; zero by definition at or above
/// the tangency information.
pub fn decrease_at(d: usize, tangent: &TangentResult, info: f64) -> Result<ProfilePoint> {
    if info <= 0.0 {
        return Err(Error::InvalidArgument("info must be positive".into()));
    }
    if info >= tangent.info_t {
        return Ok(ProfilePoint { info, amount: 0.0, rate: 0.0 });
    }
    let d_curve = curve_dist_at_entropy(d, tangent.pair, info, 1e-11)?;
    let amount = d_curve - tangent.slope * info;
    Ok(ProfilePoint { info, amount, rate: amount / d_curve })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasurePair;

    #[test]
    fn family_spectrum_examples() {
        let s = family_spectrum(4, 1, 3, 0.5).unwrap();
        assert_eq!(s.values(), &[1.0, 0.5, 0.5, 0.5]);
        let p3 = family_spectrum(4, 1, 2, 1.0).unwrap();
        assert_eq!(p3.values(), Spectrum::<f64>::projector(4, 3).unwrap().values());
        let p1 = family_spectrum(4, 1, 2, 0.0).unwrap();
        assert_eq!(p1.values(), Spectrum::<f64>::projector(4, 1).unwrap().values());
        assert!(family_spectrum(4, 0, 1, 0.5).is_err());
        assert!(family_spectrum(4, 2, 3, 0.5).is_err());
        assert!(family_spectrum(4, 1, 3, 1.5).is_err());
    }

    #[test]
    fn trace_curve_endpoints_match_projectors() {
        for pair in [MeasurePair::IG_DF, MeasurePair::I_DF] {
            let c = trace_curve(4, 1, 3, pair, 11).unwrap();
            let first = c.samples.first().unwrap();
            let last = c.samples.last().unwrap();
            let p1 = projector_point(4, 1, pair).unwrap();
            let p4 = projector_point(4, 4, pair).unwrap();
            assert!((first.info - p1.info).abs() < 1e-9);
            assert!((first.dist - p1.dist).abs() < 1e-9);
            assert!((last.info - p4.info).abs() < 1e-9);
            assert!((last.dist - p4.dist).abs() < 1e-9);
        }
    }

    #[test]
    fn ig_df_curve_spans_the_documented_range() {
        let c = trace_curve(4, 1, 3, MeasurePair::IG_DF, 101).unwrap();
        let last = c.samples.last().unwrap();
        assert!((last.info, last.dist) == (0.0, 0.0));
        let first = c.samples.first().unwrap();
        assert!((first.info - (8.0f64 / 5.0).log2()).abs() < 1e-12);
        assert!((first.dist - (5.0f64 / 2.0).log2()).abs() < 1e-12);
    }

    #[test]
    fn off_plane_dr_curves() {
        let c = trace_curve(4, 2, 1, MeasurePair::I_DR, 11).unwrap();
        assert!(c.off_plane);
        assert!(c.samples.iter().all(|s| s.dist == f64::INFINITY));

        let full_rank = trace_curve(4, 3, 1, MeasurePair::IG_DR, 11).unwrap();
        assert!(!full_rank.off_plane);
        assert_eq!(full_rank.samples[0].dist, f64::INFINITY); // sigma_min = 0 at lambda = 0
        assert!(full_rank.samples[1..].iter().all(|s| s.dist.is_finite()));
    }

    #[test]
    fn qubit_region_has_single_family() {
        let r = single_outcome_region(2, MeasurePair::IG_DF, 12, 7).unwrap();
        assert_eq!(r.curves.len(), 1);
        assert_eq!((r.curves[0].k, r.curves[0].l), (1, 1));
        assert!(single_outcome_region(2, MeasurePair::IG_DF, 9, 7).is_err());
    }

    #[test]
    fn tangent_rejects_wrong_pair() {
        assert!(tangent_from_identity(4, MeasurePair::IG_DF, 1e-8).is_err());
        assert!(tangent_from_identity(4, MeasurePair::I_DF, 0.0).is_err());
    }

    #[test]
    fn tangent_absent_for_convex_qubit_i_df() {
        // for d = 2 the I-DF curve is convex, so no interior tangency exists
        assert!(matches!(
            tangent_from_identity(2, MeasurePair::I_DF, 1e-8),
            Err(Error::NoBracket(_))
        ));
    }

    #[test]
    fn tangent_line_touches_and_supports() {
        let t = tangent_from_identity(4, MeasurePair::I_DF, 1e-8).unwrap();
        assert!((t.dist_t - t.slope * t.info_t).abs() < 1e-12);
        // the curve lies above the line just below the tangency
        for frac in [0.8, 0.9, 0.95] {
            let info = t.info_t * frac;
            let d_curve = curve_dist_at_entropy(4, t.pair, info, 1e-11).unwrap();
            assert!(d_curve >= t.slope * info - 1e-9);
        }
    }

    #[test]
    fn decrease_profile_zero_at_and_above_tangency() {
        let t = tangent_from_identity(4, MeasurePair::I_DF, 1e-8).unwrap();
        let p = decrease_at(4, &t, t.info_t * 1.2).unwrap();
        assert_eq!(p.amount, 0.0);
        assert!(decrease_at(4, &t, 0.0).is_err());
    }
}
