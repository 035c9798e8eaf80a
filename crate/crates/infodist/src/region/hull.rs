//! Planar convex hulls of information-disturbance point sets.

use crate::error::{Error, Result};

/// Convex hull of the finite part of an averaged region.
///
/// `unbounded` marks regions that extend to infinite disturbance (the
/// reversibility-based pairs): containment then only constrains points to
/// lie above the lower boundary within the hull's information range.
#[derive(Debug, Clone)]
pub struct HullRegion {
    /// Counter-clockwise vertices, starting from the lowest-then-leftmost.
    vertices: Vec<(f64, f64)>,
    unbounded: bool,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew monotone-chain convex hull. Rejects inputs with fewer than three
/// points or whose hull is degenerate (all points collinear).
pub fn convex_hull(points: &[(f64, f64)]) -> Result<HullRegion> {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|p| p.0.is_finite() && p.1.is_finite())
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateHull(format!(
            "need at least 3 finite points, got {}",
            pts.len()
        )));
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let vertices: Vec<(f64, f64)> = lower.into_iter().chain(upper).collect();
    if vertices.len() < 3 {
        return Err(Error::DegenerateHull("all points collinear".into()));
    }
    Ok(HullRegion { vertices, unbounded: false })
}

impl HullRegion {
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn unbounded(&self) -> bool {
        self.unbounded
    }

    pub fn with_unbounded(mut self, flag: bool) -> Self {
        self.unbounded = flag;
        self
    }

    /// Vertices of the lower boundary, left to right.
    pub fn lower_chain(&self) -> Vec<(f64, f64)> {
        let n = self.vertices.len();
        let start = (0..n)
            .min_by(|&a, &b| self.vertices[a].partial_cmp(&self.vertices[b]).unwrap())
            .unwrap();
        let mut chain = vec![self.vertices[start]];
        let mut i = start;
        loop {
            let next = (i + 1) % n;
            if self.vertices[next].0 >= self.vertices[i].0 - 1e-15 && next != start {
                chain.push(self.vertices[next]);
                i = next;
            } else {
                break;
            }
        }
        chain
    }

    /// Lower-boundary disturbance at the given information, by linear
    /// interpolation along the lower chain.
    pub fn lower_bound_at(&self, info: f64) -> f64 {
        let chain = self.lower_chain();
        if info <= chain[0].0 {
            return chain[0].1;
        }
        for w in chain.windows(2) {
            if info <= w[1].0 {
                let dx = w[1].0 - w[0].0;
                if dx <= 0.0 {
                    return w[0].1.min(w[1].1);
                }
                let t = (info - w[0].0) / dx;
                return w[0].1 + t * (w[1].1 - w[0].1);
            }
        }
        chain.last().unwrap().1
    }

    /// Whether the point is inside the region, up to an absolute distance
    /// tolerance. Points at infinite disturbance are inside only for
    /// unbounded regions.
    pub fn contains(&self, point: (f64, f64), tol: f64) -> bool {
        let (x, y) = point;
        if !x.is_finite() {
            return false;
        }
        let xmin = self.vertices.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
        let xmax = self.vertices.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
        if self.unbounded {
            if x < xmin - tol || x > xmax + tol {
                return false;
            }
            return y >= self.lower_bound_at(x.clamp(xmin, xmax)) - tol;
        }
        if !y.is_finite() {
            return false;
        }
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
            if len == 0.0 {
                continue;
            }
            if cross(a, b, point) / len < -tol {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_its_own_hull() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 3);
        for p in pts {
            assert!(h.contains(p, 1e-12));
        }
        assert!(h.contains((0.2, 0.2), 1e-12));
        assert!(!h.contains((0.8, 0.8), 1e-12));
    }

    #[test]
    fn interior_points_are_dropped() {
        let pts = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 1.0)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
    }

    #[test]
    fn collinear_input_is_degenerate() {
        let pts = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)];
        assert!(matches!(convex_hull(&pts), Err(Error::DegenerateHull(_))));
        assert!(convex_hull(&[(0.0, 0.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn infinite_points_are_filtered() {
        let pts = [
            (0.0, 0.0),
            (1.0, 0.0),
            (0.5, 1.0),
            (0.5, f64::INFINITY),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 3);
    }

    #[test]
    fn unbounded_containment() {
        let h = convex_hull(&[(0.0, 0.0), (1.0, 0.5), (1.0, 3.0), (0.0, 2.0)])
            .unwrap()
            .with_unbounded(true);
        assert!(h.contains((0.5, 100.0), 1e-9));
        assert!(h.contains((0.5, f64::INFINITY), 1e-9));
        assert!(!h.contains((0.5, 0.1), 1e-9)); // below the lower chain
        assert!(!h.contains((1.5, 1.0), 1e-9)); // outside the info range
    }

    #[test]
    fn lower_chain_runs_left_to_right() {
        let h = convex_hull(&[(0.0, 1.0), (1.0, 0.0), (2.0, 1.0), (1.0, 2.0)]).unwrap();
        let chain = h.lower_chain();
        assert_eq!(chain, vec![(0.0, 1.0), (1.0, 0.0), (2.0, 1.0)]);
        assert!((h.lower_bound_at(0.5) - 0.5).abs() < 1e-12);
    }
}
