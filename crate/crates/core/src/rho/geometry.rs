//! Convex polygons with area-angle coordinates about an interior centre.
//!
//! A point `p` of the plane has a level `lambda` (the smallest scaling of the
//! polygon about the centre whose boundary contains `p`) and an area
//! fraction `s in [0,1)` (the share of the polygon's area swept from the
//! first vertex ray to the ray through `p`). Shifting `s` while holding
//! `lambda` fixed is an area-preserving map of the plane.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct StarPolygon {
    pub center: [f64; 2],
    pub vertices: Vec<[f64; 2]>,
    #[serde(skip)]
    phi: Vec<f64>,
    #[serde(skip)]
    dist: Vec<f64>,
    #[serde(skip)]
    theta: Vec<f64>,
    #[serde(skip)]
    tan0: Vec<f64>,
    #[serde(skip)]
    prefix: Vec<f64>,
    pub area: f64,
    pub d_min: f64,
    pub r_max: f64,
}

impl StarPolygon {
    /// `vertices` counterclockwise and convex, `center` strictly inside.
    pub fn new(vertices: Vec<[f64; 2]>, center: [f64; 2]) -> StarPolygon {
        let n = vertices.len();
        assert!(n >= 3);
        let rel: Vec<[f64; 2]> = vertices
            .iter()
            .map(|v| [v[0] - center[0], v[1] - center[1]])
            .collect();
        let mut theta = Vec::with_capacity(n + 1);
        let t0 = rel[0][1].atan2(rel[0][0]);
        theta.push(t0);
        for r in rel.iter().skip(1) {
            let mut t = r[1].atan2(r[0]);
            while t <= *theta.last().unwrap() {
                t += TAU;
            }
            theta.push(t);
        }
        theta.push(t0 + TAU);
        assert!(
            theta[n - 1] < t0 + TAU,
            "polygon is not star-shaped about its centre"
        );
        let mut phi = Vec::with_capacity(n);
        let mut dist = Vec::with_capacity(n);
        let mut tan0 = Vec::with_capacity(n);
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0.0);
        for j in 0..n {
            let a = rel[j];
            let b = rel[(j + 1) % n];
            let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
            let len = ex.hypot(ey);
            let (nx, ny) = (ey / len, -ex / len);
            let d = nx * a[0] + ny * a[1];
            assert!(d > 0.0, "centre not interior");
            let f = ny.atan2(nx);
            phi.push(f);
            dist.push(d);
            let ta = (theta[j] - f).tan();
            let tb = (theta[j + 1] - f).tan();
            tan0.push(ta);
            prefix.push(prefix[j] + 0.5 * d * d * (tb - ta));
        }
        let area = prefix[n];
        let d_min = dist.iter().cloned().fold(f64::INFINITY, f64::min);
        let r_max = rel.iter().map(|r| r[0].hypot(r[1])).fold(0.0, f64::max);
        StarPolygon {
            center,
            vertices,
            phi,
            dist,
            theta,
            tan0,
            prefix,
            area,
            d_min,
            r_max,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edge_for_angle(&self, t: f64) -> (usize, f64) {
        let t0 = self.theta[0];
        let mut t = t;
        while t < t0 {
            t += TAU;
        }
        while t >= t0 + TAU {
            t -= TAU;
        }
        let n = self.len();
        // largest j with theta[j] <= t
        let j = match self.theta[..n].binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(j) => j,
            Err(j) => j - 1,
        };
        (j, t)
    }

    /// `(lambda, s)` of a point; `lambda = 0` at the centre.
    pub fn coords(&self, p: [f64; 2]) -> (f64, f64) {
        let (dx, dy) = (p[0] - self.center[0], p[1] - self.center[1]);
        if dx == 0.0 && dy == 0.0 {
            return (0.0, 0.0);
        }
        let (j, t) = self.edge_for_angle(dy.atan2(dx));
        let (c, s) = (self.phi[j].cos(), self.phi[j].sin());
        let lambda = (c * dx + s * dy) / self.dist[j];
        let d = self.dist[j];
        let sector = 0.5 * d * d * ((t - self.phi[j]).tan() - self.tan0[j]);
        let frac = ((self.prefix[j] + sector) / self.area).clamp(0.0, 1.0);
        (lambda, if frac >= 1.0 { 0.0 } else { frac })
    }

    /// Inverse of `coords`.
    pub fn point(&self, lambda: f64, s: f64) -> [f64; 2] {
        let n = self.len();
        let target = s.rem_euclid(1.0) * self.area;
        let j = match self.prefix[..n].binary_search_by(|x| x.partial_cmp(&target).unwrap()) {
            Ok(j) => j,
            Err(j) => j - 1,
        };
        let d = self.dist[j];
        let tan = self.tan0[j] + 2.0 * (target - self.prefix[j]) / (d * d);
        let t = self.phi[j] + tan.atan();
        let r = lambda * d / (t - self.phi[j]).cos();
        [self.center[0] + r * t.cos(), self.center[1] + r * t.sin()]
    }

    /// Level as the gauge function `max_j n_j.(p - c) / d_j`.
    pub fn level(&self, p: [f64; 2]) -> f64 {
        let (dx, dy) = (p[0] - self.center[0], p[1] - self.center[1]);
        (0..self.len())
            .map(|j| (self.phi[j].cos() * dx + self.phi[j].sin() * dy) / self.dist[j])
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.level(p) < 1.0
    }

    /// Speed of the point at level `lambda` when `s` moves at unit rate.
    pub fn unit_speed_bound(&self, lambda: f64) -> f64 {
        2.0 * lambda * self.area / self.d_min
    }
}

/// Regular `n`-gon with inradius `inradius` about `center`, vertices at
/// angles `(j + 1/2) 2 pi / n`.
pub fn regular_polygon(center: [f64; 2], inradius: f64, n: usize) -> Vec<[f64; 2]> {
    let rc = inradius / (PI / n as f64).cos();
    (0..n)
        .map(|j| {
            let a = (j as f64 + 0.5) * TAU / n as f64;
            [center[0] + rc * a.cos(), center[1] + rc * a.sin()]
        })
        .collect()
}

/// Clips a convex CCW polygon to the half-plane `sign * x < c`.
pub fn clip_x(poly: &[[f64; 2]], c: f64, sign: f64) -> Vec<[f64; 2]> {
    let inside = |p: &[f64; 2]| sign * p[0] <= sign * c;
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        match (inside(&a), inside(&b)) {
            (true, true) => out.push(b),
            (true, false) | (false, true) => {
                let t = (c - a[0]) / (b[0] - a[0]);
                let q = [c, a[1] + t * (b[1] - a[1])];
                out.push(q);
                if inside(&b) {
                    out.push(b);
                }
            }
            (false, false) => {}
        }
    }
    out.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);
    out
}

/// Smooth monotone cut-off: 1 for `x <= 0`, 0 for `x >= 1`.
pub fn bump(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x >= 1.0 {
        0.0
    } else {
        1.0 - x * x * (3.0 - 2.0 * x)
    }
}

/// Shoelace area of a polygon.
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> StarPolygon {
        StarPolygon::new(
            vec![[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]],
            [0.2, 0.1],
        )
    }

    #[test]
    fn area_matches_shoelace() {
        let p = square();
        assert!((p.area - 4.0).abs() < 1e-12);
        let hex = regular_polygon([0.3, -0.2], 0.5, 6);
        let sp = StarPolygon::new(hex.clone(), [0.3, -0.2]);
        assert!((sp.area - polygon_area(&hex)).abs() < 1e-12);
    }

    #[test]
    fn coords_roundtrip() {
        let p = square();
        for q in [
            [0.5, 0.5],
            [-0.9, 0.3],
            [0.0, -0.95],
            [1.5, 0.2],
            [0.2, 0.1001],
        ] {
            let (l, s) = p.coords(q);
            let r = p.point(l, s);
            assert!(
                (r[0] - q[0]).abs() < 1e-12 && (r[1] - q[1]).abs() < 1e-12,
                "{q:?} -> {r:?}"
            );
            assert!((l - p.level(q)).abs() < 1e-12);
        }
    }

    #[test]
    fn fraction_is_area_share() {
        // quarter of the square seen from its own centre
        let p = StarPolygon::new(
            vec![[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]],
            [0.0, 0.0],
        );
        let (_, s0) = p.coords([0.5, -0.5]);
        let (_, s1) = p.coords([0.5, 0.5]);
        assert!(((s1 - s0) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn clipping() {
        let sq = vec![[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]];
        let c = clip_x(&sq, 0.5, 1.0);
        assert!((polygon_area(&c) - 3.0).abs() < 1e-12);
        let c = clip_x(&sq, -0.5, -1.0);
        assert!((polygon_area(&c) - 3.0).abs() < 1e-12);
    }
}
