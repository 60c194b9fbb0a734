//! Explicit region geometry for each surface.
//!
//! Disc: inside the disc of radius `R_o` the three regions are the vertical
//! bands `x < -b1`, `|x| < b2`, `x > b1`. `W12` is a regular polygon whose
//! inscribed circle clears `D(R_o)`, cut by the line `x = w` between the
//! middle and right bands; `V12` is a slightly scaled copy. `W23`, `V23` are
//! mirror images. The sphere reuses the same layout in an equal-area chart
//! centred at the north pole, with `U4` a cap around the south pole. The
//! torus uses two L1 discs inside bulged perpendicular annuli.

use std::f64::consts::PI;

use serde::Serialize;

use super::geometry::{clip_x, regular_polygon, StarPolygon};
use crate::error::{Error, Result};
use crate::trajectory::{Configuration, Surface, SurfacePoint};

pub const MAX_EPSILON: f64 = 0.999;
pub const MAX_SIDES: usize = 1 << 14;

/// Normalized area `(1/pi) |{|x| < b} cap D(r)|`.
pub fn strip_area(r: f64, b: f64) -> f64 {
    let b = b.clamp(0.0, r);
    (2.0 / PI) * (b * (r * r - b * b).max(0.0).sqrt() + r * r * (b / r).asin())
}

fn solve_strip(r: f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if strip_area(r, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Three-band layout inside the disc of radius `outer`.
#[derive(Clone, Debug, Serialize)]
pub struct BandLayout {
    pub outer: f64,
    pub r_o: f64,
    pub b1: f64,
    pub b2: f64,
    pub w_clip: f64,
    pub sides: usize,
    pub v_scale: f64,
    pub u_area: f64,
    pub base: [[f64; 2]; 3],
    pub w12: StarPolygon,
    pub w23: StarPolygon,
}

fn sides_needed(outer: f64, r_o: f64) -> Option<usize> {
    let m = outer - r_o;
    let r_w = r_o + m / 3.0;
    let mut n = 8;
    while n <= MAX_SIDES {
        if r_w * (1.0 / (PI / n as f64).cos() - 1.0) < m / 6.0 {
            return Some(n);
        }
        n *= 2;
    }
    None
}

impl BandLayout {
    /// `u_area` per band and `bad_inside` of uncovered area, normalized.
    fn build(outer: f64, u_area: f64, bad_inside: f64) -> Option<BandLayout> {
        let r_o = (outer * outer - bad_inside / 2.0).sqrt();
        let b2 = solve_strip(r_o, u_area);
        let b1 = solve_strip(r_o, r_o * r_o - 2.0 * u_area);
        let sides = sides_needed(outer, r_o)?;
        let m = outer - r_o;
        let g = b1 - b2;
        if !(g > 0.0 && m > 0.0) {
            return None;
        }
        let r_w = r_o + m / 3.0;
        let w = b2 + g / 3.0;
        let c = [(w - r_w) / 2.0, 0.0];
        let poly = clip_x(&regular_polygon([0.0, 0.0], r_w, sides), w, 1.0);
        let w12 = StarPolygon::new(poly, c);
        let r_c = w12
            .vertices
            .iter()
            .map(|v| v[0].hypot(v[1]))
            .fold(0.0, f64::max);
        // |c + k (p - c)| <= k |p| + (k - 1) |c| stays below r_o + 2m/3
        let k_r = (r_o + 2.0 * m / 3.0 + c[0].abs()) / (r_c + c[0].abs());
        let k_x = (b1 - g / 3.0 - c[0]) / (w - c[0]);
        let v_scale = k_r.min(k_x);
        if v_scale <= 1.0 {
            return None;
        }
        let mirror: Vec<[f64; 2]> = w12.vertices.iter().rev().map(|p| [-p[0], p[1]]).collect();
        let w23 = StarPolygon::new(mirror, [-c[0], 0.0]);
        let zx = (b1 + r_o) / 2.0;
        Some(BandLayout {
            outer,
            r_o,
            b1,
            b2,
            w_clip: w,
            sides,
            v_scale,
            u_area,
            base: [[-zx, 0.0], [0.0, 0.0], [zx, 0.0]],
            w12,
            w23,
        })
    }

    pub fn region_of(&self, p: [f64; 2]) -> Option<usize> {
        if p[0] * p[0] + p[1] * p[1] >= self.r_o * self.r_o {
            return None;
        }
        if p[0] < -self.b1 {
            Some(0)
        } else if p[0].abs() < self.b2 {
            Some(1)
        } else if p[0] > self.b1 {
            Some(2)
        } else {
            None
        }
    }

    /// Closed-form normalized areas of the three bands.
    pub fn band_areas(&self) -> [f64; 3] {
        let side = (self.r_o * self.r_o - strip_area(self.r_o, self.b1)) / 2.0;
        [side, strip_area(self.r_o, self.b2), side]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereLayout {
    /// `U4` is `|Q| > rho4` in the chart.
    pub rho4: f64,
    pub band: BandLayout,
}

/// Lambert azimuthal equal-area chart at the north pole, scaled to the unit
/// disc; normalized sphere area equals normalized disc area.
pub fn sphere_chart(p: [f64; 3]) -> [f64; 2] {
    let s = (2.0 / (1.0 + p[2]).max(0.0)).sqrt() / 2.0;
    if !s.is_finite() {
        return [1.0, 0.0];
    }
    [p[0] * s, p[1] * s]
}

pub fn sphere_chart_inv(q: [f64; 2]) -> [f64; 3] {
    let (x, y) = (2.0 * q[0], 2.0 * q[1]);
    let r2 = x * x + y * y;
    let f = (1.0 - r2 / 4.0).max(0.0).sqrt();
    [x * f, y * f, 1.0 - r2 / 2.0]
}

/// Torus layout in `[0,1)^2`. `U1`: `|u-1/2| + |v-1/2| < d`; `U2`: the same
/// around the corner. `W_a = {|u - 1/2| < h(v)}`, `V_a` uses `k h`; `W_b`,
/// `V_b` swap `u` and `v`.
#[derive(Clone, Debug, Serialize)]
pub struct TorusLayout {
    pub d: f64,
    pub gap: f64,
    pub v_scale: f64,
    pub profile: Profile,
    pub base: [[f64; 2]; 2],
}

/// Periodic piecewise-linear width `h(v) = max(d + g/4 - |v - 1/2|, g/8)`
/// with its normalized primitive.
#[derive(Clone, Debug, Serialize)]
pub struct Profile {
    knots: [f64; 5],
    values: [f64; 5],
    cumulative: [f64; 5],
    pub total: f64,
}

impl Profile {
    fn new(d: f64, g: f64) -> Profile {
        let ds = d + g / 8.0;
        let knots = [0.0, 0.5 - ds, 0.5, 0.5 + ds, 1.0];
        let values = [g / 8.0, g / 8.0, d + g / 4.0, g / 8.0, g / 8.0];
        let mut cumulative = [0.0; 5];
        for i in 0..4 {
            cumulative[i + 1] =
                cumulative[i] + 0.5 * (values[i] + values[i + 1]) * (knots[i + 1] - knots[i]);
        }
        Profile {
            knots,
            values,
            cumulative,
            total: cumulative[4],
        }
    }

    fn segment(&self, v: f64) -> usize {
        (0..4).rev().find(|&i| v >= self.knots[i]).unwrap_or(0)
    }

    pub fn h(&self, v: f64) -> f64 {
        let i = self.segment(v);
        let (k0, k1) = (self.knots[i], self.knots[i + 1]);
        let t = if k1 > k0 { (v - k0) / (k1 - k0) } else { 0.0 };
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    /// `int_0^v h`.
    pub fn primitive(&self, v: f64) -> f64 {
        let i = self.segment(v);
        let x = v - self.knots[i];
        let slope = self.slope(i);
        self.cumulative[i] + self.values[i] * x + 0.5 * slope * x * x
    }

    fn slope(&self, i: usize) -> f64 {
        let w = self.knots[i + 1] - self.knots[i];
        if w > 0.0 {
            (self.values[i + 1] - self.values[i]) / w
        } else {
            0.0
        }
    }

    /// Inverse of `primitive` on `[0, total]`.
    pub fn primitive_inv(&self, target: f64) -> f64 {
        let target = target.clamp(0.0, self.total);
        let i = (0..4)
            .rev()
            .find(|&i| target >= self.cumulative[i])
            .unwrap_or(0);
        let r = target - self.cumulative[i];
        let (h0, m) = (self.values[i], self.slope(i));
        let disc = (h0 * h0 + 2.0 * m * r).max(0.0);
        let x = 2.0 * r / (h0 + disc.sqrt());
        (self.knots[i] + x).min(1.0)
    }
}

#[derive(Clone, Debug)]
pub enum Geometry {
    Disc(BandLayout),
    Sphere(SphereLayout),
    Torus(TorusLayout),
}

/// Regions `U_i`, `W_*`, `V_*` for one surface and one `epsilon`.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub surface: Surface,
    pub epsilon: f64,
    pub geometry: Geometry,
}

fn disc_layout(eps: f64) -> Option<BandLayout> {
    BandLayout::build(1.0, (1.0 - eps) / 3.0, eps)
}

fn sphere_layout(eps: f64) -> Option<SphereLayout> {
    let rho4 = (1.0 - (1.0 - eps) / 4.0).sqrt();
    let outer = (rho4 * rho4 - eps / 4.0).sqrt();
    let band = BandLayout::build(outer, (1.0 - eps) / 4.0, 3.0 * eps / 4.0)?;
    Some(SphereLayout { rho4, band })
}

fn torus_layout(eps: f64) -> Option<TorusLayout> {
    let d = ((1.0 - eps) / 4.0).sqrt();
    let gap = 1.0 - 2.0 * d;
    if gap <= 0.0 {
        return None;
    }
    let v_scale = 1.0 + (gap / 8.0) / (d + gap / 4.0);
    Some(TorusLayout {
        d,
        gap,
        v_scale,
        profile: Profile::new(d, gap),
        base: [[0.5, 0.5], [0.0, 0.0]],
    })
}

fn feasible(surface: Surface, eps: f64) -> bool {
    match surface {
        Surface::Disc => disc_layout(eps).is_some(),
        Surface::Sphere => sphere_layout(eps).is_some(),
        Surface::Torus => torus_layout(eps).is_some(),
    }
}

/// Smallest feasible epsilon, found by bisection.
pub fn min_feasible_epsilon(surface: Surface) -> f64 {
    if feasible(surface, 1e-12) {
        return 1e-12;
    }
    let (mut lo, mut hi) = (1e-12, MAX_EPSILON);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if feasible(surface, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn build_regions(surface: Surface, epsilon: f64) -> Result<RegionSpec> {
    let infeasible = || Error::InfeasibleEpsilon {
        epsilon,
        lower: min_feasible_epsilon(surface),
        upper: MAX_EPSILON,
    };
    if !(epsilon > 0.0 && epsilon <= MAX_EPSILON) {
        return Err(infeasible());
    }
    let geometry = match surface {
        Surface::Disc => Geometry::Disc(disc_layout(epsilon).ok_or_else(infeasible)?),
        Surface::Sphere => Geometry::Sphere(sphere_layout(epsilon).ok_or_else(infeasible)?),
        Surface::Torus => Geometry::Torus(torus_layout(epsilon).ok_or_else(infeasible)?),
    };
    Ok(RegionSpec {
        surface,
        epsilon,
        geometry,
    })
}

impl RegionSpec {
    pub fn strands(&self) -> usize {
        self.surface.model_strands()
    }

    /// Index of the `U` region containing `p`, if any.
    pub fn region_of(&self, p: &SurfacePoint) -> Option<usize> {
        match (&self.geometry, p) {
            (Geometry::Disc(b), SurfacePoint::Disc(q)) => b.region_of(*q),
            (Geometry::Sphere(s), SurfacePoint::Sphere(q)) => {
                let c = sphere_chart(*q);
                if q[2] <= -1.0 || c[0] * c[0] + c[1] * c[1] > s.rho4 * s.rho4 {
                    Some(3)
                } else {
                    s.band.region_of(c)
                }
            }
            (Geometry::Torus(t), SurfacePoint::Torus(q)) => {
                let (du, dv) = ((q[0] - 0.5).abs(), (q[1] - 0.5).abs());
                if du + dv < t.d {
                    Some(0)
                } else if (0.5 - du) + (0.5 - dv) < t.d {
                    Some(1)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Closed-form normalized areas of the `U` regions.
    pub fn u_areas(&self) -> Vec<f64> {
        match &self.geometry {
            Geometry::Disc(b) => b.band_areas().to_vec(),
            Geometry::Sphere(s) => {
                let mut a = s.band.band_areas().to_vec();
                a.push(1.0 - s.rho4 * s.rho4);
                a
            }
            Geometry::Torus(t) => vec![2.0 * t.d * t.d; 2],
        }
    }

    pub fn base_configuration(&self) -> Configuration {
        let points = match &self.geometry {
            Geometry::Disc(b) => b.base.iter().map(|p| SurfacePoint::Disc(*p)).collect(),
            Geometry::Sphere(s) => {
                let mut v: Vec<SurfacePoint> = s
                    .band
                    .base
                    .iter()
                    .map(|p| SurfacePoint::Sphere(sphere_chart_inv(*p)))
                    .collect();
                v.push(SurfacePoint::Sphere([0.0, 0.0, -1.0]));
                v
            }
            Geometry::Torus(t) => t.base.iter().map(|p| SurfacePoint::Torus(*p)).collect(),
        };
        Configuration { points }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let areas = self.u_areas();
        let names: Vec<String> = (1..=areas.len()).map(|i| format!("U{i}")).collect();
        let base: Vec<SurfacePoint> = self.base_configuration().points;
        let geometry = match &self.geometry {
            Geometry::Disc(b) => serde_json::json!({ "disc": b }),
            Geometry::Sphere(s) => {
                serde_json::json!({ "sphere_chart": "lambert_north_pole_half", "sphere": s })
            }
            Geometry::Torus(t) => serde_json::json!({ "torus": t }),
        };
        serde_json::json!({
            "surface": self.surface,
            "epsilon": self.epsilon,
            "u_regions": names,
            "u_areas": areas,
            "u_total_area": areas.iter().sum::<f64>(),
            "base_points": base,
            "geometry": geometry,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_areas() {
        for eps in [0.5, 0.3, 0.2, 0.1, 0.05, 0.01, 0.999] {
            let r = build_regions(Surface::Disc, eps).unwrap();
            for a in r.u_areas() {
                assert!((a - (1.0 - eps) / 3.0).abs() < 1e-12, "eps={eps} area={a}");
            }
        }
        let r = build_regions(Surface::Disc, 0.1).unwrap();
        assert!((r.u_areas()[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn sphere_and_torus_areas() {
        for eps in [0.5, 0.1, 0.05, 0.999] {
            let s = build_regions(Surface::Sphere, eps).unwrap();
            for a in s.u_areas() {
                assert!((a - (1.0 - eps) / 4.0).abs() < 1e-12);
            }
            let t = build_regions(Surface::Torus, eps).unwrap();
            for a in t.u_areas() {
                assert!((a - (1.0 - eps) / 2.0).abs() < 1e-12);
            }
        }
        let t = build_regions(Surface::Torus, 0.1).unwrap();
        assert!((t.u_areas()[0] - 0.45).abs() < 1e-12);
    }

    #[test]
    fn infeasible() {
        for eps in [0.9999, 0.0, -1.0, 1.0] {
            assert!(matches!(
                build_regions(Surface::Disc, eps),
                Err(Error::InfeasibleEpsilon { .. })
            ));
        }
        assert!(min_feasible_epsilon(Surface::Disc) < 0.01);
    }

    #[test]
    fn base_points_in_their_regions() {
        for s in [Surface::Disc, Surface::Sphere, Surface::Torus] {
            for eps in [0.5, 0.05] {
                let r = build_regions(s, eps).unwrap();
                for (i, p) in r.base_configuration().points.iter().enumerate() {
                    assert_eq!(r.region_of(p), Some(i), "{s} {eps}");
                }
            }
        }
    }

    #[test]
    fn chart_roundtrip() {
        for q in [[0.1, 0.2], [-0.7, 0.3], [0.0, 0.0], [0.6, -0.79]] {
            let p = sphere_chart_inv(q);
            assert!(((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 1.0).abs() < 1e-12);
            let r = sphere_chart(p);
            assert!((r[0] - q[0]).abs() < 1e-12 && (r[1] - q[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn profile_inverse() {
        let t = torus_layout(0.1).unwrap();
        for v in [0.0, 0.1, 0.3, 0.5, 0.77, 0.99] {
            let z = t.profile.primitive(v);
            assert!((t.profile.primitive_inv(z) - v).abs() < 1e-12);
        }
        assert!((t.profile.h(0.5) - (t.d + t.gap / 4.0)).abs() < 1e-15);
    }
}
