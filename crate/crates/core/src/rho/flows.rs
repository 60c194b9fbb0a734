use std::sync::Arc;

use super::geometry::{bump, StarPolygon};
use super::layout::{sphere_chart, sphere_chart_inv, Geometry, Profile, RegionSpec};
use crate::braid::{free_reduce, BraidWord, GroupId};
use crate::error::{Error, Result};
use crate::trajectory::{Flow, Isotopy, Surface, SurfacePoint};

/// Turns the polygon once (in area-angle coordinates) at levels `<= 1` and
/// tapers to the identity at level `v_scale`.
pub struct StarRotation {
    pub poly: StarPolygon,
    pub v_scale: f64,
    pub dir: f64,
    pub name: String,
}

impl StarRotation {
    fn profile(&self, lambda: f64) -> f64 {
        bump((lambda - 1.0) / (self.v_scale - 1.0))
    }

    fn outside(&self, q: [f64; 2]) -> bool {
        let (dx, dy) = (q[0] - self.poly.center[0], q[1] - self.poly.center[1]);
        dx.hypot(dy) >= self.v_scale * self.poly.r_max
    }

    /// `None` when the point does not move.
    pub fn apply_xy(&self, t: f64, q: [f64; 2]) -> Option<[f64; 2]> {
        if t == 0.0 || self.outside(q) {
            return None;
        }
        let (lambda, s) = self.poly.coords(q);
        if lambda >= self.v_scale {
            return None;
        }
        let shift = self.dir * t * self.profile(lambda);
        if shift == shift.round() {
            return None;
        }
        Some(self.poly.point(lambda, s + shift))
    }

    pub fn speed_xy(&self, q: [f64; 2]) -> f64 {
        if self.outside(q) {
            return 0.0;
        }
        let (lambda, _) = self.poly.coords(q);
        if lambda >= self.v_scale {
            return 0.0;
        }
        // safety factor for rounding in the level computation
        1.000001 * self.poly.unit_speed_bound(lambda) * self.profile(lambda)
    }
}

impl Flow for StarRotation {
    fn apply(&self, t: f64, p: &SurfacePoint) -> SurfacePoint {
        match self.apply_xy(t, p.xy()) {
            Some(q) => SurfacePoint::Disc(q),
            None => *p,
        }
    }

    fn speed_bound(&self, p: &SurfacePoint) -> Option<f64> {
        Some(self.speed_xy(p.xy()))
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// A chart rotation transported to the sphere.
pub struct SphereRotation {
    pub inner: StarRotation,
}

impl Flow for SphereRotation {
    fn apply(&self, t: f64, p: &SurfacePoint) -> SurfacePoint {
        let SurfacePoint::Sphere(v) = p else {
            return *p;
        };
        if v[2] <= -1.0 {
            return *p;
        }
        match self.inner.apply_xy(t, sphere_chart(*v)) {
            Some(q) => SurfacePoint::Sphere(sphere_chart_inv(q)),
            None => *p,
        }
    }

    fn describe(&self) -> String {
        self.inner.name.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusAxis {
    /// Moves `v` along the meridian through `u = 1/2`.
    Meridian,
    /// Moves `u` along the longitude through `v = 1/2`.
    Longitude,
}

/// Area-preserving shear of a bulged annulus: straightened by
/// `(x, y) -> ((x - 1/2) a / h(y), H(y) / a)` and sheared by one full turn
/// inside `W`, tapering to the identity at `v_scale * h`.
pub struct TorusShear {
    pub profile: Profile,
    pub v_scale: f64,
    pub axis: TorusAxis,
    pub dir: f64,
    pub name: String,
}

impl TorusShear {
    fn shear(&self, t: f64, x: f64, y: f64) -> Option<(f64, f64)> {
        let hy = self.profile.h(y);
        let r = (x - 0.5) / hy;
        if r.abs() >= self.v_scale {
            return None;
        }
        let shift = self.dir * t * bump((r.abs() - 1.0) / (self.v_scale - 1.0));
        if shift == shift.round() {
            return None;
        }
        let a = self.profile.total;
        let yt = (self.profile.primitive(y) / a + shift).rem_euclid(1.0);
        let y2 = self.profile.primitive_inv(yt * a);
        Some((0.5 + r * self.profile.h(y2), y2))
    }
}

impl Flow for TorusShear {
    fn apply(&self, t: f64, p: &SurfacePoint) -> SurfacePoint {
        if t == 0.0 {
            return *p;
        }
        let [u, v] = p.xy();
        match self.axis {
            TorusAxis::Meridian => match self.shear(t, u, v) {
                Some((u2, v2)) => SurfacePoint::torus(u2, v2),
                None => *p,
            },
            TorusAxis::Longitude => match self.shear(t, v, u) {
                Some((v2, u2)) => SurfacePoint::torus(u2, v2),
                None => *p,
            },
        }
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// The generator flows of `rho_eps` for one region layout, built once.
#[derive(Clone)]
pub struct RhoModel {
    pub spec: RegionSpec,
    group: GroupId,
    names: Vec<&'static str>,
    supports: Vec<&'static str>,
    forward: Vec<Arc<dyn Flow>>,
    backward: Vec<Arc<dyn Flow>>,
}

/// A generator flow with its support region.
#[derive(Clone)]
pub struct ModelFlow {
    pub generator: String,
    pub iso: Isotopy,
    pub support: String,
}

pub fn p_group(surface: Surface) -> GroupId {
    match surface {
        Surface::Disc => GroupId::P3,
        Surface::Sphere => GroupId::SphereP4,
        Surface::Torus => GroupId::TorusP2,
    }
}

impl RhoModel {
    pub fn new(spec: &RegionSpec) -> RhoModel {
        let mut forward: Vec<Arc<dyn Flow>> = Vec::new();
        let mut backward: Vec<Arc<dyn Flow>> = Vec::new();
        let (names, supports) = match &spec.geometry {
            Geometry::Disc(b) | Geometry::Sphere(super::layout::SphereLayout { band: b, .. }) => {
                let sphere = spec.surface == Surface::Sphere;
                for (poly, label) in [(&b.w12, "W12"), (&b.w23, "W23")] {
                    for (dir, out) in [(1.0, &mut forward), (-1.0, &mut backward)] {
                        let rot = StarRotation {
                            poly: poly.clone(),
                            v_scale: b.v_scale,
                            dir,
                            name: format!("turn {label} by {dir}"),
                        };
                        let f: Arc<dyn Flow> = if sphere {
                            Arc::new(SphereRotation { inner: rot })
                        } else {
                            Arc::new(rot)
                        };
                        out.push(f);
                    }
                }
                if sphere {
                    (vec!["d1sq", "d2sq"], vec!["V12", "V23"])
                } else {
                    (vec!["a", "b"], vec!["V12", "V23"])
                }
            }
            Geometry::Torus(t) => {
                for (axis, label) in [(TorusAxis::Meridian, "W_a"), (TorusAxis::Longitude, "W_b")] {
                    for (dir, out) in [(1.0, &mut forward), (-1.0, &mut backward)] {
                        out.push(Arc::new(TorusShear {
                            profile: t.profile.clone(),
                            v_scale: t.v_scale,
                            axis,
                            dir,
                            name: format!("shear {label} by {dir}"),
                        }));
                    }
                }
                (vec!["a1", "b1"], vec!["V_a", "V_b"])
            }
        };
        RhoModel {
            spec: spec.clone(),
            group: p_group(spec.surface),
            names,
            supports,
            forward,
            backward,
        }
    }

    pub fn group(&self) -> &GroupId {
        &self.group
    }

    /// `rho_eps(generator)`; `z` on the disc is the identity.
    pub fn flow(&self, generator: &str) -> Result<ModelFlow> {
        if self.spec.surface == Surface::Disc && generator == "z" {
            return Ok(ModelFlow {
                generator: "z".into(),
                iso: Isotopy::identity(),
                support: "none".into(),
            });
        }
        let i = self
            .names
            .iter()
            .position(|n| *n == generator)
            .ok_or_else(|| Error::InvalidGenerator(generator.to_string()))?;
        Ok(ModelFlow {
            generator: generator.to_string(),
            iso: Isotopy::from_flow(self.forward[i].clone()),
            support: self.supports[i].to_string(),
        })
    }

    /// Isotopy realizing `rho_eps(alpha)`: one piece per letter of the
    /// reduced word, the central letter `z` contributing nothing.
    pub fn isotopy(&self, alpha: &BraidWord) -> Result<Isotopy> {
        if *alpha.group() != self.group {
            return Err(Error::GroupMismatch {
                expected: self.group.to_string(),
                found: alpha.group().to_string(),
            });
        }
        let mut iso = Isotopy::identity();
        for l in free_reduce(alpha).letters() {
            if l.gen as usize >= self.forward.len() {
                continue;
            }
            let f = if l.inv {
                &self.backward[l.gen as usize]
            } else {
                &self.forward[l.gen as usize]
            };
            iso = iso.then(&Isotopy::from_flow(f.clone()));
        }
        Ok(iso.with_label(format!("rho({alpha})")))
    }
}

/// `rho_eps(generator)` as a model flow.
pub fn rho_flow(spec: &RegionSpec, generator: &str) -> Result<ModelFlow> {
    RhoModel::new(spec).flow(generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::layout::build_regions;

    #[test]
    fn disc_flow_rotates_w12_and_fixes_u3() {
        let spec = build_regions(Surface::Disc, 0.2).unwrap();
        let model = RhoModel::new(&spec);
        let a = model.flow("a").unwrap();
        let base = spec.base_configuration();
        let z3 = base.points[2];
        for t in [0.1, 0.5, 0.9] {
            assert_eq!(a.iso.apply(t, &z3), z3);
        }
        let z1 = base.points[0];
        let half = a.iso.apply(0.5, &z1);
        assert!(half.distance(&z1) > 0.1);
        assert_eq!(a.iso.apply(1.0, &z1), z1);
        assert!(matches!(model.flow("q"), Err(Error::InvalidGenerator(_))));
        assert!(model.flow("z").unwrap().iso.is_identity());
    }

    #[test]
    fn torus_flow() {
        let spec = build_regions(Surface::Torus, 0.1).unwrap();
        let model = RhoModel::new(&spec);
        let a1 = model.flow("a1").unwrap();
        let base = spec.base_configuration();
        assert_eq!(a1.iso.apply(0.4, &base.points[1]), base.points[1]);
        let p = SurfacePoint::torus(0.55, 0.45);
        let q = a1.iso.apply(0.25, &p);
        assert!(q.distance(&p) > 0.1);
        let back = a1.iso.apply(1.0, &p);
        assert_eq!(back, p);
    }

    #[test]
    fn sphere_flow_fixes_south_cap() {
        let spec = build_regions(Surface::Sphere, 0.1).unwrap();
        let f = rho_flow(&spec, "d2sq").unwrap();
        let south = SurfacePoint::Sphere([0.0, 0.0, -1.0]);
        assert_eq!(f.iso.apply(0.3, &south), south);
        let base = spec.base_configuration();
        let moved = f.iso.apply(0.5, &base.points[2]);
        assert!(moved.distance(&base.points[2]) > 0.05);
    }
}
