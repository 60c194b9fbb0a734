use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Disc,
    Sphere,
    Torus,
}

impl Surface {
    /// Number of marked points in the model for this surface.
    pub fn model_strands(self) -> usize {
        match self {
            Surface::Disc => 3,
            Surface::Sphere => 4,
            Surface::Torus => 2,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Disc => "disc",
            Surface::Sphere => "sphere",
            Surface::Torus => "torus",
        })
    }
}

impl std::str::FromStr for Surface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Surface> {
        match s.to_ascii_lowercase().as_str() {
            "disc" | "disk" | "d2" => Ok(Surface::Disc),
            "sphere" | "s2" => Ok(Surface::Sphere),
            "torus" | "t2" => Ok(Surface::Torus),
            _ => Err(Error::InvalidConfig(format!("unknown surface `{s}`"))),
        }
    }
}

/// A point of the unit disc, the unit sphere, or the flat torus `[0,1)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SurfacePoint {
    Disc([f64; 2]),
    Sphere([f64; 3]),
    Torus([f64; 2]),
}

const DISC_TOL: f64 = 1e-12;

fn wrap(u: f64) -> f64 {
    let w = u - u.floor();
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

impl SurfacePoint {
    pub fn disc(x: f64, y: f64) -> Result<SurfacePoint> {
        if !(x.is_finite() && y.is_finite()) || x * x + y * y > 1.0 + DISC_TOL {
            return Err(Error::InvalidConfig(format!(
                "({x}, {y}) is outside the unit disc"
            )));
        }
        Ok(SurfacePoint::Disc([x, y]))
    }

    /// Normalizes a nonzero 3-vector onto the sphere.
    pub fn sphere(v: [f64; 3]) -> Result<SurfacePoint> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidConfig(format!("{v:?} has no direction")));
        }
        Ok(SurfacePoint::Sphere([v[0] / n, v[1] / n, v[2] / n]))
    }

    /// Reduces into the fundamental domain `[0,1)^2`.
    pub fn torus(u: f64, v: f64) -> SurfacePoint {
        SurfacePoint::Torus([wrap(u), wrap(v)])
    }

    pub fn surface(&self) -> Surface {
        match self {
            SurfacePoint::Disc(_) => Surface::Disc,
            SurfacePoint::Sphere(_) => Surface::Sphere,
            SurfacePoint::Torus(_) => Surface::Torus,
        }
    }

    /// Planar coordinates of a disc or torus point.
    pub fn xy(&self) -> [f64; 2] {
        match *self {
            SurfacePoint::Disc(p) | SurfacePoint::Torus(p) => p,
            SurfacePoint::Sphere(p) => [p[0], p[1]],
        }
    }

    /// Euclidean distance on the disc, chordal on the sphere, flat wrapped
    /// distance on the torus.
    pub fn distance(&self, other: &SurfacePoint) -> f64 {
        match (self, other) {
            (SurfacePoint::Disc(a), SurfacePoint::Disc(b)) => (a[0] - b[0]).hypot(a[1] - b[1]),
            (SurfacePoint::Sphere(a), SurfacePoint::Sphere(b)) => {
                ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
            }
            (SurfacePoint::Torus(a), SurfacePoint::Torus(b)) => {
                let d = |x: f64, y: f64| {
                    let t = (x - y).abs();
                    t.min(1.0 - t)
                };
                d(a[0], b[0]).hypot(d(a[1], b[1]))
            }
            _ => f64::NAN,
        }
    }
}

/// Ordered tuple of pairwise separated points on one surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub points: Vec<SurfacePoint>,
}

impl Configuration {
    /// Fails if the points are on different surfaces or two of them are
    /// within `delta_sep`.
    pub fn new(points: Vec<SurfacePoint>, delta_sep: f64) -> Result<Configuration> {
        let c = Configuration { points };
        if let Some(p) = c.points.first() {
            let s = p.surface();
            if c.points.iter().any(|q| q.surface() != s) {
                return Err(Error::InvalidConfig("points on different surfaces".into()));
            }
        }
        let d = c.min_separation();
        if d <= delta_sep {
            return Err(Error::InvalidConfig(format!(
                "points within {d:e} of each other"
            )));
        }
        Ok(c)
    }

    pub fn from_disc(points: &[[f64; 2]]) -> Result<Configuration> {
        let pts = points
            .iter()
            .map(|p| SurfacePoint::disc(p[0], p[1]))
            .collect::<Result<_>>()?;
        Configuration::new(pts, crate::conventions::DEFAULT_DELTA_SEP)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn surface(&self) -> Option<Surface> {
        self.points.first().map(|p| p.surface())
    }

    pub fn min_separation(&self) -> f64 {
        let mut d = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                d = d.min(self.points[i].distance(&self.points[j]));
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domains() {
        assert!(SurfacePoint::disc(0.6, 0.8).is_ok());
        assert!(SurfacePoint::disc(0.9, 0.9).is_err());
        let s = SurfacePoint::sphere([0.0, 0.0, 2.0]).unwrap();
        assert_eq!(s, SurfacePoint::Sphere([0.0, 0.0, 1.0]));
        assert_eq!(
            SurfacePoint::torus(1.25, -0.25),
            SurfacePoint::Torus([0.25, 0.75])
        );
        assert_eq!(SurfacePoint::torus(-1e-20, 0.0).xy()[0], 0.0);
    }

    #[test]
    fn torus_distance_wraps() {
        let a = SurfacePoint::torus(0.05, 0.5);
        let b = SurfacePoint::torus(0.95, 0.5);
        assert!((a.distance(&b) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn separation() {
        assert!(Configuration::from_disc(&[[0.0, 0.0], [0.0, 0.0]]).is_err());
        assert!(Configuration::from_disc(&[[0.0, 0.0], [0.1, 0.0]]).is_ok());
    }
}
