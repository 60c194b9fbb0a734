use std::fmt;
use std::sync::Arc;

use super::surface::{Configuration, SurfacePoint};

/// A one-parameter family of surface maps with `apply(0, p) = p`.
pub trait Flow: Send + Sync {
    fn apply(&self, t: f64, p: &SurfacePoint) -> SurfacePoint;

    /// Bound on the planar speed `|d/dt apply(t, p)|` over `t in [0,1]`,
    /// used for certified crossing detection. `None` if unknown.
    fn speed_bound(&self, _p: &SurfacePoint) -> Option<f64> {
        None
    }

    fn describe(&self) -> String;
}

/// Monotone reparametrization of `[0,1]` fixing both endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Reparam {
    /// `s^k`, `k >= 1`.
    Power(f64),
    /// `3 s^2 - 2 s^3`.
    Smoothstep,
    /// `1 - (1 - s)^k`, `k >= 1`.
    ReversePower(f64),
}

impl Reparam {
    pub fn eval(self, s: f64) -> f64 {
        match self {
            Reparam::Power(k) => s.powf(k),
            Reparam::Smoothstep => s * s * (3.0 - 2.0 * s),
            Reparam::ReversePower(k) => 1.0 - (1.0 - s).powf(k),
        }
    }

    /// Upper bound on the derivative.
    pub fn max_slope(self) -> f64 {
        match self {
            Reparam::Power(k) | Reparam::ReversePower(k) => k.max(1.0),
            Reparam::Smoothstep => 1.5,
        }
    }
}

/// One flow run over its own unit time interval, possibly reparametrized.
#[derive(Clone)]
pub struct Piece {
    pub flow: Arc<dyn Flow>,
    pub reparams: Vec<Reparam>,
}

impl Piece {
    pub fn local_time(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        if s >= 1.0 {
            return 1.0;
        }
        self.reparams.iter().fold(s, |t, r| r.eval(t))
    }

    pub fn slope(&self) -> f64 {
        self.reparams.iter().map(|r| r.max_slope()).product()
    }

    pub fn apply(&self, s: f64, p: &SurfacePoint) -> SurfacePoint {
        self.flow.apply(self.local_time(s), p)
    }

    pub fn speed_bound(&self, p: &SurfacePoint) -> Option<f64> {
        self.flow.speed_bound(p).map(|v| v * self.slope())
    }
}

/// Concatenation of flow pieces; piece `k` of `K` runs on `[k/K, (k+1)/K]`.
/// The empty isotopy is the identity.
#[derive(Clone, Default)]
pub struct Isotopy {
    pieces: Vec<Piece>,
    label: Option<String>,
}

impl fmt::Debug for Isotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isotopy({})", self.describe())
    }
}

impl Isotopy {
    pub fn identity() -> Isotopy {
        Isotopy::default()
    }

    pub fn from_flow(flow: Arc<dyn Flow>) -> Isotopy {
        Isotopy {
            pieces: vec![Piece {
                flow,
                reparams: Vec::new(),
            }],
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Isotopy {
        self.label = Some(label.into());
        self
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Isotopy) -> Isotopy {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Isotopy {
            pieces,
            label: None,
        }
    }

    /// Same path, traversed with each piece's clock replaced by `r`.
    pub fn reparametrize(&self, r: Reparam) -> Isotopy {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.reparams.insert(0, r);
                q
            })
            .collect();
        Isotopy {
            pieces,
            label: self.label.clone(),
        }
    }

    pub fn apply(&self, t: f64, p: &SurfacePoint) -> SurfacePoint {
        let k = self.pieces.len();
        if k == 0 {
            return *p;
        }
        let t = t.clamp(0.0, 1.0);
        let pos = t * k as f64;
        let j = (pos.floor() as usize).min(k - 1);
        let mut q = *p;
        for piece in &self.pieces[..j] {
            q = piece.apply(1.0, &q);
        }
        self.pieces[j].apply(pos - j as f64, &q)
    }

    /// The time-one map on a configuration.
    pub fn end_map(&self, x: &Configuration) -> Configuration {
        let points = x
            .points
            .iter()
            .map(|p| self.pieces.iter().fold(*p, |q, piece| piece.apply(1.0, &q)))
            .collect();
        Configuration { points }
    }

    pub fn describe(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        if self.pieces.is_empty() {
            return "identity".into();
        }
        self.pieces
            .iter()
            .map(|p| p.flow.describe())
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

/// Rigid rotation by `2 pi t * turns` of the disc of radius `radius` about
/// `center`, identity outside. Not smooth at the rim; used for tests.
pub struct RigidRotation {
    pub center: [f64; 2],
    pub radius: f64,
    pub turns: f64,
}

impl Flow for RigidRotation {
    fn apply(&self, t: f64, p: &SurfacePoint) -> SurfacePoint {
        let [x, y] = p.xy();
        let (dx, dy) = (x - self.center[0], y - self.center[1]);
        if dx.hypot(dy) >= self.radius {
            return *p;
        }
        let (s, c) = (std::f64::consts::TAU * self.turns * t).sin_cos();
        SurfacePoint::Disc([
            self.center[0] + c * dx - s * dy,
            self.center[1] + s * dx + c * dy,
        ])
    }

    fn speed_bound(&self, p: &SurfacePoint) -> Option<f64> {
        let [x, y] = p.xy();
        let r = (x - self.center[0]).hypot(y - self.center[1]);
        Some(if r >= self.radius {
            0.0
        } else {
            std::f64::consts::TAU * self.turns.abs() * r
        })
    }

    fn describe(&self) -> String {
        format!(
            "rigid rotation {} turns about {:?} r={}",
            self.turns, self.center, self.radius
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_zero_and_composition() {
        let rot: Arc<dyn Flow> = Arc::new(RigidRotation {
            center: [0.0, 0.0],
            radius: 0.9,
            turns: 0.25,
        });
        let iso = Isotopy::from_flow(rot.clone()).then(&Isotopy::from_flow(rot));
        let p = SurfacePoint::Disc([0.5, 0.0]);
        assert_eq!(iso.apply(0.0, &p), p);
        let q = iso.apply(1.0, &p).xy();
        assert!((q[0] + 0.5).abs() < 1e-12 && q[1].abs() < 1e-12);
        let h = iso.apply(0.5, &p).xy();
        assert!(h[0].abs() < 1e-12 && (h[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reparam_endpoints() {
        for r in [
            Reparam::Power(2.0),
            Reparam::Smoothstep,
            Reparam::ReversePower(3.0),
        ] {
            assert_eq!(r.eval(0.0), 0.0);
            assert_eq!(r.eval(1.0), 1.0);
        }
    }
}
