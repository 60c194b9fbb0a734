//! Braid words from tethered loops on the disc.
//!
//! Strands are ranked by x-coordinate and every adjacent swap emits one
//! letter. Tethers are straight segments, so their swaps are solved exactly.
//! Flow pieces with a speed bound are certified by bisection: a pair whose
//! x-gap cannot close within an interval is skipped, and a lone uncertified
//! pair with a fixed y-order contributes one letter iff its x-order flipped.
//! Flows without a bound are sampled on a grid and treated piecewise linearly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::isotopy::{Isotopy, Piece};
use super::surface::{Configuration, Surface, SurfacePoint};
use crate::braid::{free_reduce, is_pure, BraidWord, GroupId, Letter};
use crate::conventions::{Conventions, DEFAULT_DELTA_SEP};
use crate::error::{Error, Result};

const MIN_INTERVAL: f64 = 1e-12;
const EVENT_TIE: f64 = 1e-14;

/// Extraction settings.
#[derive(Clone, Copy, Debug)]
pub struct Extractor {
    pub conventions: Conventions,
    pub delta_sep: f64,
    pub max_retries: usize,
    /// Grid used for flows that report no speed bound.
    pub fallback_steps: usize,
}

impl Default for Extractor {
    fn default() -> Self {
        Extractor {
            conventions: Conventions::default(),
            delta_sep: DEFAULT_DELTA_SEP,
            max_retries: 8,
            fallback_steps: 1 << 10,
        }
    }
}

/// Running x-rank order and the letters emitted so far.
pub(crate) struct Tracker {
    order: Vec<usize>,
    letters: Vec<Letter>,
    sign: i8,
}

impl Tracker {
    pub(crate) fn new(points: &[[f64; 2]], conv: Conventions) -> Result<Tracker> {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
        for w in order.windows(2) {
            if points[w[0]][0] == points[w[1]][0] {
                return Err(Error::GenericPositionFailure(format!(
                    "strands {} and {} share x",
                    w[0], w[1]
                )));
            }
        }
        Ok(Tracker {
            order,
            letters: Vec::new(),
            sign: conv.crossing_sign,
        })
    }

    fn rank(&self, strand: usize) -> usize {
        self.order
            .iter()
            .position(|&s| s == strand)
            .expect("strand tracked")
    }

    /// Swap of strands `i`, `j`; `dy` is `y_i - y_j` at the swap.
    fn swap(&mut self, i: usize, j: usize, dy: f64) -> Result<()> {
        let (ri, rj) = (self.rank(i), self.rank(j));
        if ri.abs_diff(rj) != 1 {
            return Err(Error::GenericPositionFailure(format!(
                "strands {i} and {j} swap at non-adjacent ranks"
            )));
        }
        let r = ri.min(rj);
        // the strand at rank r is the one moving right
        let dy_right_minus_left = if self.order[r] == i { dy } else { -dy };
        let positive = (dy_right_minus_left < 0.0) == (self.sign > 0);
        self.letters.push(if positive {
            Letter::pos(r as u8)
        } else {
            Letter::neg(r as u8)
        });
        self.order.swap(r, r + 1);
        Ok(())
    }

    pub(crate) fn into_word(self) -> BraidWord {
        let m = self.order.len() as u8;
        free_reduce(&BraidWord::from_letters_unchecked(
            GroupId::Braid(m),
            self.letters,
        ))
    }
}

/// Exact swaps of straight-line motions `a -> b`.
pub(crate) fn linear_segment(tr: &mut Tracker, a: &[[f64; 2]], b: &[[f64; 2]]) -> Result<()> {
    let m = a.len();
    let mut events: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let d0 = a[i][0] - a[j][0];
            let d1 = b[i][0] - b[j][0];
            if d0 == 0.0 || d1 == 0.0 {
                return Err(Error::GenericPositionFailure(format!(
                    "strands {i} and {j} share x at a sample"
                )));
            }
            if (d0 > 0.0) != (d1 > 0.0) {
                events.push((d0 / (d0 - d1), i, j));
            }
        }
    }
    events.sort_by(|p, q| p.0.total_cmp(&q.0));
    for w in events.windows(2) {
        if w[1].0 - w[0].0 < EVENT_TIE {
            return Err(Error::GenericPositionFailure("simultaneous swaps".into()));
        }
    }
    for (s, i, j) in events {
        let yi = a[i][1] + s * (b[i][1] - a[i][1]);
        let yj = a[j][1] + s * (b[j][1] - a[j][1]);
        let dy = yi - yj;
        if dy.abs() < EVENT_TIE {
            return Err(Error::GenericPositionFailure(format!(
                "strands {i} and {j} meet"
            )));
        }
        tr.swap(i, j, dy)?;
    }
    Ok(())
}

/// Closest approach of two straight tethers run at the same speed.
pub(crate) fn tether_distance(a0: [f64; 2], a1: [f64; 2], b0: [f64; 2], b1: [f64; 2]) -> f64 {
    let r0 = [a0[0] - b0[0], a0[1] - b0[1]];
    let v = [(a1[0] - b1[0]) - r0[0], (a1[1] - b1[1]) - r0[1]];
    let vv = v[0] * v[0] + v[1] * v[1];
    let s = if vv > 0.0 {
        (-(r0[0] * v[0] + r0[1] * v[1]) / vv).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (r0[0] + s * v[0]).hypot(r0[1] + s * v[1])
}

fn check_tethers(from: &[[f64; 2]], to: &[[f64; 2]], delta_sep: f64) -> Result<()> {
    for i in 0..from.len() {
        for j in i + 1..from.len() {
            let distance = tether_distance(from[i], to[i], from[j], to[j]);
            if distance <= delta_sep {
                return Err(Error::DegenerateTether { i, j, distance });
            }
        }
    }
    Ok(())
}

fn planar(x: &Configuration) -> Result<Vec<[f64; 2]>> {
    x.points
        .iter()
        .map(|p| match p {
            SurfacePoint::Disc(q) => Ok(*q),
            other => Err(Error::UnsupportedSurface(format!(
                "braid extraction needs disc points, got {}",
                other.surface()
            ))),
        })
        .collect()
}

/// Word of the tether `z -> x`, checked for collisions.
fn tether_word(z: &[[f64; 2]], x: &[[f64; 2]], ex: &Extractor) -> Result<BraidWord> {
    check_tethers(z, x, ex.delta_sep)?;
    let mut tr = Tracker::new(z, ex.conventions)?;
    linear_segment(&mut tr, z, x)?;
    Ok(tr.into_word())
}

struct Certifier<'a> {
    piece: &'a Piece,
    start: &'a [SurfacePoint],
    speed: Vec<f64>,
}

impl Certifier<'_> {
    fn at(&self, s: f64) -> Vec<[f64; 2]> {
        self.start
            .iter()
            .map(|p| self.piece.apply(s, p).xy())
            .collect()
    }

    fn refine(
        &self,
        tr: &mut Tracker,
        t0: f64,
        p0: &[[f64; 2]],
        t1: f64,
        p1: &[[f64; 2]],
    ) -> Result<()> {
        let h = t1 - t0;
        let m = p0.len();
        let mut open = None;
        let mut n_open = 0;
        for i in 0..m {
            for j in i + 1..m {
                let d0 = p0[i][0] - p0[j][0];
                let d1 = p1[i][0] - p1[j][0];
                if d0 == 0.0 || d1 == 0.0 {
                    return Err(Error::GenericPositionFailure(format!(
                        "strands {i} and {j} share x"
                    )));
                }
                let reach = (self.speed[i] + self.speed[j]) * h;
                if (d0 > 0.0) != (d1 > 0.0) || d0.abs() + d1.abs() <= reach {
                    n_open += 1;
                    open = Some((i, j, reach));
                }
            }
        }
        if n_open == 0 {
            return Ok(());
        }
        if n_open == 1 {
            let (i, j, reach) = open.unwrap();
            let e0 = p0[i][1] - p0[j][1];
            let e1 = p1[i][1] - p1[j][1];
            if (e0 > 0.0) == (e1 > 0.0) && e0 != 0.0 && e0.abs() + e1.abs() > reach {
                let flipped = (p0[i][0] > p0[j][0]) != (p1[i][0] > p1[j][0]);
                if flipped {
                    tr.swap(i, j, e0)?;
                }
                return Ok(());
            }
        }
        if h < MIN_INTERVAL {
            return Err(Error::GenericPositionFailure(format!(
                "unresolved swaps near t = {t0}"
            )));
        }
        let tm = 0.5 * (t0 + t1);
        let pm = self.at(tm);
        self.refine(tr, t0, p0, tm, &pm)?;
        self.refine(tr, tm, &pm, t1, p1)
    }
}

/// Runs one flow piece from `start`, feeding swaps to `tr`; returns the end
/// positions.
fn run_piece(
    tr: &mut Tracker,
    piece: &Piece,
    start: &[SurfacePoint],
    ex: &Extractor,
) -> Result<Vec<SurfacePoint>> {
    let end: Vec<SurfacePoint> = start.iter().map(|p| piece.apply(1.0, p)).collect();
    let speed: Option<Vec<f64>> = start.iter().map(|p| piece.speed_bound(p)).collect();
    let p0: Vec<[f64; 2]> = start.iter().map(|p| p.xy()).collect();
    let p1: Vec<[f64; 2]> = end.iter().map(|p| p.xy()).collect();
    match speed {
        Some(speed) => {
            let c = Certifier {
                piece,
                start,
                speed,
            };
            c.refine(tr, 0.0, &p0, 1.0, &p1)?;
        }
        None => {
            let n = ex.fallback_steps.max(1);
            let mut prev = p0;
            for k in 1..=n {
                let next = if k == n {
                    p1.clone()
                } else {
                    start
                        .iter()
                        .map(|p| piece.apply(k as f64 / n as f64, p).xy())
                        .collect()
                };
                linear_segment(tr, &prev, &next)?;
                prev = next;
            }
        }
    }
    Ok(end)
}

/// Word traced by the isotopy itself, starting from `x`, together with the
/// end configuration. No tethers.
pub fn flow_word(
    iso: &Isotopy,
    x: &Configuration,
    ex: &Extractor,
) -> Result<(BraidWord, Configuration)> {
    let p = planar(x)?;
    let mut tr = Tracker::new(&p, ex.conventions)?;
    let mut cur = x.points.clone();
    for piece in iso.pieces() {
        cur = run_piece(&mut tr, piece, &cur, ex)?;
    }
    Ok((tr.into_word(), Configuration { points: cur }))
}

impl Extractor {
    pub fn with_conventions(conventions: Conventions) -> Extractor {
        Extractor {
            conventions,
            ..Extractor::default()
        }
    }

    /// One attempt at `gamma` without perturbation.
    pub fn gamma_once(
        &self,
        iso: &Isotopy,
        x: &Configuration,
        z: &Configuration,
    ) -> Result<BraidWord> {
        if x.len() != z.len() {
            return Err(Error::InvalidConfig(format!(
                "{} points against {} base points",
                x.len(),
                z.len()
            )));
        }
        let zp = planar(z)?;
        let xp = planar(x)?;
        let out = tether_word(&zp, &xp, self)?;
        let (mid, gx) = flow_word(iso, x, self)?;
        let back = tether_word(&zp, &planar(&gx)?, self)?.inverse();
        let w = free_reduce(&out.mul(&mid)?.mul(&back)?);
        if !is_pure(&w)? {
            return Err(Error::ImpureBraid(w.to_string()));
        }
        Ok(w)
    }

    /// `gamma(iso, x)` relative to the base `z`, perturbing `x` by less than
    /// `delta_sep / 10` and retrying on degenerate input.
    pub fn gamma(&self, iso: &Isotopy, x: &Configuration, z: &Configuration) -> Result<BraidWord> {
        let mut err = match self.gamma_once(iso, x, z) {
            Ok(w) => return Ok(w),
            Err(e @ (Error::GenericPositionFailure(_) | Error::DegenerateTether { .. })) => e,
            Err(e) => return Err(e),
        };
        for attempt in 1..=self.max_retries {
            let y = perturb(x, self.delta_sep / 10.0, attempt as u64);
            match self.gamma_once(iso, &y, z) {
                Ok(w) => return Ok(w),
                Err(e @ (Error::GenericPositionFailure(_) | Error::DegenerateTether { .. })) => {
                    err = e
                }
                Err(e) => return Err(e),
            }
        }
        match err {
            Error::GenericPositionFailure(msg) => Err(Error::GenericPositionFailure(format!(
                "{msg} after {} retries",
                self.max_retries
            ))),
            e => Err(e),
        }
    }
}

/// Deterministic offset of every point by less than `radius`.
pub fn perturb(x: &Configuration, radius: f64, attempt: u64) -> Configuration {
    let key = x.points.iter().fold(attempt, |h, p| {
        p.xy()
            .iter()
            .fold(h, |h, c| h.rotate_left(13) ^ c.to_bits())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    let points = x
        .points
        .iter()
        .map(|p| {
            let r = radius * rng.random::<f64>() * 0.999;
            let th = std::f64::consts::TAU * rng.random::<f64>();
            let [a, b] = p.xy();
            let (u, v) = (a + r * th.cos(), b + r * th.sin());
            match p.surface() {
                Surface::Disc => {
                    let n = u.hypot(v);
                    if n > 1.0 {
                        SurfacePoint::Disc([u / n, v / n])
                    } else {
                        SurfacePoint::Disc([u, v])
                    }
                }
                Surface::Torus => SurfacePoint::torus(u, v),
                Surface::Sphere => *p,
            }
        })
        .collect();
    Configuration { points }
}

/// `gamma` with default settings.
pub fn gamma(iso: &Isotopy, x: &Configuration, z: &Configuration) -> Result<BraidWord> {
    Extractor::default().gamma(iso, x, z)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::braid::{b3_equal, full_twist};
    use crate::trajectory::RigidRotation;

    fn conf(p: &[[f64; 2]]) -> Configuration {
        Configuration::from_disc(p).unwrap()
    }

    fn rotation(center: [f64; 2], radius: f64, turns: f64) -> Isotopy {
        Isotopy::from_flow(Arc::new(RigidRotation {
            center,
            radius,
            turns,
        }))
    }

    #[test]
    fn identity_isotopy_is_trivial() {
        let z = conf(&[[-0.5, 0.1], [0.0, -0.2], [0.5, 0.3]]);
        let x = conf(&[[0.3, 0.4], [-0.6, 0.05], [0.1, -0.7]]);
        assert!(gamma(&Isotopy::identity(), &z, &z).unwrap().is_empty());
        assert!(gamma(&Isotopy::identity(), &x, &z).unwrap().is_empty());
    }

    #[test]
    fn half_exchange_is_s1() {
        let x = conf(&[[-0.3, 0.01], [0.3, -0.01]]);
        let (w, _) = flow_word(&rotation([0.0, 0.0], 0.6, 0.5), &x, &Extractor::default()).unwrap();
        assert_eq!(w.to_string(), "s1");
        let (w, _) =
            flow_word(&rotation([0.0, 0.0], 0.6, -0.5), &x, &Extractor::default()).unwrap();
        assert_eq!(w.to_string(), "s1^-1");
    }

    #[test]
    fn full_turn_two_strands() {
        let x = conf(&[[-0.3, 0.01], [0.3, -0.02]]);
        let w = gamma(&rotation([0.0, 0.0], 0.6, 1.0), &x, &x).unwrap();
        assert_eq!(w.to_string(), "s1 s1");
        let mirror = Extractor::with_conventions(Conventions { crossing_sign: -1 });
        assert_eq!(
            mirror
                .gamma(&rotation([0.0, 0.0], 0.6, 1.0), &x, &x)
                .unwrap()
                .to_string(),
            "s1^-1 s1^-1"
        );
    }

    #[test]
    fn full_turn_three_strands_is_full_twist() {
        let z = conf(&[[-0.5, 0.0], [0.02, 0.1], [0.45, -0.1]]);
        let x = conf(&[[-0.2, 0.3], [0.1, -0.25], [0.3, 0.2]]);
        let w = gamma(&rotation([0.0, 0.0], 0.9, 1.0), &x, &z).unwrap();
        assert_eq!(w.exponent_sum(), 6);
        assert!(b3_equal(&w, &full_twist(3).unwrap()).unwrap());
    }

    #[test]
    fn points_outside_support_do_not_braid() {
        let x = conf(&[[-0.8, 0.0], [0.1, 0.05], [0.8, 0.1]]);
        let w = gamma(&rotation([0.0, 0.0], 0.5, 1.0), &x, &x).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn tether_collision_detected() {
        let z = conf(&[[-0.5, 0.0], [0.5, 0.0]]);
        let x = conf(&[[0.5, 0.0], [-0.5, 0.0]]);
        let ex = Extractor {
            max_retries: 0,
            ..Extractor::default()
        };
        assert!(matches!(
            ex.gamma(&Isotopy::identity(), &x, &z),
            Err(Error::DegenerateTether { .. })
        ));
    }

    #[test]
    fn tether_distance_closed_form() {
        assert!(
            (tether_distance([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]) - 1.0).abs() < 1e-15
        );
        assert!(tether_distance([-1.0, 0.0], [1.0, 0.0], [1.0, 0.0], [-1.0, 0.0]) < 1e-15);
        assert!(
            (tether_distance([0.0, 0.0], [0.0, 0.0], [3.0, 4.0], [3.0, 4.0]) - 5.0).abs() < 1e-15
        );
    }

    #[test]
    fn shared_x_is_retried() {
        let x = conf(&[[0.1, 0.3], [0.1, -0.3]]);
        let z = conf(&[[-0.3, 0.0], [0.4, 0.0]]);
        let w = gamma(&rotation([0.0, 0.0], 0.9, 1.0), &x, &z).unwrap();
        assert_eq!(w.exponent_sum(), 2);
    }
}
