//! Sampled tethered loops, their piecewise-linear braid, and CSV dumps with
//! columns `strand,t,x,y`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::extract::{linear_segment, tether_distance, Extractor, Tracker};
use super::isotopy::Isotopy;
use super::surface::{Configuration, Surface, SurfacePoint};
use crate::braid::BraidWord;
use crate::conventions::Conventions;
use crate::error::{Error, Result};

/// Per-strand samples on a shared, strictly increasing time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    strands: Vec<Vec<SurfacePoint>>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, strands: Vec<Vec<SurfacePoint>>) -> Result<Trajectory> {
        if times.len() < 2 || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTrajectory(
                "time grid must be strictly increasing with at least two samples".into(),
            ));
        }
        if strands.iter().any(|s| s.len() != times.len()) {
            return Err(Error::InvalidTrajectory(
                "every strand needs one sample per time".into(),
            ));
        }
        Ok(Trajectory { times, strands })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn strands(&self) -> &[Vec<SurfacePoint>] {
        &self.strands
    }

    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    fn planar_at(&self, k: usize) -> Result<Vec<[f64; 2]>> {
        self.strands
            .iter()
            .map(|s| match s[k] {
                SurfacePoint::Disc(p) => Ok(p),
                p => Err(Error::UnsupportedSurface(format!(
                    "braid extraction needs disc samples, got {}",
                    p.surface()
                ))),
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for (i, s) in self.strands.iter().enumerate() {
            for (t, p) in self.times.iter().zip(s) {
                let [x, y] = match p {
                    SurfacePoint::Sphere(_) => {
                        return Err(Error::UnsupportedSurface(
                            "sphere samples have no planar dump".into(),
                        ))
                    }
                    p => p.xy(),
                };
                out.serialize(Row {
                    strand: i,
                    t: *t,
                    x,
                    y,
                })?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a disc trajectory; rows may come in any order.
    pub fn read_csv<R: Read>(r: R) -> Result<Trajectory> {
        let mut rows: Vec<Row> = Vec::new();
        for rec in csv::Reader::from_reader(r).deserialize() {
            rows.push(rec?);
        }
        let m = rows.iter().map(|r| r.strand + 1).max().unwrap_or(0);
        rows.sort_by(|a, b| a.strand.cmp(&b.strand).then(a.t.total_cmp(&b.t)));
        let mut strands: Vec<Vec<SurfacePoint>> = vec![Vec::new(); m];
        let mut grids: Vec<Vec<f64>> = vec![Vec::new(); m];
        for r in rows {
            strands[r.strand].push(SurfacePoint::disc(r.x, r.y)?);
            grids[r.strand].push(r.t);
        }
        let times = grids.first().cloned().unwrap_or_default();
        if grids.iter().any(|g| *g != times) {
            return Err(Error::InvalidTrajectory(
                "strands do not share a time grid".into(),
            ));
        }
        Trajectory::new(times, strands)
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    strand: usize,
    t: f64,
    x: f64,
    y: f64,
}

/// Samples the tethered loop: `z -> x` on `[0,1/3]`, the isotopy on
/// `[1/3,2/3]` with `steps` samples, `g(x) -> z` on `[2/3,1]`.
pub fn tethered_loop(
    iso: &Isotopy,
    x: &Configuration,
    z: &Configuration,
    steps: usize,
) -> Result<Trajectory> {
    if x.len() != z.len() || x.surface() != z.surface() {
        return Err(Error::InvalidConfig(
            "configuration and base differ in size or surface".into(),
        ));
    }
    let steps = steps.max(1);
    let mut times = vec![0.0];
    let mut strands: Vec<Vec<SurfacePoint>> = z.points.iter().map(|p| vec![*p]).collect();
    for k in 0..=steps {
        let s = k as f64 / steps as f64;
        times.push((1.0 + s) / 3.0);
        for (i, p) in x.points.iter().enumerate() {
            strands[i].push(iso.apply(s, p));
        }
    }
    times.push(1.0);
    for (i, p) in z.points.iter().enumerate() {
        strands[i].push(*p);
    }
    if x.surface() == Some(Surface::Disc) {
        let ex = Extractor::default();
        let first: Vec<[f64; 2]> = z.points.iter().map(|p| p.xy()).collect();
        let gx: Vec<[f64; 2]> = strands.iter().map(|s| s[steps + 1].xy()).collect();
        let xs: Vec<[f64; 2]> = x.points.iter().map(|p| p.xy()).collect();
        for (a, b) in [(&first, &xs), (&gx, &first)] {
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    let d = tether_distance(a[i], b[i], a[j], b[j]);
                    if d <= ex.delta_sep {
                        return Err(Error::DegenerateTether { i, j, distance: d });
                    }
                }
            }
        }
    }
    Trajectory::new(times, strands)
}

/// Braid of the piecewise-linear interpolation of a disc trajectory, freely
/// reduced.
pub fn extract_braid(traj: &Trajectory, conv: Conventions) -> Result<BraidWord> {
    let mut prev = traj.planar_at(0)?;
    let mut tr = Tracker::new(&prev, conv)?;
    for k in 1..traj.times.len() {
        let next = traj.planar_at(k)?;
        linear_segment(&mut tr, &prev, &next)?;
        prev = next;
    }
    Ok(tr.into_word())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::trajectory::{gamma, RigidRotation};

    fn conf(p: &[[f64; 2]]) -> Configuration {
        Configuration::from_disc(p).unwrap()
    }

    #[test]
    fn constant_trajectory_is_empty() {
        let z = conf(&[[-0.5, 0.1], [0.5, 0.2]]);
        let t = tethered_loop(&Isotopy::identity(), &z, &z, 8).unwrap();
        assert!(t.strands().iter().all(|s| s.iter().all(|p| *p == s[0])));
        assert!(extract_braid(&t, Conventions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn sampled_rotation_matches_certified() {
        let iso = Isotopy::from_flow(Arc::new(RigidRotation {
            center: [0.0, 0.0],
            radius: 0.9,
            turns: 1.0,
        }));
        let z = conf(&[[-0.5, 0.0], [0.02, 0.1], [0.45, -0.1]]);
        let x = conf(&[[-0.2, 0.3], [0.1, -0.25], [0.3, 0.2]]);
        let t = tethered_loop(&iso, &x, &z, 1 << 10).unwrap();
        assert_eq!(t.times().first(), Some(&0.0));
        assert_eq!(t.times().last(), Some(&1.0));
        let pl = extract_braid(&t, Conventions::default()).unwrap();
        assert_eq!(pl, gamma(&iso, &x, &z).unwrap());
    }

    #[test]
    fn csv_roundtrip() {
        let iso = Isotopy::from_flow(Arc::new(RigidRotation {
            center: [0.0, 0.0],
            radius: 0.9,
            turns: 0.5,
        }));
        let x = conf(&[[-0.3, 0.01], [0.3, -0.01]]);
        let z = conf(&[[-0.5, 0.5], [0.5, 0.5]]);
        let t = tethered_loop(&iso, &x, &z, 16).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("strand,t,x,y\n"));
        let back = Trajectory::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_bad_grid() {
        let p = SurfacePoint::Disc([0.0, 0.0]);
        assert!(Trajectory::new(vec![0.0, 0.0], vec![vec![p, p]]).is_err());
        assert!(Trajectory::new(vec![0.0, 1.0], vec![vec![p]]).is_err());
    }
}
