use rand::Rng;
use rand_distr::StandardNormal;

use crate::trajectory::{Configuration, Surface, SurfacePoint};

/// One point, uniform for the normalized area form.
pub fn sample_point<R: Rng + ?Sized>(surface: Surface, rng: &mut R) -> SurfacePoint {
    match surface {
        Surface::Disc => loop {
            let x = rng.random_range(-1.0..1.0);
            let y = rng.random_range(-1.0..1.0);
            if x * x + y * y <= 1.0 {
                return SurfacePoint::Disc([x, y]);
            }
        },
        Surface::Torus => SurfacePoint::torus(rng.random(), rng.random()),
        Surface::Sphere => loop {
            let v: [f64; 3] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            if let Ok(p) = SurfacePoint::sphere(v) {
                return p;
            }
        },
    }
}

/// `m` i.i.d. uniform points, redrawn until pairwise farther than `delta_sep`.
pub fn sample_configuration<R: Rng + ?Sized>(
    surface: Surface,
    m: usize,
    rng: &mut R,
    delta_sep: f64,
) -> Configuration {
    loop {
        let points: Vec<SurfacePoint> = (0..m).map(|_| sample_point(surface, rng)).collect();
        let x = Configuration { points };
        if m < 2 || x.min_separation() > delta_sep {
            return x;
        }
    }
}
