use serde::{Deserialize, Serialize};

use crate::rho::build_regions;
use crate::trajectory::Surface;

/// `m! * prod area(U_i)` in the limit of vanishing bad set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaConstant {
    pub surface: Surface,
    pub value: f64,
    pub strands: usize,
    pub areas: Vec<f64>,
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

/// Limit constant under the equal-area layout.
pub fn lambda_constant(surface: Surface) -> LambdaConstant {
    let m = surface.model_strands();
    let areas = vec![1.0 / m as f64; m];
    let value = factorial(m) * areas.iter().product::<f64>();
    LambdaConstant {
        surface,
        value,
        strands: m,
        areas,
    }
}

/// `m! * prod area(U_i^eps)` for the layout actually built at `epsilon`.
pub fn lambda_at(surface: Surface, epsilon: f64) -> crate::Result<f64> {
    let spec = build_regions(surface, epsilon)?;
    Ok(factorial(spec.strands()) * spec.u_areas().iter().product::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_constants() {
        assert!((lambda_constant(Surface::Disc).value - 2.0 / 9.0).abs() < 1e-15);
        assert!((lambda_constant(Surface::Sphere).value - 3.0 / 32.0).abs() < 1e-15);
        assert!((lambda_constant(Surface::Torus).value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn finite_epsilon_matches_closed_form() {
        for eps in [0.5, 0.2, 0.05] {
            let d = lambda_at(Surface::Disc, eps).unwrap();
            assert!((d - 6.0 * ((1.0 - eps) / 3.0f64).powi(3)).abs() < 1e-12);
            let s = lambda_at(Surface::Sphere, eps).unwrap();
            assert!((s - 24.0 * ((1.0 - eps) / 4.0f64).powi(4)).abs() < 1e-12);
            let t = lambda_at(Surface::Torus, eps).unwrap();
            assert!((t - 2.0 * ((1.0 - eps) / 2.0f64).powi(2)).abs() < 1e-12);
        }
    }
}
