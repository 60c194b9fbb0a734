use serde::{Deserialize, Serialize};

use super::estimate::{mc_gamma_hat, EstimateOptions, EstimateReport};
use super::lambda::lambda_at;
use crate::braid::BraidWord;
use crate::cochain::CochainHandle;
use crate::error::{Error, Result};
use crate::rho::build_regions;
use crate::trajectory::Surface;

/// Distance to the limit at one epsilon, with its budget. This bounds one
/// cochain representative, not the class norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub lambda_eps: f64,
    pub target: f64,
    pub mean: f64,
    pub distance: f64,
    pub budget: f64,
    pub within_budget: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub surface: Surface,
    /// `c(elements)` evaluated directly on the words.
    pub c_elements: f64,
    pub points: Vec<SweepPoint>,
    pub reports: Vec<EstimateReport>,
    pub all_within_budget: bool,
    /// `d` at the smallest epsilon is below `d` at the largest.
    pub limit_improves: bool,
    pub monotone: bool,
}

/// One estimate per epsilon (decreasing) and the distances
/// `d = |mean - Lambda_eps c(elements)|` against
/// `B = (1 - (1-eps)^m) M + 3 stderr`.
pub fn epsilon_sweep(
    c: &CochainHandle,
    elements: &[BraidWord],
    surface: Surface,
    eps_list: &[f64],
    opts: &EstimateOptions,
) -> Result<SweepReport> {
    if eps_list.is_empty() {
        return Err(Error::InvalidConfig("empty epsilon list".into()));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidConfig(
            "epsilon list must be strictly decreasing".into(),
        ));
    }
    let specs = eps_list
        .iter()
        .map(|&e| build_regions(surface, e))
        .collect::<Result<Vec<_>>>()?;
    let c_elements = c.eval(elements)?;
    let mut points = Vec::new();
    let mut reports = Vec::new();
    for spec in &specs {
        let r = mc_gamma_hat(c, elements, spec, opts)?;
        let lambda_eps = lambda_at(surface, spec.epsilon)?;
        let target = lambda_eps * c_elements;
        let distance = (r.mean - target).abs();
        let budget = r.expected_bad_fraction * r.bad_max_abs + 3.0 * r.standard_error;
        points.push(SweepPoint {
            epsilon: spec.epsilon,
            lambda_eps,
            target,
            mean: r.mean,
            distance,
            budget,
            within_budget: distance <= budget + 1e-12,
        });
        reports.push(r);
    }
    let all_within_budget = points.iter().all(|p| p.within_budget);
    let first = points.first().map(|p| p.distance).unwrap_or(0.0);
    let last = points.last().map(|p| p.distance).unwrap_or(0.0);
    let limit_improves = points.len() < 2 || last < first || (first == 0.0 && last == 0.0);
    let monotone = points.windows(2).all(|w| w[1].distance <= w[0].distance);
    Ok(SweepReport {
        surface,
        c_elements,
        points,
        reports,
        all_within_budget,
        limit_improves,
        monotone,
    })
}
