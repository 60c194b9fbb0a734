use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{conjugate_in_group, embed_p3, free_reduce, BraidWord, B3};
use crate::cochain::WordSampler;
use crate::conventions::Conventions;
use crate::error::Result;
use crate::integrator::sample_configuration;
use crate::rho::{classify_type, p_group, predicted_gamma, RegionSpec, RhoModel, TypeSignature};
use crate::trajectory::{Configuration, Extractor, Surface};

/// Fixed words checked on every surface, in the generator names of the
/// surface's quotient group.
pub fn base_alphas(surface: Surface) -> Vec<String> {
    match surface {
        Surface::Disc => ["a", "b", "z", "a b", "a b^-1", "a b a^-1 b^-1"]
            .map(String::from)
            .to_vec(),
        s => {
            let n = p_group(s).generator_names();
            let (a, b) = (&n[0], &n[1]);
            vec![
                a.clone(),
                b.clone(),
                format!("{a} {b}"),
                format!("{a} {b}^-1"),
                format!("{a} {b} {a}^-1 {b}^-1"),
            ]
        }
    }
}

/// Fixed words followed by `random` sampled words of length at most `max_len`.
pub fn alpha_set(surface: Surface, random: usize, max_len: usize, seed: u64) -> Vec<BraidWord> {
    let g = p_group(surface);
    let mut out: Vec<BraidWord> = base_alphas(surface)
        .iter()
        .map(|w| BraidWord::parse(&g, w).unwrap())
        .collect();
    let mut sampler = WordSampler::new(g, max_len.max(1), seed);
    out.extend((0..random).map(|_| sampler.sample()));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseCheck {
    pub signature: TypeSignature,
    pub alpha: String,
    pub checks: usize,
    pub passed: usize,
    pub predicted: String,
    pub conjugacy_only: bool,
    /// First extracted word, or the first mismatching one.
    pub extracted_example: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseTableReport {
    pub epsilon: f64,
    pub reachable_types: Vec<TypeSignature>,
    pub unreached_types: Vec<TypeSignature>,
    pub draws: usize,
    pub checks: Vec<CaseCheck>,
    pub total_checks: usize,
    pub total_passed: usize,
}

impl CaseTableReport {
    pub fn all_passed(&self) -> bool {
        self.total_checks > 0 && self.total_checks == self.total_passed
    }
}

/// Draws uniform configurations until every good type has `per_type`
/// representatives or `max_draws` is exhausted.
pub fn configurations_by_type(
    spec: &RegionSpec,
    per_type: usize,
    max_draws: usize,
    seed: u64,
) -> (BTreeMap<TypeSignature, Vec<Configuration>>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = TypeSignature::all_good(spec.strands(), spec.u_areas().len());
    let mut found: BTreeMap<TypeSignature, Vec<Configuration>> = BTreeMap::new();
    let mut draws = 0;
    while draws < max_draws {
        let full = all
            .iter()
            .all(|t| found.get(t).is_some_and(|v| v.len() >= per_type));
        if full {
            break;
        }
        draws += 1;
        let x = sample_configuration(
            spec.surface,
            spec.strands(),
            &mut rng,
            crate::conventions::DEFAULT_DELTA_SEP,
        );
        let t = classify_type(&x, spec);
        if t.good {
            let v = found.entry(t).or_default();
            if v.len() < per_type {
                v.push(x);
            }
        }
    }
    (found, draws)
}

/// Numeric case-table check on the disc: the extracted braid of the model
/// flow for each `alpha` must be conjugate in `B3` to the predicted one.
pub fn verify_disc(
    spec: &RegionSpec,
    alphas: &[BraidWord],
    per_type: usize,
    seed: u64,
    conventions: Conventions,
) -> Result<CaseTableReport> {
    let (found, draws) = configurations_by_type(spec, per_type, 2_000_000, seed);
    let model = RhoModel::new(spec);
    let ex = Extractor::with_conventions(conventions);
    let z = spec.base_configuration();
    let mut checks = Vec::new();
    for (t, xs) in &found {
        for alpha in alphas {
            let iso = model.isotopy(alpha)?;
            let pred = predicted_gamma(alpha, t, Surface::Disc)?;
            let target = embed_p3(&pred.word)?;
            let mut passed = 0;
            let mut example: Option<String> = None;
            let mut mismatch: Option<String> = None;
            for x in xs {
                let g = ex.gamma(&iso, x, &z)?;
                if conjugate_in_group(&g, &target, &B3)? {
                    passed += 1;
                } else if mismatch.is_none() {
                    mismatch = Some(g.to_string());
                }
                example.get_or_insert_with(|| g.to_string());
            }
            let example = mismatch.or(example);
            checks.push(CaseCheck {
                signature: t.clone(),
                alpha: alpha.to_string(),
                checks: xs.len(),
                passed,
                predicted: target.to_string(),
                conjugacy_only: pred.conjugacy_only,
                extracted_example: example.unwrap_or_default(),
            });
        }
    }
    Ok(finish(spec, found.keys().cloned().collect(), draws, checks))
}

fn finish(
    spec: &RegionSpec,
    reachable: Vec<TypeSignature>,
    draws: usize,
    checks: Vec<CaseCheck>,
) -> CaseTableReport {
    let unreached = TypeSignature::all_good(spec.strands(), spec.u_areas().len())
        .into_iter()
        .filter(|t| !reachable.contains(t))
        .collect();
    CaseTableReport {
        epsilon: spec.epsilon,
        reachable_types: reachable,
        unreached_types: unreached,
        draws,
        total_checks: checks.iter().map(|c| c.checks).sum(),
        total_passed: checks.iter().map(|c| c.passed).sum(),
        checks,
    }
}

/// Symbolic check on the sphere and torus: for every good type the table
/// must be multiplicative, `pred(alpha beta) = pred(alpha) pred(beta)` after
/// free reduction, over all ordered pairs of `alphas`.
pub fn verify_symbolic(spec: &RegionSpec, alphas: &[BraidWord]) -> Result<CaseTableReport> {
    let surface = spec.surface;
    let types = TypeSignature::all_good(spec.strands(), spec.u_areas().len());
    let mut checks = Vec::new();
    for t in &types {
        for a in alphas {
            let mut passed = 0;
            let mut example = String::new();
            for b in alphas {
                let ab = predicted_gamma(&a.mul(b)?, t, surface)?.word;
                let prod = predicted_gamma(a, t, surface)?
                    .word
                    .mul(&predicted_gamma(b, t, surface)?.word)?;
                if free_reduce(&ab) == free_reduce(&prod) {
                    passed += 1;
                } else if example.is_empty() {
                    example = format!("{ab} vs {prod}");
                }
            }
            checks.push(CaseCheck {
                signature: t.clone(),
                alpha: a.to_string(),
                checks: alphas.len(),
                passed,
                predicted: predicted_gamma(a, t, surface)?.word.to_string(),
                conjugacy_only: true,
                extracted_example: example,
            });
        }
    }
    Ok(finish(spec, types, 0, checks))
}

/// Runs the check that fits the surface.
pub fn verify_case_table(
    spec: &RegionSpec,
    alphas: &[BraidWord],
    per_type: usize,
    seed: u64,
    conventions: Conventions,
) -> Result<CaseTableReport> {
    match spec.surface {
        Surface::Disc => verify_disc(spec, alphas, per_type, seed, conventions),
        _ => verify_symbolic(spec, alphas),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::build_regions;

    #[test]
    fn small_disc_run_passes() {
        let spec = build_regions(Surface::Disc, 0.3).unwrap();
        let alphas = alpha_set(Surface::Disc, 2, 6, 1);
        let r = verify_disc(&spec, &alphas, 3, 5, Conventions::default()).unwrap();
        assert!(r.all_passed(), "{}/{}", r.total_passed, r.total_checks);
        assert_eq!(r.reachable_types.len(), 10);
    }

    #[test]
    fn mirrored_convention_fails() {
        let spec = build_regions(Surface::Disc, 0.3).unwrap();
        let alphas = alpha_set(Surface::Disc, 0, 6, 1);
        let r = verify_disc(&spec, &alphas, 2, 5, Conventions { crossing_sign: -1 }).unwrap();
        assert!(!r.all_passed());
    }

    #[test]
    fn symbolic_tables_are_multiplicative() {
        for s in [Surface::Sphere, Surface::Torus] {
            let spec = build_regions(s, 0.2).unwrap();
            let r = verify_symbolic(&spec, &alpha_set(s, 4, 6, 3)).unwrap();
            assert!(r.all_passed(), "{s}");
        }
    }
}
