use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::sample_configuration;
use crate::braid::{conjugate_in_group, embed_p3, pure_to_p3, BraidWord, B3};
use crate::cochain::CochainHandle;
use crate::conventions::{Conventions, DEFAULT_DELTA_SEP};
use crate::error::{Error, Result};
use crate::rho::{
    classify_type, nearest_type, p_group, predicted_gamma, RegionSpec, RhoModel, TypeSignature,
};
use crate::trajectory::{Configuration, Extractor, Isotopy, Surface};

/// Samples per RNG stream. Fixed so results do not depend on `workers`.
pub const BATCH: usize = 4096;
pub const MIN_SAMPLES: usize = 100;

/// Sampling controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateOptions {
    pub n_samples: usize,
    pub seed: u64,
    /// Fraction of good disc samples re-derived numerically and checked
    /// against the case table.
    pub audit_fraction: f64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub delta_sep: f64,
    /// Integrate the good set exactly (the integrand is constant on each
    /// type) and spend every sample on the bad set.
    #[serde(default)]
    pub stratified: bool,
    #[serde(skip, default)]
    pub conventions: Conventions,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            n_samples: 100_000,
            seed: 0,
            audit_fraction: 0.02,
            workers: 1,
            delta_sep: DEFAULT_DELTA_SEP,
            stratified: false,
            conventions: Conventions::default(),
        }
    }
}

/// One configuration type's share of the estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeBreakdown {
    pub signature: TypeSignature,
    pub count: usize,
    pub volume_fraction: f64,
    /// Sum of the integrand over samples of this type, divided by `n_samples`.
    pub partial_mean: f64,
    pub partial_stderr: f64,
}

/// Result of one Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub surface: Surface,
    pub stratified: bool,
    pub epsilon: f64,
    pub n_samples: usize,
    pub elements: Vec<String>,
    pub mean: f64,
    pub standard_error: f64,
    pub ci3: [f64; 2],
    pub per_type: Vec<TypeBreakdown>,
    pub bad_fraction: f64,
    pub expected_bad_fraction: f64,
    /// Largest `|c|` seen on bad samples.
    pub bad_max_abs: f64,
    /// Bad-set integral estimate. On the disc it is part of `mean`; on the
    /// sphere and torus it uses nearest-type braids and is excluded.
    pub bad_partial_mean: f64,
    pub bad_partial_stderr: f64,
    pub bad_in_mean: bool,
    pub audited: usize,
    /// Configurations drawn; exceeds `n_samples` only in stratified mode.
    pub draws: usize,
    pub seed: u64,
}

#[derive(Clone, Default)]
struct Moments {
    count: usize,
    sum: f64,
    sumsq: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.count += 1;
        self.sum += v;
        self.sumsq += v * v;
    }

    fn merge(&mut self, o: &Moments) {
        self.count += o.count;
        self.sum += o.sum;
        self.sumsq += o.sumsq;
    }

    /// Standard error of `sum / n` when the other `n - count` samples are 0.
    fn stderr_over(&self, n: usize) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let nf = n as f64;
        let mean = self.sum / nf;
        let var = ((self.sumsq - nf * mean * mean) / (nf - 1.0)).max(0.0);
        (var / nf).sqrt()
    }
}

#[derive(Clone, Default)]
struct Acc {
    total: Moments,
    types: BTreeMap<TypeSignature, Moments>,
    bad: Moments,
    bad_max_abs: f64,
    audited: usize,
    draws: usize,
}

impl Acc {
    fn merge(&mut self, o: &Acc) {
        self.total.merge(&o.total);
        for (k, v) in &o.types {
            self.types.entry(k.clone()).or_default().merge(v);
        }
        self.bad.merge(&o.bad);
        self.bad_max_abs = self.bad_max_abs.max(o.bad_max_abs);
        self.audited += o.audited;
        self.draws += o.draws;
    }
}

/// Shared read-only state of one run.
struct Run<'a> {
    c: &'a CochainHandle,
    spec: &'a RegionSpec,
    elements: &'a [BraidWord],
    isotopies: Vec<Isotopy>,
    base: Configuration,
    table: BTreeMap<Vec<usize>, (Vec<BraidWord>, f64)>,
    extractor: Extractor,
    opts: EstimateOptions,
}

impl Run<'_> {
    fn numeric(&self, x: &Configuration) -> Result<Vec<BraidWord>> {
        self.isotopies
            .iter()
            .map(|iso| self.extractor.gamma(iso, x, &self.base))
            .collect()
    }

    fn audit(&self, x: &Configuration, predicted: &[BraidWord]) -> Result<()> {
        for (g, p) in self.numeric(x)?.iter().zip(predicted) {
            let e = embed_p3(p)?;
            if !conjugate_in_group(g, &e, &B3)? {
                return Err(Error::AuditFailure(format!(
                    "extracted {g} is not conjugate to predicted {e}"
                )));
            }
        }
        Ok(())
    }

    fn batch(&self, k: usize) -> Result<Acc> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        rng.set_stream(k as u64);
        let n = BATCH.min(self.opts.n_samples - k * BATCH);
        let surface = self.spec.surface;
        let mut acc = Acc::default();
        let mut kept = 0;
        while kept < n {
            let x =
                sample_configuration(surface, self.spec.strands(), &mut rng, self.opts.delta_sep);
            let audit_draw: f64 = rng.random();
            acc.draws += 1;
            let t = classify_type(&x, self.spec);
            if t.good {
                let (words, v) = &self.table[&t.counts];
                if surface == Surface::Disc && audit_draw < self.opts.audit_fraction {
                    self.audit(&x, words)?;
                    acc.audited += 1;
                }
                if !self.opts.stratified {
                    acc.total.push(*v);
                    kept += 1;
                }
                acc.types.entry(t).or_default().push(*v);
            } else {
                let v = if surface == Surface::Disc {
                    let words = self
                        .numeric(&x)?
                        .iter()
                        .map(pure_to_p3)
                        .collect::<Result<Vec<_>>>()?;
                    self.c.eval(&words)?
                } else {
                    self.table[&nearest_type(&x, self.spec).counts].1
                };
                acc.bad.push(v);
                acc.bad_max_abs = acc.bad_max_abs.max(v.abs());
                acc.total
                    .push(if surface == Surface::Disc { v } else { 0.0 });
                kept += 1;
            }
        }
        Ok(acc)
    }
}

/// Monte Carlo estimate of the induced cochain on `rho_eps(elements)`.
pub fn mc_gamma_hat(
    c: &CochainHandle,
    elements: &[BraidWord],
    spec: &RegionSpec,
    opts: &EstimateOptions,
) -> Result<EstimateReport> {
    let surface = spec.surface;
    let group = p_group(surface);
    if *c.group() != group {
        return Err(Error::GroupMismatch {
            expected: group.to_string(),
            found: c.group().to_string(),
        });
    }
    if elements.len() != c.degree() + 1 {
        return Err(Error::InvalidArity(elements.len()));
    }
    if let Some(w) = elements.iter().find(|w| *w.group() != group) {
        return Err(Error::GroupMismatch {
            expected: group.to_string(),
            found: w.group().to_string(),
        });
    }
    if opts.n_samples < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: opts.n_samples,
            min: MIN_SAMPLES,
        });
    }
    if !(0.0..=1.0).contains(&opts.audit_fraction) {
        return Err(Error::InvalidConfig(format!(
            "audit fraction {} outside [0,1]",
            opts.audit_fraction
        )));
    }

    let mut table = BTreeMap::new();
    for t in TypeSignature::all_good(spec.strands(), spec.u_areas().len()) {
        let words = elements
            .iter()
            .map(|a| predicted_gamma(a, &t, surface).map(|p| p.word))
            .collect::<Result<Vec<_>>>()?;
        let v = c.eval(&words)?;
        table.insert(t.counts, (words, v));
    }
    let isotopies = if surface == Surface::Disc {
        let model = RhoModel::new(spec);
        elements
            .iter()
            .map(|a| model.isotopy(a))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let run = Run {
        c,
        spec,
        elements,
        isotopies,
        base: spec.base_configuration(),
        table,
        extractor: Extractor {
            conventions: opts.conventions,
            delta_sep: opts.delta_sep,
            ..Extractor::default()
        },
        opts: *opts,
    };

    let n_batches = opts.n_samples.div_ceil(BATCH);
    let compute = || {
        (0..n_batches)
            .into_par_iter()
            .map(|k| run.batch(k))
            .collect::<Result<Vec<Acc>>>()
    };
    let parts = if opts.workers == 0 {
        compute()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(compute)?
    };
    let mut acc = Acc::default();
    for p in &parts {
        acc.merge(p);
    }
    Ok(run.report(acc))
}

impl Run<'_> {
    fn report(&self, acc: Acc) -> EstimateReport {
        let n = self.opts.n_samples;
        let nf = n as f64;
        let areas = self.spec.u_areas();
        let strands = self.spec.strands() as i32;
        let expected_bad = 1.0 - (1.0 - self.spec.epsilon).powi(strands);
        let disc = self.spec.surface == Surface::Disc;
        let (mean, se, per_type, bad_fraction, bad_mean, bad_se) = if self.opts.stratified {
            // every retained sample is bad; scale by the exact bad volume
            let good: f64 = self
                .table
                .iter()
                .map(|(t, (_, v))| type_volume(t, &areas) * v)
                .sum();
            let bad_mean = expected_bad * acc.bad.sum / nf;
            let bad_se = expected_bad * acc.bad.stderr_over(n);
            let per_type = self
                .table
                .iter()
                .map(|(t, (_, v))| {
                    let vol = type_volume(t, &areas);
                    TypeBreakdown {
                        signature: TypeSignature::good(t),
                        count: acc
                            .types
                            .get(&TypeSignature::good(t))
                            .map_or(0, |m| m.count),
                        volume_fraction: vol,
                        partial_mean: vol * v,
                        partial_stderr: 0.0,
                    }
                })
                .collect();
            let bad_fraction = acc.bad.count as f64 / acc.draws as f64;
            if disc {
                (
                    good + bad_mean,
                    bad_se,
                    per_type,
                    bad_fraction,
                    bad_mean,
                    bad_se,
                )
            } else {
                (good, 0.0, per_type, bad_fraction, bad_mean, bad_se)
            }
        } else {
            let per_type = acc
                .types
                .iter()
                .map(|(t, m)| TypeBreakdown {
                    signature: t.clone(),
                    count: m.count,
                    volume_fraction: m.count as f64 / nf,
                    partial_mean: m.sum / nf,
                    partial_stderr: m.stderr_over(n),
                })
                .collect();
            let bad_fraction = acc.bad.count as f64 / nf;
            (
                acc.total.sum / nf,
                acc.total.stderr_over(n),
                per_type,
                bad_fraction,
                acc.bad.sum / nf,
                acc.bad.stderr_over(n),
            )
        };
        EstimateReport {
            surface: self.spec.surface,
            stratified: self.opts.stratified,
            epsilon: self.spec.epsilon,
            n_samples: n,
            elements: self.elements.iter().map(|w| w.to_string()).collect(),
            mean,
            standard_error: se,
            ci3: [mean - 3.0 * se, mean + 3.0 * se],
            per_type,
            bad_fraction,
            expected_bad_fraction: expected_bad,
            bad_max_abs: acc.bad_max_abs,
            bad_partial_mean: bad_mean,
            bad_partial_stderr: bad_se,
            bad_in_mean: disc,
            audited: acc.audited,
            draws: acc.draws,
            seed: self.opts.seed,
        }
    }
}

/// Exact volume of the good type with the given counts:
/// multinomial coefficient times `prod area_i^count_i`.
pub fn type_volume(counts: &[usize], areas: &[f64]) -> f64 {
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let m: usize = counts.iter().sum();
    let coef = fact(m) / counts.iter().map(|&c| fact(c)).product::<f64>();
    coef * counts
        .iter()
        .zip(areas)
        .map(|(&c, a)| a.powi(c as i32))
        .product::<f64>()
}

impl EstimateReport {
    pub fn breakdown(&self, counts: &[usize]) -> Option<&TypeBreakdown> {
        self.per_type.iter().find(|b| b.signature.counts == counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::GroupId;
    use crate::cochain::{qm_to_cochain, QmSpec};
    use crate::rho::build_regions;

    #[test]
    fn type_volumes_sum_to_good_volume() {
        for (surface, eps) in [
            (Surface::Disc, 0.3),
            (Surface::Sphere, 0.2),
            (Surface::Torus, 0.1),
        ] {
            let spec = build_regions(surface, eps).unwrap();
            let areas = spec.u_areas();
            let m = spec.strands();
            let total: f64 = TypeSignature::all_good(m, areas.len())
                .iter()
                .map(|t| type_volume(&t.counts, &areas))
                .sum();
            assert!((total - (1.0 - eps).powi(m as i32)).abs() < 1e-12);
        }
        assert!((type_volume(&[1, 1, 1], &[0.3, 0.3, 0.3]) - 6.0 * 0.027).abs() < 1e-15);
    }

    #[test]
    fn zero_cochain_gives_zero() {
        let spec = build_regions(Surface::Disc, 0.3).unwrap();
        let c = CochainHandle::zero(GroupId::P3, 1);
        let a = BraidWord::parse(&GroupId::P3, "a b").unwrap();
        let opts = EstimateOptions {
            n_samples: 300,
            ..Default::default()
        };
        let r = mc_gamma_hat(&c, &[BraidWord::identity(GroupId::P3), a], &spec, &opts).unwrap();
        assert_eq!(r.mean, 0.0);
        assert_eq!(r.standard_error, 0.0);
    }

    #[test]
    fn validation_errors() {
        let spec = build_regions(Surface::Disc, 0.3).unwrap();
        let c = qm_to_cochain(&QmSpec::default_test_class().build().unwrap(), 1).unwrap();
        let e = BraidWord::identity(GroupId::P3);
        let small = EstimateOptions {
            n_samples: 99,
            ..Default::default()
        };
        assert!(matches!(
            mc_gamma_hat(&c, &[e.clone(), e.clone()], &spec, &small),
            Err(Error::InsufficientSamples { .. })
        ));
        let ok = EstimateOptions {
            n_samples: 100,
            ..Default::default()
        };
        assert!(matches!(
            mc_gamma_hat(&c, std::slice::from_ref(&e), &spec, &ok),
            Err(Error::InvalidArity(1))
        ));
        let b = BraidWord::identity(B3);
        assert!(matches!(
            mc_gamma_hat(&c, &[e.clone(), b], &spec, &ok),
            Err(Error::GroupMismatch { .. })
        ));
        let sphere = build_regions(Surface::Sphere, 0.3).unwrap();
        assert!(matches!(
            mc_gamma_hat(&c, &[e.clone(), e], &sphere, &ok),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let spec = build_regions(Surface::Disc, 0.4).unwrap();
        let c = qm_to_cochain(&QmSpec::default_test_class().build().unwrap(), 1).unwrap();
        let a = BraidWord::parse(&GroupId::P3, "a b a^-1 b^-1").unwrap();
        let el = [BraidWord::identity(GroupId::P3), a];
        let one = EstimateOptions {
            n_samples: 2 * BATCH + 17,
            seed: 9,
            workers: 1,
            ..Default::default()
        };
        let two = EstimateOptions { workers: 2, ..one };
        assert_eq!(
            mc_gamma_hat(&c, &el, &spec, &one).unwrap(),
            mc_gamma_hat(&c, &el, &spec, &two).unwrap()
        );
    }
}
