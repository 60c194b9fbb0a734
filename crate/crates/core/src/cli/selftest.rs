use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::verify::{alpha_set, verify_disc};
use crate::braid::{
    b3_equal, conjugate_in_group, free_reduce, is_pure, project_b3_mod_center, BraidWord, GroupId,
    B3,
};
use crate::cochain::{coboundary, qm_to_cochain, CochainHandle, QmSpec, WordSampler};
use crate::conventions::Conventions;
use crate::error::Result;
use crate::integrator::{mc_gamma_hat, sample_configuration, EstimateOptions};
use crate::rho::{build_regions, p_group, RhoModel};
use crate::trajectory::{flow_word, Extractor, Surface};

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> PropertyResult {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    PropertyResult {
        name: name.into(),
        passed,
        detail,
    }
}

fn count(ok: usize, n: usize) -> (bool, String) {
    (ok == n, format!("{ok}/{n}"))
}

/// The invariant suite behind `selftest`.
pub fn run_selftest(seed: u64, conventions: Conventions) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    out.push(check("free reduction is idempotent", || {
        let mut s = WordSampler::new(B3, 20, seed);
        let n = 500;
        let ok = (0..n)
            .filter(|_| {
                let w = s.sample();
                let r = free_reduce(&w);
                free_reduce(&r) == r
            })
            .count();
        Ok(count(ok, n))
    }));
    out.push(check(
        "inverse and mod-centre projection are homomorphic",
        || {
            let mut s = WordSampler::new(B3, 12, seed + 1);
            let n = 300;
            let mut ok = 0;
            for _ in 0..n {
                let (u, v) = (s.sample(), s.sample());
                let uv = u.mul(&v)?;
                let pu = project_b3_mod_center(&u)?;
                let pv = project_b3_mod_center(&v)?;
                let inv_ok = free_reduce(&uv.mul(&uv.inverse())?).is_empty();
                let hom_ok = project_b3_mod_center(&uv)? == free_reduce(&pu.mul(&pv)?);
                if inv_ok && hom_ok && b3_equal(&uv.mul(&v.inverse())?, &u)? {
                    ok += 1;
                }
            }
            Ok(count(ok, n))
        },
    ));
    out.push(check("conjugacy decision on explicit conjugates", || {
        let mut s = WordSampler::new(B3, 10, seed + 2);
        let n = 500;
        let mut ok = 0;
        for _ in 0..n {
            let (w, h) = (s.sample(), s.sample());
            if conjugate_in_group(&w, &w.conjugate_by(&h)?, &B3)? {
                ok += 1;
            }
        }
        Ok(count(ok, n))
    }));
    out.push(check("coboundary squares to zero", || {
        let q = QmSpec::default_test_class().build()?;
        let c: CochainHandle = qm_to_cochain(&q, 1)?;
        let dd = coboundary(&coboundary(&c));
        let mut s = WordSampler::new(GroupId::P3, 8, seed + 3);
        let n = 1000;
        let mut worst: f64 = 0.0;
        for _ in 0..n {
            worst = worst.max(dd.eval(&s.sample_tuple(4))?.abs());
        }
        Ok((
            worst < 1e-9,
            format!("max |dd c| = {worst:e} over {n} tuples"),
        ))
    }));
    let spec = build_regions(Surface::Disc, 0.3);
    out.push(check(
        "extracted braids are pure and satisfy the cocycle identity",
        || {
            let spec = spec.clone()?;
            let model = RhoModel::new(&spec);
            let ex = Extractor::with_conventions(conventions);
            let z = spec.base_configuration();
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 4);
            let mut words = WordSampler::new(GroupId::P3, 4, seed + 5);
            let n = 100;
            let mut ok = 0;
            for _ in 0..n {
                let (a, b) = (words.sample(), words.sample());
                let (ga, gb) = (model.isotopy(&a)?, model.isotopy(&b)?);
                let x = sample_configuration(Surface::Disc, 3, &mut rng, ex.delta_sep);
                let whole = ex.gamma_once(&ga.then(&gb), &x, &z)?;
                let (_, gx) = flow_word(&ga, &x, &ex)?;
                let parts = ex
                    .gamma_once(&ga, &x, &z)?
                    .mul(&ex.gamma_once(&gb, &gx, &z)?)?;
                if is_pure(&whole)? && free_reduce(&parts) == whole {
                    ok += 1;
                }
            }
            Ok(count(ok, n))
        },
    ));
    out.push(check("disc case table", || {
        let spec = spec.clone()?;
        let r = verify_disc(
            &spec,
            &alpha_set(Surface::Disc, 2, 8, seed),
            2,
            seed + 6,
            conventions,
        )?;
        Ok((
            r.all_passed(),
            format!("{}/{} checks", r.total_passed, r.total_checks),
        ))
    }));
    for surface in [Surface::Disc, Surface::Sphere, Surface::Torus] {
        out.push(check(&format!("bad-set volume on the {surface}"), || {
            let spec = build_regions(surface, 0.3)?;
            let c = CochainHandle::zero(p_group(surface), 0);
            let e = BraidWord::identity(p_group(surface));
            let n = 20_000;
            let opts = EstimateOptions {
                n_samples: n,
                seed: seed + 7,
                audit_fraction: 0.0,
                ..EstimateOptions::default()
            };
            let r = mc_gamma_hat(&c, &[e], &spec, &opts)?;
            let p = r.expected_bad_fraction;
            let tol = 3.0 * (p * (1.0 - p) / n as f64).sqrt();
            let dev = (r.bad_fraction - p).abs();
            Ok((
                dev <= tol,
                format!(
                    "observed {:.5}, expected {p:.5}, tolerance {tol:.5}",
                    r.bad_fraction
                ),
            ))
        }));
    }
    out
}
