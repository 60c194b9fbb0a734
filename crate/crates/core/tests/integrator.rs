use ggbraids::braid::{BraidWord, GroupId};
use ggbraids::cochain::{qm_to_cochain, CochainHandle, QmSpec};
use ggbraids::integrator::{epsilon_sweep, lambda_at, mc_gamma_hat, EstimateOptions};
use ggbraids::rho::{build_regions, p_group};
use ggbraids::trajectory::Surface;

fn p3(w: &str) -> BraidWord {
    BraidWord::parse(&GroupId::P3, w).unwrap()
}

fn opts(n: usize, seed: u64) -> EstimateOptions {
    EstimateOptions {
        n_samples: n,
        seed,
        ..EstimateOptions::default()
    }
}

#[test]
fn report_invariants() {
    for s in [Surface::Disc, Surface::Sphere, Surface::Torus] {
        let spec = build_regions(s, 0.3).unwrap();
        let g = p_group(s);
        let c = CochainHandle::zero(g.clone(), 0);
        let n = 20_000;
        let r = mc_gamma_hat(&c, &[BraidWord::identity(g)], &spec, &opts(n, 4)).unwrap();
        let total: f64 = r.per_type.iter().map(|b| b.volume_fraction).sum::<f64>() + r.bad_fraction;
        assert!((total - 1.0).abs() <= 3.0 / (n as f64).sqrt());
        assert!((r.bad_fraction - r.expected_bad_fraction).abs() <= 3.0 / (n as f64).sqrt());
        let parts: f64 =
            r.per_type.iter().map(|b| b.partial_mean).sum::<f64>() + r.bad_partial_mean;
        assert!((parts - r.mean).abs() < 1e-12);
    }
}

#[test]
fn identity_elements_give_zero_for_coboundaries() {
    let c = qm_to_cochain(&QmSpec::default_test_class().build().unwrap(), 2).unwrap();
    let e = BraidWord::identity(GroupId::P3);
    let s = epsilon_sweep(
        &c,
        &[e.clone(), e.clone(), e],
        Surface::Disc,
        &[0.5, 0.2],
        &opts(500, 1),
    )
    .unwrap();
    assert!(s.points.iter().all(|p| p.mean == 0.0 && p.distance == 0.0));
}

#[test]
fn degenerate_tuple_vanishes() {
    let c = qm_to_cochain(&QmSpec::default_test_class().build().unwrap(), 2).unwrap();
    let g = p3("a b a^-1 b^-1");
    let spec = build_regions(Surface::Disc, 0.3).unwrap();
    let r = mc_gamma_hat(&c, &[g.clone(), g.clone(), g], &spec, &opts(2_000, 5)).unwrap();
    assert_eq!(r.mean, 0.0);
}

#[test]
fn estimate_tracks_lambda_times_value() {
    let q = QmSpec::default_test_class().build().unwrap();
    let c = qm_to_cochain(&q, 1).unwrap();
    let alpha = p3("a b a^-1 b^-1");
    let el = [BraidWord::identity(GroupId::P3), alpha.clone()];
    let spec = build_regions(Surface::Disc, 0.1).unwrap();
    let r = mc_gamma_hat(&c, &el, &spec, &opts(20_000, 6)).unwrap();
    let target = lambda_at(Surface::Disc, 0.1).unwrap() * q.eval(&alpha).unwrap();
    let budget = r.expected_bad_fraction * r.bad_max_abs + 3.0 * r.standard_error;
    assert!((r.mean - target).abs() <= budget);
}

#[test]
fn right_translation_shares_the_sample_stream() {
    // c is built from differences g_i g_j^-1, so right-multiplying every
    // element by h leaves each per-sample value fixed on good points
    let c = qm_to_cochain(&QmSpec::default_test_class().build().unwrap(), 1).unwrap();
    let spec = build_regions(Surface::Disc, 0.3).unwrap();
    let h = p3("a a b");
    let el = [p3("a b a^-1 b^-1"), p3("b a")];
    let moved = [el[0].mul(&h).unwrap(), el[1].mul(&h).unwrap()];
    let o = opts(10_000, 7);
    let r1 = mc_gamma_hat(&c, &el, &spec, &o).unwrap();
    let r2 = mc_gamma_hat(&c, &moved, &spec, &o).unwrap();
    let se = (r1.standard_error.powi(2) + r2.standard_error.powi(2)).sqrt();
    assert!(
        (r1.mean - r2.mean).abs() <= 3.0 * se + 1e-9,
        "{} vs {}",
        r1.mean,
        r2.mean
    );
}

#[test]
fn stratified_mode_integrates_good_set_exactly() {
    let q = QmSpec::default_test_class().build().unwrap();
    let c = qm_to_cochain(&q, 1).unwrap();
    let alpha = p3("a b a^-1 b^-1 a b a^-1 b^-1");
    let el = [BraidWord::identity(GroupId::P3), alpha.clone()];
    let spec = build_regions(Surface::Disc, 0.2).unwrap();
    let r = mc_gamma_hat(
        &c,
        &el,
        &spec,
        &EstimateOptions {
            stratified: true,
            ..opts(2_000, 8)
        },
    )
    .unwrap();
    let main = r.breakdown(&[1, 1, 1]).unwrap();
    let exact = lambda_at(Surface::Disc, 0.2).unwrap() * q.eval(&alpha).unwrap();
    assert!((main.partial_mean - exact).abs() < 1e-12);
    assert!(r.draws > r.n_samples);
    assert!((r.bad_fraction - r.expected_bad_fraction).abs() < 0.03);
}

#[test]
fn seeds_reproduce_and_differ() {
    let c = qm_to_cochain(&QmSpec::default_test_class().build().unwrap(), 1).unwrap();
    let spec = build_regions(Surface::Disc, 0.3).unwrap();
    let el = [BraidWord::identity(GroupId::P3), p3("a b a^-1 b^-1")];
    let a = mc_gamma_hat(&c, &el, &spec, &opts(3_000, 1)).unwrap();
    let b = mc_gamma_hat(&c, &el, &spec, &opts(3_000, 1)).unwrap();
    let d = mc_gamma_hat(&c, &el, &spec, &opts(3_000, 2)).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_ne!(a.bad_fraction, d.bad_fraction);
}
