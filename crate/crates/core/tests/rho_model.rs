use ggbraids::braid::{conjugate_in_group, embed_p3, free_reduce, BraidWord, GroupId, B3};
use ggbraids::cli::{alpha_set, verify_disc, verify_symbolic};
use ggbraids::cochain::WordSampler;
use ggbraids::conventions::Conventions;
use ggbraids::integrator::sample_configuration;
use ggbraids::rho::{
    build_regions, classify_type, min_feasible_epsilon, predicted_gamma, rho_flow, RhoModel,
    TypeSignature, MAX_EPSILON,
};
use ggbraids::trajectory::{gamma, Surface};
use ggbraids::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn feasibility_window() {
    for s in [Surface::Disc, Surface::Sphere, Surface::Torus] {
        assert!(min_feasible_epsilon(s) > 0.0);
        assert!(matches!(
            build_regions(s, 0.9999),
            Err(Error::InfeasibleEpsilon { .. })
        ));
        assert!(matches!(
            build_regions(s, 0.0),
            Err(Error::InfeasibleEpsilon { .. })
        ));
        build_regions(s, MAX_EPSILON).unwrap();
    }
}

#[test]
fn equal_areas_summing_to_one_minus_eps() {
    for s in [Surface::Disc, Surface::Sphere, Surface::Torus] {
        for eps in [0.5, 0.2, 0.05] {
            let r = build_regions(s, eps).unwrap();
            let a = r.u_areas();
            let total: f64 = a.iter().sum();
            assert!((total - (1.0 - eps)).abs() < 1e-9, "{s} {eps}");
            assert!(a.iter().all(|x| (x - a[0]).abs() < 1e-9));
        }
    }
}

#[test]
fn generator_flows_and_centre() {
    let spec = build_regions(Surface::Disc, 0.2).unwrap();
    assert!(rho_flow(&spec, "a").is_ok());
    assert!(rho_flow(&spec, "q").is_err());
    // rho(z) is the identity
    let m = RhoModel::new(&spec);
    assert!(m
        .isotopy(&BraidWord::parse(&GroupId::P3, "z z^-1 z").unwrap())
        .unwrap()
        .is_identity());
}

#[test]
fn case_table_on_disc_at_eps_02() {
    let spec = build_regions(Surface::Disc, 0.2).unwrap();
    let r = verify_disc(
        &spec,
        &alpha_set(Surface::Disc, 3, 8, 17),
        4,
        2,
        Conventions::default(),
    )
    .unwrap();
    assert!(r.all_passed(), "{}/{}", r.total_passed, r.total_checks);
    assert!(r.unreached_types.is_empty());
}

#[test]
fn homomorphism_property_numerically() {
    let spec = build_regions(Surface::Disc, 0.3).unwrap();
    let m = RhoModel::new(&spec);
    let z = spec.base_configuration();
    let mut words = WordSampler::new(GroupId::P3, 4, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..60 {
        let (a, b) = (words.sample(), words.sample());
        let x = sample_configuration(Surface::Disc, 3, &mut rng, 1e-9);
        let t = classify_type(&x, &spec);
        if !t.good {
            continue;
        }
        let g = gamma(&m.isotopy(&a.mul(&b).unwrap()).unwrap(), &x, &z).unwrap();
        let pa = predicted_gamma(&a, &t, Surface::Disc).unwrap().word;
        let pb = predicted_gamma(&b, &t, Surface::Disc).unwrap().word;
        let target = embed_p3(&pa.mul(&pb).unwrap()).unwrap();
        assert!(
            conjugate_in_group(&g, &target, &B3).unwrap(),
            "type {t}: {g} vs {target}"
        );
    }
}

#[test]
fn sphere_and_torus_tables_multiplicative() {
    for s in [Surface::Sphere, Surface::Torus] {
        let spec = build_regions(s, 0.3).unwrap();
        let r = verify_symbolic(&spec, &alpha_set(s, 6, 8, 5)).unwrap();
        assert!(r.all_passed(), "{s}");
    }
}

#[test]
fn sphere_example_from_table() {
    let g = GroupId::SphereP4;
    let d1 = BraidWord::parse(&g, "d1sq").unwrap();
    let p = predicted_gamma(&d1, &TypeSignature::good(&[0, 2, 0, 2]), Surface::Sphere).unwrap();
    assert_eq!(p.word, d1);
    assert!(p.conjugacy_only);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutators_vanish_off_the_main_type(wseed in any::<u64>()) {
        let mut s = WordSampler::new(GroupId::P3, 5, wseed);
        let (u, v) = (s.sample(), s.sample());
        let comm = u.mul(&v).unwrap().mul(&u.inverse()).unwrap().mul(&v.inverse()).unwrap();
        for t in TypeSignature::all_good(3, 3).into_iter().filter(|t| !t.is_main()) {
            let p = predicted_gamma(&comm, &t, Surface::Disc).unwrap();
            prop_assert!(free_reduce(&p.word).is_empty());
        }
    }
}
