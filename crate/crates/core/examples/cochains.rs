//! Brooks counting quasimorphisms, homogenization, and the cochains built from them.
//!
//! `cargo run --example cochains`
use ggbraids::braid::{BraidWord, GroupId};
use ggbraids::cochain::{
    brooks_qm, coboundary, homogenize, qm_to_cochain, sup_norm_estimate, QmSpec, WordSampler,
};

fn main() -> ggbraids::Result<()> {
    let f2 = GroupId::FreeGroup(2);
    let pattern = BraidWord::parse(&f2, "a b")?;
    let h = brooks_qm(&pattern)?;
    let g = BraidWord::parse(&f2, "a b a^-1 b^-1 a b a^-1 b^-1")?;
    println!("h_ab({g}) = {}", h.eval(&g)?);
    let hh = homogenize(&h, 12)?;
    println!("homogenized: {:.4}", hh.eval(&g)?);

    let q = QmSpec::default_test_class().build()?;
    let p3 = |s: &str| BraidWord::parse(&GroupId::P3, s);
    let alpha = p3("a b a^-1 b^-1")?;
    println!("default class on [a,b]: {:.4}", q.eval(&alpha)?);

    for degree in [1, 2] {
        let c = qm_to_cochain(&q, degree)?;
        let dc = coboundary(&c);
        let mut s = WordSampler::new(GroupId::P3, 6, 1);
        let worst = (0..200)
            .map(|_| dc.eval(&s.sample_tuple(degree + 2)).unwrap().abs())
            .fold(0.0, f64::max);
        let mut s = WordSampler::new(GroupId::P3, 6, 2);
        // degree 1: dc is the defect of q, bounded but nonzero; degree 2 is a cocycle
        println!(
            "degree {degree}: sup |c| ~ {:.3}, max |dc| = {worst:.2e}",
            sup_norm_estimate(&c, &mut s, 500)
        );
    }
    Ok(())
}
