//! Degree-1 estimates against the limit value as epsilon shrinks.
//!
//! `cargo run --release --example sweep`
use ggbraids::braid::{BraidWord, GroupId};
use ggbraids::cochain::{qm_to_cochain, QmSpec};
use ggbraids::integrator::{epsilon_sweep, EstimateOptions};
use ggbraids::trajectory::Surface;

fn main() -> ggbraids::Result<()> {
    let c = qm_to_cochain(&QmSpec::default_test_class().build()?, 1)?;
    let el = [
        BraidWord::identity(GroupId::P3),
        BraidWord::parse(&GroupId::P3, "a b a^-1 b^-1 a b a^-1 b^-1")?,
    ];
    for stratified in [false, true] {
        let opts = EstimateOptions {
            n_samples: 20_000,
            seed: 0,
            stratified,
            ..EstimateOptions::default()
        };
        let s = epsilon_sweep(&c, &el, Surface::Disc, &[0.5, 0.2, 0.05], &opts)?;
        println!(
            "stratified = {stratified}, c(elements) = {:.4}",
            s.c_elements
        );
        for p in &s.points {
            println!(
                "  eps {:<5} target {:.5} mean {:.5} |d| {:.5} budget {:.4}",
                p.epsilon, p.target, p.mean, p.distance, p.budget
            );
        }
    }
    Ok(())
}
