//! Checks the predicted braid for each configuration type against extraction.
//!
//! `cargo run --release --example case_table`
use ggbraids::cli::{alpha_set, verify_case_table};
use ggbraids::conventions::Conventions;
use ggbraids::rho::build_regions;
use ggbraids::trajectory::Surface;

fn main() -> ggbraids::Result<()> {
    for surface in [Surface::Disc, Surface::Sphere, Surface::Torus] {
        let spec = build_regions(surface, 0.3)?;
        let alphas = alpha_set(surface, 4, 6, 0);
        let r = verify_case_table(&spec, &alphas, 10, 0, Conventions::default())?;
        println!(
            "{surface:?}: {}/{} checks passed",
            r.total_passed, r.total_checks
        );
        for c in r.checks.iter().filter(|c| c.alpha == r.checks[0].alpha) {
            let seen = if c.extracted_example.is_empty() {
                "(symbolic)"
            } else {
                &c.extracted_example
            };
            println!(
                "  {:<10} predicted {:<16} seen {}",
                c.signature.to_string(),
                c.predicted,
                seen
            );
        }
    }
    Ok(())
}
