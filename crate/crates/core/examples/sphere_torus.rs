//! Estimates on the sphere and torus models, with the per-type breakdown.
//!
//! `cargo run --release --example sphere_torus`
use ggbraids::braid::BraidWord;
use ggbraids::cli::default_class;
use ggbraids::integrator::{lambda_at, mc_gamma_hat, EstimateOptions};
use ggbraids::rho::{build_regions, p_group};
use ggbraids::trajectory::Surface;

fn main() -> ggbraids::Result<()> {
    for surface in [Surface::Sphere, Surface::Torus] {
        let g = p_group(surface);
        let c = default_class(surface).build()?;
        let names = g.generator_names();
        let alpha = BraidWord::parse(&g, &format!("{0} {1} {0} {1}", names[0], names[1]))?;
        let el = [BraidWord::identity(g.clone()), alpha.clone()];
        let spec = build_regions(surface, 0.2)?;
        let opts = EstimateOptions {
            n_samples: 20_000,
            seed: 3,
            ..EstimateOptions::default()
        };
        let r = mc_gamma_hat(&c, &el, &spec, &opts)?;
        println!(
            "{surface:?} in {g}: mean {:.5} +- {:.5}, lambda_eps {:.4}, c(e, {alpha}) {:.4}, bad {:.4}",
            r.mean,
            r.standard_error,
            lambda_at(surface, 0.2)?,
            c.eval(&el)?,
            r.bad_fraction
        );
        for t in &r.per_type {
            println!(
                "  {:<12} fraction {:.4} partial {:+.5}",
                t.signature.to_string(),
                t.volume_fraction,
                t.partial_mean
            );
        }
    }
    Ok(())
}
