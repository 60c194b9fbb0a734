//! Follows a configuration under a model flow, dumps the tethered loop as CSV,
//! and reads the braid back from the samples.
//!
//! `cargo run --example extract_braid -- /tmp/loop.csv`
use ggbraids::braid::{b3_equal, embed_p3, BraidWord, GroupId};
use ggbraids::conventions::Conventions;
use ggbraids::rho::{build_regions, RhoModel};
use ggbraids::trajectory::{extract_braid, gamma, tethered_loop, Configuration};

fn main() -> ggbraids::Result<()> {
    let spec = build_regions(ggbraids::trajectory::Surface::Disc, 0.2)?;
    let model = RhoModel::new(&spec);
    let alpha = BraidWord::parse(&GroupId::P3, "a b")?;
    let iso = model.isotopy(&alpha)?;
    let z = spec.base_configuration();
    let x = Configuration::from_disc(&[[-0.62, 0.05], [0.03, -0.1], [0.58, 0.12]])?;

    let g = gamma(&iso, &x, &z)?;
    println!("certified braid: {g}");
    println!("expected conjugate of: {}", embed_p3(&alpha)?);

    let traj = tethered_loop(&iso, &x, &z, 1 << 12)?;
    let path = std::env::args().nth(1).unwrap_or_else(|| "loop.csv".into());
    traj.write_csv(std::fs::File::create(&path)?)?;
    let back = ggbraids::trajectory::Trajectory::read_csv(std::fs::File::open(&path)?)?;
    let pl = extract_braid(&back, Conventions::default())?;
    println!(
        "wrote {} samples to {path}; polygonal braid {pl}",
        back.times().len()
    );
    println!("agree in B3: {}", b3_equal(&pl, &g)?);
    Ok(())
}
