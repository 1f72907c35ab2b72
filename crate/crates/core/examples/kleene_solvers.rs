//! Least and greatest fixed points by iteration from the bottom and top,
//! checked against exhaustive search.

use sutarski::generators::gen_random_monotone;
use sutarski::solvers::{brute_fixed_points, kleene_budget, kleene_gfp, kleene_lfp};
use sutarski::LatticeSpec;

fn main() -> sutarski::Result<()> {
    let spec = LatticeSpec::new(5, 3)?;
    let f = gen_random_monotone(spec, 2024);
    let brute = brute_fixed_points(&f)?;
    let lfp = kleene_lfp(&f)?;
    let gfp = kleene_gfp(&f)?;

    println!("budget {} evaluations", kleene_budget(&spec));
    let trace: Vec<String> = lfp.trace.iter().map(|p| p.to_string()).collect();
    println!(
        "lfp {} after {} evaluations: {}",
        lfp.fixed_point,
        lfp.evaluations,
        trace.join(" -> ")
    );
    println!("gfp {} after {} evaluations", gfp.fixed_point, gfp.evaluations);
    println!(
        "brute force: {} fixed points, least {:?}, greatest {:?}",
        brute.count(),
        brute.least.map(|p| p.to_string()),
        brute.greatest.map(|p| p.to_string())
    );
    Ok(())
}
