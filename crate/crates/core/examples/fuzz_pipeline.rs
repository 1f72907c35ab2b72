//! The seeded pipeline over many instances on several threads.

use sutarski::fuzz::run_fuzz;
use sutarski::LatticeSpec;

fn main() -> sutarski::Result<()> {
    let spec = LatticeSpec::new(3, 2)?;
    let seeds: Vec<u64> = (0..400).collect();
    let report = run_fuzz(spec, &seeds, 4);

    let mut totals = [0usize; 4];
    let (mut monotone, mut clean) = (0, 0);
    for o in &report.outcomes {
        match &o.result {
            Ok(s) => {
                monotone += s.monotone as usize;
                clean += s.violation_free as usize;
                for (t, c) in totals.iter_mut().zip(s.opdc_counts) {
                    *t += c;
                }
            }
            Err(e) => println!("seed {}: {e}", o.seed),
        }
    }
    println!(
        "{} seeds, {} failures, {monotone} monotone, {clean} violation-free",
        seeds.len(),
        report.failures().count()
    );
    println!(
        "O1 {}  OV1 {}  OV2 {}  OV3 {}",
        totals[0], totals[1], totals[2], totals[3]
    );
    Ok(())
}
