//! Reduce a function to a direction oracle, enumerate every OPDC solution
//! and map each back to a Super-Unique-Tarski solution.

use sutarski::generators::{gen_mutated, gen_random_monotone};
use sutarski::solvers::brute_opdc_solutions;
use sutarski::{map_back, reduce, verify_sut_solution, LatticeSpec};

fn main() -> sutarski::Result<()> {
    let spec = LatticeSpec::new(3, 2)?;
    let f = gen_mutated(&gen_random_monotone(spec, 4), 4, 2)?;
    let d = reduce(&f);

    for x in spec.points() {
        let dirs: Vec<&str> = d.oracle().directions(&x)?.iter().map(|d| d.as_str()).collect();
        println!("{x}: f = {}  D = {}", f.eval(&x)?, dirs.join(","));
    }
    println!();
    for sol in brute_opdc_solutions(d.oracle())? {
        let back = map_back(&f, &sol)?;
        println!("{sol:<32} -> {back:<32} {}", verify_sut_solution(&f, &back));
    }
    Ok(())
}
