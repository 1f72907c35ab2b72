//! A monotone function with one fixed point whose restriction to a slice
//! has two. The audit finds it, and the reduction turns the slice's two
//! zero points into the same kind of violation.

use sutarski::generators::gen_unique_not_super;
use sutarski::solvers::{brute_opdc_solutions, brute_sut_audit};
use sutarski::{map_back, reduce, LatticeSpec};

fn main() -> sutarski::Result<()> {
    let f = gen_unique_not_super(LatticeSpec::new(2, 2)?)?;
    let audit = brute_sut_audit(&f)?;
    println!("monotone: {}", audit.monotone());
    println!("fixed points on the full lattice: {}", audit.full_lattice_count());
    for c in audit.slice_counts.iter().filter(|c| c.fixed_points != 1) {
        println!("slice {} has {} fixed points", c.slice, c.fixed_points);
    }
    if let Some(w) = &audit.uniqueness_violation {
        println!("audit witness: {w}");
    }
    for sol in brute_opdc_solutions(reduce(&f).oracle())?
        .iter()
        .filter(|s| !s.is_proper())
    {
        println!("{sol} maps back to {}", map_back(&f, sol)?);
    }
    Ok(())
}
