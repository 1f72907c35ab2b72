//! Checking candidate solutions of both problems and reading the verdicts.

use sutarski::{
    reduce, verify_opdc_solution, verify_sut_solution, LatticeSpec, OpdcSolution, Point, SliceEntry::*, SutSolution,
    TarskiFunction,
};

fn main() -> sutarski::Result<()> {
    // A non-monotone function on {1,2,3}: 1 -> 3, 2 -> 1, 3 -> 1.
    let spec = LatticeSpec::new(3, 1)?;
    let p = |v: u32| Point::new(vec![v]);
    let f = TarskiFunction::from_table(spec, vec![p(3), p(1), p(1)])?;

    let candidates = [
        SutSolution::FixedPoint(p(2)),
        SutSolution::MonotonicityViolation { x: p(1), y: p(2) },
        SutSolution::MonotonicityViolation { x: p(2), y: p(1) },
        SutSolution::SliceUniquenessViolation {
            slice: spec.slice(vec![Free])?,
            x: p(1),
            y: p(2),
        },
    ];
    for c in &candidates {
        println!("{c:<40} {}", verify_sut_solution(&f, c));
    }

    let d = reduce(&f);
    let opdc = [
        OpdcSolution::AllZero(p(2)),
        OpdcSolution::AdjacentUpDown {
            slice: spec.slice(vec![Free])?,
            x: p(1),
            y: p(2),
            i: 1,
        },
    ];
    for c in &opdc {
        println!("{c:<40} {}", verify_opdc_solution(d.oracle(), c));
    }
    Ok(())
}
