//! The reduction from Super-Unique-Tarski to OPDC.
//!
//! Forward: `D_i(x)` is the three-way comparison of `x_i` against `f(x)_i`.
//! Backward: every OPDC solution of the constructed instance is turned into
//! a Super-Unique-Tarski solution with a constant number of evaluations of
//! `f`, proper solutions going to proper solutions and violations to
//! violations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::{restrict, Point, Slice};
use crate::opdc::{Direction, DirectionOracle, OpdcSolution, SliceRule};
use crate::tarski::{LatticeMap, SutSolution, TarskiFunction};

/// A Tarski function together with the direction oracle built from it.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    source: TarskiFunction,
    oracle: DirectionOracle,
}

impl ReducedInstance {
    pub fn source(&self) -> &TarskiFunction {
        &self.source
    }

    pub fn oracle(&self) -> &DirectionOracle {
        &self.oracle
    }
}

fn direction_of(coord: u32, image: u32) -> Direction {
    match coord.cmp(&image) {
        Ordering::Less => Direction::Up,
        Ordering::Equal => Direction::Zero,
        Ordering::Greater => Direction::Down,
    }
}

/// Builds the OPDC instance for `f`. The oracle is lazy: each query
/// evaluates `f` exactly once.
pub fn reduce(f: &TarskiFunction) -> ReducedInstance {
    let source = f.clone();
    let g = f.clone();
    let oracle = DirectionOracle::from_point_fn(*f.spec(), move |x| {
        let fx = g.eval(x)?;
        Ok(x.coords()
            .iter()
            .zip(fx.coords())
            .map(|(&a, &b)| direction_of(a, b))
            .collect())
    });
    ReducedInstance { source, oracle }
}

/// Maps a solution of `reduce(f)` back to a solution of `f`, under the
/// one-permutation slice rule.
///
/// The witness is verified first; anything that is not a valid OPDC solution
/// is refused with [`Error::ContractViolation`]. Boundary escapes cannot be
/// valid for a reduced oracle and are refused as well.
pub fn map_back(f: &TarskiFunction, sol: &OpdcSolution) -> Result<SutSolution> {
    map_back_with(SliceRule::ISlice, f, sol)
}

/// [`map_back`] with a chosen slice rule. The mapping never relies on the
/// slice being an `i`-slice, so [`SliceRule::AnySlice`] works too.
pub fn map_back_with(rule: SliceRule, f: &TarskiFunction, sol: &OpdcSolution) -> Result<SutSolution> {
    let reduced = reduce(f);
    let verdict = rule.verify(reduced.oracle(), sol);
    if !verdict.is_valid() {
        return Err(Error::ContractViolation(format!(
            "{} is not a solution of the reduced instance: {verdict}",
            sol.tag()
        )));
    }
    match sol {
        OpdcSolution::AllZero(x) => Ok(SutSolution::FixedPoint(x.clone())),
        OpdcSolution::TwoZeroPoints { slice, x, y } => {
            // both are fixed points of f_s; pick the order with x not below y
            let (a, b) = if x.leq(y) { (y, x) } else { (x, y) };
            Ok(SutSolution::SliceUniquenessViolation {
                slice: slice.clone(),
                x: a.clone(),
                y: b.clone(),
            })
        }
        OpdcSolution::AdjacentUpDown { slice, x, y, i } => extract_adjacent(f, slice, x, y, *i),
        OpdcSolution::BoundaryEscape { .. } => Err(Error::ContractViolation(
            "a boundary escape cannot be a solution of a reduced instance".into(),
        )),
    }
}

/// Turns an adjacent up/down pair into a monotonicity violation or a slice
/// uniqueness violation.
///
/// Requires `(s, x, y, i)` to be a valid OV2 witness for `reduce(f)`.
pub fn ov2_extract(f: &TarskiFunction, s: &Slice, x: &Point, y: &Point, i: usize) -> Result<SutSolution> {
    let verdict = SliceRule::ISlice.check_ov2(reduce(f).oracle(), s, x, y, i);
    if !verdict.is_valid() {
        return Err(Error::ContractViolation(format!(
            "not an adjacent up/down witness: {verdict}"
        )));
    }
    extract_adjacent(f, s, x, y, i)
}

fn extract_adjacent(f: &TarskiFunction, s: &Slice, x: &Point, y: &Point, i: usize) -> Result<SutSolution> {
    let fs = restrict(f, s.clone())?;
    let fx = fs.eval(x)?;
    let fy = fs.eval(y)?;

    // x < f_s(x) and f_s(y) < y: every direction but i is zero, i reads up at x
    // and down at y.
    if !(x.lt(&fx) && fy.lt(y)) {
        return Err(Error::ContractViolation(format!(
            "expected {x} < f_s(x) = {fx} and f_s(y) = {fy} < {y}"
        )));
    }

    // A monotonicity failure of f_s on a pair is one of f on the same pair:
    // fixed coordinates of f_s are equal on both sides, free ones are f's.
    let ffx = fs.eval(&fx)?;
    if !fx.leq(&ffx) {
        return Ok(SutSolution::MonotonicityViolation { x: x.clone(), y: fx });
    }
    let ffy = fs.eval(&fy)?;
    if !ffy.leq(&fy) {
        return Ok(SutSolution::MonotonicityViolation { x: fy, y: y.clone() });
    }

    // f_s(x) in Up(f_s), f_s(y) in Down(f_s), and in coordinate i
    // f_s(y)_i <= y_i - 1 = x_i < f_s(x)_i, so f_s(x) is not below f_s(y).
    debug_assert!(fy.get(i) < fx.get(i));
    Ok(SutSolution::SliceUniquenessViolation {
        slice: s.clone(),
        x: fx,
        y: fy,
    })
}
