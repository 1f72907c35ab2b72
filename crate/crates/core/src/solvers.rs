//! Brute-force and iterative solvers. These are the ground truth the
//! property tests and the fuzz pipeline compare against.

use crate::error::{Error, Result};
use crate::lattice::{restrict, slice_points, LatticeSpec, Point, Slice};
use crate::opdc::{DirectionOracle, OpdcSolution, SliceRule};
use crate::tarski::{classify, find_monotonicity_violation, LatticeMap, SutSolution, TarskiFunction};

/// All fixed points of a function, with the lattice-least and -greatest
/// among them when those exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSummary {
    /// Canonical enumeration order.
    pub all_fixed: Vec<Point>,
    pub least: Option<Point>,
    pub greatest: Option<Point>,
}

impl FixedPointSummary {
    pub fn count(&self) -> usize {
        self.all_fixed.len()
    }
}

/// Evaluates `g` on its whole domain.
///
/// `least` is the element of `all_fixed` below all others, if there is one;
/// for a non-monotone `g` the set may have no minimum, in which case it is
/// `None` (the coordinatewise meet is not used, as it need not be fixed).
pub fn brute_fixed_points<G: LatticeMap + ?Sized>(g: &G) -> Result<FixedPointSummary> {
    let mut all_fixed = Vec::new();
    for x in g.domain() {
        if g.eval(&x)? == x {
            all_fixed.push(x);
        }
    }
    let least = all_fixed.iter().find(|a| all_fixed.iter().all(|b| a.leq(b))).cloned();
    let greatest = all_fixed.iter().find(|a| all_fixed.iter().all(|b| b.leq(a))).cloned();
    Ok(FixedPointSummary {
        all_fixed,
        least,
        greatest,
    })
}

/// Result of a Kleene iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleeneRun {
    pub fixed_point: Point,
    /// Iterates from the start point up to and including the fixed point.
    pub trace: Vec<Point>,
    /// Evaluations of `f`, including the final one that confirmed the fixed point.
    pub evaluations: usize,
}

impl KleeneRun {
    /// Number of moves, `trace.len() - 1`.
    pub fn steps(&self) -> usize {
        self.trace.len() - 1
    }
}

/// Evaluation budget `k(n - 1) + 1`. From the bottom (or top), a monotone
/// sequence changes the coordinate sum by at least one per move and the sum
/// lies in `[k, kn]`, so at most `k(n - 1)` moves happen, plus one
/// evaluation to confirm.
pub fn kleene_budget(spec: &LatticeSpec) -> usize {
    spec.k() * (spec.n() as usize - 1) + 1
}

fn kleene_from(f: &TarskiFunction, start: Point) -> Result<KleeneRun> {
    let budget = kleene_budget(f.spec());
    let mut trace = vec![start];
    for evaluations in 1..=budget {
        let x = trace.last().expect("trace starts non-empty");
        let fx = f.eval(x)?;
        if fx == *x {
            return Ok(KleeneRun {
                fixed_point: fx,
                trace,
                evaluations,
            });
        }
        trace.push(fx);
    }
    Err(Error::BudgetExceeded { budget })
}

/// Least fixed point of a monotone `f`, iterating from the bottom point.
///
/// A non-monotone `f` may exhaust the budget, reported as
/// [`Error::BudgetExceeded`].
pub fn kleene_lfp(f: &TarskiFunction) -> Result<KleeneRun> {
    kleene_from(f, f.spec().bottom())
}

/// Greatest fixed point of a monotone `f`, iterating from the top point.
pub fn kleene_gfp(f: &TarskiFunction) -> Result<KleeneRun> {
    kleene_from(f, f.spec().top())
}

/// Fixed-point count of one slice restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceCount {
    pub slice: Slice,
    pub fixed_points: usize,
}

/// Exhaustive Super-Unique-Tarski audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    /// First UTV1 witness over all pairs (canonical order of `x`, then `y`).
    pub monotonicity_violation: Option<SutSolution>,
    /// One entry per slice, in slice enumeration order.
    pub slice_counts: Vec<SliceCount>,
    /// First UTV2 witness by slice order, then `x`, then `y`.
    pub uniqueness_violation: Option<SutSolution>,
}

impl AuditReport {
    pub fn monotone(&self) -> bool {
        self.monotonicity_violation.is_none()
    }

    pub fn violation_free(&self) -> bool {
        self.monotonicity_violation.is_none() && self.uniqueness_violation.is_none()
    }

    /// Fixed-point count of the all-free slice.
    pub fn full_lattice_count(&self) -> usize {
        self.slice_counts
            .iter()
            .find(|c| c.slice.free_dims().count() == c.slice.dim())
            .map_or(0, |c| c.fixed_points)
    }

    pub fn count_for(&self, s: &Slice) -> Option<usize> {
        self.slice_counts.iter().find(|c| c.slice == *s).map(|c| c.fixed_points)
    }
}

/// Checks monotonicity over all pairs, then for every one of the
/// `(n + 1)^k` slices counts fixed points of `f_s` and searches for an
/// incomparable Up/Down pair.
pub fn brute_sut_audit(f: &TarskiFunction) -> Result<AuditReport> {
    let monotonicity_violation =
        find_monotonicity_violation(f)?.map(|(x, y)| SutSolution::MonotonicityViolation { x, y });
    let mut slice_counts = Vec::new();
    let mut uniqueness_violation = None;
    for s in f.spec().slices() {
        let fs = restrict(f, s.clone())?;
        let mut up = Vec::new();
        let mut down = Vec::new();
        let mut fixed = 0;
        for x in slice_points(f.spec(), &s) {
            let c = classify(&fs, &x)?;
            if c.is_fixed() {
                fixed += 1;
            }
            if c.in_up {
                up.push(x.clone());
            }
            if c.in_down {
                down.push(x);
            }
        }
        if uniqueness_violation.is_none() {
            uniqueness_violation = up.iter().find_map(|x| {
                down.iter()
                    .find(|y| !x.leq(y))
                    .map(|y| SutSolution::SliceUniquenessViolation {
                        slice: s.clone(),
                        x: x.clone(),
                        y: y.clone(),
                    })
            });
        }
        slice_counts.push(SliceCount {
            slice: s,
            fixed_points: fixed,
        });
    }
    Ok(AuditReport {
        monotonicity_violation,
        slice_counts,
        uniqueness_violation,
    })
}

/// Every valid OPDC witness of `d` under the one-permutation rule.
pub fn brute_opdc_solutions(d: &DirectionOracle) -> Result<Vec<OpdcSolution>> {
    brute_opdc_solutions_with(SliceRule::ISlice, d)
}

/// Every valid OPDC witness of `d` under `rule`, in this order: all-zero
/// points; then, for each slice in enumeration order, unordered zero pairs
/// (`x` before `y` in canonical order), adjacent up/down pairs by index, and
/// boundary escapes by index.
///
/// Each candidate is confirmed with the verifier, so the output is sound by
/// construction.
pub fn brute_opdc_solutions_with(rule: SliceRule, d: &DirectionOracle) -> Result<Vec<OpdcSolution>> {
    let d = d.materialize()?;
    let spec = *d.spec();
    let mut out = Vec::new();

    for x in spec.points() {
        let sol = OpdcSolution::AllZero(x);
        if rule.verify(&d, &sol).is_valid() {
            out.push(sol);
        }
    }

    let n = spec.n();
    for s in spec.slices() {
        let pts: Vec<Point> = slice_points(&spec, &s).collect();
        for (a, x) in pts.iter().enumerate() {
            for y in &pts[a + 1..] {
                let sol = OpdcSolution::TwoZeroPoints {
                    slice: s.clone(),
                    x: x.clone(),
                    y: y.clone(),
                };
                if rule.verify(&d, &sol).is_valid() {
                    out.push(sol);
                }
            }
        }
        for i in 1..=spec.k() {
            if !s.is_free(i) {
                continue;
            }
            for x in &pts {
                for y in &pts {
                    if y.get(i) != x.get(i) + 1 {
                        continue;
                    }
                    let sol = OpdcSolution::AdjacentUpDown {
                        slice: s.clone(),
                        x: x.clone(),
                        y: y.clone(),
                        i,
                    };
                    if rule.verify(&d, &sol).is_valid() {
                        out.push(sol);
                    }
                }
            }
        }
        for i in 1..=spec.k() {
            for x in &pts {
                if x.get(i) != 1 && x.get(i) != n {
                    continue;
                }
                let sol = OpdcSolution::BoundaryEscape {
                    slice: s.clone(),
                    x: x.clone(),
                    i,
                };
                if rule.verify(&d, &sol).is_valid() {
                    out.push(sol);
                }
            }
        }
    }
    Ok(out)
}
