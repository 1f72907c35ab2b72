//! Tarski and Super-Unique-Tarski instances: functions on the lattice,
//! Up/Down classification and the witness verifiers for UT, UTV1 and UTV2.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{restrict, slice_points, LatticeSpec, Point, Slice, SlicePoints};
use crate::verdict::{invalid_if, try_verdict, Reason, Verdict};

/// A function evaluated on the points of one slice of a lattice.
///
/// Implemented by [`TarskiFunction`] (whose slice is all-free) and by
/// [`RestrictedFunction`](crate::lattice::RestrictedFunction).
pub trait LatticeMap {
    fn spec(&self) -> &LatticeSpec;

    /// The slice whose points form the domain.
    fn slice(&self) -> Slice;

    /// Evaluates at `x`, rejecting points outside the domain.
    fn eval(&self, x: &Point) -> Result<Point>;

    /// Domain points in canonical order.
    fn domain(&self) -> SlicePoints {
        slice_points(self.spec(), &self.slice())
    }
}

type Callback = dyn Fn(&Point) -> Point + Send + Sync;

#[derive(Clone)]
enum Body {
    Table(Arc<[Point]>),
    Callback(Arc<Callback>),
}

/// A total map `f : L^k -> L^k`, either as an explicit table in canonical
/// index order or as a callback.
///
/// Callbacks must be pure: the same input always gives the same output, and
/// concurrent calls are allowed.
#[derive(Clone)]
pub struct TarskiFunction {
    spec: LatticeSpec,
    body: Body,
}

impl fmt::Debug for TarskiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Table(t) => f
                .debug_struct("TarskiFunction")
                .field("spec", &self.spec)
                .field("table", t)
                .finish(),
            Body::Callback(_) => f
                .debug_struct("TarskiFunction")
                .field("spec", &self.spec)
                .field("table", &"<callback>")
                .finish(),
        }
    }
}

impl TarskiFunction {
    /// Table-backed function. `table[i]` is the image of `spec.point_at(i)`.
    pub fn from_table(spec: LatticeSpec, table: Vec<Point>) -> Result<Self> {
        if table.len() != spec.size() {
            return Err(Error::TableSize {
                expected: spec.size(),
                got: table.len(),
            });
        }
        for p in &table {
            spec.check(p)?;
        }
        Ok(Self {
            spec,
            body: Body::Table(table.into()),
        })
    }

    /// Callback-backed function. Outputs are validated on every evaluation.
    pub fn from_fn<F>(spec: LatticeSpec, f: F) -> Self
    where
        F: Fn(&Point) -> Point + Send + Sync + 'static,
    {
        Self {
            spec,
            body: Body::Callback(Arc::new(f)),
        }
    }

    pub fn identity(spec: LatticeSpec) -> Self {
        Self {
            spec,
            body: Body::Table(spec.points().collect::<Vec<_>>().into()),
        }
    }

    pub fn constant(spec: LatticeSpec, value: Point) -> Result<Self> {
        spec.check(&value)?;
        Self::from_table(spec, vec![value; spec.size()])
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn table(&self) -> Option<&[Point]> {
        match &self.body {
            Body::Table(t) => Some(t),
            Body::Callback(_) => None,
        }
    }

    pub fn is_table(&self) -> bool {
        self.table().is_some()
    }

    /// Evaluates at every point and returns the table-backed equivalent.
    pub fn materialize(&self) -> Result<Self> {
        let table = self.spec.points().map(|x| self.eval(&x)).collect::<Result<Vec<_>>>()?;
        Self::from_table(self.spec, table)
    }

    /// Copy with the table entry for `x` replaced by `value`.
    pub fn with_entry(&self, x: &Point, value: Point) -> Result<Self> {
        self.spec.check(x)?;
        self.spec.check(&value)?;
        let mut table = self.table().ok_or(Error::NotTable)?.to_vec();
        table[self.spec.index_of(x)] = value;
        Self::from_table(self.spec, table)
    }

    /// `f(x)`.
    pub fn eval(&self, x: &Point) -> Result<Point> {
        self.spec.check(x)?;
        match &self.body {
            Body::Table(t) => Ok(t[self.spec.index_of(x)].clone()),
            Body::Callback(cb) => {
                let y = cb(x);
                if !self.spec.contains(&y) {
                    return Err(Error::BadOutput { point: y.to_string() });
                }
                Ok(y)
            }
        }
    }

    /// Table equality on every point.
    pub fn same_values(&self, other: &TarskiFunction) -> bool {
        self.spec == other.spec && self.spec.points().all(|x| self.eval(&x).ok() == other.eval(&x).ok())
    }
}

impl LatticeMap for TarskiFunction {
    fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    fn slice(&self) -> Slice {
        self.spec.full_slice()
    }

    fn eval(&self, x: &Point) -> Result<Point> {
        TarskiFunction::eval(self, x)
    }
}

/// Up/Down membership of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointClassification {
    /// `x <= g(x)`
    pub in_up: bool,
    /// `g(x) <= x`
    pub in_down: bool,
}

impl PointClassification {
    pub fn is_fixed(&self) -> bool {
        self.in_up && self.in_down
    }
}

pub fn classify<G: LatticeMap + ?Sized>(g: &G, x: &Point) -> Result<PointClassification> {
    let gx = g.eval(x)?;
    Ok(PointClassification {
        in_up: x.leq(&gx),
        in_down: gx.leq(x),
    })
}

pub fn check_fixed_point<G: LatticeMap + ?Sized>(g: &G, x: &Point) -> Result<bool> {
    Ok(g.eval(x)? == *x)
}

/// A solution of a Super-Unique-Tarski instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SutSolution {
    /// UT: `f(x) = x`.
    FixedPoint(Point),
    /// UTV1: `x <= y` but `f(x)` is not below `f(y)`.
    MonotonicityViolation { x: Point, y: Point },
    /// UTV2: `x` not below `y`, `x` in Up(f_s), `y` in Down(f_s).
    SliceUniquenessViolation { slice: Slice, x: Point, y: Point },
}

impl SutSolution {
    pub fn tag(&self) -> &'static str {
        match self {
            SutSolution::FixedPoint(_) => "UT",
            SutSolution::MonotonicityViolation { .. } => "UTV1",
            SutSolution::SliceUniquenessViolation { .. } => "UTV2",
        }
    }

    /// Proper solutions are fixed points; the rest are violations.
    pub fn is_proper(&self) -> bool {
        matches!(self, SutSolution::FixedPoint(_))
    }
}

impl fmt::Display for SutSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SutSolution::FixedPoint(x) => write!(f, "UT {x}"),
            SutSolution::MonotonicityViolation { x, y } => write!(f, "UTV1 {x} {y}"),
            SutSolution::SliceUniquenessViolation { slice, x, y } => {
                write!(f, "UTV2 {slice} {x} {y}")
            }
        }
    }
}

fn conform(spec: &LatticeSpec, p: &Point) -> Verdict {
    match spec.check(p) {
        Ok(()) => Verdict::Valid,
        Err(e) => Verdict::Invalid(Reason::MalformedPoint(e.to_string())),
    }
}

fn verify_fixed(f: &TarskiFunction, x: &Point) -> Verdict {
    if let Verdict::Invalid(r) = conform(f.spec(), x) {
        return Verdict::Invalid(r);
    }
    let fx = try_verdict!(f.eval(x), Reason::EvalError);
    invalid_if!(fx != *x, Reason::NotFixed(x.clone()));
    Verdict::Valid
}

fn verify_monotonicity_violation(f: &TarskiFunction, x: &Point, y: &Point) -> Verdict {
    for p in [x, y] {
        if let Verdict::Invalid(r) = conform(f.spec(), p) {
            return Verdict::Invalid(r);
        }
    }
    invalid_if!(!x.leq(y), Reason::PairNotComparable);
    let fx = try_verdict!(f.eval(x), Reason::EvalError);
    let fy = try_verdict!(f.eval(y), Reason::EvalError);
    invalid_if!(fx.leq(&fy), Reason::MonotoneOnPair);
    Verdict::Valid
}

fn verify_slice_violation(f: &TarskiFunction, s: &Slice, x: &Point, y: &Point) -> Verdict {
    if let Err(e) = f.spec().check_slice(s) {
        return Verdict::Invalid(Reason::MalformedSlice(e.to_string()));
    }
    for p in [x, y] {
        if let Verdict::Invalid(r) = conform(f.spec(), p) {
            return Verdict::Invalid(r);
        }
        invalid_if!(!s.contains(p), Reason::NotInSlice(p.clone()));
    }
    invalid_if!(x.leq(y), Reason::PairComparable);
    let fs = try_verdict!(restrict(f, s.clone()), Reason::EvalError);
    let cx = try_verdict!(classify(&fs, x), Reason::EvalError);
    invalid_if!(!cx.in_up, Reason::XNotInUp);
    let cy = try_verdict!(classify(&fs, y), Reason::EvalError);
    invalid_if!(!cy.in_down, Reason::YNotInDown);
    Verdict::Valid
}

/// Returns the UTV1 witness iff `x <= y` and `f(x)` is not below `f(y)`.
pub fn check_monotonicity_pair(f: &TarskiFunction, x: &Point, y: &Point) -> Result<Option<SutSolution>> {
    f.spec().check(x)?;
    f.spec().check(y)?;
    let sol = SutSolution::MonotonicityViolation {
        x: x.clone(),
        y: y.clone(),
    };
    Ok(verify_sut_solution(f, &sol).is_valid().then_some(sol))
}

/// Returns the UTV2 witness iff `x` is not below `y`, `x` is in Up(f_s) and
/// `y` is in Down(f_s). Points outside the slice are a domain error.
pub fn check_slice_uniqueness_violation(
    f: &TarskiFunction,
    s: &Slice,
    x: &Point,
    y: &Point,
) -> Result<Option<SutSolution>> {
    let fs = restrict(f, s.clone())?;
    let cx = classify(&fs, x)?;
    let cy = classify(&fs, y)?;
    Ok(
        (!x.leq(y) && cx.in_up && cy.in_down).then(|| SutSolution::SliceUniquenessViolation {
            slice: s.clone(),
            x: x.clone(),
            y: y.clone(),
        }),
    )
}

/// Checks any Super-Unique-Tarski solution against `f`.
pub fn verify_sut_solution(f: &TarskiFunction, sol: &SutSolution) -> Verdict {
    match sol {
        SutSolution::FixedPoint(x) => verify_fixed(f, x),
        SutSolution::MonotonicityViolation { x, y } => verify_monotonicity_violation(f, x, y),
        SutSolution::SliceUniquenessViolation { slice, x, y } => verify_slice_violation(f, slice, x, y),
    }
}

/// First pair `x <= y` of the domain (canonical order on `x`, then `y`) with
/// `g(x)` not below `g(y)`. Checks all `|domain|^2` pairs.
pub fn find_monotonicity_violation<G: LatticeMap + ?Sized>(g: &G) -> Result<Option<(Point, Point)>> {
    let pts: Vec<Point> = g.domain().collect();
    let images = pts.iter().map(|x| g.eval(x)).collect::<Result<Vec<_>>>()?;
    for (a, fa) in pts.iter().zip(&images) {
        for (b, fb) in pts.iter().zip(&images) {
            if a.leq(b) && !fa.leq(fb) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

pub fn is_monotone<G: LatticeMap + ?Sized>(g: &G) -> Result<bool> {
    Ok(find_monotonicity_violation(g)?.is_none())
}
