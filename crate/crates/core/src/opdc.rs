//! OPDC instances: per-dimension direction oracles and verifiers for the
//! four solution types O1, OV1, OV2 and OV3.
//!
//! Each verifier follows the printed quantifier structure clause by clause:
//! OV1 asks for zero directions on the free dimensions only, while OV2 and
//! OV3 ask for zero on every dimension other than the stated index.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Point, Slice};
use crate::verdict::{invalid_if, try_verdict, Reason, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Zero,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Zero => "zero",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

type PerDim = dyn Fn(&Point, usize) -> Direction + Send + Sync;
type PerPoint = dyn Fn(&Point) -> Result<Vec<Direction>> + Send + Sync;

#[derive(Clone)]
enum Body {
    /// Row-major: `dirs[index_of(x) * k + (i - 1)]`.
    Table(Arc<[Direction]>),
    PerDim(Arc<PerDim>),
    PerPoint(Arc<PerPoint>),
}

/// The direction functions `D_1 .. D_k` of an OPDC instance.
#[derive(Clone)]
pub struct DirectionOracle {
    spec: LatticeSpec,
    body: Body,
}

impl fmt::Debug for DirectionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.body {
            Body::Table(_) => "table",
            Body::PerDim(_) => "per-dimension callback",
            Body::PerPoint(_) => "per-point callback",
        };
        f.debug_struct("DirectionOracle")
            .field("spec", &self.spec)
            .field("body", &kind)
            .finish()
    }
}

impl DirectionOracle {
    /// `rows[index_of(x)]` holds `[D_1(x), .., D_k(x)]`.
    pub fn from_table(spec: LatticeSpec, rows: Vec<Vec<Direction>>) -> Result<Self> {
        if rows.len() != spec.size() {
            return Err(Error::TableSize {
                expected: spec.size(),
                got: rows.len(),
            });
        }
        let mut flat = Vec::with_capacity(spec.size() * spec.k());
        for row in rows {
            if row.len() != spec.k() {
                return Err(Error::DimensionMismatch {
                    expected: spec.k(),
                    got: row.len(),
                });
            }
            flat.extend(row);
        }
        Ok(Self {
            spec,
            body: Body::Table(flat.into()),
        })
    }

    /// `f(x, i)` is `D_i(x)` with `i` 1-based. Must be pure.
    pub fn from_fn<F>(spec: LatticeSpec, f: F) -> Self
    where
        F: Fn(&Point, usize) -> Direction + Send + Sync + 'static,
    {
        Self {
            spec,
            body: Body::PerDim(Arc::new(f)),
        }
    }

    /// `f(x)` yields all `k` directions at once. Must be pure.
    pub(crate) fn from_point_fn<F>(spec: LatticeSpec, f: F) -> Self
    where
        F: Fn(&Point) -> Result<Vec<Direction>> + Send + Sync + 'static,
    {
        Self {
            spec,
            body: Body::PerPoint(Arc::new(f)),
        }
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    /// `D_i(x)`.
    pub fn direction(&self, x: &Point, i: usize) -> Result<Direction> {
        self.spec.check(x)?;
        self.spec.check_index(i)?;
        match &self.body {
            Body::Table(t) => Ok(t[self.spec.index_of(x) * self.spec.k() + i - 1]),
            Body::PerDim(f) => Ok(f(x, i)),
            Body::PerPoint(f) => Ok(f(x)?[i - 1]),
        }
    }

    /// `[D_1(x), .., D_k(x)]`.
    pub fn directions(&self, x: &Point) -> Result<Vec<Direction>> {
        self.spec.check(x)?;
        let k = self.spec.k();
        match &self.body {
            Body::Table(t) => {
                let base = self.spec.index_of(x) * k;
                Ok(t[base..base + k].to_vec())
            }
            Body::PerDim(f) => Ok((1..=k).map(|i| f(x, i)).collect()),
            Body::PerPoint(f) => {
                let d = f(x)?;
                if d.len() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        got: d.len(),
                    });
                }
                Ok(d)
            }
        }
    }

    /// Every row in canonical order.
    pub fn rows(&self) -> Result<Vec<Vec<Direction>>> {
        self.spec.points().map(|x| self.directions(&x)).collect()
    }

    /// Table-backed copy.
    pub fn materialize(&self) -> Result<Self> {
        Self::from_table(self.spec, self.rows()?)
    }
}

/// A solution of an OPDC instance. Dimension indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OpdcSolution {
    /// O1: every direction is zero at `x`.
    AllZero(Point),
    /// OV1: two distinct points of the slice that are zero on every free dimension.
    TwoZeroPoints { slice: Slice, x: Point, y: Point },
    /// OV2: an up reading at `x` next to a down reading at `y` in dimension `i`.
    AdjacentUpDown { slice: Slice, x: Point, y: Point, i: usize },
    /// OV3: a boundary point whose direction `i` points out of the grid.
    BoundaryEscape { slice: Slice, x: Point, i: usize },
}

impl OpdcSolution {
    pub fn tag(&self) -> &'static str {
        match self {
            OpdcSolution::AllZero(_) => "O1",
            OpdcSolution::TwoZeroPoints { .. } => "OV1",
            OpdcSolution::AdjacentUpDown { .. } => "OV2",
            OpdcSolution::BoundaryEscape { .. } => "OV3",
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, OpdcSolution::AllZero(_))
    }
}

impl fmt::Display for OpdcSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpdcSolution::AllZero(x) => write!(f, "O1 {x}"),
            OpdcSolution::TwoZeroPoints { slice, x, y } => write!(f, "OV1 {slice} {x} {y}"),
            OpdcSolution::AdjacentUpDown { slice, x, y, i } => {
                write!(f, "OV2 {slice} {x} {y} i={i}")
            }
            OpdcSolution::BoundaryEscape { slice, x, i } => write!(f, "OV3 {slice} {x} i={i}"),
        }
    }
}

/// Which slices the violation verifiers admit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SliceRule {
    /// One-permutation OPDC. OV2 and OV3 with index `i` need an `i`-slice
    /// (`s_j` free for all `j <= i`); OV1 needs the free positions to be
    /// exactly `1..=i` for some `i`.
    #[default]
    ISlice,
    /// All-permutation variant: any slice is admissible.
    AnySlice,
}

impl SliceRule {
    fn admits_ov1(self, s: &Slice) -> bool {
        match self {
            SliceRule::ISlice => s.is_prefix_free(),
            SliceRule::AnySlice => true,
        }
    }

    fn admits_indexed(self, s: &Slice, i: usize) -> bool {
        match self {
            SliceRule::ISlice => s.is_i_slice(i),
            SliceRule::AnySlice => true,
        }
    }

    pub fn check_ov1(self, d: &DirectionOracle, s: &Slice, x: &Point, y: &Point) -> Verdict {
        if let Some(r) = malformed_slice(d, s).or_else(|| malformed_points(d, &[x, y])) {
            return Verdict::Invalid(r);
        }
        invalid_if!(!self.admits_ov1(s), Reason::NotISlice);
        for p in [x, y] {
            invalid_if!(!s.contains(p), Reason::NotInSlice(p.clone()));
        }
        invalid_if!(x == y, Reason::PointsEqual);
        for p in [x, y] {
            let dirs = try_verdict!(d.directions(p), Reason::EvalError);
            for i in s.free_dims() {
                invalid_if!(
                    dirs[i - 1] != Direction::Zero,
                    Reason::NonzeroDirection {
                        point: p.clone(),
                        dim: i
                    }
                );
            }
        }
        Verdict::Valid
    }

    pub fn check_ov2(self, d: &DirectionOracle, s: &Slice, x: &Point, y: &Point, i: usize) -> Verdict {
        if let Some(r) = malformed_slice(d, s).or_else(|| malformed_points(d, &[x, y])) {
            return Verdict::Invalid(r);
        }
        invalid_if!(d.spec().check_index(i).is_err(), Reason::BadIndex(i));
        invalid_if!(!self.admits_indexed(s, i), Reason::NotISlice);
        for p in [x, y] {
            invalid_if!(!s.contains(p), Reason::NotInSlice(p.clone()));
        }
        invalid_if!(y.get(i) != x.get(i) + 1, Reason::Adjacency);
        let dx = try_verdict!(d.directions(x), Reason::EvalError);
        let dy = try_verdict!(d.directions(y), Reason::EvalError);
        for (p, dirs) in [(x, &dx), (y, &dy)] {
            if let Some(r) = nonzero_except(p, dirs, i) {
                return Verdict::Invalid(r);
            }
        }
        invalid_if!(
            dx[i - 1] != Direction::Up || dy[i - 1] != Direction::Down,
            Reason::WrongDirection
        );
        Verdict::Valid
    }

    pub fn check_ov3(self, d: &DirectionOracle, s: &Slice, x: &Point, i: usize) -> Verdict {
        if let Some(r) = malformed_slice(d, s).or_else(|| malformed_points(d, &[x])) {
            return Verdict::Invalid(r);
        }
        invalid_if!(d.spec().check_index(i).is_err(), Reason::BadIndex(i));
        invalid_if!(!self.admits_indexed(s, i), Reason::NotISlice);
        invalid_if!(!s.contains(x), Reason::NotInSlice(x.clone()));
        let n = d.spec().n();
        let xi = x.get(i);
        invalid_if!(xi != 1 && xi != n, Reason::Boundary);
        let dirs = try_verdict!(d.directions(x), Reason::EvalError);
        if let Some(r) = nonzero_except(x, &dirs, i) {
            return Verdict::Invalid(r);
        }
        let escapes = (xi == 1 && dirs[i - 1] == Direction::Down) || (xi == n && dirs[i - 1] == Direction::Up);
        invalid_if!(!escapes, Reason::Boundary);
        Verdict::Valid
    }

    pub fn verify(self, d: &DirectionOracle, sol: &OpdcSolution) -> Verdict {
        match sol {
            OpdcSolution::AllZero(x) => {
                if let Some(r) = malformed_points(d, &[x]) {
                    return Verdict::Invalid(r);
                }
                let dirs = try_verdict!(d.directions(x), Reason::EvalError);
                if let Some(r) = nonzero_except(x, &dirs, 0) {
                    return Verdict::Invalid(r);
                }
                Verdict::Valid
            }
            OpdcSolution::TwoZeroPoints { slice, x, y } => self.check_ov1(d, slice, x, y),
            OpdcSolution::AdjacentUpDown { slice, x, y, i } => self.check_ov2(d, slice, x, y, *i),
            OpdcSolution::BoundaryEscape { slice, x, i } => self.check_ov3(d, slice, x, *i),
        }
    }
}

fn malformed_slice(d: &DirectionOracle, s: &Slice) -> Option<Reason> {
    d.spec()
        .check_slice(s)
        .err()
        .map(|e| Reason::MalformedSlice(e.to_string()))
}

fn malformed_points(d: &DirectionOracle, pts: &[&Point]) -> Option<Reason> {
    pts.iter()
        .find_map(|p| d.spec().check(p).err().map(|e| Reason::MalformedPoint(e.to_string())))
}

/// First dimension other than `skip` (1-based; 0 skips nothing) that is not zero.
fn nonzero_except(p: &Point, dirs: &[Direction], skip: usize) -> Option<Reason> {
    dirs.iter()
        .enumerate()
        .find(|(j, dir)| j + 1 != skip && **dir != Direction::Zero)
        .map(|(j, _)| Reason::NonzeroDirection {
            point: p.clone(),
            dim: j + 1,
        })
}

/// O1: every direction at `x` is zero.
pub fn check_o1(d: &DirectionOracle, x: &Point) -> Result<bool> {
    Ok(d.directions(x)?.iter().all(|dir| *dir == Direction::Zero))
}

pub fn check_ov1(d: &DirectionOracle, s: &Slice, x: &Point, y: &Point) -> Verdict {
    SliceRule::ISlice.check_ov1(d, s, x, y)
}

pub fn check_ov2(d: &DirectionOracle, s: &Slice, x: &Point, y: &Point, i: usize) -> Verdict {
    SliceRule::ISlice.check_ov2(d, s, x, y, i)
}

pub fn check_ov3(d: &DirectionOracle, s: &Slice, x: &Point, i: usize) -> Verdict {
    SliceRule::ISlice.check_ov3(d, s, x, i)
}

/// Verifies any OPDC solution under the one-permutation slice rule.
pub fn verify_opdc_solution(d: &DirectionOracle, sol: &OpdcSolution) -> Verdict {
    SliceRule::ISlice.verify(d, sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_attractor, gen_unique_not_super};
    use crate::lattice::{
        slice_points,
        SliceEntry::{Fixed, Free},
    };
    use crate::reduction::reduce;
    use crate::tarski::TarskiFunction;
    use std::sync::Mutex;
    use Direction::{Down, Up, Zero};

    fn p(c: &[u32]) -> Point {
        Point::new(c.to_vec())
    }

    fn spec(n: u32, k: usize) -> LatticeSpec {
        LatticeSpec::new(n, k).unwrap()
    }

    fn id22() -> DirectionOracle {
        reduce(&TarskiFunction::identity(spec(2, 2))).oracle().clone()
    }

    fn att3() -> DirectionOracle {
        reduce(&gen_attractor(spec(3, 2), &p(&[2, 2])).unwrap())
            .oracle()
            .clone()
    }

    fn nm1() -> DirectionOracle {
        let f = TarskiFunction::from_table(spec(3, 1), vec![p(&[3]), p(&[1]), p(&[1])]).unwrap();
        reduce(&f).oracle().clone()
    }

    #[test]
    fn table_oracle_validation() {
        assert!(DirectionOracle::from_table(spec(2, 1), vec![vec![Up]]).is_err());
        assert!(DirectionOracle::from_table(spec(2, 1), vec![vec![Up], vec![Up, Up]]).is_err());
        let d = DirectionOracle::from_table(spec(2, 1), vec![vec![Up], vec![Down]]).unwrap();
        assert_eq!(d.direction(&p(&[2]), 1).unwrap(), Down);
        assert!(d.direction(&p(&[2]), 2).is_err());
        assert!(d.direction(&p(&[3]), 1).is_err());
    }

    #[test]
    fn o1_examples() {
        assert!(check_o1(&id22(), &p(&[1, 2])).unwrap());
        assert!(check_o1(&att3(), &p(&[2, 2])).unwrap());
        assert!(!check_o1(&att3(), &p(&[1, 1])).unwrap());
        assert_eq!(att3().directions(&p(&[1, 1])).unwrap(), vec![Up, Up]);
    }

    #[test]
    fn ov1_examples() {
        assert_eq!(
            check_ov1(&id22(), &Slice::new(vec![Free, Free]), &p(&[1, 1]), &p(&[2, 2])),
            Verdict::Valid
        );
        let uns = reduce(&gen_unique_not_super(spec(2, 2)).unwrap()).oracle().clone();
        assert_eq!(
            check_ov1(&uns, &Slice::new(vec![Free, Fixed(1)]), &p(&[1, 1]), &p(&[2, 1])),
            Verdict::Valid
        );
        let d = att3();
        for s in d.spec().slices() {
            for x in slice_points(d.spec(), &s) {
                for y in slice_points(d.spec(), &s) {
                    assert!(!check_ov1(&d, &s, &x, &y).is_valid());
                }
            }
        }
    }

    #[test]
    fn ov1_reason_codes() {
        let d = id22();
        let full = Slice::new(vec![Free, Free]);
        assert_eq!(check_ov1(&d, &full, &p(&[1, 1]), &p(&[1, 1])).code(), "points-equal");
        assert_eq!(
            check_ov1(&d, &Slice::new(vec![Fixed(1), Free]), &p(&[1, 1]), &p(&[1, 2])).code(),
            "not-i-slice"
        );
        assert!(SliceRule::AnySlice
            .check_ov1(&d, &Slice::new(vec![Fixed(1), Free]), &p(&[1, 1]), &p(&[1, 2]))
            .is_valid());
        assert_eq!(
            check_ov1(&d, &Slice::new(vec![Free, Fixed(1)]), &p(&[1, 1]), &p(&[1, 2])).code(),
            "not-in-slice"
        );
        assert_eq!(
            check_ov1(&att3(), &Slice::new(vec![Free, Free]), &p(&[1, 1]), &p(&[2, 2])).code(),
            "nonzero-direction"
        );
        assert_eq!(check_ov1(&d, &full, &p(&[1, 1]), &p(&[2, 3])).code(), "malformed-point");
    }

    #[test]
    fn ov2_examples() {
        assert_eq!(
            check_ov2(&nm1(), &Slice::new(vec![Free]), &p(&[1]), &p(&[2]), 1),
            Verdict::Valid
        );
        let d = att3();
        for s in d.spec().slices() {
            for x in slice_points(d.spec(), &s) {
                for y in slice_points(d.spec(), &s) {
                    for i in 1..=2 {
                        assert!(!check_ov2(&d, &s, &x, &y, i).is_valid());
                    }
                }
            }
        }
        let line = DirectionOracle::from_table(spec(3, 1), vec![vec![Up]; 3]).unwrap();
        assert_eq!(
            check_ov2(&line, &Slice::new(vec![Free]), &p(&[1]), &p(&[3]), 1).code(),
            "adjacency"
        );
    }

    #[test]
    fn ov2_reason_codes() {
        let d = nm1();
        let s = Slice::new(vec![Free]);
        assert_eq!(check_ov2(&d, &s, &p(&[2]), &p(&[3]), 1).code(), "wrong-direction");
        assert_eq!(check_ov2(&d, &s, &p(&[1]), &p(&[2]), 2).code(), "bad-index");
        let two = DirectionOracle::from_table(
            spec(2, 2),
            vec![vec![Up, Zero], vec![Down, Up], vec![Up, Zero], vec![Down, Zero]],
        )
        .unwrap();
        let full = Slice::new(vec![Free, Free]);
        assert_eq!(
            check_ov2(&two, &full, &p(&[1, 1]), &p(&[2, 1]), 1).code(),
            "nonzero-direction"
        );
        assert!(check_ov2(&two, &full, &p(&[1, 2]), &p(&[2, 2]), 1).is_valid());
        // printed clause does not require the other free coordinates to agree
        assert!(check_ov2(&two, &full, &p(&[1, 1]), &p(&[2, 2]), 1).is_valid());
        assert_eq!(
            check_ov2(&two, &Slice::new(vec![Fixed(1), Free]), &p(&[1, 1]), &p(&[1, 2]), 2).code(),
            "not-i-slice"
        );
    }

    #[test]
    fn ov3_examples() {
        let hand = DirectionOracle::from_table(spec(2, 1), vec![vec![Down], vec![Zero]]).unwrap();
        assert_eq!(check_ov3(&hand, &Slice::new(vec![Free]), &p(&[1]), 1), Verdict::Valid);
        let any = DirectionOracle::from_fn(spec(3, 1), |_, _| Up);
        assert_eq!(check_ov3(&any, &Slice::new(vec![Free]), &p(&[2]), 1).code(), "boundary");
        assert!(check_ov3(&any, &Slice::new(vec![Free]), &p(&[3]), 1).is_valid());
        assert_eq!(check_ov3(&any, &Slice::new(vec![Free]), &p(&[1]), 1).code(), "boundary");
    }

    #[test]
    fn verify_dispatch() {
        assert!(verify_opdc_solution(&id22(), &OpdcSolution::AllZero(p(&[2, 1]))).is_valid());
        assert_eq!(
            verify_opdc_solution(&att3(), &OpdcSolution::AllZero(p(&[1, 1]))).code(),
            "nonzero-direction"
        );
        assert!(verify_opdc_solution(
            &nm1(),
            &OpdcSolution::AdjacentUpDown {
                slice: Slice::new(vec![Free]),
                x: p(&[1]),
                y: p(&[2]),
                i: 1
            }
        )
        .is_valid());
        for x in [p(&[1]), p(&[2]), p(&[3])] {
            assert!(!verify_opdc_solution(
                &nm1(),
                &OpdcSolution::BoundaryEscape {
                    slice: Slice::new(vec![Free]),
                    x,
                    i: 1
                }
            )
            .is_valid());
        }
    }

    #[test]
    fn checkers_validate_independently() {
        // 2x1 hand-built oracles where exactly one solution type validates
        let s = Slice::new(vec![Free]);
        let cases = [
            (vec![vec![Zero], vec![Down]], "O1"),
            (vec![vec![Zero], vec![Zero]], "OV1"),
            (vec![vec![Up], vec![Down]], "OV2"),
            (vec![vec![Down], vec![Down]], "OV3"),
        ];
        for (rows, expected) in cases {
            let d = DirectionOracle::from_table(spec(2, 1), rows).unwrap();
            let mut valid_tags: Vec<&str> = Vec::new();
            let candidates = vec![
                OpdcSolution::AllZero(p(&[1])),
                OpdcSolution::AllZero(p(&[2])),
                OpdcSolution::TwoZeroPoints {
                    slice: s.clone(),
                    x: p(&[1]),
                    y: p(&[2]),
                },
                OpdcSolution::AdjacentUpDown {
                    slice: s.clone(),
                    x: p(&[1]),
                    y: p(&[2]),
                    i: 1,
                },
                OpdcSolution::BoundaryEscape {
                    slice: s.clone(),
                    x: p(&[1]),
                    i: 1,
                },
                OpdcSolution::BoundaryEscape {
                    slice: s.clone(),
                    x: p(&[2]),
                    i: 1,
                },
            ];
            for sol in &candidates {
                if verify_opdc_solution(&d, sol).is_valid() {
                    valid_tags.push(sol.tag());
                }
            }
            valid_tags.dedup();
            match expected {
                // the OV1 fixture also has two all-zero points
                "OV1" => assert_eq!(valid_tags, vec!["O1", "OV1"]),
                _ => assert_eq!(valid_tags, vec![expected], "{expected}"),
            }
        }
    }

    #[test]
    fn ov1_only_fixture() {
        // zero on the free dimension 1 at both points, but D_2 nonzero, so no O1
        let d = DirectionOracle::from_table(
            spec(2, 2),
            vec![vec![Zero, Up], vec![Zero, Up], vec![Up, Down], vec![Up, Down]],
        )
        .unwrap();
        let s = Slice::new(vec![Free, Fixed(1)]);
        assert!(check_ov1(&d, &s, &p(&[1, 1]), &p(&[2, 1])).is_valid());
        for x in d.spec().points() {
            assert!(!check_o1(&d, &x).unwrap());
        }
    }

    #[test]
    fn verifiers_only_query_witness_points() {
        let seen = std::sync::Arc::new(Mutex::new(Vec::<Point>::new()));
        let log = seen.clone();
        let d = DirectionOracle::from_fn(spec(3, 2), move |x, _| {
            log.lock().unwrap().push(x.clone());
            Zero
        });
        let s = Slice::new(vec![Free, Fixed(2)]);
        let sols = [
            OpdcSolution::AllZero(p(&[1, 1])),
            OpdcSolution::TwoZeroPoints {
                slice: s.clone(),
                x: p(&[1, 2]),
                y: p(&[3, 2]),
            },
            OpdcSolution::AdjacentUpDown {
                slice: s.clone(),
                x: p(&[1, 2]),
                y: p(&[2, 2]),
                i: 1,
            },
            OpdcSolution::BoundaryEscape {
                slice: s,
                x: p(&[3, 2]),
                i: 1,
            },
        ];
        for sol in &sols {
            seen.lock().unwrap().clear();
            let _ = verify_opdc_solution(&d, sol);
            let allowed: Vec<Point> = match sol {
                OpdcSolution::AllZero(x) => vec![x.clone()],
                OpdcSolution::TwoZeroPoints { x, y, .. } | OpdcSolution::AdjacentUpDown { x, y, .. } => {
                    vec![x.clone(), y.clone()]
                }
                OpdcSolution::BoundaryEscape { x, .. } => vec![x.clone()],
            };
            let seen = seen.lock().unwrap();
            assert!(!seen.is_empty());
            assert!(seen.iter().all(|q| allowed.contains(q)), "{sol}: {seen:?}");
        }
    }
}
