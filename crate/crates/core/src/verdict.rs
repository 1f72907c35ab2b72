use std::fmt;

use crate::lattice::Point;

/// Outcome of checking a witness. Invalid verdicts carry the first clause
/// that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Reason),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn reason(&self) -> Option<&Reason> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(r) => Some(r),
        }
    }

    /// Machine-readable code, `"valid"` for a valid verdict.
    pub fn code(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::Invalid(r) => r.code(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "valid"),
            Verdict::Invalid(r) => write!(f, "invalid: {r}"),
        }
    }
}

/// Why a witness was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// A point does not belong to the lattice.
    MalformedPoint(String),
    /// A slice has the wrong length or an out-of-range fixed value.
    MalformedSlice(String),
    /// Dimension index outside `1..=k`.
    BadIndex(usize),
    NotInSlice(Point),
    /// Evaluating the function or oracle failed.
    EvalError(String),
    NotFixed(Point),
    /// Monotonicity witness with `x` not below `y`.
    PairNotComparable,
    /// Monotonicity witness where `f(x) <= f(y)` actually holds.
    MonotoneOnPair,
    /// Uniqueness witness with `x <= y`.
    PairComparable,
    XNotInUp,
    YNotInDown,
    /// The slice is not admissible for the stated index.
    NotISlice,
    PointsEqual,
    /// A direction that must read zero does not.
    NonzeroDirection {
        point: Point,
        dim: usize,
    },
    /// `y_i != x_i + 1`.
    Adjacency,
    /// The index-`i` directions are not `up` at `x` and `down` at `y`.
    WrongDirection,
    /// The point is not on the boundary facing its direction.
    Boundary,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::MalformedPoint(_) => "malformed-point",
            Reason::MalformedSlice(_) => "malformed-slice",
            Reason::BadIndex(_) => "bad-index",
            Reason::NotInSlice(_) => "not-in-slice",
            Reason::EvalError(_) => "eval-error",
            Reason::NotFixed(_) => "not-fixed",
            Reason::PairNotComparable => "pair-not-comparable",
            Reason::MonotoneOnPair => "monotone-on-pair",
            Reason::PairComparable => "pair-comparable",
            Reason::XNotInUp => "x-not-in-up",
            Reason::YNotInDown => "y-not-in-down",
            Reason::NotISlice => "not-i-slice",
            Reason::PointsEqual => "points-equal",
            Reason::NonzeroDirection { .. } => "nonzero-direction",
            Reason::Adjacency => "adjacency",
            Reason::WrongDirection => "wrong-direction",
            Reason::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())?;
        match self {
            Reason::MalformedPoint(m) | Reason::MalformedSlice(m) | Reason::EvalError(m) => {
                write!(f, " ({m})")
            }
            Reason::BadIndex(i) => write!(f, " (index {i})"),
            Reason::NotInSlice(p) | Reason::NotFixed(p) => write!(f, " at {p}"),
            Reason::NonzeroDirection { point, dim } => write!(f, " at {point}, dimension {dim}"),
            _ => Ok(()),
        }
    }
}

/// Early-return helper: `invalid_if!(cond, reason)`.
macro_rules! invalid_if {
    ($cond:expr, $reason:expr) => {
        if $cond {
            return $crate::verdict::Verdict::Invalid($reason);
        }
    };
}

/// Unwraps a `Result`, turning the error into an invalid verdict.
macro_rules! try_verdict {
    ($res:expr, $wrap:expr) => {
        match $res {
            Ok(v) => v,
            Err(e) => return $crate::verdict::Verdict::Invalid($wrap(e.to_string())),
        }
    };
}

pub(crate) use invalid_if;
pub(crate) use try_verdict;
