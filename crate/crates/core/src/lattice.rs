//! The grid lattice `{1..n}^k`, its points, slices and the restriction of a
//! function to a slice.
//!
//! Coordinates are 1-based throughout. Enumeration always runs with
//! dimension 1 varying fastest, which is also the order of the canonical
//! table index `sum_i (x_i - 1) * n^(i-1)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::tarski::{LatticeMap, TarskiFunction};

/// Side length `n` and dimension count `k` of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    n: u32,
    k: usize,
    size: usize,
}

impl LatticeSpec {
    /// Rejects `n = 0`, `k = 0` and any spec whose point count overflows `usize`.
    pub fn new(n: u32, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidSpec { n, k });
        }
        let mut size: usize = 1;
        for _ in 0..k {
            size = size.checked_mul(n as usize).ok_or(Error::InvalidSpec { n, k })?;
        }
        Ok(Self { n, k, size })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `n^k`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of slices, `(n + 1)^k`, or `None` on overflow.
    pub fn slice_count(&self) -> Option<usize> {
        (0..self.k).try_fold(1usize, |acc, _| acc.checked_mul(self.n as usize + 1))
    }

    /// Builds a point, validating length and range.
    pub fn point(&self, coords: impl Into<Vec<u32>>) -> Result<Point> {
        let p = Point(coords.into());
        self.check(&p)?;
        Ok(p)
    }

    /// Checks that `p` is a point of this lattice.
    pub fn check(&self, p: &Point) -> Result<()> {
        if p.0.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: p.0.len(),
            });
        }
        for (d, &v) in p.0.iter().enumerate() {
            if v == 0 || v > self.n {
                return Err(Error::CoordinateOutOfRange {
                    dim: d + 1,
                    value: v,
                    n: self.n,
                });
            }
        }
        Ok(())
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.check(p).is_ok()
    }

    /// Checks that `i` is a valid 1-based dimension index.
    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.k {
            Err(Error::IndexOutOfRange { index: i, k: self.k })
        } else {
            Ok(())
        }
    }

    /// Canonical table index of a (valid) point.
    pub fn index_of(&self, p: &Point) -> usize {
        p.0.iter()
            .rev()
            .fold(0usize, |acc, &v| acc * self.n as usize + (v as usize - 1))
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn point_at(&self, mut index: usize) -> Point {
        debug_assert!(index < self.size);
        let n = self.n as usize;
        let coords = (0..self.k)
            .map(|_| {
                let v = index % n + 1;
                index /= n;
                v as u32
            })
            .collect();
        Point(coords)
    }

    /// All-ones point.
    pub fn bottom(&self) -> Point {
        Point(vec![1; self.k])
    }

    /// All-`n` point.
    pub fn top(&self) -> Point {
        Point(vec![self.n; self.k])
    }

    /// Every point in canonical order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size).map(move |i| self.point_at(i))
    }

    /// The slice leaving every coordinate free.
    pub fn full_slice(&self) -> Slice {
        Slice(vec![SliceEntry::Free; self.k])
    }

    /// Every slice, `(n + 1)^k` of them. Each entry runs `Free, 1, .., n`
    /// with dimension 1 varying fastest.
    pub fn slices(&self) -> impl Iterator<Item = Slice> + '_ {
        let total = self.slice_count().expect("slice count overflows usize");
        let base = self.n as usize + 1;
        (0..total).map(move |mut idx| {
            let entries = (0..self.k)
                .map(|_| {
                    let v = idx % base;
                    idx /= base;
                    if v == 0 {
                        SliceEntry::Free
                    } else {
                        SliceEntry::Fixed(v as u32)
                    }
                })
                .collect();
            Slice(entries)
        })
    }

    /// Checks that `s` has `k` entries and every fixed value is in range.
    pub fn check_slice(&self, s: &Slice) -> Result<()> {
        if s.0.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: s.0.len(),
            });
        }
        for (d, e) in s.0.iter().enumerate() {
            if let SliceEntry::Fixed(v) = *e {
                if v == 0 || v > self.n {
                    return Err(Error::CoordinateOutOfRange {
                        dim: d + 1,
                        value: v,
                        n: self.n,
                    });
                }
            }
        }
        Ok(())
    }

    /// Validates and builds a slice.
    pub fn slice(&self, entries: impl Into<Vec<SliceEntry>>) -> Result<Slice> {
        let s = Slice(entries.into());
        self.check_slice(&s)?;
        Ok(s)
    }
}

/// A point of the lattice. Coordinates are 1-based.
///
/// The `Ord` impl is a total order used for map keys and tie-breaking:
/// colexicographic, so the last coordinate is most significant and sorting
/// agrees with canonical enumeration order. It is unrelated to the lattice
/// order, which is [`Point::leq`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<u32>);

impl Point {
    /// Builds a point without range checks; validate with [`LatticeSpec::check`].
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Point(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate at the 1-based dimension `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    /// Lattice order: every coordinate of `self` is at most the matching
    /// coordinate of `other`.
    ///
    /// Panics when the points have different dimension; use
    /// [`try_leq`](Self::try_leq) for unvalidated input.
    pub fn leq(&self, other: &Point) -> bool {
        self.try_leq(other).expect("leq on points of different dimension")
    }

    pub fn try_leq(&self, other: &Point) -> Result<bool> {
        if self.0.len() != other.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                got: other.0.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `self <= other` and `self != other`.
    pub fn lt(&self, other: &Point) -> bool {
        self != other && self.leq(other)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// One slice coordinate: fixed to a value, or free (`*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceEntry {
    Free,
    Fixed(u32),
}

/// A slice `s`: some coordinates fixed, the rest free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice(Vec<SliceEntry>);

impl Slice {
    /// Builds a slice without range checks; validate with [`LatticeSpec::check_slice`].
    pub fn new(entries: impl Into<Vec<SliceEntry>>) -> Self {
        Slice(entries.into())
    }

    pub fn entries(&self) -> &[SliceEntry] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Entry at the 1-based dimension `i`.
    pub fn entry(&self, i: usize) -> SliceEntry {
        self.0[i - 1]
    }

    pub fn is_free(&self, i: usize) -> bool {
        self.0[i - 1] == SliceEntry::Free
    }

    /// 1-based indices of the free dimensions.
    pub fn free_dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == SliceEntry::Free)
            .map(|(d, _)| d + 1)
    }

    pub fn free_count(&self) -> usize {
        self.free_dims().count()
    }

    /// Whether `p` lies in the sublattice of this slice (fixed coordinates
    /// match). Range of free coordinates is not checked here.
    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && self.0.iter().zip(p.coords()).all(|(e, &v)| match *e {
                SliceEntry::Free => true,
                SliceEntry::Fixed(s) => s == v,
            })
    }

    /// True iff every entry at a position `j <= i` is free.
    pub fn is_i_slice(&self, i: usize) -> bool {
        i <= self.0.len() && self.0[..i].iter().all(|e| *e == SliceEntry::Free)
    }

    /// True iff the free positions are exactly `1..=i` for some `i >= 1`,
    /// i.e. the fixed positions form a suffix and at least one position is free.
    pub fn is_prefix_free(&self) -> bool {
        let free = self.0.iter().take_while(|e| **e == SliceEntry::Free).count();
        free >= 1 && self.0[free..].iter().all(|e| *e != SliceEntry::Free)
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match e {
                SliceEntry::Free => write!(f, "*")?,
                SliceEntry::Fixed(v) => write!(f, "{v}")?,
            }
        }
        write!(f, ")")
    }
}

/// Points of the sublattice of `s`, each once, with the first free dimension
/// varying fastest.
pub fn slice_points(spec: &LatticeSpec, s: &Slice) -> SlicePoints {
    let free: Vec<usize> = s.free_dims().map(|d| d - 1).collect();
    let total = (spec.n as usize)
        .checked_pow(free.len() as u32)
        .expect("slice size overflows usize");
    let start = s
        .entries()
        .iter()
        .map(|e| match *e {
            SliceEntry::Free => 1,
            SliceEntry::Fixed(v) => v,
        })
        .collect();
    SlicePoints {
        n: spec.n,
        free,
        current: start,
        remaining: total,
    }
}

/// Iterator returned by [`slice_points`].
#[derive(Debug, Clone)]
pub struct SlicePoints {
    n: u32,
    free: Vec<usize>,
    current: Vec<u32>,
    remaining: usize,
}

impl Iterator for SlicePoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = Point(self.current.clone());
        for &d in &self.free {
            if self.current[d] < self.n {
                self.current[d] += 1;
                break;
            }
            self.current[d] = 1;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for SlicePoints {}

/// `f_s`: free coordinates follow `f`, fixed coordinates are copied from the slice.
#[derive(Debug, Clone)]
pub struct RestrictedFunction<'a> {
    base: &'a TarskiFunction,
    slice: Slice,
}

impl<'a> RestrictedFunction<'a> {
    pub fn base(&self) -> &'a TarskiFunction {
        self.base
    }
}

/// Restricts `f` to the slice `s`.
pub fn restrict(f: &TarskiFunction, s: Slice) -> Result<RestrictedFunction<'_>> {
    f.spec().check_slice(&s)?;
    Ok(RestrictedFunction { base: f, slice: s })
}

impl LatticeMap for RestrictedFunction<'_> {
    fn spec(&self) -> &LatticeSpec {
        self.base.spec()
    }

    fn slice(&self) -> Slice {
        self.slice.clone()
    }

    fn eval(&self, x: &Point) -> Result<Point> {
        self.base.spec().check(x)?;
        if !self.slice.contains(x) {
            return Err(Error::NotInSlice {
                point: x.to_string(),
                slice: self.slice.to_string(),
            });
        }
        let fx = self.base.eval(x)?;
        let coords = self
            .slice
            .entries()
            .iter()
            .zip(fx.coords())
            .map(|(e, &v)| match *e {
                SliceEntry::Free => v,
                SliceEntry::Fixed(s) => s,
            })
            .collect::<Vec<_>>();
        Ok(Point(coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_attractor, gen_unique_not_super};
    use SliceEntry::{Fixed, Free};

    fn p(c: &[u32]) -> Point {
        Point::new(c.to_vec())
    }

    #[test]
    fn leq_examples() {
        assert!(p(&[1, 2]).leq(&p(&[2, 2])));
        assert!(!p(&[2, 1]).leq(&p(&[1, 2])));
        assert!(!p(&[1, 2]).leq(&p(&[2, 1])));
        assert!(p(&[2, 2]).leq(&p(&[2, 2])));
    }

    #[test]
    fn leq_rejects_dimension_mismatch() {
        assert_eq!(
            p(&[1, 2]).try_leq(&p(&[1])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn leq_is_a_partial_order() {
        for n in 1..=4 {
            for k in 1..=3 {
                let spec = LatticeSpec::new(n, k).unwrap();
                let pts: Vec<_> = spec.points().collect();
                for a in &pts {
                    assert!(a.leq(a));
                    for b in &pts {
                        if a.leq(b) && b.leq(a) {
                            assert_eq!(a, b);
                        }
                        for c in &pts {
                            if a.leq(b) && b.leq(c) {
                                assert!(a.leq(c));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(LatticeSpec::new(0, 2).is_err());
        assert!(LatticeSpec::new(2, 0).is_err());
        assert!(LatticeSpec::new(u32::MAX, 8).is_err());
        assert!(LatticeSpec::new(2, 64).is_err());
        let spec = LatticeSpec::new(3, 2).unwrap();
        assert_eq!(spec.size(), 9);
        assert_eq!(spec.slice_count(), Some(16));
        assert!(spec.point(vec![0, 1]).is_err());
        assert!(spec.point(vec![4, 1]).is_err());
        assert!(spec.point(vec![1]).is_err());
    }

    #[test]
    fn canonical_index_round_trips_and_matches_ord() {
        let spec = LatticeSpec::new(3, 3).unwrap();
        let pts: Vec<_> = spec.points().collect();
        for (i, q) in pts.iter().enumerate() {
            assert_eq!(spec.index_of(q), i);
        }
        assert_eq!(pts[1], p(&[2, 1, 1]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
    }

    #[test]
    fn slice_points_examples() {
        let s22 = LatticeSpec::new(2, 2).unwrap();
        let got: Vec<_> = slice_points(&s22, &Slice::new(vec![Free, Fixed(1)])).collect();
        assert_eq!(got, vec![p(&[1, 1]), p(&[2, 1])]);
        let got: Vec<_> = slice_points(&s22, &Slice::new(vec![Fixed(2), Fixed(2)])).collect();
        assert_eq!(got, vec![p(&[2, 2])]);
        let s32 = LatticeSpec::new(3, 2).unwrap();
        let got: Vec<_> = slice_points(&s32, &s32.full_slice()).collect();
        assert_eq!(got, s32.points().collect::<Vec<_>>());
    }

    #[test]
    fn slice_points_cardinality_and_membership() {
        let spec = LatticeSpec::new(3, 3).unwrap();
        for s in spec.slices() {
            let pts: Vec<_> = slice_points(&spec, &s).collect();
            assert_eq!(pts.len(), 3usize.pow(s.free_count() as u32));
            let mut dedup = pts.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), pts.len());
            let brute: Vec<_> = spec.points().filter(|q| s.contains(q)).collect();
            assert_eq!(dedup, brute);
        }
    }

    #[test]
    fn i_slice_examples() {
        assert!(Slice::new(vec![Free, Free, Fixed(3)]).is_i_slice(2));
        assert!(!Slice::new(vec![Free, Fixed(1), Free]).is_i_slice(2));
        assert!(Slice::new(vec![Free, Free]).is_i_slice(2));
        assert!(Slice::new(vec![Free, Free]).is_i_slice(1));
    }

    #[test]
    fn i_slice_matches_definition_exhaustively() {
        for k in 1..=3 {
            let spec = LatticeSpec::new(2, k).unwrap();
            for s in spec.slices() {
                for i in 1..=k {
                    let expected = (1..=i).all(|j| s.entry(j) == Free);
                    assert_eq!(s.is_i_slice(i), expected, "{s} i={i}");
                }
                let prefix = (1..=k).any(|i| (1..=i).all(|j| s.is_free(j)) && (i + 1..=k).all(|j| !s.is_free(j)));
                assert_eq!(s.is_prefix_free(), prefix, "{s}");
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let spec = LatticeSpec::new(2, 2).unwrap();
        let id = TarskiFunction::identity(spec);
        let r = restrict(&id, Slice::new(vec![Free, Fixed(1)])).unwrap();
        assert_eq!(r.eval(&p(&[2, 1])).unwrap(), p(&[2, 1]));

        let uns = gen_unique_not_super(spec).unwrap();
        let r = restrict(&uns, Slice::new(vec![Free, Fixed(1)])).unwrap();
        assert_eq!(r.eval(&p(&[1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(r.eval(&p(&[2, 1])).unwrap(), p(&[2, 1]));

        let s32 = LatticeSpec::new(3, 2).unwrap();
        let att = gen_attractor(s32, &p(&[2, 2])).unwrap();
        let r = restrict(&att, Slice::new(vec![Fixed(1), Free])).unwrap();
        assert_eq!(r.eval(&p(&[1, 3])).unwrap(), p(&[1, 2]));
    }

    #[test]
    fn restrict_rejects_points_outside_slice() {
        let spec = LatticeSpec::new(2, 2).unwrap();
        let id = TarskiFunction::identity(spec);
        let r = restrict(&id, Slice::new(vec![Free, Fixed(1)])).unwrap();
        assert!(matches!(r.eval(&p(&[1, 2])), Err(Error::NotInSlice { .. })));
        assert!(restrict(&id, Slice::new(vec![Free, Fixed(3)])).is_err());
        assert!(restrict(&id, Slice::new(vec![Free])).is_err());
    }

    #[test]
    fn restriction_stays_in_slice() {
        let spec = LatticeSpec::new(3, 3).unwrap();
        let att = gen_attractor(spec, &p(&[3, 1, 2])).unwrap();
        for s in spec.slices() {
            let r = restrict(&att, s.clone()).unwrap();
            for x in slice_points(&spec, &s) {
                assert!(s.contains(&r.eval(&x).unwrap()));
            }
        }
    }
}
