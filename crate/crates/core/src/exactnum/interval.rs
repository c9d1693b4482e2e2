use alloc::vec::Vec;
use core::fmt;

use super::rational::Rational;

/// Bracket shape of a rational-endpoint interval.
///
/// `Open` is `(lo,hi)`, `HalfOpenRight` is `(lo,hi]`, `HalfOpenLeft` is
/// `[lo,hi)`.  `Closed` (`[lo,hi]`) is reserved for interval-arithmetic
/// enclosures and internal Sturm artifacts; cut streams only ever carry the
/// first three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    Open,
    HalfOpenRight,
    HalfOpenLeft,
    Closed,
}

impl IntervalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IntervalKind::Open => "open",
            IntervalKind::HalfOpenRight => "half-open-right",
            IntervalKind::HalfOpenLeft => "half-open-left",
            IntervalKind::Closed => "closed",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Self> {
        Some(match s {
            "open" => IntervalKind::Open,
            "half-open-right" => IntervalKind::HalfOpenRight,
            "half-open-left" => IntervalKind::HalfOpenLeft,
            "closed" => IntervalKind::Closed,
            _ => return None,
        })
    }

    pub fn contains_lo(self) -> bool {
        matches!(self, IntervalKind::HalfOpenLeft | IntervalKind::Closed)
    }

    pub fn contains_hi(self) -> bool {
        matches!(self, IntervalKind::HalfOpenRight | IntervalKind::Closed)
    }
}

/// Interval with exact rational endpoints.
///
/// `lo < hi` except for `Closed` intervals, where the degenerate point
/// `[q,q]` is allowed (it shows up as an enclosure of a constant and inside
/// Sturm bookkeeping, never in a cut stream).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
    kind: IntervalKind,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational, kind: IntervalKind) -> Self {
        match kind {
            IntervalKind::Closed => assert!(lo <= hi, "interval endpoints out of order"),
            _ => assert!(lo < hi, "interval endpoints out of order"),
        }
        RationalInterval { lo, hi, kind }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, IntervalKind::Open)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, IntervalKind::Closed)
    }

    pub fn point(q: Rational) -> Self {
        RationalInterval {
            lo: q.clone(),
            hi: q,
            kind: IntervalKind::Closed,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn kind(&self) -> IntervalKind {
        self.kind
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let above_lo = match self.kind.contains_lo() {
            true => q >= &self.lo,
            false => q > &self.lo,
        };
        let below_hi = match self.kind.contains_hi() {
            true => q <= &self.hi,
            false => q < &self.hi,
        };
        above_lo && below_hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// Set containment, exact on endpoints and brackets.
    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        let lo_ok = if self.kind.contains_lo() && !other.kind.contains_lo() {
            self.lo > other.lo
        } else {
            self.lo >= other.lo
        };
        let hi_ok = if self.kind.contains_hi() && !other.kind.contains_hi() {
            self.hi < other.hi
        } else {
            self.hi <= other.hi
        };
        lo_ok && hi_ok
    }

    /// Disjointness, exact on endpoints and brackets.
    pub fn is_disjoint_from(&self, other: &RationalInterval) -> bool {
        fn apart(left: &RationalInterval, right: &RationalInterval) -> bool {
            // All of `left` is below all of `right`.
            left.hi < right.lo
                || (left.hi == right.lo && !(left.kind.contains_hi() && right.kind.contains_lo()))
        }
        apart(self, other) || apart(other, self)
    }

    /// A rational `w` with `self <= w <= other` (or the mirror), for two
    /// disjoint intervals.
    pub fn separating_rational(&self, other: &RationalInterval) -> Option<Rational> {
        if !self.is_disjoint_from(other) {
            return None;
        }
        let (left, right) = if self.hi <= other.lo {
            (self, other)
        } else {
            (other, self)
        };
        Some(Rational::midpoint(&left.hi, &right.lo))
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        if self.is_disjoint_from(other) {
            return None;
        }
        let (lo, lo_in) = if self.lo > other.lo {
            (self.lo.clone(), self.kind.contains_lo())
        } else if self.lo < other.lo {
            (other.lo.clone(), other.kind.contains_lo())
        } else {
            (
                self.lo.clone(),
                self.kind.contains_lo() && other.kind.contains_lo(),
            )
        };
        let (hi, hi_in) = if self.hi < other.hi {
            (self.hi.clone(), self.kind.contains_hi())
        } else if self.hi > other.hi {
            (other.hi.clone(), other.kind.contains_hi())
        } else {
            (
                self.hi.clone(),
                self.kind.contains_hi() && other.kind.contains_hi(),
            )
        };
        let kind = match (lo_in, hi_in) {
            (true, true) => IntervalKind::Closed,
            (false, true) => IntervalKind::HalfOpenRight,
            (true, false) => IntervalKind::HalfOpenLeft,
            (false, false) => IntervalKind::Open,
        };
        if lo > hi || (lo == hi && kind != IntervalKind::Closed) {
            return None;
        }
        Some(RationalInterval { lo, hi, kind })
    }

    /// Outward closed hull, used when feeding an interval into enclosure
    /// arithmetic.
    pub fn closure(&self) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            kind: IntervalKind::Closed,
        }
    }

    pub fn with_kind(&self, kind: IntervalKind) -> RationalInterval {
        RationalInterval::new(self.lo.clone(), self.hi.clone(), kind)
    }

    pub fn translate(&self, q: &Rational) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + q,
            hi: &self.hi + q,
            kind: self.kind,
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.kind.contains_lo() { '[' } else { '(' };
        let r = if self.kind.contains_hi() { ']' } else { ')' };
        write!(f, "{}{}, {}{}", l, self.lo, self.hi, r)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of open intervals, one per generator coordinate.  May be
/// zero-dimensional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordBox {
    coords: Vec<RationalInterval>,
}

/// A polynomial mentioned more variables than the box has coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub needed: usize,
    pub have: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "box has {} coordinates but {} are needed",
            self.have, self.needed
        )
    }
}

impl CoordBox {
    pub fn empty() -> Self {
        CoordBox { coords: Vec::new() }
    }

    pub fn new(coords: Vec<RationalInterval>) -> Self {
        for c in &coords {
            assert!(
                c.kind() == IntervalKind::Open,
                "box coordinates must be open intervals"
            );
        }
        CoordBox { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &RationalInterval {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[RationalInterval] {
        &self.coords
    }

    pub fn push(&mut self, iv: RationalInterval) {
        assert!(iv.kind() == IntervalKind::Open);
        self.coords.push(iv);
    }

    /// Product box `self x (extra)`.
    pub fn extended(&self, extra: RationalInterval) -> CoordBox {
        let mut coords = self.coords.clone();
        assert!(extra.kind() == IntervalKind::Open);
        coords.push(extra);
        CoordBox { coords }
    }

    pub fn is_subbox_of(&self, other: &CoordBox) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a.is_subset_of(b))
    }

    pub fn contains_point(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(&self.coords)
                .all(|(q, iv)| iv.contains(q))
    }
}

impl fmt::Display for CoordBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "()");
        }
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn open(a: (i64, i64), b: (i64, i64)) -> RationalInterval {
        RationalInterval::open(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn bracket_membership() {
        let i = RationalInterval::new(rat(0, 1), rat(1, 1), IntervalKind::HalfOpenRight);
        assert!(!i.contains(&rat(0, 1)));
        assert!(i.contains(&rat(1, 1)));
        assert!(i.contains(&rat(1, 2)));
    }

    #[test]
    fn disjointness_respects_brackets() {
        let a = RationalInterval::new(rat(0, 1), rat(1, 1), IntervalKind::HalfOpenRight);
        let b = RationalInterval::open(rat(1, 1), rat(2, 1));
        // (0,1] and (1,2) share no point.
        assert!(a.is_disjoint_from(&b));
        let c = RationalInterval::new(rat(1, 1), rat(2, 1), IntervalKind::HalfOpenLeft);
        // (0,1] and [1,2) share 1.
        assert!(!a.is_disjoint_from(&c));
        assert_eq!(a.separating_rational(&b), Some(rat(1, 1)));
    }

    #[test]
    fn nesting_checks() {
        let outer = open((0, 1), (1, 1));
        let inner = open((1, 4), (1, 2));
        assert!(inner.is_subset_of(&outer));
        assert!(!outer.is_subset_of(&inner));
        let closed_inner = RationalInterval::closed(rat(0, 1), rat(1, 2));
        // [0,1/2] is not inside (0,1) because of the left endpoint.
        assert!(!closed_inner.is_subset_of(&outer));
    }

    #[test]
    fn boxes() {
        let b = CoordBox::new(alloc::vec![open((0, 1), (1, 1)), open((2, 1), (3, 1))]);
        assert_eq!(b.dim(), 2);
        assert!(b.contains_point(&[rat(1, 2), rat(5, 2)]));
        assert!(!b.contains_point(&[rat(1, 2), rat(3, 1)]));
        let sub = CoordBox::new(alloc::vec![open((1, 4), (1, 2)), open((2, 1), (3, 1))]);
        assert!(sub.is_subbox_of(&b));
    }
}
