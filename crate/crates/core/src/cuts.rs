//! Dedekind cuts as stage-indexed nested-interval processes.
//!
//! A cut is a process, not a set: the pair (A, B) is represented by the
//! trace of intervals it has produced so far, and membership questions are
//! answered "as witnessed by stage s".  Equality of two cuts is therefore
//! only ever refuted (`Separated`) and never confirmed.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{IntervalKind, Rational, RationalInterval};

/// The three cut kinds: whether a realized rational point lives in the
/// right side, the left side, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutKind {
    RightLeaning,
    LeftLeaning,
    Strict,
}

impl CutKind {
    /// Bracket shape the stage intervals of this cut kind carry.
    pub fn interval_kind(self) -> IntervalKind {
        match self {
            CutKind::RightLeaning => IntervalKind::HalfOpenRight,
            CutKind::LeftLeaning => IntervalKind::HalfOpenLeft,
            CutKind::Strict => IntervalKind::Open,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CutKind::RightLeaning => "right-leaning",
            CutKind::LeftLeaning => "left-leaning",
            CutKind::Strict => "strict",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<CutKind> {
        Some(match s {
            "right-leaning" => CutKind::RightLeaning,
            "left-leaning" => CutKind::LeftLeaning,
            "strict" => CutKind::Strict,
            _ => return None,
        })
    }
}

/// Where a cut stream's intervals come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceTag {
    Rational,
    Generator,
    Scripted,
    Derived,
}

/// Index of a cut within an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutId(pub u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutError {
    /// A scripted stream was pulled past the end of its script.
    ScriptExhausted { stage: u64 },
    /// A pulled interval escaped its predecessor or carried the wrong
    /// bracket; only scripted or derived sources can trigger this.
    NestingViolation { stage: u64 },
    /// `realize_approx` ran out of pulls before reaching the target width.
    BudgetExceeded,
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::ScriptExhausted { stage } => {
                write!(f, "cut script exhausted at stage {}", stage)
            }
            CutError::NestingViolation { stage } => {
                write!(f, "cut interval at stage {} not nested in its predecessor", stage)
            }
            CutError::BudgetExceeded => write!(f, "cut refinement budget exceeded"),
        }
    }
}

type PullFn = Box<dyn FnMut(u64) -> Result<RationalInterval, CutError>>;

/// A single Dedekind cut as a pull process producing the stage-s interval.
///
/// Every pull is run through a nesting wrapper: the stage-s interval must be
/// contained in the stage-(s-1) interval and carry the bracket shape of the
/// cut kind.  The full stage history is retained, so earlier snapshots stay
/// available after further refinement.
pub struct CutStream {
    kind: CutKind,
    source: SourceTag,
    puller: PullFn,
    history: Vec<RationalInterval>,
}

impl CutStream {
    pub fn new(kind: CutKind, source: SourceTag, puller: PullFn) -> Self {
        CutStream {
            kind,
            source,
            puller,
            history: Vec::new(),
        }
    }

    pub fn kind(&self) -> CutKind {
        self.kind
    }

    pub fn source(&self) -> SourceTag {
        self.source
    }

    /// Stages pulled so far.
    pub fn stages_pulled(&self) -> u64 {
        self.history.len() as u64
    }

    pub fn history(&self) -> &[RationalInterval] {
        &self.history
    }

    fn pull_next(&mut self) -> Result<&RationalInterval, CutError> {
        let stage = self.history.len() as u64;
        let iv = (self.puller)(stage)?;
        if iv.kind() != self.kind.interval_kind() {
            return Err(CutError::NestingViolation { stage });
        }
        if let Some(prev) = self.history.last() {
            if !iv.is_subset_of(prev) {
                return Err(CutError::NestingViolation { stage });
            }
        }
        self.history.push(iv);
        Ok(self.history.last().expect("just pushed"))
    }

    /// The stage-`stages` interval, pulling forward as needed.  Earlier
    /// stages are served from the retained history.
    pub fn refine(&mut self, stages: u64) -> Result<RationalInterval, CutError> {
        while self.stages_pulled() <= stages {
            self.pull_next()?;
        }
        Ok(self.history[stages as usize].clone())
    }

    /// Midpoint of the first interval of width < `eps`, pulling at most
    /// `budget` stages.
    pub fn realize_approx(&mut self, eps: &Rational, budget: u64) -> Result<Rational, CutError> {
        assert!(eps.is_positive(), "eps must be positive");
        for iv in &self.history {
            if &iv.width() < eps {
                return Ok(iv.midpoint());
            }
        }
        for _ in 0..budget {
            match self.pull_next() {
                Ok(iv) => {
                    if &iv.width() < eps {
                        return Ok(iv.midpoint());
                    }
                }
                // A stream that stops refining cannot reach the width.
                Err(CutError::ScriptExhausted { .. }) => return Err(CutError::BudgetExceeded),
                Err(e) => return Err(e),
            }
        }
        Err(CutError::BudgetExceeded)
    }
}

/// Canonical cut stream of a rational number.
///
/// Stage-s intervals: right-leaning `(q - 2^-s, q]`, left-leaning
/// `[q, q + 2^-s)`, strict `(q - 2^-(s+1), q + 2^-(s+1))`; all have width
/// at most `2^-s` and realize `q` (the strict stream omits the point).
pub fn cut_of_rational(q: &Rational, kind: CutKind) -> CutStream {
    let q = q.clone();
    let puller: PullFn = match kind {
        CutKind::RightLeaning => Box::new(move |s| {
            Ok(RationalInterval::new(
                &q - &Rational::pow2_neg(s),
                q.clone(),
                IntervalKind::HalfOpenRight,
            ))
        }),
        CutKind::LeftLeaning => Box::new(move |s| {
            Ok(RationalInterval::new(
                q.clone(),
                &q + &Rational::pow2_neg(s),
                IntervalKind::HalfOpenLeft,
            ))
        }),
        CutKind::Strict => Box::new(move |s| {
            let h = Rational::pow2_neg(s + 1);
            Ok(RationalInterval::new(
                &q - &h,
                &q + &h,
                IntervalKind::Open,
            ))
        }),
    };
    CutStream::new(kind, SourceTag::Rational, puller)
}

/// Strict cut of the positive square root of a positive rational, produced
/// by sign bisection; stage-s width is at most 2^-s.
pub fn sqrt_cut(n: &Rational) -> CutStream {
    assert!(n.is_positive(), "square root cut needs a positive rational");
    let n = n.clone();
    // Starting bracket (lo, hi) with lo^2 < n < hi^2 possible only when n is
    // not a perfect square of the endpoints; handle equality by nudging.
    let mut lo = Rational::zero();
    let mut hi = &n + &Rational::one();
    if hi.pow(2) <= n {
        hi = &n + &Rational::from_int(2);
    }
    let mut width_goal = Rational::one();
    let puller: PullFn = Box::new(move |_stage| {
        loop {
            let width = &hi - &lo;
            if width <= width_goal {
                break;
            }
            let mid = Rational::midpoint(&lo, &hi);
            let sq = mid.pow(2);
            if sq == n {
                // Exact rational root: keep it interior.
                let quarter = &width / &Rational::from_int(4);
                lo = &mid - &quarter;
                hi = &mid + &quarter;
            } else if sq < n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        width_goal = &width_goal / &Rational::from_int(2);
        Ok(RationalInterval::open(lo.clone(), hi.clone()))
    });
    CutStream::new(CutKind::Strict, SourceTag::Derived, puller)
}

/// Cut stream replaying a finite script of intervals.
pub fn scripted_cut(kind: CutKind, script: Vec<RationalInterval>) -> CutStream {
    let mut iter = script.into_iter();
    CutStream::new(
        kind,
        SourceTag::Scripted,
        Box::new(move |stage| iter.next().ok_or(CutError::ScriptExhausted { stage })),
    )
}

/// Separation verdict at a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// The stage intervals are disjoint; the witness rational sits between
    /// them.
    Separated(Rational),
    Unseparated,
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated(_))
    }
}

/// Compare the stage-`stage` intervals of two cuts, respecting brackets.
pub fn distinct_at(c1: &mut CutStream, c2: &mut CutStream, stage: u64) -> Result<Separation, CutError> {
    let i1 = c1.refine(stage)?;
    let i2 = c2.refine(stage)?;
    Ok(separation_of(&i1, &i2))
}

/// Separation decision on two already-materialized stage intervals.
pub fn separation_of(i1: &RationalInterval, i2: &RationalInterval) -> Separation {
    match i1.separating_rational(i2) {
        Some(w) => Separation::Separated(w),
        None => Separation::Unseparated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn rational_cut_shapes() {
        // Right-leaning cut of 0: intervals (-2^-s, 0].
        let mut c = cut_of_rational(&rat(0, 1), CutKind::RightLeaning);
        for s in 0..5 {
            let iv = c.refine(s).unwrap();
            assert_eq!(iv.hi(), &rat(0, 1));
            assert_eq!(iv.lo(), &-Rational::pow2_neg(s));
            assert_eq!(iv.kind(), IntervalKind::HalfOpenRight);
        }
        // Left-leaning cut of 1: intervals [1, 1 + 2^-s).
        let mut c = cut_of_rational(&rat(1, 1), CutKind::LeftLeaning);
        let iv = c.refine(3).unwrap();
        assert_eq!(iv.lo(), &rat(1, 1));
        assert_eq!(iv.hi(), &rat(9, 8));
        // Strict cut of 1/2 halves symmetrically and never exposes 1/2 as an
        // endpoint.
        let mut c = cut_of_rational(&rat(1, 2), CutKind::Strict);
        for s in 0..6 {
            let iv = c.refine(s).unwrap();
            assert!(iv.width() <= Rational::pow2_neg(s));
            assert!(iv.contains(&rat(1, 2)));
            assert_ne!(iv.lo(), &rat(1, 2));
            assert_ne!(iv.hi(), &rat(1, 2));
        }
    }

    #[test]
    fn refine_serves_history() {
        let mut c = cut_of_rational(&rat(1, 3), CutKind::Strict);
        let at5 = c.refine(5).unwrap();
        let at2 = c.refine(2).unwrap();
        assert!(at5.is_subset_of(&at2));
        assert_eq!(c.refine(5).unwrap(), at5);
    }

    #[test]
    fn scripted_cut_exhausts() {
        let script: Vec<_> = (0..5)
            .map(|s| {
                RationalInterval::open(-Rational::pow2_neg(s), Rational::pow2_neg(s))
            })
            .collect();
        let mut c = scripted_cut(CutKind::Strict, script);
        assert!(c.refine(4).is_ok());
        assert_eq!(c.refine(7), Err(CutError::ScriptExhausted { stage: 5 }));
    }

    #[test]
    fn nesting_wrapper_rejects_escapes() {
        let script = alloc::vec![
            RationalInterval::open(rat(0, 1), rat(1, 1)),
            RationalInterval::open(rat(1, 2), rat(3, 2)),
        ];
        let mut c = scripted_cut(CutKind::Strict, script);
        assert!(c.refine(0).is_ok());
        assert_eq!(c.refine(1), Err(CutError::NestingViolation { stage: 1 }));
    }

    #[test]
    fn realize_rationals() {
        let mut c = cut_of_rational(&rat(1, 3), CutKind::Strict);
        let q = c.realize_approx(&rat(1, 100), 64).unwrap();
        assert!((q - rat(1, 3)).abs() < rat(1, 100));

        // Constant-width script: budget exceeded.
        let script: Vec<_> = (0..10)
            .map(|_| RationalInterval::open(rat(0, 1), rat(1, 1)))
            .collect();
        let mut c = scripted_cut(CutKind::Strict, script);
        assert_eq!(
            c.realize_approx(&rat(1, 1000), 64),
            Err(CutError::BudgetExceeded)
        );
    }

    #[test]
    fn separation_basics() {
        let mut zero = cut_of_rational(&rat(0, 1), CutKind::RightLeaning);
        let mut one = cut_of_rational(&rat(1, 1), CutKind::RightLeaning);
        let sep = distinct_at(&mut zero, &mut one, 1).unwrap();
        assert!(sep.is_separated());

        // Two enumerations of the cut of 1/2 never separate.
        let mut a = cut_of_rational(&rat(1, 2), CutKind::Strict);
        let mut b = cut_of_rational(&rat(1, 2), CutKind::Strict);
        for s in 0..32 {
            assert_eq!(distinct_at(&mut a, &mut b, s).unwrap(), Separation::Unseparated);
        }
    }

    #[test]
    fn separation_is_monotone() {
        // Once separated, separated at every later stage.
        let mut a = cut_of_rational(&rat(1, 3), CutKind::Strict);
        let mut b = cut_of_rational(&rat(2, 5), CutKind::Strict);
        let mut seen = false;
        for s in 0..24 {
            let sep = distinct_at(&mut a, &mut b, s).unwrap().is_separated();
            if seen {
                assert!(sep, "separation regressed at stage {}", s);
            }
            seen = sep;
        }
        assert!(seen, "distinct rationals must separate");
    }

    #[test]
    fn adjacent_bracket_cuts_of_same_point() {
        // (a, b] against [b, c) overlap in b: never separated at b.
        let mut rl = cut_of_rational(&rat(1, 2), CutKind::RightLeaning);
        let mut ll = cut_of_rational(&rat(1, 2), CutKind::LeftLeaning);
        for s in 0..16 {
            assert_eq!(distinct_at(&mut rl, &mut ll, s).unwrap(), Separation::Unseparated);
        }
    }

    #[test]
    fn kind_discipline_on_rational_sources() {
        // Right-leaning: b_s never drops below the realized rational.
        let q = rat(3, 7);
        let mut c = cut_of_rational(&q, CutKind::RightLeaning);
        for s in 0..20 {
            assert!(c.refine(s).unwrap().hi() >= &q);
        }
        let mut c = cut_of_rational(&q, CutKind::LeftLeaning);
        for s in 0..20 {
            assert!(c.refine(s).unwrap().lo() <= &q);
        }
    }
}
