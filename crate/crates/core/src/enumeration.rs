//! Enumerations of cuts: the Friedberg deduplication transformer, the
//! bijection between set scripts and non-strict cuts in [0,1], and the
//! binary-expansion bridge real.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::cuts::{
    cut_of_rational, separation_of, CutError, CutKind, CutStream,
};
use crate::exactnum::{Rational, RationalInterval};

/// One row of an enumeration step: the current interval of one cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumRow {
    pub index: u64,
    pub kind: CutKind,
    pub interval: RationalInterval,
}

/// Step `t` of an enumeration: the stage-`t` interval of every cut with
/// index at most `t` that the enumeration has introduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumStep {
    pub step: u64,
    pub rows: Vec<EnumRow>,
}

/// A cut enumeration as a pull process over steps; the produced table is
/// lower-triangular in (step, index) and per-index nested.
pub trait CutEnumeration {
    fn advance(&mut self) -> Result<EnumStep, CutError>;
}

/// Enumeration of a finite family of cut streams: step `t` shows the
/// stage-`t` interval of every stream with index `<= t`.
pub struct StreamEnumeration {
    streams: Vec<CutStream>,
    step: u64,
}

impl StreamEnumeration {
    pub fn new(streams: Vec<CutStream>) -> Self {
        StreamEnumeration { streams, step: 0 }
    }
}

impl CutEnumeration for StreamEnumeration {
    fn advance(&mut self) -> Result<EnumStep, CutError> {
        let t = self.step;
        let visible = self.streams.len().min(t as usize + 1);
        let mut rows = Vec::with_capacity(visible);
        for (i, stream) in self.streams.iter_mut().take(visible).enumerate() {
            rows.push(EnumRow {
                index: i as u64,
                kind: stream.kind(),
                interval: stream.refine(t)?,
            });
        }
        self.step += 1;
        Ok(EnumStep { step: t, rows })
    }
}

/// Fully materialized enumeration (from a trace file or a transformer run).
#[derive(Clone, Debug, Default)]
pub struct ScriptedEnumeration {
    steps: Vec<EnumStep>,
    cursor: usize,
}

impl ScriptedEnumeration {
    pub fn new(steps: Vec<EnumStep>) -> Self {
        ScriptedEnumeration { steps, cursor: 0 }
    }

    pub fn steps(&self) -> &[EnumStep] {
        &self.steps
    }

    pub fn rewind(&mut self) {
        self.cursor = 0;
    }

    /// Validate the lower-triangular shape and per-index nesting.
    pub fn validate(&self) -> Result<(), CutError> {
        let mut last: alloc::collections::BTreeMap<u64, RationalInterval> = Default::default();
        for step in &self.steps {
            for row in &step.rows {
                if row.index > step.step {
                    return Err(CutError::NestingViolation { stage: step.step });
                }
                if row.interval.kind() != row.kind.interval_kind() {
                    return Err(CutError::NestingViolation { stage: step.step });
                }
                if let Some(prev) = last.get(&row.index) {
                    if !row.interval.is_subset_of(prev) {
                        return Err(CutError::NestingViolation { stage: step.step });
                    }
                }
                last.insert(row.index, row.interval.clone());
            }
        }
        Ok(())
    }
}

impl CutEnumeration for ScriptedEnumeration {
    fn advance(&mut self) -> Result<EnumStep, CutError> {
        match self.steps.get(self.cursor) {
            Some(step) => {
                self.cursor += 1;
                Ok(step.clone())
            }
            None => Err(CutError::ScriptExhausted {
                stage: self.cursor as u64,
            }),
        }
    }
}

/// Record of one admission made by the Friedberg transformer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admission {
    pub output_index: u64,
    pub input_index: u64,
    pub step: u64,
}

/// Result of the Friedberg transformer: a deduplicated enumeration plus the
/// back map into input indices.
pub struct FriedbergResult {
    pub output: ScriptedEnumeration,
    pub back_map: Vec<u64>,
    pub admissions: Vec<Admission>,
    pub steps_run: u64,
}

/// Friedberg deduplication: drive the input enumeration for `steps` steps
/// and admit an input cut the first step at which it is separated from every
/// already-admitted cut and from every earlier input index not yet admitted.
/// Ties are admitted in input-index order; duplicates simply never separate
/// from their twin and are never admitted.
pub fn friedberg(
    input: &mut dyn CutEnumeration,
    steps: u64,
) -> Result<FriedbergResult, CutError> {
    let mut admitted: Vec<u64> = Vec::new(); // input indices, in admission order
    let mut admitted_set: BTreeSet<u64> = BTreeSet::new();
    let mut admissions: Vec<Admission> = Vec::new();
    let mut out_steps: Vec<EnumStep> = Vec::new();

    for _ in 0..steps {
        let step = input.advance()?;
        let rows = &step.rows;
        let find_row = |idx: u64| rows.iter().find(|r| r.index == idx);

        for row in rows {
            let i = row.index;
            if admitted_set.contains(&i) {
                continue;
            }
            let sep_from = |other: &EnumRow| {
                separation_of(&row.interval, &other.interval).is_separated()
            };
            let clear_of_admitted = admitted
                .iter()
                .filter_map(|&k| find_row(k))
                .all(sep_from);
            let clear_of_earlier = rows
                .iter()
                .filter(|r| r.index < i && !admitted_set.contains(&r.index))
                .all(|r| sep_from(r));
            if clear_of_admitted && clear_of_earlier {
                let output_index = admitted.len() as u64;
                admitted.push(i);
                admitted_set.insert(i);
                admissions.push(Admission {
                    output_index,
                    input_index: i,
                    step: step.step,
                });
            }
        }

        // Emit the admitted cuts' current intervals, keeping the output
        // lower-triangular: output index k first appears at step >= k.
        let mut out_rows = Vec::new();
        for (k, &input_idx) in admitted.iter().enumerate() {
            if (k as u64) > step.step {
                break;
            }
            if let Some(row) = find_row(input_idx) {
                out_rows.push(EnumRow {
                    index: k as u64,
                    kind: row.kind,
                    interval: row.interval.clone(),
                });
            }
        }
        out_steps.push(EnumStep {
            step: step.step,
            rows: out_rows,
        });
    }

    Ok(FriedbergResult {
        output: ScriptedEnumeration::new(out_steps),
        back_map: admitted,
        admissions,
        steps_run: steps,
    })
}

/// Tail behaviour of a set script beyond its explicit table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    Finite,
    Cofinite,
}

/// Finite explicit membership table for a subset of the naturals with a
/// finite or cofinite tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetScript {
    bound: u64,
    members: BTreeSet<u64>,
    tail: Tail,
}

impl SetScript {
    pub fn new(bound: u64, members: impl IntoIterator<Item = u64>, tail: Tail) -> Self {
        let members: BTreeSet<u64> = members.into_iter().collect();
        assert!(
            members.iter().all(|&m| m < bound),
            "set script member beyond its bound"
        );
        SetScript {
            bound,
            members,
            tail,
        }
    }

    pub fn empty() -> Self {
        SetScript::new(0, [], Tail::Finite)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.bound {
            self.members.contains(&n)
        } else {
            self.tail == Tail::Cofinite
        }
    }

    pub fn is_empty_set(&self) -> bool {
        self.members.is_empty() && self.tail == Tail::Finite
    }

    pub fn is_full_set(&self) -> bool {
        self.tail == Tail::Cofinite && (0..self.bound).all(|n| self.members.contains(&n))
    }

    /// Same subset of the naturals, membership-wise.
    pub fn same_set_as(&self, other: &SetScript) -> bool {
        let horizon = self.bound.max(other.bound);
        (0..horizon).all(|n| self.contains(n) == other.contains(n))
            && self.tail == other.tail
    }

    /// The real r_S = sum over n in S of 2^-(n+1), exactly.
    pub fn exact_real(&self) -> Rational {
        let mut acc = Rational::zero();
        for &n in &self.members {
            acc += Rational::pow2_neg(n + 1);
        }
        if self.tail == Tail::Cofinite {
            // sum over n >= bound of 2^-(n+1) = 2^-bound
            acc += Rational::pow2_neg(self.bound);
        }
        acc
    }
}

/// Partial sum of r_S over members below `precision_bits`; within
/// 2^-precision_bits of r_S.
pub fn real_of_set(s: &SetScript, precision_bits: u64) -> Rational {
    let mut acc = Rational::zero();
    for n in 0..precision_bits {
        if s.contains(n) {
            acc += Rational::pow2_neg(n + 1);
        }
    }
    acc
}

/// Do two scripts denote the collision pair of the bridge lemma: distinct
/// sets, one finite and one cofinite, realizing the same real?
pub fn bridge_collision(s: &SetScript, t: &SetScript) -> bool {
    if s.same_set_as(t) {
        return false;
    }
    let finite_cofinite = matches!(
        (s.tail, t.tail),
        (Tail::Finite, Tail::Cofinite) | (Tail::Cofinite, Tail::Finite)
    );
    finite_cofinite && s.exact_real() == t.exact_real()
}

/// The non-strict cut encoding a set script, per the recursion "n lies in S
/// just if the threshold lies in the left side of the cut".
///
/// A nonempty finite set terminates its binary expansion, so its thresholds
/// force the left-leaning cut of r_S; a proper cofinite set forces the
/// right-leaning cut.  The boundary representatives are the right-leaning
/// cut of 0 (empty set) and the left-leaning cut of 1 (full set).
pub fn set_to_cut(s: &SetScript) -> CutStream {
    let kind = if s.is_empty_set() {
        CutKind::RightLeaning
    } else if s.is_full_set() {
        CutKind::LeftLeaning
    } else {
        match s.tail {
            Tail::Finite => CutKind::LeftLeaning,
            Tail::Cofinite => CutKind::RightLeaning,
        }
    };
    cut_of_rational(&s.exact_real(), kind)
}

/// Membership verdicts recovered from a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    InS,
    NotInS,
}

/// Decide `n in S` from a non-strict cut in [0,1] by running the threshold
/// recursion against the stream, with at most `budget` stage pulls in total.
pub fn cut_to_set(
    c: &mut CutStream,
    n: u64,
    budget: u64,
) -> Result<Membership, CutError> {
    let mut pulls_left = budget;
    let mut left_sum = Rational::zero();
    let mut verdict = Membership::NotInS;
    for m in 0..=n {
        let threshold = &Rational::pow2_neg(m + 1) + &left_sum;
        let in_left = decide_left_side(c, &threshold, &mut pulls_left)?;
        verdict = if in_left { Membership::InS } else { Membership::NotInS };
        if in_left {
            left_sum = threshold;
        }
    }
    Ok(verdict)
}

/// Does `t` lie in the left side of the cut?  Decided as soon as the stage
/// interval places `t` at or below its left endpoint (left side) or at or
/// past its right endpoint (right side).
fn decide_left_side(
    c: &mut CutStream,
    t: &Rational,
    pulls_left: &mut u64,
) -> Result<bool, CutError> {
    let mut stage = 0u64;
    loop {
        if stage >= c.stages_pulled() {
            if *pulls_left == 0 {
                return Err(CutError::BudgetExceeded);
            }
            *pulls_left -= 1;
        }
        let iv = match c.refine(stage) {
            Ok(iv) => iv,
            Err(CutError::ScriptExhausted { .. }) => return Err(CutError::BudgetExceeded),
            Err(e) => return Err(e),
        };
        if t <= iv.lo() {
            return Ok(true);
        }
        if t >= iv.hi() {
            return Ok(false);
        }
        stage += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn stream_of_rationals(qs: &[(i64, i64)]) -> StreamEnumeration {
        StreamEnumeration::new(
            qs.iter()
                .map(|&(n, d)| cut_of_rational(&rat(n, d), CutKind::Strict))
                .collect(),
        )
    }

    #[test]
    fn lower_triangular_steps() {
        let mut e = stream_of_rationals(&[(0, 1), (1, 1), (2, 1)]);
        let s0 = e.advance().unwrap();
        assert_eq!(s0.rows.len(), 1);
        let s1 = e.advance().unwrap();
        assert_eq!(s1.rows.len(), 2);
        let s2 = e.advance().unwrap();
        assert_eq!(s2.rows.len(), 3);
        let s3 = e.advance().unwrap();
        assert_eq!(s3.rows.len(), 3);
        assert!(s3.rows[0].interval.is_subset_of(&s2.rows[0].interval));
    }

    #[test]
    fn friedberg_drops_duplicates() {
        // Two copies of 1/2 and a sqrt(2)-like scripted cut: 2 admissions.
        let streams = alloc::vec![
            cut_of_rational(&rat(1, 2), CutKind::Strict),
            cut_of_rational(&rat(1, 2), CutKind::Strict),
            cut_of_rational(&rat(7, 5), CutKind::Strict),
        ];
        let mut input = StreamEnumeration::new(streams);
        let res = friedberg(&mut input, 32).unwrap();
        assert_eq!(res.back_map.len(), 2);
        assert_eq!(res.back_map[0], 0);
        assert_eq!(res.back_map[1], 2);
        res.output.validate().unwrap();
    }

    #[test]
    fn friedberg_identical_streams_admit_one() {
        let streams: Vec<_> = (0..4)
            .map(|_| cut_of_rational(&rat(1, 3), CutKind::Strict))
            .collect();
        let mut input = StreamEnumeration::new(streams);
        let res = friedberg(&mut input, 24).unwrap();
        assert_eq!(res.back_map, alloc::vec![0]);
    }

    #[test]
    fn friedberg_separated_input_admits_all() {
        let mut input = stream_of_rationals(&[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let res = friedberg(&mut input, 16).unwrap();
        assert_eq!(res.back_map, alloc::vec![0, 1, 2, 3]);
        // Pairwise separated at each admission step.
        for a in &res.admissions {
            for b in &res.admissions {
                if a.output_index == b.output_index {
                    continue;
                }
                let step = a.step.max(b.step);
                let rows = &res.output.steps()[step as usize].rows;
                let ia = rows.iter().find(|r| r.index == a.output_index).unwrap();
                let ib = rows.iter().find(|r| r.index == b.output_index).unwrap();
                assert!(separation_of(&ia.interval, &ib.interval).is_separated());
            }
        }
    }

    #[test]
    fn bridge_examples() {
        // S = {1}: r = 1/4; the cofinite partner omega - {0,1} realizes the
        // same real with the other lean.
        let s = SetScript::new(2, [1], Tail::Finite);
        assert_eq!(s.exact_real(), rat(1, 4));
        let t = SetScript::new(2, [], Tail::Cofinite);
        assert_eq!(t.exact_real(), rat(1, 4));
        assert!(bridge_collision(&s, &t));
        assert!(!bridge_collision(&s, &s.clone()));

        assert_eq!(SetScript::empty().exact_real(), rat(0, 1));
        let full = SetScript::new(0, [], Tail::Cofinite);
        assert_eq!(full.exact_real(), rat(1, 1));
        // S = {0, 2} -> 1/2 + 1/8 = 5/8.
        let s = SetScript::new(3, [0, 2], Tail::Finite);
        assert_eq!(s.exact_real(), rat(5, 8));
        assert_eq!(real_of_set(&s, 2), rat(1, 2));
        assert_eq!(real_of_set(&s, 3), rat(5, 8));
    }

    #[test]
    fn set_to_cut_kinds() {
        assert_eq!(set_to_cut(&SetScript::empty()).kind(), CutKind::RightLeaning);
        let full = SetScript::new(0, [], Tail::Cofinite);
        assert_eq!(set_to_cut(&full).kind(), CutKind::LeftLeaning);
        // Interior: finite tail leans left, cofinite leans right.
        let s = SetScript::new(1, [0], Tail::Finite);
        assert_eq!(set_to_cut(&s).kind(), CutKind::LeftLeaning);
        let t = SetScript::new(1, [], Tail::Cofinite);
        assert_eq!(set_to_cut(&t).kind(), CutKind::RightLeaning);
    }

    #[test]
    fn round_trip_small_sets() {
        let s = SetScript::new(1, [0], Tail::Finite);
        let mut c = set_to_cut(&s);
        assert_eq!(cut_to_set(&mut c, 0, 256).unwrap(), Membership::InS);
        assert_eq!(cut_to_set(&mut c, 1, 256).unwrap(), Membership::NotInS);

        // Right-leaning cut of 0: nothing is in S.
        let mut zero = cut_of_rational(&rat(0, 1), CutKind::RightLeaning);
        for n in 0..8 {
            assert_eq!(cut_to_set(&mut zero, n, 256).unwrap(), Membership::NotInS);
        }
    }

    #[test]
    fn collision_pair_decodes_to_two_sets() {
        // The two cuts of 1/4 decode to {1} and {2,3,4,...} respectively.
        let s = SetScript::new(2, [1], Tail::Finite);
        let t = SetScript::new(2, [], Tail::Cofinite);
        let mut cs = set_to_cut(&s);
        let mut ct = set_to_cut(&t);
        for n in 0..10 {
            assert_eq!(
                cut_to_set(&mut cs, n, 512).unwrap() == Membership::InS,
                s.contains(n),
                "S at {}",
                n
            );
            assert_eq!(
                cut_to_set(&mut ct, n, 512).unwrap() == Membership::InS,
                t.contains(n),
                "T at {}",
                n
            );
        }
    }

    #[test]
    fn frozen_cut_exceeds_budget() {
        let script: Vec<_> = (0..4)
            .map(|_| {
                RationalInterval::new(
                    rat(1, 4),
                    rat(3, 8),
                    crate::exactnum::IntervalKind::HalfOpenRight,
                )
            })
            .collect();
        let mut c = crate::cuts::scripted_cut(CutKind::RightLeaning, script);
        // Thresholds 1/2, 1/4, 3/8 all resolve against (1/4, 3/8], but the
        // n = 3 threshold 5/16 sits strictly inside and never does.
        assert_eq!(cut_to_set(&mut c, 3, 16), Err(CutError::BudgetExceeded));
    }
}
