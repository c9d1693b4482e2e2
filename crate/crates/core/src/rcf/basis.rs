//! Transcendence-basis extraction from a cut enumeration, guided by a
//! scripted approximation of the algebraic-dependence relation.
//!
//! Guided cuts C_0, C_1, ... follow the input indices currently believed
//! independent, in index order.  When an index is dropped (flips to
//! dependent) the guides to its right move left, re-anchored by a rational
//! offset chosen so the shifted guide interval lands inside the target
//! cut's current interval.  When an index returns (flips back to
//! independent) its slot restarts from the guide's raw interval and the
//! displaced guides shift right with containment offsets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cuts::{CutError, CutKind};
use crate::enumeration::{CutEnumeration, EnumRow, EnumStep};
use crate::exactnum::{first_rational, Rational, RationalInterval};

/// Scripted stage-indexed guesses for "cut n depends on cuts < n".
/// Defaults to independent; per index, the guess changes at the scripted
/// stages.
#[derive(Clone, Debug, Default)]
pub struct DependenceApproximator {
    flips: BTreeMap<u64, Vec<(u64, bool)>>,
}

impl DependenceApproximator {
    pub fn always_independent() -> Self {
        Self::default()
    }

    /// (index, stage, dependent) triples; later stages override earlier.
    pub fn from_flips(flips: impl IntoIterator<Item = (u64, u64, bool)>) -> Self {
        let mut map: BTreeMap<u64, Vec<(u64, bool)>> = BTreeMap::new();
        for (idx, stage, dep) in flips {
            map.entry(idx).or_default().push((stage, dep));
        }
        for v in map.values_mut() {
            v.sort_by_key(|&(s, _)| s);
        }
        DependenceApproximator { flips: map }
    }

    pub fn dependent(&self, index: u64, stage: u64) -> bool {
        let Some(v) = self.flips.get(&index) else {
            return false;
        };
        let mut cur = false;
        for &(s, dep) in v {
            if s > stage {
                break;
            }
            cur = dep;
        }
        cur
    }
}

/// Shift bookkeeping events, traced for the offline verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisEvent {
    /// A guide was (re-)anchored into a slot with existing content; the
    /// shifted interval is contained in the slot's previous interval.
    LeftShift {
        step: u64,
        slot: u64,
        guide: u64,
        offset: Rational,
        shifted: RationalInterval,
        target: RationalInterval,
    },
    /// A returning guide restarted its slot from its raw interval.
    RightShiftRestart { step: u64, slot: u64, guide: u64 },
    /// A guide entered a slot that had never emitted.
    Fresh { step: u64, slot: u64, guide: u64 },
    /// No admissible offset yet; the slot repeated its last interval.
    Wait { step: u64, slot: u64 },
}

#[derive(Clone, Debug)]
pub struct GuideState {
    pub slot: u64,
    pub guide: Option<u64>,
    pub offset: Rational,
    pub generation: u32,
}

pub struct BasisRun {
    pub steps: Vec<EnumStep>,
    pub events: Vec<BasisEvent>,
    pub final_guides: Vec<GuideState>,
}

struct Slot {
    guide: Option<u64>,
    offset: Rational,
    last_emitted: Option<(RationalInterval, CutKind)>,
    generation: u32,
}

const OFFSET_SCAN: u64 = 4096;

/// Run the guided-cut transformer for `steps` input steps.
pub fn extract_basis(
    input: &mut dyn CutEnumeration,
    dep: &DependenceApproximator,
    steps: u64,
) -> Result<BasisRun, CutError> {
    let mut slots: Vec<Slot> = Vec::new();
    let mut events: Vec<BasisEvent> = Vec::new();
    let mut out_steps: Vec<EnumStep> = Vec::new();
    let mut ever_believed: BTreeSet<u64> = BTreeSet::new();
    let mut was_dropped: BTreeSet<u64> = BTreeSet::new();

    for _ in 0..steps {
        let step = input.advance()?;
        let t = step.step;
        let row_of = |idx: u64| step.rows.iter().find(|r| r.index == idx);

        let believed: Vec<u64> = step
            .rows
            .iter()
            .map(|r| r.index)
            .filter(|&n| !dep.dependent(n, t))
            .collect();
        for &n in &believed {
            ever_believed.insert(n);
        }
        for r in &step.rows {
            if dep.dependent(r.index, t) && ever_believed.contains(&r.index) {
                was_dropped.insert(r.index);
            }
        }

        while slots.len() < believed.len() {
            slots.push(Slot {
                guide: None,
                offset: Rational::zero(),
                last_emitted: None,
                generation: 0,
            });
        }

        let prev_assign: BTreeMap<u64, usize> = slots
            .iter()
            .enumerate()
            .filter_map(|(j, s)| s.guide.map(|g| (g, j)))
            .collect();

        let mut rows_out: Vec<EnumRow> = Vec::new();
        for (j, slot) in slots.iter_mut().enumerate() {
            let new_guide = believed.get(j).copied();
            let Some(g) = new_guide else {
                // Guideless slot: repeat its last interval, if any.
                slot.guide = None;
                if let Some((iv, kind)) = &slot.last_emitted {
                    rows_out.push(EnumRow {
                        index: j as u64,
                        kind: *kind,
                        interval: iv.clone(),
                    });
                    events.push(BasisEvent::Wait {
                        step: t,
                        slot: j as u64,
                    });
                }
                continue;
            };
            let grow = row_of(g).expect("believed index has a row");
            let same = slot.guide == Some(g);
            let emit: Option<(RationalInterval, CutKind)> = if same {
                Some((grow.interval.translate(&slot.offset), grow.kind))
            } else {
                match &slot.last_emitted {
                    None => {
                        slot.guide = Some(g);
                        slot.offset = Rational::zero();
                        events.push(BasisEvent::Fresh {
                            step: t,
                            slot: j as u64,
                            guide: g,
                        });
                        Some((grow.interval.clone(), grow.kind))
                    }
                    Some((target, _)) => {
                        let returning = was_dropped.contains(&g)
                            && prev_assign.get(&g).is_none();
                        if returning {
                            // Right shift: the slot restarts from the raw
                            // guide interval.
                            slot.guide = Some(g);
                            slot.offset = Rational::zero();
                            slot.generation += 1;
                            events.push(BasisEvent::RightShiftRestart {
                                step: t,
                                slot: j as u64,
                                guide: g,
                            });
                            Some((grow.interval.clone(), grow.kind))
                        } else {
                            // Containment shift: first rational offset that
                            // lands the guide inside the slot's interval.
                            let target = target.clone();
                            let giv = grow.interval.clone();
                            let q = first_rational(OFFSET_SCAN, |q| {
                                giv.translate(q).is_subset_of(&target)
                            });
                            match q {
                                Some(q) => {
                                    let shifted = giv.translate(&q);
                                    slot.guide = Some(g);
                                    slot.offset = q.clone();
                                    events.push(BasisEvent::LeftShift {
                                        step: t,
                                        slot: j as u64,
                                        guide: g,
                                        offset: q,
                                        shifted: shifted.clone(),
                                        target,
                                    });
                                    Some((shifted, grow.kind))
                                }
                                None => {
                                    // Not yet possible: wait without taking
                                    // the guide.
                                    slot.guide = None;
                                    events.push(BasisEvent::Wait {
                                        step: t,
                                        slot: j as u64,
                                    });
                                    slot.last_emitted.clone()
                                }
                            }
                        }
                    }
                }
            };
            if let Some((iv, kind)) = emit {
                slot.last_emitted = Some((iv.clone(), kind));
                rows_out.push(EnumRow {
                    index: j as u64,
                    kind,
                    interval: iv,
                });
            }
        }
        out_steps.push(EnumStep { step: t, rows: rows_out });
    }

    let final_guides = slots
        .iter()
        .enumerate()
        .map(|(j, s)| GuideState {
            slot: j as u64,
            guide: s.guide,
            offset: s.offset.clone(),
            generation: s.generation,
        })
        .collect();
    Ok(BasisRun {
        steps: out_steps,
        events,
        final_guides,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{cut_of_rational, CutKind};
    use crate::enumeration::StreamEnumeration;
    use crate::exactnum::rat;

    fn two_cut_input() -> StreamEnumeration {
        StreamEnumeration::new(alloc::vec![
            cut_of_rational(&rat(0, 1), CutKind::Strict),
            cut_of_rational(&rat(10, 1), CutKind::Strict),
        ])
    }

    #[test]
    fn no_flips_is_identity() {
        let mut input = two_cut_input();
        let dep = DependenceApproximator::always_independent();
        let run = extract_basis(&mut input, &dep, 12).unwrap();
        assert!(run
            .events
            .iter()
            .all(|e| matches!(e, BasisEvent::Fresh { .. })));
        // Output rows equal the input rows.
        let mut check = two_cut_input();
        for step in &run.steps {
            let want = check.advance().unwrap();
            assert_eq!(step.rows.len(), want.rows.len());
            for (a, b) in step.rows.iter().zip(&want.rows) {
                assert_eq!(a.interval, b.interval);
            }
        }
        assert_eq!(run.final_guides[0].guide, Some(0));
        assert_eq!(run.final_guides[1].guide, Some(1));
    }

    #[test]
    fn drop_forever_left_shifts_with_contained_offset() {
        let mut input = two_cut_input();
        let dep = DependenceApproximator::from_flips([(0, 3, true)]);
        let run = extract_basis(&mut input, &dep, 16).unwrap();
        // Slot 0 ends guided by input 1 with some offset, and the shift
        // event recorded containment.
        assert_eq!(run.final_guides[0].guide, Some(1));
        let shift = run
            .events
            .iter()
            .find_map(|e| match e {
                BasisEvent::LeftShift {
                    slot: 0,
                    guide: 1,
                    offset,
                    shifted,
                    target,
                    ..
                } => Some((offset.clone(), shifted.clone(), target.clone())),
                _ => None,
            })
            .expect("a left shift must occur");
        assert!(shift.1.is_subset_of(&shift.2));
        // Slot 0's rows keep nesting across the shift.
        let mut prev: Option<RationalInterval> = None;
        for step in &run.steps {
            if let Some(r) = step.rows.iter().find(|r| r.index == 0) {
                if let Some(p) = &prev {
                    assert!(r.interval.is_subset_of(p), "step {}", step.step);
                }
                prev = Some(r.interval.clone());
            }
        }
    }

    #[test]
    fn flip_back_right_shifts_once() {
        let mut input = two_cut_input();
        let dep = DependenceApproximator::from_flips([(0, 3, true), (0, 6, false)]);
        let run = extract_basis(&mut input, &dep, 16).unwrap();
        let restarts: Vec<_> = run
            .events
            .iter()
            .filter(|e| matches!(e, BasisEvent::RightShiftRestart { .. }))
            .collect();
        assert_eq!(restarts.len(), 1);
        assert!(matches!(
            restarts[0],
            BasisEvent::RightShiftRestart { slot: 0, guide: 0, .. }
        ));
        assert_eq!(run.final_guides[0].guide, Some(0));
        assert_eq!(run.final_guides[0].generation, 1);
        assert_eq!(run.final_guides[1].guide, Some(1));
    }
}
