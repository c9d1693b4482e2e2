//! Finite-injury builder of the prime-nonstandard field over a scripted
//! approximation of the derived linear order.
//!
//! One positive infinite element per order point at stage 0.  When the
//! approximation flips a pair, the lower-priority point's element is
//! demoted into the other's multiplicative class (set equal to a power of
//! it) and a fresh element is introduced at the point's new position.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactnum::Rational;

use super::exponent::CoordId;
use super::field::{NaError, NonArchElement, NonArchField};
use super::order::{derived_order, DerivedOrder};

/// One scripted order change: from this stage on, `less < greater`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flip {
    pub stage: u64,
    pub less: String,
    pub greater: String,
}

/// Scripted stage-indexed linear orders on a fixed point set, converging
/// pointwise: the initial order is the `points` list, and each flip
/// repositions the lower-priority member of its pair.
#[derive(Clone, Debug, Default)]
pub struct OrderApproximation {
    pub points: Vec<String>,
    pub flips: Vec<Flip>,
}

impl OrderApproximation {
    pub fn new(points: Vec<String>, mut flips: Vec<Flip>) -> Self {
        flips.sort_by_key(|f| f.stage);
        OrderApproximation { points, flips }
    }

    pub fn max_stage(&self) -> u64 {
        self.flips.iter().map(|f| f.stage).max().unwrap_or(0)
    }

    /// Priority: position in the point list, lower = higher priority.
    pub fn priority(&self, label: &str) -> usize {
        self.points
            .iter()
            .position(|p| p == label)
            .expect("unknown point label")
    }

    /// The believed order after applying all flips with stage <= `stage`:
    /// apply each flip by repositioning the lower-priority member next to
    /// the higher-priority one on the scripted side.
    pub fn order_at(&self, stage: u64) -> Vec<String> {
        let mut order = self.points.clone();
        for f in self.flips.iter().filter(|f| f.stage <= stage) {
            apply_flip(&mut order, &self.points, f);
        }
        order
    }

    pub fn limit_order(&self) -> DerivedOrder {
        DerivedOrder {
            points: self.order_at(u64::MAX),
            has_left_endpoint: !self.points.is_empty(),
        }
    }
}

/// Apply a flip to the believed order; returns false when the pair already
/// sits in the scripted relative order (nothing moves).
fn apply_flip(order: &mut Vec<String>, priority: &[String], f: &Flip) -> bool {
    let cur_less = order.iter().position(|p| *p == f.less).expect("label");
    let cur_greater = order.iter().position(|p| *p == f.greater).expect("label");
    if cur_less < cur_greater {
        return false;
    }
    let pl = priority.iter().position(|p| *p == f.less).expect("label");
    let pg = priority
        .iter()
        .position(|p| *p == f.greater)
        .expect("label");
    // The lower-priority (larger index) member moves to the scripted side
    // of the other.
    let (mover, anchor) = if pl > pg {
        (&f.less, &f.greater)
    } else {
        (&f.greater, &f.less)
    };
    let mover_goes_left = mover == &f.less;
    let mpos = order.iter().position(|p| p == mover).unwrap();
    order.remove(mpos);
    let apos = order.iter().position(|p| p == anchor).unwrap();
    if mover_goes_left {
        order.insert(apos, mover.clone());
    } else {
        order.insert(apos + 1, mover.clone());
    }
    true
}

/// Builder events, appended in stage order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeEvent {
    Init {
        point: String,
        coord: u32,
    },
    Flip {
        stage: u64,
        less: String,
        greater: String,
    },
    /// `point`'s old element was set equal to `anchor`'s element to the
    /// given power, and a fresh element took its place.
    Demote {
        stage: u64,
        point: String,
        anchor: String,
        power: u32,
        old_coord: u32,
        new_coord: u32,
    },
}

pub struct PrimeCopyRun {
    pub field: NonArchField,
    pub d_elements: Vec<(String, NonArchElement)>,
    pub events: Vec<PrimeEvent>,
    pub redefinitions: Vec<(String, u64)>,
    pub final_order: DerivedOrder,
}

/// Run the finite-injury copy builder for `stages` stages.  Errors with
/// `ScriptExhausted` (as `NaError::TruncationOverflow` is never used here)
/// if the approximation has flips beyond the horizon, i.e. it does not
/// converge within its script.
pub fn build_prime_copy(
    approx: &OrderApproximation,
    stages: u64,
) -> Result<PrimeCopyRun, NaError> {
    assert!(
        approx.max_stage() <= stages,
        "order approximation does not converge within the requested stages"
    );
    let mut field = NonArchField::new();
    let mut events = Vec::new();
    let mut coords: Vec<CoordId> = Vec::new();
    let mut redefs: Vec<u64> = alloc::vec![0; approx.points.len()];

    // Stage 0: one element per point, ranked by the initial order.
    for (i, label) in approx.points.iter().enumerate() {
        let c = field.new_coord(Rational::from_int(i as i64));
        coords.push(c);
        events.push(PrimeEvent::Init {
            point: label.clone(),
            coord: c.0,
        });
    }
    let mut d_elements: Vec<NonArchElement> = coords
        .iter()
        .map(|&c| field.d_element(c))
        .collect();

    let mut believed = approx.points.clone();
    for stage in 1..=stages {
        for f in approx.flips.iter().filter(|f| f.stage == stage) {
            if !apply_flip(&mut believed, &approx.points, f) {
                continue;
            }
            events.push(PrimeEvent::Flip {
                stage,
                less: f.less.clone(),
                greater: f.greater.clone(),
            });
            // Lower priority member is demoted.
            let (mover, anchor) = if approx.priority(&f.less) > approx.priority(&f.greater) {
                (f.less.clone(), f.greater.clone())
            } else {
                (f.greater.clone(), f.less.clone())
            };
            let mi = approx.priority(&mover);
            let ai = approx.priority(&anchor);
            let power = (stage + 2) as u32;
            let old_coord = coords[mi];
            // Old element joins the anchor's class: t_old = t_anchor^power.
            let factor = Rational::from_int(power as i64);
            for e in d_elements.iter_mut() {
                *e = field.substitute_coord_monomial(e, old_coord, coords[ai], &factor)?;
            }
            field.retire_coord(old_coord);
            // Fresh element at the believed position of the mover.
            let pos = believed.iter().position(|p| *p == mover).unwrap();
            let below = pos
                .checked_sub(1)
                .map(|i| field.rank(coords[approx.priority(&believed[i])]));
            let above = believed
                .get(pos + 1)
                .map(|l| field.rank(coords[approx.priority(l)]));
            let new_coord = match (below, above) {
                (Some(b), Some(a)) => field.new_coord_between(&b, &a),
                (Some(b), None) => field.new_coord(b + Rational::one()),
                (None, Some(a)) => field.new_coord(a - Rational::one()),
                (None, None) => field.new_coord(Rational::zero()),
            };
            coords[mi] = new_coord;
            d_elements[mi] = field.d_element(new_coord);
            redefs[mi] += 1;
            events.push(PrimeEvent::Demote {
                stage,
                point: mover,
                anchor,
                power,
                old_coord: old_coord.0,
                new_coord: new_coord.0,
            });
        }
    }

    let labeled: Vec<(String, NonArchElement)> = approx
        .points
        .iter()
        .cloned()
        .zip(d_elements.iter().cloned())
        .collect();
    let final_order = derived_order(&mut field, &labeled)?;
    Ok(PrimeCopyRun {
        field,
        d_elements: labeled,
        events,
        redefinitions: approx
            .points
            .iter()
            .cloned()
            .zip(redefs.iter().copied())
            .collect(),
        final_order,
    })
}
