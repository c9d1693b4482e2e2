//! Zero-avoiding box search: find a sub-box of a coordinate box on which a
//! polynomial's interval enclosure certifiably excludes zero.

use alloc::vec::Vec;

use super::interval::{CoordBox, RationalInterval};
use super::poly::{eval_box, MultiPoly};

/// Result of a budgeted avoiding-box search.  `NotFound` means "might not be
/// possible at this stage": the subdivision budget ran out before a
/// certified sub-box appeared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AvoidOutcome {
    Found {
        prefix: CoordBox,
        interval: RationalInterval,
    },
    NotFound,
}

impl AvoidOutcome {
    pub fn found(&self) -> Option<(&CoordBox, &RationalInterval)> {
        match self {
            AvoidOutcome::Found { prefix, interval } => Some((prefix, interval)),
            AvoidOutcome::NotFound => None,
        }
    }
}

fn split_coord(iv: &RationalInterval) -> (RationalInterval, RationalInterval) {
    let mid = iv.midpoint();
    (
        RationalInterval::open(iv.lo().clone(), mid.clone()),
        RationalInterval::open(mid, iv.hi().clone()),
    )
}

/// Budgeted depth-first search over sub-boxes.  `subdividable[i]` says
/// whether coordinate `i` may be bisected; the widest allowed coordinate is
/// split first (ties to the lowest index) and the left half is explored
/// before the right, so the search order is deterministic.  The budget
/// counts box evaluations.
fn search(
    p: &MultiPoly,
    start: CoordBox,
    subdividable: &[bool],
    mut budget: u64,
) -> Option<CoordBox> {
    let mut stack = alloc::vec![start];
    while let Some(boxx) = stack.pop() {
        if budget == 0 {
            return None;
        }
        budget -= 1;
        let enclosure = eval_box(p, &boxx).expect("box dimension checked by caller");
        if !enclosure.contains_zero() {
            return Some(boxx);
        }
        // Pick the widest subdividable coordinate.
        let mut widest: Option<(usize, crate::exactnum::Rational)> = None;
        for (i, iv) in boxx.coords().iter().enumerate() {
            if !subdividable[i] {
                continue;
            }
            let w = iv.width();
            match &widest {
                Some((_, best)) if *best >= w => {}
                _ => widest = Some((i, w)),
            }
        }
        let Some((i, _)) = widest else {
            continue; // nothing to split, this box is a dead end
        };
        let (left, right) = split_coord(boxx.coord(i));
        let mut lhs_coords: Vec<RationalInterval> = boxx.coords().to_vec();
        let mut rhs_coords = lhs_coords.clone();
        lhs_coords[i] = left;
        rhs_coords[i] = right;
        // Right pushed first so the left half pops next.
        stack.push(CoordBox::new(rhs_coords));
        stack.push(CoordBox::new(lhs_coords));
    }
    None
}

/// Search for a sub-box `prefix' x (a,b)` of `prefix x target` with
/// `0` outside the enclosure of `p` over it.  Every coordinate, prefix
/// included, may be subdivided.
pub fn find_avoiding_box(
    p: &MultiPoly,
    prefix: &CoordBox,
    target: &RationalInterval,
    budget: u64,
) -> AvoidOutcome {
    assert!(!p.is_zero(), "avoiding search needs a nonzero polynomial");
    let m = prefix.dim();
    assert!(
        p.max_var().map_or(true, |v| v <= m),
        "polynomial uses variables beyond the prefix and target"
    );
    let full = prefix.extended(target.clone());
    let subdividable = alloc::vec![true; full.dim()];
    match search(p, full, &subdividable, budget) {
        Some(found) => {
            let mut coords = found.coords().to_vec();
            let interval = coords.pop().expect("box retains the target coordinate");
            AvoidOutcome::Found {
                prefix: CoordBox::new(coords),
                interval,
            }
        }
        None => AvoidOutcome::NotFound,
    }
}

/// Like [`find_avoiding_box`], but the prefix coordinates are frozen: only
/// the final coordinate is subdivided, so a success certifies the exclusion
/// over the whole given prefix box.
pub fn find_avoiding_interval(
    p: &MultiPoly,
    prefix: &CoordBox,
    target: &RationalInterval,
    budget: u64,
) -> Option<RationalInterval> {
    assert!(!p.is_zero());
    let m = prefix.dim();
    assert!(p.max_var().map_or(true, |v| v <= m));
    let full = prefix.extended(target.clone());
    let mut subdividable = alloc::vec![false; full.dim()];
    *subdividable.last_mut().expect("target coordinate") = true;
    search(p, full, &subdividable, budget).map(|found| {
        found
            .coords()
            .last()
            .cloned()
            .expect("box retains the target coordinate")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::exactnum::MultiPoly;

    fn open(a: crate::exactnum::Rational, b: crate::exactnum::Rational) -> RationalInterval {
        RationalInterval::open(a, b)
    }

    #[test]
    fn constant_sign_needs_no_subdivision() {
        // p = X0 - 5 with empty prefix, target (2,3): the whole target works.
        let p = MultiPoly::var(0).add(&MultiPoly::constant(-5));
        let out = find_avoiding_box(&p, &CoordBox::empty(), &open(rat(2, 1), rat(3, 1)), 32);
        let (prefix, iv) = out.found().expect("must succeed");
        assert_eq!(prefix.dim(), 0);
        assert_eq!(iv, &open(rat(2, 1), rat(3, 1)));
    }

    #[test]
    fn difference_over_disjoint_ranges() {
        // p = X1 - X0, prefix (0,1), target (2,3): enclosure (1,3) omits 0.
        let p = MultiPoly::var(1).sub(&MultiPoly::var(0));
        let prefix = CoordBox::new(alloc::vec![open(rat(0, 1), rat(1, 1))]);
        let out = find_avoiding_box(&p, &prefix, &open(rat(2, 1), rat(3, 1)), 32);
        let (sub, iv) = out.found().expect("must succeed");
        assert_eq!(sub.coord(0), &open(rat(0, 1), rat(1, 1)));
        assert_eq!(iv, &open(rat(2, 1), rat(3, 1)));
    }

    #[test]
    fn near_circle_boxes() {
        // X0^2 + X1^2 - 2 over (1.41,1.42)^2 is certified in one evaluation.
        let sum_sq = MultiPoly::var(0)
            .mul(&MultiPoly::var(0))
            .add(&MultiPoly::var(1).mul(&MultiPoly::var(1)));
        let p2 = sum_sq.add(&MultiPoly::constant(-2));
        let band = open(rat(141, 100), rat(142, 100));
        let prefix = CoordBox::new(alloc::vec![band.clone()]);
        // Budget of a depth-8 subdivision search.
        assert!(find_avoiding_box(&p2, &prefix, &band, 1 + 8).found().is_some());

        // X0^2 + X1^2 - 4 vanishes inside that box (at x = y = sqrt 2), so
        // subdivision is genuinely needed, and must still succeed.
        let p4 = sum_sq.add(&MultiPoly::constant(-4));
        let out = find_avoiding_box(&p4, &prefix, &band, 64);
        let (sub, iv) = out.found().expect("subdivision finds a clean corner");
        let full = sub.extended(iv.clone());
        assert!(!crate::exactnum::eval_box(&p4, &full).unwrap().contains_zero());
        assert!(sub.coord(0).is_subset_of(&band) && iv.is_subset_of(&band));
    }

    #[test]
    fn budget_exhaustion_reports_not_found() {
        // X0 straddles zero on (-1,1) and every sub-box around 0 fails; with
        // a tiny budget the search gives up.
        let p = MultiPoly::var(0);
        let out = find_avoiding_box(&p, &CoordBox::empty(), &open(rat(-1, 1), rat(1, 1)), 1);
        assert_eq!(out, AvoidOutcome::NotFound);
        // With budget it succeeds on a half.
        let out = find_avoiding_box(&p, &CoordBox::empty(), &open(rat(-1, 1), rat(1, 1)), 8);
        assert!(out.found().is_some());
    }

    #[test]
    fn frozen_prefix_certifies_whole_prefix() {
        // p = X0 - X1 over fixed prefix (0,1): no subinterval of (0,1) for
        // X1 can exclude zero, but (2,3) can.
        let p = MultiPoly::var(0).sub(&MultiPoly::var(1));
        let prefix = CoordBox::new(alloc::vec![open(rat(0, 1), rat(1, 1))]);
        assert!(find_avoiding_interval(&p, &prefix, &open(rat(0, 1), rat(1, 1)), 64).is_none());
        let iv = find_avoiding_interval(&p, &prefix, &open(rat(2, 1), rat(3, 1)), 8)
            .expect("disjoint target certifies");
        let full = prefix.extended(iv);
        assert!(!crate::exactnum::eval_box(&p, &full).unwrap().contains_zero());
    }
}
