//! Multiplicative classes of positive infinite elements and the derived
//! linear order.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::exactnum::Rational;

use super::exponent::CoordId;
use super::field::{Class, NaError, NonArchElement, NonArchField};

/// Verdict of a multiplicative-class comparison between two positive
/// infinite elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultClass {
    /// Same class; carries the witness n (capped by the search budget) with
    /// `y < x^n` and `x < y^n`.
    SameClass { witness: u64 },
    XClassLess,
    YClassLess,
}

/// Finite linear order on labeled points, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOrder {
    pub points: Vec<String>,
    pub has_left_endpoint: bool,
}

impl DerivedOrder {
    pub fn empty() -> Self {
        DerivedOrder {
            points: Vec::new(),
            has_left_endpoint: false,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    /// Order-isomorphism with matching labels.
    pub fn isomorphic_to(&self, other: &DerivedOrder) -> bool {
        self.points == other.points
    }
}

impl NonArchField {
    /// Dominant live coordinate of a positive infinite element: the
    /// highest-ranked coordinate of the leading exponent.
    pub fn dominant_coord(&mut self, x: &NonArchElement) -> Result<CoordId, NaError> {
        assert!(self.classify(x)? == Class::PosInfinite, "not positive infinite");
        let (lead, _) = x.leading().expect("infinite elements are nonzero");
        let rank_of = |c: CoordId| self.rank(c);
        let (c, _) = lead
            .dominant(&rank_of)
            .expect("infinite leading exponent is nonempty");
        Ok(c)
    }

    /// Compare the multiplicative classes of two positive infinite
    /// elements.  Same dominant coordinate means same class (each is below
    /// a power of the other); otherwise the coordinate rank decides.
    /// `n_budget` caps the reported witness exponent.
    pub fn mult_class_compare(
        &mut self,
        x: &NonArchElement,
        y: &NonArchElement,
        n_budget: u64,
    ) -> Result<MultClass, NaError> {
        let cx = self.dominant_coord(x)?;
        let cy = self.dominant_coord(y)?;
        if cx == cy {
            // Witness: smallest n with y < x^n and x < y^n, from the
            // dominant exponents (both negative).
            let gx = x.leading().expect("nonzero").0.get(cx);
            let gy = y.leading().expect("nonzero").0.get(cy);
            let ratio_xy = &gy / &gx; // both negative, ratio positive
            let ratio_yx = &gx / &gy;
            let mut n = 1u64;
            while n < n_budget
                && !(Rational::from_int(n as i64) > ratio_xy
                    && Rational::from_int(n as i64) > ratio_yx)
            {
                n += 1;
            }
            return Ok(MultClass::SameClass { witness: n });
        }
        if self.rank(cx) < self.rank(cy) {
            Ok(MultClass::XClassLess)
        } else {
            Ok(MultClass::YClassLess)
        }
    }
}

/// Quotient a family of positive infinite elements by multiplicative class
/// and order the classes; labels name the first element of each class by
/// its input position.
pub fn derived_order(
    field: &mut NonArchField,
    elements: &[(String, NonArchElement)],
) -> Result<DerivedOrder, NaError> {
    let mut classes: Vec<(CoordId, Vec<String>)> = Vec::new();
    for (label, e) in elements {
        let c = field.dominant_coord(e)?;
        match classes.iter_mut().find(|(cc, _)| *cc == c) {
            Some((_, members)) => members.push(label.clone()),
            None => classes.push((c, alloc::vec![label.clone()])),
        }
    }
    classes.sort_by(|(a, _), (b, _)| field.rank(*a).cmp_val(&field.rank(*b)));
    let points = classes.into_iter().map(|(_, mut m)| {
        m.sort();
        m.swap_remove(0)
    });
    Ok(DerivedOrder {
        points: points.collect(),
        has_left_endpoint: !elements.is_empty(),
    })
}

/// Compare two positive infinite elements' classes and also expose whether
/// they share one -- convenience over `mult_class_compare` for order tests.
pub fn class_cmp(
    field: &mut NonArchField,
    x: &NonArchElement,
    y: &NonArchElement,
) -> Result<Ordering, NaError> {
    Ok(match field.mult_class_compare(x, y, 64)? {
        MultClass::SameClass { .. } => Ordering::Equal,
        MultClass::XClassLess => Ordering::Less,
        MultClass::YClassLess => Ordering::Greater,
    })
}
