//! Exponent vectors for the truncated Hahn representation: finitely many
//! rational entries indexed by live infinitesimal coordinates, compared
//! lexicographically by coordinate rank.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::exactnum::Rational;

/// Index of an infinitesimal scale in a field's coordinate registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordId(pub u32);

/// Sparse exponent vector; entries sorted by coordinate id, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Exponent {
    entries: Vec<(CoordId, Rational)>,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::default()
    }

    pub fn unit(c: CoordId) -> Self {
        Exponent {
            entries: alloc::vec![(c, Rational::one())],
        }
    }

    pub fn single(c: CoordId, e: Rational) -> Self {
        if e.is_zero() {
            return Exponent::zero();
        }
        Exponent {
            entries: alloc::vec![(c, e)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(CoordId, Rational)] {
        &self.entries
    }

    pub fn get(&self, c: CoordId) -> Rational {
        self.entries
            .iter()
            .find(|(id, _)| *id == c)
            .map(|(_, e)| e.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn mentions(&self, c: CoordId) -> bool {
        self.entries.iter().any(|(id, _)| *id == c)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        let mut out: Vec<(CoordId, Rational)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let pick_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some((a, _)), Some((b, _))) => {
                    if a == b {
                        let e = &self.entries[i].1 + &other.entries[j].1;
                        if !e.is_zero() {
                            out.push((*a, e));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a < b
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if pick_left {
                out.push(self.entries[i].clone());
                i += 1;
            } else {
                out.push(other.entries[j].clone());
                j += 1;
            }
        }
        Exponent { entries: out }
    }

    pub fn neg(&self) -> Exponent {
        Exponent {
            entries: self.entries.iter().map(|(c, e)| (*c, -e)).collect(),
        }
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Exponent {
        if q.is_zero() {
            return Exponent::zero();
        }
        Exponent {
            entries: self.entries.iter().map(|(c, e)| (*c, e * q)).collect(),
        }
    }

    /// Remove the entry for `c`, returning its exponent if present.
    pub fn without(&self, c: CoordId) -> (Option<Rational>, Exponent) {
        let mut entries = Vec::with_capacity(self.entries.len());
        let mut removed = None;
        for (id, e) in &self.entries {
            if *id == c {
                removed = Some(e.clone());
            } else {
                entries.push((*id, e.clone()));
            }
        }
        (removed, Exponent { entries })
    }

    /// The dominant coordinate: highest rank among entries.
    pub fn dominant(&self, rank: &dyn Fn(CoordId) -> Rational) -> Option<(CoordId, Rational)> {
        self.entries
            .iter()
            .max_by(|(a, _), (b, _)| rank(*a).cmp_val(&rank(*b)))
            .map(|(c, e)| (*c, e.clone()))
    }
}

/// Magnitude order on monomials `t^g`: `Less` means the monomial is larger
/// in absolute value, so sorting ascending puts leading terms first.
/// Compared at the highest-ranked coordinate where the exponents differ; a
/// smaller entry there means a larger monomial.
pub fn cmp_exp(rank: &dyn Fn(CoordId) -> Rational, a: &Exponent, b: &Exponent) -> Ordering {
    // Collect the differing entries and find the highest-ranked one.
    let mut best: Option<(Rational, Rational, Rational)> = None; // (rank, ea, eb)
    let mut consider = |c: CoordId, ea: Rational, eb: Rational| {
        if ea == eb {
            return;
        }
        let r = rank(c);
        match &best {
            Some((br, _, _)) if br >= &r => {}
            _ => best = Some((r, ea, eb)),
        }
    };
    for (c, e) in a.entries() {
        consider(*c, e.clone(), b.get(*c));
    }
    for (c, e) in b.entries() {
        if !a.mentions(*c) {
            consider(*c, Rational::zero(), e.clone());
        }
    }
    match best {
        None => Ordering::Equal,
        Some((_, ea, eb)) => ea.cmp_val(&eb),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ranks(c: CoordId) -> Rational {
        // rank = coord id
        Rational::from_int(c.0 as i64)
    }

    #[test]
    fn magnitude_order() {
        let a = CoordId(0);
        let b = CoordId(1);
        // d_b = t_b^-1 beats every power of d_a = t_a^-1.
        let db = Exponent::single(b, rat(-1, 1));
        let da_cubed = Exponent::single(a, rat(-3, 1));
        assert_eq!(cmp_exp(&ranks, &db, &da_cubed), Ordering::Less);
        // Within a coordinate, more negative = larger.
        let da = Exponent::single(a, rat(-1, 1));
        assert_eq!(cmp_exp(&ranks, &da_cubed, &da), Ordering::Less);
        // Infinitesimals sort after the unit exponent.
        let eps = Exponent::single(a, rat(1, 1));
        assert_eq!(cmp_exp(&ranks, &Exponent::zero(), &eps), Ordering::Less);
    }

    #[test]
    fn arithmetic() {
        let a = CoordId(0);
        let b = CoordId(1);
        let g = Exponent::single(a, rat(2, 1)).add(&Exponent::single(b, rat(-1, 1)));
        assert_eq!(g.get(a), rat(2, 1));
        assert_eq!(g.get(b), rat(-1, 1));
        assert!(g.add(&g.neg()).is_zero());
        assert_eq!(g.scale(&rat(3, 1)).get(a), rat(6, 1));
        let (removed, rest) = g.without(a);
        assert_eq!(removed, Some(rat(2, 1)));
        assert!(!rest.mentions(a) && rest.mentions(b));
    }
}
