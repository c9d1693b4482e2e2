//! The fraction field of the generator polynomial ring.
//!
//! Elements are quotients of integer multivariate polynomials in the
//! generator variables.  Because the generators are assumed algebraically
//! independent, an element is zero exactly when its numerator is the zero
//! polynomial, so zero tests here are syntactic and exact.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactnum::{MultiPoly, Rational};

#[derive(Clone)]
pub struct KFrac {
    num: MultiPoly,
    den: MultiPoly,
}

/// Equality by cross-multiplication (fractions are not kept in a canonical
/// reduced form).
impl PartialEq for KFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for KFrac {}

impl KFrac {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in generator fraction");
        let mut f = KFrac { num, den };
        f.normalize();
        f
    }

    pub fn zero() -> Self {
        KFrac {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        KFrac {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        KFrac {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        KFrac {
            num: MultiPoly::constant(q.numer().clone()),
            den: MultiPoly::constant(q.denom().clone()),
        }
    }

    pub fn generator(index: usize) -> Self {
        KFrac::from_poly(MultiPoly::var(index))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact rational value, when the fraction is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.max_var().is_some() || self.den.max_var().is_some() {
            return None;
        }
        if self.num.is_zero() {
            return Some(Rational::zero());
        }
        let n = self.num.coeff(&crate::exactnum::Monomial::unit());
        let d = self.den.coeff(&crate::exactnum::Monomial::unit());
        Some(Rational::new(n, d))
    }

    /// Strip common integer content and make the denominator's leading
    /// coefficient positive.  (No full polynomial gcd; sizes stay tame at
    /// desk scale without it.)
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            g = g.gcd(c);
        }
        if !g.is_zero() && g != BigInt::from(1) {
            self.num = self.num.div_exact(&MultiPoly::constant(g.clone()));
            self.den = self.den.div_exact(&MultiPoly::constant(g));
        }
        let lead_negative = self
            .den
            .leading_term()
            .map_or(false, |(_, c)| c.is_negative());
        if lead_negative {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &KFrac) -> KFrac {
        KFrac::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &KFrac) -> KFrac {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KFrac {
        KFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &KFrac) -> KFrac {
        KFrac::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &KFrac) -> KFrac {
        assert!(!other.is_zero(), "division by zero generator fraction");
        KFrac::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn scale(&self, q: &Rational) -> KFrac {
        self.mul(&KFrac::from_rational(q))
    }
}

impl fmt::Debug for KFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Display for KFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn field_identities() {
        let x = KFrac::generator(0);
        let half = KFrac::from_rational(&rat(1, 2));
        let v = x.mul(&half).add(&x.mul(&half));
        assert_eq!(v, x);
        assert!(x.sub(&x).is_zero());
        let inv = KFrac::one().div(&x);
        assert_eq!(x.mul(&inv), KFrac::one());
    }

    #[test]
    fn rational_detection() {
        let q = KFrac::from_rational(&rat(-3, 4));
        assert_eq!(q.as_rational(), Some(rat(-3, 4)));
        assert_eq!(KFrac::generator(1).as_rational(), None);
    }

    #[test]
    fn denominator_sign_normalized() {
        let f = KFrac::new(MultiPoly::constant(1), MultiPoly::constant(-2));
        assert_eq!(f.as_rational(), Some(rat(-1, 2)));
    }
}
