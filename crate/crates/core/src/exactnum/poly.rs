use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{CoordBox, DimensionMismatch, IntervalKind, RationalInterval};
use super::rational::Rational;

/// Exponent vector with trailing zeros trimmed; the canonical monomial key.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut v = alloc::vec![0u32; index + 1];
        v[index] = 1;
        Monomial(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.exponent(i) + other.exponent(i));
        }
        Monomial::from_exponents(v)
    }
}

/// Display/term order: higher total degree first, ties by lexicographically
/// greater exponent vector first.  `Ord` is "comes earlier in a polynomial's
/// canonical term list".
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match other.total_degree().cmp(&self.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match other.exponent(i).cmp(&self.exponent(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with integer coefficients.
///
/// Invariants: no zero coefficients are stored, and monomial keys carry no
/// trailing zero exponents.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(), c);
        }
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn var(index: usize) -> Self {
        let mut p = MultiPoly::zero();
        p.terms.insert(Monomial::var(index), BigInt::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Largest variable index that occurs, `None` for constants.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    /// Largest absolute coefficient; zero polynomial gives 0.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn uses_only_vars_up_to(&self, max_index: usize) -> bool {
        self.max_var().map_or(true, |v| v <= max_index)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at a rational point (coordinates indexed by variable).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, DimensionMismatch> {
        let needed = self.max_var().map_or(0, |v| v + 1);
        if point.len() < needed {
            return Err(DimensionMismatch {
                needed,
                have: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = Rational::from(c.clone());
            for (var, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term *= point[var].pow(e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute polynomials for every variable.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        let needed = self.max_var().map_or(0, |v| v + 1);
        assert!(images.len() >= needed, "substitution images missing");
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (var, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[var].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Coefficients of the polynomial viewed as univariate in `var`, from
    /// degree 0 upward; each coefficient is a polynomial in the remaining
    /// variables.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = alloc::vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            let mut rest = m.exponents().to_vec();
            if var < rest.len() {
                rest[var] = 0;
            }
            out[e].add_term(Monomial::from_exponents(rest), c.clone());
        }
        out
    }

    /// Leading term under the canonical monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Exact division; panics if `d` does not divide `self`.  Used by the
    /// fraction-free determinant steps, where divisibility is guaranteed.
    pub fn div_exact(&self, d: &MultiPoly) -> MultiPoly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.leading_term().expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading_term().expect("nonzero remainder");
                (m.clone(), c.clone())
            };
            let mut exps = Vec::with_capacity(rm.exponents().len());
            let mut divisible = rm.exponents().len() >= dm.exponents().len();
            if divisible {
                for (i, &e) in rm.exponents().iter().enumerate() {
                    let de = dm.exponent(i);
                    if e < de {
                        divisible = false;
                        break;
                    }
                    exps.push(e - de);
                }
            }
            assert!(divisible, "monomial division not exact");
            let (q, r) = rc.div_rem(&dc);
            assert!(r.is_zero(), "coefficient division not exact");
            let mut qt = MultiPoly::zero();
            qt.add_term(Monomial::from_exponents(exps), q);
            rem = rem.sub(&qt.mul(d));
            quot = quot.add(&qt);
        }
        quot
    }

    /// Partial derivative.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] = e - 1;
            out.add_term(Monomial::from_exponents(exps), c * BigInt::from(e));
        }
        out
    }

    /// Canonical text form: terms in canonical order, each as
    /// `c*X0^a*X1^b`, joined with ` + ` (negative coefficients keep their
    /// sign on the coefficient).
    pub fn canonical_string(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{}", c);
            for (var, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let _ = write!(s, "*X{}", var);
                if e > 1 {
                    let _ = write!(s, "^{}", e);
                }
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

// Closed-interval arithmetic helpers on (lo, hi) pairs.
fn iv_add(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn iv_mul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    let products = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let mut lo = products[0].clone();
    let mut hi = products[0].clone();
    for p in &products[1..] {
        if p < &lo {
            lo = p.clone();
        }
        if p > &hi {
            hi = p.clone();
        }
    }
    (lo, hi)
}

fn iv_pow(a: &(Rational, Rational), e: u32) -> (Rational, Rational) {
    if e == 0 {
        return (Rational::one(), Rational::one());
    }
    if e % 2 == 1 || a.0.is_positive() || !a.1.is_positive() {
        // Monotone cases: odd power, or the interval has a single sign.
        let lo = a.0.pow(e);
        let hi = a.1.pow(e);
        if lo <= hi {
            (lo, hi)
        } else {
            (hi, lo)
        }
    } else {
        // Even power of an interval straddling zero.
        let lo_pow = a.0.pow(e);
        let hi_pow = a.1.pow(e);
        (Rational::zero(), lo_pow.max(hi_pow))
    }
}

/// Enclosure of `p` over the box `b`: a closed interval containing `p(x)`
/// for every `x` in `b`.  Exact rational arithmetic, so the only slack is
/// the usual interval-dependency overestimate, never rounding.
pub fn eval_box(p: &MultiPoly, b: &CoordBox) -> Result<RationalInterval, DimensionMismatch> {
    let needed = p.max_var().map_or(0, |v| v + 1);
    if b.dim() < needed {
        return Err(DimensionMismatch {
            needed,
            have: b.dim(),
        });
    }
    let coords: Vec<(Rational, Rational)> = b
        .coords()
        .iter()
        .map(|iv| (iv.lo().clone(), iv.hi().clone()))
        .collect();
    let mut acc = (Rational::zero(), Rational::zero());
    for (m, c) in p.terms() {
        let mut term = {
            let cq = Rational::from(c.clone());
            (cq.clone(), cq)
        };
        for (var, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = iv_mul(&term, &iv_pow(&coords[var], e));
            }
        }
        acc = iv_add(&acc, &term);
    }
    Ok(RationalInterval::new(acc.0, acc.1, IntervalKind::Closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn open(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::open(a, b)
    }

    #[test]
    fn identity_polynomial_over_interval() {
        // p = X0 over (1,2) encloses (1,2)
        let p = MultiPoly::var(0);
        let b = CoordBox::new(alloc::vec![open(rat(1, 1), rat(2, 1))]);
        let e = eval_box(&p, &b).unwrap();
        assert!(open(rat(1, 1), rat(2, 1)).is_subset_of(&e));
        assert_eq!(e.lo(), &rat(1, 1));
        assert_eq!(e.hi(), &rat(2, 1));
    }

    #[test]
    fn product_over_box_contains_true_image() {
        // p = X0*X1 over (1,2)x(3,4): image is (3,8); corner evaluation gives
        // exactly [3,8] here.
        let p = MultiPoly::var(0).mul(&MultiPoly::var(1));
        let b = CoordBox::new(alloc::vec![
            open(rat(1, 1), rat(2, 1)),
            open(rat(3, 1), rat(4, 1)),
        ]);
        let e = eval_box(&p, &b).unwrap();
        assert!(open(rat(3, 1), rat(8, 1)).is_subset_of(&e));
    }

    #[test]
    fn square_minus_two_near_sqrt2() {
        // p = X0^2 - 2 over (1.4, 1.5): corner evaluation gives
        // [1.96-2, 2.25-2] = [-1/25, 1/4], inside (-0.05, 0.26).
        let p = MultiPoly::var(0)
            .mul(&MultiPoly::var(0))
            .add(&MultiPoly::constant(-2));
        let b = CoordBox::new(alloc::vec![open(rat(7, 5), rat(3, 2))]);
        let e = eval_box(&p, &b).unwrap();
        assert_eq!(e.lo(), &rat(-1, 25));
        assert_eq!(e.hi(), &rat(1, 4));
        assert!(e.is_subset_of(&open(rat(-5, 100), rat(26, 100))));
    }

    #[test]
    fn even_power_straddling_zero() {
        // X0^2 over (-1, 2) must contain 0 (attained at the interior point 0).
        let p = MultiPoly::var(0).mul(&MultiPoly::var(0));
        let b = CoordBox::new(alloc::vec![open(rat(-1, 1), rat(2, 1))]);
        let e = eval_box(&p, &b).unwrap();
        assert!(e.contains_zero());
        assert_eq!(e.hi(), &rat(4, 1));
    }

    #[test]
    fn eval_and_dimension_mismatch() {
        let p = MultiPoly::var(1);
        assert!(p.eval(&[rat(1, 1)]).is_err());
        let b = CoordBox::new(alloc::vec![open(rat(0, 1), rat(1, 1))]);
        assert!(eval_box(&p, &b).is_err());
    }

    #[test]
    fn canonical_strings() {
        // 3*X0^2*X1 - 2*X3 + 1, printed in canonical term order.
        let p = MultiPoly::from_terms([
            (Monomial::from_exponents(alloc::vec![2, 1]), BigInt::from(3)),
            (
                Monomial::from_exponents(alloc::vec![0, 0, 0, 1]),
                BigInt::from(-2),
            ),
            (Monomial::unit(), BigInt::from(1)),
        ]);
        assert_eq!(p.canonical_string(), "3*X0^2*X1 + -2*X3 + 1");
        assert_eq!(MultiPoly::zero().canonical_string(), "0");
    }

    #[test]
    fn derivative_and_coeffs() {
        // d/dX0 (X0^3 - 2 X0) = 3 X0^2 - 2
        let p = MultiPoly::from_terms([
            (Monomial::from_exponents(alloc::vec![3]), BigInt::one()),
            (Monomial::var(0), BigInt::from(-2)),
        ]);
        let d = p.derivative(0);
        assert_eq!(d.canonical_string(), "3*X0^2 + -2");
        let coeffs = p.coeffs_in_var(0);
        assert_eq!(coeffs.len(), 4);
        assert!(coeffs[0].is_zero());
        assert_eq!(coeffs[1], MultiPoly::constant(-2));
    }
}
