//! Univariate polynomials over the generator fraction field: euclidean
//! arithmetic, gcds, squarefree parts, and Sturm chains with symbolic
//! coefficients.

use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{MultiPoly, Rational};

use super::kfrac::KFrac;

/// Dense univariate polynomial over the generator fraction field;
/// coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    coeffs: Vec<KFrac>,
}

impl KPoly {
    pub fn new(mut coeffs: Vec<KFrac>) -> Self {
        while coeffs.last().map_or(false, KFrac::is_zero) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn zero() -> Self {
        KPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: KFrac) -> Self {
        KPoly::new(alloc::vec![c])
    }

    /// The monic linear polynomial X - v.
    pub fn x_minus(v: &KFrac) -> Self {
        KPoly::new(alloc::vec![v.neg(), KFrac::one()])
    }

    pub fn coeffs(&self) -> &[KFrac] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &KFrac {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn neg(&self) -> KPoly {
        KPoly {
            coeffs: self.coeffs.iter().map(KFrac::neg).collect(),
        }
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(KFrac::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(KFrac::zero);
            out.push(a.add(&b));
        }
        KPoly::new(out)
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero();
        }
        let mut out = alloc::vec![KFrac::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        KPoly::new(out)
    }

    pub fn scale(&self, c: &KFrac) -> KPoly {
        KPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn derivative(&self) -> KPoly {
        if self.coeffs.len() <= 1 {
            return KPoly::zero();
        }
        KPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_int(i as i64)))
                .collect(),
        )
    }

    /// Euclidean remainder over the fraction field.
    pub fn rem(&self, divisor: &KPoly) -> KPoly {
        assert!(!divisor.is_zero(), "remainder by zero polynomial");
        let mut rem = self.clone();
        let dd = divisor.degree();
        let lead = divisor.leading().clone();
        while !rem.is_zero() && rem.degree() >= dd {
            let rd = rem.degree();
            let factor = rem.leading().div(&lead);
            let mut sub = alloc::vec![KFrac::zero(); rd - dd];
            sub.push(factor);
            let sub = KPoly::new(sub);
            rem = rem.sub(&sub.mul(divisor));
            // Guard against a failed leading-term cancellation.
            if !rem.is_zero() && rem.degree() == rd {
                panic!("leading term failed to cancel in division");
            }
        }
        rem
    }

    /// Monic gcd over the fraction field.
    pub fn gcd(&self, other: &KPoly) -> KPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().clone();
        a.scale(&KFrac::one().div(&lead))
    }

    /// Squarefree part (self divided by gcd with its derivative).
    pub fn squarefree(&self) -> KPoly {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.is_zero() || g.degree() == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &KPoly) -> KPoly {
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let dd = divisor.degree();
        let lead = divisor.leading().clone();
        let mut quot = alloc::vec![
            KFrac::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while !rem.is_zero() && rem.degree() >= dd {
            let rd = rem.degree();
            let factor = rem.leading().div(&lead);
            quot[rd - dd] = factor.clone();
            let mut sub = alloc::vec![KFrac::zero(); rd - dd];
            sub.push(factor);
            rem = rem.sub(&KPoly::new(sub).mul(divisor));
        }
        assert!(rem.is_zero(), "polynomial division was not exact");
        KPoly::new(quot)
    }

    /// Evaluate at a rational point.
    pub fn eval_rational(&self, x: &Rational) -> KFrac {
        let xf = KFrac::from_rational(x);
        let mut acc = KFrac::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xf).add(c);
        }
        acc
    }

    /// Substitute X -> X + q.
    pub fn shift(&self, q: &Rational) -> KPoly {
        // Horner: p(X + q) built from the top coefficient down.
        let mut acc = KPoly::zero();
        let xq = KPoly::new(alloc::vec![KFrac::from_rational(q), KFrac::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xq).add(&KPoly::constant(c.clone()));
        }
        acc
    }

    /// Substitute X -> qX (q nonzero).
    pub fn stretch(&self, q: &Rational) -> KPoly {
        assert!(!q.is_zero());
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = Rational::one();
        for c in &self.coeffs {
            out.push(c.scale(&p));
            p *= q.clone();
        }
        KPoly::new(out)
    }

    /// Substitute X -> -X.
    pub fn reflect(&self) -> KPoly {
        KPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        )
    }

    /// X^deg * p(1/X): reverses the coefficients.
    pub fn reverse(&self) -> KPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        KPoly::new(coeffs)
    }

    /// Sturm chain of the squarefree part.
    pub fn sturm_chain(&self) -> Vec<KPoly> {
        let sf = self.squarefree();
        let mut chain = alloc::vec![sf.clone()];
        let d = sf.derivative();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                if chain[n - 1].degree() == 0 {
                    break;
                }
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        chain
    }

    /// Clear denominators into integer generator-polynomial coefficients;
    /// the result defines the same roots.
    pub fn clear_denominators(&self) -> Vec<MultiPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        // Multiply every coefficient by the product of all the others'
        // denominators; no polynomial division needed.
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut scaled = c.num().clone();
            for (j, other) in self.coeffs.iter().enumerate() {
                if i != j {
                    scaled = scaled.mul(other.den());
                }
            }
            out.push(scaled);
        }
        out
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            write!(f, "({:?})*X^{}", c, i)?;
            if i > 0 {
                write!(f, " + ")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn qp(coeffs: &[(i64, i64)]) -> KPoly {
        KPoly::new(
            coeffs
                .iter()
                .map(|&(n, d)| KFrac::from_rational(&rat(n, d)))
                .collect(),
        )
    }

    #[test]
    fn remainder_and_gcd() {
        // gcd(X^2 - 1, X - 1) = X - 1 (monic).
        let a = qp(&[(-1, 1), (0, 1), (1, 1)]);
        let b = qp(&[(-1, 1), (1, 1)]);
        assert!(a.rem(&b).is_zero());
        assert_eq!(a.gcd(&b), b);
        // Coprime pair gives a constant gcd.
        let c = qp(&[(1, 1), (1, 1)]);
        let g = c.gcd(&b);
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (X-1)^2 -> X - 1 up to a constant.
        let p = qp(&[(1, 1), (-2, 1), (1, 1)]);
        let sf = p.squarefree();
        assert_eq!(sf.degree(), 1);
        assert!(sf.eval_rational(&rat(1, 1)).is_zero());
    }

    #[test]
    fn substitutions() {
        // p = X^2 - 2; p(X+1) = X^2 + 2X - 1.
        let p = qp(&[(-2, 1), (0, 1), (1, 1)]);
        let s = p.shift(&rat(1, 1));
        assert_eq!(s, qp(&[(-1, 1), (2, 1), (1, 1)]));
        // stretch: p(2X) = 4X^2 - 2.
        assert_eq!(p.stretch(&rat(2, 1)), qp(&[(-2, 1), (0, 1), (4, 1)]));
        // reflect: even polynomial unchanged.
        assert_eq!(p.reflect(), p);
        // reverse: X^2 * p(1/X) = -2X^2 + 1.
        assert_eq!(p.reverse(), qp(&[(1, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn chain_over_generators() {
        // X^2 - x0 over one generator: chain exists, length 3.
        let p = KPoly::new(alloc::vec![
            KFrac::generator(0).neg(),
            KFrac::zero(),
            KFrac::one(),
        ]);
        let chain = p.sturm_chain();
        assert_eq!(chain.len(), 3);
    }
}
