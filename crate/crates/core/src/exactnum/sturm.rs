//! Sturm chains and real-root isolation for univariate integer polynomials.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::interval::{IntervalKind, RationalInterval};
use super::poly::MultiPoly;
use super::rational::Rational;

/// Dense coefficients, index = degree, no trailing zeros.
type Dense = Vec<BigInt>;

fn trim(mut v: Dense) -> Dense {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
    v
}

fn to_dense(p: &MultiPoly) -> Dense {
    assert!(
        p.uses_only_vars_up_to(0),
        "expected a univariate polynomial in X0"
    );
    let deg = p.total_degree() as usize;
    let mut v = alloc::vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        v[m.exponent(0) as usize] = c.clone();
    }
    trim(v)
}

fn eval_dense(p: &Dense, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + Rational::from(c.clone());
    }
    acc
}

fn derivative_dense(p: &Dense) -> Dense {
    if p.len() <= 1 {
        return Vec::new();
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn content(p: &Dense) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

/// Divide out the content; keeps the sign of the leading coefficient.
fn primitive(p: Dense) -> Dense {
    let g = content(&p);
    if g.is_zero() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Remainder of `a / b` over the rationals, returned as a primitive integer
/// polynomial with the remainder's sign (positive rescale only).
fn rational_rem(a: &Dense, b: &Dense) -> Dense {
    let mut rem: Vec<Rational> = a.iter().cloned().map(Rational::from).collect();
    let db = b.len() - 1;
    let lead_b = Rational::from(b[db].clone());
    while rem.len() >= b.len() {
        let da = rem.len() - 1;
        let factor = &rem[da] / &lead_b;
        for i in 0..b.len() {
            let sub = &factor * &Rational::from(b[i].clone());
            rem[da - db + i] -= sub;
        }
        // The leading entry is exactly cancelled.
        rem.pop();
        while rem.last().map_or(false, Rational::is_zero) {
            rem.pop();
        }
    }
    // Clear denominators with a positive multiplier and strip content.
    let mut denom = BigInt::from(1);
    for c in &rem {
        denom = denom.lcm(c.denom());
    }
    let ints: Dense = rem
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    primitive(trim(ints))
}

fn exact_div(num: &Dense, den: &Dense) -> Dense {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem: Vec<Rational> = num.iter().cloned().map(Rational::from).collect();
    let dd = den.len() - 1;
    let lead = Rational::from(den[dd].clone());
    let mut quot = alloc::vec![Rational::zero(); rem.len().saturating_sub(dd)];
    while rem.len() >= den.len() {
        let da = rem.len() - 1;
        let factor = &rem[da] / &lead;
        quot[da - dd] = factor.clone();
        for i in 0..den.len() {
            let sub = &factor * &Rational::from(den[i].clone());
            rem[da - dd + i] -= sub;
        }
        rem.pop();
        while rem.last().map_or(false, Rational::is_zero) {
            rem.pop();
        }
    }
    assert!(rem.is_empty(), "polynomial division was not exact");
    trim(
        quot.iter()
            .map(|c| {
                assert!(c.is_integer(), "quotient not integral");
                c.numer().clone()
            })
            .collect(),
    )
}

fn gcd_dense(a: &Dense, b: &Dense) -> Dense {
    let mut f = primitive(trim(a.clone()));
    let mut g = primitive(trim(b.clone()));
    if f.len() < g.len() {
        core::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = rational_rem(&f, &g);
        f = g;
        g = r;
    }
    // Normalize leading coefficient positive.
    if f.last().map_or(false, Signed::is_negative) {
        f = f.into_iter().map(|c| -c).collect();
    }
    f
}

/// Sturm chain of the squarefree part of a nonzero univariate polynomial.
pub struct SturmChain {
    chain: Vec<Dense>,
}

impl SturmChain {
    pub fn new(p: &MultiPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        Self::from_dense(to_dense(p))
    }

    fn from_dense(p: Dense) -> Self {
        let p = primitive(trim(p));
        let dp = derivative_dense(&p);
        let sf = if dp.is_empty() {
            p
        } else {
            let g = gcd_dense(&p, &dp);
            if g.len() <= 1 {
                p
            } else {
                primitive(exact_div(&p, &g))
            }
        };
        let mut chain = alloc::vec![sf.clone()];
        let d = derivative_dense(&sf);
        if !d.is_empty() {
            chain.push(d);
            loop {
                let n = chain.len();
                if chain[n - 1].len() <= 1 {
                    break;
                }
                let r = rational_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                chain.push(r.into_iter().map(|c| -c).collect());
            }
        }
        SturmChain { chain }
    }

    /// The squarefree part the chain was built from.
    pub fn squarefree(&self) -> &[BigInt] {
        &self.chain[0]
    }

    pub fn squarefree_eval(&self, x: &Rational) -> Rational {
        eval_dense(&self.chain[0], x)
    }

    pub fn is_root(&self, x: &Rational) -> bool {
        self.squarefree_eval(x).is_zero()
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for elem in &self.chain {
            let s = eval_dense(elem, x).signum();
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the open interval; endpoints must
    /// not be roots of the squarefree part.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        assert!(lo < hi);
        assert!(!self.is_root(lo) && !self.is_root(hi), "root at endpoint");
        self.variations(lo) - self.variations(hi)
    }

    /// Halve an isolating interval (count must be 1), keeping the root
    /// strictly inside and the endpoints off the root.
    pub fn narrow(&self, iv: &RationalInterval) -> RationalInterval {
        debug_assert_eq!(self.count_open(iv.lo(), iv.hi()), 1);
        let split = self
            .split_point(iv.lo(), iv.hi())
            .expect("no usable split point");
        if self.count_open(iv.lo(), &split) == 1 {
            RationalInterval::open(iv.lo().clone(), split)
        } else {
            RationalInterval::open(split, iv.hi().clone())
        }
    }

    /// A point strictly inside (lo, hi) that is not a root, trying the
    /// midpoint first and then dyadic offsets halving toward the interior.
    fn split_point(&self, lo: &Rational, hi: &Rational) -> Option<Rational> {
        let width = hi - lo;
        for k in 1..64u32 {
            let pieces = 1i64 << k;
            for j in (1..pieces).step_by(2) {
                let cand = lo + &(&width * &Rational::new(j, pieces));
                if !self.is_root(&cand) {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// Distinct real roots of the squarefree part of `p` in the open window
/// (endpoint roots of the window are excluded, as they are not interior).
pub fn sturm_count(p: &MultiPoly, window: &RationalInterval) -> usize {
    isolate_impl(p, window).len()
}

/// Pairwise-disjoint open isolating intervals inside `window`, one per real
/// root of the squarefree part of `p` in the window; interval endpoints are
/// never roots.
pub fn sturm_isolate(p: &MultiPoly, window: &RationalInterval) -> Vec<RationalInterval> {
    isolate_impl(p, window)
}

fn isolate_impl(p: &MultiPoly, window: &RationalInterval) -> Vec<RationalInterval> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    debug_assert!(window.kind() == IntervalKind::Open);
    let mut dense = to_dense(p);
    if dense.len() <= 1 {
        return Vec::new();
    }
    // Window endpoints that happen to be roots are deflated away: they are
    // not interior to the open window, and removing them keeps the chain's
    // endpoint evaluations nonzero.
    for endpoint in [window.lo(), window.hi()] {
        if eval_dense(&dense, endpoint).is_zero() {
            // X - q as den*X - num.
            let linear = trim(alloc::vec![
                -endpoint.numer().clone(),
                endpoint.denom().clone()
            ]);
            while eval_dense(&dense, endpoint).is_zero() && dense.len() > 1 {
                dense = exact_div(&dense, &linear);
            }
        }
    }
    if dense.len() <= 1 {
        return Vec::new();
    }
    let chain = SturmChain::from_dense(dense);
    let mut out = Vec::new();
    let mut stack = alloc::vec![(window.lo().clone(), window.hi().clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_open(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(RationalInterval::open(lo, hi)),
            _ => {
                let split = chain
                    .split_point(&lo, &hi)
                    .expect("no split point for isolation");
                // Right first so the stack pops left-to-right.
                stack.push((split.clone(), hi));
                stack.push((lo, split));
            }
        }
    }
    out.sort_by(|a, b| a.lo().cmp_val(b.lo()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn upoly(coeffs: &[i64]) -> MultiPoly {
        // coeffs from degree 0 upward
        let mut p = MultiPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.add_term(
                    super::super::poly::Monomial::from_exponents(alloc::vec![i as u32]),
                    BigInt::from(c),
                );
            }
        }
        p
    }

    #[test]
    fn sqrt2_isolated_once() {
        // X^2 - 2 on (0, 2): exactly one root interval and it brackets sqrt 2.
        let p = upoly(&[-2, 0, 1]);
        let ivs = sturm_isolate(&p, &RationalInterval::open(rat(0, 1), rat(2, 1)));
        assert_eq!(ivs.len(), 1);
        let iv = &ivs[0];
        assert!(eval_dense(&to_dense(&p), iv.lo()).is_negative());
        assert!(eval_dense(&to_dense(&p), iv.hi()).is_positive());
    }

    #[test]
    fn no_real_roots() {
        let p = upoly(&[1, 0, 1]); // X^2 + 1
        let ivs = sturm_isolate(&p, &RationalInterval::open(rat(-10, 1), rat(10, 1)));
        assert!(ivs.is_empty());
    }

    #[test]
    fn explicit_roots_zero_and_one() {
        // X(X-1) on (-1, 2): one interval holding 0, one holding 1.
        let p = upoly(&[0, -1, 1]);
        let ivs = sturm_isolate(&p, &RationalInterval::open(rat(-1, 1), rat(2, 1)));
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].contains(&rat(0, 1)));
        assert!(ivs[1].contains(&rat(1, 1)));
        assert!(ivs[0].is_disjoint_from(&ivs[1]));
    }

    #[test]
    fn window_endpoint_roots_are_excluded() {
        // Roots at 1 and 2; window (1, 2) has no interior root.
        let p = upoly(&[2, -3, 1]);
        let ivs = sturm_isolate(&p, &RationalInterval::open(rat(1, 1), rat(2, 1)));
        assert!(ivs.is_empty());
        // Widen the window and both come back.
        let ivs = sturm_isolate(&p, &RationalInterval::open(rat(0, 1), rat(3, 1)));
        assert_eq!(ivs.len(), 2);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (X-1)^2 (X+1): squarefree part has roots -1 and 1.
        let p = upoly(&[1, -1, -1, 1]);
        let ivs = sturm_isolate(&p, &RationalInterval::open(rat(-3, 1), rat(3, 1)));
        assert_eq!(ivs.len(), 2);
    }

    #[test]
    fn narrowing_keeps_the_root() {
        let p = upoly(&[-2, 0, 1]);
        let chain = SturmChain::new(&p);
        let mut iv = RationalInterval::open(rat(1, 1), rat(2, 1));
        for _ in 0..20 {
            iv = chain.narrow(&iv);
        }
        assert_eq!(chain.count_open(iv.lo(), iv.hi()), 1);
        assert!(iv.width() <= Rational::pow2_neg(20));
        // sqrt(2) is inside: lo^2 < 2 < hi^2.
        assert!(iv.lo().pow(2) < rat(2, 1) && rat(2, 1) < iv.hi().pow(2));
    }
}
