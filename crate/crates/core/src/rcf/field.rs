//! The computable real closed field over independent cut generators.
//!
//! An element is a squarefree defining polynomial over the generator
//! fraction field together with an isolating interval and a snapshot of the
//! generator box over which the isolation is certified (Sturm count 1 with
//! every chain sign determined by interval enclosure over that box).
//!
//! Equality is algebraic: generators are assumed independent, so a
//! generator-ring polynomial vanishes at the generator point only if it is
//! syntactically zero, and element equality is certified through gcds,
//! never through interval agreement.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::cuts::{CutError, CutStream};
use crate::exactnum::{
    eval_box, CoordBox, MultiPoly, Rational, RationalInterval,
};

use super::kfrac::KFrac;
use super::kpoly::KPoly;
use super::resultant::{resultant_prod, resultant_sum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RcfError {
    DivisionByZero,
    /// A generator cut failed to refine (scripted source exhausted, or a
    /// nesting violation).
    Cut(CutError),
    /// Sign determination did not stabilize within the refinement budget;
    /// with genuinely independent generators this cannot happen.
    SignUndetermined,
}

impl fmt::Display for RcfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RcfError::DivisionByZero => write!(f, "division by zero field element"),
            RcfError::Cut(e) => write!(f, "generator cut failed: {}", e),
            RcfError::SignUndetermined => {
                write!(f, "sign undetermined; generator independence violated?")
            }
        }
    }
}

impl From<CutError> for RcfError {
    fn from(e: CutError) -> Self {
        RcfError::Cut(e)
    }
}

/// A field generator: a cut stream whose realized real is taken, by
/// assumption, to be algebraically independent from the other generators.
/// The assumption is recorded, never verified.
pub struct Generator {
    pub id: u64,
    pub cut: CutStream,
    pub independence_assumed: bool,
}

impl Generator {
    pub fn new(id: u64, cut: CutStream) -> Self {
        Generator {
            id,
            cut,
            independence_assumed: true,
        }
    }
}

const SIGN_ROUNDS: u32 = 4096;
const ISOLATION_ROUNDS: u32 = 512;

/// The ambient field: the generator cuts plus their refinement state.
pub struct RcField {
    gens: Vec<Generator>,
}

impl RcField {
    pub fn new(gens: Vec<Generator>) -> Self {
        RcField { gens }
    }

    /// Field over the rationals alone.
    pub fn rationals() -> Self {
        RcField { gens: Vec::new() }
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Adjoin a fresh generator; returns its variable index.
    pub fn add_generator(&mut self, cut: CutStream) -> usize {
        let idx = self.gens.len();
        self.gens.push(Generator::new(idx as u64, cut));
        idx
    }

    /// Current (deepest pulled) interval of generator `i`, pulling stage 0
    /// on first access.
    pub fn gen_interval(&mut self, i: usize) -> Result<RationalInterval, RcfError> {
        let stream = &mut self.gens[i].cut;
        if stream.stages_pulled() == 0 {
            stream.refine(0)?;
        }
        Ok(stream.history().last().expect("pulled above").clone())
    }

    pub fn refine_gen(&mut self, i: usize) -> Result<(), RcfError> {
        let stream = &mut self.gens[i].cut;
        let next = stream.stages_pulled();
        stream.refine(next)?;
        Ok(())
    }

    /// Open-hull box of the current generator intervals for variables
    /// `0..n_vars`.
    pub fn current_box(&mut self, n_vars: usize) -> Result<CoordBox, RcfError> {
        assert!(
            n_vars <= self.gens.len(),
            "element mentions generator {} but the field has {}",
            n_vars,
            self.gens.len()
        );
        let mut b = CoordBox::empty();
        for i in 0..n_vars {
            let iv = self.gen_interval(i)?;
            b.push(RationalInterval::open(iv.lo().clone(), iv.hi().clone()));
        }
        Ok(b)
    }

    /// Exact sign of a generator polynomial at the generator point,
    /// determined by enclosure refinement.  Zero only for the zero
    /// polynomial (independence).
    pub fn sign_of_poly(&mut self, p: &MultiPoly) -> Result<i8, RcfError> {
        if p.is_zero() {
            return Ok(0);
        }
        let n_vars = p.max_var().map_or(0, |v| v + 1);
        for _ in 0..SIGN_ROUNDS {
            let b = self.current_box(n_vars)?;
            let e = eval_box(p, &b).expect("box spans the polynomial's variables");
            if !e.contains_zero() {
                return Ok(if e.lo().is_positive() { 1 } else { -1 });
            }
            for v in 0..n_vars {
                if p.degree_in(v) > 0 {
                    self.refine_gen(v)?;
                }
            }
        }
        Err(RcfError::SignUndetermined)
    }

    pub fn sign_of_kfrac(&mut self, f: &KFrac) -> Result<i8, RcfError> {
        if f.is_zero() {
            return Ok(0);
        }
        Ok(self.sign_of_poly(f.num())? * self.sign_of_poly(f.den())?)
    }

    fn variations(&mut self, chain: &[KPoly], x: &Rational) -> Result<usize, RcfError> {
        let mut count = 0;
        let mut last: i8 = 0;
        for p in chain {
            let s = self.sign_of_kfrac(&p.eval_rational(x))?;
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        Ok(count)
    }

    /// Distinct real roots (at the generator point) of the chain's
    /// squarefree polynomial in the open interval; endpoints must not be
    /// roots, which is an exact syntactic check here.
    pub fn count_roots(
        &mut self,
        chain: &[KPoly],
        lo: &Rational,
        hi: &Rational,
    ) -> Result<usize, RcfError> {
        debug_assert!(!chain[0].eval_rational(lo).is_zero(), "root at left endpoint");
        debug_assert!(!chain[0].eval_rational(hi).is_zero(), "root at right endpoint");
        Ok(self.variations(chain, lo)? - self.variations(chain, hi)?)
    }

    /// Certify an isolating interval: exactly one root of the squarefree
    /// part of `poly` in `interval`, over the current generator box.
    pub fn make_element(
        &mut self,
        poly: KPoly,
        interval: RationalInterval,
    ) -> Result<RcfElement, RcfError> {
        assert!(!poly.is_zero() && poly.degree() >= 1);
        let sf = poly.squarefree();
        let chain = sf.sturm_chain();
        let n = self.count_roots(&chain, interval.lo(), interval.hi())?;
        assert!(n == 1, "interval does not isolate exactly one root");
        let n_vars = kpoly_vars(&sf);
        let boxsnap = self.current_box(n_vars)?;
        Ok(RcfElement {
            poly: sf,
            interval,
            boxsnap,
        })
    }

    pub fn from_rational(&mut self, q: &Rational) -> RcfElement {
        let poly = KPoly::x_minus(&KFrac::from_rational(q));
        RcfElement {
            poly,
            interval: RationalInterval::open(q - &Rational::one(), q + &Rational::one()),
            boxsnap: CoordBox::empty(),
        }
    }

    pub fn zero_element(&mut self) -> RcfElement {
        self.from_rational(&Rational::zero())
    }

    /// The generator itself as a field element.
    pub fn from_generator(&mut self, i: usize) -> Result<RcfElement, RcfError> {
        let iv = self.gen_interval(i)?;
        let poly = KPoly::x_minus(&KFrac::generator(i));
        // The defining root is the generator's own coordinate: any interval
        // containing the current generator interval isolates it.
        let interval = RationalInterval::open(
            iv.lo() - &Rational::one(),
            iv.hi() + &Rational::one(),
        );
        self.make_element(poly, interval)
    }

    /// One bisection step on the isolating interval.
    pub fn refine_element(&mut self, e: &mut RcfElement) -> Result<(), RcfError> {
        let w = e.interval.width();
        let lo = e.interval.lo().clone();
        let hi = e.interval.hi().clone();
        let mid = e.interval.midpoint();
        let at_mid = e.poly.eval_rational(&mid);
        let new_iv = if at_mid.is_zero() {
            // The root is exactly the midpoint; pull both endpoints in.
            let mut delta = &w / &Rational::from_int(8);
            loop {
                let lo2 = &mid - &delta;
                let hi2 = &mid + &delta;
                if !e.poly.eval_rational(&lo2).is_zero()
                    && !e.poly.eval_rational(&hi2).is_zero()
                {
                    break RationalInterval::open(lo2, hi2);
                }
                delta = &delta / &Rational::from_int(2);
            }
        } else {
            let sign_mid = self.sign_of_kfrac(&at_mid)?;
            let sign_lo = self.sign_of_kfrac(&e.poly.eval_rational(&lo))?;
            if sign_lo * sign_mid < 0 {
                RationalInterval::open(lo, mid)
            } else {
                RationalInterval::open(mid, hi)
            }
        };
        e.interval = new_iv;
        // The bisection decision holds over the box the signs were
        // determined on, i.e. the current one.
        e.boxsnap = self.current_box(kpoly_vars(&e.poly))?;
        Ok(())
    }

    pub fn refine_to_width(
        &mut self,
        e: &mut RcfElement,
        width: &Rational,
    ) -> Result<(), RcfError> {
        for _ in 0..ISOLATION_ROUNDS {
            if &e.interval.width() < width {
                return Ok(());
            }
            self.refine_element(e)?;
        }
        Err(RcfError::SignUndetermined)
    }

    fn refine_away_from(&mut self, e: &mut RcfElement, q: &Rational) -> Result<(), RcfError> {
        for _ in 0..ISOLATION_ROUNDS {
            if !e.interval.contains(q) {
                return Ok(());
            }
            self.refine_element(e)?;
        }
        Err(RcfError::SignUndetermined)
    }

    /// Total order on elements; `Equal` only through an algebraic
    /// certificate (a shared root of the defining polynomials via their
    /// gcd), never by interval agreement.
    pub fn compare(&mut self, x: &RcfElement, y: &RcfElement) -> Result<Ordering, RcfError> {
        if let (Some(a), Some(b)) = (x.rational_value(), y.rational_value()) {
            return Ok(a.cmp_val(&b));
        }
        if let Some(q) = y.rational_value() {
            return self.compare_with_rational(x, &q);
        }
        if let Some(q) = x.rational_value() {
            return Ok(self.compare_with_rational(y, &q)?.reverse());
        }
        let mut a = x.clone();
        let mut b = y.clone();
        let mut gcd: Option<KPoly> = None;
        for round in 0..ISOLATION_ROUNDS {
            if a.interval.is_disjoint_from(&b.interval) {
                return Ok(if a.interval.hi() <= b.interval.lo() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                });
            }
            if round == 1 {
                gcd = Some(a.poly.gcd(&b.poly));
            }
            if let Some(g) = &gcd {
                if g.is_zero() || g.degree() == 0 {
                    // No common root anywhere: the values differ; keep
                    // refining until the intervals separate.
                } else if let Some(overlap) = a.interval.intersect(&b.interval) {
                    let glo = overlap.lo();
                    let ghi = overlap.hi();
                    if !g.eval_rational(glo).is_zero() && !g.eval_rational(ghi).is_zero() {
                        let chain = g.sturm_chain();
                        let common = self.count_roots(&chain, glo, ghi)?;
                        if common == 1 {
                            // The overlap holds one root of each defining
                            // polynomial and one shared root, so the shared
                            // root is both values.
                            return Ok(Ordering::Equal);
                        }
                    }
                }
            }
            self.refine_element(&mut a)?;
            self.refine_element(&mut b)?;
            let _ = round;
        }
        Err(RcfError::SignUndetermined)
    }

    pub fn compare_with_rational(
        &mut self,
        x: &RcfElement,
        q: &Rational,
    ) -> Result<Ordering, RcfError> {
        if let Some(v) = x.rational_value() {
            return Ok(v.cmp_val(q));
        }
        if x.poly.eval_rational(q).is_zero() && x.interval.contains(q) {
            // q is a root of the defining polynomial inside the isolating
            // interval, hence the element's value.
            return Ok(Ordering::Equal);
        }
        let mut a = x.clone();
        for _ in 0..ISOLATION_ROUNDS {
            if !a.interval.contains(q) {
                return Ok(if a.interval.lo() >= q {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
            // q could become a polynomial root only if it were the value.
            if a.poly.eval_rational(q).is_zero() {
                return Ok(Ordering::Equal);
            }
            self.refine_element(&mut a)?;
        }
        Err(RcfError::SignUndetermined)
    }

    pub fn is_zero_element(&mut self, x: &RcfElement) -> Result<bool, RcfError> {
        Ok(self.compare_with_rational(x, &Rational::zero())? == Ordering::Equal)
    }

    pub fn neg(&mut self, x: &RcfElement) -> RcfElement {
        let poly = x.poly.reflect();
        RcfElement {
            poly,
            interval: RationalInterval::open(-x.interval.hi(), -x.interval.lo()),
            boxsnap: x.boxsnap.clone(),
        }
    }

    pub fn add(&mut self, x: &RcfElement, y: &RcfElement) -> Result<RcfElement, RcfError> {
        if let Some(q) = y.rational_value() {
            return Ok(self.shift_by_rational(x, &q));
        }
        if let Some(q) = x.rational_value() {
            return Ok(self.shift_by_rational(y, &q));
        }
        let r = resultant_sum(&x.poly.clear_denominators(), &y.poly.clear_denominators());
        let r = KPoly::new(r.into_iter().map(KFrac::from_poly).collect());
        assert!(!r.is_zero(), "sum resultant vanished");
        let sf = r.squarefree();
        let chain = sf.sturm_chain();
        let mut a = x.clone();
        let mut b = y.clone();
        for _ in 0..ISOLATION_ROUNDS {
            let lo = a.interval.lo() + b.interval.lo();
            let hi = a.interval.hi() + b.interval.hi();
            if let Some(iv) = self.try_isolate(&sf, &chain, lo, hi)? {
                return self.make_element(sf, iv);
            }
            self.refine_element(&mut a)?;
            self.refine_element(&mut b)?;
        }
        Err(RcfError::SignUndetermined)
    }

    pub fn sub(&mut self, x: &RcfElement, y: &RcfElement) -> Result<RcfElement, RcfError> {
        let ny = self.neg(y);
        self.add(x, &ny)
    }

    pub fn mul(&mut self, x: &RcfElement, y: &RcfElement) -> Result<RcfElement, RcfError> {
        if let Some(q) = y.rational_value() {
            return self.scale_by_rational(x, &q);
        }
        if let Some(q) = x.rational_value() {
            return self.scale_by_rational(y, &q);
        }
        if self.is_zero_element(x)? || self.is_zero_element(y)? {
            return Ok(self.zero_element());
        }
        let mut a = x.clone();
        let mut b = y.clone();
        self.refine_away_from(&mut a, &Rational::zero())?;
        self.refine_away_from(&mut b, &Rational::zero())?;
        // Strip factors of X from y's defining polynomial so its constant
        // coefficient is nonzero (the root 0 it removes is not y).
        let mut by = b.poly.coeffs().to_vec();
        while by.first().map_or(false, KFrac::is_zero) {
            by.remove(0);
        }
        let by = KPoly::new(by);
        let r = resultant_prod(&a.poly.clear_denominators(), &by.clear_denominators());
        let r = KPoly::new(r.into_iter().map(KFrac::from_poly).collect());
        assert!(!r.is_zero(), "product resultant vanished");
        let sf = r.squarefree();
        let chain = sf.sturm_chain();
        for _ in 0..ISOLATION_ROUNDS {
            let (lo, hi) = interval_product(&a.interval, &b.interval);
            if let Some(iv) = self.try_isolate(&sf, &chain, lo, hi)? {
                return self.make_element(sf, iv);
            }
            self.refine_element(&mut a)?;
            self.refine_element(&mut b)?;
        }
        Err(RcfError::SignUndetermined)
    }

    pub fn inv(&mut self, x: &RcfElement) -> Result<RcfElement, RcfError> {
        if self.is_zero_element(x)? {
            return Err(RcfError::DivisionByZero);
        }
        if let Some(q) = x.rational_value() {
            return Ok(self.from_rational(&q.recip()));
        }
        let mut a = x.clone();
        self.refine_away_from(&mut a, &Rational::zero())?;
        let poly = a.poly.reverse();
        let (lo, hi) = (a.interval.lo().clone(), a.interval.hi().clone());
        // interval away from zero, so endpoints share a sign
        let interval = RationalInterval::open(hi.recip(), lo.recip());
        self.make_element(poly, interval)
    }

    /// x + q through polynomial composition; no resultants needed.
    pub fn shift_by_rational(&mut self, x: &RcfElement, q: &Rational) -> RcfElement {
        if q.is_zero() {
            return x.clone();
        }
        let poly = x.poly.shift(&-q.clone());
        RcfElement {
            poly,
            interval: x.interval.translate(q),
            boxsnap: x.boxsnap.clone(),
        }
    }

    /// q * x through polynomial composition.
    pub fn scale_by_rational(
        &mut self,
        x: &RcfElement,
        q: &Rational,
    ) -> Result<RcfElement, RcfError> {
        if q.is_zero() {
            return Ok(self.zero_element());
        }
        if let Some(v) = x.rational_value() {
            return Ok(self.from_rational(&(&v * q)));
        }
        let poly = x.poly.stretch(&q.recip());
        let (a, b) = (x.interval.lo() * q, x.interval.hi() * q);
        let interval = if q.is_positive() {
            RationalInterval::open(a, b)
        } else {
            RationalInterval::open(b, a)
        };
        Ok(RcfElement {
            poly,
            interval,
            boxsnap: x.boxsnap.clone(),
        })
    }

    /// Nudge endpoints off roots and bisect until exactly one root of `sf`
    /// lies inside; `None` when the current window holds more than one root
    /// (caller refines its inputs and retries).
    fn try_isolate(
        &mut self,
        sf: &KPoly,
        chain: &[KPoly],
        mut lo: Rational,
        mut hi: Rational,
    ) -> Result<Option<RationalInterval>, RcfError> {
        let width = &hi - &lo;
        let mut pad = &width / &Rational::from_int(16);
        for _ in 0..64 {
            if sf.eval_rational(&lo).is_zero() {
                lo = &lo - &pad;
            }
            if sf.eval_rational(&hi).is_zero() {
                hi = &hi + &pad;
            }
            pad = &pad / &Rational::from_int(2);
            if !sf.eval_rational(&lo).is_zero() && !sf.eval_rational(&hi).is_zero() {
                let n = self.count_roots(chain, &lo, &hi)?;
                return Ok((n == 1).then(|| RationalInterval::open(lo, hi)));
            }
        }
        Err(RcfError::SignUndetermined)
    }

    /// All real roots of a univariate polynomial over the field, in
    /// increasing order, each with a certified isolating interval.
    pub fn roots(&mut self, p: &KPoly) -> Result<Vec<RcfElement>, RcfError> {
        assert!(!p.is_zero(), "roots of the zero polynomial");
        if p.degree() == 0 {
            return Ok(Vec::new());
        }
        let sf = p.squarefree();
        let chain = sf.sturm_chain();
        let bound = self.root_bound(&sf)?;
        // Make the window endpoints non-roots.
        let mut b = bound;
        while sf.eval_rational(&-b.clone()).is_zero() || sf.eval_rational(&b).is_zero() {
            b += Rational::one();
        }
        let mut out: Vec<RcfElement> = Vec::new();
        let mut stack = alloc::vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.count_roots(&chain, &lo, &hi)? {
                0 => {}
                1 => {
                    let iv = RationalInterval::open(lo, hi);
                    out.push(self.make_element(sf.clone(), iv)?);
                }
                _ => {
                    let split = self.split_point(&sf, &lo, &hi)?;
                    stack.push((split.clone(), hi));
                    stack.push((lo, split));
                }
            }
        }
        out.sort_by(|a, b| a.interval.lo().cmp_val(b.interval.lo()));
        Ok(out)
    }

    fn split_point(
        &mut self,
        sf: &KPoly,
        lo: &Rational,
        hi: &Rational,
    ) -> Result<Rational, RcfError> {
        let width = hi - lo;
        for k in 1..48u32 {
            let pieces = 1i64 << k.min(40);
            for j in (1..pieces).step_by(2) {
                let cand = lo + &(&width * &Rational::new(j, pieces));
                if !sf.eval_rational(&cand).is_zero() {
                    return Ok(cand);
                }
            }
        }
        Err(RcfError::SignUndetermined)
    }

    /// Cauchy-style bound: every real root lies in (-B, B).
    fn root_bound(&mut self, sf: &KPoly) -> Result<Rational, RcfError> {
        let d = sf.degree();
        // |lead| lower bound.
        let lead_low = self.frac_abs_low(&sf.coeffs()[d])?;
        let mut max_ratio = Rational::zero();
        for c in &sf.coeffs()[..d] {
            if c.is_zero() {
                continue;
            }
            let up = self.frac_abs_high(c)?;
            let ratio = &up / &lead_low;
            if ratio > max_ratio {
                max_ratio = ratio;
            }
        }
        Ok(Rational::one() + max_ratio)
    }

    /// A positive rational lower bound on |f| at the generator point.
    fn frac_abs_low(&mut self, f: &KFrac) -> Result<Rational, RcfError> {
        let num_low = self.poly_abs_low(f.num())?;
        let den_high = self.poly_abs_high(f.den())?;
        Ok(&num_low / &den_high)
    }

    fn frac_abs_high(&mut self, f: &KFrac) -> Result<Rational, RcfError> {
        let num_high = self.poly_abs_high(f.num())?;
        let den_low = self.poly_abs_low(f.den())?;
        Ok(&num_high / &den_low)
    }

    fn poly_abs_low(&mut self, p: &MultiPoly) -> Result<Rational, RcfError> {
        // Refine until the enclosure excludes zero, then take the nearer
        // endpoint's magnitude.
        let s = self.sign_of_poly(p)?;
        assert!(s != 0, "lower bound of a zero polynomial");
        let n_vars = p.max_var().map_or(0, |v| v + 1);
        let b = self.current_box(n_vars)?;
        let e = eval_box(p, &b).expect("box spans variables");
        Ok(e.lo().abs().min(e.hi().abs()))
    }

    fn poly_abs_high(&mut self, p: &MultiPoly) -> Result<Rational, RcfError> {
        let n_vars = p.max_var().map_or(0, |v| v + 1);
        let b = self.current_box(n_vars)?;
        let e = eval_box(p, &b).expect("box spans variables");
        Ok(e.lo().abs().max(e.hi().abs()))
    }
}

fn kpoly_vars(p: &KPoly) -> usize {
    p.coeffs()
        .iter()
        .flat_map(|c| [c.num().max_var(), c.den().max_var()])
        .flatten()
        .map(|v| v + 1)
        .max()
        .unwrap_or(0)
}

fn interval_product(a: &RationalInterval, b: &RationalInterval) -> (Rational, Rational) {
    let products = [
        a.lo() * b.lo(),
        a.lo() * b.hi(),
        a.hi() * b.lo(),
        a.hi() * b.hi(),
    ];
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

/// Element of the real closure: squarefree defining polynomial over the
/// generator fraction field, isolating interval, and the generator box the
/// isolation certificate was established over.
#[derive(Clone)]
pub struct RcfElement {
    poly: KPoly,
    interval: RationalInterval,
    boxsnap: CoordBox,
}

impl RcfElement {
    pub fn poly(&self) -> &KPoly {
        &self.poly
    }

    pub fn interval(&self) -> &RationalInterval {
        &self.interval
    }

    pub fn box_snapshot(&self) -> &CoordBox {
        &self.boxsnap
    }

    /// Exact rational value for degree-1 elements with constant
    /// coefficients.
    pub fn rational_value(&self) -> Option<Rational> {
        if self.poly.degree() != 1 {
            return None;
        }
        let c0 = self.poly.coeffs()[0].as_rational()?;
        let c1 = self.poly.coeffs()[1].as_rational()?;
        Some(-(&c0 / &c1))
    }

    /// Deterministic textual form: defining polynomial, isolating interval,
    /// generator box.
    pub fn describe(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        let _ = write!(s, "root of [");
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if i > 0 {
                let _ = write!(s, ", ");
            }
            let _ = write!(s, "{}", c);
        }
        let _ = write!(s, "] in {} over {}", self.interval, self.boxsnap);
        s
    }
}

impl fmt::Debug for RcfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{cut_of_rational, CutKind};
    use crate::exactnum::rat;

    fn qfield() -> RcField {
        RcField::rationals()
    }

    fn sqrt2(f: &mut RcField) -> RcfElement {
        let p = KPoly::new(alloc::vec![
            KFrac::from_rational(&rat(-2, 1)),
            KFrac::zero(),
            KFrac::one(),
        ]);
        f.make_element(p, RationalInterval::open(rat(1, 1), rat(2, 1)))
            .unwrap()
    }

    #[test]
    fn add_inverse_pair_is_zero() {
        let mut f = qfield();
        let s = sqrt2(&mut f);
        let ns = f.neg(&s);
        let z = f.add(&s, &ns).unwrap();
        assert!(f.is_zero_element(&z).unwrap());
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let mut f = qfield();
        let s = sqrt2(&mut f);
        let p = f.mul(&s, &s).unwrap();
        assert_eq!(
            f.compare_with_rational(&p, &rat(2, 1)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn inversion_of_zero_fails() {
        let mut f = qfield();
        let z = f.zero_element();
        assert!(matches!(f.inv(&z), Err(RcfError::DivisionByZero)));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let mut f = qfield();
        let s = sqrt2(&mut f);
        let i = f.inv(&s).unwrap();
        let prod = f.mul(&s, &i).unwrap();
        assert_eq!(
            f.compare_with_rational(&prod, &rat(1, 1)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn compare_against_close_rational() {
        let mut f = qfield();
        let s = sqrt2(&mut f);
        // 141/100 < sqrt 2 because 141^2 = 19881 < 20000.
        assert_eq!(
            f.compare_with_rational(&s, &rat(141, 100)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(f.compare(&s, &s.clone()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn equality_via_algebraic_certificate() {
        let mut f = qfield();
        let s = sqrt2(&mut f);
        let two_a = f.mul(&s, &s).unwrap();
        let two_b = f.from_rational(&rat(2, 1));
        assert_eq!(f.compare(&two_a, &two_b).unwrap(), Ordering::Equal);
        // And positively different elements order correctly.
        let sum = f.add(&s, &s).unwrap(); // 2 sqrt 2 ~ 2.828
        assert_eq!(f.compare(&sum, &two_b).unwrap(), Ordering::Greater);
    }

    #[test]
    fn roots_of_integer_polynomials() {
        let mut f = qfield();
        // X^2 - 2: two roots, increasing order.
        let p = KPoly::new(alloc::vec![
            KFrac::from_rational(&rat(-2, 1)),
            KFrac::zero(),
            KFrac::one(),
        ]);
        let roots = f.roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].interval().is_disjoint_from(roots[1].interval()));
        assert!(roots[0].interval().lo() <= roots[1].interval().lo());
        // X^2 + 1: none.
        let p = KPoly::new(alloc::vec![KFrac::one(), KFrac::zero(), KFrac::one()]);
        assert!(f.roots(&p).unwrap().is_empty());
    }

    #[test]
    fn roots_over_a_generator() {
        // Generator realizing 2 (as an assumed-independent cut); X^2 - x0
        // has roots realizing +-sqrt 2.
        let cut = cut_of_rational(&rat(2, 1), CutKind::Strict);
        let mut f = RcField::new(alloc::vec![Generator::new(0, cut)]);
        let p = KPoly::new(alloc::vec![
            KFrac::generator(0).neg(),
            KFrac::zero(),
            KFrac::one(),
        ]);
        let roots = f.roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        let mut pos = roots[1].clone();
        f.refine_to_width(&mut pos, &Rational::pow2_neg(20)).unwrap();
        // The positive root's interval must bracket sqrt 2: check by
        // squaring the endpoints.
        let iv = pos.interval();
        assert!(iv.lo().pow(2) < rat(2, 1) && rat(2, 1) < iv.hi().pow(2));
    }

    #[test]
    fn generator_element_and_shift() {
        // Generator realizing sqrt 2 (assumed independent).
        let cut = crate::cuts::sqrt_cut(&rat(2, 1));
        let mut f = RcField::new(alloc::vec![Generator::new(0, cut)]);
        let x0 = f.from_generator(0).unwrap();
        let shifted = f.shift_by_rational(&x0, &rat(3, 1));
        // sqrt 2 + 3 < 9/2 because sqrt 2 < 3/2.
        assert_eq!(
            f.compare_with_rational(&shifted, &rat(9, 2)).unwrap(),
            Ordering::Less
        );
        assert_eq!(f.compare(&shifted, &x0).unwrap(), Ordering::Greater);
    }

    #[test]
    fn interval_refinement_contains_bisection_oracle_value() {
        let mut f = qfield();
        let mut s = sqrt2(&mut f);
        f.refine_to_width(&mut s, &Rational::pow2_neg(20)).unwrap();
        // Oracle: plain bisection on x^2 - 2 over (1, 2).
        let (mut lo, mut hi) = (rat(1, 1), rat(2, 1));
        for _ in 0..24 {
            let mid = Rational::midpoint(&lo, &hi);
            if mid.pow(2) < rat(2, 1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // The oracle interval and the element interval must overlap.
        assert!(s.interval().lo() < &hi && &lo < s.interval().hi());
        assert!(s.interval().width() <= Rational::pow2_neg(20));
    }
}
