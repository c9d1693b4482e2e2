//! Truncated Hahn-series field: finite sums `coeff * t^g` with rational
//! exponent vectors over live infinitesimal coordinates and real-closure
//! coefficients from the residue fragment.
//!
//! `t_c` is an infinitesimal scale; `t_c^-1` is the positive infinite
//! element of the coordinate's multiplicative class.  The leading (largest
//! magnitude) term decides sign, classification, and comparisons.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::cuts::CutStream;
use crate::exactnum::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use crate::rcf::{KFrac, KPoly, RcField, RcfElement, RcfError};

use super::exponent::{cmp_exp, CoordId, Exponent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaError {
    DivisionByZero,
    /// The leading data of a result cannot be determined at the stored
    /// truncation.  Loud, never silent rounding.
    TruncationOverflow,
    /// Residue of an infinite element.
    InfiniteResidue,
    /// A coefficient operation in the residue fragment failed.
    Residue(RcfError),
    /// Root of an element whose leading coefficient is not positive.
    NonPositiveLead,
}

impl fmt::Display for NaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NaError::DivisionByZero => write!(f, "division by zero series"),
            NaError::TruncationOverflow => write!(f, "truncation overflow"),
            NaError::InfiniteResidue => write!(f, "residue of an infinite element"),
            NaError::Residue(e) => write!(f, "residue arithmetic failed: {}", e),
            NaError::NonPositiveLead => write!(f, "root of a non-positive leading coefficient"),
        }
    }
}

impl From<RcfError> for NaError {
    fn from(e: RcfError) -> Self {
        NaError::Residue(e)
    }
}

/// Element: terms sorted leading-first, plus an optional truncation cutoff
/// (`None` = exact).  Terms at or beyond the cutoff magnitude are absent.
#[derive(Clone)]
pub struct NonArchElement {
    terms: Vec<(Exponent, RcfElement)>,
    cutoff: Option<Exponent>,
}

impl NonArchElement {
    pub fn terms(&self) -> &[(Exponent, RcfElement)] {
        &self.terms
    }

    pub fn cutoff(&self) -> Option<&Exponent> {
        self.cutoff.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    pub fn is_syntactic_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Exponent, RcfElement)> {
        self.terms.first()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Coarse magnitude classes; `Finite` splits into `Unit` and
/// `Infinitesimal` (zero counts as infinitesimal).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    PosInfinite,
    NegInfinite,
    Unit,
    Infinitesimal,
}

impl Class {
    pub fn is_finite(self) -> bool {
        matches!(self, Class::Unit | Class::Infinitesimal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Class::PosInfinite => "pos-infinite",
            Class::NegInfinite => "neg-infinite",
            Class::Unit => "unit",
            Class::Infinitesimal => "infinitesimal",
        }
    }
}

struct CoordInfo {
    rank: Rational,
    live: bool,
}

/// The field context: live infinitesimal coordinates (with their ranks,
/// which realize the derived order) and the residue fragment.
pub struct NonArchField {
    coords: Vec<CoordInfo>,
    pub residue_field: RcField,
    truncation_order: u32,
}

impl Default for NonArchField {
    fn default() -> Self {
        Self::new()
    }
}

impl NonArchField {
    pub fn new() -> Self {
        NonArchField {
            coords: Vec::new(),
            residue_field: RcField::rationals(),
            truncation_order: 8,
        }
    }

    pub fn with_truncation(order: u32) -> Self {
        let mut f = Self::new();
        f.truncation_order = order;
        f
    }

    pub fn truncation_order(&self) -> u32 {
        self.truncation_order
    }

    pub fn rank(&self, c: CoordId) -> Rational {
        self.coords[c.0 as usize].rank.clone()
    }

    pub fn is_live(&self, c: CoordId) -> bool {
        self.coords[c.0 as usize].live
    }

    pub fn live_coords(&self) -> impl Iterator<Item = CoordId> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, i)| i.live)
            .map(|(n, _)| CoordId(n as u32))
    }

    /// New coordinate with an explicit rank key.
    pub fn new_coord(&mut self, rank: Rational) -> CoordId {
        let id = CoordId(self.coords.len() as u32);
        self.coords.push(CoordInfo { rank, live: true });
        id
    }

    /// New coordinate ranked strictly above every live coordinate.
    pub fn new_coord_top(&mut self) -> CoordId {
        let rank = self
            .live_coords()
            .map(|c| self.rank(c))
            .max()
            .map(|r| r + Rational::one())
            .unwrap_or_else(Rational::zero);
        self.new_coord(rank)
    }

    /// New coordinate ranked strictly below every live coordinate.
    pub fn new_coord_bottom(&mut self) -> CoordId {
        let rank = self
            .live_coords()
            .map(|c| self.rank(c))
            .min()
            .map(|r| r - Rational::one())
            .unwrap_or_else(Rational::zero);
        self.new_coord(rank)
    }

    /// New coordinate ranked strictly between two existing ranks.
    pub fn new_coord_between(&mut self, below: &Rational, above: &Rational) -> CoordId {
        assert!(below < above);
        let rank = Rational::midpoint(below, above);
        self.new_coord(rank)
    }

    pub fn retire_coord(&mut self, c: CoordId) {
        self.coords[c.0 as usize].live = false;
    }

    fn rank_fn(&self) -> impl Fn(CoordId) -> Rational + '_ {
        move |c| self.rank(c)
    }

    pub fn cmp_exponents(&self, a: &Exponent, b: &Exponent) -> Ordering {
        cmp_exp(&self.rank_fn(), a, b)
    }

    // ---- constructors ----

    pub fn zero(&self) -> NonArchElement {
        NonArchElement {
            terms: Vec::new(),
            cutoff: None,
        }
    }

    pub fn from_residue(&mut self, coeff: RcfElement) -> Result<NonArchElement, NaError> {
        self.monomial(Exponent::zero(), coeff)
    }

    pub fn from_rational(&mut self, q: &Rational) -> NonArchElement {
        let coeff = self.residue_field.from_rational(q);
        NonArchElement {
            terms: if q.is_zero() {
                Vec::new()
            } else {
                alloc::vec![(Exponent::zero(), coeff)]
            },
            cutoff: None,
        }
    }

    pub fn one(&mut self) -> NonArchElement {
        self.from_rational(&Rational::one())
    }

    pub fn monomial(
        &mut self,
        exp: Exponent,
        coeff: RcfElement,
    ) -> Result<NonArchElement, NaError> {
        if self.residue_field.is_zero_element(&coeff)? {
            return Ok(self.zero());
        }
        Ok(NonArchElement {
            terms: alloc::vec![(exp, coeff)],
            cutoff: None,
        })
    }

    /// The positive infinite element of a coordinate's class: `t_c^-1`.
    pub fn d_element(&mut self, c: CoordId) -> NonArchElement {
        let one = self.residue_field.from_rational(&Rational::one());
        NonArchElement {
            terms: alloc::vec![(Exponent::single(c, -Rational::one()), one)],
            cutoff: None,
        }
    }

    /// The infinitesimal `t_c`.
    pub fn infinitesimal(&mut self, c: CoordId) -> NonArchElement {
        let one = self.residue_field.from_rational(&Rational::one());
        NonArchElement {
            terms: alloc::vec![(Exponent::unit(c), one)],
            cutoff: None,
        }
    }

    /// Adjoin a fresh residue-fragment generator backed by a cut stream;
    /// returns it as a unit element.
    pub fn fresh_residue_generator(&mut self, cut: CutStream) -> Result<RcfElement, NaError> {
        let idx = self.residue_field.add_generator(cut);
        Ok(self.residue_field.from_generator(idx)?)
    }

    // ---- normalization ----

    fn beyond_cutoff(&self, exp: &Exponent, cutoff: &Option<Exponent>) -> bool {
        match cutoff {
            None => false,
            Some(c) => self.cmp_exponents(exp, c) != Ordering::Less,
        }
    }

    fn normalize(
        &mut self,
        mut terms: Vec<(Exponent, RcfElement)>,
        cutoff: Option<Exponent>,
    ) -> Result<NonArchElement, NaError> {
        // Sort leading-first, merge equal exponents, drop zero coefficients
        // and anything at or past the cutoff.
        let rank_keyed: &NonArchField = self;
        terms.sort_by(|a, b| rank_keyed.cmp_exponents(&a.0, &b.0));
        let mut merged: Vec<(Exponent, RcfElement)> = Vec::with_capacity(terms.len());
        for (exp, coeff) in terms {
            if self.beyond_cutoff(&exp, &cutoff) {
                continue;
            }
            match merged.last_mut() {
                Some((last_exp, last_coeff)) if *last_exp == exp => {
                    *last_coeff = self.residue_field.add(last_coeff, &coeff)?;
                }
                _ => merged.push((exp, coeff)),
            }
        }
        let mut out = Vec::with_capacity(merged.len());
        for (exp, coeff) in merged {
            if !self.residue_field.is_zero_element(&coeff)? {
                out.push((exp, coeff));
            }
        }
        Ok(NonArchElement {
            terms: out,
            cutoff,
        })
    }

    fn min_cutoff(&self, a: &Option<Exponent>, b: &Option<Exponent>) -> Option<Exponent> {
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (Some(x), Some(y)) => Some(
                if self.cmp_exponents(x, y) == Ordering::Less {
                    x.clone()
                } else {
                    y.clone()
                },
            ),
        }
    }

    // ---- arithmetic ----

    pub fn add(
        &mut self,
        a: &NonArchElement,
        b: &NonArchElement,
    ) -> Result<NonArchElement, NaError> {
        let cutoff = self.min_cutoff(&a.cutoff, &b.cutoff);
        let mut terms = a.terms.clone();
        terms.extend(b.terms.iter().cloned());
        self.normalize(terms, cutoff)
    }

    pub fn neg(&mut self, a: &NonArchElement) -> NonArchElement {
        let terms = a
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.residue_field.neg(c)))
            .collect();
        NonArchElement {
            terms,
            cutoff: a.cutoff.clone(),
        }
    }

    pub fn sub(
        &mut self,
        a: &NonArchElement,
        b: &NonArchElement,
    ) -> Result<NonArchElement, NaError> {
        let nb = self.neg(b);
        self.add(a, &nb)
    }

    pub fn mul(
        &mut self,
        a: &NonArchElement,
        b: &NonArchElement,
    ) -> Result<NonArchElement, NaError> {
        // Truncation: an omitted tail of a multiplies b's leading term, and
        // vice versa.
        let cut_a = match (&a.cutoff, b.leading()) {
            (Some(c), Some((lb, _))) => Some(c.add(lb)),
            (Some(c), None) => Some(c.clone()),
            _ => None,
        };
        let cut_b = match (&b.cutoff, a.leading()) {
            (Some(c), Some((la, _))) => Some(c.add(la)),
            (Some(c), None) => Some(c.clone()),
            _ => None,
        };
        let cutoff = self.min_cutoff(&cut_a, &cut_b);
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exp = ea.add(eb);
                if self.beyond_cutoff(&exp, &cutoff) {
                    continue;
                }
                let coeff = self.residue_field.mul(ca, cb)?;
                terms.push((exp, coeff));
            }
        }
        self.normalize(terms, cutoff)
    }

    pub fn pow(&mut self, a: &NonArchElement, e: u32) -> Result<NonArchElement, NaError> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Reciprocal via the geometric series, truncated to the field's
    /// truncation order past the leading term.
    pub fn inv(&mut self, a: &NonArchElement) -> Result<NonArchElement, NaError> {
        let Some((lead_exp, lead_coeff)) = a.leading().cloned() else {
            return Err(if a.is_exact() {
                NaError::DivisionByZero
            } else {
                // All-zero up to a cutoff: cannot even determine the
                // leading term of the inverse.
                NaError::TruncationOverflow
            });
        };
        let inv_lead = self.residue_field.inv(&lead_coeff).map_err(|e| match e {
            RcfError::DivisionByZero => NaError::DivisionByZero,
            other => NaError::Residue(other),
        })?;
        let lead_inv_exp = lead_exp.neg();
        // u = tail / leading term; every exponent of u is positive.
        let tail = NonArchElement {
            terms: a.terms[1..].to_vec(),
            cutoff: a.cutoff.clone(),
        };
        if tail.is_syntactic_zero() && tail.is_exact() {
            return self.monomial(lead_inv_exp, inv_lead);
        }
        let lead_mono = self.monomial(lead_inv_exp.clone(), inv_lead.clone())?;
        let u = self.mul(&tail, &lead_mono)?;
        // sum_{k<=T} (-u)^k, cut off at (T+1) * lead(u).
        let series_cut = u
            .leading()
            .map(|(lu, _)| lu.scale(&Rational::from_int(self.truncation_order as i64 + 1)));
        let mut acc = self.one();
        let minus_u = self.neg(&u);
        let mut power = self.one();
        for _ in 0..self.truncation_order {
            power = self.mul(&power, &minus_u)?;
            if power.is_syntactic_zero() {
                break;
            }
            acc = self.add(&acc, &power)?;
        }
        let mut out = self.mul(&acc, &lead_mono)?;
        let cutoff = match series_cut {
            Some(sc) => {
                let sc = sc.add(&lead_inv_exp);
                self.min_cutoff(&out.cutoff, &Some(sc))
            }
            None => out.cutoff.clone(),
        };
        out = self.normalize(out.terms, cutoff)?;
        Ok(out)
    }

    pub fn div(
        &mut self,
        a: &NonArchElement,
        b: &NonArchElement,
    ) -> Result<NonArchElement, NaError> {
        let ib = self.inv(b)?;
        self.mul(a, &ib)
    }

    /// q-th root (q >= 1) of an element with positive leading coefficient,
    /// via the binomial series at the stored truncation.
    pub fn root(&mut self, a: &NonArchElement, q: u32) -> Result<NonArchElement, NaError> {
        assert!(q >= 1);
        let Some((lead_exp, lead_coeff)) = a.leading().cloned() else {
            return Err(if a.is_exact() {
                NaError::DivisionByZero
            } else {
                NaError::TruncationOverflow
            });
        };
        if self
            .residue_field
            .compare_with_rational(&lead_coeff, &Rational::zero())?
            != Ordering::Greater
        {
            return Err(NaError::NonPositiveLead);
        }
        // lead^(1/q): the positive root of X^q - lead_coeff.
        let root_coeff = {
            let mut coeffs = alloc::vec![KFrac::zero(); q as usize + 1];
            coeffs[q as usize] = KFrac::one();
            // X^q - c with c's defining data folded in via resultant-free
            // route: for rational c use the direct polynomial; otherwise
            // multiply out through the element's own polynomial.
            match rational_of(&mut self.residue_field, &lead_coeff)? {
                Some(c) if exact_nth_root(&c, q).is_some() => {
                    let r = exact_nth_root(&c, q).expect("checked");
                    self.residue_field.from_rational(&r)
                }
                Some(c) => {
                    coeffs[0] = KFrac::from_rational(&-c);
                    let p = KPoly::new(coeffs);
                    let roots = self.residue_field.roots(&p)?;
                    let mut pos = None;
                    for r in roots {
                        if self
                            .residue_field
                            .compare_with_rational(&r, &Rational::zero())?
                            == Ordering::Greater
                        {
                            pos = Some(r);
                            break;
                        }
                    }
                    pos.expect("positive real q-th root exists")
                }
                None => {
                    // General residue element: q-th root through repeated
                    // square/cube-free root extraction is out of desk scope
                    // except via its defining polynomial; compose P(X^q).
                    let inner = lead_coeff.poly().clone();
                    let mut lifted = alloc::vec![KFrac::zero(); inner.degree() * q as usize + 1];
                    for (i, c) in inner.coeffs().iter().enumerate() {
                        lifted[i * q as usize] = c.clone();
                    }
                    let p = KPoly::new(lifted);
                    let roots = self.residue_field.roots(&p)?;
                    let mut best = None;
                    for r in roots {
                        if self
                            .residue_field
                            .compare_with_rational(&r, &Rational::zero())?
                            == Ordering::Greater
                        {
                            // Want r with r^q = lead: check via compare.
                            let rq = self.pow_rcf(&r, q)?;
                            if self.residue_field.compare(&rq, &lead_coeff)? == Ordering::Equal {
                                best = Some(r);
                                break;
                            }
                        }
                    }
                    best.expect("positive q-th root of the leading coefficient")
                }
            }
        };
        let root_exp = lead_exp.scale(&Rational::new(1, q as i64));
        let lead_mono_inv = {
            let inv_coeff = self.residue_field.inv(&lead_coeff)?;
            self.monomial(lead_exp.neg(), inv_coeff)?
        };
        let tail = NonArchElement {
            terms: a.terms[1..].to_vec(),
            cutoff: a.cutoff.clone(),
        };
        let root_mono = self.monomial(root_exp, root_coeff)?;
        if tail.is_syntactic_zero() && tail.is_exact() {
            return Ok(root_mono);
        }
        let u = self.mul(&tail, &lead_mono_inv)?;
        // Binomial series (1+u)^(1/q) = sum C(1/q, k) u^k.
        let alpha = Rational::new(1, q as i64);
        let series_cut = u
            .leading()
            .map(|(lu, _)| lu.scale(&Rational::from_int(self.truncation_order as i64 + 1)));
        let mut acc = self.one();
        let mut upow = self.one();
        let mut binom = Rational::one();
        for k in 0..self.truncation_order as i64 {
            upow = self.mul(&upow, &u)?;
            if upow.is_syntactic_zero() {
                break;
            }
            binom = &binom * &(&(&alpha - &Rational::from_int(k)) / &Rational::from_int(k + 1));
            let scaled = self.scale(&upow, &binom)?;
            acc = self.add(&acc, &scaled)?;
        }
        let mut out = self.mul(&acc, &root_mono)?;
        if let Some(sc) = series_cut {
            if let Some((re, _)) = root_mono.leading() {
                let sc = sc.add(re);
                let cutoff = self.min_cutoff(&out.cutoff, &Some(sc));
                out = self.normalize(out.terms, cutoff)?;
            }
        }
        Ok(out)
    }

    fn pow_rcf(&mut self, r: &RcfElement, q: u32) -> Result<RcfElement, RcfError> {
        let mut acc = self.residue_field.from_rational(&Rational::one());
        for _ in 0..q {
            acc = self.residue_field.mul(&acc, r)?;
        }
        Ok(acc)
    }

    pub fn scale(
        &mut self,
        a: &NonArchElement,
        q: &Rational,
    ) -> Result<NonArchElement, NaError> {
        if q.is_zero() {
            return Ok(self.zero());
        }
        let mut terms = Vec::with_capacity(a.terms.len());
        for (e, c) in &a.terms {
            terms.push((e.clone(), self.residue_field.scale_by_rational(c, q)?));
        }
        Ok(NonArchElement {
            terms,
            cutoff: a.cutoff.clone(),
        })
    }

    // ---- order and classification ----

    /// Sign of the element: -1, 0, +1 by the leading coefficient.
    pub fn sign(&mut self, a: &NonArchElement) -> Result<i8, NaError> {
        match a.leading() {
            None => Ok(0),
            Some((_, c)) => {
                let ord = self
                    .residue_field
                    .compare_with_rational(c, &Rational::zero())?;
                Ok(match ord {
                    Ordering::Less => -1,
                    Ordering::Equal => 0,
                    Ordering::Greater => 1,
                })
            }
        }
    }

    pub fn compare(
        &mut self,
        a: &NonArchElement,
        b: &NonArchElement,
    ) -> Result<Ordering, NaError> {
        let d = self.sub(a, b)?;
        Ok(match self.sign(&d)? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn classify(&mut self, a: &NonArchElement) -> Result<Class, NaError> {
        let Some((lead_exp, _)) = a.leading() else {
            return Ok(Class::Infinitesimal); // zero
        };
        Ok(match self.cmp_exponents(lead_exp, &Exponent::zero()) {
            Ordering::Less => {
                if self.sign(a)? > 0 {
                    Class::PosInfinite
                } else {
                    Class::NegInfinite
                }
            }
            Ordering::Equal => Class::Unit,
            Ordering::Greater => Class::Infinitesimal,
        })
    }

    /// Residue map: the exponent-zero coefficient of a finite element.
    pub fn residue(&mut self, a: &NonArchElement) -> Result<RcfElement, NaError> {
        let class = self.classify(a)?;
        if !class.is_finite() {
            return Err(NaError::InfiniteResidue);
        }
        for (e, c) in &a.terms {
            if e.is_zero() {
                return Ok(c.clone());
            }
        }
        Ok(self.residue_field.zero_element())
    }

    // ---- substitutions ----

    /// Rewrite every occurrence of `t_old` as `t_target^factor` (a pure
    /// exponent rewrite; used when a class is merged into another).
    pub fn substitute_coord_monomial(
        &mut self,
        a: &NonArchElement,
        old: CoordId,
        target: CoordId,
        factor: &Rational,
    ) -> Result<NonArchElement, NaError> {
        let mut terms = Vec::with_capacity(a.terms.len());
        for (e, c) in &a.terms {
            let (removed, rest) = e.without(old);
            let new_exp = match removed {
                None => rest,
                Some(exp_old) => rest.add(&Exponent::single(target, &exp_old * factor)),
            };
            terms.push((new_exp, c.clone()));
        }
        let cutoff = match &a.cutoff {
            None => None,
            Some(co) => {
                let (removed, rest) = co.without(old);
                Some(match removed {
                    None => rest,
                    Some(exp_old) => rest.add(&Exponent::single(target, &exp_old * factor)),
                })
            }
        };
        self.normalize(terms, cutoff)
    }

    /// Rewrite every occurrence of `t_old^e` as `replacement^e`; the
    /// replacement must have a positive leading coefficient when fractional
    /// powers occur.
    pub fn substitute_coord(
        &mut self,
        a: &NonArchElement,
        old: CoordId,
        replacement: &NonArchElement,
    ) -> Result<NonArchElement, NaError> {
        let mut acc = self.zero();
        for (e, c) in a.terms.clone() {
            let (removed, rest) = e.without(old);
            let base = self.monomial(rest, c)?;
            let term = match removed {
                None => base,
                Some(exp_old) => {
                    let powed = self.rational_power(replacement, &exp_old)?;
                    self.mul(&base, &powed)?
                }
            };
            acc = self.add(&acc, &term)?;
        }
        // Keep the weaker of the cutoffs.
        let cutoff = self.min_cutoff(&acc.cutoff, &a.cutoff);
        self.normalize(acc.terms, cutoff)
    }

    /// `a^(p/q)` for rational exponents, through integer powers, inverse,
    /// and q-th roots.
    pub fn rational_power(
        &mut self,
        a: &NonArchElement,
        e: &Rational,
    ) -> Result<NonArchElement, NaError> {
        if e.is_zero() {
            return Ok(self.one());
        }
        let p = e.numer().clone();
        let q = e.denom().to_u32().expect("denominator fits u32");
        let int_pow = self.pow(a, p.abs().to_u32().expect("power fits u32"))?;
        let powed = if p.is_negative() {
            self.inv(&int_pow)?
        } else {
            int_pow
        };
        if q == 1 {
            Ok(powed)
        } else {
            self.root(&powed, q)
        }
    }

    /// Deterministic term-sorted dump.
    pub fn dump(&mut self, a: &NonArchElement) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if a.terms.is_empty() {
            s.push('0');
        }
        for (i, (e, c)) in a.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            match c.rational_value() {
                Some(q) => {
                    let _ = write!(s, "{}", q);
                }
                None => {
                    let _ = write!(s, "[{}]", c.describe());
                }
            }
            for (cid, exp) in e.entries() {
                let _ = write!(s, "*t{}^({})", cid.0, exp);
            }
        }
        if let Some(co) = &a.cutoff {
            let _ = write!(s, " + O(");
            for (cid, exp) in co.entries() {
                let _ = write!(s, "t{}^({})", cid.0, exp);
            }
            let _ = write!(s, ")");
        }
        s
    }
}

fn rational_of(field: &mut RcField, e: &RcfElement) -> Result<Option<Rational>, RcfError> {
    let _ = field;
    Ok(e.rational_value())
}

/// Exact positive q-th root of a positive rational, when it exists.
fn exact_nth_root(c: &Rational, q: u32) -> Option<Rational> {
    if !c.is_positive() {
        return None;
    }
    let rn = c.numer().nth_root(q);
    let rd = c.denom().nth_root(q);
    let pow = |b: &BigInt| -> BigInt {
        let mut acc = BigInt::from(1);
        for _ in 0..q {
            acc *= b;
        }
        acc
    };
    if &pow(&rn) == c.numer() && &pow(&rd) == c.denom() {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}
