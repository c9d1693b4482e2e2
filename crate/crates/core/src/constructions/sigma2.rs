//! Stage-exact simulator of the Sigma-2 coding construction: one cut per
//! index, shrinking toward a root of the least usable polynomial while its
//! watched enumeration is quiet, and jumping past every root of that
//! polynomial when the enumeration grows.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exactnum::{
    find_avoiding_interval, sturm_isolate, CoordBox, MultiPoly, PolyEnumerator, Rational,
    RationalInterval, SturmChain, UnivariateScan,
};

use super::script::CeScript;
use super::trace::{RunKind, Trace, TraceEvent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimError {
    /// The run was asked for stages past the script's horizon.
    ScriptExhausted { stage: u64 },
    Script(String),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::ScriptExhausted { stage } => {
                write!(f, "script exhausted at stage {}", stage)
            }
            SimError::Script(msg) => write!(f, "{}", msg),
        }
    }
}

/// Tunables of a Sigma-2 run.
#[derive(Clone, Debug)]
pub struct Sigma2Config {
    /// Budget of the per-polynomial avoiding-interval search.
    pub avoid_budget: u64,
    /// Grade cap of the univariate vocabulary for the least-index search.
    pub vocab_grade_cap: u64,
}

impl Default for Sigma2Config {
    fn default() -> Self {
        Sigma2Config {
            avoid_budget: 32,
            vocab_grade_cap: 9,
        }
    }
}

/// Per-index state of the run.
#[derive(Clone, Debug)]
pub struct Sigma2Index {
    pub interval: RationalInterval,
    /// Index (in the Z[X0] list) of the currently held polynomial, absent
    /// once the capped vocabulary has no polynomial with a root inside.
    pub n: Option<u64>,
    /// Every index ever held, in order.
    pub held: Vec<u64>,
    /// Least-index scan cursor (indices below it have no root in the
    /// current interval).
    pub cursor: u64,
    pub vocabulary_exhausted: bool,
}

pub struct Sigma2State {
    pub per_index: Vec<Sigma2Index>,
}

fn dense_to_poly(d: &[i64]) -> MultiPoly {
    UnivariateScan::to_multipoly(d)
}

/// Sign of p(a/b) for b > 0, via the integer Horner scheme
/// N = sum c_i a^i b^(d-i); no rational reductions.
fn sign_at(dense: &[i64], a: &BigInt, b: &BigInt) -> i8 {
    let numer = horner_numer(dense, a, b);
    match numer.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn horner_numer(dense: &[i64], a: &BigInt, b: &BigInt) -> BigInt {
    let d = dense.len() - 1;
    let mut acc = BigInt::from(dense[d]);
    let mut bp = b.clone();
    for i in (0..d).rev() {
        acc = acc * a + BigInt::from(dense[i]) * &bp;
        if i > 0 {
            bp *= b;
        }
    }
    acc
}

/// Existence of a real root in the open interval, exactly, with cheap
/// rejection filters in front of the Sturm fallback: a Cauchy bound check,
/// then a mean-value bound (no root when |p(mid)| exceeds a derivative
/// bound times the half-width), then endpoint signs.
fn has_root_in(dense: &[i64], iv: &RationalInterval) -> bool {
    let deg = match dense.iter().rposition(|&c| c != 0) {
        Some(0) | None => return false, // constants
        Some(d) => d,
    };
    // Cauchy bound: all real roots have |x| <= 1 + max|c_i| / |lead|.
    let lead = dense[deg].abs();
    let maxc = dense[..deg].iter().map(|c| c.abs()).max().unwrap_or(0);
    let bound = Rational::from_int(1) + Rational::new(maxc, lead);
    if iv.lo() >= &bound || iv.hi() <= &(-bound) {
        return false;
    }
    // Mean value reject: |p(x)| >= |p(mid)| - max|p'| * w/2 on the
    // interval, with max|p'| bounded over |x| <= B by an integer sum.
    // Everything stays in integers: with mid = mn/md and width w = wn/wd,
    // reject when 2 |N(mid)| wd > D wn md^deg, N being the Horner numerator.
    {
        let m = iv.lo().abs().max(iv.hi().abs());
        let b_int = m.floor_int() + BigInt::from(1);
        let mut dbound = BigInt::from(0);
        let mut pw = BigInt::from(1);
        for (i, &c) in dense.iter().enumerate().skip(1) {
            dbound += BigInt::from(i as i64) * BigInt::from(c.abs()) * &pw;
            pw *= &b_int;
        }
        // Unreduced midpoint (p1 q2 + p2 q1) / (2 q1 q2).
        let (p1, q1) = (iv.lo().numer(), iv.lo().denom());
        let (p2, q2) = (iv.hi().numer(), iv.hi().denom());
        let mn = p1 * q2 + p2 * q1;
        let md = BigInt::from(2) * q1 * q2;
        let numer = horner_numer(dense, &mn, &md).abs();
        let w = iv.width();
        let mut md_pow = BigInt::from(1);
        for _ in 0..deg {
            md_pow *= &md;
        }
        let lhs = BigInt::from(2) * numer * w.denom();
        let rhs = dbound * w.numer() * md_pow;
        if lhs > rhs {
            return false;
        }
    }
    let s_lo = sign_at(dense, iv.lo().numer(), iv.lo().denom());
    let s_hi = sign_at(dense, iv.hi().numer(), iv.hi().denom());
    if s_lo == 0 || s_hi == 0 {
        // Endpoint root: fall back to isolation, which handles that case.
        return !sturm_isolate(&dense_to_poly(dense), iv).is_empty();
    }
    if s_lo != s_hi {
        return true;
    }
    let chain = SturmChain::new(&dense_to_poly(dense));
    chain.count_open(iv.lo(), iv.hi()) > 0
}

/// Run the simulator for `stages` stages (1..=stages).
pub fn run_sigma2(
    script: &CeScript,
    stages: u64,
    cfg: &Sigma2Config,
) -> Result<(Trace, Sigma2State), SimError> {
    script
        .validate()
        .map_err(|v| SimError::Script(alloc::format!("{}", v)))?;
    if stages > script.horizon {
        return Err(SimError::ScriptExhausted {
            stage: script.horizon + 1,
        });
    }
    let indices = script.num_indices();
    let mut trace = Trace::new(RunKind::Sigma2, stages);
    let mut scan = UnivariateScan::new(cfg.vocab_grade_cap);
    let mut master = PolyEnumerator::new();
    let mut per_index: Vec<Sigma2Index> = Vec::new();

    // Stage 0: I_{e,0} = (e, e+1) and the least polynomial with a root
    // inside.
    for e in 0..indices {
        let iv = RationalInterval::open(
            Rational::from_int(e as i64),
            Rational::from_int(e as i64 + 1),
        );
        let found = scan.find_from(0, |d| has_root_in(d, &iv));
        let (n, cursor, poly_str) = match found {
            Some((n, dense)) => (
                Some(n),
                n,
                Some(dense_to_poly(&dense).canonical_string()),
            ),
            None => (None, u64::MAX, None),
        };
        trace.push(TraceEvent::Sigma2Init {
            e,
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
            n,
            poly: poly_str,
        });
        per_index.push(Sigma2Index {
            interval: iv,
            n,
            held: n.into_iter().collect(),
            cursor,
            vocabulary_exhausted: n.is_none(),
        });
    }

    for s in 1..=stages {
        trace.push(TraceEvent::StageStart { s });
        // Snapshot of all intervals at stage start (the prefix boxes of the
        // avoidance conditions use the pre-update values).
        let snapshot: Vec<RationalInterval> =
            per_index.iter().map(|st| st.interval.clone()).collect();
        for e in 0..indices {
            let changed = script.w_changed(script.f_of(e), s - 1, s);
            if !changed {
                refine_step(&mut per_index[e as usize], &mut scan, &mut trace, s, e);
            } else {
                avoid_step(
                    &mut per_index[e as usize],
                    &snapshot,
                    &mut scan,
                    &mut master,
                    &mut trace,
                    s,
                    e,
                    cfg,
                );
            }
        }
    }

    Ok((trace, Sigma2State { per_index }))
}

/// Unchanged branch: shrink strictly, keeping the leftmost root of the held
/// polynomial inside.
fn refine_step(
    st: &mut Sigma2Index,
    scan: &mut UnivariateScan,
    trace: &mut Trace,
    s: u64,
    e: u64,
) {
    let iv = st.interval.clone();
    let new_iv = match st.n {
        None => {
            // Nothing held: plain strict shrink by quarters.
            let w = iv.width();
            let q = &w / &Rational::from_int(4);
            RationalInterval::open(iv.lo() + &q, iv.hi() - &q)
        }
        Some(n) => {
            let dense = scan.get(n).expect("held index inside vocabulary");
            let poly = dense_to_poly(&dense);
            let roots = sturm_isolate(&poly, &iv);
            debug_assert!(!roots.is_empty(), "held polynomial lost its root");
            let chain = SturmChain::new(&poly);
            // Narrow the leftmost root's isolating interval until it is
            // strictly inside the current interval.
            let mut j = roots[0].clone();
            while j.lo() <= iv.lo() || j.hi() >= iv.hi() {
                j = chain.narrow(&j);
            }
            j
        }
    };
    debug_assert!(new_iv.is_subset_of(&iv));
    st.interval = new_iv.clone();
    trace.push(TraceEvent::Sigma2Refine {
        s,
        e,
        lo: new_iv.lo().clone(),
        hi: new_iv.hi().clone(),
    });
}

/// Changed branch: move past every root of the held polynomial (rightmost
/// root-free gap), avoid the first s prefix polynomials where decidable,
/// and re-pick the least usable polynomial index.
#[allow(clippy::too_many_arguments)]
fn avoid_step(
    st: &mut Sigma2Index,
    snapshot: &[RationalInterval],
    scan: &mut UnivariateScan,
    master: &mut PolyEnumerator,
    trace: &mut Trace,
    s: u64,
    e: u64,
    cfg: &Sigma2Config,
) {
    let iv = st.interval.clone();
    let old_n = st.n;
    // Base of the new interval: strictly right of every held root.
    let base_left = match st.n {
        None => iv.lo().clone(),
        Some(n) => {
            let dense = scan.get(n).expect("held index inside vocabulary");
            let poly = dense_to_poly(&dense);
            let roots = sturm_isolate(&poly, &iv);
            match roots.last() {
                Some(rightmost) => {
                    // Make sure the root-free gap to the right endpoint has
                    // positive width.
                    let chain = SturmChain::new(&poly);
                    let mut j = rightmost.clone();
                    while j.hi() >= iv.hi() {
                        j = chain.narrow(&j);
                    }
                    j.hi().clone()
                }
                None => iv.lo().clone(),
            }
        }
    };
    let gap = iv.hi() - &base_left;
    let eighth = &gap / &Rational::from_int(8);
    let mut candidate =
        RationalInterval::open(&base_left + &eighth, iv.hi() - &eighth);
    // Avoid roots of the first s prefix polynomials where decidably
    // possible; impossible ones are skipped and logged.
    let mut escapes = Vec::new();
    let prefix = CoordBox::new(
        snapshot[..e as usize]
            .iter()
            .map(|i| RationalInterval::open(i.lo().clone(), i.hi().clone()))
            .collect(),
    );
    let rs = master.first_with_vars_up_to(e as usize, s as usize);
    for (ridx, r) in rs.iter().enumerate() {
        match find_avoiding_interval(r, &prefix, &candidate, cfg.avoid_budget) {
            Some(better) => candidate = better,
            None => escapes.push(ridx as u64),
        }
    }
    // Re-pick the least polynomial with a root inside; the cursor is
    // monotone because smaller indices had no root in a superset interval.
    let from = match st.n {
        Some(n) => n + 1,
        None => st.cursor,
    };
    let found = if st.vocabulary_exhausted {
        None
    } else {
        scan.find_from(from, |d| has_root_in(d, &candidate))
    };
    let (new_n, poly_str) = match found {
        Some((n, dense)) => {
            st.cursor = n;
            st.held.push(n);
            (Some(n), Some(dense_to_poly(&dense).canonical_string()))
        }
        None => {
            st.vocabulary_exhausted = true;
            (None, None)
        }
    };
    st.n = new_n;
    st.interval = candidate.clone();
    trace.push(TraceEvent::Sigma2Avoid {
        s,
        e,
        lo: candidate.lo().clone(),
        hi: candidate.hi().clone(),
        old_n,
        new_n,
        new_poly: poly_str,
        escapes,
    });
}

/// Recompute the held polynomial of a univariate index; shared with the
/// offline verifier.
pub fn univariate_poly(n: u64, grade_cap: u64) -> Option<MultiPoly> {
    UnivariateScan::new(grade_cap)
        .get(n)
        .map(|d| dense_to_poly(&d))
}

/// Signed value of a univariate integer polynomial at a rational point.
pub fn eval_univariate(p: &MultiPoly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let deg = p.total_degree();
    for d in (0..=deg).rev() {
        let c = p.coeff(&crate::exactnum::Monomial::from_exponents(alloc::vec![d]));
        acc = acc * x.clone() + Rational::from(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn quiet_script(indices: u64, horizon: u64) -> CeScript {
        CeScript {
            horizon,
            indices: Some(indices),
            ..Default::default()
        }
    }

    fn growing_script(indices: u64, horizon: u64) -> CeScript {
        let mut w = alloc::collections::BTreeMap::new();
        for e in 0..indices {
            let adds: Vec<(u64, Vec<u64>)> =
                (1..=horizon).map(|s| (s, alloc::vec![s * 100 + e])).collect();
            w.insert(e, adds);
        }
        CeScript {
            w,
            horizon,
            indices: Some(indices),
            ..Default::default()
        }
    }

    #[test]
    fn stage_zero_intervals() {
        let script = quiet_script(4, 5);
        let (trace, state) = run_sigma2(&script, 0, &Sigma2Config::default()).unwrap();
        for (e, st) in state.per_index.iter().enumerate() {
            assert_eq!(st.interval.lo(), &rat(e as i64, 1));
            assert_eq!(st.interval.hi(), &rat(e as i64 + 1, 1));
            assert!(st.n.is_some(), "index {} found no polynomial", e);
        }
        assert!(matches!(
            trace.events()[0],
            TraceEvent::Sigma2Init { e: 0, .. }
        ));
    }

    #[test]
    fn frozen_index_keeps_a_root() {
        let script = quiet_script(2, 30);
        let (_, state) = run_sigma2(&script, 30, &Sigma2Config::default()).unwrap();
        for st in &state.per_index {
            let n = st.n.expect("frozen index holds its polynomial");
            assert_eq!(st.held, alloc::vec![n]);
            let p = univariate_poly(n, 9).unwrap();
            // Sturm certifies a root inside the final interval.
            assert!(!sturm_isolate(&p, &st.interval).is_empty());
            assert!(st.interval.width() < rat(1, 1));
        }
    }

    #[test]
    fn growing_index_excludes_held_roots() {
        let script = growing_script(2, 12);
        let (_, state) = run_sigma2(&script, 12, &Sigma2Config::default()).unwrap();
        for st in &state.per_index {
            assert!(st.held.len() >= 2, "held {:?}", st.held);
            for &n in &st.held[..st.held.len().saturating_sub(1)] {
                let p = univariate_poly(n, 9).unwrap();
                assert!(
                    sturm_isolate(&p, &st.interval).is_empty(),
                    "poly {} still has a root in {:?}",
                    n,
                    st.interval
                );
            }
        }
    }

    #[test]
    fn intervals_nest_exactly() {
        let script = growing_script(3, 10);
        let (trace, _) = run_sigma2(&script, 10, &Sigma2Config::default()).unwrap();
        let mut last: alloc::collections::BTreeMap<u64, RationalInterval> = Default::default();
        for ev in trace.events() {
            let (e, lo, hi) = match ev {
                TraceEvent::Sigma2Init { e, lo, hi, .. }
                | TraceEvent::Sigma2Refine { e, lo, hi, .. }
                | TraceEvent::Sigma2Avoid { e, lo, hi, .. } => (*e, lo, hi),
                _ => continue,
            };
            let iv = RationalInterval::open(lo.clone(), hi.clone());
            if let Some(prev) = last.get(&e) {
                assert!(iv.is_subset_of(prev), "index {} escaped", e);
                assert!(iv.lo() > prev.lo() && iv.hi() < prev.hi(), "strict shrink");
            }
            last.insert(e, iv);
        }
    }

    #[test]
    fn horizon_is_enforced() {
        let script = quiet_script(1, 5);
        assert!(matches!(
            run_sigma2(&script, 6, &Sigma2Config::default()),
            Err(SimError::ScriptExhausted { .. })
        ));
    }
}
