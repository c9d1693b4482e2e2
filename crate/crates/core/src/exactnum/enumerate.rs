//! Fixed graded enumeration of the nonzero integer polynomials.
//!
//! The enumeration is a bijection from the naturals onto the nonzero
//! elements of Z[X0,X1,...], graded by
//! `total degree + max variable index + coefficient height`
//! (a constant counts as using variable slot 1, so that `X0` opens the
//! list).  Inside a grade, splits `(degree, max var, height)` are visited
//! with degree descending and max var ascending, and each split class is
//! ordered by term count, then lexicographically on the canonical term
//! sequence.  Index 0 is `X0`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::poly::{Monomial, MultiPoly};

/// Grade of a nonzero polynomial in the fixed enumeration.
pub fn poly_grade(p: &MultiPoly) -> u64 {
    assert!(!p.is_zero(), "zero polynomial has no grade");
    let d = p.total_degree() as u64;
    // Constants take the variable budget of slot 1 so that X0 comes first.
    let v = p.max_var().map_or(1, |v| v as u64);
    let h = p.height().to_u64().expect("coefficient height out of range");
    d + v + h
}

fn coeff_key(c: &BigInt) -> (BigInt, bool) {
    (c.abs(), c.is_negative())
}

/// Canonical order inside a grade class: fewer terms first, then the term
/// sequences compared entry by entry.
fn cmp_in_class(a: &MultiPoly, b: &MultiPoly) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    match a.num_terms().cmp(&b.num_terms()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
        match ma.cmp(mb) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match coeff_key(ca).cmp(&coeff_key(cb)) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// All monomials with max variable index <= `v` and total degree <= `d`,
/// including the unit monomial.
fn monomials_up_to(d: u32, v: usize) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>, vars_left: usize, deg_left: u32) {
        if vars_left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=deg_left {
            prefix.push(e);
            rec(out, prefix, vars_left - 1, deg_left - e);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut Vec::new(), v + 1, d);
    raw.into_iter().map(Monomial::from_exponents).collect()
}

// Materializing a split class walks (2h+1)^monomials candidate coefficient
// vectors; refuse clearly rather than hang when a caller strays far past
// desk scale.
const MAX_CLASS_CANDIDATES: u64 = 8_000_000;

/// All polynomials with total degree exactly `d`, max variable exactly `v`,
/// height exactly `h`, in canonical class order.  `d >= 1`.
fn split_class(d: u32, v: usize, h: i64) -> Vec<MultiPoly> {
    debug_assert!(d >= 1 && h >= 1);
    let monos = monomials_up_to(d, v);
    let m = monos.len();
    let base = (2 * h + 1) as u64;
    let candidates = base.checked_pow(m as u32).unwrap_or(u64::MAX);
    assert!(
        candidates <= MAX_CLASS_CANDIDATES,
        "polynomial class (deg {}, var {}, height {}) too large to materialize",
        d,
        v,
        h
    );
    let mut out = Vec::new();
    let mut coeffs = alloc::vec![-h; m];
    'outer: loop {
        // Filters: exact degree, exact max var, exact height.
        let mut deg = 0u32;
        let mut maxvar: Option<usize> = None;
        let mut height = 0i64;
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            deg = deg.max(monos[i].total_degree());
            maxvar = maxvar.max(monos[i].max_var());
            height = height.max(c.abs());
        }
        let var_ok = match v {
            0 => maxvar == Some(0),
            _ => maxvar == Some(v),
        };
        if deg == d && var_ok && height == h {
            out.push(MultiPoly::from_terms(
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (monos[i].clone(), BigInt::from(c))),
            ));
        }
        // Odometer step.
        for slot in coeffs.iter_mut() {
            if *slot < h {
                *slot += 1;
                continue 'outer;
            }
            *slot = -h;
        }
        break;
    }
    out.sort_by(cmp_in_class);
    out
}

/// Constants of height exactly `h`: `h` then `-h`.
fn constant_class(h: i64) -> Vec<MultiPoly> {
    alloc::vec![MultiPoly::constant(h), MultiPoly::constant(-h)]
}

/// Splits of grade `g` in enumeration order: degree descending, then max
/// var ascending; constants (slot `v = 1`) come where `d = 0` lands.
fn splits_of_grade(g: u64) -> Vec<(u32, usize, i64)> {
    let mut out = Vec::new();
    for d in (0..=g).rev() {
        if d == 0 {
            // Constant split: v = 1 by convention, h = g - 1.
            if g >= 2 {
                out.push((0, 1, (g - 1) as i64));
            }
            continue;
        }
        for v in 0..=(g - d) {
            let h = g as i64 - d as i64 - v as i64;
            if h >= 1 {
                out.push((d as u32, v as usize, h));
            }
        }
    }
    out
}

fn class_for_split(d: u32, v: usize, h: i64) -> Vec<MultiPoly> {
    if d == 0 {
        constant_class(h)
    } else {
        split_class(d, v, h)
    }
}

/// Lazily materialized enumeration ladders (master list and the univariate
/// Z[X0] sublist), cached per grade.
#[derive(Default)]
pub struct PolyEnumerator {
    master: Vec<Vec<MultiPoly>>,
    master_grades_done: u64,
    univariate: Vec<MultiPoly>,
    univariate_grades_done: u64,
}

impl PolyEnumerator {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure_master_grade(&mut self, g: u64) {
        while self.master_grades_done < g {
            let next = self.master_grades_done + 1;
            let mut class = Vec::new();
            for (d, v, h) in splits_of_grade(next) {
                class.extend(class_for_split(d, v, h));
            }
            self.master.push(class);
            self.master_grades_done = next;
        }
    }

    /// The fixed bijection: `i`-th nonzero polynomial.
    pub fn by_index(&mut self, index: u64) -> MultiPoly {
        let mut remaining = index;
        let mut g = 1;
        loop {
            self.ensure_master_grade(g);
            let class = &self.master[(g - 1) as usize];
            if (remaining as usize) < class.len() {
                return class[remaining as usize].clone();
            }
            remaining -= class.len() as u64;
            g += 1;
        }
    }

    /// Inverse of [`Self::by_index`].
    pub fn index_of(&mut self, p: &MultiPoly) -> u64 {
        let g = poly_grade(p);
        self.ensure_master_grade(g);
        let mut index: u64 = 0;
        for gg in 1..g {
            index += self.master[(gg - 1) as usize].len() as u64;
        }
        let class = &self.master[(g - 1) as usize];
        for q in class {
            if q == p {
                return index;
            }
            index += 1;
        }
        unreachable!("polynomial missing from its own grade class");
    }

    /// First `count` polynomials of the master list using only variables
    /// `X0..X{max_var}`.
    pub fn first_with_vars_up_to(&mut self, max_var: usize, count: usize) -> Vec<MultiPoly> {
        let mut out = Vec::with_capacity(count);
        let mut i = 0u64;
        while out.len() < count {
            let p = self.by_index(i);
            if p.uses_only_vars_up_to(max_var) {
                out.push(p);
            }
            i += 1;
        }
        out
    }

    fn ensure_univariate_grade(&mut self, g: u64) {
        while self.univariate_grades_done < g {
            let next = self.univariate_grades_done + 1;
            for (d, v, h) in splits_of_grade(next) {
                // Univariate list keeps the master's relative order but only
                // realizes the Z[X0] splits (v = 0, plus the constants).
                if v == 0 || d == 0 {
                    self.univariate.extend(class_for_split(d, v, h));
                }
            }
            self.univariate_grades_done = next;
        }
    }

    /// `n`-th polynomial of the Z[X0] sublist, materializing grades at most
    /// `grade_cap`; `None` once `n` falls past the capped vocabulary.
    pub fn univariate(&mut self, n: u64, grade_cap: u64) -> Option<MultiPoly> {
        self.ensure_univariate_grade(grade_cap);
        self.univariate.get(n as usize).cloned()
    }

    /// Number of univariate polynomials materialized under `grade_cap`.
    pub fn univariate_len(&mut self, grade_cap: u64) -> u64 {
        self.ensure_univariate_grade(grade_cap);
        self.univariate.len() as u64
    }
}

/// Resumable scan over the Z[X0] sublist in enumeration order, with dense
/// `i64` coefficient vectors (degree 0 upward).  Unlike the materialized
/// ladder in [`PolyEnumerator`], only one grade class is held at a time, so
/// scans can reach grades whose classes are too large to keep around.
pub struct UnivariateScan {
    grade_cap: u64,
    classes: Vec<UniClassMeta>,
    discovered_to_grade: u64,
    cache: alloc::collections::BTreeMap<usize, Vec<Vec<i64>>>,
    cache_entries: u64,
    cache_order: Vec<usize>,
}

// Keep at most this many materialized polynomials across cached classes.
const SCAN_CACHE_LIMIT: u64 = 1_500_000;

struct UniClassMeta {
    d: u32,
    h: i64,
    start: u64,
    size: u64,
}

fn cmp_dense(a: &[i64], b: &[i64]) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    let terms = |p: &[i64]| -> Vec<(usize, i64)> {
        p.iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| (d, c))
            .collect()
    };
    let ta = terms(a);
    let tb = terms(b);
    match ta.len().cmp(&tb.len()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for ((da, ca), (db, cb)) in ta.iter().zip(&tb) {
        // Higher degree sorts earlier.
        match db.cmp(da) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match (ca.abs(), *ca < 0).cmp(&(cb.abs(), *cb < 0)) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn dense_class(d: u32, h: i64) -> Vec<Vec<i64>> {
    if d == 0 {
        // Constant class.
        return alloc::vec![alloc::vec![h], alloc::vec![-h]];
    }
    let m = d as usize + 1;
    let base = (2 * h + 1) as u64;
    let candidates = base.checked_pow(m as u32).unwrap_or(u64::MAX);
    assert!(
        candidates <= 16_000_000,
        "univariate class (deg {}, height {}) too large",
        d,
        h
    );
    let mut out = Vec::new();
    let mut coeffs = alloc::vec![-h; m];
    'outer: loop {
        if coeffs[d as usize] != 0 && coeffs.iter().map(|c| c.abs()).max() == Some(h) {
            out.push(coeffs.clone());
        }
        for slot in coeffs.iter_mut() {
            if *slot < h {
                *slot += 1;
                continue 'outer;
            }
            *slot = -h;
        }
        break;
    }
    // Sort with precomputed keys; the comparator allocates otherwise.
    out.sort_by_cached_key(|p| dense_key(p));
    out
}

/// Compact sort key realizing the canonical class order on dense vectors.
fn dense_key(p: &[i64]) -> Vec<u64> {
    let mut key = Vec::with_capacity(2 * p.len() + 1);
    let terms: Vec<(usize, i64)> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| (d, c))
        .collect();
    key.push(terms.len() as u64);
    for (d, c) in terms {
        // Higher degree sorts earlier.
        key.push(u64::MAX - d as u64);
        key.push(c.unsigned_abs());
        key.push(u64::from(c < 0));
    }
    key
}

impl UnivariateScan {
    pub fn new(grade_cap: u64) -> Self {
        UnivariateScan {
            grade_cap,
            classes: Vec::new(),
            discovered_to_grade: 1,
            cache: alloc::collections::BTreeMap::new(),
            cache_entries: 0,
            cache_order: Vec::new(),
        }
    }

    pub fn grade_cap(&self) -> u64 {
        self.grade_cap
    }

    fn discover_next_grade(&mut self) -> bool {
        if self.discovered_to_grade >= self.grade_cap {
            return false;
        }
        let g = self.discovered_to_grade + 1;
        // Univariate splits of grade g in master order: degree descending
        // with height g - d, then the constants.
        for d in (1..g).rev() {
            let h = (g - d) as i64;
            let start = self.next_start();
            // Vectors with nonzero top coefficient and exact height h:
            // 2h(2h+1)^d - (2h-2)(2h-1)^d.
            let size = 2 * h as u64 * (2 * h as u64 + 1).pow(d as u32)
                - (2 * h as u64 - 2) * (2 * h as u64 - 1).pow(d as u32);
            self.classes.push(UniClassMeta {
                d: d as u32,
                h,
                start,
                size,
            });
        }
        let start = self.next_start();
        self.classes.push(UniClassMeta {
            d: 0,
            h: (g - 1) as i64,
            start,
            size: 2,
        });
        self.discovered_to_grade = g;
        true
    }

    fn next_start(&self) -> u64 {
        self.classes.last().map_or(0, |c| c.start + c.size)
    }

    fn class_of_index(&mut self, n: u64) -> Option<usize> {
        loop {
            if let Some(i) = self
                .classes
                .iter()
                .position(|c| c.start <= n && n < c.start + c.size)
            {
                return Some(i);
            }
            if !self.discover_next_grade() {
                return None;
            }
        }
    }

    fn class_polys(&mut self, idx: usize) -> &Vec<Vec<i64>> {
        if !self.cache.contains_key(&idx) {
            let meta = &self.classes[idx];
            let polys = dense_class(meta.d, meta.h);
            self.cache_entries += polys.len() as u64;
            self.cache.insert(idx, polys);
            self.cache_order.push(idx);
            while self.cache_entries > SCAN_CACHE_LIMIT && self.cache_order.len() > 1 {
                let evict = self.cache_order.remove(0);
                if evict == idx {
                    self.cache_order.push(evict);
                    continue;
                }
                if let Some(old) = self.cache.remove(&evict) {
                    self.cache_entries -= old.len() as u64;
                }
            }
        }
        self.cache.get(&idx).expect("just filled")
    }

    /// Dense coefficients of the n-th univariate polynomial, or `None` past
    /// the capped vocabulary.
    pub fn get(&mut self, n: u64) -> Option<Vec<i64>> {
        let idx = self.class_of_index(n)?;
        let off = (n - self.classes[idx].start) as usize;
        Some(self.class_polys(idx)[off].clone())
    }

    /// Least index `>= from` whose polynomial satisfies the predicate;
    /// `None` once the capped vocabulary is exhausted.
    pub fn find_from<F: FnMut(&[i64]) -> bool>(
        &mut self,
        from: u64,
        mut pred: F,
    ) -> Option<(u64, Vec<i64>)> {
        let mut idx = self.class_of_index(from)?;
        let mut n = from;
        loop {
            let (start, size) = {
                let meta = &self.classes[idx];
                (meta.start, meta.size)
            };
            let off = (n - start) as usize;
            {
                let polys = self.class_polys(idx);
                for (k, p) in polys.iter().enumerate().skip(off) {
                    if pred(p) {
                        return Some((start + k as u64, p.clone()));
                    }
                }
            }
            n = start + size;
            idx += 1;
            if idx >= self.classes.len() && !self.discover_next_grade() {
                return None;
            }
            if idx >= self.classes.len() {
                return None;
            }
        }
    }

    pub fn to_multipoly(dense: &[i64]) -> MultiPoly {
        MultiPoly::from_terms(dense.iter().enumerate().filter(|(_, &c)| c != 0).map(
            |(d, &c)| {
                (
                    Monomial::from_exponents(alloc::vec![d as u32]),
                    BigInt::from(c),
                )
            },
        ))
    }
}

/// `index`-th nonzero polynomial of the fixed enumeration.
///
/// Convenience wrapper that rebuilds its cache per call; hold a
/// [`PolyEnumerator`] in loops.
pub fn poly_enumerate(index: u64) -> MultiPoly {
    PolyEnumerator::new().by_index(index)
}

/// Index of a nonzero polynomial in the fixed enumeration.
pub fn poly_index(p: &MultiPoly) -> u64 {
    PolyEnumerator::new().index_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_zero_is_x0() {
        assert_eq!(poly_enumerate(0), MultiPoly::var(0));
    }

    #[test]
    fn leading_entries() {
        // Grade 2: X0, -X0, X0+1, X0-1, -X0+1, -X0-1, 1, -1.
        let want = [
            "1*X0", "-1*X0", "1*X0 + 1", "1*X0 + -1", "-1*X0 + 1", "-1*X0 + -1", "1", "-1",
        ];
        let mut e = PolyEnumerator::new();
        for (i, s) in want.iter().enumerate() {
            assert_eq!(e.by_index(i as u64).canonical_string(), *s, "index {}", i);
        }
        // Grade 3 opens with the quadratics of height 1.
        assert_eq!(e.by_index(8).canonical_string(), "1*X0^2");
    }

    #[test]
    fn distinct_small_indices() {
        let mut e = PolyEnumerator::new();
        let polys: Vec<_> = (0..200).map(|i| e.by_index(i)).collect();
        for i in 0..polys.len() {
            for j in (i + 1)..polys.len() {
                assert_ne!(polys[i], polys[j], "indices {} and {}", i, j);
            }
        }
    }

    #[test]
    fn round_trip_first_thousand() {
        let mut e = PolyEnumerator::new();
        for i in 0..1000u64 {
            let p = e.by_index(i);
            assert_eq!(e.index_of(&p), i, "round trip at {}", i);
        }
    }

    #[test]
    fn univariate_sublist_is_the_master_filter() {
        let mut e = PolyEnumerator::new();
        let filtered: Vec<_> = {
            let mut v = Vec::new();
            let mut i = 0u64;
            while v.len() < 60 {
                let p = e.by_index(i);
                if p.uses_only_vars_up_to(0) {
                    v.push(p);
                }
                i += 1;
            }
            v
        };
        for (n, p) in filtered.iter().enumerate() {
            assert_eq!(e.univariate(n as u64, 8).as_ref(), Some(p), "entry {}", n);
        }
    }

    #[test]
    fn dense_scan_matches_materialized_ladder() {
        let mut e = PolyEnumerator::new();
        let mut scan = UnivariateScan::new(6);
        for n in 0..400u64 {
            let dense = scan.get(n).expect("within grade cap");
            let want = e.univariate(n, 6).expect("within grade cap");
            assert_eq!(UnivariateScan::to_multipoly(&dense), want, "entry {}", n);
        }
        // find_from resumes mid-class.
        let (idx, p) = scan
            .find_from(3, |d| d.iter().filter(|&&c| c != 0).count() == 1)
            .unwrap();
        assert!(idx >= 3);
        assert_eq!(p.iter().filter(|&&c| c != 0).count(), 1);
    }

    #[test]
    fn var_filter_lists() {
        let mut e = PolyEnumerator::new();
        let rs = e.first_with_vars_up_to(1, 30);
        assert_eq!(rs.len(), 30);
        assert!(rs.iter().all(|p| p.uses_only_vars_up_to(1)));
        assert_eq!(rs[0], MultiPoly::var(0));
    }
}
