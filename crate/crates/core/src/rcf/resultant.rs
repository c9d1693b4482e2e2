//! Resultant constructions for sum and product of algebraic elements,
//! computed fraction-free over the generator polynomial ring.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactnum::{Monomial, MultiPoly};

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Monomial `Z^e` where Z is the auxiliary variable with index `z`.
fn z_pow(z: usize, e: u32) -> MultiPoly {
    let mut exps = alloc::vec![0u32; z + 1];
    exps[z] = e;
    let mut p = MultiPoly::zero();
    p.add_term(Monomial::from_exponents(exps), BigInt::one());
    p
}

/// Fraction-free (Bareiss) determinant with row-swap pivoting.
fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Resultant in X of A and B, both given as coefficient vectors in X
/// (degree 0 upward) with entries in the generator ring (possibly also Z).
fn resultant_in_x(a: &[MultiPoly], b: &[MultiPoly]) -> MultiPoly {
    let m = a.len() - 1;
    let n = b.len() - 1;
    assert!(m >= 1 || n >= 1, "resultant of two constants");
    if m == 0 {
        return a[0].pow(n as u32);
    }
    if n == 0 {
        return b[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = alloc::vec![alloc::vec![MultiPoly::zero(); size]; size];
    // n rows of A's coefficients, leading first.
    for (i, row) in mat.iter_mut().take(n).enumerate() {
        for (k, coeff) in a.iter().rev().enumerate() {
            row[i + k] = coeff.clone();
        }
    }
    // m rows of B's coefficients.
    for i in 0..m {
        for (k, coeff) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = coeff.clone();
        }
    }
    bareiss_det(mat)
}

/// Smallest variable index free for the auxiliary Z.
fn aux_var(px: &[MultiPoly], py: &[MultiPoly]) -> usize {
    px.iter()
        .chain(py)
        .filter_map(MultiPoly::max_var)
        .map(|v| v + 1)
        .max()
        .unwrap_or(0)
}

/// Defining polynomial (coefficients in the generator ring, degree 0 up)
/// for `x + y`, from defining polynomials of `x` and `y`:
/// `Res_X(P_x(X), P_y(Z - X))` read as a polynomial in Z.
pub fn resultant_sum(px: &[MultiPoly], py: &[MultiPoly]) -> Vec<MultiPoly> {
    let z = aux_var(px, py);
    let n = py.len() - 1;
    // Coefficient of X^j in P_y(Z - X): sum over k >= j of
    // py[k] * C(k, j) * (-1)^j * Z^(k-j).
    let mut b = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = MultiPoly::zero();
        for (k, pyk) in py.iter().enumerate().skip(j) {
            let mut c = binomial(k, j);
            if j % 2 == 1 {
                c = -c;
            }
            acc = acc.add(&pyk.scale(&c).mul(&z_pow(z, (k - j) as u32)));
        }
        b.push(acc);
    }
    let res = resultant_in_x(px, &b);
    shift_down(res.coeffs_in_var(z), z)
}

/// Defining polynomial for `x * y`: `Res_X(P_x(X), X^n P_y(Z / X))`.
/// `P_y` must have a nonzero constant coefficient (strip powers of X for
/// elements already separated from zero).
pub fn resultant_prod(px: &[MultiPoly], py: &[MultiPoly]) -> Vec<MultiPoly> {
    let z = aux_var(px, py);
    let n = py.len() - 1;
    assert!(!py[0].is_zero(), "product resultant needs P_y(0) != 0");
    // Coefficient of X^(n-k) is py[k] * Z^k.
    let mut b = alloc::vec![MultiPoly::zero(); n + 1];
    for (k, pyk) in py.iter().enumerate() {
        b[n - k] = pyk.mul(&z_pow(z, k as u32));
    }
    let res = resultant_in_x(px, &b);
    shift_down(res.coeffs_in_var(z), z)
}

/// Rewrite coefficients so they only mention generator variables (the
/// auxiliary Z has been projected out by `coeffs_in_var`).
fn shift_down(coeffs: Vec<MultiPoly>, z: usize) -> Vec<MultiPoly> {
    for c in &coeffs {
        debug_assert!(c.degree_in(z) == 0, "auxiliary variable leaked");
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upoly(coeffs: &[i64]) -> Vec<MultiPoly> {
        coeffs.iter().map(|&c| MultiPoly::constant(c)).collect()
    }

    fn as_int_coeffs(v: &[MultiPoly]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        v.iter()
            .map(|p| {
                if p.is_zero() {
                    0
                } else {
                    p.coeff(&Monomial::unit()).to_i64().unwrap()
                }
            })
            .collect()
    }

    #[test]
    fn sum_of_linear_roots() {
        // roots 1 and 2: sum defined by Z - 3 (up to sign).
        let r = resultant_sum(&upoly(&[-1, 1]), &upoly(&[-2, 1]));
        let c = as_int_coeffs(&r);
        assert!(c == [-3, 1] || c == [3, -1], "{:?}", c);
    }

    #[test]
    fn product_of_linear_roots() {
        let r = resultant_prod(&upoly(&[-2, 1]), &upoly(&[-3, 1]));
        let c = as_int_coeffs(&r);
        assert!(c == [-6, 1] || c == [6, -1], "{:?}", c);
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        // Z^4 - 10 Z^2 + 1, up to sign.
        let r = resultant_sum(&upoly(&[-2, 0, 1]), &upoly(&[-3, 0, 1]));
        let mut c = as_int_coeffs(&r);
        if c.last() == Some(&-1) {
            for x in &mut c {
                *x = -*x;
            }
        }
        assert_eq!(c, [1, 0, -10, 0, 1]);
    }

    #[test]
    fn sqrt2_times_sqrt2() {
        // Z^2 - 4 appears as a factor: the resultant for x = y = sqrt-of-2
        // is (Z^2 - 4)^2 up to sign; it must vanish at Z = 2 and Z = -2.
        let r = resultant_prod(&upoly(&[-2, 0, 1]), &upoly(&[-2, 0, 1]));
        let c = as_int_coeffs(&r);
        let eval = |z: i64| -> i64 {
            c.iter()
                .enumerate()
                .map(|(i, &a)| a * z.pow(i as u32))
                .sum()
        };
        assert_eq!(eval(2), 0);
        assert_eq!(eval(-2), 0);
        assert_ne!(eval(1), 0);
    }

    #[test]
    fn sum_with_generator_coefficients() {
        // x defined by X^2 - x0 (generator) plus rational 1 defined by X - 1:
        // the resultant must vanish when Z = 1 + sqrt(x0), symbolically:
        // substitute Z -> X + 1 and check the result is X^2 - x0 up to sign.
        let px = alloc::vec![
            MultiPoly::var(0).neg(),
            MultiPoly::zero(),
            MultiPoly::constant(1),
        ];
        let py = alloc::vec![MultiPoly::constant(-1), MultiPoly::constant(1)];
        let r = resultant_sum(&px, &py);
        assert_eq!(r.len(), 3);
        // r(Z) = (Z-1)^2 - x0 (up to sign): coefficients [1 - x0, -2, 1].
        let c0 = &r[0];
        let sign: i64 = if r[2] == MultiPoly::constant(1) { 1 } else { -1 };
        let want0 =
            MultiPoly::constant(sign).sub(&MultiPoly::var(0).scale(&BigInt::from(sign)));
        assert_eq!(c0, &want0);
    }
}
