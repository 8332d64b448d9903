// SPDX-License-Identifier: MIT

//! Exact checks on reconstructed bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::exact::{gcd_i128, IntRow};
use crate::polydiff::{Monomial, Poly};

/// The numerator polynomial of a row (the row scaled by its denominator).
pub(crate) fn numerator_poly(n: usize, d: usize, cols: &[Monomial], row: &IntRow) -> Poly<i128> {
    Poly::from_terms(n, d, row.entries.iter().map(|&(c, v)| (cols[c as usize], v)))
}

/// Whether `op` annihilates every row.
pub(crate) fn all_killed(n: usize, d: usize, cols: &[Monomial], rows: &[IntRow], op: impl Fn(&Poly<i128>) -> Poly<i128>) -> bool {
    rows.iter().all(|r| op(&numerator_poly(n, d, cols, r)).is_zero())
}

/// Exact membership of the integer vector `v` (sorted by column) in the row
/// space of a reduced echelon basis over the same columns.
pub(crate) fn in_rowspace(v: &[(u32, i128)], rows: &[IntRow], ncols: usize) -> bool {
    in_rowspace_i128(v, rows, ncols).unwrap_or_else(|| in_rowspace_big(v, rows, ncols))
}

fn coefficient(v: &[(u32, i128)], col: u32) -> i128 {
    v.binary_search_by_key(&col, |e| e.0).map_or(0, |i| v[i].1)
}

/// v = Σ_i v[p_i]·row_i, checked after multiplying through by the lcm of the
/// denominators involved; None on overflow.
fn in_rowspace_i128(v: &[(u32, i128)], rows: &[IntRow], ncols: usize) -> Option<bool> {
    let used: Vec<(&IntRow, i128)> = rows.iter().map(|r| (r, coefficient(v, r.pivot))).filter(|(_, c)| *c != 0).collect();
    let mut l: i128 = 1;
    for (r, _) in &used {
        l = (l / gcd_i128(l, r.den)).checked_mul(r.den)?;
    }
    let mut acc = vec![0i128; ncols];
    for &(c, x) in v {
        acc[c as usize] = x.checked_mul(l)?;
    }
    for (r, c) in &used {
        let f = c.checked_mul(l / r.den)?;
        for &(col, num) in &r.entries {
            let a = &mut acc[col as usize];
            *a = a.checked_sub(f.checked_mul(num)?)?;
        }
    }
    Some(acc.iter().all(|&x| x == 0))
}

fn in_rowspace_big(v: &[(u32, i128)], rows: &[IntRow], ncols: usize) -> bool {
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); ncols];
    for &(c, x) in v {
        acc[c as usize] = BigRational::from_integer(BigInt::from(x));
    }
    for r in rows {
        let c = coefficient(v, r.pivot);
        if c == 0 {
            continue;
        }
        let f = BigRational::new(BigInt::from(c), BigInt::from(r.den));
        for &(col, num) in &r.entries {
            acc[col as usize] -= &f * BigRational::from_integer(BigInt::from(num));
        }
    }
    acc.iter().all(|x| x.is_zero())
}
