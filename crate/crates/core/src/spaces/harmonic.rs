// SPDX-License-Identifier: MIT

//! Hilbert function of Har_{n,a} = {φ ∈ C[x_1..x_n] : Σ_i a_i ∂^r φ/∂x_i^r = 0
//! for all r ≥ 1} for a numeric vector a.
//!
//! D_1 = Σ a_i ∂_i kills φ iff φ depends only on z_i = x_i − (a_i/a_n) x_n,
//! i < n. Har is closed under every ∂_{x_j}, and a homogeneous φ of degree k
//! whose partial derivatives are harmonic has D_r φ constant, hence zero for
//! r < k. So Har_k is parametrized by gradients (g_1..g_{n−1}) ∈ Har_{k−1}
//! with ∂_i g_j = ∂_j g_i, subject to the single scalar equation D_k φ = 0,
//! and φ = (1/k) Σ z_i g_i.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::ambient::compositions;
use crate::error::{Error, Result};
use crate::linalg::field::{Mersenne61, Prime62a, PrimeField};
use crate::linalg::modp::{kernel_of_columns, SparseCol};

struct Monos {
    list: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl Monos {
    fn new(degree: usize, vars: usize) -> Self {
        let list = compositions(degree, vars);
        let index = list.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Monos { list, index }
    }
}

/// ∂/∂z_i from degree-j monomials to degree-(j−1) ones: (target, factor).
fn derivative_map(from: &Monos, to: &Monos, i: usize) -> Vec<Option<(usize, u64)>> {
    from.list
        .iter()
        .map(|e| {
            (e[i] > 0).then(|| {
                let mut t = e.clone();
                t[i] -= 1;
                (to.index[&t], e[i] as u64)
            })
        })
        .collect()
}

fn dims_mod<F: PrimeField>(a: &[u64], maxdeg: usize) -> Vec<usize> {
    let n = a.len();
    let mut dims = vec![0usize; maxdeg + 1];
    dims[0] = 1;
    if n == 1 || maxdeg == 0 {
        return dims;
    }
    let q = n - 1;
    let inv_an = F::inv(a[n - 1]);
    let c: Vec<u64> = (0..q).map(|i| F::neg(F::mul(a[i], inv_an))).collect();
    // basis of Har_{k−1}, dense over monomials of degree k−1 in z
    let mut prev_monos = Monos::new(0, q);
    let mut prev: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=maxdeg {
        if prev.is_empty() {
            break;
        }
        let s = prev.len();
        let cur_monos = Monos::new(k, q);
        let low = (k >= 2).then(|| Monos::new(k - 2, q));
        let dmaps: Vec<Vec<Option<(usize, u64)>>> = match &low {
            Some(low) => (0..q).map(|i| derivative_map(&prev_monos, low, i)).collect(),
            None => Vec::new(),
        };
        let pairs: Vec<(usize, usize)> = match low {
            Some(_) => (0..q).flat_map(|i| ((i + 1)..q).map(move |j| (i, j))).collect(),
            None => Vec::new(),
        };
        let low_len = low.as_ref().map_or(0, |l| l.list.len());
        let nrows = pairs.len() * low_len + 1;
        let scalar_row = (nrows - 1) as u32;
        // h_t(c) and the coefficient of z_i^{k−1} in h_t
        let powers: Vec<Vec<u64>> = c.iter().map(|&ci| (0..k).map(|e| F::pow(ci, e as u64)).collect()).collect();
        let eval: Vec<u64> = prev
            .iter()
            .map(|h| {
                h.iter().zip(&prev_monos.list).fold(0, |acc, (&x, e)| {
                    if x == 0 {
                        return acc;
                    }
                    let mono = e.iter().enumerate().fold(1, |p, (i, &ei)| F::mul(p, powers[i][ei as usize]));
                    F::add(acc, F::mul(x, mono))
                })
            })
            .collect();
        let pure: Vec<usize> = (0..q)
            .map(|i| {
                let mut e = vec![0u8; q];
                e[i] = (k - 1) as u8;
                prev_monos.index[&e]
            })
            .collect();
        let column = |col: usize| -> SparseCol {
            let (i, t) = (col / s, col % s);
            let h = &prev[t];
            let mut acc: HashMap<u32, u64> = HashMap::new();
            for (p, &(pi, pj)) in pairs.iter().enumerate() {
                // row block p holds ∂_{pi} g_{pj} − ∂_{pj} g_{pi}
                let (dvar, sign) = if i == pj {
                    (pi, false)
                } else if i == pi {
                    (pj, true)
                } else {
                    continue;
                };
                for (src, &x) in h.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    if let Some((tgt, f)) = dmaps[dvar][src] {
                        let v = F::mul(x, F::reduce(f as u128));
                        let e = acc.entry((p * low_len + tgt) as u32).or_insert(0);
                        *e = if sign { F::sub(*e, v) } else { F::add(*e, v) };
                    }
                }
            }
            let scalar = F::add(F::mul(a[i], h[pure[i]]), F::mul(F::mul(a[n - 1], c[i]), eval[t]));
            acc.insert(scalar_row, scalar);
            let mut v: SparseCol = acc.into_iter().filter(|e| e.1 != 0).collect();
            v.sort_unstable_by_key(|e| e.0);
            v
        };
        let kernel = kernel_of_columns::<F>(nrows, q * s, 0x4a7 + k as u64, column);
        let inv_k = F::inv(k as u64);
        let next: Vec<Vec<u64>> = kernel
            .iter()
            .map(|x| {
                // φ = (1/k) Σ_i z_i g_i
                let mut phi = vec![0u64; cur_monos.list.len()];
                for i in 0..q {
                    for t in 0..s {
                        let coef = x[i * s + t];
                        if coef == 0 {
                            continue;
                        }
                        for (src, &hv) in prev[t].iter().enumerate() {
                            if hv == 0 {
                                continue;
                            }
                            let mut e = prev_monos.list[src].clone();
                            e[i] += 1;
                            let tgt = cur_monos.index[&e];
                            phi[tgt] = F::add(phi[tgt], F::mul(F::mul(coef, hv), inv_k));
                        }
                    }
                }
                phi
            })
            .collect();
        dims[k] = next.len();
        prev = next;
        prev_monos = cur_monos;
    }
    dims
}

fn reduce_all<F: PrimeField>(a: &[BigRational]) -> Option<Vec<u64>> {
    a.iter().map(F::from_rational).collect()
}

/// Whether some nonempty subset of the values sums to zero.
fn has_zero_subset_sum(v: &[u64], add: impl Fn(u64, u64) -> u64) -> bool {
    let n = v.len();
    (1u64..(1 << n)).any(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).fold(0, |s, i| add(s, v[i])) == 0)
}

/// Dimensions of the degree-k pieces of Har_{n,a}, k = 0..=maxdeg. The
/// linear algebra runs modulo a 61-bit prime at which a is still
/// nondegenerate; kernel dimensions mod p bound those over Q from above.
pub fn har_hilbert_numeric(n: usize, a: &[BigRational], maxdeg: usize) -> Result<Vec<usize>> {
    if n == 0 || a.len() != n {
        return Err(Error::SizeMismatch { expected: n.max(1), got: a.len() });
    }
    if n > 16 {
        return Err(Error::InvalidArgument("at most 16 variables".into()));
    }
    for mask in 1u32..(1 << n) {
        let s: BigRational = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| a[i].clone()).sum();
        if s.is_zero() {
            return Err(Error::InvalidArgument(format!("degenerate a: the subset {mask:#b} sums to zero")));
        }
    }
    if let Some(v) = reduce_all::<Mersenne61>(a).filter(|v| !has_zero_subset_sum(v, Mersenne61::add)) {
        return Ok(dims_mod::<Mersenne61>(&v, maxdeg));
    }
    if let Some(v) = reduce_all::<Prime62a>(a).filter(|v| !has_zero_subset_sum(v, Prime62a::add)) {
        return Ok(dims_mod::<Prime62a>(&v, maxdeg));
    }
    Err(Error::InvalidArgument("a is degenerate modulo every working prime".into()))
}

/// Coefficients of ∏_{i=2}^n (1−t^i)/(1−t)^{n−1} = ∏_{i=2}^n (1 + t + ⋯ + t^{i−1}).
pub fn har_hilbert_closed_form(n: usize) -> Vec<u64> {
    let mut p = vec![1u64];
    for i in 2..=n {
        let mut q = vec![0u64; p.len() + i - 1];
        for (j, &x) in p.iter().enumerate() {
            for t in 0..i {
                q[j + t] += x;
            }
        }
        p = q;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn small_cases() {
        assert_eq!(har_hilbert_numeric(1, &[q(1)], 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(har_hilbert_numeric(2, &[q(1), q(2)], 4).unwrap(), vec![1, 1, 0, 0, 0]);
        assert_eq!(har_hilbert_numeric(3, &[q(1), q(2), q(5)], 5).unwrap(), vec![1, 2, 2, 1, 0, 0]);
        assert_eq!(har_hilbert_closed_form(3), vec![1, 2, 2, 1]);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(har_hilbert_numeric(3, &[q(1), q(-1), q(4)], 2).is_err());
        assert!(har_hilbert_numeric(2, &[q(1)], 2).is_err());
    }

    #[test]
    fn four_variables() {
        let a = [q(3), q(-7), q(11), BigRational::new(2.into(), 9.into())];
        let want = har_hilbert_closed_form(4);
        let got = har_hilbert_numeric(4, &a, want.len()).unwrap();
        assert_eq!(&got[..want.len()], &want.iter().map(|&x| x as usize).collect::<Vec<_>>()[..]);
        assert_eq!(got[want.len()], 0);
    }
}
