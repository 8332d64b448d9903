// SPDX-License-Identifier: MIT

//! Echelon form modulo the 23-bit prime 2^23 − 15 in double precision.
//!
//! Residues are kept in a balanced range |x| ≤ p; a panel of up to 32 pivot
//! rows is applied with plain multiply-adds (|Σ| < 2^52, so every partial sum
//! is an exact integer) and reduced once per panel.

use super::field::PrimeField;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prime23;

impl PrimeField for Prime23 {
    const P: u64 = (1 << 23) - 15;
    const K: u32 = 23;
    const C: u64 = 15;
}

const P: f64 = Prime23::P as f64;
const PINV: f64 = 1.0 / P;
const ROUND: f64 = 6755399441055744.0; // 1.5 · 2^52
const PANEL: usize = 32;

#[inline(always)]
fn reduce(x: f64) -> f64 {
    let q = (x * PINV + ROUND) - ROUND;
    x - q * P
}

#[inline(always)]
fn to_u64(x: f64) -> u64 {
    let r = reduce(x) as i64;
    r.rem_euclid(Prime23::P as i64) as u64
}

#[inline(always)]
fn mulmod(a: f64, b: f64) -> f64 {
    reduce(a * b)
}

fn inv(a: f64) -> f64 {
    Prime23::inv(to_u64(a)) as f64
}

/// dst = reduce(dst − f·src).
#[inline(always)]
fn axpy_reduce_generic(dst: &mut [f64], src: &[f64], f: f64) {
    for (x, &p) in dst.iter_mut().zip(src) {
        *x = reduce(*x - f * p);
    }
}

/// Trailing update: for every row r of `tail` (width `cols`),
/// row_r −= Σ_k mult[r][k] · panel_k, followed by a reduction.
#[inline(always)]
fn trailing_generic(tail: &mut [f64], cols: usize, panel: &[f64], np: usize, mult: &[f64]) {
    const RB: usize = 4;
    const CB: usize = 8;
    let nrows = tail.len() / cols;
    let full_cols = cols - cols % CB;
    let mut r0 = 0;
    while r0 < nrows {
        let rb = RB.min(nrows - r0);
        let fs = &mult[r0 * np..(r0 + rb) * np];
        if fs.iter().all(|&f| f == 0.0) {
            r0 += rb;
            continue;
        }
        if rb == RB {
            let block = &mut tail[r0 * cols..(r0 + RB) * cols];
            let mut j = 0;
            while j < full_cols {
                let mut c = [[0.0f64; CB]; RB];
                for i in 0..RB {
                    c[i].copy_from_slice(&block[i * cols + j..i * cols + j + CB]);
                }
                for k in 0..np {
                    let pk: &[f64; CB] = panel[k * cols + j..k * cols + j + CB].try_into().unwrap();
                    for i in 0..RB {
                        let f = fs[i * np + k];
                        for t in 0..CB {
                            c[i][t] = (-f).mul_add(pk[t], c[i][t]);
                        }
                    }
                }
                for i in 0..RB {
                    for t in 0..CB {
                        block[i * cols + j + t] = reduce(c[i][t]);
                    }
                }
                j += CB;
            }
            for i in 0..RB {
                for jj in full_cols..cols {
                    let mut x = block[i * cols + jj];
                    for k in 0..np {
                        x -= fs[i * np + k] * panel[k * cols + jj];
                    }
                    block[i * cols + jj] = reduce(x);
                }
            }
        } else {
            for i in 0..rb {
                let row = &mut tail[(r0 + i) * cols..(r0 + i + 1) * cols];
                for k in 0..np {
                    let f = fs[i * np + k];
                    if f != 0.0 {
                        for (x, &p) in row.iter_mut().zip(&panel[k * cols..(k + 1) * cols]) {
                            *x -= f * p;
                        }
                    }
                }
                for x in row.iter_mut() {
                    *x = reduce(*x);
                }
            }
        }
        r0 += rb;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn trailing_avx2(tail: &mut [f64], cols: usize, panel: &[f64], np: usize, mult: &[f64]) {
    trailing_generic(tail, cols, panel, np, mult)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn axpy_reduce_avx2(dst: &mut [f64], src: &[f64], f: f64) {
    axpy_reduce_generic(dst, src, f)
}

fn has_avx2() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("fma")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

fn trailing(tail: &mut [f64], cols: usize, panel: &[f64], np: usize, mult: &[f64], avx: bool) {
    #[cfg(target_arch = "x86_64")]
    if avx {
        // SAFETY: avx2 and fma were detected at runtime.
        unsafe { trailing_avx2(tail, cols, panel, np, mult) };
        return;
    }
    let _ = avx;
    trailing_generic(tail, cols, panel, np, mult)
}

fn axpy_reduce(dst: &mut [f64], src: &[f64], f: f64, avx: bool) {
    #[cfg(target_arch = "x86_64")]
    if avx {
        // SAFETY: avx2 and fma were detected at runtime.
        unsafe { axpy_reduce_avx2(dst, src, f) };
        return;
    }
    let _ = avx;
    axpy_reduce_generic(dst, src, f)
}

fn row_pair(a: &mut [f64], cols: usize, target: usize, src: usize) -> (&mut [f64], &[f64]) {
    if target < src {
        let (x, y) = a.split_at_mut(src * cols);
        (&mut x[target * cols..(target + 1) * cols], &y[..cols])
    } else {
        let (x, y) = a.split_at_mut(target * cols);
        (&mut y[..cols], &x[src * cols..(src + 1) * cols])
    }
}

/// Rank and echelon structure of a `rows × cols` matrix of residues mod
/// 2^23 − 15, with the same layout contract as
/// [`row_echelon`](super::modp::row_echelon). Returns (pivot columns, matrix
/// with canonical residues in [0, p)).
pub fn row_echelon_p23(rows: usize, cols: usize, data: &[u64]) -> (Vec<usize>, Vec<u64>) {
    let mut a: Vec<f64> = data.iter().map(|&x| x as f64).collect();
    let mut rank = 0;
    let mut active = rows;
    let mut pivots = Vec::new();
    let swap = |a: &mut Vec<f64>, i: usize, j: usize| {
        if i != j {
            for c in 0..cols {
                a.swap(i * cols + c, j * cols + c);
            }
        }
    };
    let avx = has_avx2();
    while rank < active {
        let mut pcols: Vec<usize> = Vec::new();
        while pcols.len() < PANEL && rank + pcols.len() < active {
            let r = rank + pcols.len();
            for (k, &pc) in pcols.iter().enumerate() {
                let f = reduce(a[r * cols + pc]);
                if f != 0.0 {
                    let (t, p) = row_pair(&mut a, cols, r, rank + k);
                    axpy_reduce(t, p, f, avx);
                }
            }
            let Some(c) = (0..cols).find(|&c| reduce(a[r * cols + c]) != 0.0) else {
                active -= 1;
                swap(&mut a, r, active);
                continue;
            };
            let iv = inv(a[r * cols + c]);
            for x in &mut a[r * cols + c..(r + 1) * cols] {
                *x = mulmod(*x, iv);
            }
            for k in 0..pcols.len() {
                let t0 = (rank + k) * cols;
                let f = reduce(a[t0 + c]);
                if f != 0.0 {
                    let (t, p) = row_pair(&mut a, cols, rank + k, r);
                    axpy_reduce(&mut t[c..], &p[c..], f, avx);
                }
            }
            pcols.push(c);
        }
        let np = pcols.len();
        if np == 0 {
            break;
        }
        let start = rank + np;
        if start < active {
            let (head, tail) = a.split_at_mut(start * cols);
            let panel = &head[rank * cols..];
            let tail = &mut tail[..(active - start) * cols];
            let mult: Vec<f64> =
                (0..active - start).flat_map(|ri| pcols.iter().map(move |&c| (ri, c))).map(|(ri, c)| reduce(tail[ri * cols + c])).collect();
            trailing(tail, cols, panel, np, &mult, avx);
        }
        pivots.extend(pcols);
        rank = start;
    }
    (pivots, a.iter().map(|&x| to_u64(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::modp::{kernel_from_echelon, row_echelon, Dense};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn agrees_with_generic_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (rows, cols, rank) = (90, 70, 41);
        let basis: Vec<Vec<u64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(0..Prime23::P)).collect()).collect();
        let mut data = Vec::new();
        for _ in 0..rows {
            let mut v = vec![0u64; cols];
            for b in &basis {
                let c = rng.gen_range(0..Prime23::P);
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = Prime23::add(*x, Prime23::mul(c, y));
                }
            }
            data.extend(v);
        }
        let (piv, out) = row_echelon_p23(rows, cols, &data);
        assert_eq!(piv.len(), rank);
        let mut m = Dense { rows, cols, a: data.clone() };
        assert_eq!(row_echelon::<Prime23>(&mut m).len(), rank);
        let echelon = Dense { rows, cols, a: out };
        let ker = kernel_from_echelon::<Prime23>(&echelon, &piv);
        assert_eq!(ker.len(), cols - rank);
        for x in &ker {
            for r in 0..rows {
                let s = (0..cols).fold(0, |acc, j| Prime23::add(acc, Prime23::mul(data[r * cols + j], x[j])));
                assert_eq!(s, 0);
            }
        }
    }
}
