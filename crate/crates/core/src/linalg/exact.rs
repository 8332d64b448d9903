// SPDX-License-Identifier: MIT

//! Exact reduced echelon bases: reconstruction from images modulo several
//! primes, and a fraction-free (Bareiss) elimination used as an oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{crt, rational_reconstruct, PrimeField};
use crate::error::{Error, Result};

/// One row of an exact reduced echelon basis, scaled to integers: the true
/// row is `entries / den`, and the entry at `pivot` equals `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRow {
    pub pivot: u32,
    pub den: i128,
    /// Nonzero entries sorted by column.
    pub entries: Vec<(u32, i128)>,
}

impl IntRow {
    pub fn value(&self, col: u32) -> BigRational {
        match self.entries.binary_search_by_key(&col, |e| e.0) {
            Ok(i) => BigRational::new(self.entries[i].1.into(), self.den.into()),
            Err(_) => BigRational::zero(),
        }
    }

    /// Image modulo F as a dense vector of length `cols`, or None when the
    /// denominator vanishes mod F.
    pub fn reduce_mod<F: PrimeField>(&self, cols: usize) -> Option<Vec<u64>> {
        let den = F::from_i128(self.den);
        if den == 0 {
            return None;
        }
        let inv = F::inv(den);
        let mut v = vec![0u64; cols];
        for &(c, x) in &self.entries {
            v[c as usize] = F::mul(F::from_i128(x), inv);
        }
        Some(v)
    }
}

/// A reduced echelon basis modulo one prime.
#[derive(Clone, Debug)]
pub struct ModImage {
    pub modulus: u64,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u64>>,
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m < 2^64
    (a * b) % m
}

fn powmod(mut a: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// a/b with |a|, b ≤ sqrt(m/2) and a ≡ r·b (mod m), for m < 2^126.
fn reconstruct_u128(r: u128, m: u128) -> Option<(i128, i128)> {
    let bound = isqrt(m / 2);
    let (mut r0, mut r1) = (m, r % m);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        let r2 = r0 - q * r1;
        let t2 = t0.checked_sub((q as i128).checked_mul(t1)?)?;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1 == 0 || t1.unsigned_abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-(r1 as i128), -t1) } else { (r1 as i128, t1) };
    let g = gcd_i128(num, den);
    Some((num / g, den / g))
}

fn isqrt(x: u128) -> u128 {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1) as i128
}

/// Rational with the given residues modulo pairwise coprime primes.
fn rational_from_residues(res: &[u64], moduli: &[u64]) -> Option<(i128, i128)> {
    if res.iter().all(|&r| r == 0) {
        return Some((0, 1));
    }
    if moduli.len() == 2 {
        let (p1, p2) = (moduli[0] as u128, moduli[1] as u128);
        let (r1, r2) = (res[0] as u128, res[1] as u128);
        let inv = powmod(p1 % p2, p2 - 2, p2);
        let k = mulmod((r2 + p2 - r1 % p2) % p2, inv, p2);
        return reconstruct_u128(r1 + p1 * k, p1 * p2);
    }
    let mut r = BigInt::from(res[0]);
    let mut m = BigInt::from(moduli[0]);
    for (&ri, &mi) in res.iter().zip(moduli).skip(1) {
        let mi = BigInt::from(mi);
        r = crt(&r, &m, &BigInt::from(ri), &mi);
        m *= mi;
    }
    let q = rational_reconstruct(&r, &m)?;
    Some((q.numer().to_i128()?, q.denom().to_i128()?))
}

/// Combines reduced echelon images with identical pivots into exact rows.
pub fn reconstruct(images: &[ModImage]) -> Result<Vec<IntRow>> {
    let first = images.first().ok_or_else(|| Error::Reconstruction("no images".into()))?;
    if images.iter().any(|im| im.pivots != first.pivots) {
        return Err(Error::Reconstruction("pivot patterns differ between primes".into()));
    }
    let moduli: Vec<u64> = images.iter().map(|im| im.modulus).collect();
    let cols = first.rows.first().map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(first.rows.len());
    let mut res = vec![0u64; images.len()];
    for (i, &p) in first.pivots.iter().enumerate() {
        let mut fracs: Vec<(u32, i128, i128)> = Vec::new();
        for c in 0..cols {
            for (k, im) in images.iter().enumerate() {
                res[k] = im.rows[i][c];
            }
            if res.iter().all(|&r| r == 0) {
                continue;
            }
            let (num, den) = rational_from_residues(&res, &moduli)
                .ok_or_else(|| Error::Reconstruction(format!("entry ({i}, {c}) exceeds the modulus bound")))?;
            fracs.push((c as u32, num, den));
        }
        let mut l: i128 = 1;
        for &(_, _, den) in &fracs {
            l = (l / gcd_i128(l, den)).checked_mul(den).ok_or_else(|| Error::Reconstruction("row denominator overflows".into()))?;
        }
        let entries = fracs
            .iter()
            .map(|&(c, num, den)| num.checked_mul(l / den).map(|v| (c, v)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Reconstruction("row numerator overflows".into()))?;
        out.push(IntRow { pivot: p as u32, den: l, entries });
    }
    Ok(out)
}

/// Reduced row echelon form over Q by fraction-free elimination. Returns
/// (pivot columns, rows).
pub fn bareiss_rref(rows: &[Vec<BigInt>]) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(s) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, s);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]).div_floor(&prev);
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let mut q: Vec<Vec<BigRational>> =
        a[..r].iter().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    for i in (0..r).rev() {
        let p = pivots[i];
        let inv = q[i][p].recip();
        for x in q[i].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..i {
            let f = q[k][p].clone();
            if !f.is_zero() {
                for j in 0..ncols {
                    let v = &q[i][j] * &f;
                    q[k][j] -= v;
                }
            }
        }
    }
    (pivots, q)
}

/// Least common multiple of the denominators, as a check helper.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{Mersenne61, Prime62a, Prime62b};
    use crate::linalg::modp::{reduced_echelon, Dense};

    fn image<F: PrimeField>(rows: &[Vec<i64>]) -> ModImage {
        let cols = rows[0].len();
        let dense: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect();
        let r = reduced_echelon::<F>(Dense::from_rows(cols, &dense));
        ModImage { modulus: F::P, pivots: r.pivots, rows: r.rows }
    }

    #[test]
    fn reconstruction_matches_bareiss() {
        let rows: Vec<Vec<i64>> =
            vec![vec![3, 1, 4, 1, 5, 9, 2], vec![2, 7, 1, 8, 2, 8, 1], vec![5, 8, 5, 9, 7, 17, 3], vec![1, 0, -3, 7, 0, 2, -11]];
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let (piv, q) = bareiss_rref(&big);
        assert_eq!(piv.len(), 3);
        for images in [
            vec![image::<Mersenne61>(&rows), image::<Prime62a>(&rows)],
            vec![image::<Mersenne61>(&rows), image::<Prime62a>(&rows), image::<Prime62b>(&rows)],
        ] {
            let exact = reconstruct(&images).unwrap();
            assert_eq!(exact.len(), 3);
            for (row, qrow) in exact.iter().zip(&q) {
                for (c, v) in qrow.iter().enumerate() {
                    assert_eq!(&row.value(c as u32), v);
                }
            }
        }
    }

    #[test]
    fn large_entries_need_two_primes() {
        let rows = vec![vec![1i64, 123456789012345], vec![0, 0]];
        assert!(reconstruct(&[image::<Mersenne61>(&rows)]).is_err());
        let b = reconstruct(&[image::<Mersenne61>(&rows), image::<Prime62a>(&rows)]).unwrap();
        assert_eq!(b[0].entries, vec![(0, 1), (1, 123456789012345)]);
    }
}
