// SPDX-License-Identifier: MIT

//! Prime fields of the form 2^K − C with K ≤ 62, reduced without division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait PrimeField: Copy + Clone + Send + Sync + std::fmt::Debug + Default + PartialEq + Eq + 'static {
    const P: u64;
    const K: u32;
    const C: u64;

    #[inline(always)]
    fn reduce(x: u128) -> u64 {
        let mask = (1u128 << Self::K) - 1;
        let x1 = (x & mask) + (x >> Self::K) * Self::C as u128;
        let mut r = ((x1 & mask) + (x1 >> Self::K) * Self::C as u128) as u64;
        while r >= Self::P {
            r -= Self::P;
        }
        r
    }

    #[inline(always)]
    fn add(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= Self::P {
            s - Self::P
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + Self::P - b
        }
    }

    #[inline(always)]
    fn neg(a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            Self::P - a
        }
    }

    #[inline(always)]
    fn mul(a: u64, b: u64) -> u64 {
        Self::reduce(a as u128 * b as u128)
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mul(r, a);
            }
            a = Self::mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        Self::pow(a, Self::P - 2)
    }

    fn from_i64(v: i64) -> u64 {
        let r = v.rem_euclid(Self::P as i64);
        r as u64
    }

    fn from_i128(v: i128) -> u64 {
        v.rem_euclid(Self::P as i128) as u64
    }

    fn from_bigint(v: &BigInt) -> u64 {
        let p = BigInt::from(Self::P);
        v.mod_floor(&p).to_u64().expect("reduced value fits")
    }

    /// Image of a rational whose denominator is prime to P.
    fn from_rational(v: &BigRational) -> Option<u64> {
        let den = Self::from_bigint(v.denom());
        if den == 0 {
            return None;
        }
        Some(Self::mul(Self::from_bigint(v.numer()), Self::inv(den)))
    }

    /// Symmetric lift to (−P/2, P/2].
    fn lift(a: u64) -> i64 {
        if a > Self::P / 2 {
            -((Self::P - a) as i64)
        } else {
            a as i64
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mersenne61;

impl PrimeField for Mersenne61 {
    const P: u64 = (1 << 61) - 1;
    const K: u32 = 61;
    const C: u64 = 1;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prime62a;

impl PrimeField for Prime62a {
    const P: u64 = (1 << 62) - 57;
    const K: u32 = 62;
    const C: u64 = 57;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prime62b;

impl PrimeField for Prime62b {
    const P: u64 = (1 << 62) - 87;
    const K: u32 = 62;
    const C: u64 = 87;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prime61b;

impl PrimeField for Prime61b {
    const P: u64 = (1 << 61) - 31;
    const K: u32 = 61;
    const C: u64 = 31;
}

/// Reconstructs a/b ≡ r (mod m) with |a|, b ≤ sqrt(m/2) by the half extended
/// Euclidean algorithm.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::from(0), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// CRT combination of residues r1 mod m1 and r2 mod m2 (coprime moduli).
pub fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    let g = m1.extended_gcd(m2);
    debug_assert!(num_traits::One::is_one(&g.gcd));
    let m = m1 * m2;
    let diff = (r2 - r1).mod_floor(m2);
    let k = (diff * g.x).mod_floor(m2);
    (r1 + k * m1).mod_floor(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field<F: PrimeField>() {
        let a = F::P - 3;
        let b = 123456789012345;
        let expect = ((a as u128 * b as u128) % F::P as u128) as u64;
        assert_eq!(F::mul(a, b), expect);
        assert_eq!(F::mul(F::inv(b), b), 1);
        assert_eq!(F::mul(F::P - 1, F::P - 1), 1);
        assert_eq!(F::lift(F::from_i64(-5)), -5);
    }

    #[test]
    fn fields() {
        check_field::<Mersenne61>();
        check_field::<Prime62a>();
        check_field::<Prime62b>();
        check_field::<Prime61b>();
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(Mersenne61::P);
        let v = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let r = BigInt::from(Mersenne61::from_rational(&v).unwrap());
        assert_eq!(rational_reconstruct(&r, &m), Some(v));
        let m2 = BigInt::from(Prime62a::P);
        let big = BigRational::new(BigInt::from(987654321987i64), BigInt::from(1234567891011i64));
        let r1 = BigInt::from(Mersenne61::from_rational(&big).unwrap());
        let r2 = BigInt::from(Prime62a::from_rational(&big).unwrap());
        let r = crt(&r1, &m, &r2, &m2);
        assert_eq!(rational_reconstruct(&r, &(&m * &m2)), Some(big));
    }
}
