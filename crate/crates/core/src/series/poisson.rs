// SPDX-License-Identifier: MIT

//! Graded S_k-characters of the height-k parts of the Poisson operad, as
//! a truncated power series in p_1, p_2, …, s and t:
//!
//! G = e^{−Σ p_i/i} (1 − t)^{−1} ∏_i (1 − q_i s^i)^{−g_i(s)/(i s^i)},
//! q_i = p_i t^i / (1 − s^i t^i), g_i(s) = Σ_{d|i} μ(d) s^{i−i/d}.
//!
//! This g_i comes from expanding Com ∘ Lie by plethysm. The variant with
//! s^{d−1} agrees with it when i is 1 or prime and is kept selectable; it
//! first goes wrong in weight 4 (an extra −s p_4/4).
//!
//! The coefficient of s^m t^n p^r / z_r is the trace of cycle type r on
//! the sum over |λ| = k of mult(ρ_λ[n], (P_n)_{2m}) · ρ_λ. Only λ with
//! λ[n] defined are meaningful.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::characters::{centralizer_order, character_multiplicity, mobius, ClassFunction};
use crate::combinat::{binomial, partitions_of, Partition};
use crate::error::Result;

/// (p exponents r_1..r_K, s degree, t degree).
type Key = (Vec<u8>, usize, usize);
type Series = BTreeMap<Key, BigRational>;

struct Trunc {
    s_order: usize,
    t_order: usize,
}

impl Trunc {
    fn weight(r: &[u8]) -> usize {
        r.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum()
    }

    fn keeps(&self, k: &Key) -> bool {
        k.1 <= self.s_order && k.2 <= self.t_order && Self::weight(&k.0) <= self.t_order
    }

    fn mul(&self, a: &Series, b: &Series) -> Series {
        let mut out = Series::new();
        for (ka, va) in a {
            for (kb, vb) in b {
                let r: Vec<u8> = ka.0.iter().zip(&kb.0).map(|(x, y)| x + y).collect();
                let k = (r, ka.1 + kb.1, ka.2 + kb.2);
                if self.keeps(&k) {
                    *out.entry(k).or_insert_with(BigRational::zero) += va * vb;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// exp(l) for l without constant term.
    fn exp(&self, l: &Series, vars: usize) -> Series {
        let one: Series = BTreeMap::from([((vec![0; vars], 0, 0), BigRational::one())]);
        let mut total = one.clone();
        let mut power = one;
        for j in 1.. {
            power = self.mul(&power, l);
            if power.is_empty() {
                break;
            }
            let inv = BigRational::new(BigInt::one(), BigInt::from(j));
            power.values_mut().for_each(|v| *v *= &inv);
            for (k, v) in &power {
                *total.entry(k.clone()).or_insert_with(BigRational::zero) += v;
            }
        }
        total.retain(|_, v| !v.is_zero());
        total
    }
}

#[derive(Clone, Debug)]
pub struct PoissonCharacterSeries {
    pub s_order: usize,
    pub t_order: usize,
    pub max_p: usize,
    coeffs: Series,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exponent of s attached to the divisor d of i in g_i(s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MobiusExponent {
    /// s^{i − i/d}.
    Plethystic,
    /// s^{d − 1}.
    DivisorMinusOne,
}

/// The product truncated at s^{s_order}, t^{t_order}, p-weight ≤ t_order,
/// using p_1..p_{max_p}.
pub fn poisson_character_product(s_order: usize, t_order: usize, max_p: usize) -> PoissonCharacterSeries {
    poisson_character_product_with(s_order, t_order, max_p, MobiusExponent::Plethystic)
}

pub fn poisson_character_product_with(s_order: usize, t_order: usize, max_p: usize, exponent: MobiusExponent) -> PoissonCharacterSeries {
    let vars = max_p.min(t_order).max(1);
    let tr = Trunc { s_order, t_order };
    let unit = |i: usize, e: u8| {
        let mut r = vec![0u8; vars];
        r[i - 1] = e;
        r
    };
    // log G + log(1 − t) = Σ_i [Σ_k g_i(s) s^{i(k−1)} q_i^k / (ik) − p_i/i]
    let mut log = Series::new();
    for i in 1..=vars {
        *log.entry((unit(i, 1), 0, 0)).or_insert_with(BigRational::zero) -= BigRational::new(BigInt::one(), BigInt::from(i));
        let g: Vec<(usize, i64)> = (1..=i)
            .filter(|d| i % d == 0)
            .map(|d| {
                let e = match exponent {
                    MobiusExponent::Plethystic => i - i / d,
                    MobiusExponent::DivisorMinusOne => d - 1,
                };
                (e, mobius(d as u64))
            })
            .filter(|e| e.1 != 0)
            .collect();
        for k in 1..=(t_order / i) {
            // (1 − s^i t^i)^{−k} = Σ_j C(k+j−1, j) (s t)^{ij}
            for j in 0.. {
                let t = i * k + i * j;
                if t > t_order {
                    break;
                }
                let c = binomial(k + j - 1, j) as i64;
                for &(e, mu) in &g {
                    let key = (unit(i, k as u8), e + i * (k - 1) + i * j, t);
                    if tr.keeps(&key) {
                        *log.entry(key).or_insert_with(BigRational::zero) += q(c * mu) / q((i * k) as i64);
                    }
                }
            }
        }
    }
    log.retain(|_, v| !v.is_zero());
    let mut g = tr.exp(&log, vars);
    let geometric: Series = (0..=t_order).map(|n| ((vec![0; vars], 0, n), BigRational::one())).collect();
    g = tr.mul(&g, &geometric);
    PoissonCharacterSeries { s_order, t_order, max_p: vars, coeffs: g }
}

impl PoissonCharacterSeries {
    fn exponents(&self, mu: &Partition) -> Option<Vec<u8>> {
        let mut r = vec![0u8; self.max_p];
        for &part in mu.parts() {
            *r.get_mut(part - 1)? += 1;
        }
        Some(r)
    }

    /// Character of S_k on the height-k part of (P_n)_{2m}.
    pub fn height_character(&self, m: usize, n: usize, k: usize) -> ClassFunction {
        ClassFunction::from_fn(k, |mu| {
            let c = self.exponents(mu).and_then(|r| self.coeffs.get(&(r, m, n))).cloned().unwrap_or_else(BigRational::zero);
            c * BigRational::from_integer(centralizer_order(mu).into())
        })
    }

    /// Multiplicities of ρ_λ[n] in (P_n)_{2m}, keyed by full partitions of
    /// n, over every λ with λ[n] defined.
    pub fn slice(&self, n: usize, m: usize) -> Result<BTreeMap<Partition, u64>> {
        let mut out = BTreeMap::new();
        for k in 0..=n {
            let chi = self.height_character(m, n, k);
            for lambda in partitions_of(k) {
                if n < k + lambda.first() {
                    continue;
                }
                let v = character_multiplicity(&chi, &lambda)?;
                if v > 0 {
                    out.insert(lambda.pad(n)?, v);
                }
            }
        }
        Ok(out)
    }

    pub fn slice_dim(&self, n: usize, m: usize) -> Result<u128> {
        Ok(self.slice(n, m)?.iter().map(|(l, &v)| v as u128 * l.num_syt().to_u128().unwrap_or(u128::MAX)).sum())
    }
}
