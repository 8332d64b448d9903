// SPDX-License-Identifier: MIT

//! S_n and S_{n+1} characters of computed bases.
//!
//! For a basis in reduced echelon form, σ·row_i = Σ_j a_ji row_j has
//! coefficient a_ii at the pivot of row i, so the trace is Σ_i (σ·row_i) at
//! pivot_i. S_{n+1} acts by [`snp1_action`](crate::polydiff::snp1_action);
//! only the coefficients needed are expanded.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SubspaceBasis;
use crate::characters::{decompose_character, ClassFunction};
use crate::combinat::{partitions_of, Partition, Permutation};
use crate::error::{Error, Result};
use crate::linalg::field::{Mersenne61, PrimeField};
use crate::polydiff::{Monomial, MAXV};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    /// Permutations of the n slots.
    Sn,
    /// The extension to n+1 points by the translation-invariance model.
    Snp1,
}

impl Group {
    pub fn degree(&self, n: usize) -> usize {
        match self {
            Group::Sn => n,
            Group::Snp1 => n + 1,
        }
    }
}

/// Characters of the graded pieces, keyed by half-order m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    pub group: Group,
    /// Degree of the symmetric group.
    pub degree: usize,
    pub values: BTreeMap<usize, ClassFunction>,
}

impl GradedCharacter {
    pub fn new(group: Group, degree: usize) -> Self {
        GradedCharacter { group, degree, values: BTreeMap::new() }
    }

    /// Adds the character of the piece of half-order m.
    pub fn insert(&mut self, m: usize, chi: ClassFunction) -> Result<()> {
        if chi.n != self.degree {
            return Err(Error::SizeMismatch { expected: self.degree, got: chi.n });
        }
        match self.values.get_mut(&m) {
            Some(v) => v.add_assign(&chi),
            None => {
                self.values.insert(m, chi);
            }
        }
        Ok(())
    }

    /// Extends by another graded character of the same group.
    pub fn merge(&mut self, other: &GradedCharacter) -> Result<()> {
        if other.group != self.group {
            return Err(Error::InvalidArgument("cannot merge characters of different groups".into()));
        }
        for (&m, chi) in &other.values {
            self.insert(m, chi.clone())?;
        }
        Ok(())
    }

    /// The ungraded character Σ_m χ_m.
    pub fn total(&self) -> ClassFunction {
        let mut t = ClassFunction::zero(self.degree);
        for chi in self.values.values() {
            t.add_assign(chi);
        }
        t
    }

    pub fn trace(&self, m: usize, mu: &Partition) -> Option<&BigRational> {
        self.values.get(&m).and_then(|c| c.values.get(mu))
    }
}

fn factorials() -> [i128; 34] {
    let mut f = [1i128; 34];
    for i in 1..34 {
        f[i] = f[i - 1] * i as i128;
    }
    f
}

/// How σ moves the variables of a monomial: slot s goes to σ(s) unless
/// σ(s) = n, in which case its exponents are substituted by −Σ_i of the
/// corresponding variables.
struct Mover {
    n: usize,
    w: usize,
    sigma: Permutation,
    fact: [i128; 34],
}

impl Mover {
    fn new(sigma: &Permutation, n: usize, d: usize) -> Self {
        Mover { n, w: 2 * d, sigma: sigma.clone(), fact: factorials() }
    }

    /// (base exponents, slot whose variables are substituted).
    fn split(&self, u: &Monomial) -> ([u8; MAXV], Option<usize>) {
        let e = u.exponents();
        let mut base = [0u8; MAXV];
        let mut extra = None;
        for s in 0..self.n {
            let t = self.sigma.apply(s);
            if t == self.n {
                extra = Some(s);
            } else {
                base[t * self.w..(t + 1) * self.w].copy_from_slice(&e[s * self.w..(s + 1) * self.w]);
            }
        }
        (base, extra)
    }

    /// Coefficient of the monomial `target` in σ·u.
    fn coefficient(&self, u: &Monomial, target: &Monomial) -> i128 {
        let (base, extra) = self.split(u);
        let t = target.exponents();
        let Some(s) = extra else {
            return (base[..self.n * self.w] == t[..self.n * self.w]) as i128;
        };
        let e = u.exponents();
        let mut coef: i128 = 1;
        for c in 0..self.w {
            let total = e[s * self.w + c] as usize;
            let mut used = 0usize;
            let mut denom: i128 = 1;
            for i in 0..self.n {
                let (ti, bi) = (t[i * self.w + c], base[i * self.w + c]);
                if ti < bi {
                    return 0;
                }
                let k = (ti - bi) as usize;
                used += k;
                denom *= self.fact[k];
            }
            if used != total {
                return 0;
            }
            coef *= self.fact[total] / denom;
            if total % 2 == 1 {
                coef = -coef;
            }
        }
        coef
    }

    /// The point y with (σ·P)(z) = P(y).
    fn pull_back<F: PrimeField>(&self, z: &[u64]) -> Vec<u64> {
        let w = self.w;
        let mut y = vec![0u64; self.n * w];
        for s in 0..self.n {
            let t = self.sigma.apply(s);
            for c in 0..w {
                y[s * w + c] = if t == self.n { F::neg((0..self.n).fold(0, |acc, i| F::add(acc, z[i * w + c]))) } else { z[t * w + c] };
            }
        }
        y
    }
}

/// Trace of σ on the row space, exactly.
fn trace(b: &SubspaceBasis, sigma: &Permutation) -> BigRational {
    let (n, d) = (b.key.n, b.key.d);
    let mover = Mover::new(sigma, n, d);
    let plain = sigma.degree() == n || sigma.apply(n) == n;
    let back = Mover::new(&sigma.inverse(), n, d);
    let mut total = BigRational::zero();
    for r in &b.rows {
        let target = b.columns[r.pivot as usize];
        let num: BigInt = if plain {
            // σ·u = target exactly when u = σ^{-1}·target
            let (pre, _) = back.split(&target);
            let pre = Monomial::from_exponents(&pre[..2 * n * d]);
            let v = b.column_of(&pre).and_then(|c| r.entries.binary_search_by_key(&(c as u32), |e| e.0).ok());
            v.map_or(BigInt::zero(), |i| BigInt::from(r.entries[i].1))
        } else {
            let mut acc: i128 = 0;
            let mut big = BigInt::zero();
            for &(c, v) in &r.entries {
                let k = mover.coefficient(&b.columns[c as usize], &target);
                if k == 0 {
                    continue;
                }
                match v.checked_mul(k).and_then(|x| acc.checked_add(x)) {
                    Some(x) => acc = x,
                    None => {
                        big += BigInt::from(v) * BigInt::from(k);
                    }
                }
            }
            big + BigInt::from(acc)
        };
        total += BigRational::new(num, BigInt::from(r.den));
    }
    total
}

/// Rows of b modulo M61, dense over b.columns.
fn rows_mod(b: &SubspaceBasis) -> Vec<Vec<u64>> {
    b.rows.iter().map(|r| r.reduce_mod::<Mersenne61>(b.columns.len()).expect("denominator invertible mod 2^61 − 1")).collect()
}

fn evaluate<F: PrimeField>(cols: &[Monomial], v: &[u64], point: &[u64]) -> u64 {
    let mut s = 0u64;
    for (m, &x) in cols.iter().zip(v) {
        if x == 0 {
            continue;
        }
        let mut t = x;
        for (i, &e) in m.exponents()[..point.len()].iter().enumerate() {
            if e > 0 {
                t = F::mul(t, F::pow(point[i], e as u64));
            }
        }
        s = F::add(s, t);
    }
    s
}

/// Probabilistic check that every simple transposition of S_{n+1} maps a
/// random element of the row space back into it: the candidate coordinates
/// are read off at the pivots and the identity is tested at random points
/// modulo 2^61 − 1 (error probability below 2^-50 per test).
pub fn check_snp1_stability(b: &SubspaceBasis, seed: u64) -> Result<()> {
    type F = Mersenne61;
    let (n, d) = (b.key.n, b.key.d);
    if b.dim() == 0 {
        return Ok(());
    }
    let rows = rows_mod(b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = 2 * n * d;
    for i in 0..n {
        let sigma = Permutation::transposition(n + 1, i, i + 1);
        let mover = Mover::new(&sigma, n, d);
        let coeffs: Vec<u64> = (0..rows.len()).map(|_| rng.gen_range(1..F::P)).collect();
        let mut v = vec![0u64; b.columns.len()];
        for (c, row) in coeffs.iter().zip(&rows) {
            for (x, &y) in v.iter_mut().zip(row) {
                *x = F::add(*x, F::mul(*c, y));
            }
        }
        // coordinates of σ·v in the basis, if it lies in the span
        let coords: Vec<u64> = b
            .rows
            .iter()
            .map(|r| {
                let target = b.columns[r.pivot as usize];
                v.iter().zip(&b.columns).fold(0u64, |acc, (&x, u)| {
                    if x == 0 {
                        return acc;
                    }
                    let k = mover.coefficient(u, &target);
                    if k == 0 {
                        acc
                    } else {
                        F::add(acc, F::mul(x, F::from_i128(k)))
                    }
                })
            })
            .collect();
        let mut w = vec![0u64; b.columns.len()];
        for (c, row) in coords.iter().zip(&rows) {
            for (x, &y) in w.iter_mut().zip(row) {
                *x = F::add(*x, F::mul(*c, y));
            }
        }
        for _ in 0..2 {
            let z: Vec<u64> = (0..nv).map(|_| rng.gen_range(0..F::P)).collect();
            let lhs = evaluate::<F>(&b.columns, &v, &mover.pull_back::<F>(&z));
            let rhs = evaluate::<F>(&b.columns, &w, &z);
            if lhs != rhs {
                return Err(Error::UnstableAction(format!("{} under the transposition ({} {})", b.key, i + 1, i + 2)));
            }
        }
    }
    Ok(())
}

/// Per-class traces of the S_n or S_{n+1} action on one graded piece. For
/// S_{n+1} the stability of the row space is checked first.
pub fn graded_character(b: &SubspaceBasis, group: Group) -> Result<GradedCharacter> {
    let n = b.key.n;
    let degree = group.degree(n);
    if group == Group::Snp1 {
        check_snp1_stability(b, 0x57ab ^ b.key.m as u64)?;
    }
    let mut values = BTreeMap::new();
    for mu in partitions_of(degree) {
        let sigma = Permutation::of_cycle_type(&mu);
        let t = if b.dim() == 0 { BigRational::zero() } else { trace(b, &sigma) };
        values.insert(mu, t);
    }
    let mut g = GradedCharacter::new(group, degree);
    g.insert(b.key.m, ClassFunction { n: degree, values })?;
    Ok(g)
}

/// Multiplicities of the irreducible constituents. Fails if a multiplicity
/// is not a nonnegative integer or if the dimensions do not add up.
pub fn decompose(b: &SubspaceBasis, group: Group) -> Result<BTreeMap<Partition, u64>> {
    let chi = graded_character(b, group)?.total();
    let dec = decompose_character(&chi)?;
    let total: u128 = dec.iter().map(|(l, &k)| k as u128 * l.num_syt().to_u128().unwrap_or(u128::MAX)).sum();
    if total != b.dim() as u128 {
        return Err(Error::InvalidArgument(format!("constituent dimensions sum to {total}, expected {}", b.dim())));
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polydiff::snp1_action;
    use crate::spaces::{inv_space, Method};

    #[test]
    fn coefficients_match_full_action() {
        let b = inv_space(3, 1, 2, Method::Graph).unwrap();
        for sigma in Permutation::all(4) {
            let mover = Mover::new(&sigma, 3, 1);
            for i in 0..b.dim() {
                let p = b.row_poly(i);
                let image = snp1_action(&sigma, &p).unwrap();
                for (target, c) in image.terms() {
                    let mut s = BigRational::zero();
                    for (u, x) in p.terms() {
                        s += x * BigRational::from_integer(mover.coefficient(u, target).into());
                    }
                    assert_eq!(&s, c);
                }
            }
        }
    }

    #[test]
    fn order_two_is_wedge_two() {
        for n in 3..=5 {
            let b = inv_space(n, 1, 1, Method::Graph).unwrap();
            let dec = decompose(&b, Group::Snp1).unwrap();
            let wedge2 = Partition::new(vec![n - 1, 1, 1]).unwrap();
            assert_eq!(dec, BTreeMap::from([(wedge2, 1)]));
        }
    }

    #[test]
    fn order_zero_is_trivial() {
        let b = inv_space(4, 1, 0, Method::Graph).unwrap();
        let chi = graded_character(&b, Group::Snp1).unwrap();
        assert!(chi.values[&0].values.values().all(|v| *v == BigRational::from_integer(1.into())));
    }
}
