// SPDX-License-Identifier: MIT

//! Irreducible characters of symmetric groups, class functions and
//! inductions from cyclic subgroups.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::combinat::{count_syt_by_major_mod, factorial, partitions_of, Partition};
use crate::error::{Error, Result};

/// A conjugacy class of S_N, indexed by its cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    pub lengths: Partition,
    pub class_size: BigUint,
}

impl CycleType {
    pub fn new(lengths: Partition) -> Self {
        let class_size = factorial(lengths.size()) / centralizer_order(&lengths);
        CycleType { lengths, class_size }
    }

    pub fn degree(&self) -> usize {
        self.lengths.size()
    }
}

/// z_μ = ∏ k^{m_k} m_k!, the order of the centralizer.
pub fn centralizer_order(mu: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (k, &mk) in mu.multiplicities().iter().enumerate().skip(1) {
        z *= BigUint::from(k).pow(mk as u32) * factorial(mk);
    }
    z
}

/// All conjugacy classes of S_N.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    partitions_of(n).into_iter().map(CycleType::new).collect()
}

type Memo = RwLock<HashMap<(Partition, Partition), BigInt>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// χ_λ(μ) by the Murnaghan–Nakayama rule.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch { expected: lambda.size(), got: mu.size() });
    }
    Ok(mn(lambda, mu))
}

fn mn(lambda: &Partition, mu: &Partition) -> BigInt {
    if mu.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = memo().read().unwrap().get(&key) {
        return v.clone();
    }
    let r = mu.parts()[0];
    let rest = Partition::new(mu.parts()[1..].to_vec()).expect("tail of a partition");
    let len = lambda.len();
    // beta numbers, strictly decreasing
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let k = nb.len();
        let parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (k - 1 - i)).collect();
        let sub = Partition::new(parts).expect("beta set yields a partition");
        let v = mn(&sub, &rest);
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo().write().unwrap().insert(key, total.clone());
    total
}

/// A rational-valued class function on S_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: usize,
    pub values: BTreeMap<Partition, BigRational>,
}

impl ClassFunction {
    pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> BigRational) -> Self {
        let values = partitions_of(n).into_iter().map(|mu| {
            let v = f(&mu);
            (mu, v)
        });
        ClassFunction { n, values: values.collect() }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| BigRational::zero())
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |_| BigRational::one())
    }

    pub fn regular(n: usize) -> Self {
        let order = BigInt::from(factorial(n));
        Self::from_fn(n, |mu| if mu.parts().iter().all(|&p| p == 1) { BigRational::from(order.clone()) } else { BigRational::zero() })
    }

    pub fn irreducible(lambda: &Partition) -> Self {
        Self::from_fn(lambda.size(), |mu| BigRational::from(mn(lambda, mu)))
    }

    pub fn value(&self, mu: &Partition) -> &BigRational {
        &self.values[mu]
    }

    pub fn add_assign(&mut self, other: &ClassFunction) {
        assert_eq!(self.n, other.n);
        for (k, v) in self.values.iter_mut() {
            *v += &other.values[k];
        }
    }

    /// ⟨φ, ψ⟩ = (1/N!) Σ_μ |class μ| φ(μ) ψ(μ); characters here are real.
    pub fn inner(&self, other: &ClassFunction) -> Result<BigRational> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n, got: other.n });
        }
        let mut sum = BigRational::zero();
        for (mu, v) in &self.values {
            let z = BigInt::from(centralizer_order(mu));
            sum += v * &other.values[mu] / BigRational::from(z);
        }
        Ok(sum)
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (mu, v) in &self.values {
            map.serialize_entry(&mu.to_string(), &rational_string(v))?;
        }
        map.end()
    }
}

/// "p/q" with q = 1 included, as in the JSON exchange format.
pub fn rational_string(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// ⟨φ, χ_λ⟩.
pub fn multiplicity(phi: &ClassFunction, lambda: &Partition) -> Result<BigRational> {
    if phi.n != lambda.size() {
        return Err(Error::SizeMismatch { expected: phi.n, got: lambda.size() });
    }
    phi.inner(&ClassFunction::irreducible(lambda))
}

/// Like [`multiplicity`], but the result must be a nonnegative integer.
pub fn character_multiplicity(phi: &ClassFunction, lambda: &Partition) -> Result<u64> {
    let m = multiplicity(phi, lambda)?;
    if !m.is_integer() || m.is_negative() {
        return Err(Error::NonIntegerMultiplicity { lambda: lambda.to_string(), value: rational_string(&m) });
    }
    Ok(m.to_integer().to_u64().expect("multiplicity fits in u64"))
}

/// Full decomposition of a character into irreducibles (nonzero entries only).
pub fn decompose_character(phi: &ClassFunction) -> Result<BTreeMap<Partition, u64>> {
    let mut out = BTreeMap::new();
    for lambda in partitions_of(phi.n) {
        let m = character_multiplicity(phi, &lambda)?;
        if m > 0 {
            out.insert(lambda, m);
        }
    }
    Ok(out)
}

/// The Möbius function μ(n).
pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Ramanujan sum c_q(k) = Σ_{gcd(j,q)=1, 1≤j≤q} ζ_q^{jk}, an integer.
pub fn ramanujan_sum(q: u64, k: i64) -> i64 {
    let g = (k.unsigned_abs()).gcd(&q);
    let mut s = 0;
    for d in 1..=g {
        if g.is_multiple_of(d) {
            s += mobius(q / d) * d as i64;
        }
    }
    s
}

/// Character of Ind_{Z/N}^{S_N} χ_c where the generator is a full N-cycle and
/// χ_c(g) = exp(2πic/N). Values are integers.
pub fn cyclic_induced_character(n: usize, c: i64) -> ClassFunction {
    let nn = n as u64;
    ClassFunction::from_fn(n, |mu| {
        // g^j has gcd(j, N) cycles of length N/gcd(j, N)
        let parts = mu.parts();
        if parts.is_empty() {
            return BigRational::one();
        }
        let len = parts[0];
        if parts.iter().any(|&p| p != len) {
            return BigRational::zero();
        }
        let e = parts.len() as u64;
        let sum = ramanujan_sum(nn / e, c);
        let z = BigInt::from(centralizer_order(mu));
        BigRational::new(z * BigInt::from(sum), BigInt::from(nn))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KwMethod {
    Character,
    Tableau,
}

/// Multiplicity of ρ_{λ[n+1]} in Ind_{Z/(n+1)}^{S_{n+1}} χ_c.
pub fn cyclic_induced_multiplicity(n: usize, c: i64, lambda: &Partition, method: KwMethod) -> Result<u64> {
    let full = lambda.pad(n + 1)?;
    let big_n = n + 1;
    match method {
        KwMethod::Tableau => Ok(count_syt_by_major_mod(&full, big_n, c.rem_euclid(big_n as i64) as usize)),
        KwMethod::Character => {
            let mut sum = BigInt::zero();
            for e in 1..=big_n {
                if !big_n.is_multiple_of(e) {
                    continue;
                }
                let mu = Partition::new(vec![big_n / e; e]).expect("rectangular partition");
                let chi = mn(&full, &mu);
                sum += chi * BigInt::from(ramanujan_sum((big_n / e) as u64, c));
            }
            let (q, r) = sum.div_rem(&BigInt::from(big_n));
            if !r.is_zero() || q.is_negative() {
                return Err(Error::NonIntegerMultiplicity { lambda: full.to_string(), value: format!("{sum}/{big_n}") });
            }
            Ok(q.to_u64().expect("fits in u64"))
        }
    }
}

/// Partitions obtained by deleting one removable corner.
pub fn restrict_branch(lambda: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = lambda
        .corners()
        .into_iter()
        .map(|(i, _)| {
            let mut parts = lambda.parts().to_vec();
            parts[i] -= 1;
            Partition::new(parts).expect("corner removal keeps a partition")
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn basic_values() {
        assert_eq!(irreducible_character(&p("2,1"), &p("3")).unwrap(), BigInt::from(-1));
        assert_eq!(irreducible_character(&p("2,1"), &p("1,1,1")).unwrap(), BigInt::from(2));
        assert_eq!(irreducible_character(&p("1,1,1,1"), &p("2,1,1")).unwrap(), BigInt::from(-1));
        assert_eq!(irreducible_character(&p("5"), &p("3,2")).unwrap(), BigInt::one());
        assert!(irreducible_character(&p("2"), &p("3")).is_err());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=7 {
            let s: BigUint = cycle_types(n).iter().map(|c| c.class_size.clone()).sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn regular_and_trivial() {
        let reg = ClassFunction::regular(3);
        assert_eq!(multiplicity(&reg, &p("2,1")).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(multiplicity(&ClassFunction::trivial(3), &p("3")).unwrap(), BigRational::one());
    }

    #[test]
    fn induced_from_z5() {
        let d = decompose_character(&cyclic_induced_character(5, 0)).unwrap();
        let expected: BTreeMap<Partition, u64> =
            [("5", 1), ("1,1,1,1,1", 1), ("3,1,1", 2), ("3,2", 1), ("2,2,1", 1)].iter().map(|(s, m)| (p(s), *m)).collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn kw_examples() {
        for m in [KwMethod::Character, KwMethod::Tableau] {
            assert_eq!(cyclic_induced_multiplicity(4, 0, &p("1,1,1,1"), m).unwrap(), 1);
            assert_eq!(cyclic_induced_multiplicity(6, 0, &Partition::empty(), m).unwrap(), 1);
            assert_eq!(cyclic_induced_multiplicity(7, 0, &p("1"), m).unwrap(), 0);
        }
        assert!(cyclic_induced_multiplicity(2, 0, &p("2,1"), KwMethod::Tableau).is_err());
    }

    #[test]
    fn branching() {
        assert_eq!(restrict_branch(&p("2,1")), vec![p("1,1"), p("2")]);
        assert_eq!(restrict_branch(&p("4")), vec![p("3")]);
        assert_eq!(restrict_branch(&p("2,2")), vec![p("2,1")]);
    }

    #[test]
    fn ramanujan() {
        assert_eq!(ramanujan_sum(1, 5), 1);
        assert_eq!(ramanujan_sum(4, 1), 0);
        assert_eq!(ramanujan_sum(6, 1), 1);
        assert_eq!(ramanujan_sum(6, 0), 2);
    }
}
