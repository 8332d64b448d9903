// SPDX-License-Identifier: MIT

//! Partitions, standard Young tableaux, hook lengths and major-index statistics.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers. The empty partition is legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros; any multiset of positive integers is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First part, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Hook lengths in row-major cell order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                hooks.push((row - j - 1) + (conj.0[j] - i - 1) + 1);
            }
        }
        hooks
    }

    /// λ[n] = (n − |λ|, λ₁, λ₂, …), defined when n ≥ |λ| + λ₁.
    pub fn pad(&self, n: usize) -> Result<Partition> {
        let needed = self.size() + self.first();
        if n < needed {
            return Err(Error::PaddingUndefined { lambda: self.to_string(), n, needed });
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(n - self.size());
        parts.extend_from_slice(&self.0);
        Ok(Partition(parts))
    }

    /// Removes the first row: the inverse of [`Partition::pad`].
    pub fn truncate(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// Number of standard Young tableaux, by the hook-length formula.
    pub fn num_syt(&self) -> BigUint {
        let mut num = factorial(self.size());
        let den: BigUint = self.hook_lengths().iter().map(|&h| BigUint::from(h)).product();
        num /= den;
        num
    }

    /// Removable corners as (row, column) pairs, top to bottom.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let p = &self.0;
        (0..p.len()).filter(|&i| i + 1 == p.len() || p[i + 1] < p[i]).map(|i| (i, p[i] - 1)).collect()
    }

    /// Σ (i−1)·μ_i over rows numbered from 1.
    pub fn b_statistic(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::InvalidPartition(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{s}: zero part")));
        }
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// All partitions of `n` in reverse lexicographic order, starting from (n).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by size then reverse lexicographic order.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// A standard Young tableau stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &e in row {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidArgument(format!("bad tableau entry {e}")));
                }
                seen[e] = true;
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument("rows must increase".into()));
            }
        }
        for i in 1..rows.len() {
            for j in 0..rows[i].len() {
                if rows[i][j] <= rows[i - 1][j] {
                    return Err(Error::InvalidArgument("columns must increase".into()));
                }
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    fn row_of(&self) -> Vec<usize> {
        let mut r = vec![0; self.shape.size() + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                r[e] = i;
            }
        }
        r
    }

    /// Entries i such that i+1 sits in a strictly lower row.
    pub fn descents(&self) -> Vec<usize> {
        let r = self.row_of();
        (1..self.shape.size()).filter(|&i| r[i + 1] > r[i]).collect()
    }

    pub fn major_index(&self) -> usize {
        self.descents().iter().sum()
    }
}

/// Depth-first walk over all SYT of `shape`, placing 1, 2, … in the topmost
/// admissible row first. The callback receives the row of every entry.
fn walk_syt(shape: &Partition, visit: &mut dyn FnMut(&[usize])) {
    fn rec(shape: &[usize], filled: &mut [usize], rows: &mut Vec<usize>, total: usize, visit: &mut dyn FnMut(&[usize])) {
        if rows.len() == total {
            visit(rows);
            return;
        }
        for i in 0..shape.len() {
            if filled[i] < shape[i] && (i == 0 || filled[i - 1] > filled[i]) {
                filled[i] += 1;
                rows.push(i);
                rec(shape, filled, rows, total, visit);
                rows.pop();
                filled[i] -= 1;
            }
        }
    }
    let mut filled = vec![0; shape.len()];
    rec(shape.parts(), &mut filled, &mut Vec::new(), shape.size(), visit);
}

/// All standard Young tableaux of the given shape, in lexicographic order of
/// entry placement.
pub fn enumerate_syt(shape: &Partition) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    walk_syt(shape, &mut |rows| {
        let mut t: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
        for (k, &r) in rows.iter().enumerate() {
            t[r].push(k + 1);
        }
        out.push(StandardTableau { shape: shape.clone(), rows: t });
    });
    out
}

/// Number of SYT of shape `shape` whose major index is ≡ `residue` mod `modulus`.
pub fn count_syt_by_major_mod(shape: &Partition, modulus: usize, residue: usize) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    let target = residue % modulus;
    let mut count = 0u64;
    walk_syt(shape, &mut |rows| {
        let maj: usize = (1..rows.len()).filter(|&i| rows[i] > rows[i - 1]).sum();
        if maj % modulus == target {
            count += 1;
        }
    });
    count
}

/// Σ_T q^maj(T) by enumeration, coefficients up to q^truncation.
pub fn syt_q_series_enumerated(shape: &Partition, truncation: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); truncation + 1];
    walk_syt(shape, &mut |rows| {
        let maj: usize = (1..rows.len()).filter(|&i| rows[i] > rows[i - 1]).sum();
        if maj <= truncation {
            coeffs[maj] += 1;
        }
    });
    coeffs
}

/// Σ_T q^maj(T) from the q-hook formula q^b(μ) ∏_{k≤N}(1−q^k) / ∏_cells(1−q^h),
/// coefficients up to q^truncation.
pub fn syt_q_series(shape: &Partition, truncation: usize) -> Vec<BigInt> {
    let n = shape.size();
    let top = n * n.saturating_sub(1) / 2 + 1;
    let mut poly = vec![BigInt::zero(); top + 1];
    poly[0] = BigInt::one();
    for k in 1..=n {
        for i in (k..poly.len()).rev() {
            let v = poly[i - k].clone();
            poly[i] -= v;
        }
    }
    for h in shape.hook_lengths() {
        for i in h..poly.len() {
            let v = poly[i - h].clone();
            poly[i] += v;
        }
    }
    let shift = shape.b_statistic();
    (0..=truncation).map(|d| if d >= shift && d - shift < poly.len() { poly[d - shift].clone() } else { BigInt::zero() }).collect()
}

/// A permutation of {0, …, n−1} stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The transposition of `a` and `b` (0-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Permutation(v)
    }

    /// The cycle 0 → 1 → … → n−1 → 0.
    pub fn long_cycle(n: usize) -> Self {
        Permutation((0..n).map(|i| (i + 1) % n).collect())
    }

    /// A permutation of cycle type `mu`, with cycles on consecutive points.
    pub fn of_cycle_type(mu: &Partition) -> Self {
        let mut v = Vec::with_capacity(mu.size());
        let mut start = 0;
        for &len in mu.parts() {
            for k in 0..len {
                v.push(start + (k + 1) % len);
            }
            start += len;
        }
        Permutation(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Permutation(v)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        Partition::from_unsorted(lens)
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        if (self.0.len() - ct.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of n points in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hooks_of_small_shapes() {
        let mut h = p("2,2").hook_lengths();
        h.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(h, vec![3, 2, 2, 1]);
        assert_eq!(p("1").hook_lengths(), vec![1]);
        assert_eq!(p("3,2").num_syt(), BigUint::from(5u32));
        assert_eq!(enumerate_syt(&p("3,2")).len(), 5);
    }

    #[test]
    fn padding() {
        assert_eq!(p("2,1").pad(7).unwrap(), p("4,2,1"));
        assert_eq!(Partition::empty().pad(3).unwrap(), p("3"));
        assert!(matches!(p("2,2").pad(5), Err(Error::PaddingUndefined { .. })));
        assert_eq!(p("2,2").pad(6).unwrap(), p("2,2,2"));
    }

    #[test]
    fn serialization() {
        assert_eq!(Partition::empty().to_string(), "-");
        assert_eq!(p("-"), Partition::empty());
        assert_eq!(p("(3,2,1)").to_string(), "3,2,1");
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn major_index_examples() {
        let col = StandardTableau::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(col.major_index(), 3);
        let row = StandardTableau::new(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(row.major_index(), 0);
        let mut majs: Vec<_> = enumerate_syt(&p("2,1")).iter().map(|t| t.major_index()).collect();
        majs.sort_unstable();
        assert_eq!(majs, vec![1, 2]);
    }

    #[test]
    fn q_series_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(syt_q_series(&p("2,1"), 3), b(&[0, 1, 1, 0]));
        assert_eq!(syt_q_series(&p("4"), 2), b(&[1, 0, 0]));
        assert_eq!(syt_q_series(&p("2,2"), 4), b(&[0, 0, 1, 0, 1]));
        assert_eq!(syt_q_series_enumerated(&p("2,2"), 4), b(&[0, 0, 1, 0, 1]));
    }

    #[test]
    fn count_by_major() {
        assert_eq!(count_syt_by_major_mod(&p("6"), 6, 0), 1);
        assert_eq!(count_syt_by_major_mod(&p("1,1,1,1,1"), 5, 0), 1);
        let total: u64 = (0..5).map(|r| count_syt_by_major_mod(&p("1,1,1,1,1"), 5, r)).sum();
        assert_eq!(total, 1);
    }

    #[test]
    fn permutations() {
        assert_eq!(Permutation::all(4).len(), 24);
        let s = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(s.cycle_type(), p("3,2"));
        assert_eq!(s.sign(), -1);
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(5));
        assert_eq!(Permutation::of_cycle_type(&p("3,2")).cycle_type(), p("3,2"));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
