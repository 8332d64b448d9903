// SPDX-License-Identifier: MIT

//! Monomial bases of the graded pieces of Sym(V^n) and sparse integer
//! vectors over them.

use std::collections::HashMap;

use crate::polydiff::{Coeff, Monomial, Poly};

/// An ordered list of monomials (largest first) with a reverse index.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub n: usize,
    pub d: usize,
    pub cols: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

/// Weak compositions of `total` into `parts` nonnegative parts, in
/// lexicographically decreasing order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<u8>> {
    fn rec(total: usize, parts: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if parts == 1 {
            cur.push(total as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=total).rev() {
            cur.push(first as u8);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

impl Ambient {
    pub fn from_monomials(n: usize, d: usize, monos: impl IntoIterator<Item = Monomial>) -> Self {
        let mut cols: Vec<Monomial> = monos.into_iter().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        cols.dedup();
        let index = cols.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        Ambient { n, d, cols, index }
    }

    /// All monomials of degree 2m whose ξ[·,k]-degree equals their
    /// η[·,k]-degree for every k: the weight-zero part for the maximal torus
    /// of Sp(V), which contains every invariant of order 2m.
    pub fn weight_zero(n: usize, d: usize, m: usize) -> Self {
        let w = 2 * d;
        let mut monos = Vec::new();
        for split in compositions(m, d) {
            // per coordinate k: (ξ-exponent vectors, η-exponent vectors)
            let per_k: Vec<Vec<Vec<u8>>> = split.iter().map(|&a| compositions(a as usize, n)).collect();
            let mut stack: Vec<[u8; crate::polydiff::MAXV]> = vec![[0; crate::polydiff::MAXV]];
            for (k, choices) in per_k.iter().enumerate() {
                for kind in 0..2 {
                    let mut next = Vec::with_capacity(stack.len() * choices.len());
                    for base in &stack {
                        for c in choices {
                            let mut e = *base;
                            for (slot, &x) in c.iter().enumerate() {
                                e[slot * w + kind * d + k] = x;
                            }
                            next.push(e);
                        }
                    }
                    stack = next;
                }
            }
            monos.extend(stack.iter().map(|e| Monomial::from_exponents(&e[..n * w])));
        }
        Self::from_monomials(n, d, monos)
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    #[inline]
    pub fn get(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Sparse vector of an integer polynomial; panics on monomials outside
    /// the ambient.
    pub fn vector(&self, p: &Poly<i128>) -> SVec {
        let mut v: SVec =
            p.terms().map(|(m, c)| (self.get(m).unwrap_or_else(|| panic!("monomial {m:?} outside the ambient")), *c)).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }
}

/// Sparse integer vector: (index, value) pairs sorted by index.
pub type SVec = Vec<(u32, i128)>;

/// Assigns consecutive indices to monomials as they are first seen.
#[derive(Default)]
pub struct Indexer {
    index: HashMap<Monomial, u32>,
}

impl Indexer {
    pub fn id(&mut self, m: Monomial) -> u32 {
        let next = self.index.len() as u32;
        *self.index.entry(m).or_insert(next)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Sparse vector of a polynomial, indexing new monomials.
    pub fn vector<C: Coeff + Copy>(&mut self, p: &Poly<C>) -> Vec<(u32, C)> {
        p.terms().map(|(m, c)| (self.id(*m), *c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;

    #[test]
    fn weight_zero_counts() {
        // d = 1: bidegree (m, m) slice, C(n+m-1, m)^2 monomials
        for (n, m) in [(3, 2), (5, 4), (4, 0)] {
            let a = Ambient::weight_zero(n, 1, m);
            assert_eq!(a.len() as u128, binomial(n + m - 1, m).pow(2));
        }
        let a = Ambient::weight_zero(2, 2, 1);
        // ξ[·,k]η[·,k] for k = 1, 2 and two slots each
        assert_eq!(a.len(), 8);
        assert!(a.cols.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn compositions_are_exhaustive() {
        let c = compositions(3, 3);
        assert_eq!(c.len(), 10);
        assert_eq!(c[0], vec![3, 0, 0]);
        assert_eq!(compositions(0, 0), vec![Vec::<u8>::new()]);
    }
}
