// SPDX-License-Identifier: MIT

//! The symbol algebra Sym(V^n): polynomials in ξ[i,k] (symbol of ∂/∂x_k in
//! slot i) and η[i,k] (symbol of ∂/∂y_k in slot i). Slots and coordinate
//! indices are 1-based in the public constructors.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::characters::rational_string;
use crate::combinat::{factorial, Permutation};
use crate::error::{Error, Result};
use crate::linalg::field::PrimeField;

/// Maximum number of variables, i.e. n·2d ≤ MAXV.
pub const MAXV: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Xi = 0,
    Eta = 1,
}

/// Index of ξ[slot,k] or η[slot,k] (1-based slot and k). The order is
/// slot-major with ξ before η.
#[inline]
pub fn var_index(slot: usize, kind: Kind, k: usize, d: usize) -> usize {
    (slot - 1) * 2 * d + kind as usize * d + (k - 1)
}

/// Inverse of [`var_index`].
pub fn var_of(index: usize, d: usize) -> (usize, Kind, usize) {
    let slot = index / (2 * d) + 1;
    let r = index % (2 * d);
    let kind = if r < d { Kind::Xi } else { Kind::Eta };
    (slot, kind, r % d + 1)
}

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// first variable most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    e: [u8; MAXV],
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { deg: 0, e: [0; MAXV] }
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAXV, "too many variables");
        let mut e = [0; MAXV];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { deg: exps.iter().map(|&x| x as u16).sum(), e }
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::one();
        m.e[index] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u8 {
        self.e[index]
    }

    pub fn exponents(&self) -> &[u8; MAXV] {
        &self.e
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(other.e.iter()) {
            *a += *b;
        }
        Monomial { deg: self.deg + other.deg, e }
    }

    #[inline]
    pub fn with_exp(&self, index: usize, value: u8) -> Monomial {
        let mut m = *self;
        m.deg = m.deg + value as u16 - m.e[index] as u16;
        m.e[index] = value;
        m
    }

    /// Total degree in the variables of one slot (1-based).
    pub fn slot_degree(&self, slot: usize, d: usize) -> usize {
        let base = (slot - 1) * 2 * d;
        self.e[base..base + 2 * d].iter().map(|&x| x as usize).sum()
    }

    /// (ξ-degree, η-degree).
    pub fn bidegree(&self, n: usize, d: usize) -> (usize, usize) {
        let mut xi = 0;
        let mut eta = 0;
        for s in 0..n {
            for k in 0..d {
                xi += self.e[s * 2 * d + k] as usize;
                eta += self.e[s * 2 * d + d + k] as usize;
            }
        }
        (xi, eta)
    }

    pub fn display(&self, d: usize) -> String {
        let mut parts = Vec::new();
        for (i, &x) in self.e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (slot, kind, k) = var_of(i, d);
            let name = match kind {
                Kind::Xi => "xi",
                Kind::Eta => "eta",
            };
            if x == 1 {
                parts.push(format!("{name}[{slot},{k}]"));
            } else {
                parts.push(format!("{name}[{slot},{k}]^{x}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<(usize, u8)> = self.e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect();
        write!(f, "M{nz:?}")
    }
}

/// Coefficient ring of a [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("integer coefficient overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("integer coefficient overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

/// An element of the prime field F.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zp<F: PrimeField>(pub u64, PhantomData<F>);

impl<F: PrimeField> Zp<F> {
    pub fn new(v: u64) -> Self {
        Zp(v, PhantomData)
    }
}

impl<F: PrimeField> fmt::Debug for Zp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<F: PrimeField> Coeff for Zp<F> {
    fn zero() -> Self {
        Zp::new(0)
    }
    fn one() -> Self {
        Zp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Zp::new(F::add(self.0, other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        Zp::new(F::mul(self.0, other.0))
    }
    fn neg(&self) -> Self {
        Zp::new(F::neg(self.0))
    }
    fn from_i64(v: i64) -> Self {
        Zp::new(F::from_i64(v))
    }
}

/// A sparse polynomial in the symbols of n slots over V = C^{2d}.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    pub n: usize,
    pub d: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Exact-rational symbol polynomial.
pub type SymbolPoly = Poly<BigRational>;

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c:?}*{}", m.display(self.d))).collect();
        write!(f, "Poly(n={}, d={}: {})", self.n, self.d, if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(n: usize, d: usize) -> Self {
        assert!(n * 2 * d <= MAXV, "n·2d = {} exceeds {MAXV} variables", n * 2 * d);
        Poly { n, d, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, d: usize, c: C) -> Self {
        let mut p = Self::zero(n, d);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(n: usize, d: usize) -> Self {
        Self::constant(n, d, C::one())
    }

    /// ξ[slot,k] or η[slot,k].
    pub fn variable(n: usize, d: usize, slot: usize, kind: Kind, k: usize) -> Self {
        let mut p = Self::zero(n, d);
        p.add_term(Monomial::var(var_index(slot, kind, k, d)), C::one());
        p
    }

    pub fn from_terms(n: usize, d: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(n, d);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in the global order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Degrees of all terms, if they agree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    fn check_shape(&self, other: &Self) {
        assert!(self.n == other.n && self.d == other.d, "slot or dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { n: self.n, d: self.d, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n, self.d);
        }
        Poly { n: self.n, d: self.d, terms: self.terms.iter().map(|(m, c)| (*m, c.mul(s))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut r = Self::zero(self.n, self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::one(self.n, self.d);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// r-th partial derivative in the variable with the given index.
    pub fn derivative(&self, index: usize, r: usize) -> Self {
        let mut out = Self::zero(self.n, self.d);
        for (m, c) in &self.terms {
            let e = m.exp(index) as usize;
            if e < r {
                continue;
            }
            let falling: i64 = ((e - r + 1)..=e).map(|x| x as i64).product();
            out.add_term(m.with_exp(index, (e - r) as u8), c.mul(&C::from_i64(falling)));
        }
        out
    }

    /// Multiplication by a single variable.
    pub fn mul_var(&self, index: usize) -> Self {
        let v = Monomial::var(index);
        Poly { n: self.n, d: self.d, terms: self.terms.iter().map(|(m, c)| (m.mul(&v), c.clone())).collect() }
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.n, self.d, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Permutes slots: the variables of slot i move to slot σ(i) (0-based
    /// points of σ, 1-based slots in the display).
    pub fn permute_slots(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.degree(), self.n);
        let w = 2 * self.d;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0u8; MAXV];
            for s in 0..self.n {
                let t = sigma.apply(s);
                e[t * w..t * w + w].copy_from_slice(&m.e[s * w..s * w + w]);
            }
            (Monomial { deg: m.deg, e }, c.clone())
        });
        Poly { n: self.n, d: self.d, terms: terms.collect() }
    }
}

impl Serialize for SymbolPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter().rev() {
            seq.serialize_element(&(m.display(self.d), rational_string(c)))?;
        }
        seq.end()
    }
}

/// Result of [`bivector`]; `degenerate` is set when i = j.
#[derive(Clone, Debug)]
pub struct Bivector {
    pub poly: SymbolPoly,
    pub degenerate: bool,
}

/// π^{i,j} = Σ_k (ξ[i,k]η[j,k] − η[i,k]ξ[j,k]).
pub fn bivector(i: usize, j: usize, d: usize, n: usize) -> Bivector {
    Bivector { poly: bivector_poly(n, d, i, j), degenerate: i == j }
}

pub fn bivector_poly<C: Coeff>(n: usize, d: usize, i: usize, j: usize) -> Poly<C> {
    assert!(i >= 1 && j >= 1 && i <= n && j <= n, "slot out of range");
    let mut p = Poly::zero(n, d);
    if i == j {
        return p;
    }
    for k in 1..=d {
        let a = Monomial::var(var_index(i, Kind::Xi, k, d)).mul(&Monomial::var(var_index(j, Kind::Eta, k, d)));
        let b = Monomial::var(var_index(i, Kind::Eta, k, d)).mul(&Monomial::var(var_index(j, Kind::Xi, k, d)));
        p.add_term(a, C::one());
        p.add_term(b, C::one().neg());
    }
    p
}

/// A loopless multigraph on vertices 1..n, edges stored as sorted pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multigraph {
    pub n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut es = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) outside 1..{n}")));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        Ok(Multigraph { n, edges: es })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Multiplicity of each distinct edge.
    pub fn edge_multiplicities(&self) -> Vec<((usize, usize), usize)> {
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for &e in &self.edges {
            match out.last_mut() {
                Some((last, c)) if *last == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// All multigraphs with m edges on n vertices, in lexicographic order.
    pub fn all(n: usize, m: usize) -> Vec<Multigraph> {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| ((a + 1)..=n).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        fn rec(pairs: &[(usize, usize)], start: usize, left: usize, cur: &mut Vec<(usize, usize)>, n: usize, out: &mut Vec<Multigraph>) {
            if left == 0 {
                out.push(Multigraph { n, edges: cur.clone() });
                return;
            }
            for i in start..pairs.len() {
                cur.push(pairs[i]);
                rec(pairs, i, left - 1, cur, n, out);
                cur.pop();
            }
        }
        if m == 0 || !pairs.is_empty() {
            rec(&pairs, 0, m, &mut Vec::new(), n, &mut out);
        }
        out
    }

    /// Multigraphs whose edges (a_t, b_t), t = 1..m, form the columns of a
    /// semistandard tableau of shape (m, m): tops and bottoms weakly increase.
    pub fn semistandard(n: usize, m: usize) -> Vec<Multigraph> {
        let mut out = Vec::new();
        fn rec(n: usize, m: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Multigraph>) {
            if cur.len() == m {
                out.push(Multigraph::new(n, cur.iter().copied()).expect("valid edges"));
                return;
            }
            let (lt, lb) = cur.last().copied().unwrap_or((1, 1));
            for t in lt..=n {
                for b in lb.max(t + 1)..=n {
                    cur.push((t, b));
                    rec(n, m, cur, out);
                    cur.pop();
                }
            }
        }
        rec(n, m, &mut Vec::new(), &mut out);
        out
    }
}

/// ∏_{edges} π^{i,j}.
pub fn graph_symbol<C: Coeff>(g: &Multigraph, d: usize) -> Poly<C> {
    let mut p = Poly::one(g.n, d);
    for &(a, b) in g.edges() {
        p = p.mul(&bivector_poly(g.n, d, a, b));
    }
    p
}

/// A binary bracketing of a set of 1-based leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(usize),
    Bracket(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            BracketTree::Leaf(i) => vec![*i],
            BracketTree::Bracket(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    pub fn bracket_count(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 0,
            BracketTree::Bracket(a, b) => 1 + a.bracket_count() + b.bracket_count(),
        }
    }

    /// All trees on the given leaves up to antisymmetry: at every node the
    /// smallest leaf lies in the left subtree. There are (2b−3)!! of them.
    pub fn all(leaves: &[usize]) -> Vec<BracketTree> {
        if leaves.len() == 1 {
            return vec![BracketTree::Leaf(leaves[0])];
        }
        let (first, rest) = leaves.split_first().expect("nonempty leaf set");
        let mut out = Vec::new();
        // left = {first} ∪ subset of rest, right = the complementary nonempty subset
        let r = rest.len();
        for mask in 0..(1u32 << r) - 1 {
            let mut left = vec![*first];
            let mut right = Vec::new();
            for (i, &x) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            for a in BracketTree::all(&left) {
                for b in BracketTree::all(&right) {
                    out.push(BracketTree::Bracket(Box::new(a.clone()), Box::new(b)));
                }
            }
        }
        out
    }

    fn symbol<C: Coeff>(&self, n: usize, d: usize) -> Poly<C> {
        match self {
            BracketTree::Leaf(_) => Poly::one(n, d),
            BracketTree::Bracket(a, b) => {
                let mut factor = Poly::zero(n, d);
                for i in a.leaves() {
                    for j in b.leaves() {
                        factor = factor.add(&bivector_poly(n, d, i, j));
                    }
                }
                factor.mul(&a.symbol(n, d)).mul(&b.symbol(n, d))
            }
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(i) => write!(f, "f{i}"),
            BracketTree::Bracket(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

/// A product of bracket trees whose leaf sets, together with the implicit
/// singletons, partition {1..n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoissonMonomial {
    pub n: usize,
    pub trees: Vec<BracketTree>,
}

impl PoissonMonomial {
    pub fn new(n: usize, trees: Vec<BracketTree>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for t in &trees {
            for i in t.leaves() {
                if i == 0 || i > n || seen[i] {
                    return Err(Error::InvalidArgument(format!("leaf {i} repeated or out of range")));
                }
                seen[i] = true;
            }
        }
        Ok(PoissonMonomial { n, trees })
    }

    pub fn bracket_count(&self) -> usize {
        self.trees.iter().map(|t| t.bracket_count()).sum()
    }

    /// All Poisson monomials of n slots with m brackets.
    pub fn all(n: usize, m: usize) -> Vec<PoissonMonomial> {
        let mut out = Vec::new();
        if m >= n && !(n == 0 && m == 0) {
            return out;
        }
        for blocks in set_partitions(n, n - m) {
            let mut acc: Vec<Vec<BracketTree>> = vec![Vec::new()];
            for block in blocks.iter().filter(|b| b.len() >= 2) {
                let trees = BracketTree::all(block);
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        trees.iter().map(move |t| {
                            let mut v = prefix.clone();
                            v.push(t.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(|trees| PoissonMonomial { n, trees }));
        }
        out
    }
}

impl fmt::Display for PoissonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut covered = vec![false; self.n + 1];
        let mut parts: Vec<String> = Vec::new();
        for t in &self.trees {
            for i in t.leaves() {
                covered[i] = true;
            }
            parts.push(t.to_string());
        }
        for i in 1..=self.n {
            if !covered[i] {
                parts.push(format!("f{i}"));
            }
        }
        f.write_str(&parts.join("·"))
    }
}

/// Set partitions of {1..n} into exactly k blocks, blocks sorted by minimum.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i > n {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        }
        if cur.len() + (n - i + 1) < k {
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, k, cur, out);
            cur[b].pop();
        }
        if cur.len() < k {
            cur.push(vec![i]);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Symbol of a Poisson monomial: the product of its tree symbols.
pub fn poisson_symbol<C: Coeff>(p: &PoissonMonomial, d: usize) -> Poly<C> {
    let mut s = Poly::one(p.n, d);
    for t in &p.trees {
        s = s.mul(&t.symbol(p.n, d));
    }
    s
}

/// ħ^m coefficient of f_{σ(1)} ⋆ ⋯ ⋆ f_{σ(n)} for the Moyal product:
/// (1/(2^m m!)) (Σ_{p<q} π^{σ(p),σ(q)})^m. σ acts on 0-based points.
pub fn moyal_coefficient(sigma: &Permutation, m: usize, d: usize) -> SymbolPoly {
    let n = sigma.degree();
    let mut sum = Poly::zero(n, d);
    for p in 0..n {
        for q in (p + 1)..n {
            sum = sum.add(&bivector_poly(n, d, sigma.apply(p) + 1, sigma.apply(q) + 1));
        }
    }
    let den = BigInt::from(factorial(m)) * BigInt::from(2).pow(m as u32);
    sum.pow(m).scale(&BigRational::new(BigInt::one(), den))
}

/// C = Σ_i η[i,1] (∂/∂ξ[i,1])².
pub fn cubic_constraint<C: Coeff>(p: &Poly<C>) -> Poly<C> {
    let mut out = Poly::zero(p.n, p.d);
    for i in 1..=p.n {
        let x = var_index(i, Kind::Xi, 1, p.d);
        let a = var_index(i, Kind::Eta, 1, p.d);
        out = out.add(&p.derivative(x, 2).mul_var(a));
    }
    out
}

/// D_r = Σ_i η[i,1] (∂/∂ξ[i,1])^r, defined for d = 1.
pub fn harmonic_constraints<C: Coeff>(p: &Poly<C>, r: usize) -> Result<Poly<C>> {
    if p.d != 1 {
        return Err(Error::HarmonicNeedsD1(p.d));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let mut out = Poly::zero(p.n, 1);
    for i in 1..=p.n {
        out = out.add(&p.derivative(var_index(i, Kind::Xi, 1, 1), r).mul_var(var_index(i, Kind::Eta, 1, 1)));
    }
    Ok(out)
}

/// A first-order operator Σ c · x_target ∂/∂x_source.
#[derive(Clone, Debug)]
pub struct LinearField(pub Vec<(i64, usize, usize)>);

impl LinearField {
    pub fn apply<C: Coeff>(&self, p: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero(p.n, p.d);
        for (m, c) in p.terms() {
            for &(coef, t, s) in &self.0 {
                let e = m.exp(s);
                if e == 0 {
                    continue;
                }
                let nm = m.with_exp(s, e - 1);
                let nm = nm.with_exp(t, nm.exp(t) + 1);
                out.add_term(nm, c.mul(&C::from_i64(coef * e as i64)));
            }
        }
        out
    }
}

/// Generators of sp(2d) acting diagonally on n slots. A symbol is
/// Sp(V)-invariant iff every generator kills it.
pub fn sp_generators(n: usize, d: usize) -> Vec<LinearField> {
    let xi = |i: usize, k: usize| var_index(i, Kind::Xi, k, d);
    let eta = |i: usize, k: usize| var_index(i, Kind::Eta, k, d);
    let mut gens = Vec::new();
    for k in 1..=d {
        for l in 1..=d {
            let mut f = Vec::new();
            for i in 1..=n {
                f.push((1, xi(i, k), xi(i, l)));
                f.push((-1, eta(i, l), eta(i, k)));
            }
            gens.push(LinearField(f));
        }
    }
    for k in 1..=d {
        for l in k..=d {
            let mut up = Vec::new();
            let mut down = Vec::new();
            for i in 1..=n {
                up.push((1, xi(i, k), eta(i, l)));
                down.push((1, eta(i, k), xi(i, l)));
                if k != l {
                    up.push((1, xi(i, l), eta(i, k)));
                    down.push((1, eta(i, l), xi(i, k)));
                }
            }
            gens.push(LinearField(up));
            gens.push(LinearField(down));
        }
    }
    gens
}

/// The S_{n+1} action on n-slot symbols: permute slots by σ (0-based points,
/// point n is slot n+1), then substitute ξ[n+1,k] = −Σ_{i≤n} ξ[i,k] and
/// likewise for η.
pub fn snp1_action<C: Coeff>(sigma: &Permutation, p: &Poly<C>) -> Result<Poly<C>> {
    let n = p.n;
    let d = p.d;
    if sigma.degree() != n + 1 {
        return Err(Error::SizeMismatch { expected: n + 1, got: sigma.degree() });
    }
    let w = 2 * d;
    // −Σ_i v[i] for each of the 2d coordinates of the extra slot
    let neg_sums: Vec<Poly<C>> = (0..w)
        .map(|c| {
            let mut s = Poly::zero(n, d);
            for i in 0..n {
                s.add_term(Monomial::var(i * w + c), C::one().neg());
            }
            s
        })
        .collect();
    let mut out = Poly::zero(n, d);
    for (m, c) in p.terms() {
        let mut e = [0u8; MAXV];
        let mut extra: Option<usize> = None;
        for s in 0..n {
            let t = sigma.apply(s);
            if t == n {
                extra = Some(s);
            } else {
                e[t * w..t * w + w].copy_from_slice(&m.e[s * w..s * w + w]);
            }
        }
        let base = Monomial { deg: e.iter().map(|&x| x as u16).sum(), e };
        let mut term = Poly::from_terms(n, d, [(base, c.clone())]);
        if let Some(s) = extra {
            for coord in 0..w {
                let a = m.e[s * w + coord] as usize;
                if a > 0 {
                    term = term.mul(&neg_sums[coord].pow(a));
                }
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Largest absolute numerator among the coefficients.
pub fn max_abs_numerator(p: &SymbolPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn xi(n: usize, i: usize) -> SymbolPoly {
        Poly::variable(n, 1, i, Kind::Xi, 1)
    }

    fn eta(n: usize, i: usize) -> SymbolPoly {
        Poly::variable(n, 1, i, Kind::Eta, 1)
    }

    #[test]
    fn bivector_examples() {
        let b = bivector(1, 2, 1, 2);
        assert!(!b.degenerate);
        let expect = xi(2, 1).mul(&eta(2, 2)).sub(&eta(2, 1).mul(&xi(2, 2)));
        assert_eq!(b.poly, expect);
        assert_eq!(bivector(2, 1, 1, 2).poly, b.poly.neg());
        assert_eq!(bivector(1, 2, 2, 2).poly.len(), 4);
        let z = bivector(1, 1, 1, 2);
        assert!(z.degenerate && z.poly.is_zero());
    }

    #[test]
    fn cubic_examples() {
        let p: SymbolPoly = bivector_poly(3, 1, 1, 2).mul(&bivector_poly(3, 1, 1, 3));
        let expect = eta(3, 1).mul(&eta(3, 2)).mul(&eta(3, 3)).scale(&q(2));
        assert_eq!(cubic_constraint(&p), expect);
        assert!(cubic_constraint(&bivector_poly::<BigRational>(3, 1, 1, 2)).is_zero());
        assert!(cubic_constraint(&SymbolPoly::one(3, 1)).is_zero());
    }

    #[test]
    fn harmonic_examples() {
        let p = xi(2, 1).mul(&eta(2, 2)).sub(&xi(2, 2).mul(&eta(2, 1)));
        assert!(harmonic_constraints(&p, 1).unwrap().is_zero());
        let p = xi(2, 1).mul(&eta(2, 1));
        assert_eq!(harmonic_constraints(&p, 1).unwrap(), eta(2, 1).mul(&eta(2, 1)));
        assert!(harmonic_constraints(&SymbolPoly::one(2, 2), 1).is_err());
    }

    #[test]
    fn moyal_examples() {
        let id = Permutation::identity(2);
        let sw = Permutation::transposition(2, 0, 1);
        assert_eq!(moyal_coefficient(&id, 0, 1), SymbolPoly::one(2, 1));
        let diff = moyal_coefficient(&id, 1, 1).sub(&moyal_coefficient(&sw, 1, 1));
        assert_eq!(diff, bivector(1, 2, 1, 2).poly);
        let m = moyal_coefficient(&Permutation::identity(3), 1, 1);
        let sum: SymbolPoly = bivector_poly::<BigRational>(3, 1, 1, 2).add(&bivector_poly(3, 1, 1, 3)).add(&bivector_poly(3, 1, 2, 3));
        assert_eq!(m, sum.scale(&BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn poisson_examples() {
        let t =
            PoissonMonomial::new(3, vec![BracketTree::Bracket(Box::new(BracketTree::Leaf(1)), Box::new(BracketTree::Leaf(2)))]).unwrap();
        assert_eq!(poisson_symbol::<BigRational>(&t, 1), bivector(1, 2, 1, 3).poly);
        let nested = BracketTree::Bracket(
            Box::new(BracketTree::Leaf(1)),
            Box::new(BracketTree::Bracket(Box::new(BracketTree::Leaf(2)), Box::new(BracketTree::Leaf(3)))),
        );
        let p = PoissonMonomial::new(3, vec![nested]).unwrap();
        let b = |i, j| bivector_poly::<BigRational>(3, 1, i, j);
        assert_eq!(poisson_symbol::<BigRational>(&p, 1), b(1, 2).mul(&b(2, 3)).add(&b(1, 3).mul(&b(2, 3))));
        assert_eq!(BracketTree::all(&[1, 2, 3, 4]).len(), 15);
        assert_eq!(PoissonMonomial::all(4, 3).len(), 15);
        assert_eq!(PoissonMonomial::all(3, 1).len(), 3);
        assert_eq!(PoissonMonomial::all(3, 0).len(), 1);
    }

    #[test]
    fn multigraph_counts() {
        assert_eq!(Multigraph::all(4, 2).len(), 21);
        assert_eq!(Multigraph::all(3, 0).len(), 1);
        // SSYT of shape (2,2) with entries ≤ 4: 20
        assert_eq!(Multigraph::semistandard(4, 2).len(), 20);
        assert!(Multigraph::new(3, [(1, 1)]).is_err());
    }

    #[test]
    fn snp1_identity_and_transposition() {
        let p: SymbolPoly = bivector_poly::<BigRational>(3, 1, 1, 2).mul(&bivector_poly(3, 1, 2, 3));
        assert_eq!(snp1_action(&Permutation::identity(4), &p).unwrap(), p);
        let s = Permutation::transposition(4, 2, 3);
        let once = snp1_action(&s, &p).unwrap();
        assert_eq!(snp1_action(&s, &once).unwrap(), p);
        let t = Permutation::transposition(4, 0, 1);
        assert_eq!(snp1_action(&t, &bivector(1, 2, 1, 3).poly).unwrap(), bivector(2, 1, 1, 3).poly);
    }

    #[test]
    fn sp_invariance_of_bivector() {
        for d in 1..=2 {
            let p: SymbolPoly = bivector_poly(3, d, 1, 3);
            for g in sp_generators(3, d) {
                assert!(g.apply(&p).is_zero());
            }
            let not_inv: SymbolPoly = Poly::variable(3, d, 1, Kind::Xi, 1);
            assert!(sp_generators(3, d).iter().any(|g| !g.apply(&not_inv).is_zero()));
        }
    }
}
