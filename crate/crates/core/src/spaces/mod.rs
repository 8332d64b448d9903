// SPDX-License-Identifier: MIT

//! The spaces Inv_n(V)_{2m}, SC_n(V)_{2m} and Quant_n(V)_{2m} as exact
//! reduced echelon bases over monomials, with their symmetric-group
//! characters.
//!
//! Bases are computed modulo several word-size primes and lifted by rational
//! reconstruction; each lifted basis is then checked in exact arithmetic
//! (see [`Context`] for which checks apply to which space).

pub mod action;
pub mod ambient;
mod build;
pub mod cache;
pub mod harmonic;
pub mod pointed;
mod verify;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, Permutation};
use crate::error::{Error, Result};
use crate::linalg::exact::{reconstruct, IntRow, ModImage};
use crate::linalg::fast::Prime23;
use crate::polydiff::{
    cubic_constraint, graph_symbol, harmonic_constraints, poisson_symbol, sp_generators, Monomial, Multigraph, PoissonMonomial, Poly,
    SymbolPoly, MAXV,
};

pub use action::{decompose, graded_character, GradedCharacter, Group};
pub use harmonic::{har_hilbert_closed_form, har_hilbert_numeric};
pub use pointed::{pointed_restrict, PointedSpace};

use ambient::{Ambient, Indexer, SVec};
use build::{run_mod, Harmonic, KernelImage, PrimeId, QuantChain, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceKind {
    Inv,
    Sc,
    Quant,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::Inv => "inv",
            SpaceKind::Sc => "sc",
            SpaceKind::Quant => "quant",
        })
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "inv" => Ok(SpaceKind::Inv),
            "sc" => Ok(SpaceKind::Sc),
            "quant" => Ok(SpaceKind::Quant),
            _ => Err(Error::InvalidArgument(format!("unknown space kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Harmonic,
    Graph,
    Default,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Harmonic => "harmonic",
            Method::Graph => "graph",
            Method::Default => "default",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "harmonic" => Ok(Method::Harmonic),
            "graph" => Ok(Method::Graph),
            "default" => Ok(Method::Default),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceKey {
    pub kind: SpaceKind,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub method: Method,
}

impl SpaceKey {
    /// Validates the key and fixes the method: Inv defaults to the graph
    /// method, SC and Quant have only one construction.
    pub fn new(kind: SpaceKind, n: usize, d: usize, m: usize, method: Method) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidArgument(format!("need n ≥ 1 and d ≥ 1, got n = {n}, d = {d}")));
        }
        if 2 * n * d > MAXV {
            return Err(Error::InvalidArgument(format!("n·2d = {} exceeds {MAXV} variables", 2 * n * d)));
        }
        let method = match (kind, method) {
            (SpaceKind::Inv, Method::Harmonic) if d != 1 => return Err(Error::HarmonicNeedsD1(d)),
            (SpaceKind::Inv, Method::Default) => Method::Graph,
            (SpaceKind::Inv, m) => m,
            _ => Method::Default,
        };
        Ok(SpaceKey { kind, n, d, m, method })
    }

    /// For d = 1 nothing survives above half-order [`top_half_order_d1`],
    /// which is at most the top degree n(n−1)/2 of the harmonic model.
    fn trivially_zero(&self) -> bool {
        (self.d == 1 && self.m > top_half_order_d1(self.n)) || (self.n == 1 && self.m > 0)
    }
}

impl fmt::Display for SpaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-n{}-d{}-m{}-{}", self.kind, self.n, self.d, self.m, self.method)
    }
}

/// A subspace of the order-2m symbols in canonical reduced echelon form.
///
/// `columns` lists the monomials that occur, largest first; row i is
/// `rows[i].entries / rows[i].den`, with a 1 at its pivot, which is the
/// row's leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub key: SpaceKey,
    pub columns: Vec<Monomial>,
    pub rows: Vec<IntRow>,
}

impl SubspaceBasis {
    pub fn zero(key: SpaceKey) -> Self {
        SubspaceBasis { key, columns: Vec::new(), rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.columns.binary_search_by(|c| m.cmp(c)).ok()
    }

    pub fn row_poly(&self, i: usize) -> SymbolPoly {
        let r = &self.rows[i];
        Poly::from_terms(
            self.key.n,
            self.key.d,
            r.entries.iter().map(|&(c, v)| (self.columns[c as usize], BigRational::new(v.into(), r.den.into()))),
        )
    }

    /// Whether the rows form a canonical reduced echelon basis: strictly
    /// increasing pivots, pivot entry equal to the positive denominator, zero
    /// at every other pivot, primitive integer rows, sorted columns.
    pub fn is_canonical(&self) -> bool {
        if !self.columns.windows(2).all(|w| w[0] > w[1]) {
            return false;
        }
        if !self.rows.windows(2).all(|w| w[0].pivot < w[1].pivot) {
            return false;
        }
        let pivots: BTreeSet<u32> = self.rows.iter().map(|r| r.pivot).collect();
        self.rows.iter().all(|r| {
            let g = r.entries.iter().fold(r.den, |g, &(_, v)| crate::linalg::exact::gcd_i128(g, v));
            r.den > 0
                && g == 1
                && r.entries.first().map(|e| e.0) == Some(r.pivot)
                && r.entries.windows(2).all(|w| w[0].0 < w[1].0)
                && r.entries.iter().all(|&(c, v)| v != 0 && (c != r.pivot || v == r.den) && (c == r.pivot || !pivots.contains(&c)))
        })
    }
}

/// How a lifted basis is certified.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Rigor {
    /// A kernel over Z: dimensions mod p bound the rational one from above,
    /// so a zero image certifies the zero space.
    Kernel,
    /// Anything else.
    Other,
}

/// Keeps the images that share the most common pivot pattern.
fn consistent(images: &[ModImage]) -> Vec<ModImage> {
    let mut best: Vec<ModImage> = Vec::new();
    for im in images {
        let group: Vec<ModImage> = images.iter().filter(|x| x.pivots == im.pivots).cloned().collect();
        if group.len() > best.len() {
            best = group;
        }
    }
    best
}

/// Whether the rows reduce modulo 2^23 − 15 to the given image.
fn matches_image(rows: &[IntRow], img: &ModImage) -> bool {
    if rows.len() != img.pivots.len() {
        return false;
    }
    let cols = img.rows.first().map_or(0, |r| r.len());
    rows.iter().zip(&img.rows).all(|(r, expect)| r.reduce_mod::<Prime23>(cols).as_ref() == Some(expect))
}

/// Multi-prime lifting: the 23-bit prime first (cheap zero test and an
/// independent cross-check), then two 61/62-bit primes, adding more on
/// disagreement or failed verification.
fn lift(
    mut run: impl FnMut(PrimeId) -> ModImage,
    rigor: Rigor,
    cross_check: bool,
    verify: impl Fn(&[IntRow]) -> bool,
) -> Result<Vec<IntRow>> {
    let small = run(PrimeId::P23);
    if small.pivots.is_empty() && rigor == Rigor::Kernel {
        return Ok(Vec::new());
    }
    let mut images = vec![run(PrimeId::M61), run(PrimeId::P62a)];
    let mut spare = [PrimeId::P62b, PrimeId::P61b].into_iter();
    loop {
        let group = consistent(&images);
        if group.len() >= 2 {
            if let Ok(rows) = reconstruct(&group) {
                if (!cross_check || matches_image(&rows, &small)) && verify(&rows) {
                    return Ok(rows);
                }
            }
        }
        match spare.next() {
            Some(p) => images.push(run(p)),
            None => return Err(Error::Reconstruction("images modulo all primes fail to lift consistently".into())),
        }
    }
}

/// Drops unused columns and renumbers the rest, keeping their order.
fn compress(key: SpaceKey, amb: &Ambient, rows: Vec<IntRow>) -> SubspaceBasis {
    let used: BTreeSet<u32> = rows.iter().flat_map(|r| r.entries.iter().map(|e| e.0)).collect();
    let remap: HashMap<u32, u32> = used.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let columns = used.iter().map(|&c| amb.cols[c as usize]).collect();
    let rows = rows
        .into_iter()
        .map(|r| IntRow { pivot: remap[&r.pivot], den: r.den, entries: r.entries.iter().map(|&(c, v)| (remap[&c], v)).collect() })
        .collect();
    SubspaceBasis { key, columns, rows }
}

fn constant_basis(key: SpaceKey) -> SubspaceBasis {
    SubspaceBasis { key, columns: vec![Monomial::one()], rows: vec![IntRow { pivot: 0, den: 1, entries: vec![(0, 1)] }] }
}

fn compute_inv(key: SpaceKey) -> Result<SubspaceBasis> {
    let SpaceKey { n, d, m, .. } = key;
    match key.method {
        Method::Harmonic => {
            let amb = Ambient::weight_zero(n, 1, m);
            let problem = Harmonic { amb: &amb, m };
            let verify = |rows: &[IntRow]| {
                (1..=m.max(1)).all(|r| verify::all_killed(n, 1, &amb.cols, rows, |p| harmonic_constraints(p, r).expect("d = 1")))
            };
            let rows = lift(|p| run_mod(&problem, p), Rigor::Kernel, false, verify)?;
            Ok(compress(key, &amb, rows))
        }
        _ => {
            // for d = 1 the semistandard graphs are a basis of the
            // sp-invariants (distinct leading monomials, coefficient 1)
            let graphs = if d == 1 { Multigraph::semistandard(n, m) } else { Multigraph::all(n, m) };
            let symbols: Vec<Poly<i128>> = graphs.iter().map(|g| graph_symbol(g, d)).collect();
            let amb = if d == 1 {
                Ambient::weight_zero(n, 1, m)
            } else {
                Ambient::from_monomials(n, d, symbols.iter().flat_map(|s| s.terms().map(|(m, _)| *m)))
            };
            let gens: Vec<SVec> = symbols.iter().map(|s| amb.vector(s)).collect();
            let mut idx = Indexer::default();
            let cons: Vec<SVec> = symbols.iter().map(|s| idx.vector(&cubic_constraint(s))).collect();
            let problem = KernelImage { ambient_len: amb.len(), gens, cons_rows: idx.len(), cons };
            let fields = sp_generators(n, d);
            let verify = |rows: &[IntRow]| {
                verify::all_killed(n, d, &amb.cols, rows, cubic_constraint)
                    && fields.iter().all(|f| verify::all_killed(n, d, &amb.cols, rows, |p| f.apply(p)))
            };
            let rigor = if d == 1 { Rigor::Kernel } else { Rigor::Other };
            let rows = lift(|p| run_mod(&problem, p), rigor, d != 1, verify)?;
            Ok(compress(key, &amb, rows))
        }
    }
}

fn compute_sc(key: SpaceKey) -> Result<SubspaceBasis> {
    let SpaceKey { n, d, m, .. } = key;
    let symbols: Vec<Poly<i128>> = PoissonMonomial::all(n, m).iter().map(|p| poisson_symbol(p, d)).collect();
    let amb = Ambient::from_monomials(n, d, symbols.iter().flat_map(|s| s.terms().map(|(m, _)| *m)));
    let gens: Vec<SVec> = symbols.iter().map(|s| amb.vector(s)).collect();
    let problem = Span { ambient_len: amb.len(), gens };
    // a spanning set that lies in the lifted row space, whose dimension is
    // a rank mod p and hence at most the rank over Q, spans it
    let verify = |rows: &[IntRow]| problem.gens.iter().all(|g| verify::in_rowspace(g, rows, amb.len()));
    let rows = lift(|p| run_mod(&problem, p), Rigor::Other, false, verify)?;
    Ok(compress(key, &amb, rows))
}

/// The Moyal filtration data up to order 2·kmax.
fn quant_chain(n: usize, d: usize, kmax: usize) -> QuantChain {
    let perms = Permutation::all(n);
    let mut pi: Poly<i128> = Poly::zero(n, d);
    for p in 1..=n {
        for q in (p + 1)..=n {
            pi = pi.add(&crate::polydiff::bivector_poly(n, d, p, q));
        }
    }
    let mut power = Poly::one(n, d);
    let mut levels = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        if k > 0 {
            power = power.mul(&pi);
        }
        let permuted: Vec<Poly<i128>> = perms.iter().map(|s| power.permute_slots(s)).collect();
        let amb = Ambient::from_monomials(n, d, permuted.iter().flat_map(|s| s.terms().map(|(m, _)| *m)));
        let vecs = permuted.iter().map(|s| amb.vector(s)).collect();
        levels.push((amb, vecs));
    }
    QuantChain { nperm: perms.len(), levels }
}

/// Quant pieces of orders 0, 2, …, 2·kmax.
fn compute_quant_upto(n: usize, d: usize, kmax: usize) -> Result<Vec<SubspaceBasis>> {
    let chain = quant_chain(n, d, kmax);
    let mut images: HashMap<PrimeId, Vec<ModImage>> = HashMap::new();
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let key = SpaceKey::new(SpaceKind::Quant, n, d, k, Method::Default)?;
        let run = |p: PrimeId| images.entry(p).or_insert_with(|| run_mod(&chain, p))[k].clone();
        let amb = &chain.levels[k].0;
        let rows = lift(run, Rigor::Other, true, |_| true)?;
        out.push(compress(key, amb, rows));
    }
    Ok(out)
}

/// Computes and memoizes bases, optionally backed by an on-disk cache.
///
/// Certification: Inv for d = 1 (both methods) is exact, since the lifted
/// rows are verified to satisfy the defining equations and their number is
/// a kernel dimension mod p, which bounds the true one from above. SC is
/// exact, since every spanning symbol is verified to lie in the lifted row
/// space. For Inv with d ≥ 2 the rows are verified to be invariant; there,
/// and for Quant, the count is cross-checked by an independent prime.
pub struct Context {
    cache: Option<cache::DiskCache>,
    memo: Mutex<HashMap<SpaceKey, Arc<SubspaceBasis>>>,
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}

impl Context {
    /// In-memory memoization only.
    pub fn new() -> Self {
        Context { cache: None, memo: Mutex::new(HashMap::new()) }
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Context { cache: Some(cache::DiskCache::new(dir.into())), memo: Mutex::new(HashMap::new()) }
    }

    /// Cache directory from `POISSON_INV_CACHE`, default `./cache`.
    pub fn from_env() -> Self {
        Self::with_cache_dir(cache::cache_dir_from_env())
    }

    fn lookup(&self, key: &SpaceKey) -> Option<Arc<SubspaceBasis>> {
        if let Some(b) = self.memo.lock().expect("memo lock").get(key) {
            return Some(b.clone());
        }
        let b = Arc::new(self.cache.as_ref()?.load(key)?);
        self.memo.lock().expect("memo lock").insert(*key, b.clone());
        Some(b)
    }

    fn remember(&self, b: SubspaceBasis) -> Result<Arc<SubspaceBasis>> {
        if let Some(c) = &self.cache {
            c.store(&b)?;
        }
        let b = Arc::new(b);
        self.memo.lock().expect("memo lock").insert(b.key, b.clone());
        Ok(b)
    }

    pub fn space(&self, key: SpaceKey) -> Result<Arc<SubspaceBasis>> {
        let key = SpaceKey::new(key.kind, key.n, key.d, key.m, key.method)?;
        if let Some(b) = self.lookup(&key) {
            return Ok(b);
        }
        if key.trivially_zero() {
            return self.remember(SubspaceBasis::zero(key));
        }
        if key.m == 0 {
            return self.remember(constant_basis(key));
        }
        match key.kind {
            SpaceKind::Inv => self.remember(compute_inv(key)?),
            SpaceKind::Sc => self.remember(compute_sc(key)?),
            SpaceKind::Quant => {
                let mut wanted = None;
                for b in compute_quant_upto(key.n, key.d, key.m)? {
                    let k = b.key;
                    let b = match self.lookup(&k) {
                        Some(existing) => existing,
                        None => self.remember(b)?,
                    };
                    if k == key {
                        wanted = Some(b);
                    }
                }
                Ok(wanted.expect("requested order is computed"))
            }
        }
    }

    pub fn inv(&self, n: usize, d: usize, m: usize, method: Method) -> Result<Arc<SubspaceBasis>> {
        self.space(SpaceKey::new(SpaceKind::Inv, n, d, m, method)?)
    }

    pub fn sc(&self, n: usize, d: usize, m: usize) -> Result<Arc<SubspaceBasis>> {
        self.space(SpaceKey::new(SpaceKind::Sc, n, d, m, Method::Default)?)
    }

    pub fn quant(&self, n: usize, d: usize, m: usize) -> Result<Arc<SubspaceBasis>> {
        self.space(SpaceKey::new(SpaceKind::Quant, n, d, m, Method::Default)?)
    }
}

pub fn inv_space(n: usize, d: usize, m: usize, method: Method) -> Result<SubspaceBasis> {
    Ok((*Context::new().inv(n, d, m, method)?).clone())
}

pub fn sc_space(n: usize, d: usize, m: usize) -> Result<SubspaceBasis> {
    Ok((*Context::new().sc(n, d, m)?).clone())
}

pub fn quant_space(n: usize, d: usize, m: usize) -> Result<SubspaceBasis> {
    Ok((*Context::new().quant(n, d, m)?).clone())
}

/// Whether the row space of `a` lies in that of `b` (exact).
pub fn containment(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool> {
    let (ka, kb) = (a.key, b.key);
    if (ka.n, ka.d, ka.m) != (kb.n, kb.d, kb.m) {
        return Err(Error::InvalidArgument(format!("cannot compare {ka} with {kb}: different index sets")));
    }
    for r in &a.rows {
        let mut v: SVec = Vec::with_capacity(r.entries.len());
        for &(c, x) in &r.entries {
            match b.column_of(&a.columns[c as usize]) {
                Some(j) => v.push((j as u32, x)),
                None => return Ok(false),
            }
        }
        v.sort_unstable_by_key(|e| e.0);
        if !verify::in_rowspace(&v, &b.rows, b.columns.len()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The largest half-order that can carry invariants for V = C², n ≥ 2. An
/// S_n-isotypic piece of height k ≤ n − 1 restricts faithfully to k pointed
/// slots, where order minus weight is at most k(k − 1) (the x-degree of a
/// generic harmonic polynomial on k variables is at most C(k, 2)) and the
/// weight is at most 2(n − k); the maximum over k is at k = n − 1.
pub fn top_half_order_d1(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    (binomial(n - 1, 2) as usize + 1).min(binomial(n, 2) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(kind: SpaceKind, n: usize, d: usize, upto: usize, method: Method) -> Vec<usize> {
        let ctx = Context::new();
        (0..=upto).map(|m| ctx.space(SpaceKey::new(kind, n, d, m, method).unwrap()).unwrap().dim()).collect()
    }

    #[test]
    fn small_inv_dimensions() {
        assert_eq!(dims(SpaceKind::Inv, 3, 1, 3, Method::Graph), vec![1, 3, 2, 0]);
        assert_eq!(dims(SpaceKind::Inv, 3, 1, 3, Method::Harmonic), vec![1, 3, 2, 0]);
        assert_eq!(dims(SpaceKind::Inv, 4, 1, 5, Method::Graph), vec![1, 6, 10, 6, 1, 0]);
        assert_eq!(dims(SpaceKind::Inv, 4, 1, 5, Method::Harmonic), vec![1, 6, 10, 6, 1, 0]);
        assert_eq!(dims(SpaceKind::Inv, 2, 1, 2, Method::Default), vec![1, 1, 0]);
    }

    #[test]
    fn methods_agree_exactly() {
        for m in 0..=4 {
            let a = inv_space(4, 1, m, Method::Graph).unwrap();
            let b = inv_space(4, 1, m, Method::Harmonic).unwrap();
            assert_eq!(a.columns, b.columns);
            assert_eq!(a.rows, b.rows);
            assert!(a.is_canonical());
        }
    }

    #[test]
    fn sc_and_quant_small() {
        assert_eq!(dims(SpaceKind::Sc, 3, 1, 3, Method::Default), vec![1, 3, 2, 0]);
        assert_eq!(dims(SpaceKind::Quant, 3, 1, 3, Method::Default), vec![1, 3, 2, 0]);
        assert_eq!(dims(SpaceKind::Quant, 2, 1, 2, Method::Default), vec![1, 1, 0]);
        assert_eq!(sc_space(4, 1, 4).unwrap().dim(), 0);
        assert_eq!(quant_space(4, 1, 4).unwrap().dim(), 1);
    }

    #[test]
    fn chain_of_containments() {
        for m in 0..=3 {
            let sc = sc_space(4, 1, m).unwrap();
            let q = quant_space(4, 1, m).unwrap();
            let inv = inv_space(4, 1, m, Method::Default).unwrap();
            assert!(containment(&sc, &q).unwrap());
            assert!(containment(&q, &inv).unwrap());
            assert!(containment(&inv, &inv).unwrap());
        }
        let q = quant_space(4, 1, 4).unwrap();
        let sc = sc_space(4, 1, 4).unwrap();
        assert!(!containment(&q, &sc).unwrap());
    }

    #[test]
    fn harmonic_needs_d1() {
        assert!(matches!(inv_space(3, 2, 1, Method::Harmonic), Err(Error::HarmonicNeedsD1(2))));
    }
}
