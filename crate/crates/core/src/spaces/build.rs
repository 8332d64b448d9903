// SPDX-License-Identifier: MIT

//! Constructions modulo a single prime. Every builder returns reduced
//! echelon images over a fixed column order, ready for reconstruction.

use std::collections::HashMap;

use crate::linalg::exact::ModImage;
use crate::linalg::fast::Prime23;
use crate::linalg::field::{Mersenne61, Prime61b, Prime62a, Prime62b, PrimeField};
use crate::linalg::modp::{echelon, kernel_from_echelon, kernel_of_columns, reduced_echelon, Dense, SparseCol};
use crate::polydiff::Monomial;

use super::ambient::{Ambient, SVec};

const SEED: u64 = 0x5eed_0f_1a7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum PrimeId {
    P23,
    M61,
    P62a,
    P62b,
    P61b,
}

/// A computation that can be carried out over any of the prime fields.
pub(crate) trait ModRun {
    type Out;
    fn run<F: PrimeField>(&self) -> Self::Out;
}

pub(crate) fn run_mod<R: ModRun>(r: &R, p: PrimeId) -> R::Out {
    match p {
        PrimeId::P23 => r.run::<Prime23>(),
        PrimeId::M61 => r.run::<Mersenne61>(),
        PrimeId::P62a => r.run::<Prime62a>(),
        PrimeId::P62b => r.run::<Prime62b>(),
        PrimeId::P61b => r.run::<Prime61b>(),
    }
}

fn reduce_vec<F: PrimeField>(v: &SVec) -> SparseCol {
    v.iter().map(|&(i, x)| (i, F::from_i128(x))).filter(|e| e.1 != 0).collect()
}

fn image<F: PrimeField>(m: Dense) -> ModImage {
    let r = reduced_echelon::<F>(m);
    ModImage { modulus: F::P, pivots: r.pivots, rows: r.rows }
}

/// Dense rows Σ_j x_j v_j for each coefficient vector x.
fn combine<F: PrimeField>(coeffs: &[Vec<u64>], vecs: &[SparseCol], len: usize) -> Dense {
    let mut m = Dense::zeros(coeffs.len(), len);
    for (i, x) in coeffs.iter().enumerate() {
        let row = m.row_mut(i);
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            for &(c, v) in &vecs[j] {
                let c = c as usize;
                row[c] = F::add(row[c], F::mul(xj, v));
            }
        }
    }
    m
}

/// The image of {x : Σ_j x_j cons_j = 0} under x ↦ Σ_j x_j gens_j.
pub(crate) struct KernelImage {
    pub ambient_len: usize,
    pub gens: Vec<SVec>,
    pub cons_rows: usize,
    pub cons: Vec<SVec>,
}

impl ModRun for KernelImage {
    type Out = ModImage;
    fn run<F: PrimeField>(&self) -> ModImage {
        let cons: Vec<SparseCol> = self.cons.iter().map(reduce_vec::<F>).collect();
        let ker = kernel_of_columns::<F>(self.cons_rows, cons.len(), SEED, |j| cons[j].clone());
        let gens: Vec<SparseCol> = self.gens.iter().map(reduce_vec::<F>).collect();
        image::<F>(combine::<F>(&ker, &gens, self.ambient_len))
    }
}

/// The span of explicit generators.
pub(crate) struct Span {
    pub ambient_len: usize,
    pub gens: Vec<SVec>,
}

impl ModRun for Span {
    type Out = ModImage;
    fn run<F: PrimeField>(&self) -> ModImage {
        let mut m = Dense::zeros(self.gens.len(), self.ambient_len);
        for (i, g) in self.gens.iter().enumerate() {
            for &(c, v) in g {
                m.set(i, c as usize, F::from_i128(v));
            }
        }
        image::<F>(m)
    }
}

/// Common kernel of D_r = Σ_i η_i ∂^r/∂ξ_i^r, r = 1..m, on the bidegree
/// (m, m) slice for d = 1.
///
/// D_1 preserves every slot degree, so its kernel (the sp(2)-invariants) is
/// found block by block; the remaining operators are imposed on that basis.
pub(crate) struct Harmonic<'a> {
    pub amb: &'a Ambient,
    pub m: usize,
}

/// ξ and η exponents of slot s for d = 1.
#[inline]
fn xe(mono: &Monomial, s: usize) -> (u8, u8) {
    (mono.exp(2 * s), mono.exp(2 * s + 1))
}

/// Image of a monomial under η_s ∂^r/∂ξ_s^r with its integer factor.
fn d_r_term(mono: &Monomial, s: usize, r: usize) -> Option<(Monomial, u64)> {
    let (a, b) = xe(mono, s);
    let a = a as usize;
    if a < r {
        return None;
    }
    let falling: u64 = ((a - r + 1)..=a).map(|x| x as u64).product();
    let out = mono.with_exp(2 * s, (a - r) as u8).with_exp(2 * s + 1, b + 1);
    Some((out, falling))
}

impl Harmonic<'_> {
    /// Basis of ker D_1 as sparse vectors over the ambient.
    fn sp_invariants<F: PrimeField>(&self) -> Vec<SparseCol> {
        let n = self.amb.n;
        let mut blocks: HashMap<Vec<u8>, Vec<u32>> = HashMap::new();
        for (i, mono) in self.amb.cols.iter().enumerate() {
            let key: Vec<u8> = (0..n).map(|s| mono.slot_degree(s + 1, 1) as u8).collect();
            blocks.entry(key).or_default().push(i as u32);
        }
        let mut keys: Vec<&Vec<u8>> = blocks.keys().collect();
        keys.sort_unstable();
        let mut out = Vec::new();
        for key in keys {
            let members = &blocks[key];
            let mut rows: HashMap<Monomial, usize> = HashMap::new();
            let mut entries: Vec<(usize, usize, u64)> = Vec::new();
            for (j, &col) in members.iter().enumerate() {
                let mono = &self.amb.cols[col as usize];
                for s in 0..n {
                    if let Some((o, f)) = d_r_term(mono, s, 1) {
                        let next = rows.len();
                        let r = *rows.entry(o).or_insert(next);
                        entries.push((r, j, f));
                    }
                }
            }
            let mut m = Dense::zeros(rows.len(), members.len());
            for (r, j, f) in entries {
                m.set(r, j, F::add(m.get(r, j), F::reduce(f as u128)));
            }
            let piv = echelon::<F>(&mut m);
            for x in kernel_from_echelon::<F>(&m, &piv) {
                out.push(members.iter().zip(&x).filter(|(_, &v)| v != 0).map(|(&c, &v)| (c, v)).collect());
            }
        }
        out
    }
}

impl ModRun for Harmonic<'_> {
    type Out = ModImage;
    fn run<F: PrimeField>(&self) -> ModImage {
        let basis = self.sp_invariants::<F>();
        let n = self.amb.n;
        let mut index: HashMap<(usize, Monomial), u32> = HashMap::new();
        let mut cols: Vec<SparseCol> = Vec::with_capacity(basis.len());
        for v in &basis {
            let mut acc: HashMap<u32, u64> = HashMap::new();
            for &(c, x) in v {
                let mono = &self.amb.cols[c as usize];
                for r in 2..=self.m {
                    for s in 0..n {
                        if let Some((o, f)) = d_r_term(mono, s, r) {
                            let next = index.len() as u32;
                            let row = *index.entry((r, o)).or_insert(next);
                            let e = acc.entry(row).or_insert(0);
                            *e = F::add(*e, F::mul(x, F::reduce(f as u128)));
                        }
                    }
                }
            }
            let mut col: SparseCol = acc.into_iter().filter(|e| e.1 != 0).collect();
            col.sort_unstable_by_key(|e| e.0);
            cols.push(col);
        }
        let ker = kernel_of_columns::<F>(index.len(), cols.len(), SEED, |j| cols[j].clone());
        image::<F>(combine::<F>(&ker, &basis, self.amb.len()))
    }
}

/// Data for the order filtration of the Moyal span: for each k ≤ kmax, the
/// ambient of order 2k and the vectors σ·Π^k for every σ ∈ S_n, where
/// Π = Σ_{p<q} π^{p,q}.
pub(crate) struct QuantChain {
    pub nperm: usize,
    pub levels: Vec<(Ambient, Vec<SVec>)>,
}

impl ModRun for QuantChain {
    /// One image per order 2k, k = 0..=kmax.
    type Out = Vec<ModImage>;
    fn run<F: PrimeField>(&self) -> Vec<ModImage> {
        let np = self.nperm;
        // current kernel ∩_{j<k} ker T_j, as vectors in F^{n!}
        let mut kernel: Vec<Vec<u64>> = (0..np)
            .map(|i| {
                let mut v = vec![0u64; np];
                v[i] = 1;
                v
            })
            .collect();
        let mut out = Vec::with_capacity(self.levels.len());
        for (amb, perm_vecs) in &self.levels {
            if kernel.is_empty() {
                out.push(ModImage { modulus: F::P, pivots: Vec::new(), rows: Vec::new() });
                continue;
            }
            let pv: Vec<SparseCol> = perm_vecs.iter().map(reduce_vec::<F>).collect();
            let w = combine::<F>(&kernel, &pv, amb.len());
            let cols: Vec<SparseCol> =
                (0..w.rows).map(|i| w.row(i).iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c as u32, v)).collect()).collect();
            let y = kernel_of_columns::<F>(amb.len(), cols.len(), SEED, |j| cols[j].clone());
            let next: Vec<Vec<u64>> = y
                .iter()
                .map(|yv| {
                    let mut v = vec![0u64; np];
                    for (j, &c) in yv.iter().enumerate() {
                        if c != 0 {
                            for (t, &b) in kernel[j].iter().enumerate() {
                                v[t] = F::add(v[t], F::mul(c, b));
                            }
                        }
                    }
                    v
                })
                .collect();
            out.push(image::<F>(w));
            kernel = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polydiff::{harmonic_constraints, Poly};

    #[test]
    fn sp_invariant_counts() {
        // the number of sp(2)-invariants of bidegree (m, m) is the number of
        // semistandard tableaux of shape (m, m) with entries ≤ n
        let amb = Ambient::weight_zero(4, 1, 2);
        let h = Harmonic { amb: &amb, m: 2 };
        assert_eq!(h.sp_invariants::<Mersenne61>().len(), 20);
    }

    #[test]
    fn harmonic_rows_are_killed() {
        let amb = Ambient::weight_zero(3, 1, 2);
        let img = run_mod(&Harmonic { amb: &amb, m: 2 }, PrimeId::M61);
        assert_eq!(img.pivots.len(), 2);
        for row in &img.rows {
            let p: Poly<crate::polydiff::Zp<Mersenne61>> =
                Poly::from_terms(3, 1, row.iter().enumerate().map(|(c, &v)| (amb.cols[c], crate::polydiff::Zp::new(v))));
            for r in 1..=2 {
                assert!(harmonic_constraints(&p, r).unwrap().is_zero());
            }
        }
    }
}
