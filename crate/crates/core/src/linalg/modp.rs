// SPDX-License-Identifier: MIT

//! Dense and incremental elimination over a prime field, and kernels of
//! tall sparse matrices given column by column.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fast::{row_echelon_p23, Prime23};
use super::field::PrimeField;

/// Row-major dense matrix of field elements.
#[derive(Clone, Debug)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Dense::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.a[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let c = self.cols;
        let (a, b) = self.a.split_at_mut(hi * c);
        a[lo * c..(lo + 1) * c].swap_with_slice(&mut b[..c]);
    }

    /// Disjoint (target row, pivot row) borrows with target < pivot.
    fn pair_mut_rev(&mut self, target: usize, pivot: usize) -> (&mut [u64], &[u64]) {
        let c = self.cols;
        let (a, b) = self.a.split_at_mut(pivot * c);
        (&mut a[target * c..(target + 1) * c], &b[..c])
    }

    /// Disjoint (pivot row, target row) borrows with pivot < target.
    fn pair_mut(&mut self, pivot: usize, target: usize) -> (&[u64], &mut [u64]) {
        let c = self.cols;
        let (a, b) = self.a.split_at_mut(target * c);
        (&a[pivot * c..(pivot + 1) * c], &mut b[..c])
    }
}

/// dst[k] -= f · src[k].
#[inline]
pub fn axpy_neg<F: PrimeField>(dst: &mut [u64], src: &[u64], f: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = F::sub(*d, F::mul(f, s));
    }
}

/// Number of products that can be summed in a u128 before reduction.
fn panel_width<F: PrimeField>() -> usize {
    let bits = 127 - 2 * F::K;
    (1usize << bits.min(5)).max(1)
}

const CHUNK: usize = 512;

/// In-place echelon form by panels of pivots. Pivot rows occupy the first
/// `rank` rows in processing order; each has a 1 at its pivot column and
/// every later row is zero at that column. Rows inside one panel are also
/// zero at each other's pivots. Returns the pivot columns in processing
/// order (not necessarily increasing).
pub fn row_echelon<F: PrimeField>(m: &mut Dense) -> Vec<usize> {
    let b = panel_width::<F>();
    let cols = m.cols;
    let mut rank = 0;
    let mut active = m.rows;
    let mut pivots = Vec::new();
    let mut acc = vec![0u128; CHUNK];
    while rank < active {
        let mut pcols: Vec<usize> = Vec::new();
        while pcols.len() < b && rank + pcols.len() < active {
            let r = rank + pcols.len();
            for (k, &pc) in pcols.iter().enumerate() {
                let f = m.get(r, pc);
                if f != 0 {
                    let (p, t) = m.pair_mut(rank + k, r);
                    axpy_neg::<F>(t, p, f);
                }
            }
            let Some(c) = m.row(r).iter().position(|&x| x != 0) else {
                active -= 1;
                m.swap_rows(r, active);
                continue;
            };
            let inv = F::inv(m.get(r, c));
            for v in &mut m.row_mut(r)[c..] {
                *v = F::mul(*v, inv);
            }
            for k in 0..pcols.len() {
                let f = m.get(rank + k, c);
                if f != 0 {
                    let (t, p) = m.pair_mut_rev(rank + k, r);
                    axpy_neg::<F>(&mut t[c..], &p[c..], f);
                }
            }
            pcols.push(c);
        }
        let np = pcols.len();
        if np == 0 {
            break;
        }
        let start = rank + np;
        if start < active {
            let panel: Vec<u64> = m.a[rank * cols..start * cols].to_vec();
            let mult: Vec<u64> = (start..active).flat_map(|r| pcols.iter().map(move |&c| (r, c))).map(|(r, c)| m.get(r, c)).collect();
            for c0 in (0..cols).step_by(CHUNK) {
                let c1 = (c0 + CHUNK).min(cols);
                let w = c1 - c0;
                for (ri, r) in (start..active).enumerate() {
                    let fs = &mult[ri * np..(ri + 1) * np];
                    if fs.iter().all(|&f| f == 0) {
                        continue;
                    }
                    let acc = &mut acc[..w];
                    acc.iter_mut().for_each(|x| *x = 0);
                    for (k, &f) in fs.iter().enumerate() {
                        if f == 0 {
                            continue;
                        }
                        let prow = &panel[k * cols + c0..k * cols + c1];
                        for (a, &pv) in acc.iter_mut().zip(prow) {
                            *a += f as u128 * pv as u128;
                        }
                    }
                    let row = &mut m.a[r * cols + c0..r * cols + c1];
                    for (x, &a) in row.iter_mut().zip(acc.iter()) {
                        *x = F::sub(*x, F::reduce(a));
                    }
                }
            }
        }
        pivots.extend(pcols);
        rank = start;
    }
    pivots
}

/// [`row_echelon`], routed through the double-precision kernel when F is
/// the 23-bit prime.
pub fn echelon<F: PrimeField>(m: &mut Dense) -> Vec<usize> {
    if F::P == Prime23::P && m.rows * m.cols >= 4096 {
        let (piv, out) = row_echelon_p23(m.rows, m.cols, &m.a);
        m.a = out;
        return piv;
    }
    row_echelon::<F>(m)
}

/// Reduced row echelon form of the row space of `m`: rows sorted by pivot
/// column, pivot entries 1, zeros above and below every pivot.
pub fn reduced_echelon<F: PrimeField>(mut m: Dense) -> Rref {
    let pivots = echelon::<F>(&mut m);
    let r = pivots.len();
    let cols = m.cols;
    m.a.truncate(r * cols);
    m.rows = r;
    // later rows are already zero at earlier pivots
    for i in (0..r).rev() {
        let p = pivots[i];
        for j in 0..i {
            let f = m.get(j, p);
            if f != 0 {
                let (t, s) = m.pair_mut_rev(j, i);
                axpy_neg::<F>(&mut t[p..], &s[p..], f);
            }
        }
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| pivots[i]);
    Rref { cols, rows: order.iter().map(|&i| m.row(i).to_vec()).collect(), pivots: order.iter().map(|&i| pivots[i]).collect() }
}

/// Basis of {x : M x = 0} from an echelon form produced by [`row_echelon`].
/// The basis vector for free column f has x_f = 1 and zero at other free
/// columns.
pub fn kernel_from_echelon<F: PrimeField>(m: &Dense, pivots: &[usize]) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let b = panel_width::<F>();
    let mut basis = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u64; m.cols];
        x[f] = 1;
        for (i, &p) in pivots.iter().enumerate().rev() {
            let row = m.row(i);
            let mut s: u128 = 0;
            let mut terms = 0;
            for (j, (&rv, &xv)) in row.iter().zip(&x).enumerate() {
                if rv != 0 && xv != 0 && j != p {
                    s += rv as u128 * xv as u128;
                    terms += 1;
                    if terms == b {
                        s = F::reduce(s) as u128;
                        terms = 0;
                    }
                }
            }
            x[p] = F::neg(F::reduce(s));
        }
        basis.push(x);
    }
    basis
}

/// Rank over F of a list of dense rows.
pub fn rank_of_rows<F: PrimeField>(cols: usize, rows: &[Vec<u64>]) -> usize {
    let mut m = Dense::from_rows(cols, rows);
    echelon::<F>(&mut m).len()
}

/// A subspace of F^cols kept in reduced row echelon form, rows sorted by
/// pivot column.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn new(cols: usize) -> Self {
        Rref { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the current rows, in place.
    pub fn reduce<F: PrimeField>(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                axpy_neg::<F>(&mut v[p..], &row[p..], c);
            }
        }
    }

    pub fn contains<F: PrimeField>(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce::<F>(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds v to the span; returns whether the dimension grew.
    pub fn insert<F: PrimeField>(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce::<F>(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = F::inv(v[p]);
        for x in &mut v[p..] {
            *x = F::mul(*x, inv);
        }
        for row in &mut self.rows {
            let c = row[p];
            if c != 0 {
                axpy_neg::<F>(&mut row[p..], &v[p..], c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of v (assumed in the span) with respect to the rows: the
    /// entries of v at the pivot columns.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }
}

/// A sparse column: (row index, value) pairs.
pub type SparseCol = Vec<(u32, u64)>;

/// Kernel of an `nrows × ncols` matrix supplied column by column.
///
/// Tall matrices are compressed by random combinations of row groups; every
/// candidate kernel vector is then checked against the full matrix, and rows
/// that witness a failure are added exactly before retrying. The result is
/// therefore always a subspace of the true kernel mod p, and equals it.
pub fn kernel_of_columns<F: PrimeField>(
    nrows: usize,
    ncols: usize,
    seed: u64,
    mut column: impl FnMut(usize) -> SparseCol,
) -> Vec<Vec<u64>> {
    if ncols == 0 {
        return Vec::new();
    }
    let target = ncols + 24;
    let sketched = nrows > target;
    let groups = if sketched { target } else { nrows };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (group_of, weight): (Vec<u32>, Vec<u64>) = if sketched {
        (0..nrows).map(|_| (rng.gen_range(0..groups) as u32, rng.gen_range(1..F::P))).unzip()
    } else {
        ((0..nrows as u32).collect(), vec![1; nrows])
    };
    let mut extra_rows: Vec<u32> = Vec::new();
    loop {
        let total = groups + extra_rows.len();
        let mut m = Dense::zeros(total, ncols);
        let extra_pos: std::collections::HashMap<u32, usize> = extra_rows.iter().enumerate().map(|(i, &r)| (r, groups + i)).collect();
        for j in 0..ncols {
            for (r, v) in column(j) {
                let g = group_of[r as usize] as usize;
                let cur = m.get(g, j);
                m.set(g, j, F::add(cur, F::mul(weight[r as usize], v)));
                if let Some(&e) = extra_pos.get(&r) {
                    m.set(e, j, F::add(m.get(e, j), v));
                }
            }
        }
        let pivots = echelon::<F>(&mut m);
        let kernel = kernel_from_echelon::<F>(&m, &pivots);
        if kernel.is_empty() || !sketched {
            return kernel;
        }
        // check A·x = 0 for every candidate
        let k = kernel.len();
        let mut image = vec![0u64; nrows * k];
        for j in 0..ncols {
            let col = column(j);
            for (t, x) in kernel.iter().enumerate() {
                let xj = x[j];
                if xj == 0 {
                    continue;
                }
                for &(r, v) in &col {
                    let slot = &mut image[r as usize * k + t];
                    *slot = F::add(*slot, F::mul(v, xj));
                }
            }
        }
        let mut failing: Vec<u32> = Vec::new();
        for r in 0..nrows {
            if image[r * k..(r + 1) * k].iter().any(|&v| v != 0) {
                failing.push(r as u32);
            }
        }
        if failing.is_empty() {
            return kernel;
        }
        let cap = (2 * k).max(16);
        let before = extra_rows.len();
        for r in failing.into_iter() {
            if extra_rows.len() - before >= cap {
                break;
            }
            if !extra_pos.contains_key(&r) {
                extra_rows.push(r);
            }
        }
        if extra_rows.len() == before {
            // every failing row is already present exactly: cannot happen for a
            // correct echelon form
            panic!("kernel verification failed on rows that are already exact");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Mersenne61 as F;

    fn random_dense(rows: usize, cols: usize, rank: usize, seed: u64) -> Vec<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis: Vec<Vec<u64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(0..F::P)).collect()).collect();
        (0..rows)
            .map(|_| {
                let mut v = vec![0u64; cols];
                for b in &basis {
                    let c = rng.gen_range(0..F::P);
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = F::add(*x, F::mul(c, y));
                    }
                }
                v
            })
            .collect()
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let rows = random_dense(12, 9, 5, 1);
        let mut m = Dense::from_rows(9, &rows);
        let piv = row_echelon::<F>(&mut m);
        assert_eq!(piv.len(), 5);
        let ker = kernel_from_echelon::<F>(&m, &piv);
        assert_eq!(ker.len(), 4);
        for x in &ker {
            for r in &rows {
                let s = r.iter().zip(x).fold(0, |acc, (&a, &b)| F::add(acc, F::mul(a, b)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn rref_insert_and_contains() {
        let rows = random_dense(6, 10, 3, 2);
        let mut r = Rref::new(10);
        let grown: usize = rows.iter().map(|v| r.insert::<F>(v.clone()) as usize).sum();
        assert_eq!(grown, 3);
        for v in &rows {
            assert!(r.contains::<F>(v));
        }
        for (i, row) in r.rows.iter().enumerate() {
            assert_eq!(row[r.pivots[i]], 1);
            for (j, &p) in r.pivots.iter().enumerate() {
                if j != i {
                    assert_eq!(row[p], 0);
                }
            }
        }
    }

    #[test]
    fn reduced_echelon_matches_incremental() {
        let rows = random_dense(90, 60, 37, 4);
        let a = reduced_echelon::<F>(Dense::from_rows(60, &rows));
        let mut b = Rref::new(60);
        for v in &rows {
            b.insert::<F>(v.clone());
        }
        assert_eq!(a.pivots, b.pivots);
        assert_eq!(a.rows, b.rows);
        let p23: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % Prime23::P).collect()).collect();
        let c = reduced_echelon::<Prime23>(Dense::from_rows(60, &p23));
        let mut d = Rref::new(60);
        for v in &p23 {
            d.insert::<Prime23>(v.clone());
        }
        assert_eq!(c.rows, d.rows);
    }

    #[test]
    fn sketched_kernel_matches_direct() {
        // tall matrix: 400 rows, 30 columns, rank 22
        let rows = random_dense(400, 30, 22, 3);
        let column =
            |j: usize| -> SparseCol { rows.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(i, r)| (i as u32, r[j])).collect() };
        let ker = kernel_of_columns::<F>(400, 30, 7, column);
        assert_eq!(ker.len(), 8);
        for x in &ker {
            for r in &rows {
                let s = r.iter().zip(x).fold(0, |acc, (&a, &b)| F::add(acc, F::mul(a, b)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn sketch_recovers_from_collisions() {
        // exactly rank-many nonzero rows, so group collisions lose rank and the
        // verification loop has to add rows back
        let mut rows = vec![vec![0u64; 20]; 300];
        for i in 0..20 {
            rows[i * 15][i] = 1 + i as u64;
        }
        let column =
            |j: usize| -> SparseCol { rows.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(i, r)| (i as u32, r[j])).collect() };
        assert!(kernel_of_columns::<F>(300, 20, 11, column).is_empty());
    }
}
