// SPDX-License-Identifier: MIT

//! Restriction of Inv_n(V) to inputs (v*)^ℓ ⊗ 1^{n−k−ℓ} ⊗ O_V^{⊗k} with
//! v* = y_1, realized on symbols: a term survives when each of the first ℓ
//! slots carries exactly η[·,1] (the derivative ∂/∂y_1, which sends y_1 to
//! 1) and the next n−k−ℓ slots carry nothing. The last k slots become slots
//! 1..k of the result.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ambient::{Ambient, SVec};
use super::build::{run_mod, Span};
use super::{compress, lift, verify, Context, Method, Rigor, SpaceKey, SpaceKind, SubspaceBasis};
use crate::error::{Error, Result};
use crate::linalg::field::{Mersenne61, PrimeField};
use crate::linalg::modp::rank_of_rows;
use crate::polydiff::{var_index, Kind, Monomial, Poly};

/// A weight-ℓ, order-r piece of the pointed invariants on k slots. The
/// basis key records k slots and the half-order m of the parent space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSpace {
    pub k: usize,
    pub d: usize,
    pub weight: usize,
    pub order: usize,
    pub basis: SubspaceBasis,
}

/// The restricted symbol of one term, if it survives.
fn restrict_monomial(m: &Monomial, n: usize, d: usize, k: usize, l: usize) -> Option<Monomial> {
    let w = 2 * d;
    let e = m.exponents();
    for s in 0..l {
        let y1 = var_index(s + 1, Kind::Eta, 1, d);
        if (0..w).any(|c| e[s * w + c] != (s * w + c == y1) as u8) {
            return None;
        }
    }
    if e[l * w..(n - k) * w].iter().any(|&x| x != 0) {
        return None;
    }
    Some(Monomial::from_exponents(&e[(n - k) * w..n * w]))
}

/// Restricted rows as integer polynomials on k slots.
fn restricted_vectors(b: &SubspaceBasis, k: usize, l: usize) -> Vec<Poly<i128>> {
    let (n, d) = (b.key.n, b.key.d);
    b.rows
        .iter()
        .map(|r| {
            let mut p = Poly::zero(k, d);
            for &(c, v) in &r.entries {
                if let Some(m) = restrict_monomial(&b.columns[c as usize], n, d, k, l) {
                    p.add_term(m, v);
                }
            }
            p
        })
        .filter(|p| !p.is_zero())
        .collect()
}

pub fn pointed_restrict_with(ctx: &Context, n: usize, d: usize, k: usize, l: usize, m: usize) -> Result<PointedSpace> {
    if n < k + l || k == 0 {
        return Err(Error::InvalidArgument(format!("pointed restriction needs 1 ≤ k and n ≥ k + ℓ (n = {n}, k = {k}, ℓ = {l})")));
    }
    if l > 2 * m {
        return Err(Error::InvalidArgument(format!("weight {l} exceeds the order {}", 2 * m)));
    }
    let inv = ctx.inv(n, d, m, Method::Default)?;
    let polys = restricted_vectors(&inv, k, l);
    let key = SpaceKey { kind: SpaceKind::Inv, n: k, d, m, method: Method::Default };
    let amb = Ambient::from_monomials(k, d, polys.iter().flat_map(|p| p.terms().map(|(m, _)| *m)));
    let gens: Vec<SVec> = polys.iter().map(|p| amb.vector(p)).collect();
    let problem = Span { ambient_len: amb.len(), gens };
    let check = |rows: &[crate::linalg::exact::IntRow]| problem.gens.iter().all(|g| verify::in_rowspace(g, rows, amb.len()));
    let rows = lift(|p| run_mod(&problem, p), Rigor::Other, false, check)?;
    Ok(PointedSpace { k, d, weight: l, order: 2 * m - l, basis: compress(key, &amb, rows) })
}

pub fn pointed_restrict(n: usize, d: usize, k: usize, l: usize, m: usize) -> Result<PointedSpace> {
    pointed_restrict_with(&Context::new(), n, d, k, l, m)
}

/// Ranks, at a random point of the D_v-variables, of the pointed
/// invariants on k slots obtained from Inv_n(C²) (all weights ℓ ≤ n − k),
/// graded by half of order minus weight. The D_v-variables are the
/// ξ[·,1]: multiplying by them raises order and weight together.
pub fn pointed_generic_profile(ctx: &Context, n: usize, k: usize, max_m: usize) -> Result<Vec<usize>> {
    type F = Mersenne61;
    if n < k || k == 0 {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ n (n = {n}, k = {k})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9017);
    let point: Vec<u64> = (0..k).map(|_| rng.gen_range(1..F::P)).collect();
    // η-degree → specialized vectors keyed by η-exponent pattern
    let mut by_degree: BTreeMap<usize, Vec<BTreeMap<Vec<u8>, u64>>> = BTreeMap::new();
    for m in 0..=max_m {
        for l in 0..=(n - k).min(2 * m) {
            let inv = ctx.inv(n, 1, m, Method::Default)?;
            for p in restricted_vectors(&inv, k, l) {
                let mut v: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
                for (mono, &c) in p.terms() {
                    let e = mono.exponents();
                    let key: Vec<u8> = (0..k).map(|s| e[2 * s + 1]).collect();
                    let val = (0..k).fold(F::from_i128(c), |acc, s| F::mul(acc, F::pow(point[s], e[2 * s] as u64)));
                    let slot = v.entry(key).or_insert(0);
                    *slot = F::add(*slot, val);
                }
                v.retain(|_, x| *x != 0);
                if let (false, Some(deg)) = (v.is_empty(), m.checked_sub(l)) {
                    by_degree.entry(deg).or_default().push(v);
                }
            }
        }
    }
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let mut out = vec![0usize; top + 1];
    for (deg, vecs) in by_degree {
        let mut keys: Vec<&Vec<u8>> = vecs.iter().flat_map(|v| v.keys()).collect();
        keys.sort();
        keys.dedup();
        let index: BTreeMap<&Vec<u8>, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let rows: Vec<Vec<u64>> = vecs
            .iter()
            .map(|v| {
                let mut r = vec![0u64; keys.len()];
                for (kk, &x) in v {
                    r[index[kk]] = x;
                }
                r
            })
            .collect();
        out[deg] = rank_of_rows::<F>(keys.len(), &rows);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_restriction() {
        let ctx = Context::new();
        for m in 0..=3 {
            let p = pointed_restrict_with(&ctx, 4, 1, 4, 0, m).unwrap();
            let inv = ctx.inv(4, 1, m, Method::Default).unwrap();
            assert_eq!(p.basis.rows, inv.rows);
            assert_eq!(p.basis.columns, inv.columns);
            assert_eq!(p.order, 2 * m);
        }
    }

    #[test]
    fn three_slots_generic_profile() {
        let ctx = Context::new();
        assert_eq!(pointed_generic_profile(&ctx, 4, 3, 4).unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(pointed_restrict(3, 1, 3, 1, 1).is_err());
    }
}
