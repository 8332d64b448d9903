// SPDX-License-Identifier: MIT

//! Rational generating functions with hook-length denominators, the
//! cyclic-induction (Kraskiewicz–Weyman) series, verification of closed
//! forms against computed multiplicity tables, and the graded character
//! product of the Poisson operad.

mod dims;
mod kw;
mod library;
mod poisson;
mod table;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

pub use dims::{dim_polynomial, dim_polynomial_ids, poisson_dim};
pub use kw::{kw_series, KwSeries};
pub use library::{paper_series, series_entry, series_ids, Applicability, SeriesEntry};
pub use poisson::{poisson_character_product, poisson_character_product_with, MobiusExponent, PoissonCharacterSeries};
pub use table::{isotypic_prediction, verify_table, Budget, Mismatch, MultiplicityTable, VerifyReport, Window};

/// Which variables the series uses: t alone, or t together with u = st.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesVars {
    T,
    TU,
}

/// N(t, u) / (∏(1 − t^h) ∏(1 − u^h)) with an integer numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    /// (t exponent, u exponent) → coefficient.
    pub numerator: BTreeMap<(u32, u32), BigInt>,
    pub t_factors: Vec<u32>,
    pub u_factors: Vec<u32>,
    pub vars: SeriesVars,
}

impl RationalSeries {
    /// Terms are (coefficient, t exponent, u exponent).
    pub fn new(terms: &[(i64, u32, u32)], t_factors: &[u32], u_factors: &[u32]) -> Result<Self> {
        if t_factors.iter().chain(u_factors).any(|&h| h == 0) {
            return Err(Error::InvalidArgument("denominator factors need h ≥ 1".into()));
        }
        let mut numerator: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for &(c, a, b) in terms {
            *numerator.entry((a, b)).or_insert_with(BigInt::zero) += c;
        }
        numerator.retain(|_, c| !c.is_zero());
        let vars = if u_factors.is_empty() && numerator.keys().all(|&(_, b)| b == 0) { SeriesVars::T } else { SeriesVars::TU };
        Ok(RationalSeries { numerator, t_factors: t_factors.to_vec(), u_factors: u_factors.to_vec(), vars })
    }

    pub fn zero() -> Self {
        RationalSeries { numerator: BTreeMap::new(), t_factors: Vec::new(), u_factors: Vec::new(), vars: SeriesVars::T }
    }

    /// The numerator with t = 1 and u = s, as coefficients of s^0, s^1, ….
    pub fn numerator_at_t1(&self) -> Vec<BigInt> {
        let top = self.numerator.keys().map(|&(_, b)| b as usize).max().unwrap_or(0);
        let mut out = vec![BigInt::zero(); top + 1];
        for (&(_, b), c) in &self.numerator {
            out[b as usize] += c;
        }
        out
    }

    /// Exact coefficients of s^m t^n for m ≤ s_order, n ≤ t_order.
    pub fn expand(&self, t_order: usize, s_order: usize) -> Expansion {
        let s_order = if self.vars == SeriesVars::T { 0 } else { s_order };
        // g[b][a]: coefficient of t^a u^b
        let mut g = vec![vec![BigInt::zero(); t_order + 1]; s_order + 1];
        for (&(a, b), c) in &self.numerator {
            let (a, b) = (a as usize, b as usize);
            if a <= t_order && b <= s_order {
                g[b][a] += c;
            }
        }
        for &h in &self.t_factors {
            let h = h as usize;
            for row in g.iter_mut() {
                for a in h..=t_order {
                    let prev = row[a - h].clone();
                    row[a] += prev;
                }
            }
        }
        for &h in &self.u_factors {
            let h = h as usize;
            for b in h..=s_order {
                let (lo, hi) = g.split_at_mut(b);
                for (x, y) in hi[0].iter_mut().zip(&lo[b - h]) {
                    *x += y;
                }
            }
        }
        let mut coeffs = vec![vec![BigInt::zero(); t_order + 1]; s_order + 1];
        for (b, row) in g.into_iter().enumerate() {
            for (a, c) in row.into_iter().enumerate() {
                if a + b <= t_order {
                    coeffs[b][a + b] = c;
                }
            }
        }
        Expansion { t_order, s_order, coeffs }
    }
}

/// Coefficients of s^m t^n, indexed [m][n].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub t_order: usize,
    pub s_order: usize,
    pub coeffs: Vec<Vec<BigInt>>,
}

impl Expansion {
    pub fn get(&self, m: usize, n: usize) -> BigInt {
        self.coeffs.get(m).and_then(|row| row.get(n)).cloned().unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn geometric_series() {
        let r = RationalSeries::new(&[(1, 0, 0)], &[1], &[]).unwrap();
        assert_eq!(r.expand(6, 0).coeffs[0], vec![int(1); 7]);
    }

    #[test]
    fn two_variable_expansion() {
        // ut / ((1 − t)(1 − u)): s^m t^n has coefficient 1 when 1 ≤ m < n
        let r = RationalSeries::new(&[(1, 1, 1)], &[1], &[1]).unwrap();
        let e = r.expand(8, 8);
        for m in 0..=8 {
            for n in 0..=8 {
                assert_eq!(e.get(m, n), int((1 <= m && m < n) as i64), "s^{m} t^{n}");
            }
        }
    }

    #[test]
    fn zero_factor_rejected() {
        assert!(RationalSeries::new(&[(1, 0, 0)], &[0], &[]).is_err());
    }
}
