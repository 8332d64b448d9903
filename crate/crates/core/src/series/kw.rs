// SPDX-License-Identifier: MIT

//! L⁺_{λ,c}(t) = Σ_n dim Hom_{S_{n+1}}(ρ_λ[n+1], Ind_{Z/(n+1)}^{S_{n+1}} χ_c) t^n
//! and its hook-length numerator.

use std::collections::BTreeMap;

use crate::characters::{cyclic_induced_multiplicity, KwMethod};
use crate::combinat::{factorial, Partition};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct KwSeries {
    pub lambda: Partition,
    pub c: i64,
    pub t_order: usize,
    /// n → coefficient of t^n, only for n with λ[n+1] defined.
    pub coefficients: BTreeMap<usize, u64>,
    /// K(t) with L⁺ = t^{|λ|+λ₁−1} K(t) / ∏(1 − t^{h_i}), read off the window.
    pub numerator: Vec<BigInt>,
    /// The product L⁺ ∏(1 − t^{h_i}) vanishes from degree |λ|+λ₁−1+Σh_i
    /// through the end of the window.
    pub polynomial: bool,
    pub value_at_one: BigInt,
    /// (|λ|−1)! where a value at t = 1 is asserted: c = 0 and |λ| ≥ 2.
    pub expected_value_at_one: Option<BigUint>,
}

impl KwSeries {
    pub fn value_ok(&self) -> bool {
        self.expected_value_at_one.as_ref().is_none_or(|v| BigInt::from(v.clone()) == self.value_at_one)
    }
}

pub fn kw_series(lambda: &Partition, c: i64, t_order: usize) -> Result<KwSeries> {
    if lambda.is_empty() {
        return Err(Error::InvalidArgument("the KW series needs |λ| ≥ 1".into()));
    }
    let shift = lambda.size() + lambda.first() - 1;
    let mut coefficients = BTreeMap::new();
    for n in shift..=t_order {
        coefficients.insert(n, cyclic_induced_multiplicity(n, c, lambda, KwMethod::Character)?);
    }
    let hooks = lambda.hook_lengths();
    let mut product = vec![BigInt::zero(); t_order + 1];
    for (&n, &v) in &coefficients {
        product[n] = BigInt::from(v);
    }
    for &h in &hooks {
        for i in (h..=t_order).rev() {
            let prev = product[i - h].clone();
            product[i] -= prev;
        }
    }
    let end = shift + hooks.iter().sum::<usize>();
    let polynomial = product.iter().skip(end).all(|c| c.is_zero());
    let numerator: Vec<BigInt> = product.iter().skip(shift).take(end - shift).cloned().collect();
    let value_at_one = numerator.iter().sum();
    let expected_value_at_one = (c == 0 && lambda.size() >= 2).then(|| factorial(lambda.size() - 1));
    Ok(KwSeries { lambda: lambda.clone(), c, t_order, coefficients, numerator, polynomial, value_at_one, expected_value_at_one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partitions_of;
    use crate::series::paper_series;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_box_trivial_character_vanishes() {
        let s = kw_series(&p(&[1]), 0, 30).unwrap();
        assert!(s.coefficients.values().all(|&v| v == 0));
        assert!(s.numerator.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn small_shapes_value_at_one() {
        let s = kw_series(&p(&[2]), 0, 30).unwrap();
        assert!(s.polynomial);
        assert_eq!(s.value_at_one, BigInt::from(1));
        for k in 2..=4 {
            for lambda in partitions_of(k) {
                let s = kw_series(&lambda, 0, 40).unwrap();
                assert!(s.polynomial && s.value_ok(), "{lambda}: {:?}", s.numerator);
            }
        }
    }

    #[test]
    fn wedge_four_matches_closed_form() {
        let s = kw_series(&p(&[1, 1, 1, 1]), 0, 40).unwrap();
        let closed = paper_series("ht4-wedge4-ind").unwrap().expand(40, 0);
        for (&n, &v) in &s.coefficients {
            assert_eq!(closed.get(0, n), BigInt::from(v), "t^{n}");
        }
        assert_eq!(s.coefficients[&4], 1);
    }

    #[test]
    fn lie_numerators() {
        // with c = 1 the numerator is κ_λ: κ_(2) = κ_(1,1) = t
        for lambda in [p(&[2]), p(&[1, 1])] {
            let s = kw_series(&lambda, 1, 30).unwrap();
            let mut k = s.numerator.clone();
            while k.last().is_some_and(|c| c.is_zero()) {
                k.pop();
            }
            assert_eq!(k, vec![BigInt::zero(), BigInt::from(1)], "{lambda}");
        }
    }
}
