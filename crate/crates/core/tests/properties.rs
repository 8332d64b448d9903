// SPDX-License-Identifier: MIT

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use poisson_inv::characters::{
    character_multiplicity, cyclic_induced_multiplicity, multiplicity, restrict_branch, ClassFunction, KwMethod,
};
use poisson_inv::combinat::{count_syt_by_major_mod, partitions_of, Partition, Permutation};
use poisson_inv::series::{kw_series, Budget, RationalSeries};
use poisson_inv::spaces::{har_hilbert_closed_form, har_hilbert_numeric};

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn nonempty_partition(max: usize) -> impl Strategy<Value = Partition> {
    partition(max).prop_filter("nonempty", |p| !p.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(p in partition(12)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn pad_then_truncate(p in partition(6), extra in 0usize..6) {
        let n = p.size() + p.first() + extra;
        let full = p.pad(n).unwrap();
        prop_assert_eq!(full.size(), n);
        prop_assert_eq!(full.truncate(), p);
    }

    #[test]
    fn major_index_residues_cover_all_tableaux(p in nonempty_partition(8), modulus in 1usize..10) {
        let total: u64 = (0..modulus).map(|r| count_syt_by_major_mod(&p, modulus, r)).sum();
        prop_assert_eq!(BigUint::from(total), p.num_syt());
    }

    #[test]
    fn branching_preserves_dimension(p in nonempty_partition(9)) {
        let down: BigUint = restrict_branch(&p).iter().map(|q| q.num_syt()).sum();
        prop_assert_eq!(down, p.num_syt());
    }

    #[test]
    fn irreducibles_are_orthonormal(a in nonempty_partition(7), b in nonempty_partition(7)) {
        prop_assume!(a.size() == b.size());
        let v = multiplicity(&ClassFunction::irreducible(&a), &b).unwrap();
        let want = if a == b { BigRational::one() } else { BigRational::zero() };
        prop_assert_eq!(v, want);
    }

    #[test]
    fn cycle_type_is_conjugation_invariant(images in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(), mu in nonempty_partition(7)) {
        prop_assume!(mu.size() == 7);
        let tau = Permutation::new(images).unwrap();
        let sigma = Permutation::of_cycle_type(&mu);
        let conj = tau.compose(&sigma).compose(&tau.inverse());
        prop_assert_eq!(conj.cycle_type(), mu);
    }

    #[test]
    fn cyclic_induction_methods_agree(lambda in nonempty_partition(5), c in 0i64..4, extra in 0usize..8) {
        let n = lambda.size() + lambda.first() - 1 + extra;
        let a = cyclic_induced_multiplicity(n, c, &lambda, KwMethod::Character).unwrap();
        let b = cyclic_induced_multiplicity(n, c, &lambda, KwMethod::Tableau).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn regular_character_multiplicities_are_dimensions(p in nonempty_partition(7)) {
        let k = character_multiplicity(&ClassFunction::regular(p.size()), &p).unwrap();
        prop_assert_eq!(BigUint::from(k), p.num_syt());
    }

    #[test]
    fn expansion_inverts_denominators(
        terms in prop::collection::vec((-5i64..=5, 0u32..4, 0u32..4), 0..6),
        t_factors in prop::collection::vec(1u32..4, 0..3),
        u_factors in prop::collection::vec(1u32..4, 0..3),
    ) {
        let r = RationalSeries::new(&terms, &t_factors, &u_factors).unwrap();
        let (to, so) = (10usize, 10usize);
        let e = r.expand(to, so);
        // multiply back by ∏(1 − t^h) ∏(1 − (st)^h) and compare with the numerator
        let mut g = vec![vec![BigInt::zero(); to + 1]; so + 1];
        for m in 0..=so {
            for n in 0..=to {
                g[m][n] = e.get(m, n);
            }
        }
        for &h in &t_factors {
            let h = h as usize;
            for m in 0..=so {
                for n in (h..=to).rev() {
                    let prev = g[m][n - h].clone();
                    g[m][n] -= prev;
                }
            }
        }
        for &h in &u_factors {
            let h = h as usize;
            for m in (h..=so).rev() {
                for n in (h..=to).rev() {
                    let prev = g[m - h][n - h].clone();
                    g[m][n] -= prev;
                }
            }
        }
        for m in 0..=so {
            for n in 0..=to {
                let want = if n >= m {
                    r.numerator.get(&((n - m) as u32, m as u32)).cloned().unwrap_or_else(BigInt::zero)
                } else {
                    BigInt::zero()
                };
                let want = if r.vars == poisson_inv::series::SeriesVars::T && m > 0 { BigInt::zero() } else { want };
                prop_assert_eq!(&g[m][n], &want, "s^{} t^{}", m, n);
            }
        }
    }

    #[test]
    fn budget_round_trips(n in 0usize..20, m in 0usize..20) {
        let b = Budget { n_max: n, m_max: m };
        prop_assert_eq!(b.to_string().parse::<Budget>().unwrap(), b);
        prop_assert!(b.allows(n, m) && !b.allows(n, m + 1) && !b.allows(n + 1, 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn kw_numerator_is_polynomial(lambda in nonempty_partition(4)) {
        prop_assume!(lambda.size() >= 2);
        let s = kw_series(&lambda, 0, 30).unwrap();
        prop_assert!(s.polynomial);
        prop_assert!(s.value_ok());
    }

    #[test]
    fn generic_harmonics_have_coinvariant_hilbert_series(
        nums in prop::collection::vec((1i64..40, 1i64..9), 2..=4),
    ) {
        // positive entries never have a vanishing subset sum
        let a: Vec<BigRational> = nums.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect();
        let n = a.len();
        let want: Vec<usize> = har_hilbert_closed_form(n).iter().map(|&x| x as usize).collect();
        let got = har_hilbert_numeric(n, &a, want.len()).unwrap();
        prop_assert_eq!(&got[..want.len()], &want[..]);
        prop_assert_eq!(got[want.len()], 0);
    }
}
