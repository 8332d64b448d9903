// SPDX-License-Identifier: MIT

//! Dimension polynomials in n for fixed order, and the dimension of the
//! order-2m part of the Poisson operad.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::factorial;
use crate::error::{Error, Result};

struct DimPoly {
    id: &'static str,
    /// Human-readable form, for reports.
    formula: &'static str,
    eval: fn(&BigRational) -> BigRational,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// C(x, k) for rational x.
fn choose(x: &BigRational, k: u32) -> BigRational {
    let mut r = BigRational::one();
    for i in 0..k {
        r = r * (x - q(i as i64)) / q(i as i64 + 1);
    }
    r
}

const POLYS: &[DimPoly] = &[
    DimPoly { id: "inv-order2", formula: "C(n,2)", eval: |n| choose(n, 2) },
    DimPoly { id: "inv-c2-order4", formula: "2 C(n+1,4)", eval: |n| q(2) * choose(&(n + q(1)), 4) },
    DimPoly { id: "inv-dim4-order4", formula: "(1/4) C(n,3) (3n-1)", eval: |n| choose(n, 3) * (q(3) * n - q(1)) / q(4) },
    DimPoly { id: "inv-c2-order6", formula: "(1/6) C(n+1,5) (5n+16)", eval: |n| choose(&(n + q(1)), 5) * (q(5) * n + q(16)) / q(6) },
    DimPoly { id: "inv-c4-order6", formula: "(1/3) C(n+1,5) (7n-10)", eval: |n| choose(&(n + q(1)), 5) * (q(7) * n - q(10)) / q(3) },
    DimPoly { id: "inv-dim6-order6", formula: "C(n,4) C(n,2)", eval: |n| choose(n, 4) * choose(n, 2) },
    DimPoly {
        id: "sc-c2-order8",
        formula: "(1/4) C(n+1,6) (n^2+9n+26)",
        eval: |n| choose(&(n + q(1)), 6) * (n * n + q(9) * n + q(26)) / q(4),
    },
    DimPoly {
        id: "quant-c2-order8",
        formula: "(1/24) C(n,5) (n+5) (n^2+5n+10)",
        eval: |n| choose(n, 5) * (n + q(5)) * (n * n + q(5) * n + q(10)) / q(24),
    },
    DimPoly {
        id: "inv-c2-order8",
        formula: "(1/24) C(n+1,5) (n^3+5n^2-10n-80)",
        eval: |n| choose(&(n + q(1)), 5) * (n * n * n + q(5) * n * n - q(10) * n - q(80)) / q(24),
    },
];

/// (id, formula) for every transcribed polynomial.
pub fn dim_polynomial_ids() -> Vec<(&'static str, &'static str)> {
    POLYS.iter().map(|p| (p.id, p.formula)).collect()
}

pub fn dim_polynomial(id: &str, n: i64) -> Result<BigRational> {
    let p = POLYS.iter().find(|p| p.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
    Ok((p.eval)(&q(n)))
}

/// dim (P_n)_{2m} = n! Σ 1 / ((n − m − Σ i_j)! ∏_j (j+1)^{i_j} i_j!) over
/// i_1 + 2 i_2 + ⋯ = m: a Poisson monomial with m brackets is a product of
/// Lie words of lengths j+1, one for each part j of a partition of m.
pub fn poisson_dim(n: usize, m: usize) -> BigUint {
    fn walk(rest: usize, max_part: usize, n: usize, m: usize, words: usize, den: BigRational, total: &mut BigRational) {
        if rest == 0 {
            if n >= m + words {
                let free = BigRational::from_integer(factorial(n - m - words).into());
                *total += (den * free).recip();
            }
            return;
        }
        for j in (1..=max_part.min(rest)).rev() {
            let mut den = den.clone();
            let mut i = 0;
            let mut r = rest;
            while r >= j {
                r -= j;
                i += 1;
                // factor (j+1) per word and i! for equal words
                den = den * q(j as i64 + 1) * q(i as i64);
                walk(r, j - 1, n, m, words + i, den.clone(), total);
            }
        }
    }
    let mut total = BigRational::zero();
    walk(m, m, n, m, 0, BigRational::one(), &mut total);
    let v = total * BigRational::from_integer(factorial(n).into());
    debug_assert!(v.is_integer());
    v.to_integer().to_biguint().expect("nonnegative")
}
