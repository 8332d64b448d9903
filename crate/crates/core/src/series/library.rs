// SPDX-License-Identifier: MIT

//! Built-in closed forms for the isotypic generating functions
//!
//! I_λ(s, t) = Σ dim Hom_{S_n}(ρ_λ[n], Inv_n(V)_{2m}) s^m t^n and
//! I⁺_λ(s, t) = Σ dim Hom_{S_{n+1}}(ρ_λ[n+1], Inv_n(V)_{2m}) s^m t^n,
//!
//! written in t and u = st, plus one single-variable series for the
//! cyclic induction.

use serde::Serialize;

use super::RationalSeries;
use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::spaces::Group;

/// The symplectic spaces a closed form is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Applicability {
    AnyV,
    /// V = C² only.
    C2,
    /// dim V ≥ 4.
    DimAtLeast4,
    /// A statement about Ind_{Z/(n+1)}^{S_{n+1}} C, not about a space.
    CyclicInduction,
}

impl Applicability {
    pub fn admits(&self, d: usize) -> bool {
        match self {
            Applicability::AnyV => true,
            Applicability::C2 => d == 1,
            Applicability::DimAtLeast4 => d >= 2,
            Applicability::CyclicInduction => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesEntry {
    pub id: &'static str,
    pub lambda: Partition,
    pub group: Group,
    pub applies: Applicability,
    pub series: RationalSeries,
}

impl SeriesEntry {
    /// Smallest n at which the series has a defined coefficient.
    pub fn first_n(&self) -> usize {
        let need = self.lambda.size() + self.lambda.first();
        match self.group {
            Group::Sn => need,
            Group::Snp1 => need.saturating_sub(1),
        }
    }
}

type Terms = &'static [(i64, u32, u32)];

struct Raw {
    id: &'static str,
    lambda: &'static [usize],
    group: Group,
    applies: Applicability,
    terms: Terms,
    t_factors: &'static [u32],
    u_factors: &'static [u32],
}

// Closed forms as printed; a factor (1 − u) common to the numerator and the
// hook-length denominator is cancelled.
const LIBRARY: &[Raw] = &[
    Raw {
        id: "ifla-empty",
        lambda: &[],
        group: Group::Sn,
        applies: Applicability::AnyV,
        terms: &[(1, 0, 0)],
        t_factors: &[1],
        u_factors: &[],
    },
    Raw {
        id: "ifla-1",
        lambda: &[1],
        group: Group::Sn,
        applies: Applicability::AnyV,
        terms: &[(1, 1, 1)],
        t_factors: &[1],
        u_factors: &[1],
    },
    Raw {
        id: "ifla-2",
        lambda: &[2],
        group: Group::Sn,
        applies: Applicability::AnyV,
        terms: &[(2, 2, 2), (1, 1, 4), (-1, 2, 4)],
        t_factors: &[1],
        u_factors: &[1, 2],
    },
    Raw {
        id: "ifla-11",
        lambda: &[1, 1],
        group: Group::Sn,
        applies: Applicability::AnyV,
        terms: &[(1, 2, 1), (1, 1, 3)],
        t_factors: &[1],
        u_factors: &[1, 2],
    },
    Raw {
        id: "ipfla+-empty",
        lambda: &[],
        group: Group::Snp1,
        applies: Applicability::AnyV,
        terms: &[(1, 0, 0)],
        t_factors: &[1],
        u_factors: &[],
    },
    Raw { id: "ipfla+-1", lambda: &[1], group: Group::Snp1, applies: Applicability::AnyV, terms: &[], t_factors: &[], u_factors: &[] },
    Raw {
        id: "i2pfla+",
        lambda: &[2],
        group: Group::Snp1,
        applies: Applicability::AnyV,
        terms: &[(1, 1, 2)],
        t_factors: &[1],
        u_factors: &[2],
    },
    Raw {
        id: "i11pfla+",
        lambda: &[1, 1],
        group: Group::Snp1,
        applies: Applicability::AnyV,
        terms: &[(1, 1, 1)],
        t_factors: &[1],
        u_factors: &[2],
    },
    Raw {
        id: "i3pfla+",
        lambda: &[3],
        group: Group::Snp1,
        applies: Applicability::AnyV,
        terms: &[(1, 2, 3), (1, 2, 4), (1, 1, 7), (-1, 2, 7)],
        t_factors: &[1],
        u_factors: &[2, 3],
    },
    Raw {
        id: "i111pfla+",
        lambda: &[1, 1, 1],
        group: Group::Snp1,
        applies: Applicability::AnyV,
        terms: &[(1, 2, 3), (1, 1, 4)],
        t_factors: &[1],
        u_factors: &[2, 3],
    },
    Raw {
        id: "i21pfla+",
        lambda: &[2, 1],
        group: Group::Snp1,
        applies: Applicability::AnyV,
        terms: &[(1, 2, 2), (1, 2, 4), (1, 1, 5), (-1, 2, 5)],
        t_factors: &[1],
        u_factors: &[1, 3],
    },
    // J⁺ (1 − u) over (1 − t)(1 − u)(1 − u²)(1 − u³)(1 − u⁴), the (1 − u) cancelled
    Raw {
        id: "i1111pfla+",
        lambda: &[1, 1, 1, 1],
        group: Group::Snp1,
        applies: Applicability::C2,
        terms: &[(1, 0, 4), (1, 2, 4), (1, 1, 6), (1, 3, 6), (1, 2, 7), (1, 1, 8)],
        t_factors: &[1],
        u_factors: &[2, 3, 4],
    },
    Raw {
        id: "i1111pfla+-dim4",
        lambda: &[1, 1, 1, 1],
        group: Group::Snp1,
        applies: Applicability::DimAtLeast4,
        terms: &[(1, 2, 2), (1, 2, 4), (1, 1, 6), (1, 3, 6), (1, 2, 7), (1, 1, 8)],
        t_factors: &[1],
        u_factors: &[2, 3, 4],
    },
    Raw {
        id: "ht4-wedge4-ind",
        lambda: &[1, 1, 1, 1],
        group: Group::Snp1,
        applies: Applicability::CyclicInduction,
        terms: &[(1, 4, 0), (1, 6, 0), (1, 7, 0), (3, 9, 0)],
        t_factors: &[1, 2, 3, 4],
        u_factors: &[],
    },
];

pub fn series_ids() -> Vec<&'static str> {
    LIBRARY.iter().map(|r| r.id).collect()
}

pub fn series_entry(id: &str) -> Result<SeriesEntry> {
    let raw = LIBRARY.iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
    Ok(SeriesEntry {
        id: raw.id,
        lambda: Partition::new(raw.lambda.to_vec())?,
        group: raw.group,
        applies: raw.applies,
        series: RationalSeries::new(raw.terms, raw.t_factors, raw.u_factors)?,
    })
}

pub fn paper_series(id: &str) -> Result<RationalSeries> {
    Ok(series_entry(id)?.series)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn every_id_loads() {
        for id in series_ids() {
            series_entry(id).unwrap();
        }
        assert!(matches!(paper_series("nope"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn documented_coefficients() {
        let e = paper_series("ifla-1").unwrap().expand(4, 4);
        assert_eq!(e.get(1, 2), BigInt::from(1));
        let e = paper_series("i21pfla+").unwrap().expand(6, 4);
        assert_eq!(e.get(2, 4), BigInt::from(1));
        let e = paper_series("ifla-empty").unwrap().expand(5, 0);
        assert!(e.coeffs[0].iter().all(|c| *c == BigInt::from(1)));
    }

    #[test]
    fn height_four_numerators_at_t1() {
        // with the (1 − u) cancelled, the stored numerator is J⁺ itself
        for (id, want) in [("i1111pfla+", &[0, 0, 0, 0, 2, 0, 2, 1, 1][..]), ("i1111pfla+-dim4", &[0, 0, 1, 0, 1, 0, 2, 1, 1][..])] {
            let r = paper_series(id).unwrap();
            assert_eq!(r.numerator_at_t1(), ints(want), "{id}");
        }
    }
}
