// SPDX-License-Identifier: MIT

//! Multiplicity tables computed from the spaces, and windowed comparison
//! against closed-form series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::RationalSeries;
use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::spaces::{decompose, Context, Group, Method, SpaceKey, SpaceKind};

/// Caps the (n, m) points that may be computed: everything with n < N,
/// and n = N only up to m ≤ M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub n_max: usize,
    pub m_max: usize,
}

impl Budget {
    pub fn allows(&self, n: usize, m: usize) -> bool {
        n < self.n_max || (n == self.n_max && m <= self.m_max)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { n_max: 6, m_max: 3 }
    }
}

impl FromStr for Budget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("budget must look like N:M, got {s:?}"));
        let (n, m) = s.split_once(':').ok_or_else(bad)?;
        Ok(Budget { n_max: n.trim().parse().map_err(|_| bad())?, m_max: m.trim().parse().map_err(|_| bad())? })
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n_max, self.m_max)
    }
}

/// The (n, m) rectangle a comparison ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub n_max: usize,
    pub m_max: usize,
}

/// Multiplicities of ρ_λ[N] in one family of graded pieces, N = n or n+1
/// according to the group, keyed by truncated λ.
#[derive(Clone, Debug)]
pub struct MultiplicityTable {
    pub kind: SpaceKind,
    pub d: usize,
    pub group: Group,
    points: BTreeSet<(usize, usize)>,
    entries: BTreeMap<(Partition, usize, usize), u64>,
}

impl MultiplicityTable {
    pub fn new(kind: SpaceKind, d: usize, group: Group) -> Self {
        MultiplicityTable { kind, d, group, points: BTreeSet::new(), entries: BTreeMap::new() }
    }

    /// Every point of the window the budget allows, in order of n then m.
    pub fn compute(ctx: &Context, kind: SpaceKind, d: usize, group: Group, window: Window, budget: Budget) -> Result<Self> {
        Self::compute_with(ctx, kind, d, group, window, budget, |_, _| {})
    }

    pub fn compute_with(
        ctx: &Context,
        kind: SpaceKind,
        d: usize,
        group: Group,
        window: Window,
        budget: Budget,
        mut on_point: impl FnMut(usize, usize),
    ) -> Result<Self> {
        let mut t = Self::new(kind, d, group);
        for n in 1..=window.n_max {
            for m in 0..=window.m_max {
                if !budget.allows(n, m) {
                    continue;
                }
                on_point(n, m);
                let b = ctx.space(SpaceKey::new(kind, n, d, m, Method::Default)?)?;
                t.insert_decomposition(n, m, &decompose(&b, group)?)?;
            }
        }
        Ok(t)
    }

    /// Records a decomposition keyed by full partitions of n or n+1.
    pub fn insert_decomposition(&mut self, n: usize, m: usize, dec: &BTreeMap<Partition, u64>) -> Result<()> {
        let degree = self.group.degree(n);
        for (full, &k) in dec {
            if full.size() != degree {
                return Err(Error::SizeMismatch { expected: degree, got: full.size() });
            }
            if k > 0 {
                self.entries.insert((full.truncate(), n, m), k);
            }
        }
        self.points.insert((n, m));
        Ok(())
    }

    pub fn is_computed(&self, n: usize, m: usize) -> bool {
        self.points.contains(&(n, m))
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.points.iter().copied()
    }

    /// None when (n, m) was not computed or λ[N] is undefined.
    pub fn get(&self, lambda: &Partition, n: usize, m: usize) -> Option<u64> {
        let defined = self.group.degree(n) >= lambda.size() + lambda.first();
        (defined && self.is_computed(n, m)).then(|| self.entries.get(&(lambda.clone(), n, m)).copied().unwrap_or(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    pub expected: i64,
    pub got: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub lambda: String,
    pub group: Group,
    pub window: Window,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub status: &'static str,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the s^m t^n coefficients of the series with every computed,
/// defined table entry inside the window. Monomials of t-degree below
/// |λ| + λ₁ − 1 are dropped from the series first.
pub fn verify_table(id: &str, series: &RationalSeries, table: &MultiplicityTable, lambda: &Partition, window: Window) -> VerifyReport {
    let e = series.expand(window.n_max, window.m_max);
    let low = (lambda.size() + lambda.first()).saturating_sub(1);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (n, m) in table.points() {
        if n > window.n_max || m > window.m_max || n < low {
            continue;
        }
        let Some(got) = table.get(lambda, n, m) else { continue };
        checked += 1;
        let expected = e.get(m, n).to_i64().unwrap_or(i64::MAX);
        if expected != got as i64 {
            mismatches.push(Mismatch { n, m, expected, got });
        }
    }
    let status = if mismatches.is_empty() { "pass" } else { "fail" };
    VerifyReport { id: id.to_string(), lambda: lambda.to_string(), group: table.group, window, checked, mismatches, status }
}

/// Predicted multiplicity of ρ_λ[n+1] in Inv_n(V)_{2m} for |λ| ≤ 3, valid
/// for every V. None when λ is larger or λ[n+1] is undefined.
pub fn isotypic_prediction(lambda: &Partition, n: usize, m: usize) -> Option<u64> {
    if n + 1 < lambda.size() + lambda.first() {
        return None;
    }
    let f = |x: usize, y: usize| (x / y) as u64;
    let v = match lambda.parts() {
        [] => (m == 0) as u64,
        [1] => 0,
        [1, 1] => (n >= 2 && m % 2 == 1 && m < 2 * (n / 2)) as u64,
        [2] => (n >= 3 && m >= 2 && m.is_multiple_of(2) && m <= 2 * ((n - 1) / 2)) as u64,
        [3] | [1, 1, 1] | [2, 1] if m <= 1 || n <= 3 || m >= n => 0,
        [3] | [1, 1, 1] if m <= n - 2 => f(m, 3),
        [2, 1] if m <= n - 2 => f(2 * m - 1, 3),
        // m = n − 1
        [3] => f(m - 3, 6) + (m - 1).is_multiple_of(6) as u64,
        [1, 1, 1] => f(m - 3, 6) + (m - 1).is_multiple_of(6) as u64 + m.is_multiple_of(2) as u64,
        [2, 1] => f(m - 2, 3),
        _ => return None,
    };
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{series_entry, series_ids, Applicability};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn budget_parsing() {
        let b: Budget = "6:3".parse().unwrap();
        assert_eq!(b, Budget::default());
        assert!(b.allows(5, 40) && b.allows(6, 3) && !b.allows(6, 4) && !b.allows(7, 0));
        assert!("6".parse::<Budget>().is_err());
        assert_eq!(b.to_string(), "6:3");
    }

    #[test]
    fn predictions_agree_with_closed_forms() {
        for id in series_ids() {
            let entry = series_entry(id).unwrap();
            if entry.group != Group::Snp1 || entry.lambda.size() > 3 || entry.applies != Applicability::AnyV {
                continue;
            }
            let e = entry.series.expand(30, 30);
            for n in entry.first_n()..=30 {
                for m in 0..=30 {
                    let want = isotypic_prediction(&entry.lambda, n, m).unwrap();
                    assert_eq!(e.get(m, n), want.into(), "{id} at n = {n}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn undefined_entries_are_absent() {
        let mut t = MultiplicityTable::new(SpaceKind::Inv, 1, Group::Sn);
        let dec = BTreeMap::from([(p(&[2]), 1)]);
        t.insert_decomposition(2, 0, &dec).unwrap();
        assert_eq!(t.get(&p(&[]), 2, 0), Some(1));
        assert_eq!(t.get(&p(&[1]), 2, 0), Some(0));
        assert_eq!(t.get(&p(&[1, 1]), 2, 0), None);
        assert_eq!(t.get(&p(&[]), 2, 1), None);
    }

    #[test]
    fn small_table_matches_series() {
        let ctx = Context::new();
        let w = Window { n_max: 4, m_max: 4 };
        let t = MultiplicityTable::compute(&ctx, SpaceKind::Inv, 1, Group::Snp1, w, Budget::default()).unwrap();
        for (id, lambda) in [("i11pfla+", p(&[1, 1])), ("i2pfla+", p(&[2])), ("ipfla+-1", p(&[1]))] {
            let r = verify_table(id, &series_entry(id).unwrap().series, &t, &lambda, w);
            assert!(r.passed() && r.checked > 0, "{r:?}");
        }
    }
}
