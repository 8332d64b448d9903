// SPDX-License-Identifier: MIT

//! One pass/fail line per acceptance criterion. All comparisons are exact;
//! the only tolerances are the runtime limits below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poisson_inv::characters::{cyclic_induced_character, restrict_branch, ClassFunction};
use poisson_inv::cli::{suite_dimpoly, suite_genfun, suite_hilbert, suite_kw, suite_poisson, CheckRecord, Silent};
use poisson_inv::combinat::{factorial, Partition};
use poisson_inv::series::{poisson_dim, Budget};
use poisson_inv::spaces::{
    containment, decompose, graded_character, har_hilbert_closed_form, har_hilbert_numeric, top_half_order_d1, Context, Group, Method,
};
use poisson_inv::Result;

/// Hilbert series for n ≤ 5 and n = 6, m ≤ 3.
const HILBERT_LIMIT: Duration = Duration::from_secs(120);
/// The opt-in n = 6, m = 4 coefficient.
const HILBERT_N6M4_LIMIT: Duration = Duration::from_secs(30 * 60);
const KW_LIMIT: Duration = Duration::from_secs(60);
/// n = 6, m = 4 is cheap enough to include.
const FULL: Budget = Budget { n_max: 6, m_max: 4 };
const HAR_SEEDS: u64 = 20;
const HAR_MAX_N: usize = 6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn from_checks(checks: &[CheckRecord]) -> Outcome {
    let failed: Vec<String> = checks.iter().filter(|c| c.status == "fail").map(|c| format!("{}: {:?}", c.name, c.mismatches)).collect();
    let checked: usize = checks.iter().filter(|c| c.status != "info").map(|c| c.checked).sum();
    if failed.is_empty() {
        outcome(true, format!("{checked} comparisons"))
    } else {
        outcome(false, failed.join("; "))
    }
}

fn criterion1(ctx: &Context) -> Result<Outcome> {
    let start = Instant::now();
    let base = suite_hilbert(ctx, Budget::default(), &Silent)?;
    let base_time = start.elapsed();
    let start = Instant::now();
    let n6 = ctx.inv(6, 1, 4, Method::Default)?.dim();
    let n6_time = start.elapsed();
    let mut o = from_checks(&base);
    if n6 != 224 {
        o = outcome(false, format!("dim Inv_6(C^2)_8 = {n6}, expected 224"));
    }
    if base_time > HILBERT_LIMIT || n6_time > HILBERT_N6M4_LIMIT {
        o = outcome(false, format!("too slow: {base_time:.1?} (limit {HILBERT_LIMIT:?}), n=6 m=4 {n6_time:.1?}"));
    }
    o.detail = format!("{}; base {base_time:.1?}, n=6 m=4 {n6_time:.1?}", o.detail);
    Ok(o)
}

fn criterion2(ctx: &Context) -> Result<Outcome> {
    Ok(from_checks(&suite_dimpoly(ctx, FULL, &Silent)?))
}

fn criterion3(ctx: &Context) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1..=6 {
        let m_top = if n == 6 { 3 } else { top_half_order_d1(n) };
        for m in 0..=m_top {
            let h = ctx.inv(n, 1, m, Method::Harmonic)?;
            let g = ctx.inv(n, 1, m, Method::Graph)?;
            checked += 1;
            if h.columns != g.columns || h.rows != g.rows || !h.is_canonical() {
                bad.push(format!("n={n} m={m}"));
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("{checked} pieces compared; differing: {bad:?}")))
}

fn criterion4(ctx: &Context) -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 1..=5 {
        for m in 0..=top_half_order_d1(n) {
            let (sc, q, inv) = (ctx.sc(n, 1, m)?, ctx.quant(n, 1, m)?, ctx.inv(n, 1, m, Method::Default)?);
            if !containment(&sc, &q)? || !containment(&q, &inv)? {
                bad.push(format!("chain n={n} m={m}"));
            }
            if (n == 3 || 2 * m <= 6) && (sc.dim() != inv.dim() || q.dim() != inv.dim()) {
                bad.push(format!("equality n={n} m={m}"));
            }
        }
    }
    // dim V = 4: 2m ≤ 8
    for n in 1..=4 {
        for m in 0..=3 {
            let (sc, inv) = (ctx.sc(n, 2, m)?, ctx.inv(n, 2, m, Method::Default)?);
            if sc.dim() != inv.dim() || !containment(&sc, &inv)? {
                bad.push(format!("equality d=2 n={n} m={m}"));
            }
        }
    }
    if ctx.sc(4, 1, 4)?.dim() != 0 || ctx.quant(4, 1, 4)?.dim() != 1 {
        bad.push("SC_4(C^2)_8 = 0, Quant_4(C^2)_8 = 1".into());
    }
    let (q5, i5) = (ctx.quant(5, 1, 4)?, ctx.inv(5, 1, 4, Method::Default)?);
    if q5.dim() >= i5.dim() {
        bad.push("Quant_5(C^2)_8 ⊊ Inv_5(C^2)_8".into());
    }
    Ok(outcome(bad.is_empty(), format!("dim Quant_5(C^2)_8 = {}; failures: {bad:?}", q5.dim())))
}

fn criterion5(ctx: &Context) -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 1..=5 {
        let mut total = 0usize;
        let mut chi = ClassFunction::zero(n + 1);
        for m in 0..=top_half_order_d1(n) {
            let q = ctx.quant(n, 1, m)?;
            total += q.dim();
            chi.add_assign(&graded_character(&q, Group::Snp1)?.total());
        }
        if BigUint::from(total) != factorial(n) {
            bad.push(format!("sum dim Quant_{n} = {total}"));
        }
        if chi != cyclic_induced_character(n + 1, 0) {
            bad.push(format!("Quant_{n} character"));
        }
        for m in 0..=top_half_order_d1(n) {
            let b = ctx.inv(n, 1, m, Method::Default)?;
            let up = decompose(&b, Group::Snp1)?;
            let down = decompose(&b, Group::Sn)?;
            let mut restricted: BTreeMap<Partition, u64> = BTreeMap::new();
            for (lambda, &k) in &up {
                for mu in restrict_branch(lambda) {
                    *restricted.entry(mu).or_insert(0) += k;
                }
            }
            if restricted != down {
                bad.push(format!("branching n={n} m={m}"));
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("n <= 5; failures: {bad:?}")))
}

fn criterion6(ctx: &Context) -> Result<Outcome> {
    Ok(from_checks(&suite_genfun(ctx, FULL, &Silent)?))
}

fn criterion7() -> Result<Outcome> {
    let start = Instant::now();
    let mut o = from_checks(&suite_kw()?);
    let t = start.elapsed();
    if t > KW_LIMIT {
        o.pass = false;
    }
    o.detail = format!("{}; {t:.1?} (limit {KW_LIMIT:?})", o.detail);
    Ok(o)
}

fn criterion8(ctx: &Context) -> Result<Outcome> {
    let mut o = from_checks(&suite_poisson(ctx, FULL, &Silent)?);
    let sc = ctx.sc(4, 2, 3)?.dim();
    let lie4 = poisson_dim(4, 3);
    if sc != 6 || lie4 != 6u32.into() {
        o = outcome(false, format!("dim SC_4(C^4)_6 = {sc}, dim Lie_4 = {lie4}"));
    }
    Ok(o)
}

fn random_generic(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    loop {
        let a: Vec<BigRational> = (0..n)
            .map(|_| {
                let mut p = 0i64;
                while p == 0 {
                    p = rng.gen_range(-60..=60);
                }
                BigRational::new(p.into(), rng.gen_range(1i64..=12).into())
            })
            .collect();
        let degenerate =
            (1u32..(1 << n)).any(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| a[i].clone()).sum::<BigRational>().is_zero());
        if !degenerate {
            return a;
        }
    }
}

fn criterion9() -> Result<Outcome> {
    let mut bad = Vec::new();
    for seed in 0..HAR_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 1..=HAR_MAX_N {
            let a = random_generic(&mut rng, n);
            let want: Vec<usize> = har_hilbert_closed_form(n).iter().map(|&x| x as usize).collect();
            let got = har_hilbert_numeric(n, &a, want.len())?;
            if got[..want.len()] != want[..] || got[want.len()] != 0 {
                bad.push(format!("seed {seed} n={n}"));
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("{HAR_SEEDS} seeds x n <= {HAR_MAX_N}; failures: {bad:?}")))
}

fn main() -> ExitCode {
    let ctx = Context::new();
    let criteria: [(&str, Box<dyn Fn() -> Result<Outcome> + '_>); 9] = [
        ("Hilbert series of Inv_n(C^2)", Box::new(|| criterion1(&ctx))),
        ("dimension polynomials", Box::new(|| criterion2(&ctx))),
        ("harmonic and graph constructions agree", Box::new(|| criterion3(&ctx))),
        ("SC ⊆ Quant ⊆ Inv with separations and equalities", Box::new(|| criterion4(&ctx))),
        ("Quant characters and S_(n+1) branching", Box::new(|| criterion5(&ctx))),
        ("generating functions vs multiplicity tables", Box::new(|| criterion6(&ctx))),
        ("cyclic induction series", Box::new(criterion7)),
        ("Poisson operad dimensions and characters", Box::new(|| criterion8(&ctx))),
        ("harmonic Hilbert series on random a", Box::new(criterion9)),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        all &= o.pass;
        println!("criterion {}: {} {name} ({}; {:.1?})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail, start.elapsed());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
