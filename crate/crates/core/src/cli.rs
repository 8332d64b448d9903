// SPDX-License-Identifier: MIT

//! Command-line frontend: `dims`, `decompose` and `verify`.
//!
//! Exit codes: 0 success, 1 verification mismatch (or a failed structural
//! check), 2 usage, 3 environment (cache not writable).

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{cyclic_induced_multiplicity, KwMethod};
use crate::combinat::{partitions_of, Partition};
use crate::error::{Error, Result};
use crate::series::{
    dim_polynomial, isotypic_prediction, kw_series, paper_series, poisson_character_product, series_entry, series_ids, verify_table,
    Applicability, Budget, MultiplicityTable, Window,
};
use crate::spaces::{containment, decompose, top_half_order_d1, Context, Group, Method, SpaceKey, SpaceKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ENV: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "poisson-inv", version, about = "Invariant polydifferential operators on symplectic vector spaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest (n, m) to compute, as N:M: all of n < N, and n = N up to m ≤ M.
    #[arg(long, default_value = "6:3", global = true)]
    pub budget: Budget,
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the graded pieces of Inv, Quant or SC.
    Dims(DimsArgs),
    /// Irreducible constituents of one graded piece.
    Decompose(DecomposeArgs),
    /// Run a regression suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: SpaceKind,
    #[arg(long)]
    pub n: usize,
    /// V = C^{2d}.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Largest half-order; required for d ≥ 2.
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long, value_parser = parse_method, default_value = "default")]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: SpaceKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Half-order: the piece of order 2m.
    #[arg(long)]
    pub m: usize,
    /// `n` for S_n, `n+1` for S_{n+1}.
    #[arg(long, value_parser = parse_group, default_value = "n")]
    pub group: Group,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Figure1,
    Genfun,
    Kw,
    Chain,
    Dimpoly,
    Poisson,
    All,
}

impl Suite {
    fn name(&self) -> &'static str {
        match self {
            Suite::Figure1 => "figure1",
            Suite::Genfun => "genfun",
            Suite::Kw => "kw",
            Suite::Chain => "chain",
            Suite::Dimpoly => "dimpoly",
            Suite::Poisson => "poisson",
            Suite::All => "all",
        }
    }
}

fn parse_kind(s: &str) -> std::result::Result<SpaceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> std::result::Result<Group, String> {
    match s.to_ascii_lowercase().as_str() {
        "n" | "sn" => Ok(Group::Sn),
        "n+1" | "snp1" => Ok(Group::Snp1),
        _ => Err(format!("group must be n or n+1, got {s:?}")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Cache(_) | Error::Io(_) => EXIT_ENV,
        Error::UnstableAction(_) | Error::NonIntegerMultiplicity { .. } | Error::Reconstruction(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Creates the cache directory and checks that a file can be written there.
pub fn check_cache_writable(dir: &Path) -> Result<()> {
    let fail = |e: io::Error| Error::Cache(format!("{} is not writable: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(fail)?;
    let probe = dir.join(format!(".probe-{}", std::process::id()));
    fs::write(&probe, b"").map_err(fail)?;
    fs::remove_file(&probe).map_err(fail)?;
    Ok(())
}

struct Progress {
    quiet: bool,
}

/// Runs a parsed command, writing data to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    let dir = crate::spaces::cache::cache_dir_from_env();
    if let Err(e) = check_cache_writable(&dir) {
        eprintln!("error: {e}");
        return EXIT_ENV;
    }
    let ctx = Context::with_cache_dir(dir);
    let progress = Progress { quiet: cli.quiet };
    let result = match &cli.command {
        Command::Dims(a) => cmd_dims(&ctx, a, cli.budget, &progress).and_then(|r| emit_dims(&r, cli.format, out).map(|_| EXIT_OK)),
        Command::Decompose(a) => cmd_decompose(&ctx, a, cli.budget).and_then(|r| emit_decompose(&r, cli.format, out).map(|_| EXIT_OK)),
        Command::Verify(a) => cmd_verify(&ctx, a.suite, cli.budget, &progress).and_then(|r| {
            emit_verify(&r, cli.format, out)?;
            Ok(if r.status == "pass" { EXIT_OK } else { EXIT_MISMATCH })
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimEntry {
    pub m: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsRecord {
    pub kind: String,
    pub n: usize,
    pub d: usize,
    pub dims: Vec<DimEntry>,
}

pub fn cmd_dims(ctx: &Context, a: &DimsArgs, budget: Budget, progress: &dyn ProgressSink) -> Result<DimsRecord> {
    let key = SpaceKey::new(a.kind, a.n, a.d, 0, a.method)?;
    let m_max = match (a.m_max, a.d) {
        (Some(m), _) => m,
        (None, 1) if a.n == 1 => 0,
        (None, 1) => top_half_order_d1(a.n),
        (None, _) => return Err(Error::InvalidArgument("--m-max is required for d ≥ 2".into())),
    };
    if !budget.allows(a.n, 0) {
        return Err(Error::Budget(format!("n = {} is outside the budget {budget}", a.n)));
    }
    let mut dims = Vec::new();
    for m in 0..=m_max {
        if !budget.allows(a.n, m) {
            progress.note(&format!("stopping at m = {}: the budget {budget} excludes n = {}, m = {m}", m - 1, a.n));
            break;
        }
        progress.note(&format!("{} n = {} d = {} m = {m}", a.kind, a.n, a.d));
        let b = ctx.space(SpaceKey { m, ..key })?;
        dims.push(DimEntry { m, dim: b.dim() });
    }
    Ok(DimsRecord { kind: a.kind.to_string(), n: a.n, d: a.d, dims })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeEntry {
    /// Truncated diagram: the first row removed.
    pub lambda: String,
    pub full_lambda: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeRecord {
    pub kind: String,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub group: String,
    pub entries: Vec<DecomposeEntry>,
}

pub fn cmd_decompose(ctx: &Context, a: &DecomposeArgs, budget: Budget) -> Result<DecomposeRecord> {
    if !budget.allows(a.n, a.m) {
        return Err(Error::Budget(format!("n = {}, m = {} is outside the budget {budget}", a.n, a.m)));
    }
    let b = ctx.space(SpaceKey::new(a.kind, a.n, a.d, a.m, Method::Default)?)?;
    let dec = decompose(&b, a.group)?;
    let mut entries: Vec<DecomposeEntry> = dec
        .iter()
        .map(|(full, &k)| DecomposeEntry { lambda: full.truncate().to_string(), full_lambda: full.to_string(), multiplicity: k })
        .collect();
    entries.reverse();
    let group = match a.group {
        Group::Sn => "n",
        Group::Snp1 => "n+1",
    };
    Ok(DecomposeRecord { kind: a.kind.to_string(), n: a.n, d: a.d, m: a.m, group: group.into(), entries })
}

/// Where suites report what they are computing.
pub trait ProgressSink {
    fn note(&self, msg: &str);
}

impl ProgressSink for Progress {
    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

/// Discards progress messages.
pub struct Silent;

impl ProgressSink for Silent {
    fn note(&self, _: &str) {}
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub name: String,
    pub window: String,
    pub checked: usize,
    /// "pass", "fail", or "info" for observations that assert nothing.
    pub status: &'static str,
    pub mismatches: Vec<Value>,
}

impl CheckRecord {
    fn new(suite: &'static str, name: impl Into<String>, window: impl Into<String>, checked: usize, mismatches: Vec<Value>) -> Self {
        let status = if mismatches.is_empty() { "pass" } else { "fail" };
        CheckRecord { suite, name: name.into(), window: window.into(), checked, status, mismatches }
    }

    fn info(suite: &'static str, name: impl Into<String>, window: impl Into<String>, checked: usize, observed: Vec<Value>) -> Self {
        CheckRecord { suite, name: name.into(), window: window.into(), checked, status: "info", mismatches: observed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub budget: String,
    pub checks: Vec<CheckRecord>,
    pub status: &'static str,
}

pub fn cmd_verify(ctx: &Context, suite: Suite, budget: Budget, progress: &dyn ProgressSink) -> Result<SuiteReport> {
    let suites = match suite {
        Suite::All => vec![Suite::Figure1, Suite::Dimpoly, Suite::Chain, Suite::Genfun, Suite::Kw, Suite::Poisson],
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        progress.note(&format!("suite {}", s.name()));
        checks.extend(match s {
            Suite::Figure1 => suite_hilbert(ctx, budget, progress)?,
            Suite::Dimpoly => suite_dimpoly(ctx, budget, progress)?,
            Suite::Chain => suite_chain(ctx, budget, progress)?,
            Suite::Genfun => suite_genfun(ctx, budget, progress)?,
            Suite::Kw => suite_kw()?,
            Suite::Poisson => suite_poisson(ctx, budget, progress)?,
            Suite::All => unreachable!(),
        });
    }
    let status = if checks.iter().any(|c| c.status == "fail") { "fail" } else { "pass" };
    Ok(SuiteReport { suite: suite.name(), budget: budget.to_string(), checks, status })
}

/// Hilbert series of Inv_n(C²), coefficients of t^{2m}.
pub const HILBERT_C2: [&[usize]; 6] = [&[1], &[1, 1], &[1, 3, 2], &[1, 6, 10, 6, 1], &[1, 10, 30, 41, 30, 9], &[1, 15, 70, 161, 224]];

pub fn suite_hilbert(ctx: &Context, budget: Budget, progress: &dyn ProgressSink) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    for (i, row) in HILBERT_C2.iter().enumerate() {
        let n = i + 1;
        // rows n ≤ 5 are complete, so every higher order must vanish
        let m_top = if n <= 5 { top_half_order_d1(n).max(row.len() - 1) } else { row.len() - 1 };
        let mut mismatches = Vec::new();
        let mut checked = 0;
        for m in 0..=m_top {
            if !budget.allows(n, m) {
                break;
            }
            progress.note(&format!("figure1: inv n = {n} m = {m}"));
            let got = ctx.inv(n, 1, m, Method::Default)?.dim();
            let want = row.get(m).copied().unwrap_or(0);
            checked += 1;
            if got != want {
                mismatches.push(json!({"m": m, "expected": want, "got": got}));
            }
        }
        let last = (0..=m_top).take_while(|&m| budget.allows(n, m)).last().unwrap_or(0);
        checks.push(CheckRecord::new("figure1", format!("Inv_{n}(C^2)"), format!("m <= {last}"), checked, mismatches));
    }
    Ok(checks)
}

fn poly_at(id: &str, n: usize) -> Result<i64> {
    let v = dim_polynomial(id, n as i64)?;
    if !v.is_integer() {
        return Err(Error::InvalidArgument(format!("{id}({n}) = {v} is not an integer")));
    }
    Ok(i64::try_from(v.to_integer()).unwrap_or(i64::MAX))
}

/// (polynomial id, kind, d, m, n range asserted).
const DIMPOLY_CHECKS: &[(&str, SpaceKind, usize, usize, usize, usize)] = &[
    ("inv-order2", SpaceKind::Inv, 1, 1, 1, 6),
    ("inv-order2", SpaceKind::Inv, 2, 1, 1, 5),
    ("inv-c2-order4", SpaceKind::Inv, 1, 2, 1, 6),
    ("inv-dim4-order4", SpaceKind::Inv, 2, 2, 1, 5),
    ("inv-dim4-order4", SpaceKind::Inv, 3, 2, 1, 4),
    ("inv-c2-order6", SpaceKind::Inv, 1, 3, 1, 6),
    ("inv-c4-order6", SpaceKind::Inv, 2, 3, 1, 5),
    ("inv-dim6-order6", SpaceKind::Inv, 3, 3, 1, 4),
    ("inv-c2-order8", SpaceKind::Inv, 1, 4, 1, 6),
    ("sc-c2-order8", SpaceKind::Sc, 1, 4, 1, 5),
];

/// Stated for large n and already off at n = 4 (Quant_4(C²)_8 ≠ 0), so
/// compared for information only.
const DIMPOLY_INFO: &[(&str, SpaceKind)] = &[("quant-c2-order8", SpaceKind::Quant)];

pub fn suite_dimpoly(ctx: &Context, budget: Budget, progress: &dyn ProgressSink) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    for &(id, kind, d, m, n_lo, n_hi) in DIMPOLY_CHECKS {
        let mut mismatches = Vec::new();
        let mut checked = 0;
        let mut last = 0;
        for n in n_lo..=n_hi {
            if !budget.allows(n, m) {
                continue;
            }
            progress.note(&format!("dimpoly: {kind} n = {n} d = {d} m = {m}"));
            let got = ctx.space(SpaceKey::new(kind, n, d, m, Method::Default)?)?.dim();
            let want = poly_at(id, n)?;
            checked += 1;
            last = n;
            if got as i64 != want {
                mismatches.push(json!({"n": n, "expected": want, "got": got}));
            }
        }
        checks.push(CheckRecord::new("dimpoly", format!("{id} vs {kind} d={d}"), format!("n <= {last}, m = {m}"), checked, mismatches));
    }
    for &(id, kind) in DIMPOLY_INFO {
        let mut observed = Vec::new();
        for n in 1..=5 {
            progress.note(&format!("dimpoly: {kind} n = {n} d = 1 m = 4"));
            let got = ctx.space(SpaceKey::new(kind, n, 1, 4, Method::Default)?)?.dim();
            observed.push(json!({"n": n, "formula": poly_at(id, n)?, "computed": got}));
        }
        checks.push(CheckRecord::info("dimpoly", format!("{id} vs {kind} d=1"), "n <= 5, m = 4", observed.len(), observed));
    }
    Ok(checks)
}

pub fn suite_chain(ctx: &Context, budget: Budget, progress: &dyn ProgressSink) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let mut chain_bad = Vec::new();
    let mut equal_bad = Vec::new();
    let (mut chain_checked, mut equal_checked) = (0, 0);
    for n in 1..=5 {
        for m in 0..=top_half_order_d1(n) {
            if !budget.allows(n, m) {
                continue;
            }
            progress.note(&format!("chain: n = {n} m = {m}"));
            let (sc, quant, inv) = (ctx.sc(n, 1, m)?, ctx.quant(n, 1, m)?, ctx.inv(n, 1, m, Method::Default)?);
            chain_checked += 1;
            if !containment(&sc, &quant)? || !containment(&quant, &inv)? {
                chain_bad.push(json!({"n": n, "m": m}));
            }
            // SC = Quant = Inv when n = 3 or 2m ≤ dim V + 4
            if n == 3 || 2 * m <= 6 {
                equal_checked += 1;
                if sc.dim() != inv.dim() || quant.dim() != inv.dim() {
                    equal_bad.push(json!({"n": n, "m": m, "sc": sc.dim(), "quant": quant.dim(), "inv": inv.dim()}));
                }
            }
        }
    }
    checks.push(CheckRecord::new("chain", "SC ⊆ Quant ⊆ Inv, d=1", "n <= 5, all m", chain_checked, chain_bad));
    checks.push(CheckRecord::new("chain", "SC = Quant = Inv for n = 3 or 2m <= dim V + 4", "n <= 5", equal_checked, equal_bad));

    let (sc4, q4) = (ctx.sc(4, 1, 4)?.dim(), ctx.quant(4, 1, 4)?.dim());
    let bad = if sc4 == 0 && q4 == 1 { vec![] } else { vec![json!({"sc": sc4, "quant": q4})] };
    checks.push(CheckRecord::new("chain", "SC_4(C^2)_8 = 0, dim Quant_4(C^2)_8 = 1", "n = 4, m = 4", 1, bad));
    let (q5, i5) = (ctx.quant(5, 1, 4)?, ctx.inv(5, 1, 4, Method::Default)?);
    let bad = if q5.dim() < i5.dim() && containment(&q5, &i5)? { vec![] } else { vec![json!({"quant": q5.dim(), "inv": i5.dim()})] };
    checks.push(CheckRecord::new("chain", "Quant_5(C^2)_8 strictly inside Inv_5(C^2)_8", "n = 5, m = 4", 1, bad));
    checks.push(CheckRecord::info("chain", "dim Quant_5(C^2)_8", "n = 5, m = 4", 1, vec![json!({"dim": q5.dim()})]));
    Ok(checks)
}

/// Truncated diagrams covered by the isotypic order patterns.
fn small_lambdas() -> Vec<Partition> {
    (0..=3).flat_map(partitions_of).collect()
}

pub fn suite_genfun(ctx: &Context, budget: Budget, progress: &dyn ProgressSink) -> Result<Vec<CheckRecord>> {
    let window = Window { n_max: 6, m_max: 4 };
    let mut tables: BTreeMap<(usize, Group), MultiplicityTable> = BTreeMap::new();
    let mut table = |d: usize, group: Group, window: Window| -> Result<MultiplicityTable> {
        if let Some(t) = tables.get(&(d, group)) {
            return Ok(t.clone());
        }
        let t = MultiplicityTable::compute_with(ctx, SpaceKind::Inv, d, group, window, budget, |n, m| {
            progress.note(&format!("genfun: decompose inv n = {n} d = {d} m = {m} under {group:?}"));
        })?;
        tables.insert((d, group), t.clone());
        Ok(t)
    };
    let mut checks = Vec::new();
    for id in series_ids() {
        let entry = series_entry(id)?;
        let (d, w) = match entry.applies {
            Applicability::AnyV | Applicability::C2 => (1, window),
            Applicability::DimAtLeast4 => (2, Window { n_max: 5, m_max: 3 }),
            Applicability::CyclicInduction => continue,
        };
        let t = table(d, entry.group, w)?;
        let r = verify_table(id, &entry.series, &t, &entry.lambda, w);
        let mismatches = r.mismatches.iter().map(|m| serde_json::to_value(m).expect("serializable")).collect();
        checks.push(CheckRecord::new(
            "genfun",
            format!("{id} (lambda = {}, d = {d})", entry.lambda),
            format!("n <= {}, m <= {}", w.n_max, w.m_max),
            r.checked,
            mismatches,
        ));
    }
    let t = table(1, Group::Snp1, window)?;
    for lambda in small_lambdas() {
        let mut checked = 0;
        let mut mismatches = Vec::new();
        for (n, m) in t.points() {
            let (Some(got), Some(want)) = (t.get(&lambda, n, m), isotypic_prediction(&lambda, n, m)) else { continue };
            checked += 1;
            if got != want {
                mismatches.push(json!({"n": n, "m": m, "expected": want, "got": got}));
            }
        }
        checks.push(CheckRecord::new("genfun", format!("order pattern of lambda = {lambda}"), "n <= 6, m <= 4", checked, mismatches));
    }
    Ok(checks)
}

pub const KW_T_ORDER: usize = 40;

pub fn suite_kw() -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let lambdas: Vec<Partition> = (1..=4).flat_map(partitions_of).collect();
    let mut bad = Vec::new();
    let mut checked = 0;
    for lambda in &lambdas {
        for c in [0, 1] {
            for n in (lambda.size() + lambda.first() - 1)..=12 {
                let a = cyclic_induced_multiplicity(n, c, lambda, KwMethod::Character)?;
                let b = cyclic_induced_multiplicity(n, c, lambda, KwMethod::Tableau)?;
                checked += 1;
                if a != b {
                    bad.push(json!({"lambda": lambda.to_string(), "c": c, "n": n, "character": a, "tableau": b}));
                }
            }
        }
    }
    checks.push(CheckRecord::new("kw", "tableau count = character formula", "|lambda| <= 4, c in {0,1}, n <= 12", checked, bad));
    let mut bad = Vec::new();
    for lambda in &lambdas {
        let s = kw_series(lambda, 0, KW_T_ORDER)?;
        if !s.polynomial || !s.value_ok() {
            bad.push(json!({"lambda": lambda.to_string(), "polynomial": s.polynomial, "value_at_one": s.value_at_one.to_string()}));
        }
    }
    checks.push(CheckRecord::new(
        "kw",
        "L+ times hook product is polynomial with K(1) = (|lambda|-1)!",
        "|lambda| <= 4, c = 0, t^40",
        lambdas.len(),
        bad,
    ));
    let wedge = Partition::new(vec![1, 1, 1, 1])?;
    let s = kw_series(&wedge, 0, KW_T_ORDER)?;
    let closed = paper_series("ht4-wedge4-ind")?.expand(KW_T_ORDER, 0);
    let bad: Vec<Value> = (0..=KW_T_ORDER)
        .filter_map(|n| {
            let got = s.coefficients.get(&n).copied().unwrap_or(0);
            let want = closed.get(0, n);
            (want != got.into()).then(|| json!({"n": n, "expected": want.to_string(), "got": got}))
        })
        .collect();
    checks.push(CheckRecord::new("kw", "wedge^4 h series term by term", "t^40", KW_T_ORDER + 1, bad));
    Ok(checks)
}

pub fn suite_poisson(ctx: &Context, budget: Budget, progress: &dyn ProgressSink) -> Result<Vec<CheckRecord>> {
    let g = poisson_character_product(6, 6, 6);
    let mut checks = Vec::new();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1usize..=4 {
        let d = n.div_ceil(2).max(1);
        for m in 0..n {
            if !budget.allows(n, m) {
                continue;
            }
            progress.note(&format!("poisson: sc n = {n} d = {d} m = {m}"));
            let brute = decompose(&*ctx.sc(n, d, m)?, Group::Sn)?;
            let formula = g.slice(n, m)?;
            checked += 1;
            if brute != formula {
                let show = |x: &BTreeMap<Partition, u64>| x.iter().map(|(l, k)| format!("{l}:{k}")).collect::<Vec<_>>().join(" ");
                bad.push(json!({"n": n, "m": m, "product": show(&formula), "sc": show(&brute)}));
            }
        }
    }
    checks.push(CheckRecord::new("poisson", "character product vs S_n-decomposition of SC_n(C^2d), 2d >= n-1", "n <= 4", checked, bad));
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1usize..=5 {
        let d = n.div_ceil(2).max(1);
        for m in 0..n {
            if !budget.allows(n, m) {
                continue;
            }
            progress.note(&format!("poisson: dim sc n = {n} d = {d} m = {m}"));
            let got = ctx.sc(n, d, m)?.dim();
            let want = crate::series::poisson_dim(n, m);
            checked += 1;
            if want != got.into() {
                bad.push(json!({"n": n, "m": m, "expected": want.to_string(), "got": got}));
            }
        }
    }
    checks.push(CheckRecord::new("poisson", "dim SC_n(C^2d)_2m = dim (P_n)_2m, 2d >= n-1", "n <= 5", checked, bad));
    Ok(checks)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_json(v: &impl Serialize, out: &mut dyn Write) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

pub fn emit_dims(r: &DimsRecord, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(r, out)?,
        Format::Csv => {
            writeln!(out, "kind,n,d,m,dim")?;
            for e in &r.dims {
                writeln!(out, "{},{},{},{},{}", r.kind, r.n, r.d, e.m, e.dim)?;
            }
        }
        Format::Text => {
            let terms: Vec<String> = r.dims.iter().map(|e| format!("{}t^{}", e.dim, 2 * e.m)).collect();
            writeln!(out, "h({}_{}(C^{}); t) = {}", r.kind, r.n, 2 * r.d, terms.join(" + "))?;
        }
    }
    Ok(())
}

pub fn emit_decompose(r: &DecomposeRecord, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(r, out)?,
        Format::Csv => {
            writeln!(out, "lambda,full_lambda,multiplicity")?;
            for e in &r.entries {
                writeln!(out, "{},{},{}", csv_field(&e.lambda), csv_field(&e.full_lambda), e.multiplicity)?;
            }
        }
        Format::Text => {
            writeln!(out, "{}_{}(C^{})_{} under S_{}:", r.kind, r.n, 2 * r.d, 2 * r.m, r.group)?;
            for e in &r.entries {
                writeln!(out, "  {} x ({})  [full ({})]", e.multiplicity, e.lambda, e.full_lambda)?;
            }
        }
    }
    Ok(())
}

pub fn emit_verify(r: &SuiteReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(r, out)?,
        Format::Csv => {
            writeln!(out, "suite,check,window,checked,status,mismatches")?;
            for c in &r.checks {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.suite,
                    csv_field(&c.name),
                    csv_field(&c.window),
                    c.checked,
                    c.status,
                    c.mismatches.len()
                )?;
            }
        }
        Format::Text => {
            for c in &r.checks {
                writeln!(out, "[{}] {}: {} ({}, {} checked)", c.status, c.suite, c.name, c.window, c.checked)?;
                for m in &c.mismatches {
                    writeln!(out, "    {m}")?;
                }
            }
            writeln!(out, "{}: {}", r.suite, r.status)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("poisson-inv").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn dims_record() {
        let cli = parse(&["dims", "--kind", "inv", "--n", "4", "--d", "1"]);
        let Command::Dims(a) = &cli.command else { panic!() };
        let r = cmd_dims(&Context::new(), a, cli.budget, &Silent).unwrap();
        assert_eq!(r.dims.iter().map(|e| e.dim).collect::<Vec<_>>(), vec![1, 6, 10, 6, 1]);
        let cli = parse(&["dims", "--kind", "sc", "--n", "4"]);
        let Command::Dims(a) = &cli.command else { panic!() };
        let r = cmd_dims(&Context::new(), a, cli.budget, &Silent).unwrap();
        assert_eq!(r.dims.iter().map(|e| e.dim).collect::<Vec<_>>(), vec![1, 6, 10, 6, 0]);
    }

    #[test]
    fn decompose_record() {
        let cli = parse(&["decompose", "--kind", "inv", "--n", "4", "--d", "2", "--m", "2", "--group", "n+1"]);
        let Command::Decompose(a) = &cli.command else { panic!() };
        let r = cmd_decompose(&Context::new(), a, cli.budget).unwrap();
        let got: Vec<(String, u64)> = r.entries.iter().map(|e| (e.lambda.clone(), e.multiplicity)).collect();
        let want: Vec<(String, u64)> = [("2,1", 1), ("2", 1), ("1,1,1,1", 1)].iter().map(|&(l, k)| (l.to_string(), k)).collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want_sorted = want;
        want_sorted.sort();
        assert_eq!(got_sorted, want_sorted);
    }

    #[test]
    fn usage_errors() {
        assert!(Cli::try_parse_from(["poisson-inv", "dims", "--kind", "nope", "--n", "3"]).is_err());
        assert!(Cli::try_parse_from(["poisson-inv", "--budget", "6", "verify"]).is_err());
        let cli = parse(&["dims", "--kind", "inv", "--n", "3", "--d", "2", "--method", "harmonic", "--m-max", "1"]);
        let Command::Dims(a) = &cli.command else { panic!() };
        let e = cmd_dims(&Context::new(), a, cli.budget, &Silent).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_USAGE);
    }

    #[test]
    fn csv_quotes_partitions() {
        assert_eq!(csv_field("2,1"), "\"2,1\"");
        assert_eq!(csv_field("3"), "3");
    }
}
