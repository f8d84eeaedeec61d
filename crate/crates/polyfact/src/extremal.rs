//! Exact computation of Υ_m and Υ_{n,n} with witness profiles, structural
//! checks on witnesses, exchange moves with exact Φ-ratios, and the explicit
//! lower/upper bound evaluators.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::divisors::{phi_constrained, factorize, Profile};
use crate::field::FieldSpec;
use crate::irred::{self, IrreducibleIndex};
use crate::poly::{self};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ordinary,
    Slack,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// candidate states / profiles examined
    pub nodes: u64,
    /// branches discarded before evaluation
    pub prunes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub value: BigUint,
    /// all profiles attaining the value, sorted by (r_0, per-degree lists)
    pub witnesses: Vec<Profile>,
    pub stats: SearchStats,
}

/// I(d) as a machine integer (desk-scale degrees keep this in range).
fn i_of(field: &FieldSpec, d: usize) -> u64 {
    irred::count_irreducibles(field, d as u64)
        .expect("d >= 1")
        .to_u64()
        .unwrap_or(u64::MAX)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k.min(n.saturating_sub(k)) {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    if k > n {
        BigUint::zero()
    } else {
        out
    }
}

/// Balanced partition of R into k = min(slots, R) parts differing by at most
/// one, non-increasing.
pub fn balanced_parts(r_total: u32, slots: u64) -> Vec<u32> {
    if r_total == 0 {
        return Vec::new();
    }
    let k = (r_total as u64).min(slots).max(1) as u32;
    let base = r_total / k;
    let extra = r_total % k;
    let mut parts = vec![base + 1; extra as usize];
    parts.extend(std::iter::repeat(base).take((k - extra) as usize));
    parts
}

fn parts_product(parts: &[u32]) -> BigUint {
    let mut out = BigUint::one();
    for &r in parts {
        out *= BigUint::from(r + 1);
    }
    out
}

// ---------------------------------------------------------------------------
// Υ_m
// ---------------------------------------------------------------------------

/// Exhaustive maximum of Φ over M_m (the maximum over P_m is attained only
/// at degree m; for small spaces this is asserted by scanning P_{m−1} too).
pub fn upsilon_bruteforce(
    field: &FieldSpec,
    index: &IrreducibleIndex,
    m: usize,
    budget: u128,
) -> Result<ExtremalResult> {
    let size = (field.q() as u128).pow(m as u32);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut best = BigUint::zero();
    let mut witnesses: BTreeSet<Profile> = BTreeSet::new();
    let mut nodes = 0u64;
    for s in poly::enumerate_monic(field, m) {
        nodes += 1;
        let fac = factorize(field, index, &s)?;
        let value = crate::divisors::phi(&fac);
        if value > best {
            best = value.clone();
            witnesses.clear();
        }
        if value == best {
            witnesses.insert(Profile::from_factorization(&fac, 0));
        }
    }
    if m >= 1 && size <= 10_000 {
        // the maximum over P_m is attained only at degree exactly m
        for s in poly::enumerate_upto(field, m - 1) {
            let fac = factorize(field, index, &s)?;
            if crate::divisors::phi(&fac) >= best {
                return Err(Error::Mismatch(format!(
                    "P_{} contains a polynomial with at least {} divisors",
                    m - 1,
                    best
                )));
            }
        }
    }
    Ok(ExtremalResult {
        value: best,
        witnesses: witnesses.into_iter().collect(),
        stats: SearchStats { nodes, prunes: 0 },
    })
}

fn upsilon_search_at(field: &FieldSpec, m: usize, dmax: usize) -> ExtremalResult {
    if m == 0 {
        return ExtremalResult {
            value: BigUint::one(),
            witnesses: vec![Profile::new(0, Default::default())],
            stats: SearchStats::default(),
        };
    }
    let dmax = dmax.min(m).max(1);
    let slots: Vec<u64> = (0..=dmax).map(|d| if d == 0 { 0 } else { i_of(field, d) }).collect();
    // dp[d][b]: best product using degrees ≥ d with remaining budget b;
    // dp[dmax+1][0] = 1 is the only admissible terminal state
    let mut dp: Vec<Vec<Option<BigUint>>> = vec![vec![None; m + 1]; dmax + 2];
    dp[dmax + 1][0] = Some(BigUint::one());
    let mut nodes = 0u64;
    let mut prunes = 0u64;
    for d in (1..=dmax).rev() {
        for b in 0..=m {
            let mut best: Option<BigUint> = None;
            for r_total in 0..=(b / d) as u32 {
                nodes += 1;
                match &dp[d + 1][b - r_total as usize * d] {
                    Some(tail) => {
                        let cand = parts_product(&balanced_parts(r_total, slots[d])) * tail;
                        if best.as_ref().is_none_or(|b| cand > *b) {
                            best = Some(cand);
                        }
                    }
                    None => prunes += 1,
                }
            }
            dp[d][b] = best;
        }
    }
    let value = dp[1][m].clone().expect("degree 1 can absorb any budget");
    // reconstruct every optimal allocation
    let mut witnesses: BTreeSet<Profile> = BTreeSet::new();
    let mut stack: Vec<(usize, usize, Vec<(usize, Vec<u32>)>)> = vec![(1, m, Vec::new())];
    while let Some((d, b, partial)) = stack.pop() {
        if d == dmax + 1 {
            debug_assert_eq!(b, 0);
            let entries = partial.iter().cloned().collect();
            witnesses.insert(Profile::new(0, entries));
            continue;
        }
        let here = dp[d][b].as_ref().expect("on an optimal path");
        for r_total in 0..=(b / d) as u32 {
            if let Some(tail) = &dp[d + 1][b - r_total as usize * d] {
                let parts = balanced_parts(r_total, slots[d]);
                if &(parts_product(&parts) * tail) == here {
                    let mut next = partial.clone();
                    if !parts.is_empty() {
                        next.push((d, parts));
                    }
                    stack.push((d + 1, b - r_total as usize * d, next));
                }
            }
        }
    }
    ExtremalResult {
        value,
        witnesses: witnesses.into_iter().collect(),
        stats: SearchStats { nodes, prunes },
    }
}

/// Exact Υ_m by dynamic programming over (degree, remaining budget) with the
/// balanced per-degree partition; degrees are bounded by ⌊log_q m⌋ + 1 and
/// the bound is re-verified at +1 (no improvement may exist).
pub fn upsilon_profile_search(field: &FieldSpec, m: usize) -> ExtremalResult {
    if m == 0 {
        return upsilon_search_at(field, 0, 1);
    }
    let dbound = irred::floor_log_q(field.q(), m as u64) as usize + 1;
    let narrow = upsilon_search_at(field, m, dbound);
    let wide = upsilon_search_at(field, m, dbound + 1);
    assert_eq!(
        narrow.value, wide.value,
        "degree bound ⌊log_q m⌋+1 must admit the maximum (m = {m})"
    );
    ExtremalResult {
        value: wide.value,
        witnesses: wide.witnesses,
        stats: SearchStats {
            nodes: narrow.stats.nodes + wide.stats.nodes,
            prunes: narrow.stats.prunes + wide.stats.prunes,
        },
    }
}

// ---------------------------------------------------------------------------
// Υ_{n,n}
// ---------------------------------------------------------------------------

/// Exhaustive maximum of Φ_n over all of P_{2n}.
pub fn upsilon_nn_bruteforce(
    field: &FieldSpec,
    index: &IrreducibleIndex,
    n: usize,
    budget: u128,
) -> Result<ExtremalResult> {
    let size = poly::p_size(field, 2 * n)
        .to_u128()
        .ok_or(Error::BudgetExceeded { size: u128::MAX, budget })?;
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut best = BigUint::zero();
    let mut witnesses: BTreeSet<Profile> = BTreeSet::new();
    let mut nodes = 0u64;
    for s in poly::enumerate_upto(field, 2 * n) {
        nodes += 1;
        let fac = factorize(field, index, &s)?;
        let value = phi_constrained(&fac, n, n)?;
        if value > best {
            best = value.clone();
            witnesses.clear();
        }
        if value == best {
            let slack = (2 * n - fac.degree()) as u32;
            witnesses.insert(Profile::from_factorization(&fac, slack));
        }
    }
    Ok(ExtremalResult {
        value: best,
        witnesses: witnesses.into_iter().collect(),
        stats: SearchStats { nodes, prunes: 0 },
    })
}

/// All non-increasing partitions of `total` into at most `max_parts` parts.
fn partitions(total: u32, max_parts: u64) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, parts_left: u64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for next in (1..=remaining.min(max_part)).rev() {
            prefix.push(next);
            rec(remaining - next, next, parts_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Every profile of the given weighted size with per-degree capacity I(d),
/// degrees ≤ max_degree, and slack in [0, r0_max] (0 in ordinary mode).
pub fn enumerate_profiles(
    field: &FieldSpec,
    size: usize,
    max_degree: usize,
    r0_max: u32,
) -> Vec<Profile> {
    let max_degree = max_degree.min(size).max(1);
    let slots: Vec<u64> = (0..=max_degree).map(|d| if d == 0 { 0 } else { i_of(field, d) }).collect();
    let mut out = Vec::new();
    fn rec(
        slots: &[u64],
        d: usize,
        budget: usize,
        partial: &mut Vec<(usize, Vec<u32>)>,
        slack: u32,
        out: &mut Vec<Profile>,
    ) {
        if d == 0 {
            if budget == 0 {
                let entries = partial.iter().cloned().collect();
                out.push(Profile::new(slack, entries));
            }
            return;
        }
        for r_total in 0..=(budget / d) as u32 {
            if r_total == 0 {
                rec(slots, d - 1, budget, partial, slack, out);
                continue;
            }
            for parts in partitions(r_total, slots[d]) {
                partial.push((d, parts));
                rec(slots, d - 1, budget - r_total as usize * d, partial, slack, out);
                partial.pop();
            }
        }
    }
    for r0 in 0..=r0_max.min(size as u32) {
        rec(&slots, max_degree, size - r0 as usize, &mut Vec::new(), r0, &mut out);
    }
    out
}

fn upsilon_nn_search_at(field: &FieldSpec, n: usize, dmax: usize, r0_max: u32) -> ExtremalResult {
    let mut best = BigUint::zero();
    let mut witnesses: BTreeSet<Profile> = BTreeSet::new();
    let mut nodes = 0u64;
    for p in enumerate_profiles(field, 2 * n, dmax, r0_max) {
        nodes += 1;
        let value = p.phi_window(n).expect("profile sized to 2n");
        if value > best {
            best = value.clone();
            witnesses.clear();
        }
        if value == best {
            witnesses.insert(p);
        }
    }
    ExtremalResult {
        value: best,
        witnesses: witnesses.into_iter().collect(),
        stats: SearchStats { nodes, prunes: 0 },
    }
}

/// Exact Υ_{n,n} by exhaustive profile enumeration under the n-maximal
/// degree bound ⌊log_q 2n⌋ + 1 and slack bound 2(⌊log_q 2n⌋ + 1) − 1,
/// both re-verified at +1 (no improvement may exist).
pub fn upsilon_nn_profile_search(field: &FieldSpec, n: usize) -> ExtremalResult {
    if n == 0 {
        return ExtremalResult {
            value: BigUint::one(),
            witnesses: vec![Profile::new(0, Default::default())],
            stats: SearchStats::default(),
        };
    }
    let l = irred::floor_log_q(field.q(), 2 * n as u64) as usize + 1;
    let dbound = l.min(2 * n);
    let r0_bound = ((2 * l - 1) as u32).min(2 * n as u32);
    let narrow = upsilon_nn_search_at(field, n, dbound, r0_bound);
    let wide = upsilon_nn_search_at(
        field,
        n,
        (dbound + 1).min(2 * n),
        (r0_bound + 1).min(2 * n as u32),
    );
    assert_eq!(
        narrow.value, wide.value,
        "n-maximal degree/slack bounds must admit the maximum (n = {n})"
    );
    ExtremalResult {
        value: wide.value,
        witnesses: wide.witnesses,
        stats: SearchStats {
            nodes: narrow.stats.nodes + wide.stats.nodes,
            prunes: narrow.stats.prunes + wide.stats.prunes,
        },
    }
}

// ---------------------------------------------------------------------------
// structural checks
// ---------------------------------------------------------------------------

/// Per-property verdicts for a profile against the structural propositions;
/// the `*_soft_*` fields are measured diagnostics with the paper's slack
/// constants and never gate `hard_ok`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct StructureReport {
    pub no_hole: bool,
    pub multiplicity_window: bool,
    pub dt_window: bool,
    pub rho_window: bool,
    pub rho: u32,
    pub d_t: Option<usize>,
    pub d_t1: usize,
    /// ρ − log_q(size)/ln 2
    pub rho_deviation: f64,
    pub rho_soft_ok: bool,
    pub high_degree_soft_ok: bool,
}

impl StructureReport {
    pub fn hard_ok(&self) -> bool {
        self.no_hole && self.multiplicity_window && self.dt_window && self.rho_window
    }
}

/// Smallest degree with an unused irreducible slot (the degree d_{t+1} of
/// the smallest irreducible not dividing s).
fn next_free_degree(field: &FieldSpec, p: &Profile) -> usize {
    let mut d = 1usize;
    loop {
        let used = p.entries.get(&d).map(|l| l.len() as u64).unwrap_or(0);
        if used < i_of(field, d) {
            return d;
        }
        d += 1;
    }
}

/// Evaluate the structural propositions on a profile: no-hole, the
/// multiplicity window (including the virtual index t+1), the d_t window,
/// and the ρ window, plus soft diagnostics for the ρ estimate and the
/// high-degree multiplicity relation.  In slack mode the slack bin
/// participates as an index-0 item of degree 1 and ρ_n = max(r_0, ρ).
pub fn check_structure(
    field: &FieldSpec,
    p: &Profile,
    mode: Mode,
    size: usize,
) -> Result<StructureReport> {
    if p.weighted_size() != size {
        return Err(Error::OutOfRange(format!(
            "profile weighted size {} does not match target {size}",
            p.weighted_size()
        )));
    }
    if mode == Mode::Ordinary && p.slack != 0 {
        return Err(Error::OutOfRange("ordinary-mode profile with nonzero slack".into()));
    }
    for (&d, list) in &p.entries {
        if (list.len() as u64) > i_of(field, d) {
            return Err(Error::OutOfRange(format!(
                "profile requests {} distinct irreducibles of degree {d} but I({d}) is smaller",
                list.len()
            )));
        }
    }
    let slack_mode = mode == Mode::Slack;
    let rho = p.rho(slack_mode);
    let mut items: Vec<(usize, u32)> = p.pairs();
    if slack_mode {
        items.push((1, p.slack));
    }
    let d_t = p.d_t();
    let d_t1 = next_free_degree(field, p);

    // Prop nohole / no-zero-holes: d_i > d_j ⇒ r_i ≤ r_j
    let mut no_hole = true;
    for &(di, ri) in &items {
        for &(dj, rj) in &items {
            if di > dj && ri > rj {
                no_hole = false;
            }
        }
    }

    // eq:rmax / eq:constrained-lowdegrees: (ρ+1)/(r_i+2) ≤ d_i < (ρ+1)/r_i,
    // plus the i = t+1 case with r_{t+1} ≡ 0
    let rho1 = rho as u64 + 1;
    let mut multiplicity_window = true;
    for &(d, r) in &items {
        let d = d as u64;
        if rho1 > d * (r as u64 + 2) || d * r as u64 >= rho1 {
            multiplicity_window = false;
        }
    }
    if rho1 > 2 * d_t1 as u64 {
        multiplicity_window = false;
    }

    // eq:dt1-max: ⌊log_q(size/8)⌋ < d_t ≤ d_{t+1} ≤ ⌊log_q size⌋ + 1
    let q = field.q();
    let dt_window = match d_t {
        None => true,
        Some(dt) => {
            let mut lower_ok = true;
            if size >= 8 {
                // largest k with 8·q^k ≤ size
                let k = irred::floor_log_q(q, (size / 8) as u64) as usize;
                if (8u128) * (q as u128).pow(k as u32) <= size as u128 {
                    lower_ok = dt > k;
                }
            }
            lower_ok
                && dt <= d_t1
                && d_t1 <= irred::floor_log_q(q, size as u64) as usize + 1
        }
    };

    // Lemma rmax-d_t-crude: d_t ≤ ρ ≤ 2·d_{t+1} − 1
    let rho_window = match d_t {
        None => true,
        Some(dt) => dt <= rho as usize && (rho as u64) <= 2 * d_t1 as u64 - 1,
    };

    // soft diagnostics: Prop 6 (ρ estimate) and Thm 7 (r_i vs d_i), both
    // with the footnote's slack constant 3
    let lnq = (q as f64).ln();
    let logq_size = if size >= 1 { (size as f64).ln() / lnq } else { 0.0 };
    let rho_target = logq_size / std::f64::consts::LN_2;
    let rho_deviation = rho as f64 - rho_target;
    let tol = 3.0 * f64::max(1.0, if logq_size > 1.0 { logq_size.ln() / lnq } else { 0.0 });
    let rho_soft_ok = rho_deviation.abs() <= tol;

    let big_l = irred::floor_log_q(q, size.max(1) as u64) as f64;
    let mut high_degree_soft_ok = true;
    if big_l >= 1.0 {
        for &(d, r) in &p.pairs() {
            let hi_exp = (d as f64 + 3.0) / big_l;
            let lo_exp = (d as f64 - 3.0) / big_l;
            let r_min = (1.0 / (2f64.powf(hi_exp) - 1.0)).floor();
            let r_max = if lo_exp <= 0.0 {
                f64::INFINITY
            } else {
                (1.0 / (2f64.powf(lo_exp) - 1.0)).floor()
            };
            if (r as f64) < r_min || (r as f64) > r_max {
                high_degree_soft_ok = false;
            }
        }
    }

    Ok(StructureReport {
        no_hole,
        multiplicity_window,
        dt_window,
        rho_window,
        rho,
        d_t,
        d_t1,
        rho_deviation,
        rho_soft_ok,
        high_degree_soft_ok,
    })
}

// ---------------------------------------------------------------------------
// exchange moves
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Swap,
    Lift,
    Drop,
    BlockUp,
    BlockDown,
}

/// An exchange move expressed as multiplicity rewrites.  Each delta
/// (degree, from, to) rewrites one multiplicity: from = 0 introduces a new
/// irreducible factor (requires a free slot), to = 0 removes one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSpec {
    pub kind: MoveKind,
    pub deltas: Vec<(usize, u32, u32)>,
    pub slack_from: u32,
    pub slack_to: u32,
}

/// Apply a move and return the transformed profile with the exact ratio
/// Φ(s̃)/Φ(s) (ordinary mode) or Φ_n(s̃)/Φ_n(s) (slack mode).
pub fn apply_move(
    field: &FieldSpec,
    p: &Profile,
    mv: &MoveSpec,
    mode: Mode,
    size: usize,
) -> Result<(Profile, BigRational)> {
    if p.weighted_size() != size {
        return Err(Error::OutOfRange("profile does not match the target size".into()));
    }
    if mv.slack_from != p.slack {
        return Err(Error::Inapplicable(format!(
            "move expects slack {} but profile has {}",
            mv.slack_from, p.slack
        )));
    }
    if mode == Mode::Ordinary && mv.slack_from != mv.slack_to {
        return Err(Error::Inapplicable("ordinary mode cannot change slack".into()));
    }
    let mut entries = p.entries.clone();
    for &(d, from, to) in &mv.deltas {
        if from > 0 {
            let list = entries
                .get_mut(&d)
                .ok_or_else(|| Error::Inapplicable(format!("no degree-{d} factor of multiplicity {from}")))?;
            let pos = list.iter().position(|&r| r == from).ok_or_else(|| {
                Error::Inapplicable(format!("no degree-{d} factor of multiplicity {from}"))
            })?;
            list.remove(pos);
        }
        if to > 0 {
            entries.entry(d).or_default().push(to);
        }
    }
    for (&d, list) in &entries {
        if (list.len() as u64) > i_of(field, d) {
            return Err(Error::Inapplicable(format!(
                "not enough irreducibles of degree {d} ({} needed)",
                list.len()
            )));
        }
    }
    let result = Profile::new(mv.slack_to, entries);
    match mode {
        Mode::Ordinary => {
            if result.weighted_size() > size {
                return Err(Error::Inapplicable("move exceeds the degree budget".into()));
            }
            let mut ratio = BigRational::one();
            for &(_, from, to) in &mv.deltas {
                ratio *= BigRational::new(BigInt::from(to + 1), BigInt::from(from + 1));
            }
            Ok((result, ratio))
        }
        Mode::Slack => {
            if result.weighted_size() != size {
                return Err(Error::Inapplicable("slack-mode move must preserve total degree".into()));
            }
            if size % 2 != 0 {
                return Err(Error::OutOfRange("slack-mode size must be 2n".into()));
            }
            let n = size / 2;
            let before = p.phi_window(n)?;
            let after = result.phi_window(n)?;
            if before.is_zero() {
                return Err(Error::Inapplicable("Φ_n(s) = 0".into()));
            }
            let ratio = BigRational::new(BigInt::from(after), BigInt::from(before));
            Ok((result, ratio))
        }
    }
}

/// Distinct (degree, multiplicity) values of a profile.
fn distinct_items(p: &Profile) -> Vec<(usize, u32)> {
    let mut items = p.pairs();
    items.dedup();
    items
}

/// Enumerate the applicable exchange moves of every kind for a profile
/// (candidates failing the capacity/multiplicity preconditions are
/// filtered through `apply_move`).
pub fn enumerate_moves(field: &FieldSpec, p: &Profile, mode: Mode, size: usize) -> Vec<MoveSpec> {
    let slack_mode = mode == Mode::Slack;
    let r0 = p.slack;
    let rho_plain = p.rho(false);
    let items = distinct_items(p);
    let mut deg1_targets: Vec<u32> = items.iter().filter(|(d, _)| *d == 1).map(|&(_, r)| r).collect();
    if (p.entries.get(&1).map(|l| l.len() as u64).unwrap_or(0)) < i_of(field, 1) {
        deg1_targets.push(0);
    }
    let mut out: Vec<MoveSpec> = Vec::new();
    let push = |out: &mut Vec<MoveSpec>, mv: MoveSpec| {
        if apply_move(field, p, &mv, mode, size).is_ok() && !out.contains(&mv) {
            out.push(mv);
        }
    };

    // swap (Prop 1): s̃ = s·p_k·p_j/p_i with d_i > d_j, d_k = 1; in slack
    // mode the degree deficit 1 + d_j − d_i is absorbed by the slack bin
    for &(di, ri) in &items {
        for &(dj, rj) in &items {
            if di <= dj {
                continue;
            }
            for &rk in &deg1_targets {
                let mv = MoveSpec {
                    kind: MoveKind::Swap,
                    deltas: vec![(1, rk, rk + 1), (dj, rj, rj + 1), (di, ri, ri - 1)],
                    slack_from: r0,
                    slack_to: if slack_mode { r0 + (di - dj - 1) as u32 } else { r0 },
                };
                push(&mut out, mv);
            }
        }
    }

    // lift (Prop 2 left): s̃ = s·p_i/p_k^{d_i} with r_k = ρ; in slack mode
    // the d_i units come out of the slack bin instead
    let mut lift_targets = items.clone();
    for d in 1..=size {
        let used = p.entries.get(&d).map(|l| l.len() as u64).unwrap_or(0);
        if used < i_of(field, d) {
            lift_targets.push((d, 0));
        }
        if d > p.d_t().unwrap_or(0) + 1 {
            break;
        }
    }
    for &(di, ri) in &lift_targets {
        if slack_mode {
            if r0 >= di as u32 {
                push(
                    &mut out,
                    MoveSpec {
                        kind: MoveKind::Lift,
                        deltas: vec![(di, ri, ri + 1)],
                        slack_from: r0,
                        slack_to: r0 - di as u32,
                    },
                );
            }
        } else if rho_plain as usize >= di {
            push(
                &mut out,
                MoveSpec {
                    kind: MoveKind::Lift,
                    deltas: vec![(1, rho_plain, rho_plain - di as u32), (di, ri, ri + 1)],
                    slack_from: r0,
                    slack_to: r0,
                },
            );
        }
    }

    // drop (Prop 2 right): s̃ = s·p_k^{d_i}/p_i with r_k = ρ
    for &(di, ri) in &items {
        if slack_mode {
            push(
                &mut out,
                MoveSpec {
                    kind: MoveKind::Drop,
                    deltas: vec![(di, ri, ri - 1)],
                    slack_from: r0,
                    slack_to: r0 + di as u32,
                },
            );
        } else {
            let k_from = if rho_plain > 0 { rho_plain } else { 0 };
            push(
                &mut out,
                MoveSpec {
                    kind: MoveKind::Drop,
                    deltas: vec![(1, k_from, k_from + di as u32), (di, ri, ri - 1)],
                    slack_from: r0,
                    slack_to: r0,
                },
            );
        }
    }

    // block moves (Lemmas diupper/dilower); the most favorable U/V selection
    // is canonical, so a ≤ 1 verdict covers every selection
    if let Some(dt) = p.d_t() {
        let d_t1 = next_free_degree(field, p);
        for (&di, list) in &p.entries {
            // block_up: U = d_t + 1 factors of degree d_i lose one copy,
            // V = d_i fresh factors at degree d_t + 1
            let u_size = dt + 1;
            if list.len() >= u_size {
                let mut deltas: Vec<(usize, u32, u32)> =
                    list.iter().take(u_size).map(|&r| (di, r, r - 1)).collect();
                deltas.extend(std::iter::repeat((dt + 1, 0, 1)).take(di));
                push(
                    &mut out,
                    MoveSpec { kind: MoveKind::BlockUp, deltas, slack_from: r0, slack_to: r0 },
                );
            }
            // block_down: U = d_{t+1} − 1 factors of degree d_i gain one
            // copy, V = d_i factors of degree d_{t+1} − 1 lose one
            let u_size = d_t1 - 1;
            let v_deg = d_t1 - 1;
            if u_size >= 1 && di < v_deg && list.len() >= u_size {
                if let Some(v_list) = p.entries.get(&v_deg) {
                    if v_list.len() >= di {
                        let mut deltas: Vec<(usize, u32, u32)> = list
                            .iter()
                            .rev()
                            .take(u_size)
                            .map(|&r| (di, r, r + 1))
                            .collect();
                        deltas.extend(v_list.iter().take(di).map(|&r| (v_deg, r, r - 1)));
                        push(
                            &mut out,
                            MoveSpec { kind: MoveKind::BlockDown, deltas, slack_from: r0, slack_to: r0 },
                        );
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// explicit bounds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundResult {
    pub d: usize,
    pub w: usize,
    pub bound: BigUint,
    pub witness: Profile,
    /// Φ_n of the witness (≥ bound)
    pub phi_n: BigUint,
}

/// The Theorem-5 construction: d = min{d : d·I(d) ≥ 2n}, w = ⌊n/d⌋, and a
/// witness of 2w distinct degree-d irreducibles giving Φ_n ≥ C(2w, w).
pub fn lower_bound_construction(field: &FieldSpec, n: usize) -> Result<LowerBoundResult> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be >= 1".into()));
    }
    let target = BigUint::from(2 * n as u64);
    let mut d = 1usize;
    while BigUint::from(d as u64) * irred::count_irreducibles(field, d as u64)? < target {
        d += 1;
    }
    let cl = irred::ceil_log_q(field.q(), n as u64) as usize;
    if d != cl + 1 && d != cl + 2 {
        return Err(Error::Mismatch(format!(
            "construction degree d = {d} outside {{⌈log_q n⌉+1, ⌈log_q n⌉+2}} = {{{}, {}}}",
            cl + 1,
            cl + 2
        )));
    }
    let w = n / d;
    if 2 * w * d > 2 * n {
        return Err(Error::Mismatch("witness degree exceeds 2n".into()));
    }
    let slack = (2 * n - 2 * w * d) as u32;
    let mut entries = std::collections::BTreeMap::new();
    if w > 0 {
        entries.insert(d, vec![1u32; 2 * w]);
    }
    let witness = Profile::new(slack, entries);
    if (2 * w) as u64 > i_of(field, d) {
        return Err(Error::Mismatch("not enough degree-d irreducibles for the witness".into()));
    }
    let bound = binomial(2 * w as u64, w as u64);
    let phi_n = witness.phi_window(n)?;
    if phi_n < bound {
        return Err(Error::Mismatch("witness Φ_n fell below C(2w, w)".into()));
    }
    Ok(LowerBoundResult { d, w, bound, witness, phi_n })
}

/// The Theorem-4 proof chain with no hidden constants:
/// ε = 2·log_q log_q m / log_q m, Δ = ⌊(1−ε)·log_q m⌋ (clamped at 0, where
/// the low-degree class is empty and w₂ alone covers every factor),
/// w₁ = 2(⌊log_q m⌋+1)·4q^Δ/(Δ+1), w₂ = m/(Δ+1); returns w₁ + w₂ ≥ log₂ Υ_m.
pub fn upper_bound_log2_upsilon(field: &FieldSpec, m: usize) -> Result<f64> {
    let q = field.q();
    if (m as u64) < q {
        return Err(Error::OutOfRange(format!("m = {m} must be at least q = {q}")));
    }
    let lnq = (q as f64).ln();
    let logq_m = (m as f64).ln() / lnq;
    let eps = 2.0 * (logq_m.ln() / lnq) / logq_m;
    let delta = (((1.0 - eps) * logq_m).floor()).max(0.0) as u32;
    let floor_log = irred::floor_log_q(q, m as u64) as f64;
    let w1 = 2.0 * (floor_log + 1.0) * 4.0 * (q as f64).powi(delta as i32) / (delta as f64 + 1.0);
    let w2 = m as f64 / (delta as f64 + 1.0);
    Ok(w1 + w2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::make(p, 1, None).unwrap()
    }

    fn profile(slack: u32, groups: &[(usize, &[u32])]) -> Profile {
        let mut entries = BTreeMap::new();
        for (d, rs) in groups {
            entries.insert(*d, rs.to_vec());
        }
        Profile::new(slack, entries)
    }

    #[test]
    fn balanced_parts_examples() {
        assert_eq!(balanced_parts(3, 2), vec![2, 1]);
        assert_eq!(balanced_parts(5, 3), vec![2, 2, 1]);
        assert_eq!(balanced_parts(2, 5), vec![1, 1]);
        assert!(balanced_parts(0, 4).is_empty());
    }

    #[test]
    fn upsilon_small_values() {
        let f = gf(2);
        let idx = IrreducibleIndex::materialize(&f, 3);
        let r = upsilon_bruteforce(&f, &idx, 3, 1 << 20).unwrap();
        assert_eq!(r.value, BigUint::from(6u32));
        assert_eq!(r.witnesses, vec![profile(0, &[(1, &[2, 1])])]);
        assert_eq!(upsilon_bruteforce(&f, &idx, 1, 1 << 20).unwrap().value, BigUint::from(2u32));

        let f3 = gf(3);
        let idx3 = IrreducibleIndex::materialize(&f3, 1);
        assert_eq!(upsilon_bruteforce(&f3, &idx3, 2, 1 << 20).unwrap().value, BigUint::from(4u32));
    }

    #[test]
    fn profile_search_matches_bruteforce() {
        for (p, mmax) in [(2u64, 9usize), (3, 6)] {
            let f = gf(p);
            let idx = IrreducibleIndex::materialize(&f, mmax / 2);
            for m in 0..=mmax {
                let brute = upsilon_bruteforce(&f, &idx, m, 1 << 24).unwrap();
                let search = upsilon_profile_search(&f, m);
                assert_eq!(search.value, brute.value, "q={p} m={m}");
                assert_eq!(search.witnesses, brute.witnesses, "q={p} m={m}");
            }
        }
    }

    #[test]
    fn nn_search_matches_bruteforce() {
        for (p, nmax) in [(2u64, 4usize), (3, 2)] {
            let f = gf(p);
            let idx = IrreducibleIndex::materialize(&f, nmax);
            for n in 0..=nmax {
                let brute = upsilon_nn_bruteforce(&f, &idx, n, 1 << 24).unwrap();
                let search = upsilon_nn_profile_search(&f, n);
                assert_eq!(search.value, brute.value, "q={p} n={n}");
                assert_eq!(search.witnesses, brute.witnesses, "q={p} n={n}");
            }
        }
    }

    #[test]
    fn nn_examples() {
        let f = gf(2);
        let idx = IrreducibleIndex::materialize(&f, 4);
        assert_eq!(upsilon_nn_bruteforce(&f, &idx, 2, 1 << 20).unwrap().value, BigUint::from(4u32));
        assert_eq!(upsilon_nn_bruteforce(&f, &idx, 1, 1 << 20).unwrap().value, BigUint::from(2u32));
    }

    #[test]
    fn structure_check_examples() {
        let f = gf(2);
        let good = profile(0, &[(1, &[2, 1])]);
        let rep = check_structure(&f, &good, Mode::Ordinary, 3).unwrap();
        assert!(rep.hard_ok(), "{rep:?}");
        assert_eq!(rep.rho, 2);
        assert_eq!(rep.d_t1, 2);

        let bad = profile(0, &[(1, &[1]), (2, &[2])]);
        let rep = check_structure(&f, &bad, Mode::Ordinary, 5).unwrap();
        assert!(!rep.no_hole);
    }

    #[test]
    fn swap_move_example() {
        // Prop 1 swap on {d=1:[1], d=2:[2]} (q=2, m=5): ratio 2
        let f = gf(2);
        let p = profile(0, &[(1, &[1]), (2, &[2])]);
        let mv = MoveSpec {
            kind: MoveKind::Swap,
            deltas: vec![(1, 0, 1), (1, 1, 2), (2, 2, 1)],
            slack_from: 0,
            slack_to: 0,
        };
        let (res, ratio) = apply_move(&f, &p, &mv, Mode::Ordinary, 5).unwrap();
        assert_eq!(ratio, BigRational::new(BigInt::from(2), BigInt::from(1)));
        assert_eq!(res, profile(0, &[(1, &[2, 1]), (2, &[1])]));
    }

    #[test]
    fn identity_move_ratio_one() {
        let f = gf(2);
        let p = profile(0, &[(1, &[2, 1])]);
        let mv = MoveSpec { kind: MoveKind::BlockUp, deltas: vec![], slack_from: 0, slack_to: 0 };
        let (res, ratio) = apply_move(&f, &p, &mv, Mode::Ordinary, 3).unwrap();
        assert_eq!(res, p);
        assert!(ratio.is_one());
    }

    #[test]
    fn inapplicable_moves_rejected() {
        let f = gf(2);
        let p = profile(0, &[(1, &[2, 1])]);
        // no third linear irreducible exists over GF(2)
        let mv = MoveSpec {
            kind: MoveKind::Lift,
            deltas: vec![(1, 0, 1), (1, 2, 1)],
            slack_from: 0,
            slack_to: 0,
        };
        assert!(apply_move(&f, &p, &mv, Mode::Ordinary, 3).is_err());
    }

    #[test]
    fn witness_moves_never_improve() {
        let f = gf(2);
        let idx = IrreducibleIndex::materialize(&f, 4);
        for m in 1..=8usize {
            let brute = upsilon_bruteforce(&f, &idx, m, 1 << 20).unwrap();
            for w in &brute.witnesses {
                for mv in enumerate_moves(&f, w, Mode::Ordinary, m) {
                    let (_, ratio) = apply_move(&f, w, &mv, Mode::Ordinary, m).unwrap();
                    assert!(ratio <= BigRational::one(), "m={m} w={} mv={mv:?}", w.text());
                }
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        let f = gf(2);
        let r = lower_bound_construction(&f, 4).unwrap();
        assert_eq!((r.d, r.w), (4, 1));
        assert_eq!(r.bound, BigUint::from(2u32));
        let r = lower_bound_construction(&f, 6).unwrap();
        assert_eq!((r.d, r.w), (4, 1));
        assert_eq!(r.bound, BigUint::from(2u32));
    }

    #[test]
    fn upper_bound_examples() {
        let f = gf(2);
        assert!(upper_bound_log2_upsilon(&f, 1).is_err());
        let v16 = upper_bound_log2_upsilon(&f, 16).unwrap();
        assert!(v16.is_finite() && v16 > 0.0);
        // monotone over the tested range
        let mut prev = upper_bound_log2_upsilon(&f, 2).unwrap();
        for m in 3..=64 {
            let next = upper_bound_log2_upsilon(&f, m).unwrap();
            assert!(next >= prev, "m={m}: {next} < {prev}");
            prev = next;
        }
    }
}
