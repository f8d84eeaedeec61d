//! Command-line front end: every computation as a reproducible batch command
//! with JSON or CSV output.  Counts are emitted as decimal strings so that
//! arbitrary-precision values survive the encoding.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::divisors::{
    degree_spectrum, factorize, phi, phi_constrained, spectrum_of_pairs, Profile,
};
use crate::extremal::{
    apply_move, check_structure, enumerate_moves, lower_bound_construction, upper_bound_log2_upsilon,
    upsilon_bruteforce, upsilon_nn_bruteforce, upsilon_nn_profile_search, upsilon_profile_search,
    ExtremalResult, Mode,
};
use crate::field::FieldSpec;
use crate::irred::{self, IrreducibleIndex};
use crate::moments::{
    brute_coprime_pairs, brute_moments_constrained, brute_moments_unconstrained, brute_size_s_m,
    brute_size_s_star, bijection_q_to_s, bijection_s_to_q, coprime_pairs, enumerate_q, enumerate_s,
    expectation_phi_nn, formula_moments_unconstrained, size_s_m, size_s_star,
};
use crate::poly::{self, Poly};
use crate::tail::{chernoff_tail, moment_alpha, omega_distribution, phi_tail_empirical};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Ordinary,
    Slack,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Ordinary => Mode::Ordinary,
            ModeArg::Slack => Mode::Slack,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyfact", version, about = "Exact enumeration of polynomial factorizations over GF(q)")]
pub struct Cli {
    /// Field as "p^e" or "p^e/modulus" (modulus coefficients constant-first)
    #[arg(long, global = true, default_value = "2^1")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Maximum enumeration size; enumerations larger than this are refused
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub budget: u128,
    /// Seed for the randomized checks in verify-all
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker count; results are byte-identical for any value
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// I(d): the number of monic irreducibles of degree d
    IrredCount {
        #[arg(long)]
        d: u64,
    },
    /// List the monic irreducibles of degree d in canonical order
    IrredList {
        #[arg(long)]
        d: usize,
    },
    /// Irreducible factorization of a monic polynomial
    Factor {
        #[arg(long)]
        poly: String,
    },
    /// Φ(s): the number of monic divisors
    Phi {
        #[arg(long)]
        poly: String,
    },
    /// Φ_{n,n'}(s): ordered (n,n')-factorization count
    PhiNn {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n_prime: Option<usize>,
    },
    /// Degree spectrum of y^{r0}·s(x)
    Spectrum {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 0)]
        r0: u32,
    },
    /// Υ_m: the maximum of Φ over P_m, with witness profiles
    Upsilon {
        #[arg(long)]
        m: usize,
        /// use the exhaustive polynomial scan instead of the profile search
        #[arg(long)]
        brute: bool,
    },
    /// Υ_{n,n}: the maximum of Φ_n over P_{2n}, with witness profiles
    UpsilonNn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        brute: bool,
    },
    /// Structural propositions evaluated on a profile
    CheckStructure {
        /// profile as "r0 | d:r,r; d:r"
        #[arg(long)]
        profile: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Ordinary)]
        mode: ModeArg,
        /// target weighted size (m, or 2n in slack mode)
        #[arg(long)]
        size: usize,
    },
    /// Applicable exchange moves of a profile with exact Φ-ratios
    Moves {
        #[arg(long)]
        profile: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Ordinary)]
        mode: ModeArg,
        #[arg(long)]
        size: usize,
    },
    /// The explicit lower-bound construction C(2w, w) ≤ Υ_{n,n}
    LowerBound {
        #[arg(long)]
        n: usize,
    },
    /// The explicit upper bound on log₂ Υ_m
    UpperBound {
        #[arg(long)]
        m: usize,
    },
    /// Moment formulas vs brute force (unconstrained --m, constrained --n)
    Moments {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// |S_m| (--m) or |S_n^*| (--n): closed form vs census
    SSizes {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// S↔Q bijection round-trip check
    BijectionCheck {
        #[arg(long)]
        m: usize,
        /// check the starred (constrained) sets instead
        #[arg(long)]
        star: bool,
    },
    /// Chernoff tail bound on Prob{Ω_m ≥ c·ln m}
    Tail {
        #[arg(long)]
        m: usize,
        /// c as an exact rational "num/den", 1 < c < q
        #[arg(long)]
        c: String,
        /// also census Prob{Φ_m ≥ m^beta}
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Exact histogram of Ω over M_m
    OmegaDist {
        #[arg(long)]
        m: usize,
    },
    /// Run the full oracle-equivalence battery
    VerifyAll,
}

fn rat_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn count_text(c: &BigUint) -> Value {
    Value::String(c.to_string())
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad rational component {t:?}")))
    };
    match text.split_once('/') {
        Some((n, d)) => Ok(BigRational::new(BigInt::from(parse_int(n)?), BigInt::from(parse_int(d)?))),
        None => Ok(BigRational::from_integer(BigInt::from(parse_int(text)?))),
    }
}

fn index_for(field: &FieldSpec, degree: usize) -> IrreducibleIndex {
    IrreducibleIndex::materialize(field, degree.max(1))
}

fn extremal_value(which: &str, result: &ExtremalResult, method: &str) -> Value {
    json!({
        which: method,
        "value": result.value.to_string(),
        "witnesses": result.witnesses.iter().map(|w| w.text()).collect::<Vec<_>>(),
        "nodes": result.stats.nodes,
        "prunes": result.stats.prunes,
    })
}

/// Render a JSON document as CSV: one `key,value` row per top-level field;
/// arrays are joined with ';', nested objects flattened as `k=v|k=v`.
fn to_csv(value: &Value) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(";"),
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}={}", scalar(v)))
                .collect::<Vec<_>>()
                .join("|"),
            other => other.to_string(),
        }
    }
    let mut out = String::from("key,value\n");
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k},{}\n", scalar(v)));
            }
        }
        other => out.push_str(&format!("value,{}\n", scalar(other))),
    }
    out
}

/// Execute a parsed command; returns the emitted document text.
pub fn run(cli: &Cli) -> Result<String> {
    if cli.threads == 0 {
        return Err(Error::OutOfRange("--threads must be >= 1".into()));
    }
    let field = FieldSpec::parse(&cli.field)?;
    let doc = execute(&field, cli)?;
    Ok(match cli.output {
        OutputFormat::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        OutputFormat::Csv => to_csv(&doc),
    })
}

fn execute(field: &FieldSpec, cli: &Cli) -> Result<Value> {
    let budget = cli.budget;
    let mut doc = Map::new();
    doc.insert("field".into(), Value::String(field.text()));
    let body = match &cli.command {
        Command::IrredCount { d } => {
            json!({ "d": d, "count": irred::count_irreducibles(field, *d)?.to_string() })
        }
        Command::IrredList { d } => {
            let size = (field.q() as u128).checked_pow(*d as u32).unwrap_or(u128::MAX);
            if size > budget {
                return Err(Error::BudgetExceeded { size, budget });
            }
            let polys: Vec<String> =
                irred::enumerate_irreducibles(field, *d).iter().map(|p| p.text()).collect();
            json!({ "d": d, "count": polys.len().to_string(), "polys": polys })
        }
        Command::Factor { poly } => {
            let s = Poly::parse(field, poly)?;
            let deg = s.degree().ok_or(Error::NotMonic)?;
            let fac = factorize(field, &index_for(field, deg / 2), &s)?;
            json!({
                "poly": s.text(),
                "factors": fac.factors.iter().map(|(p, d, r)| json!({
                    "poly": p.text(), "degree": d, "multiplicity": r,
                })).collect::<Vec<_>>(),
                "phi": phi(&fac).to_string(),
                "omega": fac.omega(),
            })
        }
        Command::Phi { poly } => {
            let s = Poly::parse(field, poly)?;
            let deg = s.degree().ok_or(Error::NotMonic)?;
            let fac = factorize(field, &index_for(field, deg / 2), &s)?;
            json!({ "poly": s.text(), "phi": phi(&fac).to_string() })
        }
        Command::PhiNn { poly, n, n_prime } => {
            let s = Poly::parse(field, poly)?;
            let deg = s.degree().ok_or(Error::NotMonic)?;
            let np = n_prime.unwrap_or(*n);
            let fac = factorize(field, &index_for(field, deg / 2), &s)?;
            json!({
                "poly": s.text(), "n": n, "n_prime": np,
                "count": phi_constrained(&fac, *n, np)?.to_string(),
            })
        }
        Command::Spectrum { poly, r0 } => {
            let s = Poly::parse(field, poly)?;
            let deg = s.degree().ok_or(Error::NotMonic)?;
            let fac = factorize(field, &index_for(field, deg / 2), &s)?;
            let spec = degree_spectrum(&fac, *r0);
            json!({
                "poly": s.text(), "r0": r0,
                "counts": spec.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "total": spec.total().to_string(),
            })
        }
        Command::Upsilon { m, brute } => {
            if *brute {
                let size = (field.q() as u128).checked_pow(*m as u32).unwrap_or(u128::MAX);
                if size > budget {
                    return Err(Error::BudgetExceeded { size, budget });
                }
                let result = upsilon_bruteforce(field, &index_for(field, m / 2), *m, budget)?;
                extremal_value("method", &result, "bruteforce")
            } else {
                extremal_value("method", &upsilon_profile_search(field, *m), "profile-search")
            }
        }
        Command::UpsilonNn { n, brute } => {
            if *brute {
                let size = (field.q() as u128).checked_pow(2 * *n as u32 + 1).unwrap_or(u128::MAX);
                if size > budget {
                    return Err(Error::BudgetExceeded { size, budget });
                }
                let result = upsilon_nn_bruteforce(field, &index_for(field, *n), *n, budget)?;
                extremal_value("method", &result, "bruteforce")
            } else {
                extremal_value("method", &upsilon_nn_profile_search(field, *n), "profile-search")
            }
        }
        Command::CheckStructure { profile, mode, size } => {
            let p = Profile::parse(profile)?;
            let report = check_structure(field, &p, (*mode).into(), *size)?;
            let mut value = serde_json::to_value(&report).expect("serializable");
            value["profile"] = Value::String(p.text());
            value["hard_ok"] = Value::Bool(report.hard_ok());
            value
        }
        Command::Moves { profile, mode, size } => {
            let p = Profile::parse(profile)?;
            let mode: Mode = (*mode).into();
            let moves = enumerate_moves(field, &p, mode, *size);
            let mut rows = Vec::new();
            for mv in &moves {
                let (result, ratio) = apply_move(field, &p, mv, mode, *size)?;
                rows.push(json!({
                    "kind": serde_json::to_value(mv.kind).expect("serializable"),
                    "deltas": mv.deltas.iter()
                        .map(|(d, from, to)| format!("{d}:{from}->{to}"))
                        .collect::<Vec<_>>().join(";"),
                    "slack": format!("{}->{}", mv.slack_from, mv.slack_to),
                    "ratio": rat_text(&ratio),
                    "result": result.text(),
                }));
            }
            json!({ "profile": p.text(), "count": rows.len(), "moves": rows })
        }
        Command::LowerBound { n } => {
            let r = lower_bound_construction(field, *n)?;
            json!({
                "n": n, "d": r.d, "w": r.w,
                "bound": r.bound.to_string(),
                "witness": r.witness.text(),
                "phi_n": r.phi_n.to_string(),
            })
        }
        Command::UpperBound { m } => {
            json!({ "m": m, "bound_log2": upper_bound_log2_upsilon(field, *m)? })
        }
        Command::Moments { m, n } => match (m, n) {
            (Some(m), None) => {
                let formula = formula_moments_unconstrained(field, *m);
                let brute = brute_moments_unconstrained(field, &index_for(field, m / 2), *m, budget)?;
                let matched = formula.expectation == brute.expectation
                    && formula.variance == brute.variance;
                let body = json!({
                    "m": m,
                    "formula": { "expectation": rat_text(&formula.expectation),
                                 "variance": rat_text(&formula.variance) },
                    "bruteforce": { "expectation": rat_text(&brute.expectation),
                                    "variance": rat_text(&brute.variance) },
                    "match": matched,
                });
                if !matched {
                    return Err(Error::Mismatch(format!("moment mismatch at m = {m}")));
                }
                body
            }
            (None, Some(n)) => {
                let formula = expectation_phi_nn(field, *n)?;
                let brute = brute_moments_constrained(field, &index_for(field, *n), *n, budget)?;
                let matched = formula == brute.expectation;
                let body = json!({
                    "n": n,
                    "formula": { "expectation": rat_text(&formula) },
                    "bruteforce": { "expectation": rat_text(&brute.expectation),
                                    "variance": rat_text(&brute.variance) },
                    "match": matched,
                });
                if !matched {
                    return Err(Error::Mismatch(format!("constrained moment mismatch at n = {n}")));
                }
                body
            }
            _ => return Err(Error::OutOfRange("pass exactly one of --m (unconstrained) or --n (constrained)".into())),
        },
        Command::SSizes { m, n } => match (m, n) {
            (Some(m), None) => {
                let formula = size_s_m(field, *m)?;
                let census = brute_size_s_m(field, *m, budget)?;
                if formula != census {
                    return Err(Error::Mismatch(format!("|S_m| mismatch at m = {m}")));
                }
                json!({ "m": m, "formula": formula.to_string(), "census": census.to_string(), "match": true })
            }
            (None, Some(n)) => {
                let formula = size_s_star(field, *n)?;
                let census = brute_size_s_star(field, *n, budget)?;
                if formula != census {
                    return Err(Error::Mismatch(format!("|S_n^*| mismatch at n = {n}")));
                }
                json!({ "n": n, "formula": formula.to_string(), "census": census.to_string(), "match": true })
            }
            _ => return Err(Error::OutOfRange("pass exactly one of --m or --n".into())),
        },
        Command::BijectionCheck { m, star } => {
            let s_set = enumerate_s(field, *m, *star, budget)?;
            let q_set = enumerate_q(field, *m, *star, budget)?;
            for quad in &s_set {
                let image = bijection_s_to_q(field, quad, *m, *star)?;
                if &bijection_q_to_s(field, &image, *m, *star)? != quad {
                    return Err(Error::Mismatch("S→Q→S round trip failed".into()));
                }
            }
            for quad in &q_set {
                let pre = bijection_q_to_s(field, quad, *m, *star)?;
                if &bijection_s_to_q(field, &pre, *m, *star)? != quad {
                    return Err(Error::Mismatch("Q→S→Q round trip failed".into()));
                }
            }
            if s_set.len() != q_set.len() {
                return Err(Error::Mismatch("|S| != |Q|".into()));
            }
            json!({ "m": m, "star": star, "set_size": s_set.len().to_string(), "match": true })
        }
        Command::Tail { m, c, beta } => {
            let c = parse_rational(c)?;
            let (at_c, grid_min) = chernoff_tail(field, *m, &c)?;
            let mut body = json!({
                "m": m, "c": rat_text(&c),
                "bound_at_c": at_c, "grid_min": grid_min,
                "moment_at_c": rat_text(&moment_alpha(field, *m, &c)?),
            });
            if let Some(beta) = beta {
                let size = (field.q() as u128).checked_pow(*m as u32).unwrap_or(u128::MAX);
                if size > budget {
                    return Err(Error::BudgetExceeded { size, budget });
                }
                let prob = phi_tail_empirical(field, &index_for(field, m / 2), *m, *beta, budget)?;
                body["beta"] = json!(beta);
                body["phi_tail"] = Value::String(rat_text(&prob));
            }
            body
        }
        Command::OmegaDist { m } => {
            let size = (field.q() as u128).checked_pow(*m as u32).unwrap_or(u128::MAX);
            if size > budget {
                return Err(Error::BudgetExceeded { size, budget });
            }
            let dist = omega_distribution(field, &index_for(field, m / 2), *m, budget)?;
            let histogram: Map<String, Value> = dist
                .histogram
                .iter()
                .map(|(k, v)| (k.to_string(), count_text(v)))
                .collect();
            json!({ "m": m, "histogram": histogram, "total": dist.total.to_string() })
        }
        Command::VerifyAll => verify_all(field, budget, cli.seed)?,
    };
    if let Value::Object(map) = body {
        for (k, v) in map {
            doc.insert(k, v);
        }
    }
    Ok(Value::Object(doc))
}

/// One named check in the verify-all battery.
fn check<F: FnOnce() -> Result<bool>>(lines: &mut Vec<String>, name: &str, f: F) -> Result<()> {
    match f() {
        Ok(true) => lines.push(format!("PASS {name}")),
        Ok(false) => {
            lines.push(format!("FAIL {name}"));
            return Err(Error::Mismatch(name.to_string()));
        }
        Err(Error::BudgetExceeded { .. }) => lines.push(format!("SKIP {name} (budget)")),
        Err(e) => {
            lines.push(format!("FAIL {name} ({e})"));
            return Err(Error::Mismatch(name.to_string()));
        }
    }
    Ok(())
}

fn verify_all(field: &FieldSpec, budget: u128, seed: u64) -> Result<Value> {
    let mut lines = Vec::new();
    let q = field.q();
    let small = q <= 3;
    let index = index_for(field, 6);

    check(&mut lines, "irreducible-count-vs-census", || {
        for d in 1..=if small { 6 } else { 3 } {
            let formula = irred::count_irreducibles(field, d as u64)?;
            if formula != BigUint::from(irred::enumerate_irreducibles(field, d).len()) {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "degree-power-identity", || {
        for d in 1..=8u64 {
            let (lhs, rhs) = irred::degree_power_identity(field, d)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "phi-vs-divisor-census", || {
        let mmax = if small { 6 } else { 3 };
        let size = (q as u128).pow(mmax as u32);
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        for m in 0..=mmax {
            for s in poly::enumerate_monic(field, m) {
                let fac = factorize(field, &index, &s)?;
                if phi(&fac) != crate::divisors::brute_divisor_count(field, &s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "unconstrained-moments", || {
        for m in 0..=if small { 6 } else { 3 } {
            let formula = formula_moments_unconstrained(field, m);
            let brute = brute_moments_unconstrained(field, &index, m, budget)?;
            if formula.expectation != brute.expectation || formula.variance != brute.variance {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "s-m-size", || {
        for m in 0..=if small { 3 } else { 2 } {
            if size_s_m(field, m)? != brute_size_s_m(field, m, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "coprime-pairs", || {
        for t in 0..=2usize {
            if coprime_pairs(field, t) != brute_coprime_pairs(field, t, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "s-star-size-and-mean", || {
        for n in 0..=2usize {
            if size_s_star(field, n)? != brute_size_s_star(field, n, budget)? {
                return Ok(false);
            }
            let brute = brute_moments_constrained(field, &index, n, budget)?;
            if expectation_phi_nn(field, n)? != brute.expectation {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "s-q-bijection", || {
        let m = if q == 2 { 2 } else { 1 };
        let s_set = enumerate_s(field, m, false, budget)?;
        let q_set = enumerate_q(field, m, false, budget)?;
        if s_set.len() != q_set.len() {
            return Ok(false);
        }
        for quad in &s_set {
            let image = bijection_s_to_q(field, quad, m, false)?;
            if &bijection_q_to_s(field, &image, m, false)? != quad {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "upsilon-search-vs-brute", || {
        for m in 0..=if small { 7 } else { 4 } {
            let brute = upsilon_bruteforce(field, &index, m, budget)?;
            let search = upsilon_profile_search(field, m);
            if brute.value != search.value || brute.witnesses != search.witnesses {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "upsilon-nn-search-vs-brute", || {
        for n in 0..=if small { 3 } else { 2 } {
            let brute = upsilon_nn_bruteforce(field, &index, n, budget)?;
            let search = upsilon_nn_profile_search(field, n);
            if brute.value != search.value || brute.witnesses != search.witnesses {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "witness-structure", || {
        for m in 1..=if small { 7 } else { 4 } {
            for w in upsilon_bruteforce(field, &index, m, budget)?.witnesses {
                if !check_structure(field, &w, Mode::Ordinary, m)?.hard_ok() {
                    return Ok(false);
                }
            }
        }
        for n in 1..=if small { 3 } else { 2 } {
            for w in upsilon_nn_bruteforce(field, &index, n, budget)?.witnesses {
                if !check_structure(field, &w, Mode::Slack, 2 * n)?.hard_ok() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "witness-local-optimality", || {
        let one = BigRational::one();
        for m in 1..=if small { 6 } else { 3 } {
            for w in upsilon_bruteforce(field, &index, m, budget)?.witnesses {
                for mv in enumerate_moves(field, &w, Mode::Ordinary, m) {
                    if apply_move(field, &w, &mv, Mode::Ordinary, m)?.1 > one {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "bound-sandwich", || {
        for n in 1..=if small { 3 } else { 2 } {
            let lower = lower_bound_construction(field, n)?;
            if lower.bound > upsilon_nn_profile_search(field, n).value {
                return Ok(false);
            }
        }
        for m in q as usize..=(q as usize + 4) {
            let value = upsilon_profile_search(field, m).value;
            let exact = big_log2(&value);
            if exact > upper_bound_log2_upsilon(field, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "moment-alpha-vs-histogram", || {
        for m in 0..=if small { 6 } else { 3 } {
            let dist = omega_distribution(field, &index, m, budget)?;
            for alpha in [
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::one(),
                BigRational::from_integer(BigInt::from(2)),
            ] {
                if moment_alpha(field, m, &alpha)? != dist.moment_alpha(&alpha) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    check(&mut lines, "g-series-normalization", || {
        for m in 1..=16usize {
            if !crate::tail::g_series(field, m, &BigRational::one())?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    if q >= 3 {
        check(&mut lines, "chernoff-soundness", || {
            let c = BigRational::new(BigInt::from(3), BigInt::from(2));
            for m in 4..=6usize {
                let (at_c, grid) = chernoff_tail(field, m, &c)?;
                let dist = omega_distribution(field, &index, m, budget)?;
                let w = 1.5 * (m as f64).ln();
                let exact = rational_f64(&dist.tail_prob(w));
                if at_c + 1e-9 < exact || grid + 1e-9 < exact {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }
    check(&mut lines, "slack-decomposition-seeded", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4usize);
            let deg = rng.gen_range(0..=2 * n);
            let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
            coeffs.push(1);
            let s = Poly::from_coeffs(coeffs);
            let fac = factorize(field, &index, &s)?;
            let r0 = (2 * n - deg) as u32;
            // random coprime split: each irreducible factor goes to a or b
            let mut a_pairs = Vec::new();
            let mut b_pairs = Vec::new();
            for (_, d, r) in &fac.factors {
                if rng.gen_bool(0.5) {
                    a_pairs.push((*d, *r));
                } else {
                    b_pairs.push((*d, *r));
                }
            }
            let h = r0 as usize + b_pairs.iter().map(|(d, r)| d * *r as usize).sum::<usize>();
            let a_spec = spectrum_of_pairs(&a_pairs, 0);
            let b_spec = spectrum_of_pairs(&b_pairs, r0);
            let mut total = BigUint::default();
            for k in 0..=h {
                let a_deg = n as i64 - k as i64;
                if a_deg < 0 || a_deg as usize >= a_spec.counts.len() {
                    continue;
                }
                total += &a_spec.counts[a_deg as usize] * &b_spec.counts[k];
            }
            if total != phi_constrained(&fac, n, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?;

    Ok(json!({ "checks": lines, "result": "ok" }))
}

fn rational_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// log₂ of a positive big integer, good to f64 precision.
fn big_log2(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 53 {
        use num_traits::ToPrimitive;
        return v.to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    use num_traits::ToPrimitive;
    let top = (v >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// Entry point used by the binary: parse, run, map errors to exit codes.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(doc) => {
            print!("{doc}");
            EXIT_OK
        }
        Err(Error::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            EXIT_MISMATCH
        }
        Err(Error::BudgetExceeded { size, budget }) => {
            eprintln!("budget exceeded: enumeration size {size} > budget {budget}");
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
