//! Exact average-case formulas: expectation and variance of Φ_m and Φ_{n,n},
//! the quadruple-set sizes |S_m|, |S_n^*|, |X_n^*| with their brute-force
//! censuses, the gcd bijections between the quadruple sets, and the Λ-kernel
//! degree solutions.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisors::{factorize, phi, phi_constrained};
use crate::field::FieldSpec;
use crate::irred::IrreducibleIndex;
use crate::poly::{self, Poly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentSource {
    Formula,
    Bruteforce,
}

/// Exact first/second moments of a divisor-count random variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    /// m (unconstrained) or n (constrained)
    pub param: usize,
    pub expectation: BigRational,
    pub second_moment: BigRational,
    pub variance: BigRational,
    pub source: MomentSource,
}

impl MomentReport {
    fn from_mean_second(param: usize, mean: BigRational, second: BigRational, source: MomentSource) -> MomentReport {
        let variance = &second - &mean * &mean;
        MomentReport { param, expectation: mean, second_moment: second, variance, source }
    }
}

fn rat_u64(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binom_rat(n: u64, k: u64) -> BigRational {
    let mut out = BigRational::one();
    if k > n {
        return BigRational::zero();
    }
    for i in 0..k {
        out *= BigRational::new(BigInt::from(n - i), BigInt::from(i + 1));
    }
    out
}

fn rational_to_biguint(r: &BigRational) -> Result<BigUint> {
    if !r.is_integer() || r.is_negative() {
        return Err(Error::Mismatch(format!("expected a nonnegative integer, got {r}")));
    }
    Ok(r.to_integer().to_biguint().expect("nonnegative"))
}

// ---------------------------------------------------------------------------
// unconstrained moments
// ---------------------------------------------------------------------------

/// E{Φ_m} = m + 1.
pub fn expectation_phi(_field: &FieldSpec, m: usize) -> BigRational {
    rat_u64(m as u64 + 1)
}

/// Var{Φ_m} = (q−1)/q · C(m+1, 3).
pub fn variance_phi(field: &FieldSpec, m: usize) -> BigRational {
    let q = field.q();
    BigRational::new(BigInt::from(q - 1), BigInt::from(q)) * binom_rat(m as u64 + 1, 3)
}

pub fn formula_moments_unconstrained(field: &FieldSpec, m: usize) -> MomentReport {
    let mean = expectation_phi(field, m);
    let second = variance_phi(field, m) + &mean * &mean;
    MomentReport::from_mean_second(m, mean, second, MomentSource::Formula)
}

/// Exact mean/variance of Φ over M_m by full enumeration.
pub fn brute_moments_unconstrained(
    field: &FieldSpec,
    index: &IrreducibleIndex,
    m: usize,
    budget: u128,
) -> Result<MomentReport> {
    let size = (field.q() as u128).pow(m as u32);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut sum = BigUint::zero();
    let mut sum_sq = BigUint::zero();
    for s in poly::enumerate_monic(field, m) {
        let value = phi(&factorize(field, index, &s)?);
        sum += &value;
        sum_sq += &value * &value;
    }
    let total = BigInt::from(poly::m_size(field, m));
    let mean = BigRational::new(BigInt::from(sum), total.clone());
    let second = BigRational::new(BigInt::from(sum_sq), total);
    Ok(MomentReport::from_mean_second(m, mean, second, MomentSource::Bruteforce))
}

// ---------------------------------------------------------------------------
// |S_m| and the S ↔ Q bijection
// ---------------------------------------------------------------------------

/// |S_m| = q^m·((q−1)/q·C(m+1,3) + (m+1)²), exact.
pub fn size_s_m(field: &FieldSpec, m: usize) -> Result<BigUint> {
    let q = rat_u64(field.q());
    let qm = BigRational::from_integer(BigInt::from(poly::m_size(field, m)));
    let m1 = m as u64 + 1;
    let value = qm * ((q.clone() - BigRational::one()) / q * binom_rat(m1, 3) + rat_u64(m1) * rat_u64(m1));
    rational_to_biguint(&value)
}

/// Pairwise coprimality matrix over a fixed polynomial list.
fn coprime_matrix(field: &FieldSpec, polys: &[Poly]) -> Result<Vec<Vec<bool>>> {
    let n = polys.len();
    let mut mat = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i..n {
            let co = poly::gcd(field, &polys[i], &polys[j])?.degree() == Some(0);
            mat[i][j] = co;
            mat[j][i] = co;
        }
    }
    Ok(mat)
}

/// Census of S_m = {(a,b,c,d) ∈ P_m⁴ : gcd(b,c) = 1, abcd ∈ M_m}.  The
/// (b,c) pairs are scanned with real gcds; the (a,d) completions are counted
/// through the degree identity deg(abcd) = Σ deg, which pins abcd ∈ M_m.
pub fn brute_size_s_m(field: &FieldSpec, m: usize, budget: u128) -> Result<BigUint> {
    let polys: Vec<Poly> = poly::enumerate_upto(field, m).collect();
    let work = (polys.len() as u128).pow(2);
    if work > budget {
        return Err(Error::BudgetExceeded { size: work, budget });
    }
    let coprime = coprime_matrix(field, &polys)?;
    // pairs (a, d) ∈ P_m² with deg a + deg d = t
    let deg_count: Vec<BigUint> = (0..=m).map(|k| poly::m_size(field, k)).collect();
    let mut pair_count = vec![BigUint::zero(); m + 1];
    for (t, slot) in pair_count.iter_mut().enumerate() {
        for k in 0..=t {
            *slot += &deg_count[k] * &deg_count[t - k];
        }
    }
    let mut total = BigUint::zero();
    for (i, b) in polys.iter().enumerate() {
        for (j, c) in polys.iter().enumerate() {
            if !coprime[i][j] {
                continue;
            }
            let used = b.degree().unwrap() + c.degree().unwrap();
            if used <= m {
                total += &pair_count[m - used];
            }
        }
    }
    Ok(total)
}

/// Membership in S_m.
pub fn in_s_m(field: &FieldSpec, quad: &[Poly; 4], m: usize) -> Result<bool> {
    let [a, b, c, d] = quad;
    if quad.iter().any(|f| f.is_zero() || !f.is_monic() || f.degree().unwrap() > m) {
        return Ok(false);
    }
    if poly::gcd(field, b, c)?.degree() != Some(0) {
        return Ok(false);
    }
    let product = poly::mul(field, &poly::mul(field, a, b), &poly::mul(field, c, d));
    Ok(product.degree() == Some(m))
}

/// Membership in Q_m = {(u,v,û,v̂) ∈ P_m⁴ : uv = ûv̂ ∈ M_m}.
pub fn in_q_m(field: &FieldSpec, quad: &[Poly; 4], m: usize) -> Result<bool> {
    let [u, v, uh, vh] = quad;
    if quad.iter().any(|f| f.is_zero() || !f.is_monic() || f.degree().unwrap() > m) {
        return Ok(false);
    }
    let uv = poly::mul(field, u, v);
    Ok(uv.degree() == Some(m) && uv == poly::mul(field, uh, vh))
}

/// Membership in S_n^* = {(a,b,c,d) ∈ P_n⁴ : gcd(b,c) = 1, ab, cd, ac, bd ∈ P_n}.
pub fn in_s_star(field: &FieldSpec, quad: &[Poly; 4], n: usize) -> Result<bool> {
    let [a, b, c, d] = quad;
    if quad.iter().any(|f| f.is_zero() || !f.is_monic() || f.degree().unwrap() > n) {
        return Ok(false);
    }
    if poly::gcd(field, b, c)?.degree() != Some(0) {
        return Ok(false);
    }
    let (da, db, dc, dd) = (a.degree().unwrap(), b.degree().unwrap(), c.degree().unwrap(), d.degree().unwrap());
    Ok(da + db <= n && dc + dd <= n && da + dc <= n && db + dd <= n)
}

/// Membership in Q_n^* = {(u,v,û,v̂) ∈ P_n⁴ : uv = ûv̂}.
pub fn in_q_star(field: &FieldSpec, quad: &[Poly; 4], n: usize) -> Result<bool> {
    let [u, v, uh, vh] = quad;
    if quad.iter().any(|f| f.is_zero() || !f.is_monic() || f.degree().unwrap() > n) {
        return Ok(false);
    }
    Ok(poly::mul(field, u, v) == poly::mul(field, uh, vh))
}

/// The forward bijection u = ab, v = cd, û = ac, v̂ = bd; the input must be
/// in S_m (star = false) or S_n^* (star = true).
pub fn bijection_s_to_q(field: &FieldSpec, quad: &[Poly; 4], bound: usize, star: bool) -> Result<[Poly; 4]> {
    let member = if star { in_s_star(field, quad, bound)? } else { in_s_m(field, quad, bound)? };
    if !member {
        return Err(Error::OutOfRange("quadruple is not in the source set".into()));
    }
    let [a, b, c, d] = quad;
    Ok([
        poly::mul(field, a, b),
        poly::mul(field, c, d),
        poly::mul(field, a, c),
        poly::mul(field, b, d),
    ])
}

/// The inverse bijection a = gcd(u,û), d = gcd(v,v̂), b = u/a, c = v/d.
pub fn bijection_q_to_s(field: &FieldSpec, quad: &[Poly; 4], bound: usize, star: bool) -> Result<[Poly; 4]> {
    let member = if star { in_q_star(field, quad, bound)? } else { in_q_m(field, quad, bound)? };
    if !member {
        return Err(Error::OutOfRange("quadruple is not in the target set".into()));
    }
    let [u, v, uh, vh] = quad;
    let a = poly::gcd(field, u, uh)?;
    let d = poly::gcd(field, v, vh)?;
    let (b, rb) = poly::divrem(field, u, &a)?;
    let (c, rc) = poly::divrem(field, v, &d)?;
    if !rb.is_zero() || !rc.is_zero() {
        return Err(Error::Mismatch("gcd preimage did not divide".into()));
    }
    Ok([a, b, c, d])
}

/// Every element of S_m (or S_n^* with star = true) by exhaustive filter.
pub fn enumerate_s(field: &FieldSpec, bound: usize, star: bool, budget: u128) -> Result<Vec<[Poly; 4]>> {
    let polys: Vec<Poly> = poly::enumerate_upto(field, bound).collect();
    let size = (polys.len() as u128).pow(4);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut out = Vec::new();
    for a in &polys {
        for b in &polys {
            for c in &polys {
                for d in &polys {
                    let quad = [a.clone(), b.clone(), c.clone(), d.clone()];
                    let member =
                        if star { in_s_star(field, &quad, bound)? } else { in_s_m(field, &quad, bound)? };
                    if member {
                        out.push(quad);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every element of Q_m (or Q_n^* with star = true) by exhaustive filter.
pub fn enumerate_q(field: &FieldSpec, bound: usize, star: bool, budget: u128) -> Result<Vec<[Poly; 4]>> {
    let polys: Vec<Poly> = poly::enumerate_upto(field, bound).collect();
    let size = (polys.len() as u128).pow(4);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut out = Vec::new();
    for u in &polys {
        for v in &polys {
            for uh in &polys {
                for vh in &polys {
                    let quad = [u.clone(), v.clone(), uh.clone(), vh.clone()];
                    let member =
                        if star { in_q_star(field, &quad, bound)? } else { in_q_m(field, &quad, bound)? };
                    if member {
                        out.push(quad);
                    }
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// φ(t) and |S_n^*|
// ---------------------------------------------------------------------------

/// φ(t) = (q^{2t+1} − 1)/(q − 1): coprime pairs in P_t².
pub fn coprime_pairs(field: &FieldSpec, t: usize) -> BigUint {
    let q = BigUint::from(field.q());
    (q.pow(2 * t as u32 + 1) - BigUint::one()) / BigUint::from(field.q() - 1)
}

/// Exhaustive gcd census over P_t².
pub fn brute_coprime_pairs(field: &FieldSpec, t: usize, budget: u128) -> Result<BigUint> {
    let polys: Vec<Poly> = poly::enumerate_upto(field, t).collect();
    let size = (polys.len() as u128).pow(2);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut count = BigUint::zero();
    for b in &polys {
        for c in &polys {
            if poly::gcd(field, b, c)?.degree() == Some(0) {
                count += BigUint::one();
            }
        }
    }
    Ok(count)
}

/// |S_n^*| = (n+1)q^{2n+1}(q+1)/(q−1)² − (q^{n+1}−1)(3q^{n+1}−1)/(q−1)³,
/// exact (the division is checked to come out integral).
pub fn size_s_star(field: &FieldSpec, n: usize) -> Result<BigUint> {
    let q = rat_u64(field.q());
    let qn1 = BigRational::from_integer(BigInt::from(field.q()).pow(n as u32 + 1));
    let q2n1 = BigRational::from_integer(BigInt::from(field.q()).pow(2 * n as u32 + 1));
    let qm1 = &q - BigRational::one();
    let one = BigRational::one();
    let first = rat_u64(n as u64 + 1) * q2n1 * (&q + &one) / (&qm1 * &qm1);
    let second = (&qn1 - &one) * (rat_u64(3) * &qn1 - &one) / (&qm1 * &qm1 * &qm1);
    rational_to_biguint(&(first - second))
}

/// Census of S_n^*: real gcds over the (b,c) pairs; the (a,d) completions
/// are counted from the degree windows deg a, deg d ≤ n − max(deg b, deg c).
pub fn brute_size_s_star(field: &FieldSpec, n: usize, budget: u128) -> Result<BigUint> {
    let polys: Vec<Poly> = poly::enumerate_upto(field, n).collect();
    let work = (polys.len() as u128).pow(2);
    if work > budget {
        return Err(Error::BudgetExceeded { size: work, budget });
    }
    let coprime = coprime_matrix(field, &polys)?;
    let mut total = BigUint::zero();
    for (i, b) in polys.iter().enumerate() {
        for (j, c) in polys.iter().enumerate() {
            if !coprime[i][j] {
                continue;
            }
            let t = n - b.degree().unwrap().max(c.degree().unwrap());
            let completions = poly::p_size(field, t);
            total += &completions * &completions;
        }
    }
    Ok(total)
}

/// E{Φ_{n,n}} = |S_n^*| / |P_n|², exact.
pub fn expectation_phi_nn(field: &FieldSpec, n: usize) -> Result<BigRational> {
    let pn = BigInt::from(poly::p_size(field, n));
    Ok(BigRational::new(BigInt::from(size_s_star(field, n)?), &pn * &pn))
}

/// Exact mean/second moment of Φ_{n,n} over uniform P_n² by enumeration.
pub fn brute_moments_constrained(
    field: &FieldSpec,
    index: &IrreducibleIndex,
    n: usize,
    budget: u128,
) -> Result<MomentReport> {
    let pn = poly::p_size(field, n).to_u128().ok_or(Error::BudgetExceeded { size: u128::MAX, budget })?;
    let size = pn * pn;
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let polys: Vec<Poly> = poly::enumerate_upto(field, n).collect();
    let mut cache: HashMap<Poly, BigUint> = HashMap::new();
    let mut sum = BigUint::zero();
    let mut sum_sq = BigUint::zero();
    for u in &polys {
        for v in &polys {
            let s = poly::mul(field, u, v);
            let value = match cache.get(&s) {
                Some(v) => v.clone(),
                None => {
                    let fac = factorize(field, index, &s)?;
                    let v = phi_constrained(&fac, n, n)?;
                    cache.insert(s, v.clone());
                    v
                }
            };
            sum += &value;
            sum_sq += &value * &value;
        }
    }
    let total = BigInt::from(poly::p_size(field, n));
    let total_sq = &total * &total;
    let mean = BigRational::new(BigInt::from(sum), total_sq.clone());
    let second = BigRational::new(BigInt::from(sum_sq), total_sq);
    Ok(MomentReport::from_mean_second(n, mean, second, MomentSource::Bruteforce))
}

// ---------------------------------------------------------------------------
// octuple censuses: E_n^* and X_n^*
// ---------------------------------------------------------------------------

fn octuples(field: &FieldSpec, n: usize, budget: u128) -> Result<Vec<Poly>> {
    let polys: Vec<Poly> = poly::enumerate_upto(field, n).collect();
    let size = (polys.len() as u128).pow(8);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(polys)
}

fn for_each_octuple<F: FnMut(&[&Poly; 8]) -> Result<()>>(polys: &[Poly], mut f: F) -> Result<()> {
    let k = polys.len();
    let mut idx = [0usize; 8];
    loop {
        let oct = [
            &polys[idx[0]], &polys[idx[1]], &polys[idx[2]], &polys[idx[3]],
            &polys[idx[4]], &polys[idx[5]], &polys[idx[6]], &polys[idx[7]],
        ];
        f(&oct)?;
        let mut pos = 7;
        loop {
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
        }
    }
}

/// Census of E_n^*: octuples (a₁,b₁,c₁,d₁,a₂,b₂,c₂,d₂) ∈ P_n⁸ with both
/// quadruples in S_n^*, a₁b₁ = a₂b₂ and c₁d₁ = c₂d₂.
pub fn e_star_census(field: &FieldSpec, n: usize, budget: u128) -> Result<BigUint> {
    let polys = octuples(field, n, budget)?;
    let mut count = BigUint::zero();
    for_each_octuple(&polys, |oct| {
        let first = [oct[0].clone(), oct[1].clone(), oct[2].clone(), oct[3].clone()];
        let second = [oct[4].clone(), oct[5].clone(), oct[6].clone(), oct[7].clone()];
        if in_s_star(field, &first, n)?
            && in_s_star(field, &second, n)?
            && poly::mul(field, oct[0], oct[1]) == poly::mul(field, oct[4], oct[5])
            && poly::mul(field, oct[2], oct[3]) == poly::mul(field, oct[6], oct[7])
        {
            count += BigUint::one();
        }
        Ok(())
    })?;
    Ok(count)
}

/// Census of X_n^*: octuples (f₁..f₈) ∈ P_n⁸ whose six 4-fold products stay
/// in P_n and with gcd(f₃f₄, f₅f₆) = gcd(f₂f₄, f₅f₇) = gcd(f₂,f₃) =
/// gcd(f₆,f₇) = 1.
pub fn x_star_census(field: &FieldSpec, n: usize, budget: u128) -> Result<BigUint> {
    let polys = octuples(field, n, budget)?;
    let mut count = BigUint::zero();
    for_each_octuple(&polys, |f| {
        let deg = |i: usize| f[i - 1].degree().unwrap();
        let products_ok = deg(1) + deg(2) + deg(3) + deg(4) <= n
            && deg(5) + deg(6) + deg(7) + deg(8) <= n
            && deg(1) + deg(2) + deg(5) + deg(6) <= n
            && deg(3) + deg(4) + deg(7) + deg(8) <= n
            && deg(1) + deg(3) + deg(5) + deg(7) <= n
            && deg(2) + deg(4) + deg(6) + deg(8) <= n;
        if !products_ok {
            return Ok(());
        }
        let co = |a: &Poly, b: &Poly| -> Result<bool> { Ok(poly::gcd(field, a, b)?.degree() == Some(0)) };
        let f34 = poly::mul(field, f[2], f[3]);
        let f56 = poly::mul(field, f[4], f[5]);
        let f24 = poly::mul(field, f[1], f[3]);
        let f57 = poly::mul(field, f[4], f[6]);
        if co(&f34, &f56)? && co(&f24, &f57)? && co(f[1], f[2])? && co(f[5], f[6])? {
            count += BigUint::one();
        }
        Ok(())
    })?;
    Ok(count)
}

/// The X_n^* → E_n^* bijection: a₁ = f₁f₂, b₁ = f₃f₄, c₁ = f₅f₆, d₁ = f₇f₈,
/// a₂ = f₁f₃, b₂ = f₂f₄, c₂ = f₅f₇, d₂ = f₆f₈.
pub fn bijection_x_to_e(field: &FieldSpec, f: &[Poly; 8]) -> [Poly; 8] {
    [
        poly::mul(field, &f[0], &f[1]),
        poly::mul(field, &f[2], &f[3]),
        poly::mul(field, &f[4], &f[5]),
        poly::mul(field, &f[6], &f[7]),
        poly::mul(field, &f[0], &f[2]),
        poly::mul(field, &f[1], &f[3]),
        poly::mul(field, &f[4], &f[6]),
        poly::mul(field, &f[5], &f[7]),
    ]
}

/// The explicit bound Σ_{t=0}^{2n} (min(2n−t, t)+1)³·(n+1)⁴·q^{2n−t}
/// on |X_n^*|.
pub fn x_star_upper_bound(field: &FieldSpec, n: usize) -> BigUint {
    let q = BigUint::from(field.q());
    let n1 = BigUint::from(n as u64 + 1);
    let n1_4 = n1.pow(4);
    let mut total = BigUint::zero();
    for t in 0..=2 * n {
        let h = BigUint::from((2 * n - t).min(t) as u64 + 1);
        total += h.pow(3) * &n1_4 * q.pow((2 * n - t) as u32);
    }
    total
}

// ---------------------------------------------------------------------------
// Λ-kernel degree solutions
// ---------------------------------------------------------------------------

/// Sign matrix whose rows span the right kernel of the degree system.
const LAMBDA: [[i64; 8]; 4] = [
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
];

/// Coefficient matrix of the degree system; right-hand side is
/// (h₁, m−h₁, h₂, h₃) = (n, n, n, n) at m = 2n, h = (n, n, n).
const DEGREE_SYSTEM: [[i64; 8]; 4] = [
    [1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [1, 1, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 0],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSolution {
    /// the stated base vector (k₁..k₈) before the kernel shift
    pub base: [i64; 8],
    /// base + Λᵀa
    pub k: [i64; 8],
    /// set when the stated base vector fails the degree system as printed
    pub erratum: Option<String>,
}

/// k = base + Λᵀa with the stated base degrees
/// k₁ = k₂ = k₃ = k₅ = ⌊(n+2)/4⌋, k₄ = k₆ = k₇ = n − 3⌊(n+2)/4⌋,
/// k₈ = 5⌊(n+2)/4⌋ − n.  The base vector is verified against the degree
/// system and any discrepancy is reported, never corrected.
pub fn lambda_solutions(n: usize, a: [i64; 4]) -> Result<LambdaSolution> {
    if n < 12 {
        return Err(Error::OutOfRange("n must be >= 12".into()));
    }
    let abs_sum: i64 = a.iter().map(|x| x.abs()).sum();
    if 4 * abs_sum > n as i64 - 8 {
        return Err(Error::OutOfRange(format!(
            "Σ|a_i| = {abs_sum} exceeds n/4 − 2 = {}",
            n as f64 / 4.0 - 2.0
        )));
    }
    let f = ((n + 2) / 4) as i64;
    let nn = n as i64;
    let base = [f, f, f, nn - 3 * f, f, nn - 3 * f, nn - 3 * f, 5 * f - nn];
    let check = |k: &[i64; 8]| -> Option<String> {
        for row in &DEGREE_SYSTEM {
            let lhs: i64 = row.iter().zip(k).map(|(m, kj)| m * kj).sum();
            if lhs != nn {
                return Some(format!("degree system row {row:?} gives {lhs}, expected {nn}"));
            }
        }
        None
    };
    let erratum = check(&base);
    let mut k = base;
    for (i, &ai) in a.iter().enumerate() {
        for j in 0..8 {
            k[j] += LAMBDA[i][j] * ai;
        }
    }
    for &kj in &k {
        if kj < 0 || kj > nn {
            return Err(Error::OutOfRange(format!("degree {kj} outside [0, {n}]")));
        }
    }
    if erratum.is_none() {
        if let Some(msg) = check(&k) {
            return Err(Error::Mismatch(format!("kernel shift left the system: {msg}")));
        }
    }
    Ok(LambdaSolution { base, k, erratum })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::make(p, 1, None).unwrap()
    }

    #[test]
    fn formula_moment_examples() {
        let f2 = gf(2);
        assert_eq!(expectation_phi(&f2, 3), rat_u64(4));
        assert_eq!(variance_phi(&f2, 3), rat_u64(2));
        assert_eq!(expectation_phi(&f2, 0), rat_u64(1));
        assert!(variance_phi(&f2, 0).is_zero());
        let f3 = gf(3);
        assert_eq!(expectation_phi(&f3, 4), rat_u64(5));
        assert_eq!(variance_phi(&f3, 4), BigRational::new(BigInt::from(20), BigInt::from(3)));
    }

    #[test]
    fn brute_matches_formula_unconstrained() {
        for (p, mmax) in [(2u64, 7usize), (3, 5)] {
            let f = gf(p);
            let idx = IrreducibleIndex::materialize(&f, mmax / 2 + 1);
            for m in 0..=mmax {
                let brute = brute_moments_unconstrained(&f, &idx, m, 1 << 24).unwrap();
                let formula = formula_moments_unconstrained(&f, m);
                assert_eq!(brute.expectation, formula.expectation, "q={p} m={m}");
                assert_eq!(brute.variance, formula.variance, "q={p} m={m}");
                assert_eq!(brute.variance, &brute.second_moment - &brute.expectation * &brute.expectation);
            }
        }
    }

    #[test]
    fn s_m_sizes() {
        let f2 = gf(2);
        assert_eq!(size_s_m(&f2, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(size_s_m(&f2, 1).unwrap(), BigUint::from(8u32));
        assert_eq!(size_s_m(&f2, 2).unwrap(), BigUint::from(38u32));
        for (p, mmax) in [(2u64, 3usize), (3, 2)] {
            let f = gf(p);
            for m in 0..=mmax {
                assert_eq!(brute_size_s_m(&f, m, 1 << 24).unwrap(), size_s_m(&f, m).unwrap(), "q={p} m={m}");
            }
        }
    }

    #[test]
    fn bijection_round_trip() {
        let f = gf(2);
        for m in 0..=3usize {
            let s = enumerate_s(&f, m, false, 1 << 24).unwrap();
            let q = enumerate_q(&f, m, false, 1 << 24).unwrap();
            assert_eq!(s.len(), q.len(), "m={m}");
            assert_eq!(BigUint::from(s.len()), size_s_m(&f, m).unwrap());
            for quad in &s {
                let image = bijection_s_to_q(&f, quad, m, false).unwrap();
                assert!(in_q_m(&f, &image, m).unwrap());
                let back = bijection_q_to_s(&f, &image, m, false).unwrap();
                assert_eq!(&back, quad);
            }
            for quad in &q {
                let pre = bijection_q_to_s(&f, quad, m, false).unwrap();
                assert_eq!(bijection_s_to_q(&f, &pre, m, false).unwrap(), *quad);
            }
        }
    }

    #[test]
    fn bijection_example() {
        // (x, x+1, 1, 1) → (x(x+1), 1, x, x+1)
        let f = gf(2);
        let x = Poly::x();
        let x1 = Poly::parse(&f, "1 1").unwrap();
        let quad = [x.clone(), x1.clone(), Poly::one(), Poly::one()];
        let image = bijection_s_to_q(&f, &quad, 2, false).unwrap();
        assert_eq!(image, [poly::mul(&f, &x, &x1), Poly::one(), x, x1]);
        assert_eq!(bijection_q_to_s(&f, &image, 2, false).unwrap(), quad);
    }

    #[test]
    fn coprime_pair_counts() {
        for (p, tmax) in [(2u64, 3usize), (3, 2)] {
            let f = gf(p);
            for t in 0..=tmax {
                assert_eq!(brute_coprime_pairs(&f, t, 1 << 24).unwrap(), coprime_pairs(&f, t), "q={p} t={t}");
            }
        }
        assert_eq!(coprime_pairs(&gf(2), 1), BigUint::from(7u32));
        assert_eq!(coprime_pairs(&gf(3), 1), BigUint::from(13u32));
        assert_eq!(coprime_pairs(&gf(2), 0), BigUint::from(1u32));
    }

    #[test]
    fn s_star_sizes_and_expectation() {
        let f2 = gf(2);
        assert_eq!(size_s_star(&f2, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(size_s_star(&f2, 2).unwrap(), BigUint::from(127u32));
        assert_eq!(
            expectation_phi_nn(&f2, 2).unwrap(),
            BigRational::new(BigInt::from(127), BigInt::from(49))
        );
        for (p, nmax) in [(2u64, 3usize), (3, 2)] {
            let f = gf(p);
            for n in 0..=nmax {
                assert_eq!(brute_size_s_star(&f, n, 1 << 24).unwrap(), size_s_star(&f, n).unwrap(), "q={p} n={n}");
            }
        }
    }

    #[test]
    fn constrained_mean_matches_formula() {
        for (p, nmax) in [(2u64, 3usize), (3, 2)] {
            let f = gf(p);
            let idx = IrreducibleIndex::materialize(&f, nmax);
            for n in 0..=nmax {
                let brute = brute_moments_constrained(&f, &idx, n, 1 << 24).unwrap();
                assert_eq!(brute.expectation, expectation_phi_nn(&f, n).unwrap(), "q={p} n={n}");
            }
        }
    }

    #[test]
    fn octuple_censuses_agree() {
        let f = gf(2);
        for n in 0..=1usize {
            let e = e_star_census(&f, n, 1 << 24).unwrap();
            let x = x_star_census(&f, n, 1 << 24).unwrap();
            assert_eq!(e, x, "n={n}");
            // |P_n|²·E{Φ_{n,n}²} = |E_n^*|
            let idx = IrreducibleIndex::materialize(&f, n.max(1));
            let brute = brute_moments_constrained(&f, &idx, n, 1 << 24).unwrap();
            let pn = BigInt::from(poly::p_size(&f, n));
            assert_eq!(brute.second_moment * BigRational::from_integer(&pn * &pn),
                BigRational::from_integer(BigInt::from(e)));
            assert!(x_star_census(&f, n, 1 << 24).unwrap() <= x_star_upper_bound(&f, n));
        }
        assert_eq!(e_star_census(&f, 0, 1 << 24).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn x_star_bound_growth() {
        // bound/(n+1)⁴q^{2n} is at most Σ_{t≥0} (t+1)³ q^{−t} = 52 for q = 2
        let f = gf(2);
        for n in 1..=8usize {
            let bound = x_star_upper_bound(&f, n);
            let scale = BigUint::from(n as u64 + 1).pow(4) * BigUint::from(2u64).pow(2 * n as u32);
            assert!(bound <= scale * BigUint::from(52u32), "n={n}");
        }
    }

    #[test]
    fn lambda_solution_base() {
        let sol = lambda_solutions(12, [0, 0, 0, 0]).unwrap();
        assert_eq!(sol.base, [3, 3, 3, 3, 3, 3, 3, 3]);
        assert_eq!(sol.k, sol.base);
        assert!(sol.erratum.is_none(), "{:?}", sol.erratum);
    }

    #[test]
    fn lambda_solutions_distinct_and_valid() {
        let n = 40;
        let mut seen = std::collections::BTreeSet::new();
        for a1 in -2i64..=2 {
            for a2 in -2i64..=2 {
                let sol = lambda_solutions(n, [a1, a2, 1, -1]).unwrap();
                assert!(sol.erratum.is_none());
                assert!(seen.insert(sol.k), "duplicate k for a = ({a1}, {a2}, 1, -1)");
                for row in &DEGREE_SYSTEM {
                    let lhs: i64 = row.iter().zip(&sol.k).map(|(m, kj)| m * kj).sum();
                    assert_eq!(lhs, n as i64);
                }
            }
        }
        assert!(lambda_solutions(12, [3, 3, 3, 3]).is_err());
        assert!(lambda_solutions(8, [0, 0, 0, 0]).is_err());
    }

    #[test]
    fn lambda_rows_span_kernel() {
        for lam in &LAMBDA {
            for row in &DEGREE_SYSTEM {
                let dot: i64 = row.iter().zip(lam).map(|(m, l)| m * l).sum();
                assert_eq!(dot, 0, "Λ row {lam:?} not in kernel of {row:?}");
            }
        }
    }

    #[test]
    fn markov_inequality_empirical() {
        // Prob{Φ_m ≥ m^{1+ε}} ≤ E{Φ_m}/m^{1+ε}
        let f = gf(2);
        let idx = IrreducibleIndex::materialize(&f, 4);
        for m in 2..=8usize {
            let threshold = (m as f64).powf(1.25);
            let mut hits = 0u64;
            for s in poly::enumerate_monic(&f, m) {
                let value = phi(&factorize(&f, &idx, &s).unwrap());
                if value.to_f64().unwrap() >= threshold {
                    hits += 1;
                }
            }
            let prob = hits as f64 / 2f64.powi(m as i32);
            let markov = (m as f64 + 1.0) / threshold;
            assert!(prob <= markov, "m={m}: {prob} > {markov}");
        }
    }
}
