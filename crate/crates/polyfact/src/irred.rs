//! Monic irreducible polynomials over GF(q): the Moebius count I(d),
//! enumeration in canonical order, the power identity q^d = Σ_{ℓ|d} ℓ·I(ℓ),
//! and the threshold δ_q(m).

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::field::FieldSpec;
use crate::poly::{self, Poly};
use crate::{Error, Result};

/// Moebius function of a small positive integer.
fn moebius(mut n: u64) -> i64 {
    let mut mu = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
        }
    }
    out
}

/// I(d) = (1/d)·Σ_{ℓ|d} μ(ℓ)·q^{d/ℓ}, the number of monic irreducibles of
/// degree d over GF(q).
pub fn count_irreducibles(field: &FieldSpec, d: u64) -> Result<BigUint> {
    if d < 1 {
        return Err(Error::OutOfRange("degree must be >= 1".into()));
    }
    let q = BigInt::from(field.q());
    let mut sum = BigInt::zero();
    for l in divisors_of(d) {
        let term = q.pow((d / l) as u32);
        match moebius(l) {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(d));
    debug_assert!(rem.is_zero() && !quot.is_negative());
    Ok(quot.to_biguint().expect("I(d) is a nonnegative integer"))
}

/// Trial-division irreducibility test: true iff `f` (nonzero) has no monic
/// divisor of degree in [1, ⌊deg f/2⌋].  Constants are not irreducible.
/// Deliberately independent of the Moebius formula: this is its oracle.
pub fn is_irreducible(field: &FieldSpec, f: &Poly) -> Result<bool> {
    let deg = f.degree().ok_or(Error::DivisionByZero)?;
    if deg == 0 {
        return Ok(false);
    }
    for d in 1..=deg / 2 {
        for g in poly::enumerate_monic(field, d) {
            if poly::divides(field, &g, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The monic irreducibles of degree d, in canonical order.
pub fn enumerate_irreducibles(field: &FieldSpec, d: usize) -> Vec<Poly> {
    poly::enumerate_monic(field, d)
        .filter(|f| is_irreducible(field, f).expect("nonzero by construction"))
        .collect()
}

/// Both sides of the identity q^d = Σ_{ℓ|d} ℓ·I(ℓ); used as a self-test.
pub fn degree_power_identity(field: &FieldSpec, d: u64) -> Result<(BigUint, BigUint)> {
    if d < 1 {
        return Err(Error::OutOfRange("degree must be >= 1".into()));
    }
    let lhs = BigUint::from(field.q()).pow(d as u32);
    let mut rhs = BigUint::zero();
    for l in divisors_of(d) {
        rhs += BigUint::from(l) * count_irreducibles(field, l)?;
    }
    Ok((lhs, rhs))
}

/// Largest k ≥ 0 with q^k ≤ m (m ≥ 1), i.e. ⌊log_q m⌋ computed exactly.
pub fn floor_log_q(q: u64, m: u64) -> u32 {
    debug_assert!(m >= 1 && q >= 2);
    let mut k = 0u32;
    let mut power = 1u128;
    while power * q as u128 <= m as u128 {
        power *= q as u128;
        k += 1;
    }
    k
}

/// Smallest k ≥ 0 with q^k ≥ m (m ≥ 1).
pub fn ceil_log_q(q: u64, m: u64) -> u32 {
    let f = floor_log_q(q, m);
    if (q as u128).pow(f) == m as u128 {
        f
    } else {
        f + 1
    }
}

/// δ_q(m): the smallest δ such that I(d) > ⌊log_q m⌋ + 1 for every d ≥ δ.
///
/// The infinite quantifier is certified finitely: the lower bound
/// (q^d − 2q^{⌊d/2⌋})/d < I(d) is monotone increasing in d, so once it
/// exceeds the threshold at some d₀, only d < d₀ need the exact I(d) scan.
pub fn delta_q(field: &FieldSpec, m: u64) -> Result<u32> {
    if m < 1 {
        return Err(Error::OutOfRange("m must be >= 1".into()));
    }
    let q = BigUint::from(field.q());
    let threshold = BigUint::from(floor_log_q(field.q(), m) as u64 + 1);
    // find d0 with (q^d − 2q^{⌊d/2⌋}) > threshold·d for all d ≥ d0
    let mut d0 = 1u64;
    loop {
        let lower = BigInt::from(q.pow(d0 as u32)) - BigInt::from(2u32) * BigInt::from(q.pow((d0 / 2) as u32));
        if lower > BigInt::from(threshold.clone()) * BigInt::from(d0) {
            break;
        }
        d0 += 1;
    }
    // the largest d < d0 where the exact count fails the threshold
    let mut delta = 1u32;
    for d in 1..d0 {
        if count_irreducibles(field, d)? <= threshold {
            delta = d as u32 + 1;
        }
    }
    Ok(delta)
}

/// Ordered list (p_1, p_2, ...) of monic irreducibles, non-decreasing in
/// degree, canonical order within a degree, materialized up to a max degree.
#[derive(Debug, Clone)]
pub struct IrreducibleIndex {
    by_degree: Vec<Vec<Poly>>, // index 0 unused
}

impl IrreducibleIndex {
    pub fn materialize(field: &FieldSpec, max_degree: usize) -> IrreducibleIndex {
        let mut by_degree = vec![Vec::new()];
        for d in 1..=max_degree {
            by_degree.push(enumerate_irreducibles(field, d));
        }
        IrreducibleIndex { by_degree }
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn of_degree(&self, d: usize) -> &[Poly] {
        &self.by_degree[d]
    }

    /// I(d) as a machine integer, for degrees within the materialized range.
    pub fn count(&self, d: usize) -> usize {
        self.by_degree[d].len()
    }

    /// All materialized irreducibles in the fixed order p_1, p_2, ...
    pub fn iter(&self) -> impl Iterator<Item = &Poly> {
        self.by_degree.iter().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_values() {
        let mu: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn count_examples() {
        let gf2 = FieldSpec::make(2, 1, None).unwrap();
        let gf3 = FieldSpec::make(3, 1, None).unwrap();
        assert_eq!(count_irreducibles(&gf2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_irreducibles(&gf2, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(count_irreducibles(&gf3, 1).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn moebius_count_matches_census() {
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = FieldSpec::make(p, e, None).unwrap();
            let dmax = if f.q() == 4 { 5 } else { 7 };
            for d in 1..=dmax {
                let census = enumerate_irreducibles(&f, d).len();
                assert_eq!(
                    count_irreducibles(&f, d as u64).unwrap(),
                    BigUint::from(census),
                    "q={} d={}",
                    f.q(),
                    d
                );
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        let f = FieldSpec::make(2, 1, None).unwrap();
        assert!(is_irreducible(&f, &Poly::parse(&f, "1 1 1").unwrap()).unwrap());
        assert!(!is_irreducible(&f, &Poly::parse(&f, "1 0 1").unwrap()).unwrap());
        assert!(is_irreducible(&f, &Poly::x()).unwrap());
        assert!(!is_irreducible(&f, &Poly::one()).unwrap());
        assert!(is_irreducible(&f, &Poly::zero()).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let f = FieldSpec::make(2, 1, None).unwrap();
        let d1: Vec<String> = enumerate_irreducibles(&f, 1).iter().map(|p| p.text()).collect();
        assert_eq!(d1, ["0 1", "1 1"]); // x, x+1
        assert_eq!(enumerate_irreducibles(&f, 2).len(), 1);
        assert_eq!(enumerate_irreducibles(&f, 3).len(), 2);
    }

    #[test]
    fn count_bounds() {
        // (q^d − 2q^{⌊d/2⌋})/d < I(d) ≤ q^d/d and Σ_{ℓ≤d} I(ℓ) < 4q^d/(d+1)
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = FieldSpec::make(p, e, None).unwrap();
            let q = BigInt::from(f.q());
            let mut partial = BigUint::zero();
            for d in 1u64..=10 {
                let i = count_irreducibles(&f, d).unwrap();
                let iq = BigInt::from(i.clone());
                let lower = q.pow(d as u32) - BigInt::from(2) * q.pow((d / 2) as u32);
                assert!(lower < iq.clone() * BigInt::from(d));
                assert!(iq * BigInt::from(d) <= q.pow(d as u32));
                partial += i;
                let lhs = BigInt::from(partial.clone()) * BigInt::from(d + 1);
                assert!(lhs < BigInt::from(4) * q.pow(d as u32));
            }
        }
    }

    #[test]
    fn power_identity() {
        for p in [2u64, 3, 5] {
            let f = FieldSpec::make(p, 1, None).unwrap();
            for d in 1..=10 {
                let (lhs, rhs) = degree_power_identity(&f, d).unwrap();
                assert_eq!(lhs, rhs, "q={} d={}", p, d);
            }
        }
    }

    #[test]
    fn delta_examples() {
        let gf2 = FieldSpec::make(2, 1, None).unwrap();
        let gf3 = FieldSpec::make(3, 1, None).unwrap();
        assert_eq!(delta_q(&gf2, 4).unwrap(), 5);
        assert_eq!(delta_q(&gf2, 2).unwrap(), 4);
        assert_eq!(delta_q(&gf3, 3).unwrap(), 1);
    }

    #[test]
    fn floor_and_ceil_log() {
        assert_eq!(floor_log_q(2, 1), 0);
        assert_eq!(floor_log_q(2, 12), 3);
        assert_eq!(floor_log_q(3, 9), 2);
        assert_eq!(ceil_log_q(2, 5), 3);
        assert_eq!(ceil_log_q(2, 4), 2);
        assert_eq!(ceil_log_q(3, 1), 0);
    }

    #[test]
    fn index_ordering() {
        let f = FieldSpec::make(2, 1, None).unwrap();
        let idx = IrreducibleIndex::materialize(&f, 5);
        let all: Vec<&Poly> = idx.iter().collect();
        for w in all.windows(2) {
            assert!(w[0].degree() <= w[1].degree());
        }
        for d in 1..=5 {
            assert_eq!(
                BigUint::from(idx.count(d)),
                count_irreducibles(&f, d as u64).unwrap()
            );
        }
    }
}
