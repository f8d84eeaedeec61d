//! Polynomials over GF(q): canonical representation, ring arithmetic, and
//! enumeration of the sets M_n (monic of degree exactly n) and P_n (monic of
//! degree at most n).

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::field::FieldSpec;
use crate::{Error, Result};

/// A polynomial over GF(q).  Coefficients are field-element representatives,
/// constant term first, with no trailing zeros; the empty vector is the zero
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    /// Build from a constant-term-first coefficient vector, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Canonical order: degree first, then coefficient vectors compared
    /// constant-term-first as integers.  The zero polynomial sorts first.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Parse the bit-exact text format: space-separated field-element
    /// integers, constant term first ("1 1 0 1" = x³+x+1 over GF(2)).
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Poly> {
        let coeffs: Vec<u64> = text
            .split_whitespace()
            .map(|t| {
                let c = t
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))?;
                if c >= field.q() {
                    return Err(Error::Parse(format!(
                        "coefficient {c} out of range for GF({})",
                        field.q()
                    )));
                }
                Ok(c)
            })
            .collect::<Result<_>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Inverse of [`Poly::parse`]; the zero polynomial prints as "0".
    pub fn text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(" ")
    }
}

pub fn add(field: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.coeffs.get(i).copied().unwrap_or(0);
        let y = b.coeffs.get(i).copied().unwrap_or(0);
        *slot = field.add(x, y);
    }
    Poly::from_coeffs(out)
}

pub fn mul(field: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj));
        }
    }
    Poly::from_coeffs(out)
}

/// Scalar multiple c·a.
pub fn scale(field: &FieldSpec, a: &Poly, c: u64) -> Poly {
    Poly::from_coeffs(a.coeffs.iter().map(|&x| field.mul(x, c)).collect())
}

/// Long division: returns (quotient, remainder) with a = q·b + r and
/// deg r < deg b.
pub fn divrem(field: &FieldSpec, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let db = b.coeffs.len() - 1;
    let mut r = a.coeffs.clone();
    if r.len() <= db {
        return Ok((Poly::zero(), a.clone()));
    }
    let lead_inv = field.inv(b.coeffs[db])?;
    let mut q = vec![0u64; r.len() - db];
    let mut top = r.len();
    while top > db {
        let coef = field.mul(r[top - 1], lead_inv);
        let shift = top - 1 - db;
        q[shift] = coef;
        if coef != 0 {
            for i in 0..=db {
                r[shift + i] = field.sub(r[shift + i], field.mul(coef, b.coeffs[i]));
            }
        }
        top -= 1;
    }
    Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
}

/// True iff b divides a exactly.
pub fn divides(field: &FieldSpec, b: &Poly, a: &Poly) -> Result<bool> {
    Ok(divrem(field, a, b)?.1.is_zero())
}

/// Monic gcd; gcd(a, 0) = monic-normalized a (a nonzero).
pub fn gcd(field: &FieldSpec, a: &Poly, b: &Poly) -> Result<Poly> {
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.is_zero() && b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    while !b.is_zero() {
        let (_, r) = divrem(field, &a, &b)?;
        a = b;
        b = r;
    }
    let lead = a.leading().expect("nonzero");
    Ok(scale(field, &a, field.inv(lead)?))
}

pub fn pow(field: &FieldSpec, a: &Poly, exp: u32) -> Poly {
    let mut acc = Poly::one();
    for _ in 0..exp {
        acc = mul(field, &acc, a);
    }
    acc
}

/// |M_n| = q^n.
pub fn m_size(field: &FieldSpec, n: usize) -> BigUint {
    BigUint::from(field.q()).pow(n as u32)
}

/// |P_n| = (q^{n+1} − 1)/(q − 1).
pub fn p_size(field: &FieldSpec, n: usize) -> BigUint {
    let q = BigUint::from(field.q());
    (q.pow(n as u32 + 1) - BigUint::one()) / (BigUint::from(field.q() - 1))
}

/// All monic polynomials of degree exactly n, in canonical order.
pub fn enumerate_monic(field: &FieldSpec, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q();
    let total: u128 = (q as u128).pow(n as u32);
    (0..total).map(move |idx| {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        // constant-term-first canonical order: c_0 varies slowest
        let mut rem = idx;
        for j in (0..n).rev() {
            coeffs[j] = (rem % q as u128) as u64;
            rem /= q as u128;
        }
        Poly { coeffs }
    })
}

/// All monic polynomials of degree at most n (the set P_n), in canonical
/// order: by degree, then constant-term-first lexicographic.
pub fn enumerate_upto(field: &FieldSpec, n: usize) -> impl Iterator<Item = Poly> + '_ {
    (0..=n).flat_map(move |d| enumerate_monic(field, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::make(2, 1, None).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let f = gf2();
        let p = Poly::parse(&f, "1 1 0 1").unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.text(), "1 1 0 1");
        assert!(Poly::parse(&f, "1 2").is_err());
    }

    #[test]
    fn mul_characteristic_two() {
        let f = gf2();
        let x1 = Poly::parse(&f, "1 1").unwrap(); // x+1
        assert_eq!(mul(&f, &x1, &x1).text(), "1 0 1"); // x^2+1
    }

    #[test]
    fn divrem_example() {
        let f = gf2();
        let a = Poly::parse(&f, "1 1 0 1").unwrap(); // x^3+x+1
        let b = Poly::parse(&f, "1 1").unwrap(); // x+1
        let (q, r) = divrem(&f, &a, &b).unwrap();
        assert_eq!(q.text(), "0 1 1"); // x^2+x
        assert_eq!(r.text(), "1");
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn gcd_examples() {
        let f = gf2();
        let a = Poly::parse(&f, "0 1 1").unwrap(); // x^2+x
        let x = Poly::x();
        assert_eq!(gcd(&f, &a, &x).unwrap(), x);
        assert_eq!(gcd(&f, &a, &Poly::zero()).unwrap(), a);
        assert!(gcd(&f, &Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn enumeration_sizes_and_order() {
        for (p, e, n) in [(2u64, 1u32, 6usize), (3, 1, 5), (2, 2, 3)] {
            let f = FieldSpec::make(p, e, None).unwrap();
            let monic: Vec<Poly> = enumerate_monic(&f, n).collect();
            assert_eq!(BigUint::from(monic.len()), m_size(&f, n));
            let upto: Vec<Poly> = enumerate_upto(&f, n).collect();
            assert_eq!(BigUint::from(upto.len()), p_size(&f, n));
            // each exactly once, canonical order
            for w in upto.windows(2) {
                assert_eq!(w[0].cmp_canonical(&w[1]), Ordering::Less);
            }
            assert!(upto.iter().all(|s| s.is_monic()));
        }
    }

    #[test]
    fn enumerate_monic_degree_two_gf2() {
        let f = gf2();
        let got: Vec<String> = enumerate_monic(&f, 2).map(|p| p.text()).collect();
        assert_eq!(got, ["0 0 1", "0 1 1", "1 0 1", "1 1 1"]);
    }

    #[test]
    fn enumerate_monic_zero_degree() {
        let f = gf2();
        let got: Vec<Poly> = enumerate_monic(&f, 0).collect();
        assert_eq!(got, vec![Poly::one()]);
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        // associativity and distributivity, exhaustive for deg ≤ 2 over GF(2)
        // and GF(4), plus a deg ≤ 3 / GF(3) spot grid via enumeration
        for (p, e) in [(2u64, 1u32), (2, 2)] {
            let f = FieldSpec::make(p, e, None).unwrap();
            let all: Vec<Poly> = (0..=2).flat_map(|d| enumerate_monic(&f, d)).collect();
            for a in &all {
                for b in &all {
                    for c in &all {
                        assert_eq!(mul(&f, &mul(&f, a, b), c), mul(&f, a, &mul(&f, b, c)));
                        assert_eq!(
                            mul(&f, a, &add(&f, b, c)),
                            add(&f, &mul(&f, a, b), &mul(&f, a, c))
                        );
                    }
                }
            }
        }
    }
}
