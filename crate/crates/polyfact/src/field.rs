//! Exact arithmetic in GF(q), q = p^e.
//!
//! Elements are integers in `[0, q)` encoding the GF(p)-coefficient vector of
//! the element as base-p digits (digit `i` = coefficient of the i-th power of
//! the field generator).  For `e > 1` multiplication reduces modulo a stored
//! monic irreducible of degree `e` over GF(p); a full q×q multiplication
//! table is precomputed when q ≤ 256.

use crate::{Error, Result};

/// Maximum supported field size.
pub const MAX_Q: u64 = 1 << 16;

const TABLE_LIMIT: u64 = 256;

/// A concrete finite field GF(q) with q = p^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible of degree e over GF(p), constant term first.
    /// Present iff e > 1.
    modulus: Option<Vec<u64>>,
    mul_table: Option<Vec<u64>>,
    inv_table: Option<Vec<u64>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- minimal GF(p)[x] arithmetic used only for modulus handling -------------

fn prime_poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn prime_poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    prime_poly_trim(out)
}

fn prime_poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(p, b[db]);
    while r.len() > db {
        let coef = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let sub = (coef * b[i]) % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = prime_poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(p: u64, a: u64) -> u64 {
    // p is prime and small; Fermat via repeated squaring.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Trial-division irreducibility over GF(p) for modulus validation only; the
/// general test lives in `irred` and works over any GF(q).
fn prime_poly_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d over GF(p)
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u64; d + 1];
            g[d] = 1;
            let mut rem = idx;
            for digit in g.iter_mut().take(d) {
                *digit = rem % p;
                rem /= p;
            }
            if prime_poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree e over GF(p)
/// (coefficient vectors compared constant-term-first).
fn default_modulus(p: u64, e: u32) -> Vec<u64> {
    let d = e as usize;
    let total = p.pow(e);
    for idx in 0..total {
        // constant-term-first lexicographic order: c_0 is the most
        // significant digit of the enumeration index
        let mut g = vec![0u64; d + 1];
        g[d] = 1;
        let mut rem = idx;
        for j in 0..d {
            let place = p.pow((d - 1 - j) as u32);
            g[j] = rem / place;
            rem %= place;
        }
        if prime_poly_irreducible(p, &g) {
            return g;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

impl FieldSpec {
    /// Construct GF(p^e).  With `e > 1` and no modulus given, the
    /// lexicographically smallest monic irreducible of degree e over GF(p)
    /// is selected.
    pub fn make(p: u64, e: u32, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::OutOfRange("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(e).filter(|&q| q <= MAX_Q as u128).ok_or_else(|| {
            Error::OutOfRange(format!("field size p^e = {}^{} exceeds {}", p, e, MAX_Q))
        })? as u64;
        let modulus = if e == 1 {
            if modulus.is_some() {
                return Err(Error::BadModulus { p, expected: e });
            }
            None
        } else {
            let m = match modulus {
                Some(m) => {
                    let m = prime_poly_trim(m);
                    let ok = m.len() == e as usize + 1
                        && m[e as usize] == 1
                        && m.iter().all(|&c| c < p)
                        && prime_poly_irreducible(p, &m);
                    if !ok {
                        return Err(Error::BadModulus { p, expected: e });
                    }
                    m
                }
                None => default_modulus(p, e),
            };
            Some(m)
        };
        let mut field = FieldSpec { p, e, q, modulus, mul_table: None, inv_table: None };
        if e > 1 && q <= TABLE_LIMIT {
            let mut mul = vec![0u64; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    mul[(a * q + b) as usize] = field.mul_slow(a, b);
                }
            }
            field.mul_table = Some(mul);
        }
        let mut inv = vec![0u64; q as usize];
        for a in 1..q {
            inv[a as usize] = field.pow(a, q - 2);
        }
        field.inv_table = Some(inv);
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Parse "p^e" or "p^e/modulus" (modulus in polynomial text over GF(p)).
    pub fn parse(text: &str) -> Result<FieldSpec> {
        let (head, modulus) = match text.split_once('/') {
            Some((h, m)) => {
                let coeffs: Vec<u64> = m
                    .split_whitespace()
                    .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad modulus coefficient {t:?}"))))
                    .collect::<Result<_>>()?;
                (h, Some(coeffs))
            }
            None => (text, None),
        };
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad characteristic {p:?}")))?,
                e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad extension degree {e:?}")))?,
            ),
            None => (
                head.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad field {head:?}")))?,
                1,
            ),
        };
        FieldSpec::make(p, e, modulus)
    }

    /// Canonical text form, round-tripping through [`FieldSpec::parse`].
    pub fn text(&self) -> String {
        match &self.modulus {
            None => format!("{}^{}", self.p, self.e),
            Some(m) => {
                let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                format!("{}^{}/{}", self.p, self.e, coeffs.join(" "))
            }
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            (a + b) % self.p
        } else {
            // digit-wise addition base p
            let (mut a, mut b) = (a, b);
            let mut out = 0u64;
            let mut place = 1u64;
            while a > 0 || b > 0 {
                out += (a % self.p + b % self.p) % self.p * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            (self.p - a) % self.p
        } else {
            let mut a = a;
            let mut out = 0u64;
            let mut place = 1u64;
            while a > 0 {
                out += (self.p - a % self.p) % self.p * place;
                a /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            a * b % self.p
        } else if let Some(t) = &self.mul_table {
            t[(a * self.q + b) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let modulus = self.modulus.as_ref().expect("extension field");
        let da = digits(self.p, a, self.e as usize);
        let db = digits(self.p, b, self.e as usize);
        let prod = prime_poly_mul(self.p, &da, &db);
        let rem = if prod.is_empty() { prod } else { prime_poly_rem(self.p, &prod, modulus) };
        let mut out = 0u64;
        for (i, &c) in rem.iter().enumerate() {
            out += c * self.p.pow(i as u32);
        }
        out
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_table.as_ref().expect("inverse table")[a as usize])
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = if self.e == 1 { acc * base % self.p } else { self.mul_slow_or_table(acc, base) };
            }
            base = if self.e == 1 { base * base % self.p } else { self.mul_slow_or_table(base, base) };
            exp >>= 1;
        }
        acc
    }

    fn mul_slow_or_table(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.mul_table {
            t[(a * self.q + b) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }
}

fn digits(p: u64, mut a: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    prime_poly_trim(out)
}
