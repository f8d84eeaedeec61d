//! The factor-count random variable Ω_m, exact generating-function moments
//! E{α^{Ω_m}}, and Chernoff tail bounds on Φ_m.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::divisors::{factorize, phi, Factorization};
use crate::field::FieldSpec;
use crate::irred::{self, IrreducibleIndex};
use crate::poly;
use crate::{Error, Result};

/// Truncated power series with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    /// c_0..c_M
    pub coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(truncation: usize) -> RationalSeries {
        RationalSeries { coeffs: vec![BigRational::zero(); truncation + 1] }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let trunc = self.truncation().min(other.truncation());
        RationalSeries {
            coeffs: (0..=trunc).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        let trunc = self.truncation().min(other.truncation());
        let mut coeffs = vec![BigRational::zero(); trunc + 1];
        for i in 0..=trunc {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=(trunc - i) {
                coeffs[i + j] += self.coeff(i) * other.coeff(j);
            }
        }
        RationalSeries { coeffs }
    }

    /// exp of a series with zero constant term, by the exact recurrence
    /// m·b_m = Σ_{j=1}^m j·a_j·b_{m−j}.
    pub fn exp(&self) -> Result<RationalSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::OutOfRange("series exp requires zero constant term".into()));
        }
        let trunc = self.truncation();
        let mut b = vec![BigRational::zero(); trunc + 1];
        b[0] = BigRational::one();
        for m in 1..=trunc {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                acc += BigRational::from_integer(BigInt::from(j as u64)) * self.coeff(j) * &b[m - j];
            }
            b[m] = acc / BigRational::from_integer(BigInt::from(m as u64));
        }
        Ok(RationalSeries { coeffs: b })
    }
}

/// Ω(s) = Σ r_i: the number of irreducible factors counted with
/// multiplicity.
pub fn omega(f: &Factorization) -> u64 {
    f.factors.iter().map(|&(_, _, r)| r as u64).sum()
}

/// Exact histogram of Ω over uniform M_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaDistribution {
    pub m: usize,
    pub histogram: BTreeMap<u64, BigUint>,
    /// q^m, the histogram total
    pub total: BigUint,
}

impl OmegaDistribution {
    /// E{α^Ω} directly from the histogram.
    pub fn moment_alpha(&self, alpha: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&k, count) in &self.histogram {
            acc += BigRational::from_integer(BigInt::from(count.clone())) * alpha.pow(k as i32);
        }
        acc / BigRational::from_integer(BigInt::from(self.total.clone()))
    }

    /// Prob{Ω ≥ w}, exact.
    pub fn tail_prob(&self, w: f64) -> BigRational {
        let mut hits = BigUint::zero();
        for (&k, count) in &self.histogram {
            if k as f64 >= w {
                hits += count;
            }
        }
        BigRational::new(BigInt::from(hits), BigInt::from(self.total.clone()))
    }
}

pub fn omega_distribution(
    field: &FieldSpec,
    index: &IrreducibleIndex,
    m: usize,
    budget: u128,
) -> Result<OmegaDistribution> {
    let size = (field.q() as u128).pow(m as u32);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut histogram: BTreeMap<u64, BigUint> = BTreeMap::new();
    for s in poly::enumerate_monic(field, m) {
        let w = omega(&factorize(field, index, &s)?);
        *histogram.entry(w).or_default() += BigUint::one();
    }
    Ok(OmegaDistribution { m, histogram, total: poly::m_size(field, m) })
}

/// G_m(α) = (1/q^m)·Σ_{d|m} d·I(d)·α^{m/d}, exact.
pub fn g_series(field: &FieldSpec, m: usize, alpha: &BigRational) -> Result<BigRational> {
    if m < 1 {
        return Err(Error::OutOfRange("m must be >= 1".into()));
    }
    let mut acc = BigRational::zero();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let i_d = BigInt::from(irred::count_irreducibles(field, d as u64)?);
        acc += BigRational::from_integer(BigInt::from(d as u64) * i_d) * alpha.pow((m / d) as i32);
    }
    Ok(acc / BigRational::from_integer(BigInt::from(field.q()).pow(m as u32)))
}

/// E{α^{Ω_m}}: the coefficient of z^m in exp(Σ_{j=1}^m (z^j/j)·G_j(α)).
pub fn moment_alpha(field: &FieldSpec, m: usize, alpha: &BigRational) -> Result<BigRational> {
    if m == 0 {
        return Ok(BigRational::one());
    }
    let mut inner = RationalSeries::zero(m);
    for j in 1..=m {
        inner.coeffs[j] = g_series(field, j, alpha)? / BigRational::from_integer(BigInt::from(j as u64));
    }
    Ok(inner.exp()?.coeff(m))
}

fn bound_at(field: &FieldSpec, m: usize, c: &BigRational, alpha: &BigRational) -> Result<f64> {
    let moment = moment_alpha(field, m, alpha)?.to_f64().ok_or_else(|| {
        Error::OutOfRange("moment does not fit in f64".into())
    })?;
    let c_f = c.to_f64().expect("small rational");
    let alpha_f = alpha.to_f64().expect("small rational");
    // α^{−c·ln m}·E{α^Ω}; only this power step leaves exact arithmetic
    Ok((-c_f * (m as f64).ln() * alpha_f.ln()).exp() * moment)
}

/// Chernoff bound on Prob{Ω_m ≥ c·ln m}: the value at the closed-form
/// optimizer α = max(c, 1) and the minimum over the grid
/// α ∈ {1.05, 1.10, …, q − 0.05}.
pub fn chernoff_tail(field: &FieldSpec, m: usize, c: &BigRational) -> Result<(f64, f64)> {
    let q = field.q();
    if c <= &BigRational::one() || c >= &BigRational::from_integer(BigInt::from(q)) {
        return Err(Error::OutOfRange(format!("c must satisfy 1 < c < q = {q}")));
    }
    if m < 2 {
        return Err(Error::OutOfRange("m must be >= 2".into()));
    }
    let at_optimizer = bound_at(field, m, c, c)?;
    let mut grid_min = f64::INFINITY;
    let mut k = 0u64;
    loop {
        // α = (21 + k)/20 = 1.05, 1.10, ...
        let alpha = BigRational::new(BigInt::from(21 + k), BigInt::from(20));
        if alpha > BigRational::new(BigInt::from(20 * q - 1), BigInt::from(20)) {
            break;
        }
        grid_min = grid_min.min(bound_at(field, m, c, &alpha)?);
        k += 1;
    }
    Ok((at_optimizer, grid_min))
}

/// Exact Prob{Φ_m ≥ m^β} by census; asserts the chain
/// Prob{Φ_m ≥ m^β} ≤ Prob{Ω_m ≥ β·log₂ m} (and Φ(s) ≤ 2^{Ω(s)} termwise).
pub fn phi_tail_empirical(
    field: &FieldSpec,
    index: &IrreducibleIndex,
    m: usize,
    beta: f64,
    budget: u128,
) -> Result<BigRational> {
    let size = (field.q() as u128).pow(m as u32);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let threshold = (m as f64).powf(beta);
    let mut phi_hits = BigUint::zero();
    let mut omega_hits = BigUint::zero();
    let omega_threshold = beta * (m as f64).log2();
    for s in poly::enumerate_monic(field, m) {
        let fac = factorize(field, index, &s)?;
        let value = phi(&fac);
        let w = omega(&fac);
        if BigUint::from(2u64).pow(w as u32) < value {
            return Err(Error::Mismatch(format!("Φ(s) > 2^Ω(s) at s = {}", s.text())));
        }
        if value.to_f64().unwrap_or(f64::INFINITY) >= threshold {
            phi_hits += BigUint::one();
        }
        if w as f64 >= omega_threshold {
            omega_hits += BigUint::one();
        }
    }
    if phi_hits > omega_hits {
        return Err(Error::Mismatch("Φ tail exceeded the Ω tail".into()));
    }
    let total = BigInt::from(poly::m_size(field, m));
    Ok(BigRational::new(BigInt::from(phi_hits), total))
}
