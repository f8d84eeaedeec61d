//! Divisor counting: factorization, Φ, constrained Φ_{n,n'}, degree spectra,
//! and the coprime-split decomposition of Φ_n.

use polyfact::divisors::{degree_spectrum, factorize, phi, phi_constrained, spectrum_of_pairs};
use polyfact::field::FieldSpec;
use polyfact::irred::IrreducibleIndex;
use polyfact::poly::{self, Poly};

fn main() -> polyfact::Result<()> {
    let field = FieldSpec::parse("2^1")?;
    let index = IrreducibleIndex::materialize(&field, 4);

    // s = x^2 (x+1)^3 (x^3+x+1) over GF(2)
    let s = poly::mul(
        &field,
        &poly::mul(
            &field,
            &poly::pow(&field, &Poly::x(), 2),
            &poly::pow(&field, &Poly::parse(&field, "1 1")?, 3),
        ),
        &Poly::parse(&field, "1 1 0 1")?,
    );
    let fac = factorize(&field, &index, &s)?;
    println!("s = {}  (degree {})", s.text(), s.degree().unwrap());
    for (p, d, r) in &fac.factors {
        println!("  factor {}  degree {d}  multiplicity {r}", p.text());
    }
    println!("Phi(s)      = {}", phi(&fac));
    println!("Omega(s)    = {}", fac.omega());

    // the degree spectrum counts divisors of each degree; Φ is its total
    let spectrum = degree_spectrum(&fac, 0);
    println!("spectrum    = {:?}", spectrum.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>());

    // Φ_{n,n'}: ordered factorizations s = u·v with deg u ≤ n, deg v ≤ n'
    let n = 4;
    println!("Phi_{{4,4}}(s) = {}", phi_constrained(&fac, n, n)?);

    // coprime split s = a·b: Φ_n(s) = Σ_k |A_k| · |D_k(b)|
    // where A_k collects degree-(n-k) divisors of a and D_k(b) degree-k divisors of b
    let a_pairs: Vec<(usize, u32)> = fac.factors[..1].iter().map(|(_, d, r)| (*d, *r)).collect();
    let b_pairs: Vec<(usize, u32)> = fac.factors[1..].iter().map(|(_, d, r)| (*d, *r)).collect();
    let a_spec = spectrum_of_pairs(&a_pairs, 0);
    let b_spec = spectrum_of_pairs(&b_pairs, 0);
    let mut total = num_bigint::BigUint::default();
    for k in 0..b_spec.counts.len() {
        if n >= k && n - k < a_spec.counts.len() {
            total += &a_spec.counts[n - k] * &b_spec.counts[k];
        }
    }
    println!("decomposed  = {total}  (must equal Phi_{{4,4}})");
    assert_eq!(total, phi_constrained(&fac, n, n)?);
    Ok(())
}
