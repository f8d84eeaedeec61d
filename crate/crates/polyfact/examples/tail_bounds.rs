//! Tail bounds on the number of irreducible factors: exact Ω-histograms, the
//! generating-series moment E{α^Ω}, and Chernoff bounds on Prob{Ω_m ≥ c·ln m}.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use polyfact::field::FieldSpec;
use polyfact::irred::IrreducibleIndex;
use polyfact::tail::{chernoff_tail, moment_alpha, omega_distribution, phi_tail_empirical};

fn main() -> polyfact::Result<()> {
    let field = FieldSpec::parse("3^1")?;
    let index = IrreducibleIndex::materialize(&field, 5);

    let m = 8;
    let dist = omega_distribution(&field, &index, m, 1 << 24)?;
    println!("Omega histogram over M_{m}, GF(3):");
    for (k, count) in &dist.histogram {
        println!("  Omega = {k}: {count}");
    }

    // E{α^Ω} from the exponential generating series matches the histogram
    let alpha = BigRational::new(BigInt::from(3), BigInt::from(2));
    let series = moment_alpha(&field, m, &alpha)?;
    assert_eq!(series, dist.moment_alpha(&alpha));
    println!("E{{(3/2)^Omega}} = {}/{}", series.numer(), series.denom());

    // Chernoff bound dominates the exact tail
    let c = BigRational::new(BigInt::from(3), BigInt::from(2));
    let (at_c, grid_min) = chernoff_tail(&field, m, &c)?;
    let w = 1.5 * (m as f64).ln();
    let exact = dist.tail_prob(w).to_f64().unwrap();
    println!("Prob{{Omega >= 1.5 ln {m}}} exact = {exact:.6}");
    println!("Chernoff at alpha = c: {at_c:.6},  grid minimum: {grid_min:.6}");
    assert!(at_c + 1e-9 >= exact && grid_min + 1e-9 >= exact);

    // Φ(s) ≤ 2^{Ω(s)} transfers the bound to Prob{Φ_m ≥ m^β}
    let beta = 1.2;
    let phi_tail = phi_tail_empirical(&field, &index, m, beta, 1 << 24)?;
    println!("Prob{{Phi >= {m}^{beta}}} = {}/{}", phi_tail.numer(), phi_tail.denom());
    Ok(())
}
