//! Irreducible polynomial counting: the Moebius formula I(d), the identity
//! q^d = Σ_{ℓ|d} ℓ·I(ℓ), and the largest-gap statistic δ_q(m).

use polyfact::field::FieldSpec;
use polyfact::irred::{count_irreducibles, delta_q, degree_power_identity, enumerate_irreducibles};

fn main() -> polyfact::Result<()> {
    for spec in ["2^1", "3^1", "2^2"] {
        let field = FieldSpec::parse(spec)?;
        println!("GF({}) [{}]", field.q(), field.text());
        for d in 1..=6u64 {
            let count = count_irreducibles(&field, d)?;
            let census = enumerate_irreducibles(&field, d as usize);
            assert_eq!(count, census.len().into());
            let (lhs, rhs) = degree_power_identity(&field, d)?;
            assert_eq!(lhs, rhs);
            println!("  I({d}) = {count}");
        }
        let sample: Vec<String> = enumerate_irreducibles(&field, 2).iter().map(|p| p.text()).collect();
        println!("  degree-2 irreducibles: {}", sample.join(", "));
        for m in [100u64, 1000] {
            println!("  delta({m}) = {}", delta_q(&field, m)?);
        }
    }
    Ok(())
}
