//! Moments of the divisor count: closed forms for E{Φ}, Var{Φ}, |S_m|,
//! |S_n^*| and E{Φ_{n,n}}, each cross-checked against a census.

use polyfact::field::FieldSpec;
use polyfact::irred::IrreducibleIndex;
use polyfact::moments::{
    brute_moments_constrained, brute_moments_unconstrained, brute_size_s_m, brute_size_s_star,
    expectation_phi_nn, formula_moments_unconstrained, size_s_m, size_s_star,
};

fn rat(r: &num_rational::BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn main() -> polyfact::Result<()> {
    for spec in ["2^1", "3^1"] {
        let field = FieldSpec::parse(spec)?;
        let index = IrreducibleIndex::materialize(&field, 4);
        println!("GF({})", field.q());

        println!("  unconstrained moments of Phi over M_m:");
        for m in 0..=5usize {
            let formula = formula_moments_unconstrained(&field, m);
            let brute = brute_moments_unconstrained(&field, &index, m, 1 << 24)?;
            assert_eq!(formula.expectation, brute.expectation);
            assert_eq!(formula.variance, brute.variance);
            println!("    m = {m}  E = {}  Var = {}", rat(&formula.expectation), rat(&formula.variance));
        }

        println!("  |S_m| (coprime quadruples with product in M_m):");
        for m in 0..=3usize {
            let formula = size_s_m(&field, m)?;
            assert_eq!(formula, brute_size_s_m(&field, m, 1 << 24)?);
            println!("    m = {m}  |S_m| = {formula}");
        }

        println!("  |S_n^*| and E{{Phi_{{n,n}}}} over P_n x P_n:");
        for n in 0..=3usize {
            let formula = size_s_star(&field, n)?;
            assert_eq!(formula, brute_size_s_star(&field, n, 1 << 24)?);
            let mean = expectation_phi_nn(&field, n)?;
            let brute = brute_moments_constrained(&field, &index, n, 1 << 24)?;
            assert_eq!(mean, brute.expectation);
            println!("    n = {n}  |S*| = {formula}  E = {}", rat(&mean));
        }
    }
    Ok(())
}
