//! Extremal divisor counts: Υ_m = max Φ over P_m and Υ_{n,n} = max Φ_n over
//! P_{2n}, computed both by exhaustive scan and by the profile search.

use polyfact::extremal::{
    upsilon_bruteforce, upsilon_nn_bruteforce, upsilon_nn_profile_search, upsilon_profile_search,
};
use polyfact::field::FieldSpec;
use polyfact::irred::IrreducibleIndex;

fn main() -> polyfact::Result<()> {
    let field = FieldSpec::parse("2^1")?;
    let index = IrreducibleIndex::materialize(&field, 8);

    println!("Upsilon_m over GF(2):");
    for m in 1..=10usize {
        let search = upsilon_profile_search(&field, m);
        if m <= 8 {
            let brute = upsilon_bruteforce(&field, &index, m, 1 << 20)?;
            assert_eq!(brute.value, search.value);
            assert_eq!(brute.witnesses, search.witnesses);
        }
        println!(
            "  m = {m:2}  Upsilon = {:6}  witnesses: {}",
            search.value,
            search.witnesses.iter().map(|w| w.text()).collect::<Vec<_>>().join(" / ")
        );
    }

    println!("Upsilon_{{n,n}} over GF(2):");
    for n in 1..=6usize {
        let search = upsilon_nn_profile_search(&field, n);
        if n <= 4 {
            let brute = upsilon_nn_bruteforce(&field, &index, n, 1 << 20)?;
            assert_eq!(brute.value, search.value);
        }
        println!(
            "  n = {n}  Upsilon = {:4}  witnesses: {}",
            search.value,
            search.witnesses.iter().map(|w| w.text()).collect::<Vec<_>>().join(" / ")
        );
    }
    Ok(())
}
