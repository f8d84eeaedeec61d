//! Structure of extremal profiles and exchange moves: every extremal witness
//! passes the hard structural checks and admits no Φ-improving move, while
//! non-extremal profiles expose an improving move.

use num_rational::BigRational;
use num_traits::One;
use polyfact::divisors::Profile;
use polyfact::extremal::{
    apply_move, check_structure, enumerate_moves, lower_bound_construction,
    upper_bound_log2_upsilon, upsilon_bruteforce, Mode,
};
use polyfact::field::FieldSpec;
use polyfact::irred::IrreducibleIndex;

fn main() -> polyfact::Result<()> {
    let field = FieldSpec::parse("2^1")?;
    let index = IrreducibleIndex::materialize(&field, 6);
    let one = BigRational::one();

    let m = 10;
    let extremal = upsilon_bruteforce(&field, &index, m, 1 << 20)?;
    for witness in &extremal.witnesses {
        let report = check_structure(&field, witness, Mode::Ordinary, m)?;
        println!("witness {}  hard checks ok: {}", witness.text(), report.hard_ok());
        println!(
            "  t = {}  d_t = {:?}  rho = {}  rho deviation = {:.3}",
            witness.t(),
            report.d_t,
            report.rho,
            report.rho_deviation
        );
        for mv in enumerate_moves(&field, witness, Mode::Ordinary, m) {
            let (result, ratio) = apply_move(&field, witness, &mv, Mode::Ordinary, m)?;
            assert!(ratio <= one, "extremal witness admits an improving move");
            println!("  move {:?} -> {}  ratio {}", mv.kind, result.text(), ratio);
        }
    }

    // a deliberately lopsided profile of the same size admits an improving move
    let bad = Profile::parse("0 | 1:6; 2:2")?;
    let improving = enumerate_moves(&field, &bad, Mode::Ordinary, m)
        .into_iter()
        .find(|mv| apply_move(&field, &bad, mv, Mode::Ordinary, m).unwrap().1 > one)
        .expect("lopsided profile must improve");
    let (better, ratio) = apply_move(&field, &bad, &improving, Mode::Ordinary, m)?;
    println!("lopsided {} improves via {:?} to {}  ratio {}", bad.text(), improving.kind, better.text(), ratio);

    // two-sided bounds
    let n = 20;
    let lower = lower_bound_construction(&field, n)?;
    println!(
        "n = {n}: C({}, {}) = {} <= Upsilon_nn, witness {}",
        2 * lower.w,
        lower.w,
        lower.bound,
        lower.witness.text()
    );
    println!("m = 40: log2 Upsilon_m <= {:.3}", upper_bound_log2_upsilon(&field, 40)?);
    Ok(())
}
