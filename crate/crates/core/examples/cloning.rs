// Copies of classically described states and the multiples bounds.
//
// ```bash
// cargo run --example cloning
// ```

use std::error::Error;

use qkc::theorems::{
    audit_multiples, cloning_check, log_binomial, multiples_bounds, CLONING_WITNESS,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("witness program: {CLONING_WITNESS}");
    for m in 1..=4 {
        let r = cloning_check(&"0001111".parse()?, 1, m, 4)?;
        println!(
            "m = {m}: {}",
            if r.passed() {
                "exact copies"
            } else {
                "mismatch"
            }
        );
    }

    for (n, m) in [(1, 3), (2, 2), (3, 4)] {
        let (lo, hi) = multiples_bounds(n, m, 0)?;
        println!("n = {n}, m = {m}: {lo:.4} ≤ K ≤ {hi:.4}");
    }
    for m in [1u64, 4, 64, 1024] {
        let (exact, approx) = log_binomial(2 * m, m)?;
        println!(
            "log C({}, {m}) = {exact:.4}, closed form {approx:.4}",
            2 * m
        );
    }
    println!("{}", audit_multiples(8, 8, 16, 1 << 10)?.render());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cloning example");
}
