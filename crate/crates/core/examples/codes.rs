// Self-delimiting codes, pairing and Kraft sums.
//
// ```bash
// cargo run --example codes
// ```

use std::error::Error;

use qkc::codes::{
    decode_exact, decode_prime, encode_bar, encode_prime, kraft_sum, pair, shannon_fano_lengths,
    unpair, BitString, RingReal,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for s in ["", "1", "010"] {
        let x: BitString = s.parse()?;
        println!(
            "x = {s:?}: bar = {}, prime = {}",
            encode_bar(&x),
            encode_prime(&x)
        );
    }

    let x: BitString = "0110".parse()?;
    let y: BitString = "1".parse()?;
    let p = pair(&x, &y);
    let back = decode_exact(&p, unpair).ok_or("pair does not decode")?;
    println!("<{x}, {y}> = {p} -> ({}, {})", back.0, back.1);
    assert_eq!(back, (x.clone(), y));

    let primes: Vec<u64> = (0..64u128)
        .map(|i| encode_prime(&BitString::from_index(i)).len() as u64)
        .collect();
    println!(
        "Kraft sum of the first 64 prime codes: {}",
        kraft_sum(&primes)
    );
    assert!(decode_exact(&encode_prime(&x), decode_prime).as_ref() == Some(&x));

    let probs = [RingReal::frac(9, 25), RingReal::frac(16, 25)];
    let lens = shannon_fano_lengths(&probs)?;
    println!("Shannon-Fano lengths for [9/25, 16/25]: {lens:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("codes example");
}
