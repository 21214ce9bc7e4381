// Estimating complexity from simulated measurements.
//
// ```bash
// cargo run --example monte_carlo
// ```

use std::error::Error;

use qkc::codes::RingReal;
use qkc::enumerate::{dovetail, EnumConfig};
use qkc::kolmogorov::{chernoff_tail, mc_approximate, sample_size, McConfig};
use qkc::qpl::{ConditionSpec, MachineSpec, Mode};
use qkc::qstate::PureState;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!(
        "sample_size(4, 0.5, 2^-10) = {}",
        sample_size(4, 0.5, 1.0 / 1024.0)?
    );
    let k = sample_size(1, 0.25, 0.01)?;
    println!(
        "sample_size(1, 0.25, 0.01) = {k}, tail at q = 9/25: {:.3e}",
        chernoff_tail(0.25, 0.36, k)?
    );

    let spec = MachineSpec::new(3, Mode::CondN)?;
    let table = dovetail(&spec, &ConditionSpec::new(1), &EnumConfig::new(8))?;
    let target = PureState::real(1, vec![RingReal::frac(3, 5), RingReal::frac(4, 5)])?;

    let mut values = Vec::new();
    for seed in 0..10 {
        let (est, _) = mc_approximate(&target, &table, &McConfig::new(0.25, 0.01, seed))?;
        values.push(est.value.to_string());
    }
    println!("estimates over 10 seeds: {}", values.join(" "));

    let (est, trace) = mc_approximate(&target, &table, &McConfig::new(0.25, 0.01, 1))?;
    println!("seed 1: value {} via {:?}", est.value, est.witness);
    for t in trace.iter().take(4) {
        println!(
            "  {:>8}  {}/{}  {:?}",
            t.bits.to_string(),
            t.successes,
            t.trials,
            t.estimate
        );
    }

    let refused = mc_approximate(&target, &table, &McConfig::new(0.25, 0.01, 1).trials(10));
    println!(
        "10 trials: {}",
        refused.err().map(|e| e.to_string()).unwrap_or_default()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("monte_carlo example");
}
