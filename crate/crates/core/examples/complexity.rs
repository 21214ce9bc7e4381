// Machine-relative complexity of exact states.
//
// ```bash
// cargo run --example complexity
// ```

use std::error::Error;

use qkc::codes::{BitString, RingReal};
use qkc::enumerate::{dovetail, EnumConfig, DEFAULT_BUDGET};
use qkc::kolmogorov::{k_classical, k_exact, k_quantum, universal_weight};
use qkc::qpl::{ConditionSpec, MachineSpec, Mode};
use qkc::qstate::PureState;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = MachineSpec::new(3, Mode::CondN)?;
    let cond = ConditionSpec::new(1);
    let rot = PureState::real(1, vec![RingReal::frac(3, 5), RingReal::frac(4, 5)])?;
    let h = PureState::real(1, vec![RingReal::inv_sqrt2(), RingReal::inv_sqrt2()])?;

    for (name, s) in [
        ("|0⟩", PureState::zeros(1)),
        ("R|0⟩", rot),
        ("|1⟩", PureState::basis(1, 1)),
        ("|+⟩", h),
    ] {
        let e = k_exact(&s, &spec, &cond, DEFAULT_BUDGET)?;
        println!(
            "K({name}) = {} via {:?} (approximation part {}, exact {})",
            e.value, e.witness, e.approximation_part, e.exact
        );
    }

    let table = dovetail(&spec, &cond, &EnumConfig::new(6))?;
    let partial = k_quantum(&PureState::basis(1, 1), &table)?;
    println!(
        "against programs of at most 6 bits, K(|1⟩) = {} (exact {})",
        partial.value, partial.exact
    );

    let table = dovetail(&spec, &cond, &EnumConfig::new(8))?;
    for x in ["0", "1"] {
        let x: BitString = x.parse()?;
        println!("K({x}) = {}", k_classical(&x, &table)?.value);
    }
    for (x, w) in universal_weight(&table, 1)? {
        println!("m({x}) = {w}");
    }

    let spec2 = MachineSpec::new(4, Mode::CondN)?;
    let bell = PureState::real(
        2,
        vec![
            RingReal::inv_sqrt2(),
            RingReal::zero(),
            RingReal::zero(),
            RingReal::inv_sqrt2(),
        ],
    )?;
    let e = k_exact(&bell, &spec2, &ConditionSpec::new(2), DEFAULT_BUDGET)?;
    println!("K(Bell) on W=4: {} via {:?}", e.value, e.witness);
    println!("{}", serde_json::to_string(&e)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("complexity example");
}
