// Exact gate algebra over Q(√2).
//
// ```bash
// cargo run --example gates
// ```

use std::error::Error;

use qkc::qstate::{
    apply_gate, factor_prefix, fidelity, is_unitary, tensor, Gate, PureState, ALL_GATES,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for g in ALL_GATES {
        println!("{:>4} unitary: {}", g.name(), is_unitary(&g.matrix()));
    }

    let zero = PureState::zeros(1);
    let one = PureState::basis(1, 1);
    let s2_zero = apply_gate(&apply_gate(&zero, Gate::S, &[0])?, Gate::S, &[0])?;
    let s2_one = apply_gate(&apply_gate(&one, Gate::S, &[0])?, Gate::S, &[0])?;
    println!("S²|0⟩ = {s2_zero}");
    println!("S²|1⟩ = {s2_one}");

    let plus = apply_gate(&zero, Gate::H, &[0])?;
    let back = apply_gate(&plus, Gate::H, &[0])?;
    println!("H|0⟩ = {plus}, H²|0⟩ = {back}");

    let r = apply_gate(&zero, Gate::R, &[0])?;
    println!("R|0⟩ = {r}, fidelity with |1⟩ = {}", fidelity(&r, &one)?);

    let product = tensor(&r, &plus);
    let (a, b) = factor_prefix(&product, 1)?.ok_or("product state must factor")?;
    println!("{product} = ({a}) ⊗ ({b})");

    let bell = apply_gate(
        &apply_gate(&PureState::zeros(2), Gate::H, &[0])?,
        Gate::Cnot,
        &[0, 1],
    )?;
    println!("{bell} factors: {}", factor_prefix(&bell, 1)?.is_some());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gates example");
}
