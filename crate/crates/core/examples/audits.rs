// Machine-level audits of the complexity bounds.
//
// ```bash
// cargo run --example audits
// ```

use std::error::Error;

use qkc::enumerate::{dovetail, EnumConfig};
use qkc::qpl::{ConditionSpec, MachineSpec, Mode};
use qkc::qstate::Ray;
use qkc::theorems::{
    audit_consistency, audit_hard_basis, audit_incompressibility_classical,
    audit_incompressibility_quantum, audit_upper_bound, seeded_basis, subadditivity_witness,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let one = dovetail(
        &MachineSpec::new(3, Mode::CondN)?,
        &ConditionSpec::new(1),
        &EnumConfig::new(8),
    )?;
    let two = dovetail(
        &MachineSpec::new(4, Mode::CondN)?,
        &ConditionSpec::new(2),
        &EnumConfig::new(12),
    )?;

    let reports = vec![
        audit_upper_bound(&one, &[])?,
        audit_upper_bound(&two, &[])?,
        audit_incompressibility_classical(&two, 1)?,
        audit_consistency(&one)?,
        audit_hard_basis(&two.restricted(8))?,
        subadditivity_witness(&"11".parse()?, &two)?,
        audit_incompressibility_quantum(
            &seeded_basis(2, 7, 6)?
                .into_iter()
                .map(Ray::from)
                .collect::<Vec<_>>(),
            &two,
            1,
        )?,
    ];
    for r in &reports {
        println!("{}", r.render());
    }
    assert!(reports.iter().all(|r| r.passed()));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("audits example");
}
