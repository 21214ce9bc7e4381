// Decoding and running programs on the reference machine.
//
// ```bash
// cargo run --example simulate
// ```

use std::error::Error;

use qkc::codes::BitString;
use qkc::enumerate::default_fuel;
use qkc::qpl::{
    assemble, decode_program, run, ConditionSpec, Instruction, Machine, MachineSpec, Mode,
};
use qkc::qstate::measure_probs;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = MachineSpec::new(3, Mode::CondN)?;
    let cond = ConditionSpec::new(1);

    for s in ["1111", "0001111", "10001111", "1100001111", "11110"] {
        let bits: BitString = s.parse()?;
        match decode_program(&bits, &spec) {
            Ok(p) => {
                let listing: Vec<String> = p.instructions.iter().map(|i| i.to_string()).collect();
                print!("{s:>12}: {:<28}", listing.join("; "));
            }
            Err(e) => print!("{s:>12}: {:<28}", format!("rejected ({e})")),
        }
        match run(&spec, &bits, &cond, default_fuel(bits.len(), &cond)).output() {
            Some(out) => {
                let probs: Vec<String> = measure_probs(out).iter().map(|p| p.to_string()).collect();
                println!("-> {out}  probs [{}]", probs.join(", "));
            }
            None => println!("-> no output"),
        }
    }

    let program = assemble(
        &[Instruction::Rot(0), Instruction::Not(0), Instruction::Halt],
        &spec,
        1,
    );
    let mut m = Machine::new(&spec, &cond, program.clone(), 100);
    while m.step().is_none() {
        println!("after {} steps", m.steps());
    }
    println!("{program}: {:?}", m.result());

    let unc = MachineSpec::new(3, Mode::Uncond)?;
    let with_header = assemble(&[Instruction::Halt], &unc, 2);
    let r = run(&unc, &with_header, &ConditionSpec::new(2), 50);
    println!(
        "unconditional {with_header}: {:?}",
        r.output().map(|s| s.to_string())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("simulate example");
}
