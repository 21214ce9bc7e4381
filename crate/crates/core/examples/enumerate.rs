// Building, checking and persisting halt tables.
//
// ```bash
// cargo run --example enumerate
// ```

use std::error::Error;

use qkc::enumerate::{dovetail, load_table, save_table, EnumConfig, Scheduler};
use qkc::qpl::{ConditionSpec, MachineSpec, Mode};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = MachineSpec::new(3, Mode::CondN)?;
    let cond = ConditionSpec::new(1);

    let staged = dovetail(
        &spec,
        &cond,
        &EnumConfig::new(10).scheduler(Scheduler::Dovetail),
    )?;
    let swept = dovetail(&spec, &cond, &EnumConfig::new(10).workers(4))?;
    println!("{} halting programs up to 10 bits", staged.len());
    println!("schedulers agree: {}", staged == swept);
    println!(
        "prefix-free: {}, Kraft sum {}",
        staged.is_prefix_free(),
        staged.kraft_sum()
    );

    for r in staged.records().iter().take(6) {
        println!(
            "  {:>10}  steps {}  {}",
            r.bits.to_string(),
            r.steps,
            r.output
        );
    }

    let dir = std::env::temp_dir().join(format!("qkc-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("w3-n1.jsonl");
    save_table(&staged, &path)?;
    let back = load_table(&path)?;
    println!(
        "round trip ok: {}, digest {}",
        back == staged,
        back.digest()
    );
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("enumerate example");
}
