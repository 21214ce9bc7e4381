//! The acceptance suite. Each criterion prints one line; the binary exits
//! nonzero if any fails.

mod oracle;

use std::error::Error;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qkc::cli::run_cli;
use qkc::codes::{
    decode_bar, decode_exact, decode_prime, encode_bar, encode_prime, BitString, Cost, RingReal,
};
use qkc::enumerate::{
    dovetail, is_prefix_free, write_table, EnumConfig, HaltTable, Scheduler, DEFAULT_BUDGET,
};
use qkc::kolmogorov::{k_exact, k_quantum, mc_approximate, sample_size, McConfig};
use qkc::qpl::{assemble, decode_program, ConditionSpec, Instruction, MachineSpec, Mode};
use qkc::qstate::{
    apply_gate, fidelity, gram, is_unitary, state_file_json, tensor_power, Amp, Gate, PureState,
    Ray, ALL_GATES,
};
use qkc::theorems::{
    audit_hard_basis, audit_incompressibility_classical, audit_incompressibility_quantum,
    audit_multiples, audit_upper_bound, cloning_check, log_binomial, seeded_basis, seeded_state,
    subadditivity_state, subadditivity_witness, AuditReport, CLONING_WITNESS,
};

use oracle::Oracle;

type Outcome = Result<String, Box<dyn Error>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)*).into());
        }
    };
}

fn table(w: usize, n: usize, max_len: usize) -> Result<HaltTable, Box<dyn Error>> {
    Ok(dovetail(
        &MachineSpec::new(w, Mode::CondN)?,
        &ConditionSpec::new(n),
        &EnumConfig::new(max_len).workers(4),
    )?)
}

fn passes(r: &AuditReport) -> Result<(), Box<dyn Error>> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{} failed:\n{}", r.name, r.render()).into())
    }
}

fn code_laws() -> Outcome {
    let mut checked = 0;
    for len in 0..=12 {
        for x in BitString::all_of_length(len) {
            let bar = encode_bar(&x);
            ensure!(bar.len() == 2 * len + 1, "l(bar {x}) = {}", bar.len());
            ensure!(
                decode_exact(&bar, decode_bar).as_ref() == Some(&x),
                "bar round trip of {x}"
            );
            ensure!(
                decode_exact(&encode_prime(&x), decode_prime).as_ref() == Some(&x),
                "prime round trip of {x}"
            );
            checked += 1;
        }
    }
    let primes: Vec<BitString> = (0..=10)
        .flat_map(BitString::all_of_length)
        .map(|x| encode_prime(&x))
        .collect();
    ensure!(is_prefix_free(&primes), "prime codes collide");
    Ok(format!(
        "{checked} strings round trip, {} prime codes prefix-free",
        primes.len()
    ))
}

fn kraft() -> Outcome {
    let spec = MachineSpec::new(3, Mode::CondN)?;
    let accepted: Vec<BitString> = (0..=16)
        .flat_map(BitString::all_of_length)
        .filter(|p| decode_program(p, &spec).is_ok())
        .collect();
    ensure!(
        is_prefix_free(&accepted),
        "accepted programs are not prefix-free"
    );
    let lens: Vec<u64> = accepted.iter().map(|p| p.len() as u64).collect();
    let sum = qkc::codes::kraft_sum(&lens);
    ensure!(
        &sum <= RingReal::one().rational_part(),
        "Kraft sum {sum} > 1"
    );
    let t = table(3, 1, 16)?;
    ensure!(t.is_prefix_free(), "halting set is not prefix-free");
    ensure!(
        t.kraft_sum() <= sum,
        "halting Kraft sum exceeds the accepted one"
    );
    Ok(format!(
        "{} accepted programs, Kraft sum {sum}; {} halting, sum {}",
        accepted.len(),
        t.len(),
        t.kraft_sum()
    ))
}

fn gate_algebra() -> Outcome {
    let zero = PureState::zeros(1);
    let one = PureState::basis(1, 1);
    let s2 = |s: &PureState| -> Result<PureState, Box<dyn Error>> {
        Ok(apply_gate(&apply_gate(s, Gate::S, &[0])?, Gate::S, &[0])?)
    };
    let minus_one = PureState::real(1, vec![RingReal::zero(), -RingReal::one()])?;
    ensure!(s2(&zero)? == minus_one, "S²|0⟩ = {}", s2(&zero)?);
    ensure!(s2(&one)? == zero, "S²|1⟩ = {}", s2(&one)?);
    let h = Gate::H.matrix();
    let identity: Vec<Vec<Amp>> = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| if i == j { Amp::one() } else { Amp::zero() })
                .collect()
        })
        .collect();
    ensure!(gram(&h) == identity, "H² ≠ I");
    for s in [&zero, &one] {
        let hh = apply_gate(&apply_gate(s, Gate::H, &[0])?, Gate::H, &[0])?;
        ensure!(&hh == s, "H²{s} = {hh}");
    }
    for g in ALL_GATES {
        ensure!(is_unitary(&g.matrix()), "{} is not unitary", g.name());
    }
    Ok("S², H² and U†U = I hold exactly for all five gates".into())
}

fn exact_complexities() -> Outcome {
    let spec = MachineSpec::new(3, Mode::CondN)?;
    let cond = ConditionSpec::new(1);
    let oracle = Oracle::new(3, 1);

    let mut compared = 0;
    for (w, n, l) in [(3, 1, 8), (3, 1, 12), (4, 2, 10)] {
        let engine = table(w, n, l)?;
        let reference = Oracle::new(w, n).halting(l);
        ensure!(
            engine.len() == reference.len(),
            "W={w}: {} halting programs vs {} in the oracle",
            engine.len(),
            reference.len()
        );
        for (bits, out) in &reference {
            let rec = engine
                .get(&bits.parse()?)
                .ok_or(format!("{bits} missing from the table"))?;
            let ours = rec.output.to_float();
            let dot: f64 = ours.amps().iter().zip(out).map(|(a, b)| a.0 * b).sum();
            ensure!((dot.abs() - 1.0).abs() < 1e-9, "{bits}: outputs differ");
        }
        compared += reference.len();
    }

    let rot = PureState::real(1, vec![RingReal::frac(3, 5), RingReal::frac(4, 5)])?;
    let cases = [
        ("|0⟩", PureState::zeros(1), vec![1.0, 0.0], 4),
        ("R|0⟩", rot, vec![0.6, 0.8], 6),
        ("|1⟩", PureState::basis(1, 1), vec![0.0, 1.0], 8),
    ];
    let mut got = Vec::new();
    for (name, state, floats, want) in cases {
        let e = k_exact(&state, &spec, &cond, DEFAULT_BUDGET)?;
        let o = oracle.complexity(&floats, 8);
        ensure!(e.exact, "{name}: not certified");
        ensure!(
            e.value == Cost::Finite(want),
            "{name}: engine gives {}",
            e.value
        );
        ensure!(o == Some(want), "{name}: oracle gives {o:?}");
        got.push(format!("{name}={want}"));
    }
    Ok(format!(
        "{}; oracle agrees on {compared} halting programs",
        got.join(" ")
    ))
}

fn stabilization() -> Outcome {
    let mut checked = 0;
    let mut stabilized = 0;
    for (n, w, max_len) in [(1, 3, 16), (2, 4, 14)] {
        let spec = MachineSpec::new(w, Mode::CondN)?;
        let cond = ConditionSpec::new(n);
        let full = table(w, n, max_len)?;
        let tables: Vec<HaltTable> = (0..=max_len).map(|l| full.restricted(l)).collect();
        for seed in 0..100 {
            let target = seeded_state(n, seed)?;
            let exact = k_exact(&target, &spec, &cond, DEFAULT_BUDGET)?;
            ensure!(exact.exact, "n={n} seed {seed}: k_exact not certified");
            let v = exact.value.finite().ok_or("k_exact is infinite")?;
            let mut prev = Cost::Infinite;
            for (l, t) in tables.iter().enumerate() {
                let e = k_quantum(&target, t)?;
                ensure!(
                    e.value <= prev,
                    "n={n} seed {seed}: value rises at max_len {l}"
                );
                if l as u64 >= v {
                    ensure!(
                        e.value == exact.value,
                        "n={n} seed {seed}: {} at max_len {l}, exact {v}",
                        e.value
                    );
                    ensure!(
                        e.exact,
                        "n={n} seed {seed}: not flagged exact at max_len {l}"
                    );
                    stabilized += 1;
                }
                prev = e.value;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} targets, {stabilized} stabilized (target, max_len) pairs"
    ))
}

fn upper_bound() -> Outcome {
    let mut out = Vec::new();
    for (n, w) in [(1, 3), (2, 4)] {
        let t = table(w, n, 12)?;
        let extra: Vec<PureState> = (0..25)
            .map(|s| seeded_state(n, 1000 + s))
            .collect::<Result<_, _>>()?;
        let r = audit_upper_bound(&t, &extra)?;
        passes(&r)?;
        out.push(format!("n={n} c_U={}", r.claims[0].measured));
    }
    Ok(out.join(", "))
}

fn incompressibility() -> Outcome {
    let mut classical = 0;
    for n in 1..=4 {
        let t = table(n + 2, n, if n <= 2 { 10 } else { 8 })?;
        for delta in 0..=2 {
            if delta > n as u64 {
                ensure!(
                    audit_incompressibility_classical(&t, delta).is_err(),
                    "n={n} δ={delta} accepted"
                );
                continue;
            }
            passes(&audit_incompressibility_classical(&t, delta)?)?;
            classical += 1;
        }
    }
    let t = table(4, 2, 12)?;
    for seed in 0..50 {
        let basis: Vec<Ray> = seeded_basis(2, seed, 6)?.iter().map(Ray::from).collect();
        for c in 0..=1 {
            passes(&audit_incompressibility_quantum(&basis, &t, c)?)?;
        }
    }
    passes(&audit_hard_basis(&t.restricted(8))?)?;
    Ok(format!("{classical} classical audits (n=1, δ=2 asks for more than 2ⁿ strings and is refused), 50 seeded bases × c ∈ {{0,1}}, hard basis"))
}

fn subadditivity() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        let t = table(n + 2, n, 8)?;
        let zero = PureState::zeros(n);
        for x in BitString::all_of_length(n).filter(|x| x.count_ones() > 0) {
            let y = subadditivity_state(&x)?;
            let half = RingReal::frac(1, 2);
            ensure!(
                fidelity(&y, &qkc::qstate::basis_state(n, &x)?)? == half,
                "fidelity with |{x}⟩"
            );
            ensure!(fidelity(&y, &zero)? == half, "fidelity with |0…0⟩ for {x}");
            passes(&subadditivity_witness(&x, &t)?)?;
            count += 1;
        }
    }
    Ok(format!("{count} strings x ≠ 0…0 with n ≤ 3"))
}

fn monte_carlo() -> Outcome {
    let k = sample_size(4, 0.5, 1.0 / 1024.0)?;
    ensure!(k == 300, "sample_size(4, 0.5, 2^-10) = {k}");
    let spec = MachineSpec::new(3, Mode::CondN)?;
    let cond = ConditionSpec::new(1);
    let t = table(3, 1, 8)?;
    let targets = [
        PureState::real(1, vec![RingReal::frac(3, 5), RingReal::frac(4, 5)])?,
        PureState::real(1, vec![RingReal::inv_sqrt2(), RingReal::inv_sqrt2()])?,
        PureState::basis(1, 1),
    ];
    let mut summary = Vec::new();
    for target in &targets {
        let exact = k_exact(target, &spec, &cond, DEFAULT_BUDGET)?
            .value
            .finite()
            .ok_or("infinite")?;
        let mut within = 0;
        for seed in 0..100 {
            let (e, _) = mc_approximate(target, &t, &McConfig::new(0.25, 0.01, seed))?;
            if e.value.finite().is_some_and(|v| v <= exact + 1) {
                within += 1;
            }
        }
        ensure!(
            within >= 97,
            "only {within}/100 runs within one bit of {exact}"
        );
        summary.push(format!("{within}/100 ≤ {}", exact + 1));
    }
    Ok(format!("sample_size = 300; {}", summary.join(", ")))
}

fn multiples_and_cloning() -> Outcome {
    passes(&audit_multiples(8, 8, 16, 1 << 10)?)?;
    let mut worst: f64 = 0.0;
    for m in 1..=256u64 {
        let (exact, approx) = log_binomial(2 * m, m)?;
        worst = worst.max((exact - approx).abs());
    }
    ensure!(worst <= 2.0, "log_binomial deviation {worst}");

    ensure!(
        CLONING_WITNESS.len() == 9,
        "witness has {} bits",
        CLONING_WITNESS.len()
    );
    let mut clones = 0;
    for w in 4..=6 {
        let spec = MachineSpec::new(w, Mode::CondN)?;
        let programs = [
            vec![Instruction::Halt],
            vec![Instruction::Rot(0), Instruction::Halt],
            vec![Instruction::Not(0), Instruction::Halt],
            vec![
                Instruction::Rot(0),
                Instruction::Not(0),
                Instruction::Rot(0),
                Instruction::Halt,
            ],
        ];
        for p in &programs {
            let bits = assemble(p, &spec, 1);
            for m in 1..=4 {
                passes(&cloning_check(&bits, 1, m, w)?)?;
                clones += 1;
            }
        }
        if w == 6 {
            let bell = assemble(
                &[
                    Instruction::Rot(0),
                    Instruction::Cnot(0, 1),
                    Instruction::Halt,
                ],
                &spec,
                2,
            );
            for m in 1..=3 {
                passes(&cloning_check(&bell, 2, m, w)?)?;
                clones += 1;
            }
        }
    }
    let x = PureState::real(1, vec![RingReal::frac(3, 5), RingReal::frac(4, 5)])?;
    ensure!(tensor_power(&x, 4).qubits() == 4, "tensor power width");
    Ok(format!("sweep passes, max |log C(2m,m) − closed form| = {worst:.4}, {clones} cloning runs with {CLONING_WITNESS}"))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, Box<dyn Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        std::iter::once("qkc").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    ensure!(
        code == 0,
        "qkc {} exited {code}: {}",
        args.join(" "),
        String::from_utf8_lossy(&err)
    );
    Ok(out)
}

fn determinism() -> Outcome {
    for (w, n, l) in [(3, 1, 14), (4, 2, 12)] {
        let spec = MachineSpec::new(w, Mode::CondN)?;
        let cond = ConditionSpec::new(n);
        let mut files = Vec::new();
        for cfg in [
            EnumConfig::new(l).workers(1),
            EnumConfig::new(l).workers(8),
            EnumConfig::new(l).scheduler(Scheduler::Dovetail),
        ] {
            let mut buf = Vec::new();
            write_table(&dovetail(&spec, &cond, &cfg)?, &mut buf)?;
            files.push(buf);
        }
        ensure!(files[0] == files[1], "W={w}: 1 and 8 workers differ");
        ensure!(files[0] == files[2], "W={w}: sweep and dovetail differ");
    }

    let dir = tempfile::tempdir()?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let state = path("state.json");
    let rot = PureState::real(1, vec![RingReal::frac(3, 5), RingReal::frac(4, 5)])?;
    std::fs::write(&state, state_file_json(&rot).to_string())?;
    let t1 = path("t1.jsonl");
    let t8 = path("t8.jsonl");
    cli(&[
        "--max-len",
        "12",
        "--workers",
        "1",
        "--out",
        &t1,
        "enumerate",
    ])?;
    cli(&[
        "--max-len",
        "12",
        "--workers",
        "8",
        "--out",
        &t8,
        "enumerate",
    ])?;
    ensure!(
        std::fs::read(&t1)? == std::fs::read(&t8)?,
        "CLI tables differ"
    );

    for cmd in [vec!["mc"], vec!["audit", "upper-bound"], vec!["k"]] {
        let mut runs = Vec::new();
        for i in 0..2 {
            let out = path(&format!("report{i}.json"));
            let mut args = vec![
                "--table", &t1, "--state", &state, "--seed", "7", "--out", &out,
            ];
            args.extend(cmd.iter().copied());
            let stdout = cli(&args)?;
            runs.push((stdout, std::fs::read(&out).unwrap_or_default()));
        }
        ensure!(
            runs[0] == runs[1],
            "qkc {} is not reproducible",
            cmd.join(" ")
        );
    }
    Ok("tables byte-identical across 1/8 workers and both schedulers; mc, audit and k reports identical".into())
}

type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "code laws", code_laws, Some(5)),
        (2, "Kraft sum and prefix-freeness", kraft, Some(30)),
        (3, "gate algebra", gate_algebra, None),
        (
            4,
            "exact complexities against the oracle",
            exact_complexities,
            Some(10),
        ),
        (5, "stabilization and monotonicity", stabilization, None),
        (6, "upper bound", upper_bound, None),
        (7, "incompressibility", incompressibility, Some(60)),
        (8, "sub-additivity witness", subadditivity, None),
        (9, "measurement estimator", monte_carlo, Some(60)),
        (10, "multiples and cloning", multiples_and_cloning, None),
        (11, "determinism", determinism, None),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into())
                .into())
        });
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(s) => {
                Err(format!("took {took:.2?}, limit {s} s").into())
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {id:>2} PASS {name} ({:.2} s): {detail}",
                took.as_secs_f64()
            ),
            Err(e) => {
                failed += 1;
                println!(
                    "criterion {id:>2} FAIL {name} ({:.2} s): {e}",
                    took.as_secs_f64()
                );
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
