mod oracle;

use proptest::prelude::*;

use qkc::codes::{
    decode_bar, decode_exact, decode_prime, encode_bar, encode_prime, pair, unpair, BitString,
    RingReal,
};
use qkc::enumerate::{default_fuel, dovetail, read_table, write_table, EnumConfig};
use qkc::kolmogorov::k_quantum;
use qkc::qpl::{run, ConditionSpec, MachineSpec, Mode, RunResult};
use qkc::qstate::{fidelity, inner};
use qkc::theorems::{seeded_basis, seeded_state};

use oracle::Oracle;

fn bits(max: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(BitString::from_bits)
}

proptest! {
    #[test]
    fn codes_round_trip(x in bits(40), y in bits(40)) {
        let bar = encode_bar(&x);
        prop_assert_eq!(bar.len(), 2 * x.len() + 1);
        prop_assert_eq!(decode_exact(&bar, decode_bar), Some(x.clone()));
        prop_assert_eq!(decode_exact(&encode_prime(&x), decode_prime), Some(x.clone()));
        prop_assert_eq!(decode_exact(&pair(&x, &y), unpair), Some((x, y)));
    }

    #[test]
    fn prime_codes_are_not_prefixes(x in bits(20), y in bits(20)) {
        prop_assume!(x != y);
        prop_assert!(!encode_prime(&x).is_prefix_of(&encode_prime(&y)));
    }

    #[test]
    fn run_matches_oracle(p in bits(18), w in 3usize..=5, n in 1usize..=2) {
        let spec = MachineSpec::new(w, Mode::CondN).unwrap();
        let cond = ConditionSpec::new(n);
        let ours = run(&spec, &p, &cond, default_fuel(p.len(), &cond));
        let theirs = Oracle::new(w, n).run(&p.to_string());
        match (ours.output(), theirs) {
            (None, None) => {}
            (Some(o), Some(t)) => {
                let dot: f64 = o.to_float().amps().iter().zip(&t).map(|(a, b)| a.0 * b).sum();
                prop_assert!((dot.abs() - 1.0).abs() < 1e-9);
            }
            (o, t) => prop_assert!(false, "{p}: engine {o:?}, oracle {t:?}"),
        }
    }

    #[test]
    fn fuel_monotone(p in bits(16), fuel in 0u64..8) {
        let spec = MachineSpec::new(3, Mode::CondN).unwrap();
        let cond = ConditionSpec::new(1);
        let short = run(&spec, &p, &cond, fuel);
        let long = run(&spec, &p, &cond, fuel + 64);
        if short.is_halted() {
            prop_assert_eq!(short, long);
        } else if let RunResult::Invalid { .. } = short {
            prop_assert_eq!(short, long);
        }
    }

    #[test]
    fn fidelity_is_a_probability(a in 0u64..500, b in 0u64..500, n in 1usize..=3) {
        let x = seeded_state(n, a).unwrap();
        let y = seeded_state(n, b).unwrap();
        let f = fidelity(&x, &y).unwrap();
        prop_assert!(!f.is_negative());
        prop_assert!(f <= RingReal::one());
        prop_assert_eq!(f, fidelity(&y, &x).unwrap());
        prop_assert!(fidelity(&x, &x).unwrap().is_one());
    }

    #[test]
    fn seeded_bases_are_orthonormal(seed in any::<u64>(), rotations in 0usize..10) {
        let b = seeded_basis(2, seed, rotations).unwrap();
        for (i, u) in b.iter().enumerate() {
            for (j, v) in b.iter().enumerate() {
                let ip = inner(u, v).unwrap();
                prop_assert_eq!(ip.is_zero(), i != j);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tables_round_trip(max_len in 0usize..=11, n in 1usize..=2) {
        let spec = MachineSpec::new(n + 2, Mode::CondN).unwrap();
        let t = dovetail(&spec, &ConditionSpec::new(n), &EnumConfig::new(max_len)).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        prop_assert_eq!(read_table(buf.as_slice()).unwrap(), t.clone());
        prop_assert!(t.kraft_sum() <= RingReal::one().rational_part().clone());
    }

    #[test]
    fn values_never_rise_with_more_programs(seed in any::<u64>(), n in 1usize..=2) {
        let spec = MachineSpec::new(n + 2, Mode::CondN).unwrap();
        let full = dovetail(&spec, &ConditionSpec::new(n), &EnumConfig::new(12)).unwrap();
        let target = seeded_state(n, seed).unwrap();
        let mut prev = None;
        for l in 0..=12 {
            let v = k_quantum(&target, &full.restricted(l)).unwrap().value;
            if let Some(p) = prev {
                prop_assert!(v <= p);
            }
            prev = Some(v);
        }
    }
}
