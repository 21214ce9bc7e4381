//! Machine-relative complexity
//! `K(|x⟩ | y) = min_p { l(p) + ⌈−log ‖⟨z_p|x⟩‖²⌉ }` where `z_p` is the
//! output of program `p`, computed against a halt table.

mod mc;

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use mc::{chernoff_tail, mc_approximate, sample_size, write_trace, McConfig, McTrace};

use crate::codes::{ceil_neg_log2, BitString, Cost, RingReal};
use crate::enumerate::{check_budget, default_fuel, dovetail, EnumConfig, HaltRecord, HaltTable};
use crate::error::{Error, Result};
use crate::qpl::{assemble, ConditionSpec, Instruction, MachineSpec};
use crate::qstate::{
    basis_state, ceil_neg_log2_approx, fidelity, FloatState, PureState, Ray, TargetState,
};

/// A complexity value with its two-part witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KEstimate {
    pub value: Cost,
    pub witness: Option<BitString>,
    pub directly_computed: Option<PureState>,
    pub approximation_part: Cost,
    /// No program of any length does better on this machine.
    pub exact: bool,
    pub machine: MachineSpec,
}

impl KEstimate {
    fn none(machine: MachineSpec, exact: bool) -> Self {
        Self {
            value: Cost::Infinite,
            witness: None,
            directly_computed: None,
            approximation_part: Cost::Infinite,
            exact,
            machine,
        }
    }

    fn from_record(r: &HaltRecord, approx: u64, machine: MachineSpec) -> Self {
        Self {
            value: Cost::Finite(r.bits.len() as u64 + approx),
            witness: Some(r.bits.clone()),
            directly_computed: Some(r.output.clone()),
            approximation_part: Cost::Finite(approx),
            exact: false,
            machine,
        }
    }

    /// The witness outputs the target itself (up to phase).
    pub fn is_direct(&self) -> bool {
        self.approximation_part == Cost::Finite(0)
    }
}

impl Serialize for KEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("value", &self.value)?;
        m.serialize_entry("witness", &self.witness)?;
        m.serialize_entry("approx", &self.approximation_part)?;
        m.serialize_entry("exact", &self.exact)?;
        m.serialize_entry("machine", &self.machine)?;
        m.end()
    }
}

/// The first record for every distinct output. Records are canonical, so
/// this is the shortest (then least) program for each output.
pub fn shortest_programs(table: &HaltTable) -> Vec<&HaltRecord> {
    let mut seen: HashSet<&PureState> = HashSet::new();
    table
        .records()
        .iter()
        .filter(|r| seen.insert(&r.output))
        .collect()
}

/// A value found in a table is the machine minimum when every program that
/// could beat it has length `≤ max_len` and was run to completion.
fn certified(value: Cost, table: &HaltTable) -> bool {
    let complete = table.fuel() >= default_fuel(table.max_len(), table.cond());
    let reach = table.max_len() as u64 + 1;
    complete && value.finite().is_some_and(|v| v <= reach)
}

fn check_width(target: usize, table: &HaltTable) -> Result<()> {
    if target != table.output_width() {
        return Err(Error::TargetWidth {
            target,
            table: table.output_width(),
        });
    }
    Ok(())
}

fn minimize(
    table: &HaltTable,
    mut approx: impl FnMut(&PureState) -> Result<Cost>,
) -> Result<KEstimate> {
    let mut best: Option<(u64, &HaltRecord, u64)> = None;
    for r in shortest_programs(table) {
        let len = r.bits.len() as u64;
        if best.is_some_and(|(v, _, _)| len >= v) {
            // Records are length-ordered: nothing further can win or tie
            // with a shorter witness.
            break;
        }
        if let Cost::Finite(a) = approx(&r.output)? {
            if best.is_none_or(|(v, _, _)| len + a < v) {
                best = Some((len + a, r, a));
            }
        }
    }
    let machine = *table.spec();
    let mut est = match best {
        Some((_, r, a)) => KEstimate::from_record(r, a, machine),
        None => KEstimate::none(machine, false),
    };
    est.exact = certified(est.value, table);
    Ok(est)
}

/// Minimum of `l(p) + ⌈−log fidelity⌉` over the table, ties broken by least
/// length then lexicographic bits.
pub fn k_quantum(target: &PureState, table: &HaltTable) -> Result<KEstimate> {
    check_width(target.qubits(), table)?;
    minimize(table, |z| ceil_neg_log2(&fidelity(z, target)?))
}

/// [`k_quantum`] for the unit state a [`Ray`] stands for.
pub fn k_ray(target: &Ray, table: &HaltTable) -> Result<KEstimate> {
    check_width(target.qubits(), table)?;
    minimize(table, |z| ceil_neg_log2(&target.fidelity(z)?))
}

/// [`k_quantum`] for a target known only in floating point.
pub fn k_quantum_approx(target: &FloatState, table: &HaltTable) -> Result<KEstimate> {
    check_width(target.qubits(), table)?;
    let mut est = minimize(table, |z| ceil_neg_log2_approx(target.fidelity(z)?))?;
    est.exact = false;
    Ok(est)
}

pub fn k_target(target: &TargetState, table: &HaltTable) -> Result<KEstimate> {
    match target {
        TargetState::Exact(s) => k_quantum(s, table),
        TargetState::Approx(s) => k_quantum_approx(s, table),
    }
}

/// The program that writes basis state `x` directly: NOT on every set bit.
pub fn basis_program(x: &BitString, spec: &MachineSpec) -> BitString {
    let mut ins: Vec<Instruction> = (0..x.len())
        .filter(|&i| x.get(i) == Some(true))
        .map(Instruction::Not)
        .collect();
    ins.push(Instruction::Halt);
    assemble(&ins, spec, x.len())
}

/// An upper bound on `K(target)` from the best basis-program approximation.
pub fn basis_bound(target: &PureState, spec: &MachineSpec) -> Result<u64> {
    let n = target.qubits();
    let mut best = u64::MAX;
    for (i, a) in target.amps().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let x = BitString::from_uint(i as u64, n);
        let c = ceil_neg_log2(&a.norm_sq())?
            .finite()
            .expect("nonzero amplitude");
        best = best.min(basis_program(&x, spec).len() as u64 + c);
    }
    Ok(best)
}

/// The machine minimum, certified: enumerates every program up to the
/// basis-program bound.
pub fn k_exact(
    target: &PureState,
    spec: &MachineSpec,
    cond: &ConditionSpec,
    budget: u128,
) -> Result<KEstimate> {
    if target.qubits() != cond.output_width() {
        return Err(Error::TargetWidth {
            target: target.qubits(),
            table: cond.output_width(),
        });
    }
    let bound = basis_bound(target, spec)? as usize;
    check_budget(bound, budget)?;
    let table = dovetail(spec, cond, &EnumConfig::new(bound).budget(budget))?;
    k_exact_in(target, &table)
}

/// [`k_quantum`] that fails unless the table certifies the answer.
pub fn k_exact_in(target: &PureState, table: &HaltTable) -> Result<KEstimate> {
    let est = k_quantum(target, table)?;
    if !est.exact {
        return Err(Error::Table(format!(
            "table up to {} bits does not certify a value of {}",
            table.max_len(),
            est.value
        )));
    }
    Ok(est)
}

/// Complexity of the classical string `x` as the basis state `|x⟩`.
pub fn k_classical(x: &BitString, table: &HaltTable) -> Result<KEstimate> {
    k_quantum(&basis_state(x.len(), x)?, table)
}

/// `2^(−K(x))` for every `n`-bit `x` with a finite value.
pub fn universal_weight(table: &HaltTable, n: usize) -> Result<BTreeMap<BitString, BigRational>> {
    let mut out = BTreeMap::new();
    if n != table.output_width() {
        return Ok(out);
    }
    for x in BitString::all_of_length(n) {
        if let Cost::Finite(v) = k_classical(&x, table)?.value {
            let w = RingReal::pow2(-(v as i64));
            out.insert(x, w.rational_part().clone());
        }
    }
    Ok(out)
}
