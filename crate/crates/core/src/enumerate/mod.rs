//! Enumeration of halting programs into a canonical program → state table.
//!
//! Two schedulers build the same table. [`Scheduler::Dovetail`] admits one
//! candidate per stage and advances every live candidate by one instruction,
//! so stage `k` runs step `i` of candidate `k − i + 1`. [`Scheduler::Sweep`]
//! runs each candidate to completion, split across worker threads. Both
//! emit records in length-lexicographic order of program bits.

mod store;

use std::collections::VecDeque;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use store::{
    load_table, read_table, save_table, table_lines, write_table, TableManifest, TABLE_VERSION,
};

use crate::codes::{kraft_sum, BitString};
use crate::error::{Error, Result};
use crate::qpl::{run, ConditionSpec, Machine, MachineSpec, RunResult};
use crate::qstate::PureState;

/// Default ceiling on the number of candidate bit strings (`2²⁴`).
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "QKC_BUDGET";

/// The candidate budget, from `QKC_BUDGET` when set and valid.
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Refuses sweeps over more than `budget` candidates of length `≤ max_len`.
pub fn check_budget(max_len: usize, budget: u128) -> Result<()> {
    let needed = 1u128.checked_shl(max_len as u32 + 1).unwrap_or(u128::MAX);
    if max_len >= 126 || needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// `4·L + m·max(L, l(aux))`: covers every accepted program of length `≤ L`.
pub fn default_fuel(max_len: usize, cond: &ConditionSpec) -> u64 {
    let l = max_len as u64;
    let m = cond.m.unwrap_or(1) as u64;
    4 * l + m * l.max(cond.aux.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaltRecord {
    pub bits: BitString,
    pub n: usize,
    pub output: PureState,
    pub steps: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheduler {
    Dovetail,
    Sweep { workers: usize },
}

impl Default for Scheduler {
    fn default() -> Self {
        Scheduler::Sweep { workers: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub max_len: usize,
    pub fuel: Option<u64>,
    pub budget: u128,
    pub scheduler: Scheduler,
}

impl EnumConfig {
    pub fn new(max_len: usize) -> Self {
        Self {
            max_len,
            fuel: None,
            budget: DEFAULT_BUDGET,
            scheduler: Scheduler::default(),
        }
    }

    pub fn fuel(mut self, fuel: u64) -> Self {
        self.fuel = Some(fuel);
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn scheduler(mut self, scheduler: Scheduler) -> Self {
        self.scheduler = scheduler;
        self
    }

    pub fn workers(self, workers: usize) -> Self {
        self.scheduler(Scheduler::Sweep { workers })
    }
}

/// Every accepted program of length `≤ max_len` that halts within `fuel`,
/// in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaltTable {
    spec: MachineSpec,
    cond: ConditionSpec,
    max_len: usize,
    fuel: u64,
    records: Vec<HaltRecord>,
}

impl HaltTable {
    pub(crate) fn from_parts(
        spec: MachineSpec,
        cond: ConditionSpec,
        max_len: usize,
        fuel: u64,
        records: Vec<HaltRecord>,
    ) -> Self {
        Self {
            spec,
            cond,
            max_len,
            fuel,
            records,
        }
    }

    /// An empty table (no program of length 0 halts).
    pub fn empty(spec: MachineSpec, cond: ConditionSpec) -> Self {
        Self::from_parts(spec, cond, 0, 0, Vec::new())
    }

    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    pub fn cond(&self) -> &ConditionSpec {
        &self.cond
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn records(&self) -> &[HaltRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Qubit count of every output in the table.
    pub fn output_width(&self) -> usize {
        self.cond.output_width()
    }

    pub fn get(&self, bits: &BitString) -> Option<&HaltRecord> {
        self.records
            .binary_search_by(|r| r.bits.cmp(bits))
            .ok()
            .map(|i| &self.records[i])
    }

    /// Distinct outputs, each with its first (shortest, then least) program.
    pub fn distinct_outputs(&self) -> Vec<&HaltRecord> {
        let mut out: Vec<&HaltRecord> = Vec::new();
        for r in &self.records {
            if !out.iter().any(|o| o.output.same_ray(&r.output)) {
                out.push(r);
            }
        }
        out
    }

    /// The records whose programs are shorter than `len`, as a table.
    pub fn restricted(&self, max_len: usize) -> HaltTable {
        let max_len = max_len.min(self.max_len);
        let records = self
            .records
            .iter()
            .filter(|r| r.bits.len() <= max_len)
            .cloned()
            .collect();
        Self::from_parts(self.spec, self.cond.clone(), max_len, self.fuel, records)
    }

    /// Exact `Σ 2^(−l(p))` over the table's programs.
    pub fn kraft_sum(&self) -> BigRational {
        let lens: Vec<u64> = self.records.iter().map(|r| r.bits.len() as u64).collect();
        kraft_sum(&lens)
    }

    /// No program in the table is a proper prefix of another.
    pub fn is_prefix_free(&self) -> bool {
        is_prefix_free(self.records.iter().map(|r| &r.bits))
    }

    /// SHA-256 over the serialized record lines.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for line in store::record_lines(self) {
            h.update(line.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    /// Re-runs every record and checks the stored output and step count.
    pub fn verify(&self) -> Result<()> {
        for r in &self.records {
            match run(&self.spec, &r.bits, &self.cond, r.steps) {
                RunResult::Halted { output, steps } if output == r.output && steps == r.steps => {}
                other => {
                    return Err(Error::Table(format!(
                        "record {} does not reproduce: {other:?}",
                        r.bits
                    )))
                }
            }
        }
        Ok(())
    }
}

/// True when no word is a proper prefix of another.
pub fn is_prefix_free<'a>(words: impl IntoIterator<Item = &'a BitString>) -> bool {
    let mut v: Vec<&BitString> = words.into_iter().collect();
    v.sort_by(|a, b| a.bits().cmp(b.bits()));
    // In lexicographic order a prefix sits next to one of its extensions.
    v.windows(2)
        .all(|w| !(w[0].is_prefix_of(w[1]) && w[0] != w[1]))
}

fn record_of(result: RunResult, bits: BitString, want: usize) -> Option<HaltRecord> {
    match result {
        RunResult::Halted { output, steps } if output.qubits() == want => Some(HaltRecord {
            bits,
            n: output.qubits(),
            output,
            steps,
        }),
        _ => None,
    }
}

/// Builds the halt table for `(spec, cond)` over programs of length `≤ max_len`.
pub fn dovetail(spec: &MachineSpec, cond: &ConditionSpec, cfg: &EnumConfig) -> Result<HaltTable> {
    cond.validate(spec)?;
    check_budget(cfg.max_len, cfg.budget)?;
    let fuel = cfg.fuel.unwrap_or_else(|| default_fuel(cfg.max_len, cond));
    let count: u128 = (1u128 << (cfg.max_len + 1)) - 1;
    let records = match cfg.scheduler {
        Scheduler::Dovetail => staged(spec, cond, count, fuel),
        Scheduler::Sweep { workers } => sweep(spec, cond, count, fuel, workers.max(1)),
    };
    Ok(HaltTable::from_parts(
        *spec,
        cond.clone(),
        cfg.max_len,
        fuel,
        records,
    ))
}

fn staged(spec: &MachineSpec, cond: &ConditionSpec, count: u128, fuel: u64) -> Vec<HaltRecord> {
    let want = cond.output_width();
    let mut active: VecDeque<Machine<'_>> = VecDeque::new();
    let mut next: u128 = 0;
    let mut records = Vec::new();
    while next < count || !active.is_empty() {
        if next < count {
            active.push_back(Machine::new(spec, cond, BitString::from_index(next), fuel));
            next += 1;
        }
        let mut still = VecDeque::with_capacity(active.len());
        while let Some(mut m) = active.pop_front() {
            match m.step() {
                None => still.push_back(m),
                Some(r) => {
                    let r = r.clone();
                    if let Some(rec) = record_of(r, m.bits().clone(), want) {
                        records.push(rec);
                    }
                }
            }
        }
        active = still;
    }
    records.sort_by(|a, b| a.bits.cmp(&b.bits));
    records
}

fn sweep(
    spec: &MachineSpec,
    cond: &ConditionSpec,
    count: u128,
    fuel: u64,
    workers: usize,
) -> Vec<HaltRecord> {
    let want = cond.output_width();
    let chunk = count.div_ceil(workers as u128).max(1);
    let work = |lo: u128, hi: u128| -> Vec<HaltRecord> {
        (lo..hi)
            .filter_map(|i| {
                let bits = BitString::from_index(i);
                record_of(run(spec, &bits, cond, fuel), bits, want)
            })
            .collect()
    };
    if workers == 1 {
        return work(0, count);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u128)
            .map(|w| {
                let lo = (w * chunk).min(count);
                let hi = ((w + 1) * chunk).min(count);
                s.spawn(move || work(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    })
}
