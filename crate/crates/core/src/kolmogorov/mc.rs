use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::KEstimate;
use crate::codes::{BitString, Cost};
use crate::enumerate::HaltTable;
use crate::error::{Error, Result};
use crate::qstate::{fidelity, PureState};

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Param(format!("{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

/// Least `k` with `2n − ε²·k·log₂e / 6 ≤ log₂α`.
pub fn sample_size(n: usize, epsilon: f64, alpha: f64) -> Result<u64> {
    check_open_unit("epsilon", epsilon)?;
    check_open_unit("alpha", alpha)?;
    let k = 6.0 * (2.0 * n as f64 - alpha.log2()) / (epsilon * epsilon * std::f64::consts::LOG2_E);
    Ok(k.ceil() as u64)
}

/// Chernoff bound `P(|m − qk| > εqk) ≤ 2·exp(−ε²qk/3)`.
pub fn chernoff_tail(epsilon: f64, q: f64, k: u64) -> Result<f64> {
    for (name, v) in [("epsilon", epsilon), ("q", q)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Param(format!("{name} must lie in [0, 1], got {v}")));
        }
    }
    Ok(2.0 * (-epsilon * epsilon * q * k as f64 / 3.0).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub epsilon: f64,
    pub alpha: f64,
    /// Trials per program; `None` uses [`sample_size`].
    pub k: Option<u64>,
    pub seed: u64,
    /// Run with fewer trials than [`sample_size`] asks for.
    #[serde(default)]
    pub allow_small_k: bool,
}

impl McConfig {
    pub fn new(epsilon: f64, alpha: f64, seed: u64) -> Self {
        Self {
            epsilon,
            alpha,
            k: None,
            seed,
            allow_small_k: false,
        }
    }

    pub fn trials(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn allow_small_k(mut self) -> Self {
        self.allow_small_k = true;
        self
    }

    /// The trial count, refusing one below the sample size for `n` qubits.
    pub fn resolve_trials(&self, n: usize) -> Result<u64> {
        let need = sample_size(n, self.epsilon, self.alpha)?;
        let k = self.k.unwrap_or(need);
        if k < need && !self.allow_small_k {
            return Err(Error::Refused(format!(
                "{k} trials per program is below the required {need}"
            )));
        }
        if k == 0 {
            return Err(Error::Param("at least one trial is required".into()));
        }
        Ok(k)
    }
}

/// One program's measurement record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McTrace {
    pub bits: BitString,
    pub trials: u64,
    pub successes: u64,
    /// `l(p) − log₂(m / ((1+ε)k))`; `None` when `m = 0`.
    pub estimate: Option<f64>,
}

/// Generator for the trials of one program: keyed by seed and program bits,
/// the `t`-th draw is trial `t`.
fn trial_rng(seed: u64, bits: &BitString) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(bits.to_string().as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

fn successes(seed: u64, bits: &BitString, q: f64, k: u64) -> u64 {
    if q >= 1.0 {
        return k;
    }
    if q <= 0.0 {
        return 0;
    }
    let mut rng = trial_rng(seed, bits);
    (0..k).filter(|_| rng.gen::<f64>() < q).count() as u64
}

/// Measurement-driven estimate: every halting program's output is tested
/// `k` times against the target and the best `l(p) − log₂(m/((1+ε)k))` is
/// kept, rounded up.
pub fn mc_approximate(
    target: &PureState,
    table: &HaltTable,
    cfg: &McConfig,
) -> Result<(KEstimate, Vec<McTrace>)> {
    super::check_width(target.qubits(), table)?;
    let k = cfg.resolve_trials(target.qubits())?;
    let mut trace = Vec::with_capacity(table.len());
    let mut best: Option<(f64, usize, u64)> = None;
    for (i, r) in table.records().iter().enumerate() {
        let q = fidelity(&r.output, target)?.to_f64();
        let m = successes(cfg.seed, &r.bits, q, k);
        let len = r.bits.len() as f64;
        let estimate = (m > 0).then(|| len - (m as f64 / ((1.0 + cfg.epsilon) * k as f64)).log2());
        if let Some(e) = estimate {
            if best.is_none_or(|(b, _, _)| e < b) {
                best = Some((e, i, m));
            }
        }
        trace.push(McTrace {
            bits: r.bits.clone(),
            trials: k,
            successes: m,
            estimate,
        });
    }
    let machine = *table.spec();
    let est = match best {
        None => KEstimate::none(machine, false),
        Some((e, i, _)) => {
            let r = &table.records()[i];
            let value = e.ceil().max(r.bits.len() as f64) as u64;
            KEstimate {
                value: Cost::Finite(value),
                witness: Some(r.bits.clone()),
                directly_computed: Some(r.output.clone()),
                approximation_part: Cost::Finite(value - r.bits.len() as u64),
                exact: false,
                machine,
            }
        }
    };
    Ok((est, trace))
}

/// Writes the trace as JSON Lines.
pub fn write_trace(trace: &[McTrace], mut w: impl Write) -> Result<()> {
    for t in trace {
        writeln!(w, "{}", serde_json::to_string(t)?)?;
    }
    Ok(())
}
