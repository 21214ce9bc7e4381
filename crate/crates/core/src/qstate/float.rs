use super::PureState;
use crate::codes::Cost;
use crate::error::{Error, Result};

/// Comparison tolerance on fidelities for targets that have no exact
/// representation.
pub const FIDELITY_TOLERANCE: f64 = 1.0 / (1u64 << 40) as f64;

/// A target state given in floating point. Only used when the amplitudes
/// cannot be written in Q(√2).
#[derive(Debug, Clone, PartialEq)]
pub struct FloatState {
    n: usize,
    amps: Vec<(f64, f64)>,
}

impl FloatState {
    pub fn new(n: usize, amps: Vec<(f64, f64)>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::Param(format!(
                "{} amplitudes given for {n} qubits",
                amps.len()
            )));
        }
        let s = Self { n, amps };
        if (s.norm_sq() - 1.0).abs() > FIDELITY_TOLERANCE {
            return Err(Error::NotNormalized);
        }
        Ok(s)
    }

    pub fn from_exact(s: &PureState) -> Self {
        Self {
            n: s.qubits(),
            amps: s.amps().iter().map(|a| a.to_f64()).collect(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[(f64, f64)] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|(r, i)| r * r + i * i).sum()
    }

    /// `‖⟨self|z⟩‖²` in floating point, clamped to `[0, 1]`.
    pub fn fidelity(&self, z: &PureState) -> Result<f64> {
        if self.n != z.qubits() {
            return Err(Error::DimensionMismatch(self.n, z.qubits()));
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (&(ar, ai), b) in self.amps.iter().zip(z.amps()) {
            let (br, bi) = b.to_f64();
            re += ar * br + ai * bi;
            im += ar * bi - ai * br;
        }
        Ok((re * re + im * im).clamp(0.0, 1.0))
    }
}

/// Least `t ≥ 0` with `f ≥ 2^(−t) − tol`; fidelities within `tol` of zero
/// count as zero.
pub fn ceil_neg_log2_approx(f: f64) -> Result<Cost> {
    if !(-FIDELITY_TOLERANCE..=1.0 + FIDELITY_TOLERANCE).contains(&f) {
        return Err(Error::InvalidFidelity(f.to_string()));
    }
    if f <= FIDELITY_TOLERANCE {
        return Ok(Cost::Infinite);
    }
    let mut t = 0i32;
    while f < 2f64.powi(-t) - FIDELITY_TOLERANCE {
        t += 1;
    }
    Ok(Cost::Finite(t as u64))
}
