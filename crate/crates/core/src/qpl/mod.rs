//! The reference machine: a prefix-free binary program language run as a
//! circuit on a `W`-qubit workspace that starts in `|0…0⟩`.
//!
//! Opcodes, each followed by fixed-width operands of `⌈log₂W⌉` bits:
//!
//! | code    | instruction | operands |
//! |---------|-------------|----------|
//! | `0`     | ROT q       | 1        |
//! | `10`    | NOT q       | 1        |
//! | `110`   | CNOT c t    | 2        |
//! | `11100` | RUNAUX d    | 1        |
//! | `11101` | REPAUX      | 0        |
//! | `1111`  | HALT        | 0        |
//!
//! A program is accepted only if it decodes to a sequence ending in HALT
//! with no bits left over, so the accepted set is prefix-free. In
//! unconditional mode the program starts with `encode_prime(numeral(n))`.

mod decode;
mod machine;

use serde::{Deserialize, Serialize};

pub use decode::{assemble, decode_aux, decode_program, Instruction, Invalid, Program};
pub use machine::{run, Machine, RunResult};

use crate::codes::BitString;
use crate::error::{Error, Result};
use crate::qstate::MAX_QUBITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "cond-n")]
    CondN,
    #[serde(rename = "uncond")]
    Uncond,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cond-n" => Ok(Mode::CondN),
            "uncond" => Ok(Mode::Uncond),
            _ => Err(Error::Config(format!("unknown mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::CondN => "cond-n",
            Mode::Uncond => "uncond",
        })
    }
}

/// Identity of a concrete machine: workspace width and mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MachineSpec {
    #[serde(rename = "W")]
    workspace: usize,
    mode: Mode,
}

impl MachineSpec {
    pub fn new(workspace: usize, mode: Mode) -> Result<Self> {
        if workspace == 0 {
            return Err(Error::Config("workspace width must be at least 1".into()));
        }
        if workspace > MAX_QUBITS {
            return Err(Error::TooManyQubits(workspace, MAX_QUBITS));
        }
        Ok(Self { workspace, mode })
    }

    /// The default conditional machine for `n` output qubits: `W = n + 2`.
    pub fn conditional(n: usize) -> Result<Self> {
        Self::new(n + 2, Mode::CondN)
    }

    pub fn workspace(&self) -> usize {
        self.workspace
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `⌈log₂ W⌉`.
    pub fn operand_width(&self) -> usize {
        (usize::BITS - (self.workspace - 1).leading_zeros()) as usize
    }
}

impl std::fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W={} mode={}", self.workspace, self.mode)
    }
}

/// Side information: output width `n`, optional copy count `m`, and the
/// classical auxiliary program `aux`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionSpec {
    pub n: usize,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub aux: BitString,
}

impl ConditionSpec {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            m: None,
            aux: BitString::empty(),
        }
    }

    pub fn with_copies(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_aux(mut self, aux: BitString) -> Self {
        self.aux = aux;
        self
    }

    /// Number of qubits a halting run outputs: `n·m` when `m` is set.
    pub fn output_width(&self) -> usize {
        self.n * self.m.unwrap_or(1)
    }

    pub fn validate(&self, spec: &MachineSpec) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.m == Some(0) {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if self.output_width() > spec.workspace() {
            return Err(Error::Config(format!(
                "output of {} qubits does not fit the workspace W={}",
                self.output_width(),
                spec.workspace()
            )));
        }
        Ok(())
    }
}

/// Checks that `cond.n` fits `spec`, for error reporting before long runs.
pub fn check_machine(spec: &MachineSpec, cond: &ConditionSpec) -> Result<()> {
    cond.validate(spec)
}
