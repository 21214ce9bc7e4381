use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MachineSpec, Mode};
use crate::codes::{decode_prime, encode_prime, BitReader, BitString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    Rot(usize),
    Not(usize),
    Cnot(usize, usize),
    RunAux(usize),
    RepAux,
    Halt,
}

impl Instruction {
    pub fn encode(&self, spec: &MachineSpec) -> BitString {
        let w = spec.operand_width();
        let op = |code: &str, args: &[usize]| {
            let mut out: BitString = code.parse().expect("opcode literal");
            for &a in args {
                out.extend_from(&BitString::from_uint(a as u64, w));
            }
            out
        };
        match *self {
            Instruction::Rot(q) => op("0", &[q]),
            Instruction::Not(q) => op("10", &[q]),
            Instruction::Cnot(c, t) => op("110", &[c, t]),
            Instruction::RunAux(d) => op("11100", &[d]),
            Instruction::RepAux => op("11101", &[]),
            Instruction::Halt => op("1111", &[]),
        }
    }

    pub fn uses_aux(&self) -> bool {
        matches!(self, Instruction::RunAux(_) | Instruction::RepAux)
    }

    /// Qubit operands (not the RUNAUX block index).
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Instruction::Rot(q) | Instruction::Not(q) => vec![q],
            Instruction::Cnot(c, t) => vec![c, t],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Rot(q) => write!(f, "ROT q{q}"),
            Instruction::Not(q) => write!(f, "NOT q{q}"),
            Instruction::Cnot(c, t) => write!(f, "CNOT q{c} q{t}"),
            Instruction::RunAux(d) => write!(f, "RUNAUX {d}"),
            Instruction::RepAux => f.write_str("REPAUX"),
            Instruction::Halt => f.write_str("HALT"),
        }
    }
}

/// Why a bit string is not a halting program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invalid {
    /// Bits ran out in the middle of an instruction or before HALT.
    Truncated,
    /// A qubit operand is `≥ W`.
    Operand,
    /// CNOT with control equal to target.
    RepeatedQubit,
    /// Bits remain after HALT.
    Trailing,
    /// The unconditional header declares an unusable output width.
    Width,
    /// The auxiliary input does not decode as a program.
    Aux,
    /// The auxiliary program itself uses RUNAUX or REPAUX.
    NestedAux,
    /// The output qubits are entangled with the rest of the workspace.
    Entangled,
    /// The output factor has no exact normalization in Q(√2).
    Unrepresentable,
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        f.write_str(&s)
    }
}

/// A decoded, accepted program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub raw: BitString,
    pub instructions: Vec<Instruction>,
    /// Output width declared by the header in unconditional mode.
    pub declared_n: Option<usize>,
}

impl Program {
    pub fn consumed(&self) -> usize {
        self.raw.len()
    }

    pub fn uses_aux(&self) -> bool {
        self.instructions.iter().any(Instruction::uses_aux)
    }
}

/// Reads the unconditional header `encode_prime(numeral(n))`.
pub(crate) fn read_header(r: &mut BitReader<'_>, spec: &MachineSpec) -> Result<usize, Invalid> {
    let numeral = decode_prime(r).ok_or(Invalid::Truncated)?;
    let n = numeral.index().ok_or(Invalid::Width)?;
    if n == 0 || n > spec.workspace() as u128 {
        return Err(Invalid::Width);
    }
    Ok(n as usize)
}

/// Reads one instruction.
pub(crate) fn read_instruction(
    r: &mut BitReader<'_>,
    spec: &MachineSpec,
) -> Result<Instruction, Invalid> {
    let w = spec.operand_width();
    let operand = |r: &mut BitReader<'_>| -> Result<usize, Invalid> {
        let v = r.read_uint(w).ok_or(Invalid::Truncated)? as usize;
        if v >= spec.workspace() {
            return Err(Invalid::Operand);
        }
        Ok(v)
    };
    let bit = |r: &mut BitReader<'_>| r.read().ok_or(Invalid::Truncated);
    if !bit(r)? {
        return Ok(Instruction::Rot(operand(r)?));
    }
    if !bit(r)? {
        return Ok(Instruction::Not(operand(r)?));
    }
    if !bit(r)? {
        let c = operand(r)?;
        let t = operand(r)?;
        if c == t {
            return Err(Invalid::RepeatedQubit);
        }
        return Ok(Instruction::Cnot(c, t));
    }
    if bit(r)? {
        return Ok(Instruction::Halt);
    }
    if bit(r)? {
        return Ok(Instruction::RepAux);
    }
    Ok(Instruction::RunAux(operand(r)?))
}

/// Decodes `bits` as a whole program: instructions up to HALT and nothing
/// after it.
pub fn decode_program(bits: &BitString, spec: &MachineSpec) -> Result<Program, Invalid> {
    let mut r = BitReader::new(bits);
    let declared_n = match spec.mode() {
        Mode::CondN => None,
        Mode::Uncond => Some(read_header(&mut r, spec)?),
    };
    let mut instructions = Vec::new();
    loop {
        let ins = read_instruction(&mut r, spec)?;
        instructions.push(ins);
        if ins == Instruction::Halt {
            break;
        }
    }
    if r.remaining() > 0 {
        return Err(Invalid::Trailing);
    }
    Ok(Program {
        raw: bits.clone(),
        instructions,
        declared_n,
    })
}

/// Decodes an auxiliary program: conditional syntax, no RUNAUX/REPAUX.
pub fn decode_aux(bits: &BitString, spec: &MachineSpec) -> Result<Vec<Instruction>, Invalid> {
    let cond = MachineSpec::new(spec.workspace(), Mode::CondN).map_err(|_| Invalid::Aux)?;
    let p = decode_program(bits, &cond).map_err(|_| Invalid::Aux)?;
    if p.uses_aux() {
        return Err(Invalid::NestedAux);
    }
    Ok(p.instructions)
}

/// Encodes instructions (and the header, for unconditional machines).
pub fn assemble(instructions: &[Instruction], spec: &MachineSpec, n: usize) -> BitString {
    let mut out = match spec.mode() {
        Mode::CondN => BitString::empty(),
        Mode::Uncond => encode_prime(&BitString::numeral(n as u64)),
    };
    for ins in instructions {
        out.extend_from(&ins.encode(spec));
    }
    out
}
