use std::sync::OnceLock;

use super::decode::{read_header, read_instruction};
use super::{decode_aux, decode_program, ConditionSpec, Instruction, Invalid, MachineSpec, Mode};
use crate::codes::{BitReader, BitString, RingReal};
use crate::qstate::{factor_prefix, Gate, PureState};

#[derive(Debug, Clone, PartialEq)]
pub enum RunResult {
    Halted { output: PureState, steps: u64 },
    Invalid { reason: Invalid },
    FuelExhausted,
}

impl RunResult {
    pub fn is_halted(&self) -> bool {
        matches!(self, RunResult::Halted { .. })
    }

    pub fn output(&self) -> Option<&PureState> {
        match self {
            RunResult::Halted { output, .. } => Some(output),
            _ => None,
        }
    }
}

/// Shared execution context for one run.
struct Exec<'a> {
    spec: &'a MachineSpec,
    cond: &'a ConditionSpec,
    aux: Option<Result<Vec<Instruction>, Invalid>>,
}

impl Exec<'_> {
    fn aux(&mut self) -> Result<&[Instruction], Invalid> {
        let (spec, bits) = (self.spec, &self.cond.aux);
        match self.aux.get_or_insert_with(|| decode_aux(bits, spec)) {
            Ok(v) => Ok(v),
            Err(e) => Err(*e),
        }
    }

    fn copies(&self) -> usize {
        self.cond.m.unwrap_or(1)
    }

    /// Instructions the next step executes, counting those inside aux runs.
    fn cost(&mut self, ins: &Instruction) -> Result<u64, Invalid> {
        Ok(match ins {
            Instruction::RunAux(_) => 1 + self.aux()?.len() as u64,
            Instruction::RepAux => 1 + (self.copies() * self.aux()?.len()) as u64,
            _ => 1,
        })
    }

    fn apply(&mut self, state: &mut PureState, ins: &Instruction) -> Result<(), Invalid> {
        match *ins {
            Instruction::Rot(q) => state.apply_real_2x2(rot_entries(), q),
            Instruction::Not(q) => state.apply_not(q),
            Instruction::Cnot(c, t) => state.apply_cnot(c, t),
            Instruction::RunAux(d) => {
                let off = d * self.cond.n;
                self.run_aux(state, off)?;
            }
            Instruction::RepAux => {
                for j in 0..self.copies() {
                    self.run_aux(state, j * self.cond.n)?;
                }
            }
            Instruction::Halt => {}
        }
        Ok(())
    }

    fn run_aux(&mut self, state: &mut PureState, offset: usize) -> Result<(), Invalid> {
        let w = self.spec.workspace();
        let aux = self.aux()?.to_vec();
        let shift = |q: usize| {
            let s = q + offset;
            if s < w {
                Ok(s)
            } else {
                Err(Invalid::Operand)
            }
        };
        for ins in &aux {
            match *ins {
                Instruction::Rot(q) => state.apply_real_2x2(rot_entries(), shift(q)?),
                Instruction::Not(q) => state.apply_not(shift(q)?),
                Instruction::Cnot(c, t) => state.apply_cnot(shift(c)?, shift(t)?),
                Instruction::Halt => break,
                Instruction::RunAux(_) | Instruction::RepAux => return Err(Invalid::NestedAux),
            }
        }
        Ok(())
    }

    fn finish(&self, state: &PureState, declared_n: Option<usize>, steps: u64) -> RunResult {
        let out_n = declared_n.unwrap_or(self.cond.n) * self.copies();
        let w = self.spec.workspace();
        let invalid = |reason| RunResult::Invalid { reason };
        if out_n > w {
            return invalid(Invalid::Width);
        }
        if out_n == w {
            return RunResult::Halted {
                output: state.clone(),
                steps,
            };
        }
        match factor_prefix(state, out_n) {
            Ok(Some((front, _))) => RunResult::Halted {
                output: front,
                steps,
            },
            Ok(None) => invalid(Invalid::Entangled),
            Err(_) => invalid(Invalid::Unrepresentable),
        }
    }
}

fn rot_entries() -> &'static [[RingReal; 2]; 2] {
    static ROT: OnceLock<[[RingReal; 2]; 2]> = OnceLock::new();
    ROT.get_or_init(|| Gate::R.entries_2x2().expect("rotation is a one-qubit gate"))
}

/// Runs `bits` on a fresh workspace. Deterministic; once `fuel` covers the
/// executed step count the result no longer depends on it.
pub fn run(spec: &MachineSpec, bits: &BitString, cond: &ConditionSpec, fuel: u64) -> RunResult {
    let program = match decode_program(bits, spec) {
        Ok(p) => p,
        Err(reason) => return RunResult::Invalid { reason },
    };
    let mut exec = Exec {
        spec,
        cond,
        aux: None,
    };
    let mut state = PureState::zeros(spec.workspace());
    let mut steps = 0u64;
    for ins in &program.instructions {
        let cost = match exec.cost(ins) {
            Ok(c) => c,
            Err(reason) => return RunResult::Invalid { reason },
        };
        if steps + cost > fuel {
            return RunResult::FuelExhausted;
        }
        if let Err(reason) = exec.apply(&mut state, ins) {
            return RunResult::Invalid { reason };
        }
        steps += cost;
    }
    exec.finish(&state, program.declared_n, steps)
}

/// A run that advances one instruction at a time, decoding lazily. Used by
/// the dovetailing scheduler.
pub struct Machine<'a> {
    exec: Exec<'a>,
    bits: BitString,
    pos: usize,
    declared_n: Option<usize>,
    state: PureState,
    steps: u64,
    fuel: u64,
    done: Option<RunResult>,
}

impl<'a> Machine<'a> {
    pub fn new(spec: &'a MachineSpec, cond: &'a ConditionSpec, bits: BitString, fuel: u64) -> Self {
        let mut m = Self {
            exec: Exec {
                spec,
                cond,
                aux: None,
            },
            bits,
            pos: 0,
            declared_n: None,
            state: PureState::zeros(spec.workspace()),
            steps: 0,
            fuel,
            done: None,
        };
        if spec.mode() == Mode::Uncond {
            let mut r = BitReader::new(&m.bits);
            match read_header(&mut r, spec) {
                Ok(n) => {
                    m.declared_n = Some(n);
                    m.pos = r.position();
                }
                Err(reason) => m.done = Some(RunResult::Invalid { reason }),
            }
        }
        m
    }

    pub fn result(&self) -> Option<&RunResult> {
        self.done.as_ref()
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Executes the next instruction. Returns the final result once the
    /// run is over.
    pub fn step(&mut self) -> Option<&RunResult> {
        if self.done.is_none() {
            let outcome = self.advance();
            self.done = outcome;
        }
        self.done.as_ref()
    }

    fn advance(&mut self) -> Option<RunResult> {
        let invalid = |reason| Some(RunResult::Invalid { reason });
        let mut r = BitReader::at(&self.bits, self.pos);
        let ins = match read_instruction(&mut r, self.exec.spec) {
            Ok(i) => i,
            Err(reason) => return invalid(reason),
        };
        self.pos = r.position();
        if ins == Instruction::Halt && r.remaining() > 0 {
            return invalid(Invalid::Trailing);
        }
        let cost = match self.exec.cost(&ins) {
            Ok(c) => c,
            Err(reason) => return invalid(reason),
        };
        if self.steps + cost > self.fuel {
            return Some(RunResult::FuelExhausted);
        }
        if let Err(reason) = self.exec.apply(&mut self.state, &ins) {
            return invalid(reason);
        }
        self.steps += cost;
        if ins == Instruction::Halt {
            return Some(self.exec.finish(&self.state, self.declared_n, self.steps));
        }
        None
    }
}
