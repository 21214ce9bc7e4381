use std::fmt;

use serde::{Deserialize, Serialize};

use super::Amp;
use crate::codes::RingReal;

/// The fixed gate set. `R` is the machine's rotation with `cos θ = 3/5`,
/// `S` the square root of not and `H` the Hadamard transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    X,
    Cnot,
    R,
    H,
    S,
}

pub const ALL_GATES: [Gate; 5] = [Gate::X, Gate::Cnot, Gate::R, Gate::H, Gate::S];

pub type Matrix = Vec<Vec<Amp>>;

impl Gate {
    pub fn name(self) -> &'static str {
        match self {
            Gate::X => "X",
            Gate::Cnot => "CNOT",
            Gate::R => "R",
            Gate::H => "H",
            Gate::S => "S",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Gate::Cnot => 2,
            _ => 1,
        }
    }

    /// Entries of a one-qubit gate as `[[u00, u01], [u10, u11]]`, real.
    pub(crate) fn entries_2x2(self) -> Option<[[RingReal; 2]; 2]> {
        let f = RingReal::frac;
        let h = RingReal::inv_sqrt2;
        Some(match self {
            Gate::X => [[f(0, 1), f(1, 1)], [f(1, 1), f(0, 1)]],
            Gate::R => [[f(3, 5), f(-4, 5)], [f(4, 5), f(3, 5)]],
            Gate::H => [[h(), h()], [h(), -h()]],
            Gate::S => [[h(), h()], [-h(), h()]],
            Gate::Cnot => return None,
        })
    }

    /// The full matrix in the computational basis (control first for CNOT).
    pub fn matrix(self) -> Matrix {
        match self.entries_2x2() {
            Some(e) => e
                .iter()
                .map(|row| row.iter().cloned().map(Amp::real).collect())
                .collect(),
            None => {
                let perm = [0usize, 1, 3, 2];
                (0..4)
                    .map(|r| {
                        (0..4)
                            .map(|c| {
                                if perm[r] == c {
                                    Amp::one()
                                } else {
                                    Amp::zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `U†U`, computed exactly.
pub fn gram(m: &Matrix) -> Matrix {
    let d = m.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(Amp::zero(), |acc, k| &acc + &(&m[k][i].conj() * &m[k][j])))
                .collect()
        })
        .collect()
}

pub fn is_unitary(m: &Matrix) -> bool {
    let g = gram(m);
    g.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, v)| {
            if i == j {
                *v == Amp::one()
            } else {
                v.is_zero()
            }
        })
    })
}
