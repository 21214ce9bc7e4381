//! Exact pure states over Q(√2).
//!
//! Basis index `i` of an `n`-qubit state is the `n`-bit string of qubit
//! values with qubit 0 as the most significant bit, so amplitudes are listed
//! in lexicographic order of basis strings and `tensor(a, b)` puts the
//! qubits of `a` first.

mod amp;
mod basis;
mod float;
mod gate;
mod io;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use amp::Amp;
pub use basis::{check_orthonormal, extend_to_basis, gram_schmidt, Ray};
pub use float::{ceil_neg_log2_approx, FloatState, FIDELITY_TOLERANCE};
pub use gate::{gram, is_unitary, Gate, Matrix, ALL_GATES};
pub use io::{parse_state_file, state_file_json, TargetState};

use crate::codes::{BitString, RingReal};
use crate::error::{Error, Result};

/// Upper limit on qubit counts accepted anywhere in the crate.
pub const MAX_QUBITS: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureState {
    n: usize,
    amps: Vec<Amp>,
}

impl PureState {
    /// Builds a state, checking the length and that `Σ|aᵢ|² = 1` exactly.
    pub fn new(n: usize, amps: Vec<Amp>) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n, MAX_QUBITS));
        }
        if amps.len() != 1 << n {
            return Err(Error::Param(format!(
                "{} amplitudes given for {n} qubits",
                amps.len()
            )));
        }
        let s = Self { n, amps };
        if !s.norm_sq().is_one() {
            return Err(Error::NotNormalized);
        }
        Ok(s)
    }

    pub(crate) fn from_parts_unchecked(n: usize, amps: Vec<Amp>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        Self { n, amps }
    }

    pub fn real(n: usize, amps: Vec<RingReal>) -> Result<Self> {
        Self::new(n, amps.into_iter().map(Amp::real).collect())
    }

    /// `|0…0⟩`.
    pub fn zeros(n: usize) -> Self {
        let mut amps = vec![Amp::zero(); 1 << n];
        amps[0] = Amp::one();
        Self { n, amps }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![Amp::zero(); 1 << n];
        amps[index] = Amp::one();
        Self { n, amps }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Amp] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> &Amp {
        &self.amps[index]
    }

    pub fn norm_sq(&self) -> RingReal {
        self.amps.iter().map(Amp::norm_sq).sum()
    }

    /// True when every amplitude has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.amps.iter().all(|a| a.im.is_zero())
    }

    /// The computational basis index if the state is `|i⟩` up to phase.
    pub fn as_basis_index(&self) -> Option<usize> {
        let mut nz = self.amps.iter().enumerate().filter(|(_, a)| !a.is_zero());
        let (i, _) = nz.next()?;
        nz.next().is_none().then_some(i)
    }

    pub fn same_ray(&self, other: &PureState) -> bool {
        fidelity(self, other).map(|f| f.is_one()).unwrap_or(false)
    }

    pub fn to_float(&self) -> FloatState {
        FloatState::from_exact(self)
    }

    /// Applies a gate in place.
    pub fn apply(&mut self, gate: Gate, qubits: &[usize]) -> Result<()> {
        if qubits.len() != gate.arity() {
            return Err(Error::GateArity {
                gate: gate.name(),
                expected: gate.arity(),
                got: qubits.len(),
            });
        }
        for &q in qubits {
            if q >= self.n {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    n: self.n,
                });
            }
        }
        match gate {
            Gate::X => self.apply_not(qubits[0]),
            Gate::Cnot => {
                if qubits[0] == qubits[1] {
                    return Err(Error::RepeatedQubit(qubits[0]));
                }
                self.apply_cnot(qubits[0], qubits[1]);
            }
            _ => {
                let e = gate.entries_2x2().expect("one-qubit gate");
                self.apply_real_2x2(&e, qubits[0]);
            }
        }
        Ok(())
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub(crate) fn apply_not(&mut self, q: usize) {
        let m = self.mask(q);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
    }

    pub(crate) fn apply_cnot(&mut self, control: usize, target: usize) {
        let (c, t) = (self.mask(control), self.mask(target));
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    pub(crate) fn apply_real_2x2(&mut self, u: &[[RingReal; 2]; 2], q: usize) {
        let m = self.mask(q);
        for i in 0..self.amps.len() {
            if i & m != 0 {
                continue;
            }
            let j = i | m;
            let (a, b) = (&self.amps[i], &self.amps[j]);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let na = &a.scale(&u[0][0]) + &b.scale(&u[0][1]);
            let nb = &a.scale(&u[1][0]) + &b.scale(&u[1][1]);
            self.amps[i] = na;
            self.amps[j] = nb;
        }
    }
}

impl fmt::Debug for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

impl fmt::Display for PureState {
    /// Ket notation over the nonzero amplitudes, e.g. `3/5|0⟩ + 4/5|1⟩`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{a}|{}⟩", BitString::from_uint(i as u64, self.n))?;
        }
        Ok(())
    }
}

pub fn basis_state(n: usize, index: &BitString) -> Result<PureState> {
    if index.len() != n {
        return Err(Error::Param(format!(
            "basis index {index} has {} bits, expected {n}",
            index.len()
        )));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n, MAX_QUBITS));
    }
    Ok(PureState::basis(n, index.to_uint() as usize))
}

pub fn tensor(a: &PureState, b: &PureState) -> PureState {
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.amps {
        for y in &b.amps {
            amps.push(x * y);
        }
    }
    PureState::from_parts_unchecked(a.n + b.n, amps)
}

/// `|x⟩^{⊗m}`; `m = 0` gives the zero-qubit state `[1]`.
pub fn tensor_power(x: &PureState, m: usize) -> PureState {
    (0..m).fold(PureState::zeros(0), |acc, _| tensor(&acc, x))
}

pub(crate) fn inner_amps(a: &[Amp], b: &[Amp]) -> Amp {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Amp::zero(), |acc, (x, y)| &acc + &(&x.conj() * y))
}

/// `⟨a|b⟩`.
pub fn inner(a: &PureState, b: &PureState) -> Result<Amp> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    Ok(inner_amps(&a.amps, &b.amps))
}

/// `‖⟨a|b⟩‖²`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<RingReal> {
    inner(a, b).map(|z| z.norm_sq())
}

pub fn apply_gate(s: &PureState, g: Gate, qubits: &[usize]) -> Result<PureState> {
    let mut out = s.clone();
    out.apply(g, qubits)?;
    Ok(out)
}

pub fn measure_probs(s: &PureState) -> Vec<RingReal> {
    s.amps.iter().map(Amp::norm_sq).collect()
}

/// Splits `s` into `front ⊗ back` with `front` on the first `k` qubits, or
/// `None` if those qubits are entangled with the rest.
///
/// Viewing the amplitudes as a `2^k × 2^(n−k)` matrix, the split exists iff
/// the matrix has rank one. Each factor is normalized exactly; if a factor's
/// norm has no square root in Q(√2) the result is an error.
pub fn factor_prefix(s: &PureState, k: usize) -> Result<Option<(PureState, PureState)>> {
    if k == 0 || k >= s.n {
        return Err(Error::SplitOutOfRange { k, n: s.n });
    }
    let cols = 1usize << (s.n - k);
    let rows = 1usize << k;
    let at = |r: usize, c: usize| &s.amps[r * cols + c];
    let Some(pivot) = s.amps.iter().position(|a| !a.is_zero()) else {
        return Err(Error::NotNormalized);
    };
    let (r0, c0) = (pivot / cols, pivot % cols);
    let p = at(r0, c0);
    for r in 0..rows {
        let left = at(r, c0);
        for c in 0..cols {
            // 2×2 minor against the pivot.
            let lhs = at(r, c) * p;
            let rhs = left * at(r0, c);
            if lhs != rhs {
                return Ok(None);
            }
        }
    }
    let column: Vec<Amp> = (0..rows).map(|r| at(r, c0).clone()).collect();
    let row: Vec<Amp> = (0..cols).map(|c| at(r0, c).clone()).collect();
    let front = normalize(k, column)?;
    let back = normalize(s.n - k, row)?;
    // Fix the relative phase so front ⊗ back reproduces s exactly.
    let probe = &front.amps[r0] * &back.amps[c0];
    let phase = p.checked_div(&probe).ok_or(Error::NotNormalized)?;
    let back =
        PureState::from_parts_unchecked(back.n, back.amps.iter().map(|a| &phase * a).collect());
    Ok(Some((front, back)))
}

fn normalize(n: usize, amps: Vec<Amp>) -> Result<PureState> {
    let nsq: RingReal = amps.iter().map(Amp::norm_sq).sum();
    let norm = nsq.sqrt().ok_or_else(|| {
        Error::Param(format!(
            "factor norm² {} has no exact square root",
            nsq.to_literal()
        ))
    })?;
    let inv = norm.checked_recip().ok_or(Error::NotNormalized)?;
    Ok(PureState::from_parts_unchecked(
        n,
        amps.iter().map(|a| a.scale(&inv)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> RingReal {
        RingReal::frac(n, d)
    }

    fn st(n: usize, amps: &[RingReal]) -> PureState {
        PureState::real(n, amps.to_vec()).unwrap()
    }

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn rot0() -> PureState {
        apply_gate(&PureState::zeros(1), Gate::R, &[0]).unwrap()
    }

    #[test]
    fn basis_states() {
        assert_eq!(basis_state(1, &bits("0")).unwrap(), PureState::zeros(1));
        let s = basis_state(2, &bits("11")).unwrap();
        assert_eq!(s.as_basis_index(), Some(3));
        let s = basis_state(3, &bits("010")).unwrap();
        assert_eq!(s.as_basis_index(), Some(2));
        assert!(basis_state(2, &bits("1")).is_err());
    }

    #[test]
    fn tensor_examples() {
        let one = basis_state(1, &bits("1")).unwrap();
        let t = tensor(&PureState::zeros(1), &one);
        assert_eq!(t, basis_state(2, &bits("01")).unwrap());

        let h0 = apply_gate(&PureState::zeros(1), Gate::H, &[0]).unwrap();
        let t = tensor(&h0, &PureState::zeros(1));
        let h = RingReal::inv_sqrt2();
        let z = RingReal::zero();
        assert_eq!(t, st(2, &[h.clone(), z.clone(), h, z]));

        let x = rot0();
        let t = tensor(&x, &x);
        assert_eq!(t, st(2, &[r(9, 25), r(12, 25), r(12, 25), r(16, 25)]));
        assert!(t.norm_sq().is_one());
    }

    #[test]
    fn fidelity_examples() {
        let z = PureState::zeros(1);
        assert!(fidelity(&z, &z).unwrap().is_one());
        assert_eq!(fidelity(&z, &rot0()).unwrap(), r(9, 25));
        // (|00⟩ + |11⟩)/√2 against |11⟩
        let h = RingReal::inv_sqrt2();
        let y = st(2, &[h.clone(), r(0, 1), r(0, 1), h]);
        let x = basis_state(2, &bits("11")).unwrap();
        assert_eq!(fidelity(&x, &y).unwrap(), r(1, 2));
        assert!(fidelity(&z, &x).is_err());
    }

    #[test]
    fn gate_examples() {
        let z = PureState::zeros(1);
        let s2 = apply_gate(&apply_gate(&z, Gate::S, &[0]).unwrap(), Gate::S, &[0]).unwrap();
        assert_eq!(s2, st(1, &[r(0, 1), r(-1, 1)]));
        let x = rot0();
        let hh = apply_gate(&apply_gate(&x, Gate::H, &[0]).unwrap(), Gate::H, &[0]).unwrap();
        assert_eq!(hh, x);
        let mut s = PureState::zeros(2);
        s.apply(Gate::H, &[0]).unwrap();
        s.apply(Gate::H, &[1]).unwrap();
        assert!(s.amps().iter().all(|a| *a == Amp::real(r(1, 2))));
    }

    #[test]
    fn gate_errors() {
        let mut s = PureState::zeros(2);
        assert!(matches!(
            s.apply(Gate::X, &[2]),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            s.apply(Gate::Cnot, &[1, 1]),
            Err(Error::RepeatedQubit(1))
        ));
        assert!(matches!(
            s.apply(Gate::Cnot, &[1]),
            Err(Error::GateArity { .. })
        ));
    }

    #[test]
    fn cnot_entangles() {
        let mut s = PureState::zeros(2);
        s.apply(Gate::H, &[0]).unwrap();
        s.apply(Gate::Cnot, &[0, 1]).unwrap();
        let h = RingReal::inv_sqrt2();
        assert_eq!(s, st(2, &[h.clone(), r(0, 1), r(0, 1), h]));
        assert_eq!(factor_prefix(&s, 1).unwrap(), None);
    }

    #[test]
    fn measurement_examples() {
        let z = PureState::zeros(1);
        let s = apply_gate(&z, Gate::S, &[0]).unwrap();
        assert_eq!(measure_probs(&s), vec![r(1, 2), r(1, 2)]);
        let s2 = apply_gate(&s, Gate::S, &[0]).unwrap();
        assert_eq!(measure_probs(&s2), vec![r(0, 1), r(1, 1)]);
        assert_eq!(measure_probs(&z), vec![r(1, 1), r(0, 1)]);
    }

    #[test]
    fn factor_examples() {
        let (a, b) = factor_prefix(&PureState::zeros(2), 1).unwrap().unwrap();
        assert_eq!((a, b), (PureState::zeros(1), PureState::zeros(1)));

        let h0 = apply_gate(&PureState::zeros(1), Gate::H, &[0]).unwrap();
        let one = basis_state(1, &bits("1")).unwrap();
        let (a, b) = factor_prefix(&tensor(&h0, &one), 1).unwrap().unwrap();
        assert!(a.same_ray(&h0) && b.same_ray(&one));
        assert_eq!(tensor(&a, &b), tensor(&h0, &one));

        assert!(factor_prefix(&PureState::zeros(2), 0).is_err());
        assert!(factor_prefix(&PureState::zeros(2), 2).is_err());
    }

    #[test]
    fn factor_with_complex_phase() {
        // (i|0⟩) ⊗ (−4/5, 3/5): the phase may land on either factor.
        let front = PureState::new(1, vec![Amp::i(), Amp::zero()]).unwrap();
        let back = st(1, &[r(-4, 5), r(3, 5)]);
        let t = tensor(&front, &back);
        let (a, b) = factor_prefix(&t, 1).unwrap().unwrap();
        assert_eq!(tensor(&a, &b), t);
    }

    #[test]
    fn new_rejects_unnormalized() {
        assert!(matches!(
            PureState::real(1, vec![r(1, 2), r(1, 2)]),
            Err(Error::NotNormalized)
        ));
        assert!(PureState::real(1, vec![r(1, 1)]).is_err());
    }

    #[test]
    fn display_uses_kets() {
        assert_eq!(rot0().to_string(), "3/5|0⟩ + 4/5|1⟩");
    }
}
