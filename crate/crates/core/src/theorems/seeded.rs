use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::RingReal;
use crate::error::Result;
use crate::qstate::{Amp, Gate, PureState};

/// A pseudo-random exact state: a short random circuit over R, H, S, X and
/// CNOT applied to `|0…0⟩`.
pub fn seeded_state(n: usize, seed: u64) -> Result<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = PureState::zeros(n);
    let depth = rng.gen_range(1..=6);
    for _ in 0..depth {
        let choice = rng.gen_range(0..if n > 1 { 5 } else { 4 });
        let q = rng.gen_range(0..n);
        match choice {
            0 => s.apply(Gate::R, &[q])?,
            1 => s.apply(Gate::H, &[q])?,
            2 => s.apply(Gate::S, &[q])?,
            3 => s.apply(Gate::X, &[q])?,
            _ => {
                let t = (q + rng.gen_range(1..n)) % n;
                s.apply(Gate::Cnot, &[q, t])?
            }
        }
    }
    Ok(s)
}

/// The columns of a product of `rotations` seeded Givens rotations, each
/// acting on a random pair of basis indices with entries from R or H.
pub fn seeded_basis(n: usize, seed: u64, rotations: usize) -> Result<Vec<PureState>> {
    let dim = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Amp>> = (0..dim)
        .map(|i| PureState::basis(n, i).amps().to_vec())
        .collect();
    for _ in 0..rotations {
        let i = rng.gen_range(0..dim);
        let j = (i + rng.gen_range(1..dim)) % dim;
        let (c, s) = if rng.gen_bool(0.25) {
            (RingReal::inv_sqrt2(), RingReal::inv_sqrt2())
        } else {
            (RingReal::frac(3, 5), RingReal::frac(4, 5))
        };
        let s = if rng.gen_bool(0.5) { -s } else { s };
        for col in cols.iter_mut() {
            let (a, b) = (col[i].clone(), col[j].clone());
            col[i] = &a.scale(&c) - &b.scale(&s);
            col[j] = &a.scale(&s) + &b.scale(&c);
        }
    }
    cols.into_iter().map(|a| PureState::new(n, a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{check_orthonormal, Ray};

    #[test]
    fn bases_are_orthonormal() {
        for seed in 0..10 {
            let b = seeded_basis(2, seed, 6).unwrap();
            let rays: Vec<Ray> = b.iter().map(Ray::from).collect();
            check_orthonormal(&rays).unwrap();
        }
    }

    #[test]
    fn states_are_reproducible() {
        assert_eq!(seeded_state(2, 7).unwrap(), seeded_state(2, 7).unwrap());
        assert_eq!(seeded_state(1, 3).unwrap().qubits(), 1);
    }
}
