use std::fmt;

use super::{inner_amps, Amp, PureState};
use crate::codes::RingReal;
use crate::error::{Error, Result};

/// A nonzero vector standing for the unit state `v/‖v‖`.
///
/// Gram–Schmidt over Q(√2) cannot always normalize (e.g. `‖v‖² = 3/4`), so
/// orthogonalized vectors carry their squared norm and fidelities divide by
/// it. Whenever the norm is exact the vector is normalized eagerly.
#[derive(Clone, PartialEq, Eq)]
pub struct Ray {
    n: usize,
    amps: Vec<Amp>,
    norm_sq: RingReal,
}

impl Ray {
    fn from_amps(n: usize, amps: Vec<Amp>) -> Option<Self> {
        let norm_sq: RingReal = amps.iter().map(Amp::norm_sq).sum();
        if norm_sq.is_zero() {
            return None;
        }
        if let Some(inv) = norm_sq.sqrt().and_then(|r| r.checked_recip()) {
            let amps = amps.iter().map(|a| a.scale(&inv)).collect();
            return Some(Self {
                n,
                amps,
                norm_sq: RingReal::one(),
            });
        }
        Some(Self { n, amps, norm_sq })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Amp] {
        &self.amps
    }

    pub fn norm_sq(&self) -> &RingReal {
        &self.norm_sq
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_sq.is_one()
    }

    /// The unit state, when the normalization is exact.
    pub fn state(&self) -> Option<PureState> {
        self.is_normalized()
            .then(|| PureState::from_parts_unchecked(self.n, self.amps.clone()))
    }

    /// `‖⟨self|z⟩‖²` for the unit state this ray stands for.
    pub fn fidelity(&self, z: &PureState) -> Result<RingReal> {
        if self.n != z.qubits() {
            return Err(Error::DimensionMismatch(self.n, z.qubits()));
        }
        let ip = inner_amps(&self.amps, z.amps()).norm_sq();
        Ok(if self.is_normalized() {
            ip
        } else {
            &ip / &self.norm_sq
        })
    }

    /// Raw inner product of the stored vectors.
    pub fn inner(&self, other: &Ray) -> Amp {
        inner_amps(&self.amps, &other.amps)
    }

    /// `v − Σⱼ (⟨eⱼ|v⟩/⟨eⱼ|eⱼ⟩) eⱼ`.
    fn residual(v: &[Amp], against: &[Ray]) -> Vec<Amp> {
        let mut w = v.to_vec();
        for e in against {
            let c = inner_amps(&e.amps, &w);
            if c.is_zero() {
                continue;
            }
            let c = if e.is_normalized() {
                c
            } else {
                c.scale(&e.norm_sq.checked_recip().expect("nonzero ray"))
            };
            for (wi, ei) in w.iter_mut().zip(&e.amps) {
                if !ei.is_zero() {
                    *wi = &*wi - &(&c * ei);
                }
            }
        }
        w
    }
}

impl From<&PureState> for Ray {
    fn from(s: &PureState) -> Self {
        Self {
            n: s.qubits(),
            amps: s.amps().to_vec(),
            norm_sq: RingReal::one(),
        }
    }
}

impl From<PureState> for Ray {
    fn from(s: PureState) -> Self {
        Ray::from(&s)
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_normalized() {
            f.debug_list().entries(self.amps.iter()).finish()
        } else {
            write!(f, "{:?}/√({})", self.amps, self.norm_sq)
        }
    }
}

/// Orthogonalizes `vectors` in order, dropping any that depend linearly on
/// earlier ones. Output rays are pairwise orthogonal exactly.
pub fn gram_schmidt(vectors: &[PureState]) -> Result<Vec<Ray>> {
    let mut out: Vec<Ray> = Vec::new();
    let Some(first) = vectors.first() else {
        return Ok(out);
    };
    let n = first.qubits();
    for v in vectors {
        if v.qubits() != n {
            return Err(Error::DimensionMismatch(n, v.qubits()));
        }
        let w = Ray::residual(v.amps(), &out);
        if let Some(r) = Ray::from_amps(n, w) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Exact check that the rays are pairwise orthogonal.
pub fn check_orthonormal(rays: &[Ray]) -> Result<()> {
    for (i, a) in rays.iter().enumerate() {
        if a.norm_sq.is_zero() {
            return Err(Error::NotOrthonormal);
        }
        for b in &rays[i + 1..] {
            if a.n != b.n {
                return Err(Error::DimensionMismatch(a.n, b.n));
            }
            if !a.inner(b).is_zero() {
                return Err(Error::NotOrthonormal);
            }
        }
    }
    Ok(())
}

/// Completes an orthonormal family to a basis of the `2ⁿ`-dimensional space
/// by orthogonalizing `|0…0⟩, |0…01⟩, …` in order and skipping those that
/// project to zero.
pub fn extend_to_basis(orthonormal: &[Ray], n: usize) -> Result<Vec<Ray>> {
    let dim = 1usize << n;
    if orthonormal.len() > dim {
        return Err(Error::TooManyVectors {
            got: orthonormal.len(),
            dim,
        });
    }
    if let Some(r) = orthonormal.iter().find(|r| r.n != n) {
        return Err(Error::DimensionMismatch(n, r.n));
    }
    check_orthonormal(orthonormal)?;
    let mut out = orthonormal.to_vec();
    for i in 0..dim {
        if out.len() == dim {
            break;
        }
        let e = PureState::basis(n, i);
        let w = Ray::residual(e.amps(), &out);
        if let Some(r) = Ray::from_amps(n, w) {
            out.push(r);
        }
    }
    debug_assert_eq!(out.len(), dim);
    Ok(out)
}
