//! Self-delimiting codes, pairing, Kraft sums and Shannon–Fano code lengths.
//!
//! `x̄ = 1x₁x₁x₂x₂…xₙ¬xₙ` (with `ε̄ = 0`) doubles every bit and flags the last
//! one by negation; `x′ = bar(numeral(l(x))) x` prefixes the payload with its
//! length. Both are decodable left to right without reading past the code
//! word.

mod bits;
mod ring;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use bits::{BitReader, BitString};
pub use ring::RingReal;

use crate::error::{Error, Result};

/// A code length or complexity value that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn plus(self, extra: u64) -> Cost {
        match self {
            Cost::Finite(v) => Cost::Finite(v + extra),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cost::Finite(v) => s.serialize_u64(*v),
            Cost::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Cost::Finite(v)),
            Raw::S(s) if s == "inf" => Ok(Cost::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad cost {s:?}"))),
        }
    }
}

pub fn encode_bar(x: &BitString) -> BitString {
    let n = x.len();
    let mut out = BitString::empty();
    if n == 0 {
        out.push(false);
        return out;
    }
    out.push(true);
    for (i, &b) in x.bits().iter().enumerate() {
        out.push(b);
        out.push(if i + 1 == n { !b } else { b });
    }
    out
}

/// Reads one bar-coded word, consuming exactly its bits.
pub fn decode_bar(r: &mut BitReader<'_>) -> Option<BitString> {
    if !r.read()? {
        return Some(BitString::empty());
    }
    let mut out = BitString::empty();
    loop {
        let b = r.read()?;
        let c = r.read()?;
        out.push(b);
        if b != c {
            return Some(out);
        }
    }
}

pub fn encode_prime(x: &BitString) -> BitString {
    let mut out = encode_bar(&BitString::numeral(x.len() as u64));
    out.extend_from(x);
    out
}

pub fn decode_prime(r: &mut BitReader<'_>) -> Option<BitString> {
    let numeral = decode_bar(r)?;
    let len = numeral.index()?;
    r.read_n(usize::try_from(len).ok()?)
}

/// `⟨x, y⟩ = x′y′`.
pub fn pair(x: &BitString, y: &BitString) -> BitString {
    encode_prime(x).concat(&encode_prime(y))
}

pub fn unpair(r: &mut BitReader<'_>) -> Option<(BitString, BitString)> {
    let x = decode_prime(r)?;
    let y = decode_prime(r)?;
    Some((x, y))
}

/// Decodes a whole word, rejecting leftover bits.
pub fn decode_exact<T>(
    bits: &BitString,
    f: impl FnOnce(&mut BitReader<'_>) -> Option<T>,
) -> Option<T> {
    let mut r = BitReader::new(bits);
    let v = f(&mut r)?;
    (r.remaining() == 0).then_some(v)
}

/// `Σ 2^(−lᵢ)`, exactly.
pub fn kraft_sum(lengths: &[u64]) -> BigRational {
    lengths.iter().fold(BigRational::zero(), |acc, &l| {
        acc + BigRational::new(BigInt::one(), BigInt::one() << l)
    })
}

/// Least `t ≥ 0` with `f ≥ 2^(−t)`, by exact comparison. `f = 0` is
/// [`Cost::Infinite`].
pub fn ceil_neg_log2(f: &RingReal) -> Result<Cost> {
    if f.is_negative() || *f > RingReal::one() {
        return Err(Error::InvalidFidelity(f.to_literal()));
    }
    if f.is_zero() {
        return Ok(Cost::Infinite);
    }
    let guess = -f.to_f64().log2();
    let mut t: i64 = if guess.is_finite() {
        guess.ceil().max(0.0) as i64
    } else {
        // Below f64 range: start from a safe overshoot and walk down.
        let bits = f.rational_part().denom().bits() + f.sqrt2_part().denom().bits();
        bits as i64 + 2
    };
    while t > 0 && *f >= RingReal::pow2(-(t - 1)) {
        t -= 1;
    }
    while *f < RingReal::pow2(-t) {
        t += 1;
    }
    Ok(Cost::Finite(t as u64))
}

/// Shannon–Fano lengths `⌈−log pᵢ⌉`; zero-probability entries get
/// [`Cost::Infinite`].
pub fn shannon_fano_lengths(probs: &[RingReal]) -> Result<Vec<Cost>> {
    for p in probs {
        if p.is_negative() || *p > RingReal::one() {
            return Err(Error::InvalidProbability(p.to_literal()));
        }
    }
    let total: RingReal = probs.iter().cloned().sum();
    if total > RingReal::one() {
        return Err(Error::ProbabilityMass(total.to_literal()));
    }
    probs.iter().map(ceil_neg_log2).collect()
}

/// Kraft sum over a list of possibly infinite lengths; infinite ones add 0.
pub fn kraft_sum_costs(lengths: &[Cost]) -> BigRational {
    let finite: Vec<u64> = lengths.iter().filter_map(|c| c.finite()).collect();
    kraft_sum(&finite)
}
