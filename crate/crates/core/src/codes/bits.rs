use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A finite binary string.
///
/// Strings are identified with the naturals through the length-increasing
/// numbering `0 ↔ ε, 1 ↔ "0", 2 ↔ "1", 3 ↔ "00", …`; [`BitString::from_index`]
/// and [`BitString::index`] implement that bijection. The derived order of
/// indices is the length-lexicographic order used for canonical enumeration.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The `n`-bit binary rendering of `value`, most significant bit first.
    pub fn from_uint(value: u64, n: usize) -> Self {
        let bits = (0..n)
            .rev()
            .map(|i| i < 64 && (value >> i) & 1 == 1)
            .collect();
        Self { bits }
    }

    /// The string with number `index` in the length-increasing numbering.
    pub fn from_index(index: u128) -> Self {
        // index + 1 in binary, leading one dropped.
        let v = index + 1;
        let width = 127 - v.leading_zeros() as usize;
        let bits = (0..width).rev().map(|i| (v >> i) & 1 == 1).collect();
        Self { bits }
    }

    /// Inverse of [`BitString::from_index`]. `None` past 126 bits.
    pub fn index(&self) -> Option<u128> {
        if self.bits.len() > 126 {
            return None;
        }
        let mut v: u128 = 1;
        for &b in &self.bits {
            v = (v << 1) | b as u128;
        }
        Some(v - 1)
    }

    /// The numeral of a natural under the length-increasing numbering.
    pub fn numeral(n: u64) -> Self {
        Self::from_index(n as u128)
    }

    /// Value of the string read as an unsigned binary number.
    pub fn to_uint(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn slice(&self, from: usize, to: usize) -> BitString {
        Self::from_bits(self.bits[from..to].to_vec())
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.bits.starts_with(&self.bits)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Every string of exactly `n` bits in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BitString> {
        assert!(n < 64, "too many bits to enumerate");
        (0..1u64 << n).map(move |v| BitString::from_uint(v, n))
    }
}

impl Ord for BitString {
    /// Length first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::BadBits(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads bits left to right; the decoders never look past what they need.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        Self {
            bits: bits.bits(),
            pos: 0,
        }
    }

    /// A reader positioned at bit `pos`.
    pub fn at(bits: &'a BitString, pos: usize) -> Self {
        Self {
            bits: bits.bits(),
            pos: pos.min(bits.len()),
        }
    }

    pub fn read(&mut self) -> Option<bool> {
        let b = self.bits.get(self.pos).copied()?;
        self.pos += 1;
        Some(b)
    }

    pub fn read_n(&mut self, n: usize) -> Option<BitString> {
        if self.remaining() < n {
            return None;
        }
        let out = BitString::from_bits(self.bits[self.pos..self.pos + n].to_vec());
        self.pos += n;
        Some(out)
    }

    pub fn read_uint(&mut self, n: usize) -> Option<u64> {
        if self.remaining() < n {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..n {
            v = (v << 1) | self.read()? as u64;
        }
        Some(v)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbering_matches_the_standard_list() {
        let expect = ["", "0", "1", "00", "01", "10", "11", "000"];
        for (i, s) in expect.iter().enumerate() {
            assert_eq!(BitString::from_index(i as u128).to_string(), *s);
            assert_eq!(s.parse::<BitString>().unwrap().index(), Some(i as u128));
        }
    }

    #[test]
    fn order_is_length_lexicographic() {
        let mut v: Vec<BitString> = ["1", "00", "0", "", "11"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        v.sort();
        let shown: Vec<String> = v.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, ["", "0", "1", "00", "11"]);
    }

    #[test]
    fn rejects_non_binary() {
        assert!("012".parse::<BitString>().is_err());
    }

    #[test]
    fn reader_stops_at_end() {
        let b: BitString = "101".parse().unwrap();
        let mut r = BitReader::new(&b);
        assert_eq!(r.read_uint(2), Some(2));
        assert_eq!(r.read_uint(2), None);
        assert_eq!(r.read(), Some(true));
        assert_eq!(r.read(), None);
    }
}
