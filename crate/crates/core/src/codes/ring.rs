use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact element `a + b·√2` of the field Q(√2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingReal {
    a: BigRational,
    b: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl RingReal {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero())
    }

    /// The rational `n/d`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::new(BigRational::zero(), rat(1, 2))
    }

    /// `2^exp` for any integer exponent.
    pub fn pow2(exp: i64) -> Self {
        let p = BigInt::one() << exp.unsigned_abs();
        let q = if exp >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        };
        Self::from_rational(q)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² against 2b²; equality is impossible.
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * rat(2, 1);
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² − 2b²`.
    pub fn field_norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(2, 1)
    }

    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let nrm = self.field_norm();
        let c = self.conjugate();
        Some(Self::new(&c.a / &nrm, &c.b / &nrm))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.checked_recip().map(|r| self * &r)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact nonnegative square root when it lies in Q(√2).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Seek c + d√2 with c² + 2d² = a and 2cd = b.
        if self.b.is_zero() {
            if let Some(c) = rat_sqrt(&self.a) {
                return Some(Self::from_rational(c));
            }
            return rat_sqrt(&(&self.a / rat(2, 1))).map(|d| Self::new(BigRational::zero(), d));
        }
        let disc = rat_sqrt(&self.field_norm())?;
        for c2 in [(&self.a + &disc) / rat(2, 1), (&self.a - &disc) / rat(2, 1)] {
            let Some(c) = rat_sqrt(&c2) else { continue };
            if c.is_zero() {
                continue;
            }
            let d = &self.b / (&c * rat(2, 1));
            let cand = Self::new(c, d);
            let cand = cand.abs();
            if &cand * &cand == *self {
                return Some(cand);
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    /// Canonical literal `a/b+c/d*r2`, lowest terms, denominators positive.
    pub fn to_literal(&self) -> String {
        format!(
            "{}/{}+{}/{}*r2",
            self.a.numer(),
            self.a.denom(),
            self.b.numer(),
            self.b.denom()
        )
    }
}

fn sign_of(q: &BigRational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl Ord for RingReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for RingReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a RingReal> for &'a RingReal {
    type Output = RingReal;
    fn add(self, rhs: &RingReal) -> RingReal {
        RingReal::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a RingReal> for &'a RingReal {
    type Output = RingReal;
    fn sub(self, rhs: &RingReal) -> RingReal {
        RingReal::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a RingReal> for &'a RingReal {
    type Output = RingReal;
    fn mul(self, rhs: &RingReal) -> RingReal {
        if self.b.is_zero() && rhs.b.is_zero() {
            return RingReal::from_rational(&self.a * &rhs.a);
        }
        let a = &self.a * &rhs.a + &self.b * &rhs.b * rat(2, 1);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        RingReal::new(a, b)
    }
}

impl<'a> Div<&'a RingReal> for &'a RingReal {
    type Output = RingReal;
    /// Panics on division by zero; see [`RingReal::checked_div`].
    fn div(self, rhs: &RingReal) -> RingReal {
        self.checked_div(rhs).expect("division by zero in Q(√2)")
    }
}

impl Neg for &RingReal {
    type Output = RingReal;
    fn neg(self) -> RingReal {
        RingReal::new(-&self.a, -&self.b)
    }
}

impl Neg for RingReal {
    type Output = RingReal;
    fn neg(self) -> RingReal {
        RingReal::new(-self.a, -self.b)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RingReal> for RingReal {
            type Output = RingReal;
            fn $m(self, rhs: RingReal) -> RingReal { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RingReal> for RingReal {
            type Output = RingReal;
            fn $m(self, rhs: &RingReal) -> RingReal { (&self).$m(rhs) }
        }
        impl<'a> $tr<RingReal> for &'a RingReal {
            type Output = RingReal;
            fn $m(self, rhs: RingReal) -> RingReal { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for RingReal {
    fn sum<I: Iterator<Item = RingReal>>(iter: I) -> Self {
        iter.fold(RingReal::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for RingReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => write!(f, "{}+{}√2", self.a, self.b),
        }
    }
}

impl fmt::Debug for RingReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_literal())
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational, Error> {
    let bad = || Error::BadRingLiteral(whole.to_string());
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for RingReal {
    type Err = Error;

    /// Parses `a/b+c/d*r2`. Non-canonical input (e.g. `2/4`) is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_suffix("*r2")
            .ok_or_else(|| Error::BadRingLiteral(s.to_string()))?;
        // The separator is the first '+' after the first rational.
        let slash = body
            .find('/')
            .ok_or_else(|| Error::BadRingLiteral(s.to_string()))?;
        let plus = body[slash..]
            .find('+')
            .map(|i| i + slash)
            .ok_or_else(|| Error::BadRingLiteral(s.to_string()))?;
        let a = parse_rational(&body[..plus], s)?;
        let b = parse_rational(&body[plus + 1..], s)?;
        Ok(Self::new(a, b))
    }
}

impl Serialize for RingReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_literal())
    }
}

impl<'de> Deserialize<'de> for RingReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip_and_canonical_form() {
        let x = RingReal::frac(9, 25);
        assert_eq!(x.to_literal(), "9/25+0/1*r2");
        let y: RingReal = "2/4+-3/6*r2".parse().unwrap();
        assert_eq!(y.to_literal(), "1/2+-1/2*r2");
        assert_eq!(y.to_literal().parse::<RingReal>().unwrap(), y);
        assert!("1/2+1/0*r2".parse::<RingReal>().is_err());
        assert!("1/2".parse::<RingReal>().is_err());
        assert!("x/2+1/1*r2".parse::<RingReal>().is_err());
    }

    #[test]
    fn sign_with_mixed_parts() {
        // 3 − 2√2 ≈ 0.17 > 0, 1 − √2 < 0
        let p = RingReal::new(rat(3, 1), rat(-2, 1));
        assert_eq!(p.signum(), 1);
        let q = RingReal::new(rat(1, 1), rat(-1, 1));
        assert_eq!(q.signum(), -1);
        assert!(RingReal::inv_sqrt2() < RingReal::frac(3, 4));
        assert!(RingReal::inv_sqrt2() > RingReal::frac(7, 10));
    }

    #[test]
    fn field_operations() {
        let s = RingReal::inv_sqrt2();
        assert_eq!(&s * &s, RingReal::frac(1, 2));
        let x = RingReal::new(rat(1, 3), rat(2, 5));
        let inv = x.checked_recip().unwrap();
        assert!((&x * &inv).is_one());
        assert!(RingReal::zero().checked_recip().is_none());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(RingReal::frac(16, 25).sqrt(), Some(RingReal::frac(4, 5)));
        assert_eq!(RingReal::frac(1, 2).sqrt(), Some(RingReal::inv_sqrt2()));
        // (1 + √2)² = 3 + 2√2
        let v = RingReal::new(rat(3, 1), rat(2, 1));
        assert_eq!(v.sqrt(), Some(RingReal::new(rat(1, 1), rat(1, 1))));
        assert_eq!(RingReal::frac(3, 4).sqrt(), None);
        assert_eq!(RingReal::frac(-1, 4).sqrt(), None);
    }
}
