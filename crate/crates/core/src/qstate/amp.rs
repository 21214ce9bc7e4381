use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::codes::RingReal;

/// A complex amplitude with real and imaginary parts in Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[RingReal; 2]", from = "[RingReal; 2]")]
pub struct Amp {
    pub re: RingReal,
    pub im: RingReal,
}

impl Amp {
    pub fn new(re: RingReal, im: RingReal) -> Self {
        Self { re, im }
    }

    pub fn real(re: RingReal) -> Self {
        Self::new(re, RingReal::zero())
    }

    pub fn zero() -> Self {
        Self::real(RingReal::zero())
    }

    pub fn one() -> Self {
        Self::real(RingReal::one())
    }

    pub fn i() -> Self {
        Self::new(RingReal::zero(), RingReal::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`.
    pub fn norm_sq(&self) -> RingReal {
        if self.im.is_zero() {
            return self.re.square();
        }
        self.re.square() + self.im.square()
    }

    pub fn scale(&self, k: &RingReal) -> Self {
        if self.im.is_zero() {
            return Self::real(&self.re * k);
        }
        Self::new(&self.re * k, &self.im * k)
    }

    /// `self / rhs`; `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Amp) -> Option<Amp> {
        let d = rhs.norm_sq().checked_recip()?;
        Some((self * &rhs.conj()).scale(&d))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl From<Amp> for [RingReal; 2] {
    fn from(a: Amp) -> Self {
        [a.re, a.im]
    }
}

impl From<[RingReal; 2]> for Amp {
    fn from([re, im]: [RingReal; 2]) -> Self {
        Amp::new(re, im)
    }
}

impl From<RingReal> for Amp {
    fn from(re: RingReal) -> Self {
        Amp::real(re)
    }
}

impl<'a> Add<&'a Amp> for &'a Amp {
    type Output = Amp;
    fn add(self, rhs: &Amp) -> Amp {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        Amp::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Amp> for &'a Amp {
    type Output = Amp;
    fn sub(self, rhs: &Amp) -> Amp {
        if rhs.is_zero() {
            return self.clone();
        }
        Amp::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Amp> for &'a Amp {
    type Output = Amp;
    fn mul(self, rhs: &Amp) -> Amp {
        if self.is_zero() || rhs.is_zero() {
            return Amp::zero();
        }
        if self.im.is_zero() && rhs.im.is_zero() {
            return Amp::real(&self.re * &rhs.re);
        }
        Amp::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Amp {
    type Output = Amp;
    fn neg(self) -> Amp {
        Amp::new(-&self.re, -&self.im)
    }
}

impl Add for Amp {
    type Output = Amp;
    fn add(self, rhs: Amp) -> Amp {
        &self + &rhs
    }
}

impl Sub for Amp {
    type Output = Amp;
    fn sub(self, rhs: Amp) -> Amp {
        &self - &rhs
    }
}

impl Mul for Amp {
    type Output = Amp;
    fn mul(self, rhs: Amp) -> Amp {
        &self * &rhs
    }
}

impl fmt::Debug for Amp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}, {}i)", self.re, self.im)
        }
    }
}

impl fmt::Display for Amp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
