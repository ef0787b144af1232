//! Integers of `Q(sqrt(-d))` for `d = 3 (mod 4)`, written `(x + y sqrt(-d))/2`
//! with `x = y (mod 2)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfQuad {
    pub x: BigInt,
    pub y: BigInt,
    pub d: u64,
}

impl HalfQuad {
    pub fn new(x: BigInt, y: BigInt, d: u64) -> Self {
        assert_eq!(d % 4, 3, "(x + y sqrt(-d))/2 is integral only for d = 3 mod 4");
        assert!(x.is_even() == y.is_even(), "x and y must share parity");
        HalfQuad { x, y, d }
    }

    pub fn one(d: u64) -> Self {
        HalfQuad::new(BigInt::from(2), BigInt::zero(), d)
    }

    pub fn mul(&self, other: &HalfQuad) -> HalfQuad {
        assert_eq!(self.d, other.d);
        let d = BigInt::from(self.d);
        let x = &self.x * &other.x - &d * &self.y * &other.y;
        let y = &self.x * &other.y + &other.x * &self.y;
        // both numerators are even because x = y (mod 2) and d = 3 (mod 4)
        HalfQuad::new(x / 2, y / 2, self.d)
    }

    pub fn pow(&self, mut e: u64) -> HalfQuad {
        let mut result = HalfQuad::one(self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn conj(&self) -> HalfQuad {
        HalfQuad { x: self.x.clone(), y: -self.y.clone(), d: self.d }
    }

    /// `(x^2 + d y^2) / 4`
    pub fn norm(&self) -> BigInt {
        (&self.x * &self.x + BigInt::from(self.d) * &self.y * &self.y) / 4
    }

    pub fn is_one(&self) -> bool {
        self.x == BigInt::from(2) && self.y.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let re = self.x.to_f64().unwrap() / 2.0;
        let im = self.y.to_f64().unwrap() * (self.d as f64).sqrt() / 2.0;
        Complex64::new(re, im)
    }
}

impl fmt::Display for HalfQuad {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(out, "{}", &self.x / 2);
        }
        let sign = if self.y < BigInt::zero() { '-' } else { '+' };
        let abs_y = if self.y < BigInt::zero() { -self.y.clone() } else { self.y.clone() };
        if abs_y.is_one() {
            write!(out, "({}{}sqrt(-{}))/2", self.x, sign, self.d)
        } else {
            write!(out, "({}{}{}*sqrt(-{}))/2", self.x, sign, abs_y, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_and_norms() {
        let z = HalfQuad::new(1.into(), 1.into(), 11);
        let sq = z.pow(2);
        // ((1 + sqrt(-11))/2)^2 = (-5 + sqrt(-11))/2
        assert_eq!((sq.x.clone(), sq.y.clone()), (BigInt::from(-5), BigInt::from(1)));
        assert_eq!(z.norm(), BigInt::from(3));
        assert_eq!(sq.norm(), BigInt::from(9));
        let big = HalfQuad::new(1.into(), 1.into(), 15).pow(5);
        assert_eq!(big.norm(), BigInt::from(4u32.pow(5)));
        let c = (big.to_complex() - HalfQuad::new(1.into(), 1.into(), 15).to_complex().powu(5)).norm();
        assert!(c < 1e-9);
    }

    #[test]
    fn display() {
        assert_eq!(HalfQuad::new(1.into(), (-1).into(), 15).to_string(), "(1-sqrt(-15))/2");
        assert_eq!(HalfQuad::new(4.into(), 0.into(), 15).to_string(), "2");
    }
}
