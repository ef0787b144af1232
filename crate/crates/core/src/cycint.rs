//! Exact elements of `Z[zeta_p]` and the exact values reported to users.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::legendre;

/// `sum_t n_t zeta_p^t`, stored with `min_t n_t = 0`.
///
/// `1 + zeta + ... + zeta^(p-1) = 0` is the only relation among the powers,
/// so two values are equal exactly when their canonical vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycIntValue {
    coeffs: Vec<i64>,
}

impl CycIntValue {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "Z[zeta_p] needs p >= 2 coefficients");
        let min = *coeffs.iter().min().unwrap();
        coeffs.iter_mut().for_each(|c| *c -= min);
        CycIntValue { coeffs }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_coeffs(counts.iter().map(|&c| c as i64).collect())
    }

    pub fn integer(p: u32, n: i64) -> Self {
        let mut coeffs = vec![0; p as usize];
        coeffs[0] = n;
        Self::from_coeffs(coeffs)
    }

    pub fn zero(p: u32) -> Self {
        Self::integer(p, 0)
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == self.coeffs[1])
    }

    pub fn rational_value(&self) -> Option<i64> {
        self.is_rational().then(|| self.coeffs[0] - self.coeffs[1])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p(), other.p());
        Self::from_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.coeffs.len();
        assert_eq!(p, other.coeffs.len());
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn to_complex(&self) -> Complex64 {
        let p = self.coeffs.len() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(t, &n)| Complex64::from_polar(n as f64, std::f64::consts::TAU * t as f64 / p))
            .sum()
    }

    /// Writes the value as `(u + w*g)/2` with `g` the quadratic Gauss sum
    /// of `Z_p`, when it lies in `Q(sqrt(p*))`.
    pub fn as_quadratic(&self) -> Option<(i64, i64)> {
        let p = self.p() as u64;
        if p == 2 {
            return Some((2 * (self.coeffs[0] - self.coeffs[1]), 0));
        }
        let mut residue = None;
        let mut nonresidue = None;
        for t in 1..p {
            let slot = if legendre(t as i64, p) == 1 { &mut residue } else { &mut nonresidue };
            let c = self.coeffs[t as usize];
            match *slot {
                None => *slot = Some(c),
                Some(prev) if prev != c => return None,
                _ => {}
            }
        }
        let (alpha, beta) = (residue?, nonresidue?);
        // sum over residues of zeta^t = (g - 1)/2, over non-residues (-g - 1)/2
        Some((2 * self.coeffs[0] - alpha - beta, alpha - beta))
    }

    pub fn exact(&self) -> ExactValue {
        if let Some(n) = self.rational_value() {
            return ExactValue::Integer(BigInt::from(n));
        }
        match self.as_quadratic() {
            Some((u, w)) => ExactValue::Quadratic {
                u: BigInt::from(u),
                w: BigInt::from(w),
                radicand: BigInt::from(p_star(self.p())),
            },
            None => ExactValue::Cyclotomic { coeffs: self.coeffs.clone() },
        }
    }
}

/// `p* = (-1)^((p-1)/2) p`.
pub fn p_star(p: u32) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

/// `g = sum_t (t/p) zeta_p^t`, the square root of `p*` in `Z[zeta_p]`.
pub fn quadratic_gauss_sum(p: u32) -> CycIntValue {
    assert!(p > 2, "quadratic Gauss sum needs an odd prime");
    let coeffs = (0..p as u64).map(|t| legendre(t as i64, p as u64) as i64).collect();
    CycIntValue::from_coeffs(coeffs)
}

/// The two values `2x` for `x = (-1 +- sqrt(sign * p^f))/2`, when the root
/// lies in `Z[zeta_p]`. `sign` is `1` or `-1`.
pub fn conference_pair(p: u32, f: u32, sign: i64) -> Option<[CycIntValue; 2]> {
    if p == 2 {
        return None;
    }
    let minus_one = CycIntValue::integer(p, -1);
    let root = if f % 2 == 0 {
        if sign < 0 {
            return None;
        }
        CycIntValue::integer(p, (p as i64).checked_pow(f / 2)?)
    } else {
        if sign * p_star(p) < 0 {
            return None;
        }
        quadratic_gauss_sum(p).scale((p as i64).checked_pow((f - 1) / 2)?)
    };
    Some([minus_one.add(&root), minus_one.sub(&root)])
}

/// An exact algebraic value as rendered in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Integer(BigInt),
    /// `(u + w sqrt(radicand)) / 2`
    Quadratic { u: BigInt, w: BigInt, radicand: BigInt },
    /// Coefficients over `1, zeta_p, ..., zeta_p^(p-1)`.
    Cyclotomic { coeffs: Vec<i64> },
}

impl ExactValue {
    /// `2 * self` as an element of `Z[zeta_p]`, when it lies there.
    pub fn doubled(&self, p: u32) -> Option<CycIntValue> {
        use num_traits::ToPrimitive;
        match self {
            ExactValue::Integer(n) => Some(CycIntValue::integer(p, n.to_i64()?.checked_mul(2)?)),
            ExactValue::Quadratic { u, w, radicand } => {
                let base = CycIntValue::integer(p, u.to_i64()?);
                if w.is_zero() {
                    return Some(base);
                }
                if p == 2 || radicand.to_i64()? != p_star(p) {
                    return None;
                }
                Some(base.add(&quadratic_gauss_sum(p).scale(w.to_i64()?)))
            }
            ExactValue::Cyclotomic { coeffs } if coeffs.len() == p as usize => {
                Some(CycIntValue::from_coeffs(coeffs.clone()).scale(2))
            }
            ExactValue::Cyclotomic { .. } => None,
        }
    }

    /// Exact equality with an element of `Z[zeta_p]`.
    pub fn matches(&self, v: &CycIntValue) -> bool {
        self.doubled(v.p()).is_some_and(|d| d == v.scale(2))
    }

    pub fn to_complex(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        match self {
            ExactValue::Integer(n) => Complex64::new(n.to_f64().unwrap(), 0.0),
            ExactValue::Quadratic { u, w, radicand } => {
                let r = radicand.to_f64().unwrap();
                let root = if r >= 0.0 {
                    Complex64::new(r.sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, (-r).sqrt())
                };
                (Complex64::new(u.to_f64().unwrap(), 0.0) + root * w.to_f64().unwrap()) / 2.0
            }
            ExactValue::Cyclotomic { coeffs } => CycIntValue { coeffs: coeffs.clone() }.to_complex(),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Integer(n) => write!(out, "{n}"),
            ExactValue::Quadratic { u, w, radicand } => {
                if w.is_zero() {
                    return write!(out, "({u})/2");
                }
                let sign = if w.is_negative() { '-' } else { '+' };
                let inner = w * w * radicand;
                if u.is_zero() {
                    let lead = if w.is_negative() { "-" } else { "" };
                    write!(out, "{lead}sqrt({inner})/2")
                } else {
                    write!(out, "({u}{sign}sqrt({inner}))/2")
                }
            }
            ExactValue::Cyclotomic { coeffs } => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(out, "cyc{}[{}]", coeffs.len(), parts.join(","))
            }
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_unique() {
        let a = CycIntValue::from_coeffs(vec![3, 1, 1]);
        let b = CycIntValue::from_coeffs(vec![2, 0, 0]);
        assert_eq!(a, b);
        assert_eq!(a.rational_value(), Some(2));
        // 1 + zeta + zeta^2 = 0
        assert_eq!(CycIntValue::from_coeffs(vec![1, 1, 1]), CycIntValue::zero(3));
    }

    #[test]
    fn binary_values_are_integers() {
        let v = CycIntValue::from_counts(&[7, 8]);
        assert!(v.is_rational());
        assert_eq!(v.rational_value(), Some(-1));
    }

    #[test]
    fn gauss_sum_squares_to_p_star() {
        for p in [3u32, 5, 7, 11, 13] {
            let g = quadratic_gauss_sum(p);
            assert_eq!(g.mul(&g), CycIntValue::integer(p, p_star(p)), "p = {p}");
            assert_eq!(g.as_quadratic(), Some((0, 2)));
            let z = g.to_complex();
            let expected = if p % 4 == 1 {
                Complex64::new((p as f64).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, (p as f64).sqrt())
            };
            assert!((z - expected).norm() < 1e-9, "principal branch for p = {p}");
        }
    }

    #[test]
    fn rendering() {
        let g = quadratic_gauss_sum(3);
        let v = g.scale(9).sub(&CycIntValue::integer(3, 1));
        // 2 * ((-1 + 9 sqrt(-3))/2)
        assert_eq!(v.exact().to_string(), "(-2+sqrt(-972))/2");
        assert_eq!(
            ExactValue::Quadratic { u: (-1).into(), w: 9.into(), radicand: (-3).into() }.to_string(),
            "(-1+sqrt(-243))/2"
        );
        assert_eq!(CycIntValue::integer(5, 17).exact().to_string(), "17");
    }

    #[test]
    fn exact_matching() {
        let g = quadratic_gauss_sum(3);
        let x = g.scale(9).sub(&CycIntValue::integer(3, 1));
        // x = 9g - 1 = (-2 + 18 sqrt(-3))/2
        let e = ExactValue::Quadratic { u: (-2).into(), w: 18.into(), radicand: (-3).into() };
        assert!(e.matches(&x));
        assert!(!e.matches(&CycIntValue::integer(3, -1)));
        assert!(ExactValue::Integer(17.into()).matches(&CycIntValue::integer(2, 17)));
        assert!(!ExactValue::Quadratic { u: 0.into(), w: 1.into(), radicand: 3.into() }.matches(&x));
    }

    #[test]
    fn conference_pairs() {
        let [plus, minus] = conference_pair(3, 5, -1).unwrap();
        assert_eq!(plus.as_quadratic(), Some((-2, 18)));
        assert_eq!(minus.as_quadratic(), Some((-2, -18)));
        assert!(conference_pair(3, 5, 1).is_none());
        let [plus, _] = conference_pair(13, 1, 1).unwrap();
        assert!((plus.to_complex().re - (-1.0 + 13f64.sqrt())).abs() < 1e-9);
        let [plus, minus] = conference_pair(3, 2, 1).unwrap();
        assert_eq!((plus.rational_value(), minus.rational_value()), (Some(2), Some(-4)));
        assert!(conference_pair(2, 3, 1).is_none());
    }
}
