//! Connection sets built from unions of cyclotomic classes, the hypothesis
//! checkers that decide when they give two-valued spectra, and the exact
//! values those spectra are predicted to take.

mod cases;
mod conditions;
mod scan;
mod sets;

pub use cases::{
    case_analysis_a, case_analysis_b, predicted_spectrum_a, predicted_values_b, sweep_cases_a, sweep_cases_b,
    CaseLabel, CaseSweep, SpectrumCase, SrgPrediction,
};
pub use conditions::{check_conditions_a, check_conditions_b, Condition, ConditionReport};
pub use scan::{scan_a, scan_b, ScanRowA, ScanRowB};
pub use sets::{
    build_d_a, build_d_b, build_scheme_relations, index_set_a, index_set_b, j_set, scheme_index_sets,
    ConnectionSet, Coset,
};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{
    big_pow, class_number, euler_phi, is_prime, mult_order, pow_mod, solve_norm_equation, ArithError, NormMode,
};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("conditions fail: {}", .0.join("; "))]
    ConditionViolation(Vec<String>),
    #[error("setup does not match the parameters: {0}")]
    SetupMismatch(String),
    #[error("inexact division: {0}")]
    NonIntegral(String),
    #[error("connection set has {actual} elements, expected {expected}")]
    SizeInvariantViolation { expected: u64, actual: u64 },
    #[error("relations do not partition the nonzero elements: {0}")]
    PartitionViolation(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Which family of index-2 parameters: `N = p1^m p2^n` or `N = 2 p1^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    TwoPrimes,
    TwoP1m,
}

/// Parameters of an index-2 instance together with the derived `N`, `f`,
/// class number `h` and normalized solution `(b, c)` of `4p^h = b^2 + D c^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexTwoParams {
    pub kind: ParamKind,
    pub p: u64,
    pub p1: u64,
    pub p2: Option<u64>,
    pub m: u32,
    pub n: Option<u32>,
    #[serde(rename = "N")]
    pub classes: u64,
    pub f: u64,
    pub h: u64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub b: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub c: BigInt,
}

fn checked_prime_power(base: u64, e: u32) -> Result<u64, ConstructionError> {
    base.checked_pow(e).ok_or(ConstructionError::Arith(ArithError::Overflow("prime power")))
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Hypothesis(msg()))
    }
}

/// `f = ord_N(p)` when `<p>` has index 2 in `Z_N^*` and misses `-1`.
fn index_two_order(p: u64, big_n: u64) -> Result<u64, ConstructionError> {
    let ord = mult_order(p, big_n)?;
    let phi = euler_phi(big_n);
    require(2 * ord == phi, || format!("[Z_{big_n}^* : <{p}>] = {} instead of 2", phi / ord))?;
    require(ord % 2 == 1 || pow_mod(p, ord / 2, big_n) != big_n - 1, || {
        format!("-1 lies in <{p}> modulo {big_n}")
    })?;
    Ok(ord)
}

impl IndexTwoParams {
    /// `N = p1^m p2^n` with `p1 = 1 (mod 4)`, `p2 = 3 (mod 4)`, `p` primitive
    /// modulo both prime powers and of index 2 modulo `N`.
    pub fn two_primes(p: u64, p1: u64, p2: u64, m: u32, n: u32) -> Result<Self, ConstructionError> {
        require(is_prime(p) && is_prime(p1) && is_prime(p2), || format!("{p}, {p1}, {p2} must be prime"))?;
        require(p != p1 && p != p2 && p1 != p2, || "p, p1, p2 must be distinct".into())?;
        require(m >= 1 && n >= 1, || "m and n must be positive".into())?;
        require(p1 % 4 == 1 && p2 % 4 == 3, || format!("need p1 = 1, p2 = 3 (mod 4); got {p1}, {p2}"))?;
        let pm = checked_prime_power(p1, m)?;
        let pn = checked_prime_power(p2, n)?;
        let classes = pm.checked_mul(pn).ok_or(ArithError::Overflow("N"))?;
        require(mult_order(p, pm)? == euler_phi(pm), || format!("{p} is not primitive modulo {pm}"))?;
        require(mult_order(p, pn)? == euler_phi(pn), || format!("{p} is not primitive modulo {pn}"))?;
        let f = index_two_order(p, classes)?;
        let d = p1 * p2;
        let h = class_number(d)?;
        let sol = solve_norm_equation(p, h, d, NormMode::TwoPrimes, f)?;
        Ok(IndexTwoParams {
            kind: ParamKind::TwoPrimes,
            p,
            p1,
            p2: Some(p2),
            m,
            n: Some(n),
            classes,
            f,
            h,
            b: sol.b,
            c: sol.c,
        })
    }

    /// `N = 2 p1^m` with `p1 = 3 (mod 4)`, `p1 > 3` and `p` of index 2 modulo `N`.
    pub fn one_prime(p: u64, p1: u64, m: u32) -> Result<Self, ConstructionError> {
        require(is_prime(p) && is_prime(p1), || format!("{p} and {p1} must be prime"))?;
        require(p != p1 && p != 2, || "p must be odd and differ from p1".into())?;
        require(m >= 1, || "m must be positive".into())?;
        require(p1 % 4 == 3 && p1 > 3, || format!("need p1 = 3 (mod 4), p1 > 3; got {p1}"))?;
        let classes = checked_prime_power(p1, m)?.checked_mul(2).ok_or(ArithError::Overflow("N"))?;
        let f = index_two_order(p, classes)?;
        let h = class_number(p1)?;
        let sol = solve_norm_equation(p, h, p1, NormMode::OnePrime, f)?;
        Ok(IndexTwoParams {
            kind: ParamKind::TwoP1m,
            p,
            p1,
            p2: None,
            m,
            n: None,
            classes,
            f,
            h,
            b: sol.b,
            c: sol.c,
        })
    }

    pub fn with_c(&self, c: BigInt) -> Self {
        IndexTwoParams { c, ..self.clone() }
    }

    /// `p1 p2` or `p1`, the `D` of `Q(sqrt(-D))`.
    pub fn radicand(&self) -> u64 {
        self.p1 * self.p2.unwrap_or(1)
    }

    pub fn q(&self) -> BigInt {
        big_pow(self.p, self.f)
    }

    /// `q` as a machine integer when it is small enough to materialize.
    pub fn q_small(&self) -> Option<u64> {
        u32::try_from(self.f).ok().and_then(|f| self.p.checked_pow(f))
    }

    pub fn f_u32(&self) -> Option<u32> {
        u32::try_from(self.f).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn de_lange_params() {
        let params = IndexTwoParams::two_primes(2, 5, 3, 1, 2).unwrap();
        assert_eq!((params.classes, params.f, params.h), (45, 12, 2));
        assert_eq!((params.b.clone(), params.c.clone()), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(params.radicand(), 15);
        assert_eq!(params.q_small(), Some(4096));
    }

    #[test]
    fn one_prime_params() {
        let params = IndexTwoParams::one_prime(3, 11, 1).unwrap();
        assert_eq!((params.classes, params.f, params.h), (22, 5, 1));
        assert_eq!(params.b, BigInt::from(1));
        assert!(matches!(IndexTwoParams::one_prime(3, 11, 2), Err(ConstructionError::Hypothesis(_))));
        assert!(IndexTwoParams::one_prime(3, 7, 1).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(IndexTwoParams::two_primes(2, 3, 5, 1, 1).is_err());
        assert!(IndexTwoParams::two_primes(4, 5, 3, 1, 1).is_err());
        assert!(IndexTwoParams::two_primes(2, 5, 3, 0, 1).is_err());
        // 3 has order 3 modulo 13
        assert!(IndexTwoParams::two_primes(3, 13, 7, 1, 1).is_err());
    }
}
