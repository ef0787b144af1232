use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::sets::{index_set_a, index_set_b, Coset};
use super::{ConstructionError, IndexTwoParams, ParamKind};
use crate::arith::{big_pow, legendre};
use crate::cycint::{p_star, ExactValue};
use crate::cyclotomy::{char_sum, PeriodTable};

/// Parameters and restricted eigenvalues of a predicted strongly regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgPrediction {
    #[serde(serialize_with = "crate::serde_big::int")]
    pub v: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub k: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub lambda: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub mu: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub r: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub s: BigInt,
}

fn div_exact(num: BigInt, den: &BigInt, what: &str) -> Result<BigInt, ConstructionError> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(ConstructionError::NonIntegral(format!("{what}: {num} / {den}")))
    }
}

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// `r`, `s`, `k`, `lambda`, `mu` of the `N = p1^m p2^n` graph under the
/// strongly regular hypotheses.
pub fn predicted_spectrum_a(params: &IndexTwoParams) -> Result<SrgPrediction, ConstructionError> {
    if params.kind != ParamKind::TwoPrimes {
        return Err(ConstructionError::ConditionViolation(vec!["parameters are not of the p1^m p2^n kind".into()]));
    }
    let p2 = params.p2.unwrap();
    let mut failures = Vec::new();
    if params.h % 2 != 0 {
        failures.push(format!("h = {} is odd", params.h));
    }
    if !is_unit(&params.b) || !is_unit(&params.c) {
        failures.push(format!("(b, c) = ({}, {}) is not a unit pair", params.b, params.c));
    }
    if failures.is_empty() {
        let two_x = BigInt::from(2) * big_pow(params.p, params.h / 2);
        if BigInt::from(params.p1) != &two_x + &params.b || BigInt::from(p2) != &two_x - &params.b {
            failures.push(format!("p1, p2 differ from 2p^(h/2) +- b = {two_x} +- {}", params.b));
        }
    }
    if !failures.is_empty() {
        return Err(ConstructionError::ConditionViolation(failures));
    }

    let (p, f, h) = (params.p, params.f, params.h);
    let d = BigInt::from(params.radicand());
    let top = BigInt::from(2) * big_pow(p, (f + h) / 2);
    let low = big_pow(p, (f - h) / 2);
    let (r_num, s_num) = if params.b.is_positive() {
        (&top - 1, -&top + &low - 1)
    } else {
        (&top - &low - 1, -&top - 1)
    };
    let r = div_exact(r_num, &d, "r")?;
    let s = div_exact(s_num, &d, "s")?;
    let v = big_pow(p, f);
    let k = div_exact(&v - 1, &d, "k")?;
    let mu = &k + &r * &s;
    let lambda = &mu + &r + &s;
    Ok(SrgPrediction { v, k, lambda, mu, r, s })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::I => "(i)",
            CaseLabel::II => "(ii)",
            CaseLabel::III => "(iii)",
            CaseLabel::IV => "(iv)",
            CaseLabel::V => "(v)",
            CaseLabel::VI => "(vi)",
        };
        out.write_str(s)
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The case a class shift `a` falls into and the value predicted for
/// `psi(gamma^a D)` in that case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumCase {
    pub a: u64,
    pub i_a: u64,
    pub j_a: Option<u64>,
    pub delta_i: bool,
    pub delta_j: Option<bool>,
    pub label: CaseLabel,
    pub predicted: ExactValue,
}

/// `(a + step * i) / modulus` for the unique `0 <= i < modulus` making it integral.
fn lift(a: u64, step: u64, modulus: u64) -> u64 {
    (0..modulus)
        .map(|i| a + step * i)
        .find(|x| x % modulus == 0)
        .map(|x| x / modulus)
        .expect("step is invertible modulo the prime power")
}

/// Exact `psi(gamma^a D)` for the `N = p1^m p2^n` set, by the four-way case
/// split on whether `i_a` and `j_a` vanish modulo `p1` and `p2`.
pub fn case_analysis_a(params: &IndexTwoParams, a: u64) -> Result<SpectrumCase, ConstructionError> {
    if params.kind != ParamKind::TwoPrimes {
        return Err(ConstructionError::ConditionViolation(vec!["parameters are not of the p1^m p2^n kind".into()]));
    }
    let (p, p1, p2, m, n) = (params.p, params.p1, params.p2.unwrap(), params.m, params.n.unwrap());
    let a = a % params.classes;
    let i_a = lift(a, p2.pow(n), p1.pow(m - 1));
    let j_a = lift(a, p1.pow(m), p2.pow(n - 1));
    let delta_i = i_a % p1 == 0;
    let delta_j = j_a % p2 == 0;

    let big = |x: u64| BigInt::from(x);
    let full = big_pow(p, params.f / 2);
    let half = big_pow(p, (params.f - params.h) / 2);
    let b = &params.b;
    let (label, scaled) = match (delta_i, delta_j) {
        (false, false) => {
            let eta = legendre(i_a as i64, p1) as i64 * legendre(j_a as i64, p2) as i64;
            let inner = b - &params.c * big(p1 * p2) * eta;
            (CaseLabel::I, div_exact(&half * inner, &big(2), "S_a")?)
        }
        (false, true) => (CaseLabel::II, -big(p2) * &full - div_exact(&half * b * big(p2 - 1), &big(2), "S_a")?),
        (true, false) => (CaseLabel::III, big(p1) * &full - div_exact(&half * b * big(p1 - 1), &big(2), "S_a")?),
        (true, true) => (
            CaseLabel::IV,
            (big(p1) - big(p2)) * &full + div_exact(&half * b * big((p1 - 1) * (p2 - 1)), &big(2), "S_a")?,
        ),
    };
    let value = div_exact(scaled - 1, &big(p1 * p2), "psi(gamma^a D)")?;
    Ok(SpectrumCase {
        a,
        i_a,
        j_a: Some(j_a),
        delta_i,
        delta_j: Some(delta_j),
        label,
        predicted: ExactValue::Integer(value),
    })
}

fn powers_mod(p: u64, modulus: u64) -> BTreeSet<u64> {
    let mut set = BTreeSet::new();
    let mut x = 1 % modulus;
    while set.insert(x) {
        x = x * p % modulus;
    }
    set
}

/// `(-1)^((p-1)/2 * (f-1)/2) p^((f-1)/2)`, the coefficient of `sqrt(p*)` in
/// the Gauss sum of the order-2 character restricted to `F_q`.
fn half_root_coefficient(params: &IndexTwoParams) -> BigInt {
    let scale = big_pow(params.p, (params.f - 1) / 2);
    if ((params.p - 1) / 2 * ((params.f - 1) / 2)) % 2 == 1 {
        -scale
    } else {
        scale
    }
}

/// Exact `psi(gamma^a D)` for the `N = 2 p1^m` set, by the six-way split on
/// where `i_a` falls modulo `2 p1`.
pub fn case_analysis_b(params: &IndexTwoParams, a: u64) -> Result<SpectrumCase, ConstructionError> {
    if params.kind != ParamKind::TwoP1m {
        return Err(ConstructionError::ConditionViolation(vec!["parameters are not of the 2 p1^m kind".into()]));
    }
    if params.f % 2 == 0 {
        return Err(ConstructionError::ConditionViolation(vec![format!("f = {} is even", params.f)]));
    }
    let (p, p1) = (params.p, params.p1);
    let a = a % params.classes;
    let i_a = lift(a, 2, p1.pow(params.m - 1));
    let modulus = 2 * p1;
    let residue = i_a % modulus;
    let powers = powers_mod(p, modulus);
    let neg = |x: u64| (modulus - x) % modulus;
    let label = if residue == 0 {
        CaseLabel::I
    } else if residue == p1 {
        CaseLabel::II
    } else if powers.contains(&residue) {
        CaseLabel::III
    } else if powers.contains(&neg(residue)) {
        CaseLabel::IV
    } else if powers.iter().any(|&x| 2 * x % modulus == residue) {
        CaseLabel::V
    } else {
        CaseLabel::VI
    };
    let sigma = matches!(label, CaseLabel::I | CaseLabel::III | CaseLabel::V);
    let w = half_root_coefficient(params);
    Ok(SpectrumCase {
        a,
        i_a,
        j_a: None,
        delta_i: i_a % p1 == 0,
        delta_j: None,
        label,
        predicted: ExactValue::Quadratic {
            u: BigInt::from(-1),
            w: if sigma { w } else { -w },
            radicand: BigInt::from(p_star(p as u32)),
        },
    })
}

/// The two values `(-1 +- sqrt(p*^f))/2` taken by the `N = 2 p1^m` set.
pub fn predicted_values_b(params: &IndexTwoParams) -> Result<[ExactValue; 2], ConstructionError> {
    if params.kind != ParamKind::TwoP1m {
        return Err(ConstructionError::ConditionViolation(vec!["parameters are not of the 2 p1^m kind".into()]));
    }
    let mut failures = Vec::new();
    if params.p1 % 8 != 3 {
        failures.push(format!("p1 = {} is not 3 mod 8", params.p1));
    }
    if BigInt::from(params.p1 + 1) != BigInt::from(4) * big_pow(params.p, params.h) {
        failures.push(format!("1 + p1 != 4 p^h with h = {}", params.h));
    }
    if params.f % 2 == 0 {
        failures.push(format!("f = {} is even", params.f));
    }
    if !failures.is_empty() {
        return Err(ConstructionError::ConditionViolation(failures));
    }
    let w = big_pow(params.p, (params.f - 1) / 2);
    let radicand = BigInt::from(p_star(params.p as u32));
    let value = |w: BigInt| ExactValue::Quadratic { u: BigInt::from(-1), w, radicand: radicand.clone() };
    Ok([value(w.clone()), value(-w)])
}

/// Outcome of comparing every case prediction with the exact character sum.
#[derive(Debug, Clone, Serialize)]
pub struct CaseSweep {
    /// Sign of `c` relative to the normalized solution under which every
    /// prediction matched, if any.
    pub c_sign: Option<i8>,
    pub mismatches: usize,
    pub distinct_values: usize,
    pub cases: Vec<SpectrumCase>,
}

impl CaseSweep {
    pub fn all_match(&self) -> bool {
        self.c_sign.is_some()
    }
}

fn sweep(
    table: &PeriodTable,
    indices: &[u64],
    predict: impl Fn(u64) -> Result<SpectrumCase, ConstructionError>,
) -> Result<(Vec<SpectrumCase>, usize, usize), ConstructionError> {
    let mut values = BTreeSet::new();
    let mut cases = Vec::new();
    let mut mismatches = 0;
    for a in 0..table.n() {
        let actual = char_sum(table, indices, a);
        let case = predict(a)?;
        if !case.predicted.matches(&actual) {
            mismatches += 1;
        }
        values.insert(actual);
        cases.push(case);
    }
    Ok((cases, mismatches, values.len()))
}

/// Runs [`case_analysis_a`] for every `a` against the exact character sums,
/// trying both signs of `c`.
pub fn sweep_cases_a(table: &PeriodTable, params: &IndexTwoParams) -> Result<CaseSweep, ConstructionError> {
    let indices = index_set_a(params.p1, params.p2.unwrap_or(1), params.m, params.n.unwrap_or(1));
    let (cases, mismatches, distinct_values) = sweep(table, &indices, |a| case_analysis_a(params, a))?;
    if mismatches == 0 {
        return Ok(CaseSweep { c_sign: Some(1), mismatches, distinct_values, cases });
    }
    let flipped = params.with_c(-params.c.clone());
    let (alt, alt_mismatches, _) = sweep(table, &indices, |a| case_analysis_a(&flipped, a))?;
    if alt_mismatches == 0 {
        return Ok(CaseSweep { c_sign: Some(-1), mismatches: 0, distinct_values, cases: alt });
    }
    Ok(CaseSweep { c_sign: None, mismatches: mismatches.min(alt_mismatches), distinct_values, cases })
}

/// Runs [`case_analysis_b`] for every `a` against the exact character sums of
/// the chosen coset.
pub fn sweep_cases_b(table: &PeriodTable, params: &IndexTwoParams, coset: Coset) -> Result<CaseSweep, ConstructionError> {
    let indices = index_set_b(params.p, params.p1, params.m, coset);
    let n = params.classes;
    // the negated coset is the base construction for the generator gamma^-1
    let predict = |a: u64| match coset {
        Coset::Base => case_analysis_b(params, a),
        Coset::Negated => case_analysis_b(params, (n - a % n) % n).map(|case| SpectrumCase { a, ..case }),
    };
    let (cases, mismatches, distinct_values) = sweep(table, &indices, predict)?;
    Ok(CaseSweep { c_sign: (mismatches == 0).then_some(1), mismatches, distinct_values, cases })
}
