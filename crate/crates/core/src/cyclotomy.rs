//! Cyclotomic classes, Gauss periods and index-2 Gauss sums.
//!
//! A [`PeriodTable`] counts, for every class `C_j = gamma^j <gamma^N>`, how
//! many of its elements have each trace value. Every additive character sum
//! over a union of classes is a sum of its rows, so the table carries all of
//! them exactly in `Z[zeta_p]`. Floating point only appears when Gauss sums
//! are compared against their closed forms.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::big_pow;
use crate::constructions::{IndexTwoParams, ParamKind};
use crate::cycint::{p_star, CycIntValue};
use crate::gf::FieldTable;
use crate::quadratic::HalfQuad;

#[derive(Debug, Error)]
pub enum CycError {
    #[error("N = {n} does not divide q - 1 = {q_minus_one}")]
    NotDivisor { n: u64, q_minus_one: u64 },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("class index {index} is outside [0, {n})")]
    IndexOutOfRange { index: u64, n: u64 },
    #[error("hypotheses of the closed form fail: {0}")]
    ConditionViolation(String),
    #[error("field GF({p}^{f}) does not match the parameters")]
    FieldMismatch { p: u32, f: u32 },
    #[error("no single sign of c matches every Gauss sum (max deviations {plus:.3e} / {minus:.3e})")]
    Mismatch { plus: f64, minus: f64, report: Box<GaussComparison> },
}

/// A field together with the order `N` of its cyclotomic classes.
#[derive(Debug, Clone)]
pub struct CycSetup {
    field: Arc<FieldTable>,
    n: u64,
}

impl CycSetup {
    pub fn new(field: Arc<FieldTable>, n: u64) -> Result<Self, CycError> {
        let q_minus_one = field.q() - 1;
        if n == 0 || q_minus_one % n != 0 {
            return Err(CycError::NotDivisor { n, q_minus_one });
        }
        Ok(CycSetup { field, n })
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn class_size(&self) -> u64 {
        (self.field.q() - 1) / self.n
    }

    /// Class index of a nonzero element.
    pub fn class_of(&self, x: u32) -> Option<u64> {
        self.field.log(x).map(|l| l as u64 % self.n)
    }
}

#[derive(Debug, Clone)]
pub struct PeriodTable {
    setup: CycSetup,
    counts: Vec<u64>,
}

/// Exponent range per worker in the period sweep.
const SWEEP_BLOCK: usize = 1 << 16;

pub fn build_period_table(setup: &CycSetup) -> PeriodTable {
    let field = setup.field();
    let n = setup.n() as usize;
    let p = field.p() as usize;
    let exp = field.exp_table();
    let counts = exp
        .par_chunks(SWEEP_BLOCK)
        .enumerate()
        .fold(
            || vec![0u64; n * p],
            |mut local, (block, chunk)| {
                let start = block * SWEEP_BLOCK;
                let mut class = start % n;
                for &x in chunk {
                    local[class * p + field.trace_unchecked(x) as usize] += 1;
                    class += 1;
                    if class == n {
                        class = 0;
                    }
                }
                local
            },
        )
        .reduce(
            || vec![0u64; n * p],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    PeriodTable { setup: setup.clone(), counts }
}

impl PeriodTable {
    pub fn setup(&self) -> &CycSetup {
        &self.setup
    }

    pub fn field(&self) -> &FieldTable {
        self.setup.field()
    }

    pub fn n(&self) -> u64 {
        self.setup.n()
    }

    pub fn p(&self) -> u32 {
        self.field().p()
    }

    pub fn row(&self, j: u64) -> &[u64] {
        let p = self.p() as usize;
        let j = (j % self.n()) as usize;
        &self.counts[j * p..(j + 1) * p]
    }

    /// Gauss period of class `j`.
    pub fn eta(&self, j: u64) -> CycIntValue {
        CycIntValue::from_counts(self.row(j))
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let p = self.p() as usize;
        (0..p).map(|t| (0..self.n()).map(|j| self.row(j)[t]).sum()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let spec = self.field().spec();
        serde_json::json!({
            "p": spec.p,
            "f": spec.f,
            "N": self.n(),
            "modulus": spec.modulus,
            "counts": (0..self.n()).map(|j| self.row(j).to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// `psi(gamma^a D)` for `D` the union of the classes in `indices`.
pub fn char_sum(table: &PeriodTable, indices: &[u64], a: u64) -> CycIntValue {
    let p = table.p() as usize;
    let n = table.n();
    let mut total = vec![0i64; p];
    for &i in indices {
        for (acc, &c) in total.iter_mut().zip(table.row((a % n + i) % n)) {
            *acc += c as i64;
        }
    }
    CycIntValue::from_coeffs(total)
}

/// Checks an index set against the table before summing.
pub fn checked_char_sum(table: &PeriodTable, indices: &[u64], a: u64) -> Result<CycIntValue, CycError> {
    if indices.is_empty() {
        return Err(CycError::EmptyIndexSet);
    }
    if let Some(&index) = indices.iter().find(|&&i| i >= table.n()) {
        return Err(CycError::IndexOutOfRange { index, n: table.n() });
    }
    Ok(char_sum(table, indices, a))
}

/// `G(chi^k)` with `chi(gamma) = exp(2 pi i / N)`, in double precision.
pub fn gauss_sum_numeric(table: &PeriodTable, k: u64) -> Complex64 {
    let n = table.n();
    let etas: Vec<Complex64> = (0..n).map(|j| table.eta(j).to_complex()).collect();
    gauss_from_periods(&etas, n, k)
}

fn gauss_from_periods(etas: &[Complex64], n: u64, k: u64) -> Complex64 {
    etas.iter()
        .enumerate()
        .map(|(j, eta)| {
            let angle = std::f64::consts::TAU * ((k % n) * j as u64 % n) as f64 / n as f64;
            eta * Complex64::from_polar(1.0, angle)
        })
        .sum()
}

/// Which closed-form clause produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum GaussClause {
    /// `G(chi^(p1^s p2^t)) = p^((f - h e)/2) ((b + c sqrt(-p1 p2))/2)^e`
    TwoPrimesGeneric { s: u32, t: u32 },
    /// `G(chi^(p1^m p2^t)) = -p^(f/2)`
    TwoPrimesP1Full { t: u32 },
    /// `G(chi^(p1^s p2^n)) = p^(f/2)`
    TwoPrimesP2Full { s: u32 },
    /// Odd exponent `p1^t`.
    OnePrimeOdd { t: u32 },
    /// Even exponent `2 p1^t`.
    OnePrimeEven { t: u32 },
    /// Exponent `p1^m`.
    OnePrimeP1m,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentParity {
    OddExponent,
    EvenExponent,
    P1mExponent,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GaussValue {
    Rational(BigRational),
    /// `scale * base`
    Quadratic { scale: BigRational, base: HalfQuad },
    /// `scale * sqrt(p*) * base`, `base = 1` for the pure form.
    SqrtPStar { scale: BigRational, p_star: i64, base: HalfQuad },
}

impl GaussValue {
    pub fn modulus_squared(&self) -> BigRational {
        let int = |x: BigInt| BigRational::from_integer(x);
        match self {
            GaussValue::Rational(r) => r * r,
            GaussValue::Quadratic { scale, base } => scale * scale * int(base.norm()),
            GaussValue::SqrtPStar { scale, p_star, base } => {
                scale * scale * int(BigInt::from(p_star.abs())) * int(base.norm())
            }
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |r: &BigRational| r.to_f64().unwrap();
        match self {
            GaussValue::Rational(r) => Complex64::new(f(r), 0.0),
            GaussValue::Quadratic { scale, base } => base.to_complex() * f(scale),
            GaussValue::SqrtPStar { scale, p_star, base } => {
                let root = if *p_star > 0 {
                    Complex64::new((*p_star as f64).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, (-*p_star as f64).sqrt())
                };
                root * base.to_complex() * f(scale)
            }
        }
    }

    /// `sign * conj(self)`.
    fn conj_signed(&self, sign: i64) -> GaussValue {
        let s = BigRational::from_integer(BigInt::from(sign));
        match self {
            GaussValue::Rational(r) => GaussValue::Rational(r * &s),
            GaussValue::Quadratic { scale, base } => {
                GaussValue::Quadratic { scale: scale * &s, base: base.conj() }
            }
            // conj(sqrt(p*)) = -sqrt(p*) exactly when p* < 0
            GaussValue::SqrtPStar { scale, p_star, base } => {
                let flip = if *p_star < 0 { -1 } else { 1 };
                GaussValue::SqrtPStar {
                    scale: scale * &s * BigRational::from_integer(BigInt::from(flip)),
                    p_star: *p_star,
                    base: base.conj(),
                }
            }
        }
    }
}

impl std::fmt::Display for GaussValue {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GaussValue::Rational(r) => write!(out, "{r}"),
            GaussValue::Quadratic { scale, base } => write!(out, "{scale}*{base}"),
            GaussValue::SqrtPStar { scale, p_star, base } if base.is_one() => {
                write!(out, "{scale}*sqrt({p_star})")
            }
            GaussValue::SqrtPStar { scale, p_star, base } => write!(out, "{scale}*sqrt({p_star})*{base}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussPrediction {
    pub clause: GaussClause,
    pub value: GaussValue,
}

fn p_power(p: u64, numer: i64, denom: i64) -> Result<BigRational, CycError> {
    if numer % denom != 0 {
        return Err(CycError::ConditionViolation(format!(
            "exponent {numer}/{denom} of {p} is not an integer"
        )));
    }
    let e = numer / denom;
    let base = BigRational::from_integer(big_pow(p, e.unsigned_abs()));
    Ok(if e >= 0 { base } else { base.recip() })
}

fn signed(r: BigRational, negative: bool) -> BigRational {
    if negative {
        -r
    } else {
        r
    }
}

fn unit_base(params: &IndexTwoParams) -> HalfQuad {
    HalfQuad::new(params.b.clone(), params.c.clone(), params.radicand())
}

/// Closed form for `G(chi^(p1^s p2^t))` when `N = p1^m p2^n`.
pub fn predict_gauss_a(params: &IndexTwoParams, s: u32, t: u32) -> Result<GaussPrediction, CycError> {
    let (p2, n) = match (params.kind, params.p2, params.n) {
        (ParamKind::TwoPrimes, Some(p2), Some(n)) => (p2, n),
        _ => return Err(CycError::ConditionViolation("parameters are not of the N = p1^m p2^n kind".into())),
    };
    let m = params.m;
    if s > m || t > n {
        return Err(CycError::ConditionViolation(format!("(s, t) = ({s}, {t}) exceeds (m, n) = ({m}, {n})")));
    }
    let f = params.f as i64;
    let p = params.p;
    let (clause, value) = match (s == m, t == n) {
        (true, true) => (GaussClause::Trivial, GaussValue::Rational(-BigRational::one())),
        (true, false) => (GaussClause::TwoPrimesP1Full { t }, GaussValue::Rational(-p_power(p, f, 2)?)),
        (false, true) => (GaussClause::TwoPrimesP2Full { s }, GaussValue::Rational(p_power(p, f, 2)?)),
        (false, false) => {
            let e = params.p1.pow(s) * p2.pow(t);
            let scale = p_power(p, f - params.h as i64 * e as i64, 2)?;
            let base = unit_base(params).pow(e);
            (GaussClause::TwoPrimesGeneric { s, t }, GaussValue::Quadratic { scale, base })
        }
    };
    Ok(GaussPrediction { clause, value })
}

/// Closed form for `G(chi^(p1^t))`, `G(chi^(2 p1^t))` or `G(chi^(p1^m))`
/// when `N = 2 p1^m`.
pub fn predict_gauss_b(
    params: &IndexTwoParams,
    t: u32,
    parity: ExponentParity,
) -> Result<GaussPrediction, CycError> {
    if params.kind != ParamKind::TwoP1m {
        return Err(CycError::ConditionViolation("parameters are not of the N = 2 p1^m kind".into()));
    }
    let m = params.m;
    if parity != ExponentParity::P1mExponent && t >= m {
        return Err(CycError::ConditionViolation(format!("t = {t} must be below m = {m}")));
    }
    let (p, p1, f, h) = (params.p, params.p1, params.f as i64, params.h as i64);
    let half_p = ((p - 1) / 2) as i64;
    let ps = p_star(p as u32);
    let e = p1.pow(t) as i64;
    let prediction = match parity {
        ExponentParity::OddExponent if p1 % 8 == 3 => {
            let negative = (half_p * (m as i64 - 1)) % 2 == 1;
            let scale = signed(p_power(p, f - 1 - 2 * h * e, 2)?, negative);
            let base = unit_base(params).pow(2 * e as u64);
            GaussPrediction { clause: GaussClause::OnePrimeOdd { t }, value: GaussValue::SqrtPStar { scale, p_star: ps, base } }
        }
        ExponentParity::OddExponent if p1 % 8 == 7 => {
            let negative = (half_p * m as i64) % 2 == 1;
            let scale = signed(p_power(p, f - 1, 2)?, negative);
            let base = HalfQuad::one(params.radicand());
            GaussPrediction { clause: GaussClause::OnePrimeOdd { t }, value: GaussValue::SqrtPStar { scale, p_star: ps, base } }
        }
        ExponentParity::OddExponent => {
            return Err(CycError::ConditionViolation(format!("p1 = {p1} is not 3 mod 4")));
        }
        ExponentParity::EvenExponent => {
            let scale = p_power(p, f - e * h, 2)?;
            let base = unit_base(params).pow(e as u64);
            GaussPrediction { clause: GaussClause::OnePrimeEven { t }, value: GaussValue::Quadratic { scale, base } }
        }
        ExponentParity::P1mExponent => {
            let negative = (half_p * ((f - 1) / 2)) % 2 == 1;
            let scale = signed(p_power(p, f - 1, 2)?, negative);
            let base = HalfQuad::one(params.radicand());
            GaussPrediction { clause: GaussClause::OnePrimeP1m, value: GaussValue::SqrtPStar { scale, p_star: ps, base } }
        }
    };
    Ok(prediction)
}

fn valuation(mut x: u64, prime: u64) -> u32 {
    let mut v = 0;
    while x % prime == 0 && x > 0 {
        x /= prime;
        v += 1;
    }
    v
}

fn cyclic_subgroup(p: u64, modulus: u64) -> BTreeSet<u64> {
    let mut set = BTreeSet::new();
    if modulus == 1 {
        set.insert(0);
        return set;
    }
    let mut x = 1 % modulus;
    while set.insert(x) {
        x = x * (p % modulus) % modulus;
    }
    set
}

/// Closed form for `G(chi^l)` for any nonzero exponent `l`, reduced to a
/// clause representative through Frobenius invariance and
/// `G(chi^-1) = chi(-1) conj(G(chi))`.
pub fn predict_gauss(params: &IndexTwoParams, q: u64, l: u64) -> Result<GaussPrediction, CycError> {
    let big_n = params.classes;
    let l = l % big_n;
    if l == 0 {
        return Ok(GaussPrediction { clause: GaussClause::Trivial, value: GaussValue::Rational(-BigRational::one()) });
    }
    let g = l.gcd(&big_n);
    let base = match params.kind {
        ParamKind::TwoPrimes => {
            let p2 = params.p2.expect("two-prime parameters carry p2");
            predict_gauss_a(params, valuation(g, params.p1), valuation(g, p2))?
        }
        ParamKind::TwoP1m => {
            let s = valuation(g, params.p1);
            let parity = if s == params.m {
                ExponentParity::P1mExponent
            } else if g % 2 == 0 {
                ExponentParity::EvenExponent
            } else {
                ExponentParity::OddExponent
            };
            predict_gauss_b(params, s, parity)?
        }
    };
    let modulus = big_n / g;
    let unit = (l / g) % modulus;
    let powers = cyclic_subgroup(params.p, modulus);
    if powers.contains(&unit) {
        return Ok(base);
    }
    if powers.contains(&((modulus - unit) % modulus)) {
        // chi^g(-1) = (-1)^(g (q-1) / N), and -1 = 1 in characteristic 2
        let sign = if params.p == 2 || (g * ((q - 1) / big_n)) % 2 == 0 { 1 } else { -1 };
        return Ok(GaussPrediction { clause: base.clause, value: base.value.conj_signed(sign) });
    }
    Err(CycError::ConditionViolation(format!(
        "{unit} is in neither <p> nor -<p> modulo {modulus}; the index-2 hypothesis fails"
    )))
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussRow {
    pub exponent: u64,
    #[serde(flatten)]
    pub clause: GaussClause,
    pub numeric: [f64; 2],
    pub predicted_plus: String,
    pub predicted_minus: String,
    pub deviation_plus: f64,
    pub deviation_minus: f64,
    /// `| |G|^2 - q |`
    pub modulus_error: f64,
    pub exact_modulus_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussComparison {
    pub p: u32,
    pub f: u32,
    pub classes: u64,
    pub tau: f64,
    pub rows: Vec<GaussRow>,
    /// Sign of `c` (relative to the positive normalization) matching every row.
    pub c_sign: Option<i8>,
    pub max_deviation: f64,
    pub max_modulus_error: f64,
}

impl GaussComparison {
    pub fn all_modulus_ok(&self) -> bool {
        self.rows.iter().all(|r| r.modulus_error <= self.tau && r.exact_modulus_ok)
    }
}

/// Cross-checks every nontrivial Gauss sum of order dividing `N` against its
/// closed form, for both signs of `c`.
pub fn compare_gauss(table: &PeriodTable, params: &IndexTwoParams) -> Result<GaussComparison, CycError> {
    let field = table.field();
    if field.p() as u64 != params.p || field.f() as u64 != params.f || table.n() != params.classes {
        return Err(CycError::FieldMismatch { p: field.p(), f: field.f() });
    }
    let q = field.q();
    let tau = 1e-6 * (q as f64).sqrt();
    let etas: Vec<Complex64> = (0..table.n()).map(|j| table.eta(j).to_complex()).collect();
    let flipped = params.with_c(-params.c.clone());
    let q_rational = BigRational::from_integer(BigInt::from(q));

    let mut rows = Vec::new();
    for l in 1..table.n() {
        let numeric = gauss_from_periods(&etas, table.n(), l);
        let plus = predict_gauss(params, q, l)?;
        let minus = predict_gauss(&flipped, q, l)?;
        rows.push(GaussRow {
            exponent: l,
            clause: plus.clause,
            numeric: [numeric.re, numeric.im],
            predicted_plus: plus.value.to_string(),
            predicted_minus: minus.value.to_string(),
            deviation_plus: (numeric - plus.value.to_complex()).norm(),
            deviation_minus: (numeric - minus.value.to_complex()).norm(),
            modulus_error: (numeric.norm_sqr() - q as f64).abs(),
            exact_modulus_ok: plus.value.modulus_squared() == q_rational
                && minus.value.modulus_squared() == q_rational,
        });
    }
    let max_of = |sel: fn(&GaussRow) -> f64| rows.iter().map(sel).fold(0.0f64, f64::max);
    let plus = max_of(|r| r.deviation_plus);
    let minus = max_of(|r| r.deviation_minus);
    let c_sign = if plus <= tau {
        Some(1)
    } else if minus <= tau {
        Some(-1)
    } else {
        None
    };
    let report = GaussComparison {
        p: field.p(),
        f: field.f(),
        classes: table.n(),
        tau,
        max_deviation: match c_sign {
            Some(1) => plus,
            Some(_) => minus,
            None => plus.min(minus),
        },
        max_modulus_error: max_of(|r| r.modulus_error),
        rows,
        c_sign,
    };
    match c_sign {
        Some(_) => Ok(report),
        None => Err(CycError::Mismatch { plus, minus, report: Box::new(report) }),
    }
}

/// `chi^k(-1)` as `+1` or `-1` for `chi(gamma) = exp(2 pi i / N)`.
pub fn character_at_minus_one(table: &PeriodTable, k: u64) -> i64 {
    let e = k % table.n() * ((table.field().q() - 1) / table.n());
    if table.p() == 2 || e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Nonzero elements of `GF(p)` inside `GF(q)` are `gamma^((q-1)/(p-1) j)`.
pub fn prime_field_step(table: &PeriodTable) -> u64 {
    (table.field().q() - 1) / (table.p() as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf;

    fn table(p: u64, f: u32, n: u64) -> PeriodTable {
        let field = Arc::new(gf::field(p, f).unwrap());
        build_period_table(&CycSetup::new(field, n).unwrap())
    }

    #[test]
    fn setup_requires_divisor() {
        let field = Arc::new(gf::field(2, 4).unwrap());
        assert!(matches!(CycSetup::new(field.clone(), 7), Err(CycError::NotDivisor { .. })));
        assert_eq!(CycSetup::new(field, 5).unwrap().class_size(), 3);
    }

    #[test]
    fn gf16_period_table() {
        let t = table(2, 4, 15);
        for j in 0..15 {
            assert_eq!(t.row(j).iter().sum::<u64>(), 1);
        }
        assert_eq!(t.column_sums(), vec![7, 8]);
        let etas: Vec<i64> = (0..15).map(|j| t.eta(j).rational_value().unwrap()).collect();
        assert_eq!(etas.iter().filter(|&&e| e == 1).count(), 7);
        // oracle: trace census straight from the field
        for (j, &eta) in etas.iter().enumerate() {
            let x = t.field().exp(j as u64);
            let expect = if t.field().trace(x as u64).unwrap() == 0 { 1 } else { -1 };
            assert_eq!(eta, expect);
        }
    }

    #[test]
    fn char_sum_examples() {
        let t = table(2, 4, 15);
        assert_eq!(char_sum(&t, &[0], 0).rational_value(), Some(1));
        let all: Vec<u64> = (0..15).collect();
        for a in 0..15 {
            assert_eq!(char_sum(&t, &all, a).rational_value(), Some(-1));
        }
        assert!(matches!(checked_char_sum(&t, &[], 0), Err(CycError::EmptyIndexSet)));
        assert!(matches!(checked_char_sum(&t, &[15], 0), Err(CycError::IndexOutOfRange { .. })));
    }

    #[test]
    fn trivial_character_gives_minus_one() {
        let t = table(3, 5, 22);
        let g = gauss_sum_numeric(&t, 0);
        assert!((g - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        let g = gauss_sum_numeric(&table(2, 4, 15), 5);
        assert!((g.norm_sqr() - 16.0).abs() < 1e-6);
    }

    #[test]
    fn gf243_p1m_clause() {
        let t = table(3, 5, 22);
        let params = IndexTwoParams::one_prime(3, 11, 1).unwrap();
        let g = gauss_sum_numeric(&t, 11);
        let pred = predict_gauss_b(&params, 0, ExponentParity::P1mExponent).unwrap();
        assert_eq!(pred.value.modulus_squared(), BigRational::from_integer(243.into()));
        assert!((g.norm_sqr() - 243.0).abs() < 1e-6);
        assert!((g - pred.value.to_complex()).norm() < 1e-6 * 243f64.sqrt());
    }

    #[test]
    fn prediction_examples_gf16() {
        let params = IndexTwoParams::two_primes(2, 5, 3, 1, 1).unwrap();
        let g = predict_gauss_a(&params, 0, 0).unwrap();
        let expect = Complex64::new(1.0, 15f64.sqrt());
        assert!((g.value.to_complex() - expect).norm() < 1e-12);
        assert_eq!(g.value.modulus_squared(), BigRational::from_integer(16.into()));
        let g = predict_gauss_a(&params, 1, 0).unwrap();
        assert_eq!(g.value, GaussValue::Rational(BigRational::from_integer((-4).into())));
        let g = predict_gauss_a(&params, 0, 1).unwrap();
        assert_eq!(g.value, GaussValue::Rational(BigRational::from_integer(4.into())));
        assert!(predict_gauss_b(&params, 0, ExponentParity::EvenExponent).is_err());
    }

    #[test]
    fn prediction_examples_gf243() {
        let params = IndexTwoParams::one_prime(3, 11, 1).unwrap();
        let q = BigRational::from_integer(243.into());
        let even = predict_gauss_b(&params, 0, ExponentParity::EvenExponent).unwrap();
        assert_eq!(even.value.to_string(), "9*(1+sqrt(-11))/2");
        assert_eq!(even.value.modulus_squared(), q);
        let p1m = predict_gauss_b(&params, 0, ExponentParity::P1mExponent).unwrap();
        assert_eq!(p1m.value.to_string(), "9*sqrt(-3)");
        let odd = predict_gauss_b(&params, 0, ExponentParity::OddExponent).unwrap();
        assert_eq!(odd.value.to_string(), "3*sqrt(-3)*(-5+sqrt(-11))/2");
        assert_eq!(odd.value.modulus_squared(), q);
    }

    #[test]
    fn compare_small_fields() {
        let t = table(2, 4, 15);
        let params = IndexTwoParams::two_primes(2, 5, 3, 1, 1).unwrap();
        let report = compare_gauss(&t, &params).unwrap();
        assert!(report.c_sign.is_some());
        assert!(report.all_modulus_ok());
        assert_eq!(report.rows.len(), 14);

        let t = table(3, 5, 22);
        let params = IndexTwoParams::one_prime(3, 11, 1).unwrap();
        let report = compare_gauss(&t, &params).unwrap();
        assert!(report.c_sign.is_some());
        assert!(report.all_modulus_ok());
    }

    #[test]
    fn compare_p1_seven_mod_eight_branch() {
        // N = 14, p = 11: <11> has index 2 in Z_14^*, q = 11^3
        let t = table(11, 3, 14);
        let params = IndexTwoParams::one_prime(11, 7, 1).unwrap();
        assert_eq!((params.b.clone(), params.c.clone()), (BigInt::from(-4), BigInt::from(2)));
        let report = compare_gauss(&t, &params).unwrap();
        assert!(report.c_sign.is_some(), "{report:#?}");
    }

    #[test]
    fn compare_rejects_wrong_field() {
        let t = table(2, 4, 15);
        let params = IndexTwoParams::one_prime(3, 11, 1).unwrap();
        assert!(matches!(compare_gauss(&t, &params), Err(CycError::FieldMismatch { .. })));
    }

    #[test]
    fn period_table_json_shape() {
        let t = table(2, 4, 5);
        let v = t.to_json();
        assert_eq!(v["N"], 5);
        assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
        assert_eq!(v["counts"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn minus_one_character() {
        let t = table(3, 5, 22);
        // -1 = gamma^121 lies in class 121 mod 22 = 11
        assert_eq!(character_at_minus_one(&t, 1), -1);
        assert_eq!(character_at_minus_one(&t, 2), 1);
        assert_eq!(prime_field_step(&t), 121);
    }
}
