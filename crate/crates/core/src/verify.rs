//! Exact certificates for strongly regular Cayley graphs, skew Hadamard and
//! Paley type difference sets, and cyclotomic association schemes.
//!
//! Spectral checks read restricted eigenvalues off a [`PeriodTable`]; the
//! direct checker and the difference census use nothing but field addition,
//! so the two routes can vouch for each other.

use std::collections::BTreeMap;

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::ConnectionSet;
use crate::cycint::{conference_pair, p_star, CycIntValue, ExactValue};
use crate::cyclotomy::{char_sum, PeriodTable};
use crate::gf::FieldTable;

/// Largest `v` for which the brute-force checks run.
pub const DIRECT_LIMIT: u64 = 10_000;
/// Largest `|D|^2` for which the difference census runs.
pub const CENSUS_LIMIT: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("connection set is not closed under negation")]
    NotSymmetric,
    #[error("restricted spectrum has {count} distinct values: {}", values.join(", "))]
    NotTwoValued { count: usize, values: Vec<String> },
    #[error("strongly regular identity fails: {0}")]
    IdentityFails(String),
    #[error("not strongly regular: {0}")]
    NotSrg(String),
    #[error("v = {v} is above the brute-force limit {limit}")]
    TooLarge { v: u64, limit: u64 },
    #[error("D, -D and {{0}} do not split the field")]
    SkewSplitFails,
    #[error("{g} is a difference {count} times, expected {expected}")]
    DifferenceCensusFails { g: u32, count: u64, expected: u64 },
    #[error("restricted value {0} is not one of the predicted pair")]
    SpectrumMismatch(String),
    #[error("no square root of {sign}*{p}^{f} in Z[zeta_{p}]")]
    NoExactPair { p: u32, f: u32, sign: i64 },
    #[error("|D| = {actual}, expected {expected}")]
    SizeMismatch { expected: u64, actual: u64 },
    #[error("relations do not partition the nonzero elements: {0}")]
    NotPartition(String),
    #[error("intersection number p_{i}{j}^{k} is not constant over R_{k}")]
    AxiomFails { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(skip)]
    pub cyc: CycIntValue,
    pub value: ExactValue,
    /// Number of class shifts `a` in `Z_N` attaining the value.
    #[serde(skip)]
    pub shifts: u64,
    pub multiplicity: u64,
}

/// `{ psi(gamma^a D) : a in Z_N }` with multiplicities counted over all
/// `q - 1` nontrivial additive characters.
pub fn restricted_spectrum(table: &PeriodTable, set: &ConnectionSet) -> Vec<SpectrumEntry> {
    spectrum_of_indices(table, set.indices())
}

pub fn spectrum_of_indices(table: &PeriodTable, indices: &[u64]) -> Vec<SpectrumEntry> {
    let values: Vec<CycIntValue> = (0..table.n()).into_par_iter().map(|a| char_sum(table, indices, a)).collect();
    let mut counts: BTreeMap<CycIntValue, u64> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    let class_size = table.setup().class_size();
    counts
        .into_iter()
        .map(|(cyc, shifts)| SpectrumEntry { value: cyc.exact(), cyc, shifts, multiplicity: shifts * class_size })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Spectral,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgCertificate {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub r: ExactValue,
    pub s: ExactValue,
    pub m_r: u64,
    pub m_s: u64,
    pub connected: bool,
    pub method: Method,
}

impl SrgCertificate {
    /// Same parameters and eigenvalues, whatever the method.
    pub fn agrees_with(&self, other: &SrgCertificate) -> bool {
        (self.v, self.k, self.lambda, self.mu, self.m_r, self.m_s, self.connected)
            == (other.v, other.k, other.lambda, other.mu, other.m_r, other.m_s, other.connected)
            && self.r.to_string() == other.r.to_string()
            && self.s.to_string() == other.s.to_string()
    }
}

fn nonneg(x: i128, what: &str) -> Result<u64, VerifyError> {
    u64::try_from(x).map_err(|_| VerifyError::IdentityFails(format!("{what} = {x} is negative")))
}

/// Checks the counting identities every certificate must satisfy.
/// `sigma = r + s`, `pi = r s`, `trace = k + m_r r + m_s s`.
fn check_identities(v: i128, k: i128, lambda: i128, mu: i128, m_sum: i128, trace: i128) -> Result<(), VerifyError> {
    if k * (k - lambda - 1) != (v - k - 1) * mu {
        return Err(VerifyError::IdentityFails(format!("k(k - lambda - 1) = {} but (v - k - 1)mu = {}", k * (k - lambda - 1), (v - k - 1) * mu)));
    }
    if m_sum != v - 1 {
        return Err(VerifyError::IdentityFails(format!("m_r + m_s = {m_sum}, v - 1 = {}", v - 1)));
    }
    if trace != 0 {
        return Err(VerifyError::IdentityFails(format!("k + m_r r + m_s s = {trace}")));
    }
    Ok(())
}

/// Strongly regular certificate from the two restricted eigenvalues.
pub fn verify_srg(table: &PeriodTable, set: &ConnectionSet) -> Result<SrgCertificate, VerifyError> {
    if set.contains(0) || !set.is_symmetric() {
        return Err(VerifyError::NotSymmetric);
    }
    let spectrum = restricted_spectrum(table, set);
    certificate_from_spectrum(table.field().q(), set.size(), &spectrum)
}

pub fn certificate_from_spectrum(q: u64, size: u64, spectrum: &[SpectrumEntry]) -> Result<SrgCertificate, VerifyError> {
    if spectrum.len() != 2 {
        return Err(VerifyError::NotTwoValued {
            count: spectrum.len(),
            values: spectrum.iter().map(|e| e.value.to_string()).collect(),
        });
    }
    let (v, k) = (q as i128, size as i128);
    let (a, b) = (&spectrum[0], &spectrum[1]);
    match (a.cyc.rational_value(), b.cyc.rational_value()) {
        (Some(x), Some(y)) => {
            let (r, s, m_r, m_s) = if x > y { (x, y, a.multiplicity, b.multiplicity) } else { (y, x, b.multiplicity, a.multiplicity) };
            let (r, s) = (r as i128, s as i128);
            let mu = k + r * s;
            let lambda = mu + r + s;
            check_identities(v, k, lambda, mu, (m_r + m_s) as i128, k + m_r as i128 * r + m_s as i128 * s)?;
            Ok(SrgCertificate {
                v: q,
                k: size,
                lambda: nonneg(lambda, "lambda")?,
                mu: nonneg(mu, "mu")?,
                r: ExactValue::Integer(r.into()),
                s: ExactValue::Integer(s.into()),
                m_r,
                m_s,
                connected: k != r,
                method: Method::Spectral,
            })
        }
        _ => {
            let p = a.cyc.p();
            let pair = a.cyc.as_quadratic().zip(b.cyc.as_quadratic());
            let Some(((u, w1), (_, w2))) = pair.filter(|((u1, w1), (u2, w2))| u1 == u2 && *w1 == -w2 && *w1 != 0) else {
                return Err(VerifyError::NotTwoValued {
                    count: 2,
                    values: spectrum.iter().map(|e| e.value.to_string()).collect(),
                });
            };
            let ps = p_star(p) as i128;
            if ps < 0 {
                return Err(VerifyError::IdentityFails(format!("eigenvalues {} and {} are not real", a.value, b.value)));
            }
            let (u, w) = (u as i128, w1.max(w2) as i128);
            let pi_numer = u * u - w * w * ps;
            if pi_numer % 4 != 0 {
                return Err(VerifyError::IdentityFails(format!("r s = {pi_numer}/4 is not an integer")));
            }
            let mu = k + pi_numer / 4;
            let lambda = mu + u;
            if a.multiplicity != b.multiplicity {
                return Err(VerifyError::IdentityFails("conjugate eigenvalues with unequal multiplicities".into()));
            }
            let m = a.multiplicity as i128;
            check_identities(v, k, lambda, mu, 2 * m, k + m * u)?;
            let value = |w: i128| ExactValue::Quadratic { u: u.into(), w: w.into(), radicand: ps.into() };
            Ok(SrgCertificate {
                v: q,
                k: size,
                lambda: nonneg(lambda, "lambda")?,
                mu: nonneg(mu, "mu")?,
                r: value(w),
                s: value(-w),
                m_r: m as u64,
                m_s: m as u64,
                connected: true,
                method: Method::Spectral,
            })
        }
    }
}

/// Adjacency rows of `Cay(F_q, D)` as bitsets.
pub fn adjacency_rows(field: &FieldTable, set: &ConnectionSet) -> Vec<Vec<u64>> {
    let q = field.q() as usize;
    let words = q.div_ceil(64);
    let elements = set.elements();
    (0..q as u32)
        .into_par_iter()
        .map(|x| {
            let mut row = vec![0u64; words];
            for &d in &elements {
                let y = field.add(x, d) as usize;
                row[y >> 6] |= 1 << (y & 63);
            }
            row
        })
        .collect()
}

fn has(row: &[u64], y: usize) -> bool {
    (row[y >> 6] >> (y & 63)) & 1 == 1
}

/// Brute-force strongly regular check over every pair of vertices.
pub fn verify_srg_direct(field: &FieldTable, set: &ConnectionSet) -> Result<SrgCertificate, VerifyError> {
    let v = field.q();
    if v > DIRECT_LIMIT {
        return Err(VerifyError::TooLarge { v, limit: DIRECT_LIMIT });
    }
    let rows = adjacency_rows(field, set);
    srg_from_rows(&rows)
}

/// Strongly regular parameters of a graph given by symmetric bitset rows.
pub fn srg_from_rows(rows: &[Vec<u64>]) -> Result<SrgCertificate, VerifyError> {
    let n = rows.len();
    let degree = |row: &Vec<u64>| row.iter().map(|w| w.count_ones() as u64).sum::<u64>();
    let k = degree(&rows[0]);
    for (x, row) in rows.iter().enumerate() {
        if has(row, x) {
            return Err(VerifyError::NotSrg(format!("loop at {x}")));
        }
        if degree(row) != k {
            return Err(VerifyError::NotSrg(format!("vertex {x} has degree {} instead of {k}", degree(row))));
        }
        if let Some(y) = (0..n).find(|&y| has(row, y) && !has(&rows[y], x)) {
            return Err(VerifyError::NotSrg(format!("edge {x} -> {y} is not symmetric")));
        }
    }
    if k == 0 {
        return Err(VerifyError::NotSrg("edgeless graph".into()));
    }
    if k as usize == n - 1 {
        return Err(VerifyError::NotSrg("complete graph".into()));
    }
    // (min, max) common-neighbour counts over adjacent and non-adjacent pairs
    let fold = |a: (u64, u64), b: (u64, u64)| (a.0.min(b.0), a.1.max(b.1));
    let empty = ((u64::MAX, 0), (u64::MAX, 0));
    let (adjacent, apart) = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut acc = empty;
            for y in x + 1..n {
                let common: u64 = rows[x].iter().zip(&rows[y]).map(|(a, b)| (a & b).count_ones() as u64).sum();
                if has(&rows[x], y) {
                    acc.0 = fold(acc.0, (common, common));
                } else {
                    acc.1 = fold(acc.1, (common, common));
                }
            }
            acc
        })
        .reduce(|| empty, |a, b| (fold(a.0, b.0), fold(a.1, b.1)));
    if adjacent.0 != adjacent.1 {
        return Err(VerifyError::NotSrg(format!("adjacent pairs share between {} and {} neighbours", adjacent.0, adjacent.1)));
    }
    if apart.0 != apart.1 {
        return Err(VerifyError::NotSrg(format!("non-adjacent pairs share between {} and {} neighbours", apart.0, apart.1)));
    }
    let (lambda, mu) = (adjacent.0, apart.0);
    eigen_certificate(n as u64, k, lambda, mu)
}

/// Restricted eigenvalues and multiplicities from `(v, k, lambda, mu)`.
fn eigen_certificate(v: u64, k: u64, lambda: u64, mu: u64) -> Result<SrgCertificate, VerifyError> {
    let (vi, ki, li, mi) = (v as i128, k as i128, lambda as i128, mu as i128);
    // r, s are the roots of t^2 - (lambda - mu) t - (k - mu)
    let diff = li - mi;
    let disc = diff * diff + 4 * (ki - mi);
    let root = (disc as u128).sqrt() as i128;
    if root * root == disc {
        let (r2, s2) = (diff + root, diff - root);
        if r2 % 2 != 0 {
            return Err(VerifyError::IdentityFails(format!("eigenvalues ({diff} +- {root})/2 are not integers")));
        }
        let (r, s) = (r2 / 2, s2 / 2);
        let m_r = (-ki - s * (vi - 1)) / (r - s);
        let m_s = (ki + r * (vi - 1)) / (r - s);
        check_identities(vi, ki, li, mi, m_r + m_s, ki + m_r * r + m_s * s)?;
        Ok(SrgCertificate {
            v,
            k,
            lambda,
            mu,
            r: ExactValue::Integer(r.into()),
            s: ExactValue::Integer(s.into()),
            m_r: nonneg(m_r, "m_r")?,
            m_s: nonneg(m_s, "m_s")?,
            connected: ki != r,
            method: Method::Direct,
        })
    } else {
        // conference graph: irrational pair with equal multiplicities
        let m = (vi - 1) / 2;
        check_identities(vi, ki, li, mi, 2 * m, ki + m * diff)?;
        let value = |w: i32| ExactValue::Quadratic { u: diff.into(), w: w.into(), radicand: disc.into() };
        Ok(SrgCertificate {
            v,
            k,
            lambda,
            mu,
            r: value(1),
            s: value(-1),
            m_r: m as u64,
            m_s: m as u64,
            connected: true,
            method: Method::Direct,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceSetKind {
    SkewHadamard,
    PaleyType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Census {
    /// Every nonzero element is a difference exactly `count` times.
    Verified { count: u64 },
    Skipped { ordered_pairs: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSetVerdict {
    pub kind: DifferenceSetKind,
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: Option<u64>,
    pub census: Option<Census>,
    pub predicted: [ExactValue; 2],
    pub spectrum: Vec<SpectrumEntry>,
}

/// Counts `d1 - d2` over ordered pairs of distinct elements of `D`.
pub fn difference_census(field: &FieldTable, set: &ConnectionSet) -> Vec<u64> {
    let elements = set.elements();
    let negatives: Vec<u32> = elements.iter().map(|&d| field.neg(d)).collect();
    let q = field.q() as usize;
    elements
        .par_iter()
        .fold(
            || vec![0u64; q],
            |mut counts, &d1| {
                for &nd2 in &negatives {
                    counts[field.add(d1, nd2) as usize] += 1;
                }
                counts
            },
        )
        .reduce(
            || vec![0u64; q],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
        .into_iter()
        .enumerate()
        .map(|(g, c)| if g == 0 { 0 } else { c })
        .collect()
}

fn check_pair(spectrum: &[SpectrumEntry], pair: &[CycIntValue; 2]) -> Result<(), VerifyError> {
    for entry in spectrum {
        let doubled = entry.cyc.scale(2);
        if !pair.contains(&doubled) {
            return Err(VerifyError::SpectrumMismatch(entry.value.to_string()));
        }
    }
    Ok(())
}

fn halve(pair: &[CycIntValue; 2]) -> [ExactValue; 2] {
    pair.clone().map(|d| match d.rational_value() {
        Some(n) => ExactValue::Integer((n / 2).into()),
        None => {
            // d = (u + w g)/2 is twice the value
            let (u, w) = d.as_quadratic().expect("pair lies in the quadratic subfield");
            ExactValue::Quadratic { u: (u / 2).into(), w: (w / 2).into(), radicand: p_star(d.p()).into() }
        }
    })
}

/// Skew Hadamard difference set check: the skew split, the difference census
/// when it is small enough, and every character value equal to
/// `(-1 +- sqrt(-v))/2` exactly.
pub fn verify_skew_hds(table: &PeriodTable, set: &ConnectionSet) -> Result<DifferenceSetVerdict, VerifyError> {
    let field = table.field();
    let v = field.q();
    if !set.is_skew_split() {
        return Err(VerifyError::SkewSplitFails);
    }
    let k = set.size();
    let lambda = (v - 3) / 4;
    let census = census_outcome(field, set, k, lambda)?;
    let pair = conference_pair(field.p(), field.f(), -1).ok_or(VerifyError::NoExactPair { p: field.p(), f: field.f(), sign: -1 })?;
    let spectrum = restricted_spectrum(table, set);
    check_pair(&spectrum, &pair)?;
    Ok(DifferenceSetVerdict {
        kind: DifferenceSetKind::SkewHadamard,
        v,
        k,
        lambda,
        mu: None,
        census,
        predicted: halve(&pair),
        spectrum,
    })
}

fn census_outcome(field: &FieldTable, set: &ConnectionSet, k: u64, expected: u64) -> Result<Option<Census>, VerifyError> {
    if k.saturating_mul(k) > CENSUS_LIMIT {
        return Ok(Some(Census::Skipped { ordered_pairs: k.saturating_mul(k.saturating_sub(1)) }));
    }
    let counts = difference_census(field, set);
    debug_assert_eq!(counts.iter().sum::<u64>(), k * (k - 1));
    if let Some((g, &count)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c != expected) {
        return Err(VerifyError::DifferenceCensusFails { g: g as u32, count, expected });
    }
    Ok(Some(Census::Verified { count: expected }))
}

/// Paley type partial difference set check: `D = -D`, `|D| = (v-1)/2` and
/// every character value equal to `(-1 +- sqrt(v))/2` exactly.
pub fn verify_paley_pds(table: &PeriodTable, set: &ConnectionSet) -> Result<DifferenceSetVerdict, VerifyError> {
    let field = table.field();
    let v = field.q();
    if set.contains(0) || !set.is_symmetric() {
        return Err(VerifyError::NotSymmetric);
    }
    let k = set.size();
    if k != (v - 1) / 2 {
        return Err(VerifyError::SizeMismatch { expected: (v - 1) / 2, actual: k });
    }
    let pair = conference_pair(field.p(), field.f(), 1).ok_or(VerifyError::NoExactPair { p: field.p(), f: field.f(), sign: 1 })?;
    let spectrum = restricted_spectrum(table, set);
    check_pair(&spectrum, &pair)?;
    Ok(DifferenceSetVerdict {
        kind: DifferenceSetKind::PaleyType,
        v,
        k,
        lambda: (v - 5) / 4,
        mu: Some((v - 1) / 4),
        census: None,
        predicted: halve(&pair),
        spectrum,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmorphyWitness {
    pub i: usize,
    pub j: usize,
    pub values: Vec<ExactValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeReport {
    pub class_count: usize,
    pub valencies: Vec<u64>,
    /// `p[k][i][j]`, nontrivial relations only; `None` above the brute-force limit.
    pub intersection_numbers: Option<Vec<Vec<Vec<u64>>>>,
    /// Multiplicities of the common eigenspaces, in order of first appearance.
    pub multiplicities: Vec<u64>,
    pub pseudocyclic: bool,
    pub all_srg: bool,
    pub certificates: Vec<Option<SrgCertificate>>,
    pub amorphy_witness: Option<AmorphyWitness>,
}

/// Association scheme checks for a partition of `F_q^*` into symmetric
/// unions of cyclotomic classes.
pub fn verify_scheme(table: &PeriodTable, relations: &[ConnectionSet]) -> Result<SchemeReport, VerifyError> {
    let field = table.field();
    let q = field.q();
    if relations.is_empty() {
        return Err(VerifyError::NotPartition("no relations".into()));
    }
    const NONE: u16 = u16::MAX;
    let mut label = vec![NONE; q as usize];
    for (r, set) in relations.iter().enumerate() {
        if set.contains(0) {
            return Err(VerifyError::NotPartition(format!("relation {r} contains 0")));
        }
        for x in set.elements() {
            if label[x as usize] != NONE {
                return Err(VerifyError::NotPartition(format!("{x} lies in relations {} and {r}", label[x as usize])));
            }
            label[x as usize] = r as u16;
        }
    }
    if let Some(x) = (1..q as usize).find(|&x| label[x] == NONE) {
        return Err(VerifyError::NotPartition(format!("{x} is in no relation")));
    }
    if let Some(r) = relations.iter().position(|s| !s.is_symmetric()) {
        return Err(VerifyError::NotPartition(format!("relation {r} is not symmetric")));
    }

    let count = relations.len();
    let valencies: Vec<u64> = relations.iter().map(|s| s.size()).collect();
    let intersection_numbers = if q <= DIRECT_LIMIT {
        Some(intersection_numbers(field, &label, count, &valencies)?)
    } else {
        None
    };

    let spectra: Vec<Vec<SpectrumEntry>> = relations.iter().map(|s| restricted_spectrum(table, s)).collect();
    let certificates: Vec<Option<SrgCertificate>> =
        relations.iter().zip(&spectra).map(|(s, sp)| certificate_from_spectrum(q, s.size(), sp).ok()).collect();
    let all_srg = certificates.iter().all(Option::is_some);

    // characters grouped by their eigenvalue vector across all relations
    let mut groups: Vec<(Vec<CycIntValue>, u64)> = Vec::new();
    for a in 0..table.n() {
        let key: Vec<CycIntValue> = relations.iter().map(|s| char_sum(table, s.indices(), a)).collect();
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some(g) => g.1 += 1,
            None => groups.push((key, 1)),
        }
    }
    let class_size = table.setup().class_size();
    let multiplicities: Vec<u64> = groups.iter().map(|(_, c)| c * class_size).collect();
    let pseudocyclic = valencies.windows(2).all(|w| w[0] == w[1])
        && multiplicities.windows(2).all(|w| w[0] == w[1])
        && multiplicities.len() == count;

    let pairs: Vec<(usize, usize)> = (0..count).flat_map(|i| (i + 1..count).map(move |j| (i, j))).collect();
    let amorphy_witness = pairs
        .par_iter()
        .find_map_first(|&(i, j)| {
            let mut indices = relations[i].indices().to_vec();
            indices.extend_from_slice(relations[j].indices());
            let spectrum = spectrum_of_indices(table, &indices);
            (spectrum.len() > 2).then(|| AmorphyWitness { i, j, values: spectrum.into_iter().map(|e| e.value).collect() })
        });

    Ok(SchemeReport {
        class_count: count,
        valencies,
        intersection_numbers,
        multiplicities,
        pseudocyclic,
        all_srg,
        certificates,
        amorphy_witness,
    })
}

fn intersection_numbers(
    field: &FieldTable,
    label: &[u16],
    count: usize,
    valencies: &[u64],
) -> Result<Vec<Vec<Vec<u64>>>, VerifyError> {
    let q = field.q() as u32;
    // counts[g][i * count + j] = #{d in R_i : g - d in R_j}
    let per_point: Vec<Vec<u64>> = (1..q)
        .into_par_iter()
        .map(|g| {
            let mut counts = vec![0u64; count * count];
            for d in 1..q {
                let e = field.sub(g, d);
                if e != 0 {
                    counts[label[d as usize] as usize * count + label[e as usize] as usize] += 1;
                }
            }
            counts
        })
        .collect();
    let mut tensor: Vec<Option<Vec<u64>>> = vec![None; count];
    for (idx, counts) in per_point.into_iter().enumerate() {
        let k = label[idx + 1] as usize;
        match &tensor[k] {
            None => tensor[k] = Some(counts),
            Some(existing) if *existing == counts => {}
            Some(existing) => {
                let pos = existing.iter().zip(&counts).position(|(a, b)| a != b).unwrap();
                return Err(VerifyError::AxiomFails { i: pos / count, j: pos % count, k });
            }
        }
    }
    let tensor: Vec<Vec<Vec<u64>>> = tensor
        .into_iter()
        .map(|t| t.expect("every relation is nonempty").chunks(count).map(<[u64]>::to_vec).collect())
        .collect();
    for (k, table) in tensor.iter().enumerate() {
        for (i, row) in table.iter().enumerate() {
            // d = g itself is the one element of R_i whose partner is 0
            if row.iter().sum::<u64>() + u64::from(i == k) != valencies[i] {
                return Err(VerifyError::AxiomFails { i, j: count, k });
            }
        }
    }
    Ok(tensor)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cyclotomy::{build_period_table, CycSetup};
    use crate::gf;

    fn setup(p: u64, f: u32, n: u64) -> (PeriodTable, CycSetup) {
        let field = Arc::new(gf::field(p, f).unwrap());
        let setup = CycSetup::new(field, n).unwrap();
        (build_period_table(&setup), setup)
    }

    #[test]
    fn perfect_matching_is_degenerate() {
        let (table, setup) = setup(2, 4, 15);
        let set = ConnectionSet::from_indices(&setup, [0]);
        let spectral = verify_srg(&table, &set).unwrap();
        assert_eq!((spectral.v, spectral.k, spectral.lambda, spectral.mu), (16, 1, 0, 0));
        assert!(!spectral.connected);
        assert_eq!((spectral.m_r, spectral.m_s), (7, 8));
        let direct = verify_srg_direct(table.field(), &set).unwrap();
        assert!(direct.agrees_with(&spectral));
    }

    #[test]
    fn complete_graph() {
        let (table, setup) = setup(2, 4, 15);
        let set = ConnectionSet::from_indices(&setup, 0..15);
        let spectrum = restricted_spectrum(&table, &set);
        assert_eq!(spectrum.len(), 1);
        assert_eq!((spectrum[0].value.to_string(), spectrum[0].multiplicity), ("-1".to_string(), 15));
        assert!(matches!(verify_srg(&table, &set), Err(VerifyError::NotTwoValued { count: 1, .. })));
        assert!(matches!(verify_srg_direct(table.field(), &set), Err(VerifyError::NotSrg(_))));
    }

    #[test]
    fn paley_thirteen() {
        let (table, setup) = setup(13, 1, 2);
        let squares = ConnectionSet::from_indices(&setup, [0]);
        let direct = verify_srg_direct(table.field(), &squares).unwrap();
        assert_eq!((direct.v, direct.k, direct.lambda, direct.mu), (13, 6, 2, 3));
        let spectral = verify_srg(&table, &squares).unwrap();
        assert!(spectral.agrees_with(&direct), "{spectral:?} vs {direct:?}");
        assert_eq!(spectral.r.to_string(), "(-1+sqrt(13))/2");
        let pds = verify_paley_pds(&table, &squares).unwrap();
        assert_eq!(pds.predicted[0].to_string(), "(-1+sqrt(13))/2");
    }

    #[test]
    fn paley_seven_is_skew() {
        let (table, setup) = setup(7, 1, 2);
        let squares = ConnectionSet::from_indices(&setup, [0]);
        let verdict = verify_skew_hds(&table, &squares).unwrap();
        assert_eq!((verdict.v, verdict.k, verdict.lambda), (7, 3, 1));
        assert_eq!(verdict.census, Some(Census::Verified { count: 1 }));
        assert!(matches!(verify_srg(&table, &squares), Err(VerifyError::NotSymmetric)));
    }

    #[test]
    fn full_set_is_not_paley() {
        let (table, setup) = setup(13, 1, 2);
        let all = ConnectionSet::from_indices(&setup, [0, 1]);
        assert!(verify_paley_pds(&table, &all).is_err());
    }

    #[test]
    fn order_fifteen_scheme() {
        let (table, setup) = setup(2, 4, 15);
        let relations: Vec<ConnectionSet> = (0..15).map(|k| ConnectionSet::from_indices(&setup, [k])).collect();
        let report = verify_scheme(&table, &relations).unwrap();
        assert_eq!(report.class_count, 15);
        assert!(report.pseudocyclic);
        assert!(report.all_srg);
        let tensor = report.intersection_numbers.unwrap();
        assert_eq!(tensor.len(), 15);
        assert!(matches!(verify_scheme(&table, &[]), Err(VerifyError::NotPartition(_))));
        assert!(matches!(verify_scheme(&table, &relations[1..]), Err(VerifyError::NotPartition(_))));
    }

    #[test]
    fn direct_limit() {
        let (table, setup) = setup(3, 10, 2);
        let set = ConnectionSet::from_indices(&setup, [0]);
        assert!(matches!(verify_srg_direct(table.field(), &set), Err(VerifyError::TooLarge { .. })));
    }
}
