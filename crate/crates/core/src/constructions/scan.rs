use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::conditions::{check_conditions_a, check_conditions_b};
use crate::arith::{class_number_at_most, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanRowA {
    pub p: u64,
    pub p1: u64,
    pub p2: u64,
    pub h: u64,
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanRowB {
    pub p: u64,
    pub p1: u64,
    pub h: u64,
    pub b: i64,
}

/// Prime powers `X = p^e` with `2X + 1 <= bound`, smallest first.
fn prime_powers(limit: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let mut x = p;
        let mut e = 1;
        while x <= limit {
            out.push((p, e, x));
            match x.checked_mul(p) {
                Some(next) => x = next,
                None => break,
            }
            e += 1;
        }
    }
    out.sort_by_key(|&(_, _, x)| x);
    out
}

fn small_b(b: &Option<BigInt>) -> Option<i64> {
    b.as_ref().and_then(|b| i64::try_from(b).ok())
}

/// All `(p, p1, p2)` with `p1 = 2p^(h/2) + b`, `p2 = 2p^(h/2) - b`, `p1 <= bound`
/// satisfying every strongly regular hypothesis at exponents `(m, n)`.
pub fn scan_a(bound: u64, m: u32, n: u32) -> Vec<ScanRowA> {
    let mut rows: Vec<ScanRowA> = prime_powers(bound / 2 + 1)
        .into_par_iter()
        .flat_map_iter(|(p, e, x)| {
            [1i64, -1].into_iter().filter_map(move |b| {
                let p1 = (2 * x as i64 + b) as u64;
                let p2 = (2 * x as i64 - b) as u64;
                if p1 > bound || p1 % 4 != 1 || !is_prime(p1) || !is_prime(p2) {
                    return None;
                }
                // p1 + p2 = 4p^(h/2) pins h = 2e
                if class_number_at_most(p1 * p2, 2 * e as u64).ok()?.is_none() {
                    return None;
                }
                let report = check_conditions_a(p, p1, p2, m, n);
                let h = report.h?;
                (report.all_hold() && h == 2 * e as u64 && small_b(&report.b) == Some(b))
                    .then_some(ScanRowA { p, p1, p2, h, b })
            })
        })
        .collect();
    rows.sort();
    rows
}

/// All `(p, p1)` with `p1 = 4p^h - 1 <= bound` prime satisfying every
/// hypothesis of the `N = 2 p1^m` construction.
pub fn scan_b(bound: u64, m: u32) -> Vec<ScanRowB> {
    let mut rows: Vec<ScanRowB> = prime_powers(bound / 4 + 1)
        .into_par_iter()
        .filter_map(|(p, e, x)| {
            let p1 = (4 * x).checked_sub(1)?;
            if p1 > bound || !is_prime(p1) || p1 % 8 != 3 || p1 == 3 {
                return None;
            }
            if class_number_at_most(p1, e as u64).ok()?.is_none() {
                return None;
            }
            let report = check_conditions_b(p, p1, m);
            let h = report.h?;
            (report.all_hold() && h == e as u64).then(|| ScanRowB { p, p1, h, b: small_b(&report.b).unwrap() })
        })
        .collect();
    rows.sort();
    rows
}
