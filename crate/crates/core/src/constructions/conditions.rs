use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{
    big_pow, class_number, euler_phi, is_prime, mult_order, pow_mod, solve_norm_equation, NormMode, NormSolution,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// Per-hypothesis outcome of a condition check, plus the derived quantities
/// that later stages need.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub conditions: Vec<Condition>,
    pub f: Option<u64>,
    pub h: Option<u64>,
    #[serde(serialize_with = "crate::serde_big::opt_int")]
    pub b: Option<BigInt>,
    #[serde(serialize_with = "crate::serde_big::opt_int")]
    pub c: Option<BigInt>,
}

impl ConditionReport {
    fn push(&mut self, name: &str, holds: bool, detail: String) {
        self.conditions.push(Condition { name: name.to_string(), holds, detail });
    }

    pub fn all_hold(&self) -> bool {
        !self.conditions.is_empty() && self.conditions.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<String> {
        self.conditions.iter().filter(|c| !c.holds).map(|c| format!("{}: {}", c.name, c.detail)).collect()
    }

    fn record_norm(&mut self, sol: &Result<NormSolution, crate::arith::ArithError>) {
        match sol {
            Ok(sol) => {
                self.push(
                    "unit_solution",
                    sol.is_unit_pair(),
                    format!("4*{}^{} = b^2 + {}*c^2 with b = {}, c = {}", sol.p, sol.h, sol.d, sol.b, sol.c),
                );
                self.b = Some(sol.b.clone());
                self.c = Some(sol.c.clone());
            }
            Err(e) => self.push("unit_solution", false, e.to_string()),
        }
    }
}

fn order_condition(report: &mut ConditionReport, name: &str, p: u64, modulus: Option<u64>) {
    match modulus {
        None => report.push(name, false, "modulus overflows 64 bits".into()),
        Some(md) => match mult_order(p, md) {
            Ok(ord) => {
                let phi = euler_phi(md);
                report.push(name, ord == phi, format!("ord_{md}({p}) = {ord}, phi({md}) = {phi}"));
            }
            Err(e) => report.push(name, false, e.to_string()),
        },
    }
}

/// Returns `f` when `ord_N(p) = phi(N)/2` holds.
fn index_condition(report: &mut ConditionReport, p: u64, big_n: Option<u64>) -> Option<u64> {
    let Some(big_n) = big_n else {
        report.push("index_two", false, "N overflows 64 bits".into());
        return None;
    };
    match mult_order(p, big_n) {
        Ok(ord) => {
            let phi = euler_phi(big_n);
            let minus_one_in = ord % 2 == 0 && pow_mod(p, ord / 2, big_n) == big_n - 1;
            let holds = 2 * ord == phi && !minus_one_in;
            report.push(
                "index_two",
                holds,
                format!("ord_{big_n}({p}) = {ord}, phi(N)/2 = {}, -1 in <p>: {minus_one_in}", phi / 2),
            );
            Some(phi / 2)
        }
        Err(e) => {
            report.push("index_two", false, e.to_string());
            None
        }
    }
}

fn mod_big(x: &BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    let r = ((x % &m) + &m) % &m;
    u64::try_from(r).expect("residue below modulus")
}

/// Hypotheses under which the `N = p1^m p2^n` construction is strongly regular.
pub fn check_conditions_a(p: u64, p1: u64, p2: u64, m: u32, n: u32) -> ConditionReport {
    let mut report = ConditionReport::default();
    let primes = is_prime(p) && is_prime(p1) && is_prime(p2) && p != p1 && p != p2 && p1 != p2;
    report.push("primes", primes, format!("p = {p}, p1 = {p1}, p2 = {p2} distinct primes"));
    report.push(
        "residues_mod_4",
        p1 % 4 == 1 && p2 % 4 == 3,
        format!("p1 = {} (mod 4), p2 = {} (mod 4)", p1 % 4, p2 % 4),
    );
    report.push("exponents_positive", m > 0 && n > 0, format!("m = {m}, n = {n}"));
    if !primes || m == 0 || n == 0 {
        return report;
    }
    let pm = p1.checked_pow(m);
    let pn = p2.checked_pow(n);
    order_condition(&mut report, "order_mod_p1m", p, pm);
    order_condition(&mut report, "order_mod_p2n", p, pn);
    let f = index_condition(&mut report, p, pm.zip(pn).and_then(|(a, b)| a.checked_mul(b)));
    report.f = f;

    let d = p1 * p2;
    let h = match class_number(d) {
        Ok(h) => h,
        Err(e) => {
            report.push("class_number_even", false, e.to_string());
            return report;
        }
    };
    report.h = Some(h);
    report.push("class_number_even", h % 2 == 0, format!("h(-{d}) = {h}"));
    let Some(f) = f else { return report };
    let sol = solve_norm_equation(p, h, d, NormMode::TwoPrimes, f);
    report.record_norm(&sol);

    let Ok(sol) = sol else { return report };
    if h % 2 == 0 {
        let two_x = BigInt::from(2) * big_pow(p, h / 2);
        let holds = sol.is_unit_pair()
            && BigInt::from(p1) == &two_x + &sol.b
            && BigInt::from(p2) == &two_x - &sol.b;
        report.push(
            "prime_relation",
            holds,
            format!("b = {}, 2p^(h/2) + b = {}, 2p^(h/2) - b = {}", sol.b, &two_x + &sol.b, &two_x - &sol.b),
        );
        // the sign of b again, from a congruence that does not involve m or n
        let e = (p1 - 1) * (p2 - 1) / 4;
        let lhs = mod_big(&(&sol.b * BigInt::from(pow_mod(p, e, d))), d);
        let rhs = (2 * pow_mod(p, h / 2, d)) % d;
        report.push(
            "sign_congruence",
            lhs == rhs,
            format!("b*p^{e} = {lhs}, 2p^(h/2) = {rhs} (mod {d})"),
        );
    } else {
        report.push("prime_relation", false, format!("h = {h} is odd"));
    }
    report
}

/// Hypotheses under which the `N = 2 p1^m` construction gives a skew Hadamard
/// or Paley type set.
pub fn check_conditions_b(p: u64, p1: u64, m: u32) -> ConditionReport {
    let mut report = ConditionReport::default();
    let primes = is_prime(p) && is_prime(p1) && p != p1 && p != 2;
    report.push("primes", primes, format!("p = {p}, p1 = {p1} distinct odd primes"));
    report.push(
        "residue_mod_8",
        p1 % 8 == 3 && p1 != 3,
        format!("p1 = {} (mod 8), p1 != 3", p1 % 8),
    );
    report.push("exponents_positive", m > 0, format!("m = {m}"));
    if !primes || m == 0 {
        return report;
    }
    let h = match class_number(p1) {
        Ok(h) => h,
        Err(e) => {
            report.push("class_number_relation", false, e.to_string());
            return report;
        }
    };
    report.h = Some(h);
    let four_ph = BigInt::from(4) * big_pow(p, h);
    report.push(
        "class_number_relation",
        BigInt::from(1 + p1) == four_ph,
        format!("h(-{p1}) = {h}, 1 + p1 = {}, 4p^h = {four_ph}", 1 + p1),
    );
    let big_n = p1.checked_pow(m).and_then(|x| x.checked_mul(2));
    let f = index_condition(&mut report, p, big_n);
    report.f = f;

    let Some(f) = f else { return report };
    let sol = solve_norm_equation(p, h, p1, NormMode::OnePrime, f);
    report.record_norm(&sol);
    if let Ok(sol) = sol {
        if (p1 - 1) >= 2 * h && (p1 - 1 - 2 * h) % 4 == 0 {
            let e = (p1 - 1 - 2 * h) / 4;
            let lhs = mod_big(&(&sol.b * BigInt::from(pow_mod(p, e, p1))), p1);
            report.push(
                "sign_congruence",
                lhs == p1 - 2,
                format!("b*p^{e} = {lhs} (mod {p1}), expected -2"),
            );
        } else {
            report.push("sign_congruence", false, format!("(p1 - 1 - 2h)/4 is not an integer for h = {h}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_two_seeds() {
        for (p, p1, p2, h, b) in [(2, 5, 3, 2, 1), (3, 5, 7, 2, -1), (3, 17, 19, 4, -1)] {
            let r = check_conditions_a(p, p1, p2, 1, 1);
            assert!(r.all_hold(), "{r:#?}");
            assert_eq!(r.h, Some(h));
            assert_eq!(r.b, Some(BigInt::from(b)));
        }
    }

    #[test]
    fn thirteen_three_fails_prime_relation() {
        let r = check_conditions_a(2, 13, 3, 1, 1);
        assert!(!r.all_hold());
        assert_eq!(r.h, Some(4));
        assert!(!r.get("prime_relation").unwrap().holds);
        assert!(!r.get("unit_solution").unwrap().holds);
        assert!(r.get("index_two").unwrap().holds);
        assert_eq!(r.b, Some(BigInt::from(5)));
    }

    #[test]
    fn one_prime_rows() {
        for (p, p1, h) in [(5, 19, 1), (3, 107, 3), (3, 11, 1)] {
            let r = check_conditions_b(p, p1, 1);
            assert!(r.all_hold(), "{r:#?}");
            assert_eq!(r.h, Some(h));
            assert_eq!(r.b, Some(BigInt::from(1)));
        }
        let r = check_conditions_b(3, 11, 2);
        assert!(!r.get("index_two").unwrap().holds);
        assert!(r.get("sign_congruence").unwrap().holds);
    }

    #[test]
    fn garbage_inputs_report_instead_of_panicking() {
        assert!(!check_conditions_a(4, 5, 3, 1, 1).all_hold());
        assert!(!check_conditions_a(2, 5, 3, 0, 1).all_hold());
        assert!(!check_conditions_b(2, 11, 1).all_hold());
        assert!(!check_conditions_b(3, 7, 1).all_hold());
        assert!(!check_conditions_a(3, 5, 7, 40, 40).all_hold());
    }
}
