//! Elementary and quadratic number theory.
//!
//! Moduli that index cyclotomic classes stay well inside `u64`, so orders and
//! totients use machine words with `u128` products. Prime powers such as
//! `p^h` and the norm equation `4p^h = b^2 + D c^2` are carried in [`BigInt`]
//! because they are checked for parameter sets whose fields are never built.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: u64, n: u64 },
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("4*{p}^{h} = b^2 + {d}*c^2 has no integer solution")]
    NoSolution { p: u64, h: u64, d: u64 },
    #[error("every solution of 4*{p}^{h} = b^2 + {d}*c^2 has b or c divisible by {p}")]
    PCongruenceFails { p: u64, h: u64, d: u64 },
    #[error("no sign of b satisfies b*{p}^(({f}-{h})/2) = {target} (mod {d})")]
    SignCongruenceFails { p: u64, h: u64, d: u64, f: u64, target: i64 },
    #[error("exponent (f - h)/2 is not a nonnegative integer for f = {f}, h = {h}")]
    BadExponent { f: u64, h: u64 },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Prime factorization by trial division, smallest prime first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (prime, _)| acc / prime * (prime - 1))
}

/// Multiplicative order of `a` modulo `n`.
///
/// Starts from `phi(n)` and strips prime factors while the power stays 1.
pub fn mult_order(a: u64, n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroModulus);
    }
    if n == 1 {
        return Ok(1);
    }
    let a = a % n;
    if gcd(a, n) != 1 {
        return Err(ArithError::NotCoprime { a, n });
    }
    let phi = euler_phi(n);
    let mut order = phi;
    for (prime, _) in factorize(phi) {
        while order % prime == 0 && pow_mod(a, order / prime, n) == 1 {
            order /= prime;
        }
    }
    Ok(order)
}

/// Index of the subgroup generated by `p` in the unit group mod `n`.
pub fn subgroup_index(p: u64, n: u64) -> Result<u64, ArithError> {
    let ord = mult_order(p, n)?;
    Ok(euler_phi(n) / ord)
}

/// Deterministic Miller-Rabin; the fixed base set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Legendre symbol `(a/p)` for an odd prime `p`: 0, 1 or -1.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Class number of `Q(sqrt(-d))` by counting reduced primitive forms.
///
/// The discriminant is `-d` for `d = 3 (mod 4)` and `-4d` otherwise. A form
/// `(a, b, c)` is reduced when `|b| <= a <= c`, with `b >= 0` whenever
/// `|b| = a` or `a = c`.
pub fn class_number(d: u64) -> Result<u64, ArithError> {
    Ok(class_number_at_most(d, u64::MAX)?.expect("unbounded count"))
}

/// [`class_number`], giving up with `None` as soon as more than `limit`
/// reduced forms have been found.
pub fn class_number_at_most(d: u64, limit: u64) -> Result<Option<u64>, ArithError> {
    if !is_squarefree(d) {
        return Err(ArithError::NotSquarefree(d));
    }
    let disc_abs: u64 = if d % 4 == 3 { d } else { 4 * d };
    let parity = disc_abs % 2;
    let mut count = 0u64;
    let mut a = 1u64;
    // reduced forms satisfy 3a^2 <= |disc|
    while 3 * a * a <= disc_abs {
        let mut b = parity;
        while b <= a {
            let numer = b * b + disc_abs;
            if numer % (4 * a) == 0 {
                let c = numer / (4 * a);
                if c >= a && gcd(gcd(a, b), c) == 1 {
                    count += 1;
                    // (a, -b, c) is a distinct reduced form unless on the boundary
                    if b != 0 && b != a && a != c {
                        count += 1;
                    }
                    if count > limit {
                        return Ok(None);
                    }
                }
            }
            b += 2;
        }
        a += 1;
    }
    Ok(Some(count))
}

pub fn big_pow(p: u64, e: u64) -> BigInt {
    let e = u32::try_from(e).expect("exponent fits in u32");
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Which governing congruence fixes the sign of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NormMode {
    /// `b p^((f-h)/2) = 2 (mod p1 p2)`
    TwoPrimes,
    /// `b p^((f-h)/2) = -2 (mod p1)`
    OnePrime,
}

impl NormMode {
    pub fn target(self) -> i64 {
        match self {
            NormMode::TwoPrimes => 2,
            NormMode::OnePrime => -2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormSolution {
    #[serde(serialize_with = "crate::serde_big::int")]
    pub b: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub c: BigInt,
    pub p: u64,
    pub h: u64,
    pub d: u64,
}

impl NormSolution {
    /// `4p^h - b^2 - D c^2`, zero for every valid solution.
    pub fn residual(&self) -> BigInt {
        BigInt::from(4) * big_pow(self.p, self.h)
            - &self.b * &self.b
            - BigInt::from(self.d) * &self.c * &self.c
    }

    pub fn is_unit_pair(&self) -> bool {
        self.b.abs().is_one() && self.c.abs().is_one()
    }
}

/// Solves `4p^h = b^2 + D c^2` with the sign of `b` normalized by the
/// congruence selected by `mode`; `c` is returned positive.
pub fn solve_norm_equation(
    p: u64,
    h: u64,
    d: u64,
    mode: NormMode,
    f: u64,
) -> Result<NormSolution, ArithError> {
    if f < h || (f - h) % 2 != 0 {
        return Err(ArithError::BadExponent { f, h });
    }
    if d == 0 {
        return Err(ArithError::ZeroModulus);
    }
    let scale = pow_mod(p, (f - h) / 2, d);
    let target = mode.target().rem_euclid(d as i64) as u64;
    let (coprime, any_solution) = norm_solutions(p, h, d);
    for (b0, c) in &coprime {
        let b_mod = (b0 % BigInt::from(d)).to_u64().expect("residue fits");
        let plus = mul_mod(b_mod, scale, d);
        let minus = (d - plus) % d;
        let b = if plus == target {
            b0.clone()
        } else if minus == target {
            -b0.clone()
        } else {
            continue;
        };
        return Ok(NormSolution { b, c: c.clone(), p, h, d });
    }
    if !any_solution {
        Err(ArithError::NoSolution { p, h, d })
    } else if coprime.is_empty() {
        Err(ArithError::PCongruenceFails { p, h, d })
    } else {
        Err(ArithError::SignCongruenceFails { p, h, d, f, target: mode.target() })
    }
}

/// Largest `c` range scanned directly before switching to Cornacchia.
const DIRECT_SCAN: u64 = 1 << 16;

/// Solutions `(b, c)` of `4p^h = b^2 + D c^2` with `b >= 0`, `c > 0` and
/// neither divisible by `p`, ordered by `c`; plus whether any solution exists.
fn norm_solutions(p: u64, h: u64, d: u64) -> (Vec<(BigInt, BigInt)>, bool) {
    let four_ph = BigInt::from(4) * big_pow(p, h);
    let span = (&four_ph / BigInt::from(d)).sqrt();
    if span <= BigInt::from(DIRECT_SCAN) || d < 5 || d % p == 0 || p == 2 && h < 2 {
        return norm_solutions_scan(p, h, d);
    }
    let coprime = norm_solutions_cornacchia(p, h, d);
    // a solution divisible by p is p times a solution for h - 2
    let any = !coprime.is_empty() || h >= 2 && norm_solutions(p, h - 2, d).1;
    (coprime, any)
}

fn norm_solutions_scan(p: u64, h: u64, d: u64) -> (Vec<(BigInt, BigInt)>, bool) {
    let four_ph = BigInt::from(4) * big_pow(p, h);
    let big_d = BigInt::from(d);
    let p_big = BigInt::from(p);
    let mut out = Vec::new();
    let mut any = false;
    let mut c = BigInt::one();
    while &big_d * &c * &c <= four_ph {
        let rem = &four_ph - &big_d * &c * &c;
        let b0 = rem.sqrt();
        if &b0 * &b0 == rem {
            any = true;
            if !(&b0 % &p_big).is_zero() && !(&c % &p_big).is_zero() {
                out.push((b0, c.clone()));
            }
        }
        c += 1;
    }
    (out, any)
}

/// Requires `p` prime, `p` not dividing `d`, `d >= 5`.
fn norm_solutions_cornacchia(p: u64, h: u64, d: u64) -> Vec<(BigInt, BigInt)> {
    let mut found = BTreeSet::new();
    let mut collect = |m: &BigInt, roots: Vec<BigInt>, factor: u32| {
        for r in roots {
            if let Some((x, y)) = cornacchia(m, d, &r) {
                found.insert((y * factor, x * factor));
            }
        }
    };
    if p == 2 {
        let m = big_pow(2, h + 2);
        collect(&m, sqrt_neg_d_mod_two_power(d, h as u32 + 2), 1);
    } else if let Some(r) = sqrt_mod_prime((p - d % p) % p, p) {
        let ph = big_pow(p, h);
        let r = hensel_lift(BigInt::from(r), d, p, &ph);
        let prime_roots = [r.clone(), (&ph - &r) % &ph];
        collect(&ph, prime_roots.to_vec(), 2);
        let m = BigInt::from(4) * &ph;
        let mut roots = Vec::new();
        for r2 in (0u64..4).filter(|r2| (r2 * r2 + d) % 4 == 0) {
            for rp in &prime_roots {
                roots.push(crt_four(rp, &ph, r2));
            }
        }
        collect(&m, roots, 1);
    }
    let p_big = BigInt::from(p);
    found
        .into_iter()
        .map(|(c, b)| (b, c))
        .filter(|(b, c)| !(b % &p_big).is_zero() && !(c % &p_big).is_zero())
        .collect()
}

/// First Euclidean remainder of `(m, r)` below `sqrt(m)`, if it yields
/// `x^2 + d y^2 = m` with `y > 0`.
fn cornacchia(m: &BigInt, d: u64, r: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut a, mut b) = (m.clone(), r.clone());
    while &b * &b >= *m {
        let next = &a % &b;
        a = b;
        b = next;
    }
    let rest = m - &b * &b;
    let big_d = BigInt::from(d);
    if !(&rest % &big_d).is_zero() {
        return None;
    }
    let y2 = rest / big_d;
    let y = y2.sqrt();
    (y.is_positive() && &y * &y == y2).then_some((b, y))
}

/// Square root of `a` modulo the odd prime `p` (Tonelli-Shanks).
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Lifts a root of `r^2 = -d (mod p)` to a root modulo `ph = p^h` by Newton steps.
fn hensel_lift(mut r: BigInt, d: u64, p: u64, ph: &BigInt) -> BigInt {
    let big_d = BigInt::from(d);
    let mut modulus = BigInt::from(p);
    while modulus < *ph {
        modulus = (&modulus * &modulus).min(ph.clone());
        let two_r = (BigInt::from(2) * &r).mod_floor(&modulus);
        let inv = two_r.extended_gcd(&modulus).x.mod_floor(&modulus);
        r = (&r - (&r * &r + &big_d) * inv).mod_floor(&modulus);
    }
    r
}

/// Every `r` modulo `2^k` with `r^2 = -d`, for odd `d`.
fn sqrt_neg_d_mod_two_power(d: u64, k: u32) -> Vec<BigInt> {
    let modulus = BigInt::one() << k;
    let target = (-BigInt::from(d)).mod_floor(&modulus);
    if k < 3 {
        return (0u32..1 << k).map(BigInt::from).filter(|r| (r * r).mod_floor(&modulus) == target).collect();
    }
    if d % 8 != 7 {
        return Vec::new();
    }
    let mut r = BigInt::one();
    for j in 3..k {
        let mj1 = BigInt::one() << (j + 1);
        if (&r * &r + BigInt::from(d)).mod_floor(&mj1) != BigInt::zero() {
            r += BigInt::one() << (j - 1);
        }
    }
    let half = BigInt::one() << (k - 1);
    let base = [r.clone(), (&modulus - &r).mod_floor(&modulus)];
    base.iter().flat_map(|r| [r.clone(), (r + &half).mod_floor(&modulus)]).collect()
}

/// The residue modulo `4 ph` congruent to `rp` mod `ph` and `r2` mod 4, `ph` odd.
fn crt_four(rp: &BigInt, ph: &BigInt, r2: u64) -> BigInt {
    let ph_mod4 = (ph % 4u32).to_u64().expect("small");
    let rp_mod4 = (rp % 4u32).to_u64().expect("small");
    // ph is odd, hence its own inverse modulo 4
    let t = ((r2 + 4 - rp_mod4) * ph_mod4) % 4;
    rp + ph * t
}

/// Sign of a big integer as -1, 0 or 1.
pub fn signum(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
