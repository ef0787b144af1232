//! Finite fields `GF(p^f)` as complete exponent, logarithm and trace tables.
//!
//! Elements are packed base-`p` integers: the coefficient of `x^i` is digit
//! `i`. The primitive element is the residue of `x` modulo a deterministic
//! modulus, so the same `(p, f)` always yields the same class labeling.

use std::io::{self, Read, Write};
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize, is_prime};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;

const CACHE_MAGIC: &[u8; 5] = b"CYGF1";

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{p}^{f} exceeds the table budget of 2^31 elements")]
    SizeExceeded { p: u64, f: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("powers of x repeat after {period} steps, expected {expected}")]
    NotPrimitive { period: u64, expected: u64 },
    #[error("element {x} is outside [0, {q})")]
    OutOfRange { x: u64, q: u64 },
    #[error("malformed field cache: {0}")]
    CacheFormat(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    /// Monic modulus, coefficients low degree first (length `f + 1`).
    pub modulus: Vec<u32>,
    pub q: u64,
}

impl FieldSpec {
    pub fn order(p: u64, f: u32) -> Result<u64, FieldError> {
        if f == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..f {
            q = q.checked_mul(p).filter(|&q| q <= MAX_ORDER).ok_or(FieldError::SizeExceeded { p, f })?;
        }
        Ok(q)
    }

    /// Human-readable modulus such as `x^4 + x + 1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

// Dense polynomials over Z_p, low degree first, no trailing zeros.
mod poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        crate::arith::pow_mod(a, p - 2, p)
    }

    pub fn rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
        trim(&mut a);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while a.len() > dm {
            let top = a.len() - 1;
            let factor = a[top] * lead_inv % p;
            if factor != 0 {
                let shift = top - dm;
                for (i, &mc) in m.iter().enumerate() {
                    a[shift + i] = (a[shift + i] + (p - factor) * mc) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(out, m, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = rem(vec![1], m, p);
        let mut b = rem(base.to_vec(), m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }
}

fn modulus_from_index(index: u64, p: u64, f: u32) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(f as usize + 1);
    let mut rest = index;
    for _ in 0..f {
        coeffs.push(rest % p);
        rest /= p;
    }
    coeffs.push(1);
    coeffs
}

/// Ben-Or test: no irreducible factor of degree `k <= f/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let p = p as u64;
    let m: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    let f = m.len() - 1;
    let x = vec![0, 1];
    let mut power = poly::rem(x.clone(), &m, p);
    for _ in 1..=f / 2 {
        power = poly::pow_mod(&power, p, &m, p);
        let g = poly::gcd(m.clone(), poly::sub(&power, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn root_is_primitive(m: &[u64], p: u64, q: u64, prime_factors: &[u64]) -> bool {
    let x = vec![0, 1];
    let one = poly::rem(vec![1], m, p);
    if poly::pow_mod(&x, q - 1, m, p) != one {
        return false;
    }
    prime_factors.iter().all(|&r| poly::pow_mod(&x, (q - 1) / r, m, p) != one)
}

/// Smallest primitive monic modulus of degree `f` over `Z_p`, ordering
/// candidates by the packed base-`p` value of their lower coefficients.
pub fn find_modulus(p: u64, f: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let q = FieldSpec::order(p, f)?;
    let prime_factors: Vec<u64> = factorize(q - 1).into_iter().map(|(r, _)| r).collect();
    for index in 0..q {
        let m = modulus_from_index(index, p, f);
        if m[0] == 0 && f > 1 {
            continue;
        }
        if root_is_primitive(&m, p, q, &prime_factors) {
            let modulus: Vec<u32> = m.iter().map(|&c| c as u32).collect();
            debug_assert!(is_irreducible(&modulus, p as u32));
            return Ok(FieldSpec { p: p as u32, f, modulus, q });
        }
    }
    unreachable!("every finite field has a primitive element")
}

#[derive(Debug, Clone)]
pub struct FieldTable {
    spec: FieldSpec,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

const LOG_ZERO: u32 = u32::MAX;

impl FieldTable {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn f(&self) -> u32 {
        self.spec.f
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    pub fn trace_table(&self) -> &[u32] {
        &self.trace
    }

    /// `gamma^a` for any exponent.
    #[inline]
    pub fn exp(&self, a: u64) -> u32 {
        self.exp[(a % (self.q() - 1)) as usize]
    }

    /// Discrete logarithm; `None` for zero.
    #[inline]
    pub fn log(&self, x: u32) -> Option<u32> {
        match self.log[x as usize] {
            LOG_ZERO => None,
            l => Some(l),
        }
    }

    pub fn trace(&self, x: u64) -> Result<u32, FieldError> {
        if x >= self.q() {
            return Err(FieldError::OutOfRange { x, q: self.q() });
        }
        Ok(self.trace[x as usize])
    }

    #[inline]
    pub fn trace_unchecked(&self, x: u32) -> u32 {
        self.trace[x as usize]
    }

    pub fn digits(&self, mut x: u32) -> Vec<u32> {
        let p = self.p();
        (0..self.f())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn pack(&self, digits: &[u32]) -> u32 {
        let p = self.p();
        digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.p() == 2 {
            return x ^ y;
        }
        let p = self.p();
        let (mut x, mut y) = (x, y);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.f() {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.p() == 2 {
            return x;
        }
        let p = self.p();
        let mut x = x;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.f() {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    /// Multiplication by polynomial product and reduction, independent of
    /// the exponent and logarithm tables.
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p() as u64;
        let m: Vec<u64> = self.spec.modulus.iter().map(|&c| c as u64).collect();
        let a: Vec<u64> = self.digits(x).into_iter().map(u64::from).collect();
        let b: Vec<u64> = self.digits(y).into_iter().map(u64::from).collect();
        let mut r = poly::mul_mod(&a, &b, &m, p);
        r.resize(self.f() as usize, 0);
        let digits: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
        self.pack(&digits)
    }

    /// Exponent `a` with `-gamma^0 = gamma^a`: `(q-1)/2` for odd `p`, else 0.
    pub fn minus_one_log(&self) -> u64 {
        if self.p() == 2 {
            0
        } else {
            (self.q() - 1) / 2
        }
    }

    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<(), FieldError> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&u64::from(self.spec.p).to_le_bytes())?;
        w.write_all(&u64::from(self.spec.f).to_le_bytes())?;
        for &c in &self.spec.modulus {
            w.write_all(&u64::from(c).to_le_bytes())?;
        }
        w.write_all(&self.spec.q.to_le_bytes())?;
        let mut buf = Vec::with_capacity(4 * (self.exp.len() + self.trace.len()));
        for &e in &self.exp {
            buf.extend_from_slice(&e.to_le_bytes());
        }
        for &t in &self.trace {
            buf.extend_from_slice(&t.to_le_bytes());
        }
        w.write_all(&buf)?;
        Ok(())
    }

    pub fn read_cache<R: Read>(mut r: R) -> Result<FieldTable, FieldError> {
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(FieldError::CacheFormat("bad magic".into()));
        }
        let read_u64 = |r: &mut R| -> Result<u64, FieldError> {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            Ok(u64::from_le_bytes(b))
        };
        let p = read_u64(&mut r)?;
        let f = read_u64(&mut r)?;
        if f == 0 || f > 64 || !is_prime(p) {
            return Err(FieldError::CacheFormat(format!("bad header p={p} f={f}")));
        }
        let modulus = (0..=f)
            .map(|_| read_u64(&mut r).map(|c| c as u32))
            .collect::<Result<Vec<_>, _>>()?;
        let q = read_u64(&mut r)?;
        if FieldSpec::order(p, f as u32)? != q {
            return Err(FieldError::CacheFormat(format!("q = {q} does not equal {p}^{f}")));
        }
        let mut body = vec![0u8; 4 * (2 * q as usize - 1)];
        r.read_exact(&mut body)?;
        let words: Vec<u32> = body
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        let (exp, trace) = words.split_at(q as usize - 1);
        let spec = FieldSpec { p: p as u32, f: f as u32, modulus, q };
        let log = invert_exp(exp, q)?;
        if trace.iter().any(|&t| t >= spec.p) {
            return Err(FieldError::CacheFormat("trace value out of range".into()));
        }
        Ok(FieldTable { spec, exp: exp.to_vec(), log, trace: trace.to_vec() })
    }

    pub fn save(&self, path: &Path) -> Result<(), FieldError> {
        let file = std::fs::File::create(path)?;
        self.write_cache(io::BufWriter::new(file))
    }

    pub fn load(path: &Path) -> Result<FieldTable, FieldError> {
        let file = std::fs::File::open(path)?;
        FieldTable::read_cache(io::BufReader::new(file))
    }
}

fn invert_exp(exp: &[u32], q: u64) -> Result<Vec<u32>, FieldError> {
    let mut log = vec![LOG_ZERO; q as usize];
    for (a, &x) in exp.iter().enumerate() {
        if x == 0 || x as u64 >= q || log[x as usize] != LOG_ZERO {
            return Err(FieldError::NotPrimitive { period: a as u64, expected: q - 1 });
        }
        log[x as usize] = a as u32;
    }
    Ok(log)
}

pub fn build_field(spec: FieldSpec) -> Result<FieldTable, FieldError> {
    let p = spec.p;
    let f = spec.f as usize;
    let q = spec.q;
    let neg_mod: Vec<u32> = spec.modulus[..f].iter().map(|&c| (p - c) % p).collect();

    // exp chain: repeated multiplication by x with reduction
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut coef = vec![0u32; f];
    coef[0] = 1;
    let mut places = vec![1u32; f];
    for i in 1..f {
        places[i] = places[i - 1] * p;
    }
    for step in 0..q - 1 {
        let packed: u32 = coef.iter().zip(&places).map(|(&c, &w)| c * w).sum();
        if step > 0 && packed == 1 {
            return Err(FieldError::NotPrimitive { period: step, expected: q - 1 });
        }
        exp.push(packed);
        let top = coef[f - 1];
        for i in (1..f).rev() {
            coef[i] = coef[i - 1];
        }
        coef[0] = 0;
        if top != 0 {
            for i in 0..f {
                coef[i] = ((coef[i] as u64 + neg_mod[i] as u64 * top as u64) % p as u64) as u32;
            }
        }
    }
    let log = invert_exp(&exp, q)?;

    // traces of the basis monomials x^k, then extend by linearity
    let pm = p as u64;
    let m: Vec<u64> = spec.modulus.iter().map(|&c| c as u64).collect();
    let basis_trace: Vec<u32> = (0..f).map(|k| sum_conjugates(k, &m, pm, f) as u32).collect();
    let mut trace = vec![0u32; q as usize];
    let mut block = 1usize;
    for &tk in &basis_trace {
        for d in 1..p as usize {
            let shift = (d as u64 * tk as u64 % pm) as u32;
            for lower in 0..block {
                trace[d * block + lower] = (trace[lower] + shift) % p;
            }
        }
        block *= p as usize;
    }
    Ok(FieldTable { spec, exp, log, trace })
}

fn sum_conjugates(k: usize, m: &[u64], p: u64, f: usize) -> u64 {
    let mut mono = vec![0u64; k + 1];
    mono[k] = 1;
    let mut conj = poly::rem(mono, m, p);
    let mut total = vec![0u64; f];
    for _ in 0..f {
        for (i, &c) in conj.iter().enumerate() {
            total[i] = (total[i] + c) % p;
        }
        conj = poly::pow_mod(&conj, p, m, p);
    }
    debug_assert!(total[1..].iter().all(|&c| c == 0), "trace must lie in the prime field");
    total[0]
}

/// Convenience: deterministic modulus plus full tables.
pub fn field(p: u64, f: u32) -> Result<FieldTable, FieldError> {
    build_field(find_modulus(p, f)?)
}
