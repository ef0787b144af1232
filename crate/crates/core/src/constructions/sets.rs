use std::collections::BTreeSet;

use serde::Serialize;

use super::{ConstructionError, IndexTwoParams, ParamKind};
use crate::cyclotomy::CycSetup;

/// A union of cyclotomic classes `D = U_{i in I} C_i` with a dense
/// membership bitmap over the field elements.
#[derive(Debug, Clone)]
pub struct ConnectionSet {
    setup: CycSetup,
    indices: Vec<u64>,
    bits: Vec<u64>,
}

impl ConnectionSet {
    pub fn from_indices(setup: &CycSetup, indices: impl IntoIterator<Item = u64>) -> Self {
        let n = setup.n();
        let indices: Vec<u64> = indices.into_iter().map(|i| i % n).collect::<BTreeSet<_>>().into_iter().collect();
        let mut mask = vec![false; n as usize];
        for &i in &indices {
            mask[i as usize] = true;
        }
        let field = setup.field();
        let mut bits = vec![0u64; (field.q() as usize).div_ceil(64)];
        let mut class = 0usize;
        for &x in field.exp_table() {
            if mask[class] {
                bits[x as usize >> 6] |= 1 << (x & 63);
            }
            class += 1;
            if class == n as usize {
                class = 0;
            }
        }
        ConnectionSet { setup: setup.clone(), indices, bits }
    }

    pub fn setup(&self) -> &CycSetup {
        &self.setup
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains(&self, x: u32) -> bool {
        (self.bits[x as usize >> 6] >> (x & 63)) & 1 == 1
    }

    pub fn size(&self) -> u64 {
        self.indices.len() as u64 * self.setup.class_size()
    }

    pub fn bitmap(&self) -> &[u64] {
        &self.bits
    }

    /// Elements in increasing packed order.
    pub fn elements(&self) -> Vec<u32> {
        (0..self.setup.field().q() as u32).filter(|&x| self.contains(x)).collect()
    }

    pub fn negate(&self, x: u32) -> u32 {
        self.setup.field().neg(x)
    }

    /// `D = -D`, checked element by element.
    pub fn is_symmetric(&self) -> bool {
        (1..self.setup.field().q() as u32).all(|x| !self.contains(x) || self.contains(self.negate(x)))
    }

    /// `F_q = D + (-D) + {0}` as a disjoint union.
    pub fn is_skew_split(&self) -> bool {
        !self.contains(0) && (1..self.setup.field().q() as u32).all(|x| self.contains(x) != self.contains(self.negate(x)))
    }
}

/// `I = { p2^n i + p1^m j mod N : 0 <= i < p1^(m-1), 0 <= j < p2^(n-1) }`.
pub fn index_set_a(p1: u64, p2: u64, m: u32, n: u32) -> Vec<u64> {
    shifted_index_set_a(p1, p2, m, n, 0)
}

fn shifted_index_set_a(p1: u64, p2: u64, m: u32, n: u32, shift: u64) -> Vec<u64> {
    let (pm, pn) = (p1.pow(m), p2.pow(n));
    let big_n = pm * pn;
    let mut set = BTreeSet::new();
    for i in 0..p1.pow(m - 1) {
        for j in 0..p2.pow(n - 1) {
            set.insert((pn * i + pm * j + shift) % big_n);
        }
    }
    set.into_iter().collect()
}

/// `J = <p> U 2<p> U {0}` modulo `2 p1`.
pub fn j_set(p: u64, p1: u64) -> Vec<u64> {
    let modulus = 2 * p1;
    let mut powers = vec![1 % modulus];
    let mut x = p % modulus;
    while x != powers[0] {
        powers.push(x);
        x = x * p % modulus;
    }
    let mut set = BTreeSet::from([0]);
    for x in powers {
        set.insert(x);
        set.insert(2 * x % modulus);
    }
    set.into_iter().collect()
}

/// Which labeling of the classes the `N = 2 p1^m` set uses: the index set as
/// built, or its image under `i -> -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coset {
    Base,
    Negated,
}

impl Coset {
    pub fn number(self) -> u8 {
        match self {
            Coset::Base => 0,
            Coset::Negated => 1,
        }
    }
}

/// `I = { 2i + p1^(m-1) j mod N : 0 <= i < p1^(m-1), j in J }`.
pub fn index_set_b(p: u64, p1: u64, m: u32, coset: Coset) -> Vec<u64> {
    let big_n = 2 * p1.pow(m);
    let step = p1.pow(m - 1);
    let js = j_set(p, p1);
    let mut set = BTreeSet::new();
    for i in 0..step {
        for &j in &js {
            let x = (2 * i + step * j) % big_n;
            set.insert(match coset {
                Coset::Base => x,
                Coset::Negated => (big_n - x) % big_n,
            });
        }
    }
    set.into_iter().collect()
}

/// The `p1 p2` index sets `I_k = I + p1^(m-1) p2^(n-1) k`.
pub fn scheme_index_sets(p1: u64, p2: u64, m: u32, n: u32) -> Vec<Vec<u64>> {
    let step = p1.pow(m - 1) * p2.pow(n - 1);
    (0..p1 * p2).map(|k| shifted_index_set_a(p1, p2, m, n, step * k)).collect()
}

fn check_setup(setup: &CycSetup, params: &IndexTwoParams, kind: ParamKind) -> Result<(), ConstructionError> {
    let field = setup.field();
    if params.kind != kind {
        return Err(ConstructionError::SetupMismatch(format!("expected {kind:?} parameters")));
    }
    if setup.n() != params.classes {
        return Err(ConstructionError::SetupMismatch(format!("setup has N = {}, parameters N = {}", setup.n(), params.classes)));
    }
    if field.p() as u64 != params.p || field.f() as u64 != params.f {
        return Err(ConstructionError::SetupMismatch(format!(
            "field GF({}^{}) but parameters give GF({}^{})",
            field.p(),
            field.f(),
            params.p,
            params.f
        )));
    }
    Ok(())
}

pub fn build_d_a(setup: &CycSetup, params: &IndexTwoParams) -> Result<ConnectionSet, ConstructionError> {
    check_setup(setup, params, ParamKind::TwoPrimes)?;
    let (p2, n) = (params.p2.unwrap(), params.n.unwrap());
    Ok(ConnectionSet::from_indices(setup, index_set_a(params.p1, p2, params.m, n)))
}

pub fn build_d_b(setup: &CycSetup, params: &IndexTwoParams, coset: Coset) -> Result<ConnectionSet, ConstructionError> {
    check_setup(setup, params, ParamKind::TwoP1m)?;
    let set = ConnectionSet::from_indices(setup, index_set_b(params.p, params.p1, params.m, coset));
    let expected = (setup.field().q() - 1) / 2;
    if set.size() != expected {
        return Err(ConstructionError::SizeInvariantViolation { expected, actual: set.size() });
    }
    Ok(set)
}

pub fn build_scheme_relations(setup: &CycSetup, params: &IndexTwoParams) -> Result<Vec<ConnectionSet>, ConstructionError> {
    check_setup(setup, params, ParamKind::TwoPrimes)?;
    let sets = scheme_index_sets(params.p1, params.p2.unwrap(), params.m, params.n.unwrap());
    let mut seen = vec![false; setup.n() as usize];
    for (k, set) in sets.iter().enumerate() {
        for &i in set {
            if std::mem::replace(&mut seen[i as usize], true) {
                return Err(ConstructionError::PartitionViolation(format!("class {i} appears again in D_{k}")));
            }
        }
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(ConstructionError::PartitionViolation(format!("class {i} is in no relation")));
    }
    Ok(sets.into_iter().map(|s| ConnectionSet::from_indices(setup, s)).collect())
}
