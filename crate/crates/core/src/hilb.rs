//! Cohomology-weighted partitions: the Nakajima basis normalization
//! `z(eta)`, duals, the pairing, diagonal splitting and the degeneration
//! gluing factors.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbError {
    #[error("dual map is not an involution on {0} labels")]
    NotInvolution(usize),
    #[error("label {0} has odd degree")]
    OddDegree(String),
    #[error("unknown label id {0}")]
    UnknownLabel(usize),
    #[error("parts must be positive")]
    ZeroPart,
    #[error("expected size {expected}, got {got}")]
    SizeMismatch { expected: u32, got: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub name: String,
    pub degree: u32,
}

/// A basis of the (even) cohomology of a surface with an involutive
/// duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    labels: Vec<Label>,
    dual: Vec<usize>,
}

impl LabelTable {
    pub fn new(labels: Vec<Label>, dual: Vec<usize>) -> Result<LabelTable, HilbError> {
        let n = labels.len();
        if dual.len() != n || dual.iter().any(|&d| d >= n) || (0..n).any(|i| dual[dual[i]] != i) {
            return Err(HilbError::NotInvolution(n));
        }
        if let Some(l) = labels.iter().find(|l| l.degree % 2 == 1) {
            return Err(HilbError::OddDegree(l.name.clone()));
        }
        Ok(LabelTable { labels, dual })
    }

    /// `n` labels of degree 2, each its own dual.
    pub fn self_dual(n: usize) -> LabelTable {
        let labels = (0..n).map(|i| Label { name: format!("d{}", i + 1), degree: 2 }).collect();
        LabelTable::new(labels, (0..n).collect()).expect("valid table")
    }

    /// Unit and point class, dual to each other.
    pub fn unit_and_point() -> LabelTable {
        let labels = vec![Label { name: "1".into(), degree: 0 }, Label { name: "pt".into(), degree: 4 }];
        LabelTable::new(labels, vec![1, 0]).expect("valid table")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }
}

/// A multiset of `(part, label id)` pairs, stored largest first in the
/// standard order (by part, then by label).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, usize)>", into = "Vec<(u32, usize)>")]
pub struct WeightedPartition {
    pairs: Vec<(u32, usize)>,
}

impl TryFrom<Vec<(u32, usize)>> for WeightedPartition {
    type Error = HilbError;
    fn try_from(pairs: Vec<(u32, usize)>) -> Result<Self, HilbError> {
        WeightedPartition::new(pairs)
    }
}

impl From<WeightedPartition> for Vec<(u32, usize)> {
    fn from(p: WeightedPartition) -> Self {
        p.pairs
    }
}

impl WeightedPartition {
    pub fn new(mut pairs: Vec<(u32, usize)>) -> Result<WeightedPartition, HilbError> {
        if pairs.iter().any(|p| p.0 == 0) {
            return Err(HilbError::ZeroPart);
        }
        pairs.sort_by_key(|&p| Reverse(p));
        Ok(WeightedPartition { pairs })
    }

    pub fn empty() -> WeightedPartition {
        WeightedPartition { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u32, usize)] {
        &self.pairs
    }

    /// `|eta|`.
    pub fn size(&self) -> u32 {
        self.pairs.iter().map(|p| p.0).sum()
    }

    /// `l(eta)`.
    pub fn length(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn check_labels(&self, table: &LabelTable) -> Result<(), HilbError> {
        match self.pairs.iter().find(|p| p.1 >= table.len()) {
            Some(p) => Err(HilbError::UnknownLabel(p.1)),
            None => Ok(()),
        }
    }

    pub fn dual(&self, table: &LabelTable) -> WeightedPartition {
        WeightedPartition::new(self.pairs.iter().map(|&(a, l)| (a, table.dual(l))).collect()).expect("parts unchanged")
    }

    /// Order of the group of permutations preserving the pairs.
    pub fn automorphisms(&self) -> BigInt {
        let mut mult: BTreeMap<(u32, usize), u32> = BTreeMap::new();
        for p in &self.pairs {
            *mult.entry(*p).or_default() += 1;
        }
        mult.values().map(|&m| factorial(m)).product()
    }

    /// `z(eta) = prod eta_i * |Aut(eta)|`.
    pub fn zeta(&self) -> BigInt {
        let parts: BigInt = self.pairs.iter().map(|p| BigInt::from(p.0)).product();
        parts * self.automorphisms()
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs.iter().map(|(a, l)| format!("({a},{l})")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// All weighted partitions of size `k`, labels from `table`, sorted.
pub fn weighted_partitions(k: u32, table: &LabelTable) -> Vec<WeightedPartition> {
    fn rec(remaining: u32, max: (u32, usize), nlabels: usize, cur: &mut Vec<(u32, usize)>, out: &mut Vec<WeightedPartition>) {
        if remaining == 0 {
            out.push(WeightedPartition { pairs: cur.clone() });
            return;
        }
        for part in (1..=remaining.min(max.0)).rev() {
            let top = if part == max.0 { max.1 } else { nlabels - 1 };
            for label in (0..=top).rev() {
                cur.push((part, label));
                rec(remaining - part, (part, label), nlabels, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if table.is_empty() {
        if k == 0 {
            out.push(WeightedPartition::empty());
        }
        return out;
    }
    rec(k, (k, table.len() - 1), table.len(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `int C_eta . C_nu = (-1)^{k - l(eta)} / z(eta) * delta(nu, eta^dual)`.
pub fn pairing(eta: &WeightedPartition, nu: &WeightedPartition, k: u32, table: &LabelTable) -> Result<BigRational, HilbError> {
    for p in [eta, nu] {
        p.check_labels(table)?;
        if p.size() != k {
            return Err(HilbError::SizeMismatch { expected: k, got: p.size() });
        }
    }
    if *nu != eta.dual(table) {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(sign(k as i64 - eta.length() as i64), eta.zeta()))
}

/// Terms `(eta, eta^dual, (-1)^{k - l(eta)} z(eta))` of the class of the
/// diagonal.
pub fn diagonal_splitting(k: u32, table: &LabelTable) -> Vec<(WeightedPartition, WeightedPartition, BigRational)> {
    weighted_partitions(k, table)
        .into_iter()
        .map(|eta| {
            let c = BigRational::from_integer(sign(k as i64 - eta.length() as i64) * eta.zeta());
            let d = eta.dual(table);
            (eta, d, c)
        })
        .collect()
}

/// `c * i^ipow * u^upow * (-q)^{half/2}`, with `ipow` in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigRational,
    pub ipow: u8,
    pub upow: i64,
    pub negq_half: i64,
}

impl Monomial {
    pub fn scalar(c: BigRational) -> Monomial {
        Monomial { coeff: c, ipow: 0, upow: 0, negq_half: 0 }
    }

    /// `(-i u)^n`.
    pub fn minus_iu(n: i64) -> Monomial {
        // -i = i^3
        Monomial::scalar(BigRational::one()).with_i(3 * n).with_u(n)
    }

    /// `u^n`.
    pub fn u(n: i64) -> Monomial {
        Monomial::scalar(BigRational::one()).with_u(n)
    }

    /// `(-q)^{half/2}`.
    pub fn negq_half(half: i64) -> Monomial {
        Monomial { negq_half: half, ..Monomial::scalar(BigRational::one()) }
    }

    /// `q^n`, rewritten as `(-1)^n (-q)^n`.
    pub fn q(n: i64) -> Monomial {
        Monomial { coeff: BigRational::from_integer(sign(n)), ..Monomial::negq_half(2 * n) }
    }

    fn with_i(mut self, n: i64) -> Monomial {
        let total = (self.ipow as i64 + n).rem_euclid(4);
        if total >= 2 {
            self.coeff = -self.coeff;
        }
        self.ipow = (total % 2) as u8;
        self
    }

    fn with_u(mut self, n: i64) -> Monomial {
        self.upow += n;
        self
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial {
            coeff: &self.coeff * &rhs.coeff,
            ipow: self.ipow,
            upow: self.upow + rhs.upow,
            negq_half: self.negq_half + rhs.negq_half,
        }
        .with_i(rhs.ipow as i64)
    }

    pub fn is_real_q_monomial(&self) -> bool {
        self.ipow == 0 && self.upow == 0 && self.negq_half % 2 == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.ipow == 1 {
            write!(f, "*i")?;
        }
        if self.upow != 0 {
            write!(f, "*u^{}", self.upow)?;
        }
        if self.negq_half != 0 {
            write!(f, "*(-q)^({}/2)", self.negq_half)?;
        }
        Ok(())
    }
}

/// Gromov-Witten gluing factor `z(eta) u^{2 l(eta)}`.
pub fn gw_gluing_factor(eta: &WeightedPartition) -> Monomial {
    Monomial::scalar(BigRational::from_integer(eta.zeta())).mul(&Monomial::u(2 * eta.length() as i64))
}

/// Donaldson-Thomas gluing factor `(-1)^{|eta| - l(eta)} z(eta) q^{-|eta|}`.
pub fn dt_gluing_factor(eta: &WeightedPartition) -> Monomial {
    let s = sign(eta.size() as i64 - eta.length() as i64);
    Monomial::scalar(BigRational::from_integer(s * eta.zeta())).mul(&Monomial::q(-(eta.size() as i64)))
}

/// The GW gluing factor pushed through the relative and absolute
/// prefactors `(-iu)^{d_i + l - |eta|}`, `(-q)^{-d_i/2}` with total degree
/// `d = d1 + d2 - 2|eta|`.
pub fn transformed_gw_gluing(d1: i64, d2: i64, eta: &WeightedPartition) -> Monomial {
    let (size, len) = (eta.size() as i64, eta.length() as i64);
    let d = d1 + d2 - 2 * size;
    let u_exp = d - (d1 + len - size) - (d2 + len - size);
    gw_gluing_factor(eta)
        .mul(&Monomial::minus_iu(u_exp))
        .mul(&Monomial::negq_half(d - d1 - d2))
}

pub fn degeneration_consistency_with(d1: i64, d2: i64, eta: &WeightedPartition, dt: impl Fn(&WeightedPartition) -> Monomial) -> bool {
    transformed_gw_gluing(d1, d2, eta) == dt(eta)
}

/// Whether the transformed GW gluing factor equals the DT gluing factor.
pub fn degeneration_consistency(d1: i64, d2: i64, eta: &WeightedPartition) -> bool {
    degeneration_consistency_with(d1, d2, eta, dt_gluing_factor)
}
