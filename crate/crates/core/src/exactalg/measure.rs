use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::character::LaurentCharacter;
use super::linear::LinearForm;
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::AlgebraError;

/// `scalar * prod form^exponent` with canonical linear forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredMeasure {
    scalar: BigRational,
    factors: BTreeMap<LinearForm, i64>,
}

impl Default for FactoredMeasure {
    fn default() -> Self {
        FactoredMeasure::one()
    }
}

impl FactoredMeasure {
    pub fn one() -> FactoredMeasure {
        FactoredMeasure { scalar: BigRational::one(), factors: BTreeMap::new() }
    }

    pub fn new(scalar: BigRational, factors: BTreeMap<LinearForm, i64>) -> FactoredMeasure {
        assert!(!num_traits::Zero::is_zero(&scalar), "measure scalar must be nonzero");
        let mut factors = factors;
        factors.retain(|_, e| *e != 0);
        FactoredMeasure { scalar, factors }
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn factors(&self) -> &BTreeMap<LinearForm, i64> {
        &self.factors
    }

    pub fn exponent(&self, f: &LinearForm) -> i64 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    /// Total degree in `s`.
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    /// Multiplies in `(k . s)^e` for an integer vector `k`.
    pub fn mul_vector_power(&mut self, k: [i64; 3], e: i64) -> Result<(), AlgebraError> {
        if e == 0 {
            return Ok(());
        }
        let (c, f) = LinearForm::canonicalize(k).ok_or(AlgebraError::ZeroForm)?;
        let c = BigRational::from_integer(c.into());
        let cp = if e > 0 {
            num_traits::pow(c, e as usize)
        } else {
            BigRational::one() / num_traits::pow(c, (-e) as usize)
        };
        self.scalar *= cp;
        let slot = self.factors.entry(f).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&f);
        }
        Ok(())
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut num = MultiPoly::constant(self.scalar.clone());
        let mut den = BTreeMap::new();
        for (f, &e) in &self.factors {
            if e > 0 {
                num = num.mul_form_pow(f, e as u32);
            } else {
                den.insert(*f, (-e) as u32);
            }
        }
        // distinct canonical forms are coprime, so this is already normal
        RatFunc::from_parts_unchecked(num, den)
    }
}

/// Turns a character `sum v_k t^k` into `prod_k (s . k)^{-v_k}`.
pub fn measure_from_character(v: &LaurentCharacter) -> Result<FactoredMeasure, AlgebraError> {
    if v.constant_term() != 0 {
        return Err(AlgebraError::NonzeroConstantTerm(v.constant_term()));
    }
    let mut m = FactoredMeasure::one();
    for (k, &c) in v.terms() {
        m.mul_vector_power(*k, -c)?;
    }
    Ok(m)
}

impl Mul for &FactoredMeasure {
    type Output = FactoredMeasure;
    fn mul(self, rhs: &FactoredMeasure) -> FactoredMeasure {
        let mut factors = self.factors.clone();
        for (f, &e) in &rhs.factors {
            *factors.entry(*f).or_insert(0) += e;
        }
        FactoredMeasure::new(&self.scalar * &rhs.scalar, factors)
    }
}

impl fmt::Display for FactoredMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, abs) = (self.scalar.is_negative(), self.scalar.abs());
        if neg {
            f.write_str("-")?;
        }
        write!(f, "{abs}")?;
        for (form, &e) in &self.factors {
            write!(f, "*({form})^{e}")?;
        }
        Ok(())
    }
}
