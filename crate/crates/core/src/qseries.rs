//! Truncated power series in `q` with rational-function coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{parse_ratfunc, AlgebraError, LinearSubst, RatFunc};

/// Truncation order used when a caller does not choose one.
pub const DEFAULT_ORDER: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("{op} needs constant term {expected}")]
    WrongConstantTerm { op: &'static str, expected: i64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed series document: {0}")]
    Document(String),
}

/// `sum_{n <= order} coeffs[n] q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<RatFunc>,
}

impl QSeries {
    pub fn new(coeffs: Vec<RatFunc>) -> QSeries {
        assert!(!coeffs.is_empty(), "a series keeps at least the q^0 coefficient");
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> QSeries {
        QSeries { coeffs: vec![RatFunc::zero(); order + 1] }
    }

    pub fn one(order: usize) -> QSeries {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = RatFunc::one();
        s
    }

    /// `1 + q`, truncated.
    pub fn one_plus_q(order: usize) -> QSeries {
        let mut s = QSeries::one(order);
        if order >= 1 {
            s.coeffs[1] = RatFunc::one();
        }
        s
    }

    pub fn from_integers(cs: &[BigInt]) -> QSeries {
        QSeries::new(cs.iter().map(|c| RatFunc::from_rational(BigRational::from_integer(c.clone()))).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RatFunc {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().take(order + 1).cloned().collect() }
    }

    pub fn add(&self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }

    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| {
                let terms: Vec<RatFunc> = (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[k - i].is_zero())
                    .map(|i| &self.coeffs[i] * &rhs.coeffs[k - i])
                    .collect();
                RatFunc::sum_all(terms)
            })
            .collect();
        QSeries { coeffs }
    }

    pub fn scale(&self, f: &RatFunc) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| c * f).collect() }
    }

    pub fn pow_int(&self, n: u32) -> QSeries {
        (0..n).fold(QSeries::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `q -> -q`.
    pub fn negate_arg(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        QSeries { coeffs }
    }

    pub fn substitute(&self, subst: &LinearSubst) -> Result<QSeries, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.substitute(subst))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries { coeffs })
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<QSeries, SeriesError> {
        if self.coeffs[0] != RatFunc::one() {
            return Err(SeriesError::WrongConstantTerm { op: "log", expected: 1 });
        }
        let n = self.order();
        let mut l = vec![RatFunc::zero(); n + 1];
        // n l_n = n a_n - sum_{k<n} k l_k a_{n-k}
        for m in 1..=n {
            let terms: Vec<RatFunc> = (1..m)
                .filter(|&k| !l[k].is_zero() && !self.coeffs[m - k].is_zero())
                .map(|k| (&l[k] * &self.coeffs[m - k]).scale(&int(k as i64)))
                .collect();
            let acc = RatFunc::sum_all(terms);
            l[m] = &self.coeffs[m] - &acc.scale(&BigRational::new(1.into(), (m as i64).into()));
        }
        Ok(QSeries { coeffs: l })
    }

    /// Exponential of a series with constant term 0.
    pub fn exp(&self) -> Result<QSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::WrongConstantTerm { op: "exp", expected: 0 });
        }
        let n = self.order();
        let mut e = vec![RatFunc::zero(); n + 1];
        e[0] = RatFunc::one();
        // n e_n = sum_{k=1}^n k l_k e_{n-k}
        for m in 1..=n {
            let terms: Vec<RatFunc> = (1..=m)
                .filter(|&k| !self.coeffs[k].is_zero() && !e[m - k].is_zero())
                .map(|k| (&self.coeffs[k] * &e[m - k]).scale(&int(k as i64)))
                .collect();
            e[m] = RatFunc::sum_all(terms).scale(&BigRational::new(1.into(), (m as i64).into()));
        }
        Ok(QSeries { coeffs: e })
    }

    /// `exp(f * log S)` for `S` with constant term 1.
    pub fn pow_exponent(&self, f: &RatFunc) -> Result<QSeries, SeriesError> {
        if self.coeffs[0] != RatFunc::one() {
            return Err(SeriesError::WrongConstantTerm { op: "pow", expected: 1 });
        }
        self.log()?.scale(f).exp()
    }

    /// Coefficients rendered in canonical rational-function syntax.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument { order: self.order(), coefficients: self.coefficient_strings() }
    }

    pub fn from_document(doc: &SeriesDocument) -> Result<QSeries, SeriesError> {
        if doc.coefficients.len() != doc.order + 1 {
            return Err(SeriesError::Document(format!(
                "order {} but {} coefficients",
                doc.order,
                doc.coefficients.len()
            )));
        }
        let coeffs = doc
            .coefficients
            .iter()
            .map(|s| parse_ratfunc(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries::new(coeffs))
    }
}

/// JSON form of a series: coefficients of `q^0..q^order` as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub order: usize,
    pub coefficients: Vec<String>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Integer coefficients of `prod_{n>=1} (1 - q^n)^{-n}` up to `q^order`.
pub fn macmahon_integers(order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for n in 1..=order {
        for _ in 0..n {
            for i in n..=order {
                let add = c[i - n].clone();
                c[i] += add;
            }
        }
    }
    c
}

/// MacMahon's function, optionally with `q -> -q`.
pub fn macmahon(order: usize, negate_arg: bool) -> QSeries {
    let s = QSeries::from_integers(&macmahon_integers(order));
    if negate_arg {
        s.negate_arg()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{cubic_ratio, leg_exponent};

    fn r(n: i64, d: i64) -> RatFunc {
        RatFunc::from_rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn macmahon_coefficients() {
        let m = macmahon(6, false);
        let want = [1, 1, 3, 6, 13, 24, 48];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(m.coeff(i), &r(*w, 1));
        }
        let mm = macmahon(3, true);
        let want = [1, -1, 3, -6];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(mm.coeff(i), &r(*w, 1));
        }
        assert_eq!(macmahon(0, true), QSeries::one(0));
    }

    #[test]
    fn log_and_exp() {
        assert_eq!(QSeries::one(4).log().unwrap(), QSeries::zero(4));
        let m = macmahon(6, true);
        let l = m.log().unwrap();
        assert_eq!(l.coeff(1), &r(-1, 1));
        assert_eq!(l.coeff(2), &r(5, 2));
        assert_eq!(l.exp().unwrap(), m);
        assert!(QSeries::zero(2).log().is_err());
        assert!(QSeries::one(2).exp().is_err());
    }

    #[test]
    fn binomial_power() {
        let f = leg_exponent();
        let p = QSeries::one_plus_q(3).pow_exponent(&f).unwrap();
        assert_eq!(p.coeff(0), &RatFunc::one());
        assert_eq!(p.coeff(1), &f);
        let f_minus_1 = &f - &RatFunc::one();
        assert_eq!(p.coeff(2), &(&f * &f_minus_1).scale(&BigRational::new(1.into(), 2.into())));
        assert_eq!(macmahon(4, true).pow_exponent(&RatFunc::zero()).unwrap(), QSeries::one(4));
    }

    #[test]
    fn macmahon_power_second_coefficient() {
        let c = cubic_ratio();
        let w = macmahon(2, true).pow_exponent(&-&c).unwrap();
        assert_eq!(w.coeff(1), &c);
        let c_minus_5 = &c - &RatFunc::from_integer(5);
        assert_eq!(w.coeff(2), &(&c * &c_minus_5).scale(&BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn power_laws() {
        let m = macmahon(5, true);
        let a = cubic_ratio();
        let b = leg_exponent();
        let lhs = m.pow_exponent(&(&a + &b)).unwrap();
        let rhs = m.pow_exponent(&a).unwrap().mul(&m.pow_exponent(&b).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(m.pow_exponent(&RatFunc::from_integer(3)).unwrap(), m.pow_int(3));
        let p = QSeries::one_plus_q(5);
        assert_eq!(m.mul(&p).log().unwrap(), m.log().unwrap().add(&p.log().unwrap()));
    }

    #[test]
    fn document_roundtrip() {
        let w = macmahon(3, true).pow_exponent(&cubic_ratio()).unwrap();
        let doc = w.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: SeriesDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(QSeries::from_document(&back).unwrap(), w);
    }
}
