//! The equivariant vertex: characteristic polynomials, the virtual tangent
//! character, the measure `w(pi)`, and the generating series `W`.

use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{
    cubic_ratio, leg_exponent, measure_from_character, AlgebraError, LaurentCharacter, LinearForm,
    LocalizedCharacter, RatFunc,
};
pub use crate::exactalg::FactoredMeasure;
use crate::partitions::{enumerate_finite, enumerate_with_legs, LegPartition3D, Legs, Partition3D, PartitionError};
use crate::partitions::{content_table, default_window};
use crate::qseries::{macmahon, QSeries, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("vertex character kept a (1 - t_i) denominator: {0:?}")]
    UnreducedDenominator([u32; 3]),
    #[error("partitions have different legs")]
    LegMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `Q_pi = sum over boxes of t^box`.
pub fn char_poly_finite(p: &Partition3D) -> LocalizedCharacter {
    LocalizedCharacter::polynomial(LaurentCharacter::from_terms(
        p.cells().iter().map(|c| ([c[0] as i64, c[1] as i64, c[2] as i64], 1)),
    ))
}

/// `Q_pi` for a legged partition: window boxes plus the cylinder tails
/// summed in closed form over `(1 - t_i)`.
pub fn char_poly_legs(p: &LegPartition3D) -> LocalizedCharacter {
    let window = p.window() as i64;
    let mut q = LocalizedCharacter::polynomial(LaurentCharacter::from_terms(
        p.window_cells().iter().map(|c| ([c[0] as i64, c[1] as i64, c[2] as i64], 1)),
    ));
    for (i, leg) in p.legs().iter().enumerate() {
        if leg.is_empty() {
            continue;
        }
        // t_i^B * sum_{(a,b) in leg} t_{i+1}^a t_{i+2}^b / (1 - t_i)
        let section = LaurentCharacter::from_terms(leg.cells().map(|(a, b)| {
            let mut k = [0i64; 3];
            k[i] = window;
            k[(i + 1) % 3] = a as i64;
            k[(i + 2) % 3] = b as i64;
            (k, 1)
        }));
        let mut den = [0; 3];
        den[i] = 1;
        q = &q + &LocalizedCharacter::new(section, den);
    }
    q.reduce()
}

/// `Q - Qbar/(t1 t2 t3) + Q Qbar (1-t1)(1-t2)(1-t3)/(t1 t2 t3)` in the
/// localized ring, fully reduced.
pub fn tangent_formula(q: &LocalizedCharacter) -> LocalizedCharacter {
    let qbar = q.bar();
    let p = (0..3).fold(LaurentCharacter::one(), |acc, i| acc.mul_one_minus(i));
    let p = LocalizedCharacter::polynomial(p.shift([-1, -1, -1]));
    let second = qbar.shift([-1, -1, -1]);
    let third = &(q * &qbar) * &p;
    (&(q - &second) + &third).reduce()
}

/// The virtual tangent character `V_pi` of a finite partition.
pub fn vertex_character(p: &Partition3D) -> Result<LaurentCharacter, VertexError> {
    let v = tangent_formula(&char_poly_finite(p));
    v.as_laurent()
        .cloned()
        .ok_or(VertexError::UnreducedDenominator(v.denom_exponents()))
}

pub fn vertex_measure(p: &Partition3D) -> Result<FactoredMeasure, VertexError> {
    Ok(measure_from_character(&vertex_character(p)?)?)
}

/// Difference of the tangent formula at `pi` and at the minimal
/// configuration with the same legs. The leg contributions cancel, so the
/// result is a genuine Laurent polynomial.
pub fn leg_character_delta(p: &LegPartition3D, min: &LegPartition3D) -> Result<LaurentCharacter, VertexError> {
    if p.legs() != min.legs() {
        return Err(VertexError::LegMismatch);
    }
    let w = p.window().max(min.window());
    let (p, min) = (p.with_window(w)?, min.with_window(w)?);
    let d = (&tangent_formula(&char_poly_legs(&p)) - &tangent_formula(&char_poly_legs(&min))).reduce();
    d.as_laurent()
        .cloned()
        .ok_or(VertexError::UnreducedDenominator(d.denom_exponents()))
}

/// The generating series `W(legs)` truncated at `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSeries {
    pub legs: Legs,
    pub series: QSeries,
}

impl VertexSeries {
    pub fn order(&self) -> usize {
        self.series.order()
    }
}

/// `W(legs) = sum_pi w(pi) q^{|pi|}`.
///
/// For nonempty legs the measure is normalized by the minimal
/// configuration and the exponent is `|pi| - |pi_min|`, so the series
/// starts with `1`.
pub fn vertex_series(legs: &Legs, order: usize) -> Result<VertexSeries, VertexError> {
    let coeffs = if legs.iter().all(|l| l.is_empty()) {
        (0..=order)
            .map(|n| {
                let parts = enumerate_finite(n);
                let terms = parts
                    .par_iter()
                    .map(|p| vertex_measure(p).map(|m| m.to_ratfunc()))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(RatFunc::sum_all(terms))
            })
            .collect::<Result<Vec<_>, VertexError>>()?
    } else {
        let window = default_window(legs, order as i64 + 1);
        let min = LegPartition3D::minimal(legs.clone(), window)?;
        let shift = min.renormalized_volume();
        (0..=order)
            .map(|n| {
                let parts = enumerate_with_legs(legs, shift + n as i64, None)?;
                let terms = parts
                    .par_iter()
                    .map(|p| {
                        let d = leg_character_delta(p, &min)?;
                        Ok(measure_from_character(&d)?.to_ratfunc())
                    })
                    .collect::<Result<Vec<_>, VertexError>>()?;
                Ok(RatFunc::sum_all(terms))
            })
            .collect::<Result<Vec<_>, VertexError>>()?
    };
    Ok(VertexSeries { legs: legs.clone(), series: QSeries::new(coeffs) })
}

/// `M(-q)^{-(s1+s2)(s1+s3)(s2+s3)/(s1 s2 s3)}`.
pub fn degree_zero_closed_form(order: usize) -> Result<QSeries, VertexError> {
    Ok(macmahon(order, true).pow_exponent(&-&cubic_ratio())?)
}

/// `(1+q)^{(s2+s3)/s1} * M(-q)^{-(s1+s2)(s1+s3)(s2+s3)/(s1 s2 s3)}`.
pub fn degree_one_closed_form(order: usize) -> Result<QSeries, VertexError> {
    let leg = QSeries::one_plus_q(order).pow_exponent(&leg_exponent())?;
    Ok(leg.mul(&degree_zero_closed_form(order)?))
}

/// Both sides of the constant-term identity: the coefficient of
/// `x^0 t3^0` in `V_pi(x, 1/x, t3)` and the content-table expression.
pub fn constant_term_check(p: &Partition3D) -> Result<(i64, i64), VertexError> {
    let v = vertex_character(p)?;
    let lhs = v.antidiagonal_restriction().get(&(0, 0)).copied().unwrap_or(0);
    let rhs = content_table(p).constant_term_formula();
    Ok((lhs, rhs))
}

/// Exponents of `s1+s2`, `s1+s3`, `s2+s3` in `w(pi)`.
pub fn cubic_multiplicity(p: &Partition3D) -> Result<[i64; 3], VertexError> {
    let m = vertex_measure(p)?;
    Ok([[1, 1, 0], [1, 0, 1], [0, 1, 1]].map(|k| m.exponent(&LinearForm::new(k).expect("canonical"))))
}
