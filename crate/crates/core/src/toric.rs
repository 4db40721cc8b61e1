//! Degree-zero partition functions of toric 3-folds from fixed-point
//! weight data.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{leg_exponent, AlgebraError, FactoredMeasure, LinearForm, LinearSubst, MultiPoly, RatFunc};
use crate::qseries::{macmahon, QSeries, SeriesError};

pub type Weight = [i64; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("zero weight at {0}")]
    ZeroWeight(String),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("geometry document: {0}")]
    Schema(String),
    #[error("{0} has poles other than s1, s2, s3")]
    UnsupportedPoles(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub weights: [Weight; 3],
}

/// A fixed point on the relative divisor: `normal` is the weight normal to
/// the divisor, `tangent` the two weights along it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFixedPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub normal: Weight,
    pub tangent: [Weight; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricGeometry {
    pub name: String,
    pub interior: Vec<FixedPoint>,
    #[serde(default)]
    pub divisor: Vec<DivisorFixedPoint>,
    pub compact: bool,
}

impl ToricGeometry {
    pub fn empty(name: &str) -> ToricGeometry {
        ToricGeometry { name: name.into(), interior: Vec::new(), divisor: Vec::new(), compact: true }
    }

    pub fn is_relative(&self) -> bool {
        !self.divisor.is_empty()
    }

    /// The same geometry with the divisor forgotten; divisor points become
    /// interior points with weights `(normal, tangent...)`.
    pub fn absolute(&self) -> ToricGeometry {
        let mut interior = self.interior.clone();
        interior.extend(self.divisor.iter().map(|p| FixedPoint {
            label: p.label.clone(),
            weights: [p.normal, p.tangent[0], p.tangent[1]],
        }));
        ToricGeometry { name: self.name.clone(), interior, divisor: Vec::new(), compact: self.compact }
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        let mut seen = BTreeSet::new();
        let labels = self
            .interior
            .iter()
            .map(|p| p.label.as_ref())
            .chain(self.divisor.iter().map(|p| p.label.as_ref()));
        for l in labels.flatten() {
            if !seen.insert(l.clone()) {
                return Err(ToricError::DuplicateLabel(l.clone()));
            }
        }
        for (i, p) in self.interior.iter().enumerate() {
            if p.weights.contains(&[0; 3]) {
                return Err(ToricError::ZeroWeight(point_name(&p.label, "interior", i)));
            }
        }
        for (i, p) in self.divisor.iter().enumerate() {
            if p.normal == [0; 3] || p.tangent.contains(&[0; 3]) {
                return Err(ToricError::ZeroWeight(point_name(&p.label, "divisor", i)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("geometry serializes")
    }
}

fn point_name(label: &Option<String>, kind: &str, i: usize) -> String {
    label.clone().unwrap_or_else(|| format!("{kind} point {i}"))
}

fn add(a: Weight, b: Weight) -> Weight {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn neg(a: Weight) -> Weight {
    a.map(|x| -x)
}

/// `(-a-b)(-a-c)(-b-c) / (a b c)` for the tangent weights at one point.
pub fn interior_term(w: &[Weight; 3]) -> Result<RatFunc, ToricError> {
    let [a, b, c] = *w;
    if [add(a, b), add(a, c), add(b, c)].contains(&[0; 3]) {
        return Ok(RatFunc::zero());
    }
    let mut m = FactoredMeasure::one();
    for k in [add(a, b), add(a, c), add(b, c)] {
        m.mul_vector_power(k, 1)?;
    }
    for k in [a, b, c] {
        m.mul_vector_power(k, -1)?;
    }
    Ok(-&m.to_ratfunc())
}

/// `(-t2 - t3) / n` at a divisor point.
pub fn divisor_term(p: &DivisorFixedPoint) -> Result<RatFunc, ToricError> {
    let k = neg(add(p.tangent[0], p.tangent[1]));
    if k == [0; 3] {
        return Ok(RatFunc::zero());
    }
    let mut m = FactoredMeasure::one();
    m.mul_vector_power(k, 1)?;
    m.mul_vector_power(p.normal, -1)?;
    Ok(m.to_ratfunc())
}

/// The exponent of `M(-q)` in the degree-zero partition function, as a
/// sum of local contributions over fixed points.
pub fn bott_exponent(g: &ToricGeometry) -> Result<RatFunc, ToricError> {
    g.validate()?;
    let mut terms = g
        .interior
        .par_iter()
        .map(|p| interior_term(&p.weights))
        .collect::<Result<Vec<_>, _>>()?;
    terms.extend(g.divisor.par_iter().map(divisor_term).collect::<Result<Vec<_>, _>>()?);
    Ok(RatFunc::sum_all(terms))
}

/// `M(-q)^{bott_exponent}`.
pub fn degree0_partition_function(g: &ToricGeometry, order: usize) -> Result<QSeries, ToricError> {
    let e = bott_exponent(g)?;
    Ok(macmahon(order, true).pow_exponent(&e)?)
}

/// `M(-q)^{(s2+s3)/s1}`.
pub fn winfty_series(order: usize) -> QSeries {
    macmahon(order, true)
        .pow_exponent(&leg_exponent())
        .expect("M(-q) has constant term 1")
}

/// Product of local factors: `w` at `s -> -s^alpha` over interior points
/// and `winfty` at `s1 -> n, s2 -> -t2, s3 -> -t3` over divisor points.
pub fn product_path(g: &ToricGeometry, w: &QSeries, winfty: &QSeries) -> Result<QSeries, ToricError> {
    g.validate()?;
    let order = w.order().min(winfty.order());
    let mut factors = g
        .interior
        .par_iter()
        .map(|p| {
            let [a, b, c] = p.weights;
            w.substitute(&LinearSubst::from_integer_images([neg(a), neg(b), neg(c)]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    factors.extend(
        g.divisor
            .par_iter()
            .map(|p| {
                winfty.substitute(&LinearSubst::from_integer_images([p.normal, neg(p.tangent[0]), neg(p.tangent[1])]))
            })
            .collect::<Result<Vec<_>, _>>()?,
    );
    Ok(factors.iter().fold(QSeries::one(order), |acc, f| acc.mul(f)))
}

/// Part of `f` with a pole along `s1 = 0`. Only denominators that are
/// powers of `s1`, `s2`, `s3` are supported.
pub fn s1_polar_part(f: &RatFunc) -> Result<RatFunc, ToricError> {
    let s1 = LinearForm::new([1, 0, 0])?;
    let den = f.denominator();
    let coords = [s1, LinearForm::new([0, 1, 0])?, LinearForm::new([0, 0, 1])?];
    if den.keys().any(|k| !coords.contains(k)) {
        return Err(ToricError::UnsupportedPoles(f.to_string()));
    }
    let a = den.get(&s1).copied().unwrap_or(0);
    let mut polar = MultiPoly::zero();
    for (e, c) in f.numerator().terms() {
        if e[0] < a {
            polar.add_term(*e, c.clone());
        }
    }
    Ok(RatFunc::new(polar, den.clone()))
}

pub const FIXTURE_NAMES: [&str; 5] = ["affine", "p3", "p1xp1xp1", "p1xc2-rel", "p3-rel-plane"];

fn point(label: &str, weights: [Weight; 3]) -> FixedPoint {
    FixedPoint { label: Some(label.into()), weights }
}

fn e(i: usize) -> Weight {
    let mut w = [0; 3];
    w[i] = 1;
    w
}

fn sub(a: Weight, b: Weight) -> Weight {
    add(a, neg(b))
}

/// Characters of the torus on the homogeneous coordinates of P^3:
/// `lambda = (0, e1, e2, e3)`. The tangent weights at `p_i` are
/// `lambda_j - lambda_i`, `j != i`.
fn p3_lambda() -> [Weight; 4] {
    [[0; 3], e(0), e(1), e(2)]
}

fn p3_weights(i: usize) -> [Weight; 3] {
    let lam = p3_lambda();
    let others: Vec<Weight> = (0..4).filter(|&j| j != i).map(|j| sub(lam[j], lam[i])).collect();
    [others[0], others[1], others[2]]
}

pub fn fixture(name: &str) -> Option<ToricGeometry> {
    let g = match name {
        // one fixed point with the standard weights
        "affine" => ToricGeometry {
            name: name.into(),
            interior: vec![point("0", [e(0), e(1), e(2)])],
            divisor: Vec::new(),
            compact: false,
        },
        "p3" => ToricGeometry {
            name: name.into(),
            interior: (0..4).map(|i| point(&format!("p{i}"), p3_weights(i))).collect(),
            divisor: Vec::new(),
            compact: true,
        },
        // fixed points (0 or inf)^3; weight +e_i at 0 and -e_i at inf
        "p1xp1xp1" => ToricGeometry {
            name: name.into(),
            interior: (0..8u32)
                .map(|m| {
                    let w = |i: usize| if m >> i & 1 == 0 { e(i) } else { neg(e(i)) };
                    point(&format!("{}{}{}", m & 1, m >> 1 & 1, m >> 2 & 1), [w(0), w(1), w(2)])
                })
                .collect(),
            divisor: Vec::new(),
            compact: true,
        },
        // P^1 x C^2 relative to the fiber over infinity; the interior point
        // sits over 0 with weights -e_i, the divisor point has normal e1
        "p1xc2-rel" => ToricGeometry {
            name: name.into(),
            interior: vec![point("0", [neg(e(0)), neg(e(1)), neg(e(2))])],
            divisor: vec![DivisorFixedPoint {
                label: Some("inf".into()),
                normal: e(0),
                tangent: [neg(e(1)), neg(e(2))],
            }],
            compact: false,
        },
        // P^3 relative to the plane through p1, p2, p3; the normal weight
        // at p_i points towards p0
        "p3-rel-plane" => ToricGeometry {
            name: name.into(),
            interior: vec![point("p0", p3_weights(0))],
            divisor: (1..4)
                .map(|i| {
                    let lam = p3_lambda();
                    let tangent: Vec<Weight> = (1..4).filter(|&j| j != i).map(|j| sub(lam[j], lam[i])).collect();
                    DivisorFixedPoint {
                        label: Some(format!("p{i}")),
                        normal: sub(lam[0], lam[i]),
                        tangent: [tangent[0], tangent[1]],
                    }
                })
                .collect(),
            compact: true,
        },
        _ => return None,
    };
    Some(g)
}

/// Parses a geometry document (JSON) or a fixture name.
pub fn load_geometry(document: &str) -> Result<ToricGeometry, ToricError> {
    if let Some(g) = fixture(document.trim()) {
        return Ok(g);
    }
    let g: ToricGeometry = serde_json::from_str(document).map_err(|e| ToricError::Schema(e.to_string()))?;
    g.validate()?;
    Ok(g)
}

/// Exponent as an exact constant, if it has no dependence on `s`.
pub fn constant_exponent(g: &ToricGeometry) -> Result<Option<BigRational>, ToricError> {
    Ok(bott_exponent(g)?.as_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cubic_ratio;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn affine_exponent() {
        let g = fixture("affine").unwrap();
        assert_eq!(bott_exponent(&g).unwrap(), -&cubic_ratio());
    }

    #[test]
    fn p3_exponent_is_minus_twenty() {
        // c(T) = (1+H)^4, c1(K) = -4H: c3 + c2 k + c1 k^2 + k^3 at H^3 = 1
        let binom = |n: i64, k: i64| (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
        let (c1, c2, c3, k) = (binom(4, 1), binom(4, 2), binom(4, 3), -4i64);
        let oracle = c3 + c2 * k + c1 * k * k + k * k * k;
        assert_eq!(oracle, -20);
        assert_eq!(constant_exponent(&fixture("p3").unwrap()).unwrap(), Some(int(oracle)));
    }

    #[test]
    fn p1_cubed_exponent() {
        // (P^1)^3: c(T) = prod (1 + 2 H_i), c1(K) = -2 sum H_i, H_i^2 = 0.
        // Work in the exterior-like ring spanned by square-free monomials.
        fn mul(a: &[i64; 8], b: &[i64; 8]) -> [i64; 8] {
            let mut out = [0; 8];
            for i in 0..8 {
                for j in 0..8 {
                    if i & j == 0 {
                        out[i | j] += a[i] * b[j];
                    }
                }
            }
            out
        }
        let mut total_chern = [0i64; 8];
        total_chern[0] = 1;
        for i in 0..3 {
            let mut f = [0i64; 8];
            f[0] = 1;
            f[1 << i] = 2;
            total_chern = mul(&total_chern, &f);
        }
        let graded = |d: u32| {
            let mut out = [0i64; 8];
            for m in 0..8usize {
                if m.count_ones() == d {
                    out[m] = total_chern[m];
                }
            }
            out
        };
        let mut k = [0i64; 8];
        for i in 0..3 {
            k[1 << i] = -2;
        }
        let c3 = graded(3);
        let c2k = mul(&graded(2), &k);
        let c1k2 = mul(&mul(&graded(1), &k), &k);
        let k3 = mul(&mul(&k, &k), &k);
        let oracle = c3[7] + c2k[7] + c1k2[7] + k3[7];
        assert_eq!(oracle, -16);
        assert_eq!(constant_exponent(&fixture("p1xp1xp1").unwrap()).unwrap(), Some(int(oracle)));
    }

    #[test]
    fn p3_relative_to_plane() {
        // T(-log H) = O(1)^3, K + H = -3H, so the bundle is O(-2)^3
        assert_eq!(constant_exponent(&fixture("p3-rel-plane").unwrap()).unwrap(), Some(int(-8)));
    }

    #[test]
    fn relative_exponent() {
        let g = fixture("p1xc2-rel").unwrap();
        let want = &(-&cubic_ratio()) + &leg_exponent();
        assert_eq!(bott_exponent(&g).unwrap(), want);
        let mut abs = g.clone();
        abs.divisor.clear();
        assert_eq!(bott_exponent(&abs).unwrap(), -&cubic_ratio());
    }

    #[test]
    fn empty_geometry() {
        let g = ToricGeometry::empty("pt");
        assert!(bott_exponent(&g).unwrap().is_zero());
        assert_eq!(degree0_partition_function(&g, 4).unwrap(), QSeries::one(4));
    }

    #[test]
    fn product_path_matches_exponent_path_with_closed_form_w() {
        let w = macmahon(4, true).pow_exponent(&-&cubic_ratio()).unwrap();
        let wi = winfty_series(4);
        for name in FIXTURE_NAMES {
            let g = fixture(name).unwrap();
            assert_eq!(product_path(&g, &w, &wi).unwrap(), degree0_partition_function(&g, 4).unwrap(), "{name}");
        }
    }

    #[test]
    fn winfty_first_terms() {
        let w = winfty_series(3);
        assert_eq!(w.coeff(0), &RatFunc::one());
        // log M(-q) = -q + O(q^2)
        assert_eq!(w.coeff(1), &-&leg_exponent());
    }

    #[test]
    fn polar_part_extraction() {
        // c = (s2+s3)/s1 + regular part
        let c = cubic_ratio();
        assert_eq!(s1_polar_part(&c).unwrap(), leg_exponent());
        assert!(s1_polar_part(&RatFunc::var(0)).unwrap().is_zero());
        let bad = RatFunc::inverse_form(LinearForm::new([1, 1, 0]).unwrap());
        assert!(matches!(s1_polar_part(&bad), Err(ToricError::UnsupportedPoles(_))));
    }

    #[test]
    fn loading() {
        assert_eq!(load_geometry("p3").unwrap(), fixture("p3").unwrap());
        for name in FIXTURE_NAMES {
            let g = fixture(name).unwrap();
            assert_eq!(load_geometry(&g.to_json()).unwrap(), g);
        }
        let zero = r#"{"name":"z","interior":[{"weights":[[1,0,0],[0,0,0],[0,0,1]]}],"compact":false}"#;
        assert!(matches!(load_geometry(zero), Err(ToricError::ZeroWeight(_))));
        let dup = r#"{"name":"d","interior":[{"label":"a","weights":[[1,0,0],[0,1,0],[0,0,1]]},
            {"label":"a","weights":[[1,0,0],[0,1,0],[0,0,1]]}],"compact":false}"#;
        assert_eq!(load_geometry(dup), Err(ToricError::DuplicateLabel("a".into())));
        assert!(matches!(load_geometry(r#"{"name":"x"}"#), Err(ToricError::Schema(_))));
        assert!(matches!(load_geometry(r#"{"name":"x","interior":[],"compact":true,"extra":1}"#), Err(ToricError::Schema(_))));
    }
}
