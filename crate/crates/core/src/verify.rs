//! Named verification suites. Each suite is a list of exact checks; the
//! command line and the acceptance tests both run them.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::correspondence::{gw_local_curve, gw_p3_line_example, gw_to_dt, local_curve_dt, relative_example, CorrespondenceError, DTRational};
use crate::exactalg::{cubic_ratio, AlgebraError, leg_exponent, LinearSubst, RatFunc};
use crate::hilb::{
    degeneration_consistency, degeneration_consistency_with, diagonal_splitting, dt_gluing_factor, pairing, weighted_partitions,
    HilbError, LabelTable, Monomial,
};
use crate::partitions::{enumerate_finite, no_legs, parse_legs, Partition3D};
use crate::qseries::{macmahon, QSeries, SeriesError};
use crate::toric::{
    bott_exponent, degree0_partition_function, fixture, product_path, s1_polar_part, winfty_series, ToricError, FIXTURE_NAMES,
};
use crate::vertex::{
    constant_term_check, cubic_multiplicity, degree_one_closed_form, degree_zero_closed_form, vertex_character, vertex_measure,
    vertex_series, VertexError,
};

pub const SUITES: [&str; 10] = [
    "theorem0",
    "cy",
    "cubic",
    "constant-term",
    "character",
    "degree1",
    "toric",
    "nakajima",
    "degeneration",
    "gwdt",
];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Hilb(#[from] HilbError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    fn eq<T: PartialEq + std::fmt::Display>(name: impl Into<String>, got: &T, want: &T) -> Check {
        let passed = got == want;
        let detail = if passed { got.to_string() } else { format!("got {got}, expected {want}") };
        Check::new(name, passed, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> SuiteReport {
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        SuiteReport { suite: suite.into(), passed, checks }
    }
}

/// Default size or order bound for a suite.
pub fn default_bound(suite: &str) -> usize {
    match suite {
        "degree1" => 4,
        "nakajima" | "degeneration" => 4,
        "gwdt" => 2,
        _ => 6,
    }
}

pub fn run_suite(suite: &str, bound: Option<usize>) -> Result<SuiteReport, VerifyError> {
    let n = bound.unwrap_or_else(|| default_bound(suite));
    match suite {
        "theorem0" => theorem0(&vertex_series(&no_legs(), n)?.series),
        "cy" => calabi_yau(&vertex_series(&no_legs(), n)?.series),
        "cubic" => cubic(n),
        "constant-term" => constant_term(n),
        "character" => character(n),
        "degree1" => degree1(n),
        "toric" => toric(&vertex_series(&no_legs(), n)?.series),
        "nakajima" => nakajima(n as u32),
        "degeneration" => degeneration(n as u32),
        "gwdt" => gwdt(n as u32),
        other => Err(VerifyError::UnknownSuite(other.into())),
    }
}

fn nonempty_up_to(n: usize) -> impl Iterator<Item = (usize, Vec<Partition3D>)> {
    (1..=n).map(|k| (k, enumerate_finite(k)))
}

/// Coefficientwise equality of the computed series with `M(-q)^{-c}`.
pub fn theorem0(w: &QSeries) -> Result<SuiteReport, VerifyError> {
    let want = degree_zero_closed_form(w.order())?;
    let checks = (0..=w.order())
        .map(|k| Check::eq(format!("q^{k}"), w.coeff(k), want.coeff(k)))
        .collect();
    Ok(SuiteReport::new("theorem0", checks))
}

/// `W|_{s3 = -s1 - s2} = M(-q)` coefficientwise.
pub fn calabi_yau(w: &QSeries) -> Result<SuiteReport, VerifyError> {
    let m = macmahon(w.order(), true);
    let cy = w.substitute(&LinearSubst::calabi_yau())?;
    let checks = (0..=w.order())
        .map(|k| Check::eq(format!("q^{k}"), cy.coeff(k), m.coeff(k)))
        .collect();
    Ok(SuiteReport::new("cy", checks))
}

pub fn cubic(n: usize) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    for (k, parts) in nonempty_up_to(n) {
        let mults = parts.par_iter().map(cubic_multiplicity).collect::<Result<Vec<_>, _>>()?;
        let min = mults.iter().flat_map(|m| m.iter().copied()).min().unwrap_or(0);
        checks.push(Check::new(
            format!("|pi| = {k}"),
            min >= 1,
            format!("{} partitions, minimal multiplicity {min}", parts.len()),
        ));
    }
    Ok(SuiteReport::new("cubic", checks))
}

pub fn constant_term(n: usize) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    for (k, parts) in nonempty_up_to(n) {
        let pairs = parts.par_iter().map(constant_term_check).collect::<Result<Vec<_>, _>>()?;
        let bad = pairs.iter().filter(|(l, r)| l != r || *l >= 0).count();
        checks.push(Check::new(
            format!("|pi| = {k}"),
            bad == 0,
            format!("{} partitions, {bad} failures", parts.len()),
        ));
    }
    Ok(SuiteReport::new("constant-term", checks))
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

fn inverse(p: [usize; 3]) -> [usize; 3] {
    let mut q = [0; 3];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// Whether `w(sigma . pi)` is `w(pi)` with the variables permuted.
pub fn equivariant(p: &Partition3D, perm: [usize; 3]) -> Result<bool, VerifyError> {
    let w = vertex_measure(p)?.to_ratfunc();
    let ws = vertex_measure(&p.permute(perm))?.to_ratfunc();
    Ok(ws == w.substitute(&LinearSubst::permutation(inverse(perm)))?)
}

pub fn character(n: usize) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    for k in 0..=n {
        let parts = enumerate_finite(k);
        let chars = parts.par_iter().map(vertex_character).collect::<Result<Vec<_>, _>>()?;
        let sums = chars.iter().filter(|v| v.augmentation() != 0).count();
        let consts = chars.iter().filter(|v| v.constant_term() != 0).count();
        checks.push(Check::new(format!("sum v_k = 0, |pi| = {k}"), sums == 0, format!("{} partitions", parts.len())));
        checks.push(Check::new(format!("v_0 = 0, |pi| = {k}"), consts == 0, format!("{} partitions", parts.len())));
        let eq = parts
            .par_iter()
            .map(|p| {
                PERMUTATIONS
                    .iter()
                    .try_fold(true, |acc, &perm| Ok::<_, VerifyError>(acc && equivariant(p, perm)?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bad = eq.iter().filter(|b| !**b).count();
        checks.push(Check::new(format!("S3 equivariance, |pi| = {k}"), bad == 0, format!("{bad} failures")));
    }
    Ok(SuiteReport::new("character", checks))
}

pub fn degree1(order: usize) -> Result<SuiteReport, VerifyError> {
    let w = vertex_series(&parse_legs("1,0,0").expect("valid legs"), order)?.series;
    let want = degree_one_closed_form(order)?;
    let checks = (0..=order)
        .map(|k| Check::eq(format!("q^{k}"), w.coeff(k), want.coeff(k)))
        .collect();
    Ok(SuiteReport::new("degree1", checks))
}

/// Exponents of the compact fixtures, product path against exponent path,
/// and the `s1`-pole extraction. `w` is the enumerated degree-zero vertex.
pub fn toric(w: &QSeries) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    let int = |n: i64| RatFunc::from_integer(n);
    let expected = [("p3", -20), ("p1xp1xp1", -16), ("p3-rel-plane", -8)];
    for (name, value) in expected {
        let e = bott_exponent(&fixture(name).expect("fixture"))?;
        checks.push(Check::eq(format!("exponent {name}"), &e, &int(value)));
    }
    for name in FIXTURE_NAMES {
        let g = fixture(name).expect("fixture");
        if g.compact {
            let e = bott_exponent(&g)?;
            checks.push(Check::new(format!("{name} exponent is constant"), e.as_constant().is_some(), e.to_string()));
        }
    }
    let c = cubic_ratio();
    let rel = fixture("p1xc2-rel").expect("fixture");
    checks.push(Check::eq("exponent affine", &bott_exponent(&fixture("affine").expect("fixture"))?, &-&c));
    checks.push(Check::eq("exponent p1xc2-rel", &bott_exponent(&rel)?, &(&-&c + &leg_exponent())));
    let mut no_div = rel.clone();
    no_div.divisor.clear();
    checks.push(Check::eq("empty divisor is absolute", &bott_exponent(&no_div)?, &-&c));

    let order = w.order();
    let z = degree0_partition_function(&rel, order)?;
    let prod = product_path(&rel, w, &winfty_series(order))?;
    let agree = (0..=order).all(|k| z.coeff(k) == prod.coeff(k));
    checks.push(Check::new(format!("p1xc2-rel paths agree to q^{order}"), agree, ""));

    // polar part of log W in s1, reflected s1 -> -s1, against log W_inf
    let logw = w.log()?;
    let logwi = winfty_series(order).log()?;
    let flip = LinearSubst::from_integer_images([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let mut pole_ok = true;
    for k in 0..=order {
        let polar = s1_polar_part(logw.coeff(k))?.substitute(&flip)?;
        pole_ok &= &polar == logwi.coeff(k);
    }
    checks.push(Check::new("s1-polar part of log W gives log W_inf", pole_ok, ""));
    Ok(SuiteReport::new("toric", checks))
}

/// Pairing matrix, symmetry and splitting consistency for `k <= kmax`
/// over a self-dual two-label table and a unit/point table.
pub fn nakajima(kmax: u32) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    for (tname, table) in [("self-dual", LabelTable::self_dual(2)), ("unit-point", LabelTable::unit_and_point())] {
        for k in 0..=kmax {
            let basis = weighted_partitions(k, &table);
            let mut diag = true;
            let mut symmetric = true;
            for eta in &basis {
                for nu in &basis {
                    let v = pairing(eta, nu, k, &table)?;
                    let want = if *nu == eta.dual(&table) {
                        let s = if (k - eta.length()) % 2 == 0 { 1 } else { -1 };
                        BigRational::new(s.into(), eta.zeta())
                    } else {
                        BigRational::from_integer(0.into())
                    };
                    diag &= v == want;
                    symmetric &= v == pairing(nu, eta, k, &table)?;
                }
            }
            checks.push(Check::new(format!("{tname} k={k} pairing diagonal"), diag, format!("{} basis elements", basis.len())));
            checks.push(Check::new(format!("{tname} k={k} pairing symmetric"), symmetric, ""));
            let mut total = BigRational::from_integer(0.into());
            for (eta, dual, c) in diagonal_splitting(k, &table) {
                total += c * pairing(&dual, &eta, k, &table)?;
            }
            checks.push(Check::eq(
                format!("{tname} k={k} splitting against pairing"),
                &total,
                &BigRational::from_integer(basis.len().into()),
            ));
        }
    }
    Ok(SuiteReport::new("nakajima", checks))
}

pub fn degeneration(kmax: u32) -> Result<SuiteReport, VerifyError> {
    let table = LabelTable::self_dual(2);
    let mut checks = Vec::new();
    for k in 0..=kmax {
        let etas = weighted_partitions(k, &table);
        let mut ok = true;
        let mut mutant_caught = true;
        for eta in &etas {
            for d1 in -2..=6 {
                for d2 in -2..=6 {
                    ok &= degeneration_consistency(d1, d2, eta);
                    mutant_caught &= !degeneration_consistency_with(d1, d2, eta, |e| {
                        let m = dt_gluing_factor(e);
                        Monomial { coeff: -m.coeff, ..m }
                    });
                }
            }
        }
        checks.push(Check::new(format!("|eta| = {k}"), ok, format!("{} partitions", etas.len())));
        checks.push(Check::new(format!("|eta| = {k} sign mutation rejected"), mutant_caught, ""));
    }
    Ok(SuiteReport::new("degeneration", checks))
}

/// Local curves on the `(g, d)` grid, the P^3 line example and the
/// relative example for `m <= mmax`.
pub fn gwdt(mmax: u32) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    for g in 0..=4i64 {
        for d in 0..=6i64 {
            if 2 * g - 2 + d < 0 && (g, d) != (0, 1) {
                continue;
            }
            let got = gw_to_dt(&gw_local_curve(g, d), d, 0)?;
            let want = local_curve_dt(g, d);
            checks.push(Check::eq(format!("local g={g} d={d}"), &got, &want));
            checks.push(Check::new(
                format!("local g={g} d={d} initial term"),
                got.lowest_power() == Some(1 - g) && got.leading_coefficient() == Some(BigRational::from_integer(1.into())),
                "",
            ));
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let p3_want = DTRational::new(1, vec![half.clone(), BigRational::from_integer(0.into()), -half], vec![BigRational::from_integer(1.into())])?;
    checks.push(Check::eq("p3 line example", &gw_to_dt(&gw_p3_line_example(), 4, 1)?, &p3_want));
    let table = LabelTable::self_dual(2);
    for m in 1..=mmax {
        for eta in weighted_partitions(m, &table) {
            let got = relative_example(m, &eta)?;
            let want = DTRational::monomial(pairing(&eta, &eta.dual(&table), m, &table)?, m as i64);
            checks.push(Check::eq(format!("relative m={m} eta={eta}"), &got, &want));
        }
    }
    Ok(SuiteReport::new("gwdt", checks))
}
