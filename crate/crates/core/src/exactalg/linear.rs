use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A primitive integer linear form `a1*s1 + a2*s2 + a3*s3`.
///
/// Stored canonically: the gcd of the coefficients is 1 and the first
/// nonzero coefficient is positive. Any sign or content split off during
/// canonicalization is carried by whoever owns the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm([i64; 3]);

impl LinearForm {
    pub const S1: LinearForm = LinearForm([1, 0, 0]);
    pub const S2: LinearForm = LinearForm([0, 1, 0]);
    pub const S3: LinearForm = LinearForm([0, 0, 1]);

    /// Splits an integer vector `k` into `scalar * form` with `form`
    /// canonical. Returns `None` for the zero vector.
    pub fn canonicalize(k: [i64; 3]) -> Option<(i64, LinearForm)> {
        let g = k.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return None;
        }
        let lead = k.iter().copied().find(|&c| c != 0)?;
        let scalar = if lead < 0 { -g } else { g };
        Some((scalar, LinearForm([k[0] / scalar, k[1] / scalar, k[2] / scalar])))
    }

    /// Builds a form that is already canonical; errors otherwise.
    pub fn new(coeffs: [i64; 3]) -> Result<LinearForm, AlgebraError> {
        match LinearForm::canonicalize(coeffs) {
            Some((1, f)) => Ok(f),
            _ => Err(AlgebraError::NonCanonicalForm(coeffs)),
        }
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.0
    }

    /// Index of the first nonzero coefficient; this variable carries the
    /// lex-leading monomial of the form.
    pub fn lead_var(&self) -> usize {
        self.0.iter().position(|&c| c != 0).unwrap_or(0)
    }

    /// Evaluates the form at an integer point.
    pub fn eval_i64(&self, point: [i64; 3]) -> i64 {
        self.0.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    /// Image of the form under a linear substitution of the variables.
    /// Returns the rational scalar and canonical form, or `None` when the
    /// image is identically zero.
    pub fn substitute(&self, subst: &LinearSubst) -> Option<(BigRational, LinearForm)> {
        let mut image = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
        for (var, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, c) in subst.rows[var].iter().enumerate() {
                image[j] += c * BigRational::from_integer(a.into());
            }
        }
        split_rational_form(&image)
    }
}

/// Clears denominators of a rational coefficient vector and splits it into
/// a rational scalar times a canonical integer form.
pub(crate) fn split_rational_form(v: &[BigRational; 3]) -> Option<(BigRational, LinearForm)> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return None;
    }
    let lead_neg = ints.iter().find(|c| !c.is_zero())?.is_negative();
    let g = if lead_neg { -g } else { g };
    let mut coeffs = [0i64; 3];
    for (slot, c) in coeffs.iter_mut().zip(&ints) {
        *slot = i64::try_from(c / &g).expect("linear form coefficient overflows i64");
    }
    Some((BigRational::new(g, lcm), LinearForm(coeffs)))
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "s{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// A homogeneous linear change of variables `s_i -> sum_j rows[i][j] * s_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubst {
    pub(crate) rows: [[BigRational; 3]; 3],
}

impl LinearSubst {
    pub fn identity() -> LinearSubst {
        let e = |i: usize| {
            let mut r = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
            r[i] = BigRational::one();
            r
        };
        LinearSubst { rows: [e(0), e(1), e(2)] }
    }

    /// Each variable `s_{i+1}` is replaced by the integer form `images[i]`.
    pub fn from_integer_images(images: [[i64; 3]; 3]) -> LinearSubst {
        let row = |r: [i64; 3]| r.map(|c| BigRational::from_integer(c.into()));
        LinearSubst { rows: images.map(row) }
    }

    /// Replaces the single variable `s_{var+1}` and leaves the rest fixed.
    pub fn single(var: usize, image: [BigRational; 3]) -> LinearSubst {
        let mut s = LinearSubst::identity();
        s.rows[var] = image;
        s
    }

    /// The Calabi-Yau specialization `s3 -> -s1 - s2`.
    pub fn calabi_yau() -> LinearSubst {
        LinearSubst::from_integer_images([[1, 0, 0], [0, 1, 0], [-1, -1, 0]])
    }

    /// Permutes the variables: `s_i -> s_{perm[i]}`.
    pub fn permutation(perm: [usize; 3]) -> LinearSubst {
        let mut images = [[0i64; 3]; 3];
        for (i, &p) in perm.iter().enumerate() {
            images[i][p] = 1;
        }
        LinearSubst::from_integer_images(images)
    }

    pub fn image(&self, var: usize) -> &[BigRational; 3] {
        &self.rows[var]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_extracts_sign_and_content() {
        assert_eq!(LinearForm::canonicalize([0, -2, -4]), Some((-2, LinearForm([0, 1, 2]))));
        assert_eq!(LinearForm::canonicalize([3, -6, 0]), Some((3, LinearForm([1, -2, 0]))));
        assert_eq!(LinearForm::canonicalize([0, 0, 0]), None);
    }

    #[test]
    fn substitution_can_annihilate_a_form() {
        let f = LinearForm::new([1, 1, 1]).unwrap();
        assert!(f.substitute(&LinearSubst::calabi_yau()).is_none());
        let (c, g) = LinearForm::S3.substitute(&LinearSubst::calabi_yau()).unwrap();
        assert_eq!(c, BigRational::from_integer((-1).into()));
        assert_eq!(g, LinearForm([1, 1, 0]));
    }

    #[test]
    fn display() {
        assert_eq!(LinearForm([1, -2, 0]).to_string(), "s1-2*s2");
        assert_eq!(LinearForm([0, 1, 1]).to_string(), "s2+s3");
    }
}
