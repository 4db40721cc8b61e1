use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linear::{LinearForm, LinearSubst};
use super::poly::{MultiPoly, MOD_PRIME};
use super::AlgebraError;

/// Rational function in `s1, s2, s3` whose denominator is a product of
/// powers of canonical linear forms.
///
/// Normal form: any rational scalar lives in the numerator, and no
/// denominator form divides the numerator. Since the forms are canonical
/// primes, the normal form is unique and structural equality is equality
/// of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: BTreeMap<LinearForm, u32>,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: MultiPoly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(MultiPoly::one())
    }

    pub fn from_poly(num: MultiPoly) -> RatFunc {
        RatFunc { num, den: BTreeMap::new() }
    }

    pub fn from_rational(c: BigRational) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn from_integer(c: i64) -> RatFunc {
        RatFunc::from_poly(MultiPoly::from_integer(c))
    }

    pub fn var(i: usize) -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(i))
    }

    /// Builds `num / prod den` and normalizes.
    pub fn new(num: MultiPoly, den: BTreeMap<LinearForm, u32>) -> RatFunc {
        let mut r = RatFunc { num, den };
        r.den.retain(|_, e| *e > 0);
        r.normalize();
        r
    }

    /// Builds a value the caller guarantees is already normalized.
    pub(crate) fn from_parts_unchecked(num: MultiPoly, den: BTreeMap<LinearForm, u32>) -> RatFunc {
        RatFunc { num, den }
    }

    /// `1 / form`.
    pub fn inverse_form(f: LinearForm) -> RatFunc {
        RatFunc { num: MultiPoly::one(), den: BTreeMap::from([(f, 1)]) }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.den
    }

    pub fn denominator_poly(&self) -> MultiPoly {
        self.den
            .iter()
            .fold(MultiPoly::one(), |acc, (f, &e)| acc.mul_form_pow(f, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Net degree: numerator degree minus denominator degree (homogeneous
    /// inputs only).
    pub fn degree(&self) -> Option<i64> {
        if !self.num.is_homogeneous() {
            return None;
        }
        let d: u32 = self.den.values().sum();
        self.num.total_degree().map(|n| n as i64 - d as i64)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let forms: Vec<LinearForm> = self.den.keys().copied().collect();
        for f in forms {
            let mut e = self.den[&f];
            while e > 0 && maybe_divisible(&self.num, &f) {
                match self.num.div_form(&f) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                self.den.remove(&f);
            } else {
                self.den.insert(f, e);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Division; the divisor's numerator must either divide the result's
    /// numerator or be a constant times a product of canonical forms that
    /// already appear in either operand.
    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(RatFunc::zero());
        }
        // a/b = (a.num * b.den) / (a.den * b.num)
        let top = rhs
            .den
            .iter()
            .fold(self.num.clone(), |acc, (f, &e)| acc.mul_form_pow(f, e));
        if let Some(q) = top.div_exact(&rhs.num) {
            return Ok(RatFunc::new(q, self.den.clone()));
        }
        let candidates: Vec<LinearForm> =
            self.den.keys().chain(rhs.den.keys()).copied().collect();
        let (scalar, factors) = split_linear_factors(&rhs.num, &candidates)
            .ok_or(AlgebraError::NonLinearDenominator)?;
        let mut den = self.den.clone();
        for (f, e) in factors {
            *den.entry(f).or_insert(0) += e;
        }
        let inv = BigRational::one() / scalar;
        Ok(RatFunc::new(top.scale(&inv), den))
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        let mut r = RatFunc::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Applies a homogeneous linear substitution; fails if a denominator
    /// form maps to zero.
    pub fn substitute(&self, subst: &LinearSubst) -> Result<RatFunc, AlgebraError> {
        let mut scalar = BigRational::one();
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (f, &e) in &self.den {
            let (c, g) = f.substitute(subst).ok_or(AlgebraError::PoleHit(*f))?;
            for _ in 0..e {
                scalar *= &c;
            }
            *den.entry(g).or_insert(0) += e;
        }
        let num = self.num.substitute(subst).scale(&(BigRational::one() / scalar));
        Ok(RatFunc::new(num, den))
    }

    /// Equality by cross-multiplication, independent of normal forms.
    pub fn eq_cross(&self, other: &RatFunc) -> bool {
        &self.num * &other.denominator_poly() == &other.num * &self.denominator_poly()
    }

    /// Sums many terms by pairwise reduction so intermediate denominators
    /// stay small.
    pub fn sum_all(mut items: Vec<RatFunc>) -> RatFunc {
        if items.is_empty() {
            return RatFunc::zero();
        }
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len().div_ceil(2));
            let mut it = items.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(&a + &b),
                    None => next.push(a),
                }
            }
            items = next;
        }
        items.pop().unwrap()
    }

    pub fn eval_rational(&self, point: &[BigRational; 3]) -> Option<BigRational> {
        let d = self.denominator_poly().eval_rational(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(point) / d)
    }
}

/// Cheap necessary test for `f | p`: evaluate `p` mod a large prime at a
/// pseudo-random point on the hyperplane `f = 0`.
fn maybe_divisible(p: &MultiPoly, f: &LinearForm) -> bool {
    let k = f.coeffs();
    let j = f.lead_var();
    // point with coordinates x_i free for i != j and x_j = -(sum k_i x_i)/k_j,
    // scaled by k_j to stay integral
    let seeds = [0x9e37_79b9_7f4a_7c15u64, 0xbf58_476d_1ce4_e5b9, 0x94d0_49bb_1331_11eb];
    let p_mod = MOD_PRIME;
    let mut pt = [0u64; 3];
    let mut rest: i128 = 0;
    for i in 0..3 {
        if i == j {
            continue;
        }
        let x = (seeds[i] % 1_000_003) as i128 + 17;
        pt[i] = ((x * k[j] as i128).rem_euclid(p_mod as i128)) as u64;
        rest += k[i] as i128 * x;
    }
    pt[j] = ((-rest).rem_euclid(p_mod as i128)) as u64;
    debug_assert_eq!(
        (0..3).map(|i| k[i] as i128 * pt[i] as i128).sum::<i128>().rem_euclid(p_mod as i128),
        0
    );
    match p.eval_mod(pt, p_mod) {
        Some(v) => v == 0,
        None => true,
    }
}

/// Writes `p` as `scalar * prod f^e` using only the candidate forms.
fn split_linear_factors(
    p: &MultiPoly,
    candidates: &[LinearForm],
) -> Option<(BigRational, BTreeMap<LinearForm, u32>)> {
    let mut rest = p.clone();
    let mut factors = BTreeMap::new();
    let mut sorted: Vec<LinearForm> = candidates.to_vec();
    sorted.sort();
    sorted.dedup();
    // variables are canonical forms as well
    for f in [LinearForm::S1, LinearForm::S2, LinearForm::S3] {
        if !sorted.contains(&f) {
            sorted.push(f);
        }
    }
    for f in sorted {
        while let Some(q) = rest.div_form(&f) {
            rest = q;
            *factors.entry(f).or_insert(0) += 1;
        }
    }
    let c = rest.as_constant()?;
    if c.is_zero() {
        return None;
    }
    Some((c, factors))
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut lcd = self.den.clone();
        for (f, &e) in &rhs.den {
            let slot = lcd.entry(*f).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |r: &RatFunc| {
            lcd.iter().fold(r.num.clone(), |acc, (f, &e)| {
                let have = r.den.get(f).copied().unwrap_or(0);
                acc.mul_form_pow(f, e - have)
            })
        };
        let num = &lift(self) + &lift(rhs);
        RatFunc::new(num, lcd)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (f, &e) in &rhs.den {
            *den.entry(*f).or_insert(0) += e;
        }
        RatFunc::new(&self.num * &rhs.num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatFunc {
    /// Canonical text: `(numerator)/(f1^e1*f2^e2...)` with forms sorted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (n, (form, &e)) in self.den.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "({form})")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        f.write_str(")")
    }
}
