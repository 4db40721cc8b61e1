//! The change of variables `e^{iu} = -q` applied to closed-form
//! Gromov-Witten series, with `y = e^{iu/2}` kept as an exact variable.

use std::fmt;
use std::ops::{Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::hilb::WeightedPartition;

/// Gaussian rationals `a + b i`.
pub type Gauss = Complex<BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error("u-power {0} survives the prefactor")]
    ResidualU(i64),
    #[error("odd powers of e^(iu/2) survive; result is not a function of q")]
    OddPower,
    #[error("result has a nonzero imaginary part")]
    Imaginary,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected |eta| = {expected}, got {got}")]
    SizeMismatch { expected: u32, got: u32 },
}

fn gauss(re: i64, im: i64) -> Gauss {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

fn real(r: BigRational) -> Gauss {
    Complex::new(r, BigRational::zero())
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly<T> {
    c: Vec<T>,
}

impl<T: Clone + PartialEq + Zero + One + Sub<Output = T> + Mul<Output = T> + std::ops::Div<Output = T> + Neg<Output = T>> Poly<T> {
    fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    fn one() -> Self {
        Poly { c: vec![T::one()] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    fn scale(&self, k: &T) -> Self {
        Poly::new(self.c.iter().map(|x| x.clone() * k.clone()).collect())
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |p: &Self, i: usize| p.c.get(i).cloned().unwrap_or_else(T::zero);
        Poly::new((0..n).map(|i| get(self, i) + get(o, i)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly { c: Vec::new() };
        }
        let mut out = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        let mut r = self.c.clone();
        let dl = d.lead();
        let mut q = vec![T::zero(); self.c.len().saturating_sub(d.c.len()) + 1];
        while r.len() >= d.c.len() && !r.is_empty() {
            let shift = r.len() - d.c.len();
            let f = r.last().unwrap().clone() / dl.clone();
            for (i, x) in d.c.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - f.clone() * x.clone();
            }
            q[shift] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    fn monic(&self) -> Self {
        let l = self.lead();
        Poly::new(self.c.iter().map(|x| x.clone() / l.clone()).collect())
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Splits off the power of the variable: `p = x^k * p'` with `p'(0) != 0`.
    fn strip_low(&self) -> (i64, Self) {
        let k = self.c.iter().take_while(|x| x.is_zero()).count();
        (k as i64, Poly { c: self.c[k..].to_vec() })
    }
}

/// `scalar * y^shift * num(y) / den(y)` times `u^upow`, where `num` and
/// `den` are monic, coprime and nonvanishing at `y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigExpr {
    upow: i64,
    scalar: Gauss,
    shift: i64,
    num: Poly<Gauss>,
    den: Poly<Gauss>,
}

impl TrigExpr {
    fn build(upow: i64, scalar: Gauss, shift: i64, num: Poly<Gauss>, den: Poly<Gauss>) -> Result<TrigExpr, CorrespondenceError> {
        if den.is_zero() {
            return Err(CorrespondenceError::DivisionByZero);
        }
        if num.is_zero() || scalar.is_zero() {
            return Ok(TrigExpr::zero());
        }
        let (kn, num) = num.strip_low();
        let (kd, den) = den.strip_low();
        let g = num.gcd(&den);
        let (num, den) = (num.divrem(&g).0, den.divrem(&g).0);
        let scalar = scalar * num.lead() / den.lead();
        Ok(TrigExpr { upow, scalar, shift: shift + kn - kd, num: num.monic(), den: den.monic() })
    }

    pub fn zero() -> TrigExpr {
        TrigExpr { upow: 0, scalar: Gauss::zero(), shift: 0, num: Poly::new(Vec::new()), den: Poly::one() }
    }

    pub fn one() -> TrigExpr {
        TrigExpr::scalar(Gauss::one())
    }

    pub fn scalar(c: Gauss) -> TrigExpr {
        TrigExpr::build(0, c, 0, Poly::one(), Poly::one()).expect("nonzero denominator")
    }

    /// `u^m`.
    pub fn u_power(m: i64) -> TrigExpr {
        TrigExpr { upow: m, ..TrigExpr::one() }
    }

    /// Laurent polynomial `sum c_k y^{lo + k}`.
    pub fn y_laurent(lo: i64, coeffs: Vec<Gauss>) -> TrigExpr {
        TrigExpr::build(0, Gauss::one(), lo, Poly::new(coeffs), Poly::one()).expect("nonzero denominator")
    }

    /// `sin(u/2) = (y - 1/y) / (2i)`.
    pub fn sin_half() -> TrigExpr {
        TrigExpr::y_laurent(-1, vec![gauss(-1, 0), gauss(0, 0), gauss(1, 0)]).mul(&TrigExpr::scalar(gauss(0, 2).inv()))
    }

    /// `cos(u/2) = (y + 1/y) / 2`.
    pub fn cos_half() -> TrigExpr {
        TrigExpr::y_laurent(-1, vec![gauss(1, 0), gauss(0, 0), gauss(1, 0)]).mul(&TrigExpr::scalar(real(BigRational::new(1.into(), 2.into()))))
    }

    /// `sin(u/2) / (u/2)`.
    pub fn sinc_half() -> TrigExpr {
        TrigExpr::sin_half().mul(&TrigExpr::scalar(gauss(2, 0))).mul(&TrigExpr::u_power(-1))
    }

    pub fn upow(&self) -> i64 {
        self.upow
    }

    pub fn scalar_part(&self) -> &Gauss {
        &self.scalar
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn mul(&self, o: &TrigExpr) -> TrigExpr {
        if self.is_zero() || o.is_zero() {
            return TrigExpr::zero();
        }
        TrigExpr::build(
            self.upow + o.upow,
            self.scalar.clone() * o.scalar.clone(),
            self.shift + o.shift,
            self.num.mul(&o.num),
            self.den.mul(&o.den),
        )
        .expect("product of nonzero denominators")
    }

    pub fn inverse(&self) -> Result<TrigExpr, CorrespondenceError> {
        if self.is_zero() {
            return Err(CorrespondenceError::DivisionByZero);
        }
        TrigExpr::build(-self.upow, self.scalar.inv(), -self.shift, self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Result<TrigExpr, CorrespondenceError> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        Ok((0..n.unsigned_abs()).fold(TrigExpr::one(), |acc, _| acc.mul(&base)))
    }

    /// Sum of two expressions with the same `u`-power.
    pub fn add(&self, o: &TrigExpr) -> TrigExpr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.upow, o.upow, "only like powers of u can be added");
        let lo = self.shift.min(o.shift);
        let lift = |t: &TrigExpr, other_den: &Poly<Gauss>| {
            let mut c = vec![Gauss::zero(); (t.shift - lo) as usize];
            c.extend(t.num.scale(&t.scalar).mul(other_den).c);
            Poly::new(c)
        };
        let num = lift(self, &o.den).add(&lift(o, &self.den));
        TrigExpr::build(self.upow, Gauss::one(), lo, num, self.den.mul(&o.den)).expect("nonzero denominator")
    }
}

/// `(sin(u/2) / (u/2))^{2g-2+d} u^{2g-2}`.
pub fn gw_local_curve(g: i64, d: i64) -> TrigExpr {
    TrigExpr::sinc_half()
        .pow(2 * g - 2 + d)
        .expect("sinc is invertible")
        .mul(&TrigExpr::u_power(2 * g - 2))
}

/// `(sin(u/2)/(u/2)) cos(u/2) u^{-2}`, the line class on P^3 with one
/// primary and one first descendent of the point.
pub fn gw_p3_line_example() -> TrigExpr {
    TrigExpr::sinc_half().mul(&TrigExpr::cos_half()).mul(&TrigExpr::u_power(-2))
}

/// `q^shift * num(q) / den(q)` with `den` monic, `num(0), den(0) != 0`
/// and `num`, `den` coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTRational {
    shift: i64,
    num: Poly<BigRational>,
    den: Poly<BigRational>,
}

impl DTRational {
    pub fn new(shift: i64, num: Vec<BigRational>, den: Vec<BigRational>) -> Result<DTRational, CorrespondenceError> {
        let (num, den) = (Poly::new(num), Poly::new(den));
        if den.is_zero() {
            return Err(CorrespondenceError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(DTRational { shift: 0, num, den: Poly::one() });
        }
        let (kn, num) = num.strip_low();
        let (kd, den) = den.strip_low();
        let g = num.gcd(&den);
        let (num, den) = (num.divrem(&g).0, den.divrem(&g).0);
        let l = den.lead();
        Ok(DTRational { shift: shift + kn - kd, num: num.scale(&(BigRational::one() / l.clone())), den: den.monic() })
    }

    pub fn from_integers(shift: i64, num: &[i64], den: &[i64]) -> Result<DTRational, CorrespondenceError> {
        let conv = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        DTRational::new(shift, conv(num), conv(den))
    }

    /// `c q^k`.
    pub fn monomial(c: BigRational, k: i64) -> DTRational {
        DTRational::new(k, vec![c], vec![BigRational::one()]).expect("nonzero denominator")
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Lowest power of `q` in the Laurent expansion at `q = 0`.
    pub fn lowest_power(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    /// Coefficient of the lowest power of `q`.
    pub fn leading_coefficient(&self) -> Option<BigRational> {
        (!self.is_zero()).then(|| self.num.c[0].clone() / self.den.c[0].clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    pub fn mul(&self, o: &DTRational) -> DTRational {
        DTRational::new(self.shift + o.shift, self.num.mul(&o.num).c, self.den.mul(&o.den).c).expect("nonzero denominator")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, shift: i64, p: &Poly<BigRational>) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.c.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = shift + i as i64;
        let neg = c < &BigRational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        first = false;
        let mono = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{e}"),
        };
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{a}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for DTRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write_poly(f, self.shift, &self.num);
        }
        write!(f, "(")?;
        write_poly(f, self.shift, &self.num)?;
        write!(f, ")/(")?;
        write_poly(f, 0, &self.den)?;
        write!(f, ")")
    }
}

/// Multiplies by `(-iu)^{prefactor}` and `(-q)^{d/2} = y^d`, then sets
/// `y^2 = -q`.
pub fn convert(e: &TrigExpr, prefactor: i64, d: i64) -> Result<DTRational, CorrespondenceError> {
    let e = e
        .mul(&TrigExpr::scalar(gauss(0, -1)).pow(prefactor)?)
        .mul(&TrigExpr::u_power(prefactor))
        .mul(&TrigExpr::y_laurent(d, vec![Gauss::one()]));
    if e.upow != 0 {
        return Err(CorrespondenceError::ResidualU(e.upow));
    }
    if e.is_zero() {
        return DTRational::new(0, Vec::new(), vec![BigRational::one()]);
    }
    let even = |p: &Poly<Gauss>| p.c.iter().skip(1).step_by(2).all(|x| x.is_zero());
    if e.shift % 2 != 0 || !even(&e.num) || !even(&e.den) {
        return Err(CorrespondenceError::OddPower);
    }
    // y^{2j} -> (-1)^j q^j
    let to_q = |p: &Poly<Gauss>, scale: &Gauss| -> Result<Vec<BigRational>, CorrespondenceError> {
        p.c.iter()
            .step_by(2)
            .enumerate()
            .map(|(j, x)| {
                let v = x.clone() * scale.clone();
                if !v.im.is_zero() {
                    return Err(CorrespondenceError::Imaginary);
                }
                Ok(if j % 2 == 0 { v.re } else { -v.re })
            })
            .collect()
    };
    let half = e.shift / 2;
    let sign = if half.rem_euclid(2) == 0 { gauss(1, 0) } else { gauss(-1, 0) };
    let num = to_q(&e.num, &(e.scalar.clone() * sign))?;
    let den = to_q(&e.den, &Gauss::one())?;
    DTRational::new(half, num, den)
}

/// The primary/descendent correspondence: prefactor `(-iu)^{d - sum k}`.
pub fn gw_to_dt(e: &TrigExpr, d: i64, sum_k: i64) -> Result<DTRational, CorrespondenceError> {
    convert(e, d - sum_k, d)
}

/// `q^{1-g} (1+q)^{2g-2+d}`, built directly.
pub fn local_curve_dt(g: i64, d: i64) -> DTRational {
    let n = 2 * g - 2 + d;
    let binom: Vec<BigRational> = {
        let mut row = vec![BigInt::one()];
        for _ in 0..n.unsigned_abs() {
            let mut next = vec![BigInt::zero(); row.len() + 1];
            for (i, c) in row.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c;
            }
            row = next;
        }
        row.into_iter().map(BigRational::from_integer).collect()
    };
    let one = vec![BigRational::one()];
    let (num, den) = if n >= 0 { (binom, one) } else { (one, binom) };
    DTRational::new(1 - g, num, den).expect("nonzero denominator")
}

/// Relative theory of `P^1 x D` in class `m [P^1]`: the GW series
/// `u^{-2 l(eta)} / z(eta)` converted with prefactor
/// `(-iu)^{d - 2m + l(eta) + l(eta^dual)}` and `d = 2m`.
pub fn relative_example(m: u32, eta: &WeightedPartition) -> Result<DTRational, CorrespondenceError> {
    if eta.size() != m {
        return Err(CorrespondenceError::SizeMismatch { expected: m, got: eta.size() });
    }
    let len = eta.length() as i64;
    let gw = TrigExpr::scalar(real(BigRational::new(1.into(), eta.zeta()))).mul(&TrigExpr::u_power(-2 * len));
    let d = 2 * m as i64;
    // the dual partition has the same length
    convert(&gw, d - 2 * m as i64 + 2 * len, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn local_curve_expressions() {
        assert_eq!(gw_local_curve(1, 0), TrigExpr::one());
        assert_eq!(gw_local_curve(0, 2), TrigExpr::u_power(-2));
        let e = gw_local_curve(0, 1);
        assert_eq!(e.upow(), -1);
        // 2i / (y - 1/y) * 1/2
        let want = TrigExpr::y_laurent(-1, vec![gauss(-1, 0), gauss(0, 0), gauss(1, 0)])
            .inverse()
            .unwrap()
            .mul(&TrigExpr::scalar(gauss(0, 1)))
            .mul(&TrigExpr::u_power(-1));
        assert_eq!(e, want);
    }

    #[test]
    fn trig_identities() {
        // sin^2 + cos^2 = 1
        let s = TrigExpr::sin_half().pow(2).unwrap();
        let c = TrigExpr::cos_half().pow(2).unwrap();
        assert_eq!(s.add(&c), TrigExpr::one());
        // 2 sin cos = sin u = (y^2 - y^-2) / 2i
        let lhs = TrigExpr::sin_half().mul(&TrigExpr::cos_half()).mul(&TrigExpr::scalar(gauss(2, 0)));
        let rhs = TrigExpr::y_laurent(-2, vec![gauss(-1, 0), Gauss::zero(), Gauss::zero(), Gauss::zero(), gauss(1, 0)])
            .mul(&TrigExpr::scalar(gauss(0, 2).inv()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conversions() {
        assert_eq!(gw_to_dt(&TrigExpr::one(), 0, 0).unwrap(), DTRational::monomial(r(1, 1), 0));
        assert_eq!(gw_to_dt(&gw_local_curve(0, 1), 1, 0).unwrap(), DTRational::from_integers(1, &[1], &[1, 1]).unwrap());
        let p3 = gw_to_dt(&gw_p3_line_example(), 4, 1).unwrap();
        assert_eq!(p3, DTRational::new(1, vec![r(1, 2), r(0, 1), r(-1, 2)], vec![r(1, 1)]).unwrap());
        assert_eq!(p3.to_string(), "-1/2*q^3 + 1/2*q");
    }

    #[test]
    fn conversion_errors() {
        assert_eq!(gw_to_dt(&TrigExpr::u_power(1), 0, 0), Err(CorrespondenceError::ResidualU(1)));
        assert_eq!(gw_to_dt(&TrigExpr::one(), 1, 1), Err(CorrespondenceError::OddPower));
        assert_eq!(gw_to_dt(&TrigExpr::scalar(gauss(0, 1)), 0, 0), Err(CorrespondenceError::Imaginary));
    }

    #[test]
    fn local_curve_reference() {
        assert_eq!(local_curve_dt(0, 1).to_string(), "(q)/(q + 1)");
        assert_eq!(local_curve_dt(1, 1).to_string(), "q + 1");
        assert_eq!(local_curve_dt(2, 0).lowest_power(), Some(-1));
    }

    #[test]
    fn relative_examples() {
        let wp = |p: &[(u32, usize)]| WeightedPartition::new(p.to_vec()).unwrap();
        assert_eq!(relative_example(1, &wp(&[(1, 0)])).unwrap(), DTRational::monomial(r(1, 1), 1));
        assert_eq!(relative_example(2, &wp(&[(2, 0)])).unwrap(), DTRational::monomial(r(-1, 2), 2));
        assert_eq!(relative_example(2, &wp(&[(1, 0), (1, 0)])).unwrap(), DTRational::monomial(r(1, 2), 2));
        assert!(relative_example(3, &wp(&[(1, 0)])).is_err());
    }
}
