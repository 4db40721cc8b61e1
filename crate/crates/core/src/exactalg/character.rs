use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a torus character `t1^a t2^b t3^c`.
pub type Weight = [i64; 3];

/// Integer Laurent polynomial in `t1, t2, t3` with finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl LaurentCharacter {
    pub fn zero() -> LaurentCharacter {
        LaurentCharacter::default()
    }

    pub fn one() -> LaurentCharacter {
        LaurentCharacter::monomial([0, 0, 0], 1)
    }

    pub fn monomial(k: Weight, c: i64) -> LaurentCharacter {
        let mut ch = LaurentCharacter::zero();
        ch.add_term(k, c);
        ch
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(it: I) -> LaurentCharacter {
        let mut ch = LaurentCharacter::zero();
        for (k, c) in it {
            ch.add_term(k, c);
        }
        ch
    }

    pub fn add_term(&mut self, k: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(k).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: &Weight) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(&[0, 0, 0])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `t = (1,1,1)`.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `bar(Q)(t) = Q(1/t)`.
    pub fn bar(&self) -> LaurentCharacter {
        LaurentCharacter {
            terms: self.terms.iter().map(|(k, c)| ([-k[0], -k[1], -k[2]], *c)).collect(),
        }
    }

    pub fn shift(&self, by: Weight) -> LaurentCharacter {
        LaurentCharacter {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ([k[0] + by[0], k[1] + by[1], k[2] + by[2]], *c))
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> LaurentCharacter {
        LaurentCharacter::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Multiplies by `(1 - t_i)`.
    pub fn mul_one_minus(&self, i: usize) -> LaurentCharacter {
        let mut e = [0; 3];
        e[i] = 1;
        self - &self.shift(e)
    }

    /// Exact quotient by `(1 - t_i)`, or `None` if it does not divide.
    pub fn div_one_minus(&self, i: usize) -> Option<LaurentCharacter> {
        // group by the other two exponents; in each fibre the quotient
        // coefficients are running sums of the dividend
        let mut fibres: BTreeMap<[i64; 2], BTreeMap<i64, i64>> = BTreeMap::new();
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        for (k, c) in &self.terms {
            fibres
                .entry([k[others[0]], k[others[1]]])
                .or_default()
                .insert(k[i], *c);
        }
        let mut out = LaurentCharacter::zero();
        for (key, fibre) in fibres {
            if fibre.values().sum::<i64>() != 0 {
                return None;
            }
            let lo = *fibre.keys().next().unwrap();
            let hi = *fibre.keys().next_back().unwrap();
            let mut running = 0;
            for j in lo..hi {
                running += fibre.get(&j).copied().unwrap_or(0);
                let mut k = [0; 3];
                k[i] = j;
                k[others[0]] = key[0];
                k[others[1]] = key[1];
                out.add_term(k, running);
            }
        }
        Some(out)
    }

    /// Laurent polynomial in `(x, t3)` obtained by `t1 = x, t2 = 1/x`.
    pub fn antidiagonal_restriction(&self) -> BTreeMap<(i64, i64), i64> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            *out.entry((k[0] - k[1], k[2])).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

impl Add for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn add(self, rhs: &LaurentCharacter) -> LaurentCharacter {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, *c);
        }
        out
    }
}

impl Sub for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn sub(self, rhs: &LaurentCharacter) -> LaurentCharacter {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn neg(self) -> LaurentCharacter {
        self.scale(-1)
    }
}

impl Mul for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn mul(self, rhs: &LaurentCharacter) -> LaurentCharacter {
        let mut out = LaurentCharacter::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            } else if *c < 0 {
                f.write_str("-")?;
            }
            let is_const = *k == [0, 0, 0];
            if c.abs() != 1 || is_const {
                write!(f, "{}", c.abs())?;
            }
            let mut first = !(c.abs() != 1 || is_const);
            for (i, &e) in k.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "t{}", i + 1)?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// Element of the character ring localized at `(1 - t_i)`:
/// `numerator / prod (1 - t_i)^{e_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalizedCharacter {
    numerator: LaurentCharacter,
    denom: [u32; 3],
}

impl LocalizedCharacter {
    pub fn new(numerator: LaurentCharacter, denom: [u32; 3]) -> LocalizedCharacter {
        LocalizedCharacter { numerator, denom }
    }

    pub fn polynomial(numerator: LaurentCharacter) -> LocalizedCharacter {
        LocalizedCharacter { numerator, denom: [0; 3] }
    }

    pub fn zero() -> LocalizedCharacter {
        LocalizedCharacter::default()
    }

    pub fn numerator(&self) -> &LaurentCharacter {
        &self.numerator
    }

    pub fn denom_exponents(&self) -> [u32; 3] {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The Laurent polynomial, if no denominator is left.
    pub fn as_laurent(&self) -> Option<&LaurentCharacter> {
        (self.denom == [0; 3]).then_some(&self.numerator)
    }

    fn lift_to(&self, target: [u32; 3]) -> LaurentCharacter {
        let mut n = self.numerator.clone();
        for i in 0..3 {
            for _ in self.denom[i]..target[i] {
                n = n.mul_one_minus(i);
            }
        }
        n
    }

    /// `bar` rewrites each `1/(1 - 1/t_i)` as `-t_i/(1 - t_i)`.
    pub fn bar(&self) -> LocalizedCharacter {
        let mut n = self.numerator.bar();
        let mut shift = [0i64; 3];
        let mut sign = 1;
        for i in 0..3 {
            shift[i] = self.denom[i] as i64;
            if self.denom[i] % 2 == 1 {
                sign = -sign;
            }
        }
        n = n.shift(shift).scale(sign);
        LocalizedCharacter { numerator: n, denom: self.denom }
    }

    /// Divides out every `(1 - t_i)` factor that exactly divides the
    /// numerator.
    pub fn reduce(&self) -> LocalizedCharacter {
        let mut out = self.clone();
        if out.numerator.is_zero() {
            out.denom = [0; 3];
            return out;
        }
        for i in 0..3 {
            while out.denom[i] > 0 {
                match out.numerator.div_one_minus(i) {
                    Some(q) => {
                        out.numerator = q;
                        out.denom[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        out
    }

    pub fn shift(&self, by: Weight) -> LocalizedCharacter {
        LocalizedCharacter { numerator: self.numerator.shift(by), denom: self.denom }
    }

    pub fn scale(&self, c: i64) -> LocalizedCharacter {
        LocalizedCharacter { numerator: self.numerator.scale(c), denom: self.denom }
    }
}

impl Add for &LocalizedCharacter {
    type Output = LocalizedCharacter;
    fn add(self, rhs: &LocalizedCharacter) -> LocalizedCharacter {
        let target = [0, 1, 2].map(|i| self.denom[i].max(rhs.denom[i]));
        LocalizedCharacter {
            numerator: &self.lift_to(target) + &rhs.lift_to(target),
            denom: target,
        }
    }
}

impl Sub for &LocalizedCharacter {
    type Output = LocalizedCharacter;
    fn sub(self, rhs: &LocalizedCharacter) -> LocalizedCharacter {
        self + &rhs.scale(-1)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LocalizedCharacter {
    type Output = LocalizedCharacter;
    fn mul(self, rhs: &LocalizedCharacter) -> LocalizedCharacter {
        LocalizedCharacter {
            numerator: &self.numerator * &rhs.numerator,
            denom: [0, 1, 2].map(|i| self.denom[i] + rhs.denom[i]),
        }
    }
}
