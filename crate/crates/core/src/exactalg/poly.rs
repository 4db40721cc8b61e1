use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linear::{LinearForm, LinearSubst};

/// Exponent vector over `(s1, s2, s3)`.
pub type Exponent = [u32; 3];

/// Sparse polynomial in `s1, s2, s3` with big-rational coefficients.
///
/// Keys are ordered lexicographically with `s1 > s2 > s3`, so the last
/// entry of the map is the leading term. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn from_integer(c: i64) -> MultiPoly {
        MultiPoly::constant(BigRational::from_integer(c.into()))
    }

    /// The variable `s_{i+1}`.
    pub fn var(i: usize) -> MultiPoly {
        let mut e = [0; 3];
        e[i] = 1;
        MultiPoly::monomial(e, BigRational::one())
    }

    pub fn monomial(e: Exponent, c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_form(f: &LinearForm) -> MultiPoly {
        MultiPoly::from_int_vector(f.coeffs())
    }

    pub fn from_int_vector(k: [i64; 3]) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (i, &a) in k.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, BigRational::from_integer(a.into()));
        }
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True if every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by an integer linear vector `k . s`; cheaper than a
    /// general product.
    pub fn mul_int_vector(&self, k: [i64; 3]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, &a) in k.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = BigRational::from_integer(a.into());
            for (e, c) in &self.terms {
                let mut e2 = *e;
                e2[i] += 1;
                out.add_term(e2, c * &a);
            }
        }
        out
    }

    pub fn mul_form(&self, f: &LinearForm) -> MultiPoly {
        self.mul_int_vector(f.coeffs())
    }

    pub fn mul_form_pow(&self, f: &LinearForm, n: u32) -> MultiPoly {
        (0..n).fold(self.clone(), |acc, _| acc.mul_form(f))
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient by a linear form, or `None` if the form does not
    /// divide this polynomial.
    pub fn div_form(&self, f: &LinearForm) -> Option<MultiPoly> {
        let k = f.coeffs();
        let j = f.lead_var();
        let lead = BigRational::from_integer(k[j].into());
        let mut rem = self.terms.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.pop_last() {
            if m[j] == 0 {
                return None;
            }
            let mut qm = m;
            qm[j] -= 1;
            let qc = c / &lead;
            for (i, &a) in k.iter().enumerate().skip(j + 1) {
                if a == 0 {
                    continue;
                }
                let mut e = qm;
                e[i] += 1;
                let delta = -(&qc * BigRational::from_integer(a.into()));
                let entry = rem.entry(e).or_insert_with(BigRational::zero);
                *entry += delta;
                if entry.is_zero() {
                    rem.remove(&e);
                }
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Exact quotient by an arbitrary nonzero polynomial, or `None` if the
    /// division leaves a remainder.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dl_e, dl_c) = d.leading_term()?;
        let (dl_e, dl_c) = (*dl_e, dl_c.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if (0..3).any(|i| m[i] < dl_e[i]) {
                return None;
            }
            let qm = [m[0] - dl_e[0], m[1] - dl_e[1], m[2] - dl_e[2]];
            let qc = c / &dl_c;
            let t = MultiPoly::monomial(qm, qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Applies a homogeneous linear substitution of the variables.
    pub fn substitute(&self, subst: &LinearSubst) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| {
                let mut p = MultiPoly::zero();
                for (j, c) in subst.image(i).iter().enumerate() {
                    let mut e = [0; 3];
                    e[j] = 1;
                    p.add_term(e, c.clone());
                }
                p
            })
            .collect();
        let terms: Vec<(Exponent, BigRational)> =
            self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        horner(&terms, 0, &images)
    }

    /// Evaluates modulo the prime `p` at an integer point. Returns `None`
    /// if some coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, point: [u64; 3], p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let num = mod_big(c.numer(), &pb);
            let den = mod_big(c.denom(), &pb);
            if den == 0 {
                return None;
            }
            let mut v = mulmod(num, inv_mod(den, p), p);
            for i in 0..3 {
                v = mulmod(v, pow_mod(point[i] % p, e[i] as u64, p), p);
            }
            acc = (acc + v) % p;
        }
        Some(acc)
    }

    pub fn eval_rational(&self, point: &[BigRational; 3]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for i in 0..3 {
                    for _ in 0..e[i] {
                        v *= &point[i];
                    }
                }
                v
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

fn horner(terms: &[(Exponent, BigRational)], var: usize, images: &[MultiPoly]) -> MultiPoly {
    if var == 3 {
        let mut p = MultiPoly::zero();
        for (_, c) in terms {
            p.add_term([0, 0, 0], c.clone());
        }
        return p;
    }
    let mut groups: BTreeMap<u32, Vec<(Exponent, BigRational)>> = BTreeMap::new();
    for (e, c) in terms {
        groups.entry(e[var]).or_default().push((*e, c.clone()));
    }
    let Some(&top) = groups.keys().next_back() else {
        return MultiPoly::zero();
    };
    let mut acc = MultiPoly::zero();
    for deg in (0..=top).rev() {
        if !acc.is_zero() {
            acc = &acc * &images[var];
        }
        if let Some(group) = groups.get(&deg) {
            acc = &acc + &horner(group, var + 1, images);
        }
    }
    acc
}

pub(crate) const MOD_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mod_big(x: &BigInt, p: &BigInt) -> u64 {
    let r = ((x % p) + p) % p;
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Exponent, BigRational> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            let mut first = true;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "s{}", i + 1)?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}
