//! Parsing of the canonical text rendering of polynomials and rational
//! functions (the inverse of their `Display` impls).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::linear::LinearForm;
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::AlgebraError;

fn bad(s: &str) -> AlgebraError {
    AlgebraError::Parse(s.to_string())
}

pub fn parse_poly(s: &str) -> Result<MultiPoly, AlgebraError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad(s));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else if ch == '+' || ch == '-' {
            return Err(bad(s));
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad(s));
    }
    terms.push((neg, cur));
    let mut p = MultiPoly::zero();
    for (neg, t) in terms {
        let mut coeff = BigRational::one();
        let mut exp = [0u32; 3];
        for factor in t.split('*') {
            if let Some(rest) = factor.strip_prefix('s') {
                let (var, pow) = match rest.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad(s))?),
                    None => (rest, 1),
                };
                let idx = match var {
                    "1" => 0,
                    "2" => 1,
                    "3" => 2,
                    _ => return Err(bad(s)),
                };
                exp[idx] += pow;
            } else {
                coeff *= parse_rational(factor).ok_or_else(|| bad(s))?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(exp, coeff);
    }
    Ok(p)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn parse_form(s: &str) -> Result<LinearForm, AlgebraError> {
    let p = parse_poly(s)?;
    let mut k = [0i64; 3];
    for (e, c) in p.terms() {
        let idx = e.iter().position(|&x| x == 1).ok_or_else(|| bad(s))?;
        if e.iter().sum::<u32>() != 1 || !c.is_integer() {
            return Err(bad(s));
        }
        k[idx] = i64::try_from(c.to_integer()).map_err(|_| bad(s))?;
    }
    LinearForm::new(k)
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, AlgebraError> {
    let s = s.trim();
    let Some(inner) = s.strip_prefix('(') else {
        return Ok(RatFunc::from_poly(parse_poly(s)?));
    };
    let (num_s, den_s) = inner.split_once(")/(").ok_or_else(|| bad(s))?;
    let den_s = den_s.strip_suffix(')').ok_or_else(|| bad(s))?;
    let num = parse_poly(num_s)?;
    let mut den = BTreeMap::new();
    let bytes: Vec<char> = den_s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != '(' {
            return Err(bad(s));
        }
        let close = bytes[i..].iter().position(|&c| c == ')').ok_or_else(|| bad(s))? + i;
        let form: String = bytes[i + 1..close].iter().collect();
        let f = parse_form(&form)?;
        i = close + 1;
        let mut e = 1u32;
        if i < bytes.len() && bytes[i] == '^' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let digits: String = bytes[start..end].iter().collect();
            e = digits.parse().map_err(|_| bad(s))?;
            i = end;
        }
        if i < bytes.len() {
            if bytes[i] != '*' {
                return Err(bad(s));
            }
            i += 1;
        }
        *den.entry(f).or_insert(0) += e;
    }
    Ok(RatFunc::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_examples() {
        for text in ["0", "1", "-3*s1^2 + s2 + 1/2", "(s1 + s2)/((s1)^2)", "(-s1*s2 + 3/4*s3^2)/((s1-2*s2)*(s2+s3)^3)"] {
            let r = parse_ratfunc(text).unwrap();
            assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r, "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("s4").is_err());
        assert!(parse_ratfunc("(s1)/((2*s1))").is_err());
        assert!(parse_ratfunc("1/0").is_err());
    }
}
