//! Laurent polynomials in one variable over the rationals.
//!
//! One type serves both graded-character arithmetic (variable `q`) and
//! quantum-group arithmetic (variable `v`); the variable name is supplied
//! only when printing or parsing.
//!
//! # Example
//!
//! ```
//! use cherednik::laurent::LaurentPoly;
//!
//! let p = LaurentPoly::parse("1 - q^2", 'q').unwrap();
//! let d = LaurentPoly::one_minus_pow(2);
//! assert_eq!(p, d);
//! assert_eq!(p.to_string_var('v'), "1 - v^2");
//! ```

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial with `BigRational` coefficients, stored sparsely by
/// exponent.  The zero coefficient is never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial_int(1, 0)
    }

    /// The monomial `c * x^e`.
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The monomial `c * x^e` with an integer coefficient.
    pub fn monomial_int(c: i64, e: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), e)
    }

    /// `1 - x^d`.
    pub fn one_minus_pow(d: i64) -> Self {
        Self::one() - Self::monomial_int(1, d)
    }

    /// `x^a + x^(a-2) + ... + x^(-a)`, the quantum integer `[a+1]`.
    pub fn quantum_int(n: u64) -> Self {
        let mut p = Self::zero();
        let n = n as i64;
        let mut e = n - 1;
        while e >= -(n - 1) {
            p = p + Self::monomial_int(1, e);
            e -= 2;
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Multiply by `x^e`.
    pub fn shifted(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// The bar involution `x -> x^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    /// Exact division; `None` when the divisor does not divide `self`.
    pub fn div_exact(&self, den: &LaurentPoly) -> Option<LaurentPoly> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Normalise both to honest polynomials and long-divide.
        let a_min = self.min_exp().unwrap();
        let d_min = den.min_exp().unwrap();
        let mut rem = self.shifted(-a_min);
        let den_p = den.shifted(-d_min);
        let d_deg = den_p.max_exp().unwrap();
        let d_lead = den_p.coeff(d_deg);
        let mut quo = LaurentPoly::zero();
        while !rem.is_zero() {
            let r_deg = rem.max_exp().unwrap();
            if r_deg < d_deg {
                return None;
            }
            let f = rem.coeff(r_deg) / d_lead.clone();
            let e = r_deg - d_deg;
            quo.insert(e, f.clone());
            rem = rem - den_p.scaled(&f).shifted(e);
        }
        Some(quo.shifted(a_min - d_min))
    }

    /// Evaluate at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(Error::Hypothesis(
                "cannot evaluate a Laurent polynomial with negative exponents at 0".into(),
            ));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num::pow::pow(x.clone(), *e as usize)
            } else {
                num::pow::pow(x.clone(), (-e) as usize).recip()
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Substitute `x -> x^k` for `k >= 1`.
    pub fn inflate(&self, k: i64) -> Self {
        assert!(k >= 1);
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Divide out the rational content and the smallest power of the
    /// variable, normalising the lowest surviving coefficient to be
    /// positive.  Used to keep fraction-free elimination small; the result
    /// is a unit multiple of `self`.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let min = self.min_exp().unwrap();
        // gcd of numerators / lcm of denominators, signed by the lowest term.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().clone());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.terms[&min].is_negative() {
            content = -content;
        }
        let inv = content.recip();
        self.shifted(-min).scaled(&inv)
    }

    /// Coefficients on `lo..=hi` as a dense vector.
    pub fn dense(&self, lo: i64, hi: i64) -> Vec<BigRational> {
        (lo..=hi).map(|e| self.coeff(e)).collect()
    }

    /// Render with the given variable name.
    pub fn to_string_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_one = abs.is_one();
            if *e == 0 {
                out.push_str(&abs.to_string());
            } else {
                if !coeff_one {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push(var);
                if *e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    /// Parse a sum of terms like `2*q^3 - q^-1 + 1/2`.
    pub fn parse(text: &str, var: char) -> Result<Self> {
        let mut p = LaurentPoly::zero();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split into signed terms; a sign immediately after '^' belongs to
        // the exponent, not to a new term.
        let chars: Vec<char> = compact.chars().collect();
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, &ch) in chars.iter().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && chars[i - 1] != '^' && chars[i - 1] != '+' && chars[i - 1] != '-' {
                pieces.push(cur.clone());
                cur.clear();
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            if piece.is_empty() || piece == "+" || piece == "-" {
                return Err(Error::Parse(format!("bad term in `{text}`")));
            }
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1i64, rest.to_string()),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece).to_string()),
            };
            let mut coeff = BigRational::from_integer(BigInt::from(sign));
            let mut exp = 0i64;
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("bad term in `{text}`")));
                }
                if let Some(rest) = factor.strip_prefix(var) {
                    if rest.is_empty() {
                        exp += 1;
                    } else if let Some(e) = rest.strip_prefix('^') {
                        exp += e
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent `{rest}`")))?;
                    } else {
                        return Err(Error::Parse(format!("bad factor `{factor}`")));
                    }
                } else {
                    let r: BigRational = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                    coeff *= r;
                }
            }
            p = p + LaurentPoly::monomial(coeff, exp);
        }
        Ok(p)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = self;
        for (e, c) in rhs.terms {
            out.insert(e, c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() + rhs.clone()
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() - rhs.clone()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
