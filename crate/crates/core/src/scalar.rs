//! The coefficient ring for parameter computations: Laurent polynomials in
//! the deformation parameter `k` with coefficients in a cyclotomic field.
//!
//! The parameter can be kept symbolic or specialised to an exact rational
//! number; the two modes are deliberately incompatible, and every binary
//! operation checks both the cyclotomic level and the mode so that a
//! specialised value never silently meets a symbolic one.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};

/// The deformation parameter: either a free symbol or an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Kappa {
    Symbolic,
    Rational(BigRational),
}

impl Kappa {
    pub fn rational(num: i64, den: i64) -> Self {
        Kappa::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Kappa::Symbolic)
    }
}

/// An exact scalar: a finite sum of terms `c * k^e` with `c` cyclotomic.
/// In rational mode the power of `k` is substituted away immediately, so
/// only the constant term survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    level: u64,
    kappa: Kappa,
    /// Keyed by the exponent of `k`; zero coefficients are never stored.
    terms: BTreeMap<i64, Cyclo>,
}

impl Scalar {
    pub fn zero(level: u64, kappa: &Kappa) -> Self {
        Scalar {
            level,
            kappa: kappa.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_cyclo(level: u64, kappa: &Kappa, c: Cyclo) -> Self {
        let mut s = Self::zero(level, kappa);
        s.insert(0, c);
        s
    }

    pub fn from_rational(level: u64, kappa: &Kappa, r: BigRational) -> Self {
        Self::from_cyclo(level, kappa, Cyclo::from_rational(level, r))
    }

    pub fn from_integer(level: u64, kappa: &Kappa, n: i64) -> Self {
        Self::from_rational(level, kappa, BigRational::from_integer(BigInt::from(n)))
    }

    /// The parameter itself; in rational mode this is just its value.
    pub fn kappa(level: u64, kappa: &Kappa) -> Self {
        match kappa {
            Kappa::Symbolic => {
                let mut s = Self::zero(level, kappa);
                s.insert(1, Cyclo::from_integer(level, 1));
                s
            }
            Kappa::Rational(v) => Self::from_rational(level, kappa, v.clone()),
        }
    }

    /// The root of unity raised to an integer power, as a scalar.
    pub fn zeta_pow(level: u64, kappa: &Kappa, e: i64) -> Self {
        Self::from_cyclo(level, kappa, Cyclo::zeta_pow(level, e))
    }

    fn insert(&mut self, exp: i64, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.kappa.clone() {
            Kappa::Symbolic => {
                use std::collections::btree_map::Entry;
                match self.terms.entry(exp) {
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    Entry::Occupied(mut o) => {
                        let s = o.get().add(&c).expect("level already checked");
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
            Kappa::Rational(v) => {
                // Substitute the value of k^exp and fold into the constant.
                let p = rational_pow(&v, exp);
                let folded = c.scaled(&p);
                if folded.is_zero() {
                    return;
                }
                use std::collections::btree_map::Entry;
                match self.terms.entry(0) {
                    Entry::Vacant(slot) => {
                        slot.insert(folded);
                    }
                    Entry::Occupied(mut o) => {
                        let s = o.get().add(&folded).expect("level already checked");
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn kappa_mode(&self) -> &Kappa {
        &self.kappa
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(format!(
                "scalar levels {} and {}",
                self.level, other.level
            )));
        }
        if self.kappa != other.kappa {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            level: self.level,
            kappa: self.kappa.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let mut out = Self::zero(self.level, &self.kappa);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert(e1 + e2, c1.mul(c2)?);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Self::zero(self.level, &self.kappa);
        }
        Scalar {
            level: self.level,
            kappa: self.kappa.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.scaled(r))).collect(),
        }
    }

    pub fn times_int(&self, n: i64) -> Scalar {
        self.scaled(&BigRational::from_integer(BigInt::from(n)))
    }

    /// `Some(r)` when the scalar is a plain rational number: no free power
    /// of the parameter and no root-of-unity part.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&0) {
                return c.as_rational();
            }
        }
        None
    }

    /// Whether the scalar is a rational integer.
    pub fn is_integer(&self) -> bool {
        match self.as_rational() {
            Some(r) => r.denom().is_one(),
            None => false,
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (e, c) in &self.terms {
            // Expand the cyclotomic part into monomials so the output never
            // needs parentheses: every term is rational * z^a * k^e.
            let expanded = c.render();
            for piece in split_signed_terms(&expanded) {
                let (neg, body) = piece;
                if first {
                    if neg {
                        out.push('-');
                    }
                    first = false;
                } else if neg {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                if *e == 0 {
                    out.push_str(&body);
                } else {
                    if body != "1" {
                        out.push_str(&body);
                        out.push('*');
                    }
                    out.push('k');
                    if *e != 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }

    /// Parse the format produced by [`Scalar::render`]: a signed sum of
    /// `*`-separated factors, each a rational, `z^a`, or `k^e`.
    pub fn parse(text: &str, level: u64, kappa: &Kappa) -> Result<Scalar> {
        let compact: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
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
        let mut acc = Scalar::zero(level, kappa);
        for piece in pieces {
            if piece.is_empty() || piece == "+" || piece == "-" {
                return Err(Error::Parse(format!("bad term in `{text}`")));
            }
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1i64, rest.to_string()),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece).to_string()),
            };
            let mut coeff = BigRational::from_integer(BigInt::from(sign));
            let mut z_exp = 0i64;
            let mut k_exp = 0i64;
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("bad term in `{text}`")));
                }
                if factor == "z" {
                    z_exp += 1;
                } else if factor == "k" {
                    k_exp += 1;
                } else if let Some(e) = factor.strip_prefix("z^") {
                    z_exp += e
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent `{factor}`")))?;
                } else if let Some(e) = factor.strip_prefix("k^") {
                    k_exp += e
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent `{factor}`")))?;
                } else {
                    let r: BigRational = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                    coeff *= r;
                }
            }
            let c = Cyclo::zeta_pow(level, z_exp).scaled(&coeff);
            let mut term = Scalar::zero(level, kappa);
            term.insert(k_exp, c);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn rational_pow(v: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num::pow::pow(v.clone(), e as usize)
    } else {
        num::pow::pow(v.clone(), (-e) as usize).recip()
    }
}

/// Split a rendered cyclotomic element into `(is_negative, bare term)`
/// pieces so the scalar renderer can splice in the `k`-power factor.
fn split_signed_terms(rendered: &str) -> Vec<(bool, String)> {
    let compact: String = rendered.chars().filter(|ch| !ch.is_whitespace()).collect();
    let chars: Vec<char> = compact.chars().collect();
    let mut pieces = Vec::new();
    let mut cur = String::new();
    for (i, &ch) in chars.iter().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && chars[i - 1] != '^' {
            pieces.push(cur.clone());
            cur.clear();
        }
        cur.push(ch);
    }
    pieces.push(cur);
    pieces
        .into_iter()
        .map(|p| match p.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, p.strip_prefix('+').unwrap_or(&p).to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_arithmetic() {
        let mode = Kappa::Symbolic;
        let k = Scalar::kappa(2, &mode);
        let half = Scalar::from_rational(2, &mode, BigRational::new(BigInt::from(1), BigInt::from(2)));
        let s = k.times_int(3).add(&half).unwrap();
        assert_eq!(s.render(), "1/2 + 3*k");
        assert!(!s.is_integer());
        assert_eq!(s.sub(&s).unwrap(), Scalar::zero(2, &mode));
    }

    #[test]
    fn rational_mode_substitutes() {
        let mode = Kappa::rational(1, 2);
        let k = Scalar::kappa(2, &mode);
        let one = Scalar::from_integer(2, &mode, 1);
        assert!(k.times_int(2).sub(&one).unwrap().is_zero());
        assert_eq!(k.as_rational().unwrap(), BigRational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn mode_and_level_mismatches_error() {
        let a = Scalar::kappa(2, &Kappa::Symbolic);
        let b = Scalar::kappa(2, &Kappa::rational(1, 2));
        assert!(matches!(a.add(&b), Err(Error::ModeMismatch)));
        let c = Scalar::kappa(3, &Kappa::Symbolic);
        assert!(matches!(a.add(&c), Err(Error::LevelMismatch(_))));
    }

    #[test]
    fn integrality_detection() {
        let mode = Kappa::Symbolic;
        let k = Scalar::kappa(3, &mode);
        let two = Scalar::from_integer(3, &mode, 2);
        assert!(two.is_integer());
        assert!(!k.is_integer());
        assert!(two.add(&k).unwrap().sub(&k).unwrap().is_integer());
        // A root of unity is not a rational integer.
        assert!(!Scalar::zeta_pow(3, &mode, 1).is_integer());
        // ... but z^3 = 1 is.
        assert!(Scalar::zeta_pow(3, &mode, 3).is_integer());
    }

    #[test]
    fn render_parse_round_trip() {
        let mode = Kappa::Symbolic;
        let k = Scalar::kappa(4, &mode);
        let z = Scalar::zeta_pow(4, &mode, 1);
        let s = k
            .mul(&z)
            .unwrap()
            .times_int(-2)
            .add(&Scalar::from_rational(4, &mode, BigRational::new(BigInt::from(3), BigInt::from(4))))
            .unwrap()
            .add(&k.mul(&k).unwrap())
            .unwrap();
        let text = s.render();
        let back = Scalar::parse(&text, 4, &mode).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rational_mode_collapses_powers() {
        let mode = Kappa::rational(2, 3);
        let k = Scalar::kappa(2, &mode);
        let k2 = k.mul(&k).unwrap();
        assert_eq!(k2.as_rational().unwrap(), BigRational::new(BigInt::from(4), BigInt::from(9)));
    }
}
