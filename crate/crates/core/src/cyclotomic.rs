//! Exact arithmetic in the cyclotomic field generated by a primitive
//! `l`-th root of unity `z`.
//!
//! Elements are stored as rational polynomials in `z` reduced modulo the
//! `l`-th cyclotomic polynomial, so equality of field elements is plain
//! structural equality.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense coefficients of the `l`-th cyclotomic polynomial, lowest degree
/// first, computed by dividing `x^l - 1` by the cyclotomic polynomials of
/// the proper divisors of `l`.
pub fn cyclotomic_polynomial(l: u64) -> Vec<BigInt> {
    assert!(l >= 1);
    if l == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^l - 1
    let mut num = vec![BigInt::zero(); l as usize + 1];
    num[0] = BigInt::from(-1);
    num[l as usize] = BigInt::one();
    for d in 1..l {
        if l % d == 0 {
            num = poly_div_exact_int(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut quo = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        let f = rem[i].clone();
        if f.is_zero() {
            continue;
        }
        quo[i - dd] = f.clone();
        for (j, c) in den.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = &rem[idx] - &f * c;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quo
}

/// An element of the degree-`phi(l)` cyclotomic field, as a reduced
/// polynomial in the root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    level: u64,
    /// Length `phi(l)`; coefficient of `z^j` at index `j`.
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero(level: u64) -> Self {
        let deg = cyclotomic_polynomial(level).len() - 1;
        Cyclo {
            level,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn from_rational(level: u64, r: BigRational) -> Self {
        let mut c = Self::zero(level);
        if !c.coeffs.is_empty() {
            c.coeffs[0] = r;
        } else {
            // level 1: the field is the rationals and phi(1) = 1.
            c.coeffs = vec![r];
        }
        c
    }

    pub fn from_integer(level: u64, n: i64) -> Self {
        Self::from_rational(level, BigRational::from_integer(BigInt::from(n)))
    }

    /// The root of unity raised to any integer power (negative allowed).
    pub fn zeta_pow(level: u64, k: i64) -> Self {
        let l = level as i64;
        let k = k.rem_euclid(l) as usize;
        let mut dense = vec![BigRational::zero(); k + 1];
        dense[k] = BigRational::one();
        Self::reduce(level, dense)
    }

    fn reduce(level: u64, mut dense: Vec<BigRational>) -> Self {
        let phi: Vec<BigRational> = cyclotomic_polynomial(level)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let deg = phi.len() - 1;
        while dense.len() > deg {
            let i = dense.len() - 1;
            let f = dense[i].clone();
            if !f.is_zero() {
                for (j, c) in phi.iter().enumerate() {
                    let idx = i - deg + j;
                    dense[idx] = &dense[idx] - &f * c;
                }
            }
            dense.pop();
        }
        dense.resize(deg, BigRational::zero());
        Cyclo {
            level,
            coeffs: dense,
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check(&self, other: &Cyclo) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(format!(
                "cyclotomic levels {} and {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check(other)?;
        Ok(Cyclo {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check(other)?;
        Ok(Cyclo {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check(other)?;
        let mut dense = vec![BigRational::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[i + j] = &dense[i + j] + a * b;
            }
        }
        Ok(Self::reduce(self.level, dense))
    }

    pub fn scaled(&self, r: &BigRational) -> Cyclo {
        Cyclo {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Render using `z` for the root of unity.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
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
            if e == 0 {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push('z');
                if e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&n| BigInt::from(n)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity_multiply() {
        for l in [2u64, 3, 4, 5, 6] {
            let z = Cyclo::zeta_pow(l, 1);
            let mut p = Cyclo::from_integer(l, 1);
            for _ in 0..l {
                p = p.mul(&z).unwrap();
            }
            assert_eq!(p, Cyclo::from_integer(l, 1), "z^{l} should be 1");
            // Sum of all l-th roots of unity vanishes for l > 1.
            let mut s = Cyclo::zero(l);
            for k in 0..l as i64 {
                s = s.add(&Cyclo::zeta_pow(l, k)).unwrap();
            }
            assert!(s.is_zero() || l == 1);
        }
    }

    #[test]
    fn negative_powers() {
        let l = 5;
        let a = Cyclo::zeta_pow(l, -2);
        let b = Cyclo::zeta_pow(l, 3);
        assert_eq!(a, b);
        assert_eq!(a.mul(&Cyclo::zeta_pow(l, 2)).unwrap(), Cyclo::from_integer(l, 1));
    }

    #[test]
    fn rational_detection() {
        let l = 4;
        // z^2 = -1 in the fourth cyclotomic field.
        let c = Cyclo::zeta_pow(l, 2);
        assert_eq!(c.as_rational().unwrap(), BigRational::from_integer(BigInt::from(-1)));
        assert!(Cyclo::zeta_pow(l, 1).as_rational().is_none());
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let a = Cyclo::from_integer(2, 1);
        let b = Cyclo::from_integer(3, 1);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn render_reads_back_naturally() {
        let l = 3;
        let c = Cyclo::zeta_pow(l, 1)
            .scaled(&BigRational::new(BigInt::from(1), BigInt::from(2)))
            .add(&Cyclo::from_integer(l, -1))
            .unwrap();
        assert_eq!(c.render(), "-1 + 1/2*z");
    }
}
