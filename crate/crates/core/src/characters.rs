//! c-functions, fake degree polynomials, and graded characters of standard
//! modules, kept as exact rational-function data: a graded character is a
//! sum of terms `q^gamma * num / prod_d (1 - q^d)` with a scalar-valued
//! exponent gamma and a factored denominator.

use num::{BigInt, BigRational, One};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::multipartition::Multipartition;
use crate::params::Params;
use crate::scalar::Scalar;

/// One term of a graded character: `q^gamma * num / Π_{d in den} (1-q^d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharTerm {
    pub gamma: Scalar,
    pub num: LaurentPoly,
    pub den: Vec<u64>,
}

/// A finite sum of character terms in canonical form: numerators have
/// valuation zero (integer shifts are absorbed into gamma), denominator
/// multisets are sorted, zero terms are dropped, and terms sharing both
/// gamma and denominator are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedCharacter {
    terms: Vec<CharTerm>,
}

impl GradedCharacter {
    pub fn new(terms: Vec<CharTerm>) -> Self {
        let mut canon: Vec<CharTerm> = Vec::new();
        for mut t in terms {
            if t.num.is_zero() {
                continue;
            }
            let v = t.num.min_exp().expect("nonzero polynomial");
            if v != 0 {
                t.gamma = t
                    .gamma
                    .add(&Scalar::from_integer(t.gamma.level(), t.gamma.kappa_mode(), v))
                    .expect("same ring");
                t.num = t.num.shifted(-v);
            }
            t.den.sort_unstable();
            match canon
                .iter_mut()
                .find(|u| u.gamma == t.gamma && u.den == t.den)
            {
                Some(u) => {
                    u.num = &u.num + &t.num;
                }
                None => canon.push(t),
            }
        }
        canon.retain(|t| !t.num.is_zero());
        canon.sort_by(|a, b| {
            a.gamma
                .render()
                .cmp(&b.gamma.render())
                .then(a.den.cmp(&b.den))
        });
        GradedCharacter { terms: canon }
    }

    pub fn terms(&self) -> &[CharTerm] {
        &self.terms
    }

    /// Equality as rational-function data: group terms by gamma, put each
    /// group over one denominator, and compare cross-multiplied numerators.
    pub fn equivalent(&self, other: &GradedCharacter) -> bool {
        let mut gammas: Vec<&Scalar> = self.terms.iter().map(|t| &t.gamma).collect();
        for t in &other.terms {
            if !gammas.contains(&&t.gamma) {
                gammas.push(&t.gamma);
            }
        }
        gammas.dedup();
        for g in gammas {
            let (na, da) = combine(self.terms.iter().filter(|t| &t.gamma == g));
            let (nb, db) = combine(other.terms.iter().filter(|t| &t.gamma == g));
            if &na * &den_poly(&db) != &nb * &den_poly(&da) {
                return false;
            }
        }
        true
    }
}

fn den_poly(den: &[u64]) -> LaurentPoly {
    den.iter()
        .fold(LaurentPoly::one(), |acc, &d| &acc * &LaurentPoly::one_minus_pow(d as i64))
}

/// Collapse a group of terms with a shared gamma into a single fraction
/// `(num, den)` with `den` the concatenation of the group's denominators.
fn combine<'a>(terms: impl Iterator<Item = &'a CharTerm>) -> (LaurentPoly, Vec<u64>) {
    let terms: Vec<&CharTerm> = terms.collect();
    let mut den: Vec<u64> = Vec::new();
    for t in &terms {
        den.extend_from_slice(&t.den);
    }
    let mut num = LaurentPoly::zero();
    for (i, t) in terms.iter().enumerate() {
        let mut part = t.num.clone();
        for (j, u) in terms.iter().enumerate() {
            if i != j {
                part = &part * &den_poly(&u.den);
            }
        }
        num = &num + &part;
    }
    (num, den)
}

impl Serialize for GradedCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermOut<'a> {
            gamma: String,
            num: String,
            den: &'a [u64],
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for t in &self.terms {
            seq.serialize_element(&TermOut {
                gamma: t.gamma.render(),
                num: t.num.to_string_var('q'),
                den: &t.den,
            })?;
        }
        seq.end()
    }
}

fn check_shape(lambda: &Multipartition, p: &Params) -> Result<()> {
    if lambda.level() != p.level() {
        return Err(Error::LevelMismatch(format!(
            "label has {} components, parameter has level {}",
            lambda.level(),
            p.level()
        )));
    }
    if lambda.size() != p.n {
        return Err(Error::SizeMismatch(format!(
            "label has {} boxes, parameter expects {}",
            lambda.size(),
            p.n
        )));
    }
    Ok(())
}

/// Sum of the charged residues `s_m + b - a` over the boxes of `lambda`.
pub fn sum_residues(lambda: &Multipartition, s: &[i64]) -> i64 {
    lambda
        .boxes()
        .iter()
        .map(|b| Multipartition::residue(b, s))
        .sum()
}

/// The c-function
/// `c_λ = -Σ_{r=1}^{l-1} r|λ^{(r)}| + k l Σ res - k n s̄ + n - nl/2`.
pub fn c_function(lambda: &Multipartition, p: &Params) -> Result<Scalar> {
    check_shape(lambda, p)?;
    let l = p.level() as i64;
    let n = p.n as i64;
    let weight: i64 = (1..l)
        .map(|r| r * lambda.comp(r as usize).size() as i64)
        .sum();
    let res_sum = sum_residues(lambda, p.s.as_slice());
    let kappa_part = p
        .kappa_scalar()
        .times_int(l * res_sum - n * p.s.sum());
    let tail = BigRational::from_integer(BigInt::from(n))
        - BigRational::new(BigInt::from(n * l), BigInt::from(2));
    p.scalar_int(-weight)
        .add(&kappa_part)?
        .add(&Scalar::from_rational(p.level() as u64, &p.kappa, tail))
}

/// The degree statistic `w(τ) + l Σ_r n(τ^{(r)})`: the least q-degree of
/// the fake degree polynomial attached to the dual label.
pub fn fd(tau: &Multipartition) -> u64 {
    let l = tau.level();
    let w: u64 = (1..l)
        .map(|r| r as u64 * tau.comp(r).size())
        .sum();
    let nstat: u64 = (1..=l).map(|r| tau.comp(r).n_stat()).sum();
    w + l as u64 * nstat
}

/// The fake degree polynomial of the dual label:
/// `Π_{i=1}^{n}(1-q^{il}) * q^{w(τ) + l Σ n(τ^{(r)})} / Π_A (1-q^{h(A)l})`.
pub fn fake_degree(tau: &Multipartition) -> LaurentPoly {
    let l = tau.level() as i64;
    let n = tau.size() as i64;
    let mut f = LaurentPoly::monomial_int(1, fd(tau) as i64);
    for i in 1..=n {
        f = &f * &LaurentPoly::one_minus_pow(i * l);
    }
    for r in 1..=tau.level() {
        for h in tau.comp(r).hook_lengths() {
            f = f
                .div_exact(&LaurentPoly::one_minus_pow(h as i64 * l))
                .expect("hook factors divide the principal degree product");
        }
    }
    f
}

/// Dimension of the irreducible representation labelled by `τ`:
/// `n! / Π_r |τ^{(r)}|!` times the product of per-component standard
/// tableau counts.
pub fn dim_irrep(tau: &Multipartition) -> BigInt {
    let factorial = |m: u64| -> BigInt {
        (1..=m).map(BigInt::from).product::<BigInt>().max(BigInt::one())
    };
    let mut dim = factorial(tau.size());
    for r in 1..=tau.level() {
        let part = tau.comp(r);
        dim = dim / factorial(part.size()) * part.standard_count();
    }
    dim
}

/// The shifted c-function `ĉ_λ = c_λ + fd`, computed both from its closed
/// form and from the definition; the two routes are asserted equal.
pub fn c_hat(lambda: &Multipartition, p: &Params) -> Result<Scalar> {
    check_shape(lambda, p)?;
    let l = p.level() as i64;
    let n = p.n as i64;
    let via_definition = c_function(lambda, p)?.add(&p.scalar_int(fd(lambda) as i64))?;
    let nstat: i64 = (1..=p.level())
        .map(|r| lambda.comp(r).n_stat() as i64)
        .sum();
    let res_sum = sum_residues(lambda, p.s.as_slice());
    let tail = BigRational::from_integer(BigInt::from(n))
        - BigRational::new(BigInt::from(n * l), BigInt::from(2));
    let closed = p
        .kappa_scalar()
        .times_int(l * res_sum - n * p.s.sum())
        .add(&p.scalar_int(l * nstat))?
        .add(&Scalar::from_rational(p.level() as u64, &p.kappa, tail))?;
    if via_definition != closed {
        return Err(Error::Internal(format!(
            "shifted c-function routes disagree on {lambda}"
        )));
    }
    Ok(closed)
}

/// Graded character of a standard module in hook form: the single term
/// `q^{ĉ_λ} / Π_{A∈λ} (1 - q^{h(A)·l})`.
pub fn chhat_delta(lambda: &Multipartition, p: &Params) -> Result<GradedCharacter> {
    let gamma = c_hat(lambda, p)?;
    let l = p.level() as u64;
    let mut den = Vec::new();
    for r in 1..=lambda.level() {
        den.extend(lambda.comp(r).hook_lengths().into_iter().map(|h| h * l));
    }
    Ok(GradedCharacter::new(vec![CharTerm {
        gamma,
        num: LaurentPoly::one(),
        den,
    }]))
}

/// Graded character of a standard module in fake-degree form:
/// `q^{ĉ_λ} * (q^{-fd} f) / Π_{i=1}^{n} (1 - q^{il})` with `f` the fake
/// degree polynomial of the dual label.
pub fn chsph_delta(lambda: &Multipartition, p: &Params) -> Result<GradedCharacter> {
    let gamma = c_hat(lambda, p)?;
    let l = p.level() as u64;
    let num = fake_degree(lambda).shifted(-(fd(lambda) as i64));
    let den = (1..=p.n).map(|i| i * l).collect();
    Ok(GradedCharacter::new(vec![CharTerm { gamma, num, den }]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::params::Charge;
    use crate::scalar::Kappa;

    fn mp(text: &str) -> Multipartition {
        text.parse().unwrap()
    }

    fn params(n: u64, kappa: Kappa, s: &[i64]) -> Params {
        Params::new(n, kappa, Charge::new(s.to_vec()).unwrap(), None).unwrap()
    }

    #[test]
    fn c_function_single_box() {
        for s in [[1i64, 0], [4, -2], [0, 0]] {
            let p = params(1, Kappa::Symbolic, &s);
            let first = c_function(&mp("[[1],[]]"), &p).unwrap();
            let expected = p
                .kappa_scalar()
                .times_int(s[0] - s[1])
                .add(&p.scalar_int(-1))
                .unwrap();
            assert_eq!(first, expected);
            let second = c_function(&mp("[[],[1]]"), &p).unwrap();
            assert_eq!(second, p.kappa_scalar().times_int(s[1] - s[0]));
        }
    }

    #[test]
    fn c_function_level_one_differences() {
        let p = params(4, Kappa::Symbolic, &[3]);
        let labels = Multipartition::enumerate(1, 4, &Caps::default()).unwrap();
        for a in &labels {
            for b in &labels {
                let diff = c_function(a, &p)
                    .unwrap()
                    .sub(&c_function(b, &p).unwrap())
                    .unwrap();
                let res_diff =
                    sum_residues(a, p.s.as_slice()) - sum_residues(b, p.s.as_slice());
                assert_eq!(diff, p.kappa_scalar().times_int(res_diff));
            }
        }
    }

    #[test]
    fn c_function_rejects_bad_shapes() {
        let p = params(1, Kappa::Symbolic, &[1, 0]);
        assert!(matches!(
            c_function(&mp("[[1]]"), &p),
            Err(Error::LevelMismatch(_))
        ));
        assert!(matches!(
            c_function(&mp("[[1,1],[]]"), &p),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn fake_degree_small_cases() {
        assert!(fake_degree(&mp("[[1]]")).is_one());
        assert_eq!(fd(&mp("[[1]]")), 0);
        // Level 3, one box: component r < 3 contributes q^r, component 3
        // gives the constant polynomial.
        assert_eq!(fake_degree(&mp("[[1],[],[]]")), LaurentPoly::monomial_int(1, 1));
        assert_eq!(fake_degree(&mp("[[],[1],[]]")), LaurentPoly::monomial_int(1, 2));
        assert!(fake_degree(&mp("[[],[],[1]]")).is_one());
    }

    #[test]
    fn fake_degree_at_one_is_dimension() {
        let one = BigRational::one();
        for tau in Multipartition::enumerate(2, 3, &Caps::default()).unwrap() {
            let f = fake_degree(&tau);
            assert_eq!(
                f.eval(&one).unwrap(),
                BigRational::from_integer(dim_irrep(&tau)),
                "tau = {tau}"
            );
            assert_eq!(Some(fd(&tau) as i64), f.min_exp(), "tau = {tau}");
        }
    }

    #[test]
    fn fake_degrees_fill_the_coinvariant_ring() {
        for (l, n) in [(1usize, 3u64), (2, 2), (3, 2)] {
            let mut total = LaurentPoly::zero();
            for tau in Multipartition::enumerate(l, n, &Caps::default()).unwrap() {
                let dim = BigRational::from_integer(dim_irrep(&tau));
                total = &total + &fake_degree(&tau).scaled(&dim);
            }
            let mut expected = LaurentPoly::one();
            for i in 1..=n as i64 {
                let steps: LaurentPoly = (0..i * l as i64)
                    .map(|e| LaurentPoly::monomial_int(1, e))
                    .fold(LaurentPoly::zero(), |a, b| &a + &b);
                expected = &expected * &steps;
            }
            assert_eq!(total, expected, "l={l} n={n}");
        }
    }

    #[test]
    fn c_hat_examples() {
        let p = params(1, Kappa::Symbolic, &[1, 0]);
        assert_eq!(c_hat(&mp("[[1],[]]"), &p).unwrap(), p.kappa_scalar());
        // Level 1, single row of size 2, charge (0): residues sum to 1.
        let q = params(2, Kappa::Symbolic, &[0]);
        let expected = q.kappa_scalar().add(&q.scalar_int(1)).unwrap();
        assert_eq!(c_hat(&mp("[[2]]"), &q).unwrap(), expected);
    }

    #[test]
    fn c_hat_routes_agree_on_random_charges() {
        for s in [[1i64, 0], [5, -3], [2, 2]] {
            let p = params(3, Kappa::Symbolic, &s);
            for lambda in Multipartition::enumerate(2, 3, &Caps::default()).unwrap() {
                c_hat(&lambda, &p).unwrap();
            }
        }
    }

    #[test]
    fn hook_form_character() {
        let p = params(4, Kappa::Symbolic, &[1, 0]);
        let ch = chhat_delta(&mp("[[3,1],[]]"), &p).unwrap();
        assert_eq!(ch.terms().len(), 1);
        assert_eq!(ch.terms()[0].den, vec![2, 2, 4, 8]);
        assert!(ch.terms()[0].num.is_one());
        // Empty label at n = 0: exponent 0, no denominator.
        let empty = params(0, Kappa::Symbolic, &[1, 0]);
        let ch0 = chhat_delta(&mp("[[],[]]"), &empty).unwrap();
        assert!(ch0.terms()[0].gamma.is_zero());
        assert!(ch0.terms()[0].den.is_empty());
    }

    #[test]
    fn hook_and_fake_degree_forms_agree() {
        let labels = Multipartition::enumerate(2, 3, &Caps::default()).unwrap();
        let p = params(3, Kappa::Symbolic, &[1, 0]);
        for lambda in labels {
            let a = chhat_delta(&lambda, &p).unwrap();
            let b = chsph_delta(&lambda, &p).unwrap();
            assert!(a.equivalent(&b), "lambda = {lambda}");
            assert!(b.equivalent(&a), "lambda = {lambda}");
        }
        let q = params(2, Kappa::rational(1, 2), &[0]);
        let row = mp("[[2]]");
        let a = chhat_delta(&row, &q).unwrap();
        assert_eq!(a.terms()[0].den, vec![1, 2]);
        assert!(a.equivalent(&chsph_delta(&row, &q).unwrap()));
    }

    #[test]
    fn character_normalization_merges_terms() {
        let p = params(1, Kappa::Symbolic, &[1, 0]);
        let g = c_hat(&mp("[[1],[]]"), &p).unwrap();
        let t1 = CharTerm {
            gamma: g.clone(),
            num: LaurentPoly::monomial_int(1, 2),
            den: vec![4, 2],
        };
        let t2 = CharTerm {
            gamma: g.add(&p.scalar_int(2)).unwrap(),
            num: LaurentPoly::one(),
            den: vec![2, 4],
        };
        let ch = GradedCharacter::new(vec![t1, t2]);
        assert_eq!(ch.terms().len(), 1);
        assert_eq!(ch.terms()[0].num, LaurentPoly::monomial_int(2, 0));
        assert_eq!(ch.terms()[0].den, vec![2, 4]);
    }

    #[test]
    fn character_json_shape() {
        let p = params(1, Kappa::Symbolic, &[1, 0]);
        let ch = chhat_delta(&mp("[[1],[]]"), &p).unwrap();
        let json = serde_json::to_value(&ch).unwrap();
        assert_eq!(json[0]["den"], serde_json::json!([2]));
        assert_eq!(json[0]["num"], "1");
        assert_eq!(json[0]["gamma"], "k");
    }
}
