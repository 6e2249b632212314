//! Parameters for the cyclotomic algebras: charges, the (κ, s, m)
//! coordinate system and its conversions (ε-, c-, and h-coordinates),
//! sphericity and faithfulness predicates, integral difference, parameter
//! equivalence classes, dominant reduction of weightings, and the Hecke
//! specialization descriptors.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalar::{Kappa, Scalar};

/// A charge: the integer vector `s = (s_1, ..., s_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Charge {
    s: Vec<i64>,
}

impl Charge {
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("a charge needs at least one entry".into()));
        }
        Ok(Charge { s })
    }

    pub fn level(&self) -> usize {
        self.s.len()
    }

    /// `s_r` with 1-based `r`.
    pub fn get(&self, r: usize) -> i64 {
        self.s[r - 1]
    }

    /// `s_j` for any integer `j`, reading the index modulo the level with
    /// the convention `s_0 = s_l`.
    pub fn at_mod(&self, j: i64) -> i64 {
        let l = self.s.len() as i64;
        let r = j.rem_euclid(l);
        if r == 0 {
            self.s[self.s.len() - 1]
        } else {
            self.s[(r - 1) as usize]
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.s
    }

    pub fn sum(&self) -> i64 {
        self.s.iter().sum()
    }

    /// The dual charge `(-s_{l-1}, -s_{l-2}, ..., -s_1, -s_l)`.
    pub fn star(&self) -> Charge {
        let l = self.s.len();
        let mut out = Vec::with_capacity(l);
        for r in (1..l).rev() {
            out.push(-self.s[r - 1]);
        }
        out.push(-self.s[l - 1]);
        Charge { s: out }
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.s.windows(2).all(|w| w[0] > w[1])
    }

    /// Permute entries: the result `t` satisfies `t_{w(r)} = s_r`.
    pub fn permuted(&self, w: &Perm) -> Result<Charge> {
        Ok(Charge { s: w.act(&self.s)? })
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.s.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl FromStr for Charge {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{text}`")))?;
        let s = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad charge entry `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Charge::new(s)
    }
}

/// The full parameter of the level-`l` algebra on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub n: u64,
    pub kappa: Kappa,
    pub s: Charge,
    /// Optional weighting, the integer vector paired with `s` when the
    /// parameter is written as `s + k^{-1} m`.
    pub m: Option<Vec<i64>>,
}

impl Params {
    pub fn new(n: u64, kappa: Kappa, s: Charge, m: Option<Vec<i64>>) -> Result<Self> {
        if let Some(ref mv) = m {
            if mv.len() != s.level() {
                return Err(Error::SizeMismatch(format!(
                    "weighting length {} does not match charge length {}",
                    mv.len(),
                    s.level()
                )));
            }
        }
        Ok(Params { n, kappa, s, m })
    }

    pub fn level(&self) -> usize {
        self.s.level()
    }

    fn l64(&self) -> u64 {
        self.level() as u64
    }

    /// The parameter `k` as a scalar in this parameter's ring.
    pub fn kappa_scalar(&self) -> Scalar {
        Scalar::kappa(self.l64(), &self.kappa)
    }

    pub fn scalar_int(&self, v: i64) -> Scalar {
        Scalar::from_integer(self.l64(), &self.kappa, v)
    }

    pub fn scalar_rat(&self, num: i64, den: i64) -> Scalar {
        Scalar::from_rational(
            self.l64(),
            &self.kappa,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }
}

/// One orbit of reflection hyperplanes: the order of the pointwise
/// stabiliser and the attached parameter values `h_0, ..., h_{e-1}`.
#[derive(Debug, Clone)]
pub struct HClass {
    pub order: u64,
    pub values: Vec<Scalar>,
}

/// The h-coordinates of a parameter, one class per hyperplane orbit.
#[derive(Debug, Clone)]
pub struct HParams {
    pub classes: Vec<HClass>,
}

/// `ε_i = k(s_i - s_{i-1})` for `1 <= i <= l-1`, with `s_0 = s_l`.
pub fn eps_of(p: &Params, i: usize) -> Result<Scalar> {
    let l = p.level();
    if i == 0 || i >= l {
        return Err(Error::IndexOutOfRange(format!(
            "epsilon index {i} outside 1..={}",
            l.max(1) - 1
        )));
    }
    let diff = p.s.at_mod(i as i64) - p.s.at_mod(i as i64 - 1);
    Ok(p.kappa_scalar().times_int(diff))
}

/// The c-coordinates `(c_0, ..., c_{l-1})`: `c_0 = -k` and, for `i >= 1`,
/// `c_i = -(1 + k Σ_{j=1}^{l-1} (z^{-ij} - 1)(s_j - s_{j-1})) / 2`.
pub fn c_of(p: &Params) -> Result<Vec<Scalar>> {
    let l = p.level();
    let lv = p.l64();
    let mut out = Vec::with_capacity(l);
    out.push(p.kappa_scalar().neg());
    for i in 1..l as i64 {
        let mut acc = Cyclo::zero(lv);
        for j in 1..l as i64 {
            let weight = p.s.at_mod(j) - p.s.at_mod(j - 1);
            if weight == 0 {
                continue;
            }
            let root_term = Cyclo::zeta_pow(lv, -i * j)
                .sub(&Cyclo::from_integer(lv, 1))?
                .scaled(&BigRational::from_integer(BigInt::from(weight)));
            acc = acc.add(&root_term)?;
        }
        let inner = p
            .kappa_scalar()
            .mul(&Scalar::from_cyclo(lv, &p.kappa, acc))?
            .add(&p.scalar_int(1))?;
        out.push(inner.scaled(&BigRational::new(BigInt::from(-1), BigInt::from(2))));
    }
    Ok(out)
}

/// The h-coordinates: `[k, 0]` on the order-2 class (present when `n >= 2`)
/// and `k s_j - j/l` for `j = 0..l-1` on the cyclic class (present when
/// `l >= 2`), with `s_0 = s_l`.
pub fn h_of(p: &Params) -> HParams {
    let l = p.level();
    let lv = p.l64();
    let mut classes = Vec::new();
    if p.n >= 2 {
        classes.push(HClass {
            order: 2,
            values: vec![p.kappa_scalar(), Scalar::zero(lv, &p.kappa)],
        });
    }
    if l >= 2 {
        let values = (0..l as i64)
            .map(|j| {
                p.kappa_scalar()
                    .times_int(p.s.at_mod(j))
                    .sub(&p.scalar_rat(j, l as i64))
                    .expect("same ring")
            })
            .collect();
        classes.push(HClass {
            order: lv,
            values,
        });
    }
    HParams { classes }
}

/// Act on a parameter by permuting the charge (and the weighting, when
/// present); the deformation parameter is untouched.
pub fn sl_act(w: &Perm, p: &Params) -> Result<Params> {
    let s = p.s.permuted(w)?;
    let m = match &p.m {
        Some(mv) => Some(w.act(mv)?),
        None => None,
    };
    Params::new(p.n, p.kappa.clone(), s, m)
}

/// Outcome of the sphericity test, with a certificate for the wall hit
/// first in the deterministic scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sphericity {
    Spherical,
    /// The deformation parameter is a ratio `a/b` with `1 <= a < b <= n`.
    AsphericalRatio { a: i64, b: i64 },
    /// A wall of the second family, recorded as `(u, k, m)` with the
    /// companion integer `k_hat`.
    AsphericalWall { u: i64, k: i64, m: i64, k_hat: i64 },
}

/// Decide sphericity.  The ratio family is only reachable with a rational
/// parameter; the wall family is scanned in ascending `(u, m, k)` order and
/// the equation `k - k_hat = k·l·(s_{u-k} - s_u - m)` is tested exactly in
/// either parameter mode.
pub fn is_spherical(p: &Params) -> Result<Sphericity> {
    let l = p.level() as i64;
    let n = p.n as i64;
    match &p.kappa {
        Kappa::Rational(v) => {
            if v.is_zero() {
                return Err(Error::KappaZero);
            }
            // v is stored reduced with positive denominator.
            let (a, b) = (v.numer().clone(), v.denom().clone());
            if a >= BigInt::one() && a < b && b <= BigInt::from(n) {
                return Ok(Sphericity::AsphericalRatio {
                    a: i64::try_from(&a).expect("small"),
                    b: i64::try_from(&b).expect("small"),
                });
            }
        }
        Kappa::Symbolic => {}
    }
    let quarter = |x: i64| BigRational::new(BigInt::from(x * x), BigInt::from(4));
    for u in 0..l {
        for m in (1 - n)..=(n - 1) {
            let mut k = 1i64;
            loop {
                // Bound: k <= u + (sqrt(n + m^2/4) - m/2 - 1) l, checked by
                // comparing squares to stay in exact arithmetic.
                let lhs = BigRational::new(BigInt::from(k - u), BigInt::from(l))
                    + BigRational::one()
                    + BigRational::new(BigInt::from(m), BigInt::from(2));
                if lhs.is_positive()
                    && lhs.clone() * lhs > BigRational::from_integer(BigInt::from(n)) + quarter(m)
                {
                    break;
                }
                if k % l != 0 {
                    let k_hat = u - (u - k).rem_euclid(l);
                    let target = p.scalar_int(k - k_hat);
                    let wall = p
                        .kappa_scalar()
                        .times_int(l * (p.s.at_mod(u - k) - p.s.at_mod(u) - m));
                    if target == wall {
                        return Ok(Sphericity::AsphericalWall { u, k, m, k_hat });
                    }
                }
                k += 1;
            }
        }
    }
    Ok(Sphericity::Spherical)
}

/// Faithfulness in the (κ, s) coordinates: `k` avoids `1/2 + Z` and
/// `k(s_i - s_j)` avoids `Z` for all `i != j`.
pub fn is_faithful(p: &Params) -> bool {
    let half_shift = p
        .kappa_scalar()
        .sub(&p.scalar_rat(1, 2))
        .expect("same ring");
    if half_shift.is_integer() {
        return false;
    }
    let l = p.level();
    for i in 1..=l {
        for j in i + 1..=l {
            let d = p.kappa_scalar().times_int(p.s.get(i) - p.s.get(j));
            if d.is_integer() {
                return false;
            }
        }
    }
    true
}

/// Faithfulness in the h-coordinates: within each hyperplane class,
/// `h_m - h_{m'} - (m - m')/e` avoids `Z` for all `m != m'`.
pub fn is_faithful_h(h: &HParams) -> Result<bool> {
    for class in &h.classes {
        let e = class.order;
        if class.values.len() != e as usize {
            return Err(Error::SizeMismatch(format!(
                "class of order {e} carries {} values",
                class.values.len()
            )));
        }
        for m in 0..class.values.len() {
            for m2 in m + 1..class.values.len() {
                let level = class.values[m].level();
                let mode = class.values[m].kappa_mode().clone();
                let shift = Scalar::from_rational(
                    level,
                    &mode,
                    BigRational::new(BigInt::from(m as i64 - m2 as i64), BigInt::from(e as i64)),
                );
                let d = class.values[m].sub(&class.values[m2])?.sub(&shift)?;
                if d.is_integer() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether two parameters differ integrally: the deformation parameters
/// differ by an integer and the twisted charge differences
/// `(k's'_i - k s_i) - (k's'_1 - k s_1)` are all integers.
pub fn integral_difference(p: &Params, q: &Params) -> Result<bool> {
    if p.level() != q.level() {
        return Err(Error::LevelMismatch(format!(
            "levels {} and {}",
            p.level(),
            q.level()
        )));
    }
    match (&p.kappa, &q.kappa) {
        (Kappa::Symbolic, Kappa::Symbolic) => {
            // κ' = κ, so κ' - κ = 0 and the test quantities are
            // κ(s'_i - s_i) - κ(s'_1 - s_1), integers only when zero.
            for i in 2..=p.level() {
                let d = (q.s.get(i) - p.s.get(i)) - (q.s.get(1) - p.s.get(1));
                if d != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Kappa::Rational(a), Kappa::Rational(b)) => {
            if !(b - a).is_integer() {
                return Ok(false);
            }
            let base = b * BigRational::from_integer(BigInt::from(q.s.get(1)))
                - a * BigRational::from_integer(BigInt::from(p.s.get(1)));
            for i in 2..=p.level() {
                let d = b * BigRational::from_integer(BigInt::from(q.s.get(i)))
                    - a * BigRational::from_integer(BigInt::from(p.s.get(i)))
                    - base.clone();
                if !d.is_integer() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(Error::ModeMismatch),
    }
}

/// Group the indices `1..=l` of a parameter written as pairs
/// `(s_r, m_r)` (meaning `s_r + k^{-1} m_r`): two indices are equivalent
/// when both coordinate differences are integers.  Only meaningful for a
/// symbolic (irrational) deformation parameter.
pub fn param_classes(
    kappa: &Kappa,
    pairs: &[(BigRational, BigRational)],
) -> Result<Vec<Vec<usize>>> {
    if !kappa.is_symbolic() {
        return Err(Error::Hypothesis(
            "parameter-class reduction requires a symbolic (irrational) deformation parameter"
                .into(),
        ));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for r in 1..=pairs.len() {
        let (sr, mr) = &pairs[r - 1];
        for class in classes.iter_mut() {
            let (s0, m0) = &pairs[class[0] - 1];
            if (sr - s0).is_integer() && (mr - m0).is_integer() {
                class.push(r);
                continue 'outer;
            }
        }
        classes.push(vec![r]);
    }
    Ok(classes)
}

/// Rearrange a weighting into dominant form `t_l >= t_1 >= ... >= t_{l-1}`
/// and return the minimal-length permutation `w` with `w(m)` dominant
/// (equal entries keep their relative order).
pub fn dominant_reduce(m: &[i64]) -> (Perm, Vec<i64>) {
    let l = m.len();
    if l == 0 {
        return (Perm::identity(0), Vec::new());
    }
    let mut sorted: Vec<i64> = m.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    // Fill slot l first, then slots 1..l-1, with the values in weakly
    // decreasing order.
    let mut target = vec![0i64; l];
    target[l - 1] = sorted[0];
    for (slot, &v) in sorted.iter().skip(1).enumerate() {
        target[slot] = v;
    }
    // Match sources to slots value by value, both sides in increasing
    // index order: this is the unique inversion-minimal assignment.
    let mut images = vec![0usize; l];
    let mut values: Vec<i64> = sorted.clone();
    values.dedup();
    for v in values {
        let sources = (0..l).filter(|&i| m[i] == v);
        let slots: Vec<usize> = (0..l).filter(|&j| target[j] == v).collect();
        for (src, slot) in sources.zip(slots) {
            images[src] = slot;
        }
    }
    let w = Perm::new(images).expect("constructed a bijection");
    (w, target)
}

/// Descriptors of the Hecke-algebra specialization attached to a
/// parameter: purely symbolic, no algebra elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeDescriptor {
    /// `q` as a formal exponential of the deformation parameter.
    pub q: String,
    /// `Q_1, ..., Q_l`: exponentials in the non-degenerate case, the plain
    /// charge entries when `q = 1`.
    pub qq: Vec<String>,
    /// Whether `q = 1` (an integer deformation parameter).
    pub degenerate: bool,
    /// The dual charge transported through the Hecke involution.
    pub s_star: Charge,
}

pub fn hecke_params(p: &Params) -> HeckeDescriptor {
    let degenerate = match &p.kappa {
        Kappa::Symbolic => false,
        Kappa::Rational(v) => v.is_integer(),
    };
    let kappa_text = p.kappa_scalar().render();
    let q = format!("exp(2*pi*i*({kappa_text}))");
    let qq = (1..=p.level())
        .map(|i| {
            if degenerate {
                p.s.get(i).to_string()
            } else {
                let exponent = p.kappa_scalar().times_int(p.s.get(i)).render();
                format!("exp(2*pi*i*({exponent}))")
            }
        })
        .collect();
    HeckeDescriptor {
        q,
        qq,
        degenerate,
        s_star: p.s.star(),
    }
}
