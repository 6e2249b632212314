//! Grothendieck-group shadows of the standard modules: restriction and
//! induction as integer matrices on labels, the block-refined orderings,
//! and the exact injectivity test for the combined restriction/graded
//! character map.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};

use crate::caps::Caps;
use crate::characters::{c_hat, chhat_delta};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::QMatrix;
use crate::multipartition::Multipartition;
use crate::params::{Charge, Params};
use crate::partition::Dominance;
use crate::perm::Perm;
use crate::scalar::Scalar;

/// A vector in the Grothendieck group: rational coefficients on the basis
/// of standard-module classes, zero entries never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KVector {
    entries: BTreeMap<Multipartition, BigRational>,
}

impl KVector {
    pub fn zero() -> Self {
        KVector::default()
    }

    pub fn basis(lambda: Multipartition) -> Self {
        let mut v = KVector::zero();
        v.add_term(lambda, BigRational::one());
        v
    }

    pub fn add_term(&mut self, lambda: Multipartition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&lambda) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.entries.remove(&lambda);
                }
            }
            None => {
                self.entries.insert(lambda, c);
            }
        }
    }

    pub fn get(&self, lambda: &Multipartition) -> BigRational {
        self.entries.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multipartition, &BigRational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, c: &BigRational) -> KVector {
        let mut out = KVector::zero();
        for (k, v) in &self.entries {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &KVector) -> KVector {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &KVector) -> KVector {
        self.add(&other.scaled(&-BigRational::one()))
    }
}

/// Apply the restriction map: each label contributes its one-box removals
/// with unit coefficients.
pub fn res_apply(v: &KVector) -> KVector {
    let mut out = KVector::zero();
    for (lambda, c) in v.iter() {
        for b in lambda.removable_boxes() {
            let smaller = lambda.with_box_removed(&b).expect("removable box");
            out.add_term(smaller, c.clone());
        }
    }
    out
}

/// Apply the induction map: each label contributes its one-box additions
/// with unit coefficients.
pub fn ind_apply(v: &KVector) -> KVector {
    let mut out = KVector::zero();
    for (lambda, c) in v.iter() {
        for b in lambda.addable_boxes() {
            let bigger = lambda.with_box_added(&b).expect("addable box");
            out.add_term(bigger, c.clone());
        }
    }
    out
}

/// A matrix together with the labels indexing its rows and columns.
#[derive(Debug, Clone)]
pub struct LabeledMatrix {
    pub row_labels: Vec<Multipartition>,
    pub col_labels: Vec<Multipartition>,
    pub matrix: QMatrix,
}

fn incidence(
    row_labels: Vec<Multipartition>,
    col_labels: Vec<Multipartition>,
    images: impl Fn(&Multipartition) -> KVector,
) -> LabeledMatrix {
    let index: BTreeMap<&Multipartition, usize> =
        row_labels.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = QMatrix::zeros(row_labels.len(), col_labels.len());
    for (j, lambda) in col_labels.iter().enumerate() {
        for (target, c) in images(lambda).iter() {
            matrix.set(index[target], j, c.clone());
        }
    }
    LabeledMatrix {
        row_labels,
        col_labels,
        matrix,
    }
}

/// The restriction matrix on labels of size `n`, rows indexed by labels of
/// size `n - 1`, in the canonical enumeration order.
pub fn res_matrix(n: u64, l: usize, caps: &Caps) -> Result<LabeledMatrix> {
    if n == 0 {
        return Err(Error::Hypothesis(
            "restriction needs labels with at least one box".into(),
        ));
    }
    let cols = Multipartition::enumerate(l, n, caps)?;
    let rows = Multipartition::enumerate(l, n - 1, caps)?;
    Ok(incidence(rows, cols, |m| res_apply(&KVector::basis(m.clone()))))
}

/// The induction matrix on labels of size `n`, rows indexed by labels of
/// size `n + 1`, in the canonical enumeration order.
pub fn ind_matrix(n: u64, l: usize, caps: &Caps) -> Result<LabeledMatrix> {
    let cols = Multipartition::enumerate(l, n, caps)?;
    let rows = Multipartition::enumerate(l, n + 1, caps)?;
    Ok(incidence(rows, cols, |m| ind_apply(&KVector::basis(m.clone()))))
}

/// The unique label of size `n` whose one-box removals form exactly the
/// given set (meaningful for `n >= 2`).
pub fn recover_from_removals(set: &[Multipartition]) -> Result<Multipartition> {
    Multipartition::recover_from_removals(set)
}

fn check_pair(lambda: &Multipartition, mu: &Multipartition) -> Result<()> {
    if lambda.level() != mu.level() {
        return Err(Error::LevelMismatch(format!(
            "levels {} and {}",
            lambda.level(),
            mu.level()
        )));
    }
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "sizes {} and {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(())
}

/// The weighted size statistic `Σ_{r=0}^{l-1} |λ^{(r)}| (l m_r - r)` with
/// the wrap-around convention that index 0 reads component `l`.
fn m_weight(lambda: &Multipartition, m: &[i64]) -> i64 {
    let l = lambda.level();
    (0..l as i64)
        .map(|r| {
            let comp = if r == 0 { l } else { r as usize };
            let mr = if r == 0 { m[l - 1] } else { m[r as usize - 1] };
            lambda.comp(comp).size() as i64 * ((l as i64) * mr - r)
        })
        .sum()
}

/// The block-refined ordering attached to `(s, m)`: equal residue
/// multisets and strictly smaller weighted size on the left.
pub fn order_sm(
    lambda: &Multipartition,
    mu: &Multipartition,
    s: &Charge,
    m: &[i64],
) -> Result<bool> {
    check_pair(lambda, mu)?;
    if lambda.level() != s.level() || m.len() != s.level() {
        return Err(Error::LevelMismatch(
            "charge and weighting must match the label level".into(),
        ));
    }
    Ok(
        lambda.residue_multiset(s.as_slice()) == mu.residue_multiset(s.as_slice())
            && m_weight(mu, m) > m_weight(lambda, m),
    )
}

/// The Schur-side ordering: dominance plus equal residue multisets with
/// respect to the given (dual-side) charge.
pub fn order_sstar(
    lambda: &Multipartition,
    mu: &Multipartition,
    s_star: &Charge,
) -> Result<bool> {
    check_pair(lambda, mu)?;
    if lambda.level() != s_star.level() {
        return Err(Error::LevelMismatch(
            "charge must match the label level".into(),
        ));
    }
    Ok(lambda.dominance_cmp(mu) == Dominance::Greater
        && lambda.residue_multiset(s_star.as_slice())
            == mu.residue_multiset(s_star.as_slice()))
}

/// The transported ordering for non-dominant weightings: compare the
/// starred `w^{-1}`-images by dominance and by residue multisets with
/// respect to the dual charge.  `w` must carry `m` to dominant form.
pub fn order_prime(
    lambda: &Multipartition,
    mu: &Multipartition,
    w: &Perm,
    s: &Charge,
    m: &[i64],
) -> Result<bool> {
    check_pair(lambda, mu)?;
    if lambda.level() != s.level() || w.degree() != s.level() || m.len() != s.level() {
        return Err(Error::LevelMismatch(
            "charge, weighting and permutation must match the label level".into(),
        ));
    }
    let wm = w.act(m)?;
    let l = wm.len();
    let dominant = wm[l - 1] >= wm[0] && wm[..l - 1].windows(2).all(|p| p[0] >= p[1]);
    if !dominant {
        return Err(Error::Hypothesis(
            "the permutation must carry the weighting to dominant form".into(),
        ));
    }
    let w_inv = w.inverse();
    let a = lambda.permuted(&w_inv)?.star();
    let b = mu.permuted(&w_inv)?.star();
    let s_star = s.star();
    Ok(a.dominance_cmp(&b) == Dominance::Greater
        && a.residue_multiset(s_star.as_slice()) == b.residue_multiset(s_star.as_slice()))
}

/// Outcome of the injectivity test: either injective or a witness vector
/// killed by both restriction and the graded character.
#[derive(Debug, Clone, PartialEq)]
pub enum Injectivity {
    Injective,
    Kernel(KVector),
}

fn den_multiset(den: &[u64]) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for &d in den {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

/// Exact injectivity of `v -> ([Res] v, ĉh(v))` on the size-`n` labels.
/// Graded characters are grouped by the integer coset of their leading
/// exponent; within a coset everything is put over one denominator and the
/// resulting polynomial identities become rational matrix rows.
pub fn joint_injectivity(p: &Params, caps: &Caps) -> Result<Injectivity> {
    let n = p.n;
    let l = p.level();
    let labels = Multipartition::enumerate(l, n, caps)?;
    let prev = if n > 0 {
        Multipartition::enumerate(l, n - 1, caps)?
    } else {
        Vec::new()
    };
    let prev_index: BTreeMap<&Multipartition, usize> =
        prev.iter().enumerate().map(|(i, m)| (m, i)).collect();

    struct Coset {
        rep: Scalar,
        members: Vec<(usize, i64, Vec<u64>)>, // (column, shift, denominator)
    }
    let mut cosets: Vec<Coset> = Vec::new();
    for (j, lambda) in labels.iter().enumerate() {
        let gamma = c_hat(lambda, p)?;
        let ch = chhat_delta(lambda, p)?;
        let den = ch.terms()[0].den.clone();
        let mut placed = false;
        for coset in cosets.iter_mut() {
            let diff = gamma.sub(&coset.rep)?;
            if diff.is_integer() {
                let shift = i64::try_from(
                    diff.as_rational().expect("integer scalar").to_integer(),
                )
                .expect("small shift");
                coset.members.push((j, shift, den.clone()));
                placed = true;
                break;
            }
        }
        if !placed {
            cosets.push(Coset {
                rep: gamma,
                members: vec![(j, 0, den)],
            });
        }
    }

    // One polynomial per column within each coset: q^{shift} times the
    // cofactors needed to reach the coset-wide common denominator.
    let mut coset_rows: Vec<(i64, i64, Vec<(usize, LaurentPoly)>)> = Vec::new();
    for coset in &cosets {
        let mut common: BTreeMap<u64, usize> = BTreeMap::new();
        for (_, _, den) in &coset.members {
            for (d, mult) in den_multiset(den) {
                let slot = common.entry(d).or_insert(0);
                *slot = (*slot).max(mult);
            }
        }
        let mut polys: Vec<(usize, LaurentPoly)> = Vec::new();
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for (j, shift, den) in &coset.members {
            let have = den_multiset(den);
            let mut poly = LaurentPoly::monomial_int(1, *shift);
            for (&d, &mult) in &common {
                let missing = mult - have.get(&d).copied().unwrap_or(0);
                for _ in 0..missing {
                    poly = &poly * &LaurentPoly::one_minus_pow(d as i64);
                }
            }
            lo = lo.min(poly.min_exp().expect("nonzero"));
            hi = hi.max(poly.max_exp().expect("nonzero"));
            polys.push((*j, poly));
        }
        coset_rows.push((lo, hi, polys));
    }

    let char_rows: usize = coset_rows
        .iter()
        .map(|(lo, hi, _)| (hi - lo + 1) as usize)
        .sum();
    let mut matrix = QMatrix::checked(prev.len() + char_rows, labels.len(), caps)?;
    for (j, lambda) in labels.iter().enumerate() {
        for b in lambda.removable_boxes() {
            let smaller = lambda.with_box_removed(&b).expect("removable box");
            matrix.add_assign_at(prev_index[&smaller], j, &BigRational::one());
        }
    }
    let mut row_base = prev.len();
    for (lo, hi, polys) in &coset_rows {
        for (j, poly) in polys {
            for (e, c) in poly.terms() {
                matrix.set(row_base + (e - lo) as usize, *j, c.clone());
            }
        }
        row_base += (hi - lo + 1) as usize;
    }

    if matrix.rank() == labels.len() {
        return Ok(Injectivity::Injective);
    }
    let kernel = matrix.kernel();
    let coords = &kernel[0];
    let mut witness = KVector::zero();
    for (j, c) in coords.iter().enumerate() {
        witness.add_term(labels[j].clone(), c.clone());
    }
    Ok(Injectivity::Kernel(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Kappa;

    fn mp(text: &str) -> Multipartition {
        text.parse().unwrap()
    }

    fn params(n: u64, kappa: Kappa, s: &[i64]) -> Params {
        Params::new(n, kappa, Charge::new(s.to_vec()).unwrap(), None).unwrap()
    }

    #[test]
    fn restriction_of_small_labels() {
        let one_box = res_apply(&KVector::basis(mp("[[1],[]]")));
        assert_eq!(one_box, KVector::basis(mp("[[],[]]")));
        let two = res_apply(&KVector::basis(mp("[[1],[1]]")));
        assert_eq!(two.len(), 2);
        assert_eq!(two.get(&mp("[[1],[]]")), BigRational::one());
        assert_eq!(two.get(&mp("[[],[1]]")), BigRational::one());
        assert!(res_matrix(0, 2, &Caps::default()).is_err());
    }

    #[test]
    fn induction_restriction_commutator() {
        for l in 1..=2usize {
            for n in 0..=3u64 {
                let caps = Caps::default();
                let ind_n = ind_matrix(n, l, &caps).unwrap();
                let res_up = res_matrix(n + 1, l, &caps).unwrap();
                let down_then_up;
                if n == 0 {
                    let dim = ind_n.col_labels.len();
                    down_then_up = QMatrix::zeros(dim, dim);
                } else {
                    let res_n = res_matrix(n, l, &caps).unwrap();
                    let ind_prev = ind_matrix(n - 1, l, &caps).unwrap();
                    down_then_up = ind_prev.matrix.mul(&res_n.matrix).unwrap();
                }
                let up_then_down = res_up.matrix.mul(&ind_n.matrix).unwrap();
                let commutator = up_then_down.sub(&down_then_up).unwrap();
                let scale = BigRational::from_integer(num::BigInt::from(l as i64));
                let expected = QMatrix::identity(ind_n.col_labels.len()).scaled(&scale);
                assert_eq!(commutator, expected, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn largest_restriction_target_is_the_detachment() {
        for lambda in Multipartition::enumerate(2, 3, &Caps::default()).unwrap() {
            let (expected, _) = lambda.detach_last().unwrap();
            let best = res_apply(&KVector::basis(lambda.clone()))
                .iter()
                .map(|(m, _)| m.clone())
                .max_by(|a, b| a.col_lex_cmp(b))
                .unwrap();
            assert_eq!(best, expected, "lambda = {lambda}");
        }
    }

    #[test]
    fn recovery_from_removal_sets() {
        let set = vec![mp("[[1],[]]"), mp("[[],[1]]")];
        assert_eq!(recover_from_removals(&set).unwrap(), mp("[[1],[1]]"));
        assert!(matches!(
            recover_from_removals(&[]),
            Err(Error::NoPreimage)
        ));
    }

    #[test]
    fn orderings_are_strict() {
        let s = Charge::new(vec![1, 0]).unwrap();
        let m = vec![0i64, 0];
        let w = Perm::identity(2);
        for lambda in Multipartition::enumerate(2, 3, &Caps::default()).unwrap() {
            assert!(!order_sm(&lambda, &lambda, &s, &m).unwrap());
            assert!(!order_sstar(&lambda, &lambda, &s).unwrap());
            assert!(!order_prime(&lambda, &lambda, &w, &s, &m).unwrap());
        }
    }

    #[test]
    fn schur_ordering_respects_residues() {
        let s = Charge::new(vec![1, 0]).unwrap();
        // Residue multisets {1, 0} vs {0, -1}: never comparable.
        assert!(!order_sstar(&mp("[[1],[1]]"), &mp("[[],[1,1]]"), &s).unwrap());
        assert!(!order_sstar(&mp("[[],[1,1]]"), &mp("[[1],[1]]"), &s).unwrap());
    }

    #[test]
    fn starred_ordering_implies_weighted_ordering() {
        let s = Charge::new(vec![1, 0]).unwrap();
        let s_star = s.star();
        let labels = Multipartition::enumerate(2, 4, &Caps::default()).unwrap();
        for m in [vec![0i64, 0], vec![1, 2]] {
            let mut seen = 0usize;
            for a in &labels {
                for b in &labels {
                    if order_sstar(&a.star(), &b.star(), &s_star).unwrap() {
                        seen += 1;
                        assert!(order_sm(a, b, &s, &m).unwrap(), "{a} vs {b}, m={m:?}");
                    }
                }
            }
            assert!(seen > 0, "implication test must not be vacuous");
        }
    }

    #[test]
    fn transported_ordering_implies_weighted_ordering() {
        use crate::params::dominant_reduce;
        let s = Charge::new(vec![2, 0, 1]).unwrap();
        let m = vec![1i64, 0, 2];
        let (w, _) = dominant_reduce(&m);
        let ws = s.permuted(&w).unwrap();
        let wm = w.act(&m).unwrap();
        let labels = Multipartition::enumerate(3, 3, &Caps::default()).unwrap();
        let mut seen = 0usize;
        for a in &labels {
            for b in &labels {
                if order_prime(a, b, &w, &s, &m).unwrap() {
                    seen += 1;
                    assert!(order_sm(a, b, &ws, &wm).unwrap(), "{a} vs {b}");
                }
            }
        }
        assert!(seen > 0, "implication test must not be vacuous");
    }

    #[test]
    fn injectivity_for_one_box() {
        let p = params(1, Kappa::Symbolic, &[2, 1, 0]);
        assert_eq!(
            joint_injectivity(&p, &Caps::default()).unwrap(),
            Injectivity::Injective
        );
    }

    #[test]
    fn injectivity_for_a_spherical_parameter() {
        let p = params(2, Kappa::Symbolic, &[5, 0]);
        assert_eq!(
            joint_injectivity(&p, &Caps::default()).unwrap(),
            Injectivity::Injective
        );
    }

    #[test]
    fn degenerate_parameter_has_a_kernel() {
        let p = params(2, Kappa::rational(1, 1), &[1, 0]);
        let outcome = joint_injectivity(&p, &Caps::default()).unwrap();
        let Injectivity::Kernel(v) = outcome else {
            panic!("expected a kernel witness");
        };
        // The witness is killed by restriction ...
        assert!(res_apply(&v).is_zero());
        // ... and is proportional to the hand-checked relation.
        let a = v.get(&mp("[[1,1],[]]"));
        assert!(!a.is_zero());
        let scaled = v.scaled(&a.recip());
        assert_eq!(scaled.get(&mp("[[1],[1]]")), -BigRational::one());
        assert_eq!(scaled.get(&mp("[[],[2]]")), BigRational::one());
        assert_eq!(scaled.len(), 3);
    }
}
