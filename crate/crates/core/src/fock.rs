//! The quantum-group action on the level-`l` charged Fock space: the
//! box-counting statistics, the raising/lowering/torus operators on the
//! standard basis, matrix forms, relation verification, and the dimension
//! of the joint kernel of the raising operators.

use std::collections::BTreeMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::PolyMatrix;
use crate::multipartition::{BoxPos, Multipartition};
use crate::params::Charge;

/// `d_i(λ)`: addable minus removable boxes of residue `i`.
pub fn d_stat(lambda: &Multipartition, s: &Charge, i: i64) -> i64 {
    let add = lambda
        .addable_boxes()
        .iter()
        .filter(|b| Multipartition::residue(b, s.as_slice()) == i)
        .count() as i64;
    let rem = lambda
        .removable_boxes()
        .iter()
        .filter(|b| Multipartition::residue(b, s.as_slice()) == i)
        .count() as i64;
    add - rem
}

fn count_signed(
    lambda: &Multipartition,
    s: &Charge,
    i: i64,
    key: (usize, usize),
    below: bool,
) -> i64 {
    let side = |b: &BoxPos| {
        if below {
            b.reading_key() > key
        } else {
            b.reading_key() < key
        }
    };
    let add = lambda
        .addable_boxes()
        .iter()
        .filter(|b| Multipartition::residue(b, s.as_slice()) == i && side(b))
        .count() as i64;
    let rem = lambda
        .removable_boxes()
        .iter()
        .filter(|b| Multipartition::residue(b, s.as_slice()) == i && side(b))
        .count() as i64;
    add - rem
}

/// `d_A(λ)` for a removable box `A`: addable minus removable boxes of the
/// same residue strictly below `A` in reading order.
pub fn d_below(lambda: &Multipartition, s: &Charge, a: &BoxPos) -> Result<i64> {
    if !lambda.removable_boxes().contains(a) {
        return Err(Error::Hypothesis(format!(
            "box {a} is not removable from {lambda}"
        )));
    }
    let i = Multipartition::residue(a, s.as_slice());
    Ok(count_signed(lambda, s, i, a.reading_key(), true))
}

/// `d^B(λ)` for an addable box `B`: addable minus removable boxes of the
/// same residue strictly above `B` in reading order.
pub fn d_above(lambda: &Multipartition, s: &Charge, b: &BoxPos) -> Result<i64> {
    if !lambda.addable_boxes().contains(b) {
        return Err(Error::Hypothesis(format!(
            "box {b} is not addable to {lambda}"
        )));
    }
    let i = Multipartition::residue(b, s.as_slice());
    Ok(count_signed(lambda, s, i, b.reading_key(), false))
}

/// A basis operator of the quantum action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockOp {
    E(i64),
    F(i64),
    K(i64),
    KInv(i64),
}

/// A vector in the degree-`n` part of the charged Fock space: a finite
/// sum of standard basis elements with Laurent-polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    s: Charge,
    n: u64,
    terms: BTreeMap<Multipartition, LaurentPoly>,
}

impl FockVector {
    pub fn zero(s: Charge, n: u64) -> Self {
        FockVector {
            s,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(s: Charge, lambda: Multipartition) -> Result<Self> {
        if lambda.level() != s.level() {
            return Err(Error::LevelMismatch(format!(
                "label level {} does not match charge length {}",
                lambda.level(),
                s.level()
            )));
        }
        let n = lambda.size();
        let mut v = FockVector::zero(s, n);
        v.terms.insert(lambda, LaurentPoly::one());
        Ok(v)
    }

    pub fn charge(&self) -> &Charge {
        &self.s
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn add_term(&mut self, lambda: Multipartition, c: LaurentPoly) -> Result<()> {
        if lambda.level() != self.s.level() || lambda.size() != self.n {
            return Err(Error::SizeMismatch(format!(
                "term {lambda} does not live in degree {} at level {}",
                self.n,
                self.s.level()
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&lambda) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                self.terms.insert(lambda, c);
            }
        }
        Ok(())
    }

    pub fn get(&self, lambda: &Multipartition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multipartition, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &LaurentPoly) -> FockVector {
        let mut out = FockVector::zero(self.s.clone(), self.n);
        for (k, p) in &self.terms {
            out.add_term(k.clone(), p * c).expect("same context");
        }
        out
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector> {
        if self.s != other.s || self.n != other.n {
            return Err(Error::SizeMismatch(
                "cannot add vectors from different Fock contexts".into(),
            ));
        }
        let mut out = self.clone();
        for (k, p) in &other.terms {
            out.add_term(k.clone(), p.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector> {
        self.add(&other.scaled(&LaurentPoly::monomial_int(-1, 0)))
    }
}

/// Apply a generator to a vector, extending the basis action linearly.
pub fn apply(op: FockOp, x: &FockVector) -> FockVector {
    let s = x.charge().clone();
    let out_degree = match op {
        FockOp::E(_) => x.degree().saturating_sub(1),
        FockOp::F(_) => x.degree() + 1,
        _ => x.degree(),
    };
    let mut out = FockVector::zero(s.clone(), out_degree);
    for (lambda, c) in x.iter() {
        match op {
            FockOp::E(i) => {
                for a in lambda.removable_boxes() {
                    if Multipartition::residue(&a, s.as_slice()) != i {
                        continue;
                    }
                    let d = d_below(lambda, &s, &a).expect("removable box");
                    let coeff = c * &LaurentPoly::monomial_int(1, d);
                    let target = lambda.with_box_removed(&a).expect("removable box");
                    out.add_term(target, coeff).expect("degree drops by one");
                }
            }
            FockOp::F(i) => {
                for b in lambda.addable_boxes() {
                    if Multipartition::residue(&b, s.as_slice()) != i {
                        continue;
                    }
                    let d = d_above(lambda, &s, &b).expect("addable box");
                    let coeff = c * &LaurentPoly::monomial_int(1, -d);
                    let target = lambda.with_box_added(&b).expect("addable box");
                    out.add_term(target, coeff).expect("degree grows by one");
                }
            }
            FockOp::K(i) => {
                let d = d_stat(lambda, &s, i);
                out.add_term(lambda.clone(), c * &LaurentPoly::monomial_int(1, d))
                    .expect("degree preserved");
            }
            FockOp::KInv(i) => {
                let d = d_stat(lambda, &s, i);
                out.add_term(lambda.clone(), c * &LaurentPoly::monomial_int(1, -d))
                    .expect("degree preserved");
            }
        }
    }
    out
}

/// Matrix of a generator on the degree-`n` basis in enumeration order;
/// rows are indexed by the image degree's enumeration.  `twist` perturbs
/// the lowering statistics and exists for negative-control testing.
pub(crate) fn operator_matrix_twisted(
    op: FockOp,
    l: usize,
    n: u64,
    s: &Charge,
    twist: i64,
    caps: &Caps,
) -> Result<PolyMatrix> {
    let cols = Multipartition::enumerate(l, n, caps)?;
    let rows = match op {
        FockOp::E(_) => {
            if n == 0 {
                Vec::new()
            } else {
                Multipartition::enumerate(l, n - 1, caps)?
            }
        }
        FockOp::F(_) => Multipartition::enumerate(l, n + 1, caps)?,
        _ => cols.clone(),
    };
    let index: BTreeMap<&Multipartition, usize> =
        rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = PolyMatrix::zeros(rows.len(), cols.len());
    for (j, lambda) in cols.iter().enumerate() {
        let image = match op {
            FockOp::F(i) if twist != 0 => {
                // Perturbed lowering operator for negative-control tests.
                // The offset applies only to boxes beyond the first
                // component: a uniform offset would merely rescale the
                // whole operator and leave every homogeneous relation
                // intact.
                let mut out = FockVector::zero(s.clone(), n + 1);
                for b in lambda.addable_boxes() {
                    if Multipartition::residue(&b, s.as_slice()) != i {
                        continue;
                    }
                    let offset = if b.comp >= 2 { twist } else { 0 };
                    let d = d_above(lambda, s, &b).expect("addable box") + offset;
                    out.add_term(
                        lambda.with_box_added(&b).expect("addable box"),
                        LaurentPoly::monomial_int(1, -d),
                    )
                    .expect("degree grows by one");
                }
                out
            }
            _ => apply(op, &FockVector::basis(s.clone(), lambda.clone())?),
        };
        for (target, c) in image.iter() {
            matrix.set(index[target], j, c.clone());
        }
    }
    Ok(matrix)
}

/// Matrix of a generator on the degree-`n` basis in enumeration order.
pub fn operator_matrix(
    op: FockOp,
    l: usize,
    n: u64,
    s: &Charge,
    caps: &Caps,
) -> Result<PolyMatrix> {
    operator_matrix_twisted(op, l, n, s, 0, caps)
}

/// Outcome of the relation checks: the number of identities verified and
/// the first violation, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub checks: usize,
    pub failure: Option<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn cartan(i: i64, j: i64) -> i64 {
    if i == j {
        2
    } else if (i - j).abs() == 1 {
        -1
    } else {
        0
    }
}

struct MatrixCache<'a> {
    l: usize,
    s: &'a Charge,
    twist: i64,
    caps: &'a Caps,
    store: BTreeMap<(char, i64, u64), PolyMatrix>,
}

impl<'a> MatrixCache<'a> {
    fn get(&mut self, kind: char, i: i64, n: u64) -> Result<PolyMatrix> {
        if let Some(m) = self.store.get(&(kind, i, n)) {
            return Ok(m.clone());
        }
        let op = match kind {
            'E' => FockOp::E(i),
            'F' => FockOp::F(i),
            'K' => FockOp::K(i),
            _ => FockOp::KInv(i),
        };
        let m = operator_matrix_twisted(op, self.l, n, self.s, self.twist, self.caps)?;
        self.store.insert((kind, i, n), m.clone());
        Ok(m)
    }
}

pub(crate) fn verify_relations_twisted(
    s: &Charge,
    n: u64,
    lo: i64,
    hi: i64,
    twist: i64,
    caps: &Caps,
) -> Result<RelationReport> {
    let l = s.level();
    let mut cache = MatrixCache {
        l,
        s,
        twist,
        caps,
        store: BTreeMap::new(),
    };
    let mut checks = 0usize;
    let v_minus_vinv = &LaurentPoly::monomial_int(1, 1) - &LaurentPoly::monomial_int(1, -1);

    for k in 0..=n {
        for i in lo..=hi {
            for j in lo..=hi {
                // (v - v^{-1}) [E_i, F_j] = δ_{ij} (K_i - K_i^{-1}).
                let ef = cache.get('E', i, k + 1)?.mul(&cache.get('F', j, k)?)?;
                let fe = if k == 0 {
                    PolyMatrix::zeros(ef.rows(), ef.cols())
                } else {
                    cache.get('F', j, k - 1)?.mul(&cache.get('E', i, k)?)?
                };
                let lhs = ef.sub(&fe)?.scaled(&v_minus_vinv);
                let rhs = if i == j {
                    cache.get('K', i, k)?.sub(&cache.get('I', i, k)?)?
                } else {
                    PolyMatrix::zeros(lhs.rows(), lhs.cols())
                };
                checks += 1;
                if lhs != rhs {
                    return Ok(RelationReport {
                        checks,
                        failure: Some(format!(
                            "commutator identity failed for (i, j) = ({i}, {j}) in degree {k}"
                        )),
                    });
                }

                // Torus conjugation: K_i E_j = v^{a_ij} E_j K_i and
                // K_i F_j = v^{-a_ij} F_j K_i.
                let a = cartan(i, j);
                let ke = cache.get('K', i, k)?.mul(&cache.get('E', j, k + 1)?)?;
                let ek = cache
                    .get('E', j, k + 1)?
                    .mul(&cache.get('K', i, k + 1)?)?
                    .scaled(&LaurentPoly::monomial_int(1, a));
                checks += 1;
                if ke != ek {
                    return Ok(RelationReport {
                        checks,
                        failure: Some(format!(
                            "torus conjugation of E failed for (i, j) = ({i}, {j}) in degree {k}"
                        )),
                    });
                }
                let kf = cache.get('K', i, k + 1)?.mul(&cache.get('F', j, k)?)?;
                let fk = cache
                    .get('F', j, k)?
                    .mul(&cache.get('K', i, k)?)?
                    .scaled(&LaurentPoly::monomial_int(1, -a));
                checks += 1;
                if kf != fk {
                    return Ok(RelationReport {
                        checks,
                        failure: Some(format!(
                            "torus conjugation of F failed for (i, j) = ({i}, {j}) in degree {k}"
                        )),
                    });
                }

                if (i - j).abs() > 1 {
                    // Distant generators commute.
                    if k >= 2 {
                        let ab = cache.get('E', i, k - 1)?.mul(&cache.get('E', j, k)?)?;
                        let ba = cache.get('E', j, k - 1)?.mul(&cache.get('E', i, k)?)?;
                        checks += 1;
                        if ab != ba {
                            return Ok(RelationReport {
                                checks,
                                failure: Some(format!(
                                    "locality failed for E at (i, j) = ({i}, {j}) in degree {k}"
                                )),
                            });
                        }
                    }
                    let ab = cache.get('F', i, k + 1)?.mul(&cache.get('F', j, k)?)?;
                    let ba = cache.get('F', j, k + 1)?.mul(&cache.get('F', i, k)?)?;
                    checks += 1;
                    if ab != ba {
                        return Ok(RelationReport {
                            checks,
                            failure: Some(format!(
                                "locality failed for F at (i, j) = ({i}, {j}) in degree {k}"
                            )),
                        });
                    }
                }

                if (i - j).abs() == 1 {
                    let two = LaurentPoly::quantum_int(2);
                    // E_i^2 E_j - [2] E_i E_j E_i + E_j E_i^2 = 0.
                    if k >= 3 {
                        let eiei = cache.get('E', i, k - 2)?.mul(&cache.get('E', i, k - 1)?)?;
                        let t1 = eiei.mul(&cache.get('E', j, k)?)?;
                        let t2 = cache
                            .get('E', i, k - 2)?
                            .mul(&cache.get('E', j, k - 1)?)?
                            .mul(&cache.get('E', i, k)?)?
                            .scaled(&two);
                        let tail = cache.get('E', i, k - 1)?.mul(&cache.get('E', i, k)?)?;
                        let t3 = cache.get('E', j, k - 2)?.mul(&tail)?;
                        checks += 1;
                        if !t1.sub(&t2)?.add(&t3)?.is_zero() {
                            return Ok(RelationReport {
                                checks,
                                failure: Some(format!(
                                    "Serre relation failed for E at (i, j) = ({i}, {j}) in degree {k}"
                                )),
                            });
                        }
                    }
                    // F_i^2 F_j - [2] F_i F_j F_i + F_j F_i^2 = 0.
                    let fifi = cache.get('F', i, k + 1)?.mul(&cache.get('F', i, k)?)?;
                    let t1 = cache.get('F', j, k + 2)?.mul(&fifi)?;
                    let t2 = cache
                        .get('F', i, k + 2)?
                        .mul(&cache.get('F', j, k + 1)?)?
                        .mul(&cache.get('F', i, k)?)?
                        .scaled(&two);
                    let t3 = cache
                        .get('F', i, k + 2)?
                        .mul(&cache.get('F', i, k + 1)?)?
                        .mul(&cache.get('F', j, k)?)?;
                    checks += 1;
                    if !t1.sub(&t2)?.add(&t3)?.is_zero() {
                        return Ok(RelationReport {
                            checks,
                            failure: Some(format!(
                                "Serre relation failed for F at (i, j) = ({i}, {j}) in degree {k}"
                            )),
                        });
                    }
                }
            }
        }
    }
    Ok(RelationReport {
        checks,
        failure: None,
    })
}

/// Verify the quantum-group relations on all degrees up to `n`, for
/// residues in the window `lo..=hi`.
pub fn verify_relations(
    s: &Charge,
    n: u64,
    lo: i64,
    hi: i64,
    caps: &Caps,
) -> Result<RelationReport> {
    verify_relations_twisted(s, n, lo, hi, 0, caps)
}

/// Dimension over the rational-function field of the joint kernel of all
/// raising operators on the degree-`n` part.
pub fn singular_space_dim(s: &Charge, n: u64, caps: &Caps) -> Result<usize> {
    let l = s.level();
    let labels = Multipartition::enumerate(l, n, caps)?;
    if n == 0 {
        return Ok(1);
    }
    let mut residues: Vec<i64> = labels
        .iter()
        .flat_map(|m| {
            m.removable_boxes()
                .into_iter()
                .map(|b| Multipartition::residue(&b, s.as_slice()))
        })
        .collect();
    residues.sort_unstable();
    residues.dedup();
    let prev = Multipartition::enumerate(l, n - 1, caps)?;
    let mut stacked = PolyMatrix::zeros(residues.len() * prev.len(), labels.len());
    for (bi, &i) in residues.iter().enumerate() {
        let m = operator_matrix(FockOp::E(i), l, n, s, caps)?;
        for r in 0..prev.len() {
            for c in 0..labels.len() {
                if !m.get(r, c).is_zero() {
                    stacked.set(bi * prev.len() + r, c, m.get(r, c).clone());
                }
            }
        }
    }
    Ok(labels.len() - stacked.rank_fraction_free())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(text: &str) -> Multipartition {
        text.parse().unwrap()
    }

    fn charge(s: &[i64]) -> Charge {
        Charge::new(s.to_vec()).unwrap()
    }

    #[test]
    fn box_statistics() {
        let s = charge(&[1, 0]);
        let empty = mp("[[],[]]");
        // Only the first-row boxes are addable on the empty label.
        assert_eq!(d_stat(&empty, &s, 1), 1);
        assert_eq!(d_stat(&empty, &s, 0), 1);
        assert_eq!(d_stat(&empty, &s, 5), 0);
        let lambda = mp("[[1],[]]");
        assert_eq!(d_stat(&lambda, &s, 0), 2);
        assert_eq!(d_stat(&lambda, &s, 1), -1);
        let a = BoxPos { row: 1, col: 1, comp: 1 };
        assert_eq!(d_below(&lambda, &s, &a).unwrap(), 0);
        assert!(d_above(&lambda, &s, &a).is_err());
        let b = BoxPos { row: 1, col: 1, comp: 2 };
        assert_eq!(d_above(&lambda, &s, &b).unwrap(), 1);
        assert!(d_below(&lambda, &s, &b).is_err());
    }

    #[test]
    fn raising_kills_the_vacuum() {
        let s = charge(&[1, 0]);
        let vac = FockVector::basis(s, mp("[[],[]]")).unwrap();
        for i in -2..=2 {
            assert!(apply(FockOp::E(i), &vac).is_zero());
        }
    }

    #[test]
    fn lowering_on_a_single_box() {
        let s = charge(&[1, 0]);
        let x = FockVector::basis(s.clone(), mp("[[1],[]]")).unwrap();
        let fx = apply(FockOp::F(0), &x);
        assert_eq!(fx.len(), 2);
        assert_eq!(fx.get(&mp("[[1,1],[]]")), LaurentPoly::one());
        assert_eq!(fx.get(&mp("[[1],[1]]")), LaurentPoly::monomial_int(1, -1));
    }

    #[test]
    fn torus_operator_is_diagonal() {
        let s = charge(&[1, 0]);
        for lambda in Multipartition::enumerate(2, 2, &Caps::default()).unwrap() {
            for i in -2..=3 {
                let x = FockVector::basis(s.clone(), lambda.clone()).unwrap();
                let kx = apply(FockOp::K(i), &x);
                let d = d_stat(&lambda, &s, i);
                assert_eq!(kx.get(&lambda), LaurentPoly::monomial_int(1, d));
                assert_eq!(kx.len(), 1);
                let back = apply(FockOp::KInv(i), &kx);
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn operators_respect_the_residue_weight() {
        let s = charge(&[1, 0]);
        for lambda in Multipartition::enumerate(2, 2, &Caps::default()).unwrap() {
            let mut expect = lambda.residue_multiset(s.as_slice());
            let image = apply(FockOp::E(0), &FockVector::basis(s.clone(), lambda.clone()).unwrap());
            match expect.get_mut(&0) {
                Some(c) if *c > 1 => *c -= 1,
                Some(_) => {
                    expect.remove(&0);
                }
                None => assert!(image.is_zero()),
            }
            for (target, _) in image.iter() {
                assert_eq!(target.residue_multiset(s.as_slice()), expect);
            }
        }
    }

    #[test]
    fn relations_hold_on_small_windows() {
        let caps = Caps::default();
        let one = charge(&[0]);
        let report = verify_relations(&one, 3, -3, 3, &caps).unwrap();
        assert!(report.passed(), "{:?}", report.failure);
        let two = charge(&[1, 0]);
        let report = verify_relations(&two, 3, -2, 3, &caps).unwrap();
        assert!(report.passed(), "{:?}", report.failure);
    }

    #[test]
    fn perturbed_statistics_fail_the_relations() {
        let caps = Caps::default();
        let two = charge(&[1, 0]);
        let report = verify_relations_twisted(&two, 2, -2, 3, 1, &caps).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn singular_space_dimensions() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        assert_eq!(singular_space_dim(&s, 0, &caps).unwrap(), 1);
        assert_eq!(singular_space_dim(&s, 1, &caps).unwrap(), 0);
        assert_eq!(singular_space_dim(&s, 2, &caps).unwrap(), 1);
        // Cross-check with the crystal census.
        use crate::crystal::is_singular;
        for n in 0..=4u64 {
            let count = Multipartition::enumerate(2, n, &caps)
                .unwrap()
                .into_iter()
                .filter(|m| is_singular(m, &s))
                .count();
            assert_eq!(singular_space_dim(&s, n, &caps).unwrap(), count, "n = {n}");
        }
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let a = FockVector::basis(charge(&[1, 0]), mp("[[1],[]]")).unwrap();
        let b = FockVector::basis(charge(&[1, 0]), mp("[[1,1],[]]")).unwrap();
        assert!(a.add(&b).is_err());
        let c = FockVector::basis(charge(&[2, 0]), mp("[[1],[]]")).unwrap();
        assert!(a.add(&c).is_err());
        let mut d = FockVector::zero(charge(&[1, 0]), 1);
        assert!(d.add_term(mp("[[1,1],[]]"), LaurentPoly::one()).is_err());
    }
}
