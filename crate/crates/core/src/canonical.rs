//! The bar involution on the charged Fock space, built factor by factor
//! with a quasi-R-matrix twist; the dual-canonical basis and its
//! transition d-matrix; the radical-layer table read off from the
//! d-matrix; and the bilinear form with the singular-subspace Gram
//! determinant.

use std::collections::BTreeMap;

use num::{BigRational, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::caps::Caps;
use crate::crystal;
use crate::error::{Error, Result};
use crate::fock::{apply, operator_matrix, FockOp, FockVector};
use crate::laurent::LaurentPoly;
use crate::linalg::PolyMatrix;
use crate::multipartition::Multipartition;
use crate::params::Charge;
use crate::partition::Dominance;

fn residue_window(s: &Charge, n: u64) -> (i64, i64) {
    let lo = *s.as_slice().iter().min().expect("nonempty charge");
    let hi = *s.as_slice().iter().max().expect("nonempty charge");
    (lo - n as i64, hi + n as i64)
}

/// Split a level-`r` label into its first `r - 1` components and its last
/// component, each as a multipartition.
fn split_label(lambda: &Multipartition) -> (Multipartition, Multipartition) {
    let comps = lambda.comps();
    let r = comps.len();
    let left = Multipartition::new(comps[..r - 1].to_vec()).expect("nonempty prefix");
    let right = Multipartition::new(vec![comps[r - 1].clone()]).expect("single component");
    (left, right)
}

fn join_label(left: &Multipartition, right: &Multipartition) -> Multipartition {
    let mut comps = left.comps().to_vec();
    comps.extend_from_slice(right.comps());
    Multipartition::new(comps).expect("nonempty")
}

/// Composite raising operator for the interval root `[i, j]`, as a matrix
/// from degree `m` to degree `m - (j - i + 1)` on the given charge.
struct RootOps<'a> {
    charge: Charge,
    degree_cap: u64,
    caps: &'a Caps,
    e_store: BTreeMap<(i64, i64, u64), PolyMatrix>,
    f_store: BTreeMap<(i64, i64, u64), PolyMatrix>,
}

impl<'a> RootOps<'a> {
    fn new(charge: Charge, degree_cap: u64, caps: &'a Caps) -> Self {
        RootOps {
            charge,
            degree_cap,
            caps,
            e_store: BTreeMap::new(),
            f_store: BTreeMap::new(),
        }
    }

    fn e(&mut self, i: i64, j: i64, m: u64) -> Result<PolyMatrix> {
        let key = (i, j, m);
        if let Some(x) = self.e_store.get(&key) {
            return Ok(x.clone());
        }
        let l = self.charge.level();
        let out = if i == j {
            operator_matrix(FockOp::E(i), l, m, &self.charge, self.caps)?
        } else {
            // E_{[i,j]} = E_{[i,j-1]} E_j - v^{-1} E_j E_{[i,j-1]}.
            let h_prev = (j - i) as u64;
            let a = self.e(i, j - 1, m - 1)?.mul(&self.e(j, j, m)?)?;
            let b = self.e(j, j, m - h_prev)?.mul(&self.e(i, j - 1, m)?)?;
            a.sub(&b.scaled(&LaurentPoly::monomial_int(1, -1)))?
        };
        self.e_store.insert(key, out.clone());
        Ok(out)
    }

    fn f(&mut self, i: i64, j: i64, m: u64) -> Result<PolyMatrix> {
        let key = (i, j, m);
        if let Some(x) = self.f_store.get(&key) {
            return Ok(x.clone());
        }
        let l = self.charge.level();
        let out = if i == j {
            operator_matrix(FockOp::F(i), l, m, &self.charge, self.caps)?
        } else {
            // F_{[i,j]} = F_j F_{[i,j-1]} - v F_{[i,j-1]} F_j.
            let h_prev = (j - i) as u64;
            let a = self.f(j, j, m + h_prev)?.mul(&self.f(i, j - 1, m)?)?;
            let b = self.f(i, j - 1, m + 1)?.mul(&self.f(j, j, m)?)?;
            a.sub(&b.scaled(&LaurentPoly::monomial_int(1, 1)))?
        };
        self.f_store.insert(key, out.clone());
        Ok(out)
    }

    fn within_cap(&self, m: u64) -> bool {
        m <= self.degree_cap
    }
}

/// Bar matrices in the standard basis for every degree `0..=n`, computed
/// by bundling the tensor factors left to right and twisting each new
/// factor with the truncated quasi-R-matrix.
pub fn bar_matrices(s: &Charge, n: u64, caps: &Caps) -> Result<Vec<PolyMatrix>> {
    let l = s.level();
    let (lo, hi) = residue_window(s, n);
    let coupling =
        &LaurentPoly::monomial_int(1, -1) - &LaurentPoly::monomial_int(1, 1);

    // Roots of the residue window in ascending lexicographic order,
    // truncated at height n (taller roots annihilate every degree <= n).
    let mut roots: Vec<(i64, i64)> = Vec::new();
    for i in lo..=hi {
        for j in i..=hi {
            if (j - i + 1) as u64 <= n {
                roots.push((i, j));
            }
        }
    }

    let mut current: Vec<PolyMatrix> = (0..=n)
        .map(|m| {
            Multipartition::enumerate(1, m, caps).map(|basis| PolyMatrix::identity(basis.len()))
        })
        .collect::<Result<_>>()?;

    for r in 2..=l {
        let left_charge = Charge::new(s.as_slice()[..r - 1].to_vec())?;
        let right_charge = Charge::new(vec![s.get(r)])?;
        let left_bases: Vec<Vec<Multipartition>> = (0..=n)
            .map(|m| Multipartition::enumerate(r - 1, m, caps))
            .collect::<Result<_>>()?;
        let right_bases: Vec<Vec<Multipartition>> = (0..=n)
            .map(|m| Multipartition::enumerate(1, m, caps))
            .collect::<Result<_>>()?;
        let left_index: Vec<BTreeMap<&Multipartition, usize>> = left_bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let right_index: Vec<BTreeMap<&Multipartition, usize>> = right_bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let mut e_ops = RootOps::new(left_charge, n, caps);
        let mut f_ops = RootOps::new(right_charge, n, caps);

        let mut next: Vec<PolyMatrix> = Vec::with_capacity(n as usize + 1);
        for m in 0..=n {
            let full = Multipartition::enumerate(r, m, caps)?;
            let full_index: BTreeMap<&Multipartition, usize> =
                full.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let splits: Vec<(Multipartition, Multipartition)> =
                full.iter().map(split_label).collect();

            // Previous bar on the bundled factors, identity on the new one.
            let mut big = PolyMatrix::zeros(full.len(), full.len());
            for (jc, (left, right)) in splits.iter().enumerate() {
                let a = left.size() as usize;
                let base = &left_bases[a];
                let col = left_index[a][left];
                let prev = &current[a];
                for row in 0..prev.rows() {
                    let coeff = prev.get(row, col);
                    if coeff.is_zero() {
                        continue;
                    }
                    let target = join_label(&base[row], right);
                    big.add_assign_at(full_index[&target], jc, coeff);
                }
            }

            for &(i, j) in &roots {
                let h = (j - i + 1) as u64;
                if h > m {
                    continue;
                }
                // Off-identity part of 1 + c E_root ⊗ F_root.
                let mut extra: Vec<(usize, usize, LaurentPoly)> = Vec::new();
                for (jc, (left, right)) in splits.iter().enumerate() {
                    let a = left.size();
                    let b = right.size();
                    if a < h || !e_ops.within_cap(a) || !f_ops.within_cap(b + h) {
                        continue;
                    }
                    let e = e_ops.e(i, j, a)?;
                    let f = f_ops.f(i, j, b)?;
                    let ecol = left_index[a as usize][left];
                    let fcol = right_index[b as usize][right];
                    for er in 0..e.rows() {
                        let ev = e.get(er, ecol);
                        if ev.is_zero() {
                            continue;
                        }
                        for fr in 0..f.rows() {
                            let fv = f.get(fr, fcol);
                            if fv.is_zero() {
                                continue;
                            }
                            let target = join_label(
                                &left_bases[(a - h) as usize][er],
                                &right_bases[(b + h) as usize][fr],
                            );
                            extra.push((full_index[&target], jc, &(ev * fv) * &coupling));
                        }
                    }
                }
                if extra.is_empty() {
                    continue;
                }
                let mut t = PolyMatrix::identity(full.len());
                for (row, col, val) in extra {
                    t.add_assign_at(row, col, &val);
                }
                big = t.mul(&big)?;
            }
            next.push(big);
        }
        current = next;
    }
    Ok(current)
}

/// Bar matrix in the standard basis on the degree-`n` part.
pub fn bar_matrix(s: &Charge, n: u64, caps: &Caps) -> Result<PolyMatrix> {
    Ok(bar_matrices(s, n, caps)?.swap_remove(n as usize))
}

/// The bar involution applied to a vector: coefficients are inverted
/// (`v -> v^{-1}`) and the basis is twisted by the bar matrix.
pub fn bar(x: &FockVector, caps: &Caps) -> Result<FockVector> {
    let s = x.charge().clone();
    let n = x.degree();
    let labels = Multipartition::enumerate(s.level(), n, caps)?;
    let index: BTreeMap<&Multipartition, usize> =
        labels.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let b = bar_matrix(&s, n, caps)?;
    let mut out = FockVector::zero(s, n);
    for (lambda, c) in x.iter() {
        let jc = *index
            .get(lambda)
            .ok_or_else(|| Error::Internal("label missing from enumeration".into()))?;
        let barred = c.bar();
        for row in 0..b.rows() {
            let coeff = b.get(row, jc);
            if coeff.is_zero() {
                continue;
            }
            out.add_term(labels[row].clone(), coeff * &barred)?;
        }
    }
    Ok(out)
}

/// A linear extension of the dominance order (smallest first), breaking
/// ties by enumeration position.
fn topological_order(labels: &[Multipartition]) -> Vec<usize> {
    let n = labels.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let mut pick = None;
        'outer: for i in 0..n {
            if placed[i] {
                continue;
            }
            for j in 0..n {
                if placed[j] || j == i {
                    continue;
                }
                if labels[j].dominance_cmp(&labels[i]) == Dominance::Less {
                    continue 'outer;
                }
            }
            pick = Some(i);
            break;
        }
        let i = pick.expect("a finite partial order has a minimal element");
        placed[i] = true;
        order.push(i);
    }
    order
}

fn positive_part(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (&e, c) in p.terms() {
        if e > 0 {
            out = &out + &LaurentPoly::monomial(c.clone(), e);
        }
    }
    out
}

struct SolvedBasis {
    labels: Vec<Multipartition>,
    topo: Vec<usize>,
    /// `l_cols[t]` holds the standard-basis coordinates of the
    /// dual-canonical vector attached to `labels[t]`.
    l_cols: Vec<BTreeMap<usize, LaurentPoly>>,
}

fn apply_bar_coords(
    b: &PolyMatrix,
    x: &BTreeMap<usize, LaurentPoly>,
) -> BTreeMap<usize, LaurentPoly> {
    let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for (&col, c) in x {
        let barred = c.bar();
        for row in 0..b.rows() {
            let coeff = b.get(row, col);
            if coeff.is_zero() {
                continue;
            }
            let add = coeff * &barred;
            let slot = out.entry(row).or_insert_with(LaurentPoly::zero);
            *slot = &*slot + &add;
            if slot.is_zero() {
                out.remove(&row);
            }
        }
    }
    out
}

fn solve_basis(s: &Charge, n: u64, caps: &Caps) -> Result<SolvedBasis> {
    let labels = Multipartition::enumerate(s.level(), n, caps)?;
    let b = bar_matrix(s, n, caps)?;
    let topo = topological_order(&labels);
    let mut position = vec![0usize; labels.len()];
    for (p, &t) in topo.iter().enumerate() {
        position[t] = p;
    }
    let mut l_cols: Vec<BTreeMap<usize, LaurentPoly>> = vec![BTreeMap::new(); labels.len()];
    for &t in &topo {
        let mut x: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        x.insert(t, LaurentPoly::one());
        let mut rounds = 0usize;
        loop {
            let mut delta = apply_bar_coords(&b, &x);
            for (&k, c) in &x {
                let slot = delta.entry(k).or_insert_with(LaurentPoly::zero);
                *slot = &*slot - c;
                if slot.is_zero() {
                    delta.remove(&k);
                }
            }
            if delta.is_empty() {
                break;
            }
            rounds += 1;
            if rounds > labels.len() {
                return Err(Error::Internal(
                    "triangular solve for the dual-canonical basis did not converge".into(),
                ));
            }
            let u = *delta
                .keys()
                .max_by_key(|&&k| position[k])
                .expect("nonempty support");
            let du = delta[&u].clone();
            if position[u] >= position[t] {
                return Err(Error::Internal(
                    "bar involution is not unitriangular in dominance order".into(),
                ));
            }
            if !du.coeff(0).is_zero() || !(&du.bar() + &du).is_zero() {
                return Err(Error::Internal(
                    "bar defect is not antisymmetric; the involution is inconsistent".into(),
                ));
            }
            let alpha = positive_part(&du);
            if alpha.is_zero() {
                return Err(Error::Internal("empty correction in the triangular solve".into()));
            }
            let base = l_cols[u].clone();
            for (k, c) in base {
                let add = &alpha * &c;
                let slot = x.entry(k).or_insert_with(LaurentPoly::zero);
                *slot = &*slot + &add;
                if slot.is_zero() {
                    x.remove(&k);
                }
            }
        }
        l_cols[t] = x;
    }
    Ok(SolvedBasis {
        labels,
        topo,
        l_cols,
    })
}

/// The dual-canonical vector attached to a label: the unique bar-fixed
/// vector congruent to the standard basis element modulo `v` times the
/// lattice.
pub fn dual_canonical(s: &Charge, lambda: &Multipartition, caps: &Caps) -> Result<FockVector> {
    if lambda.level() != s.level() {
        return Err(Error::LevelMismatch(format!(
            "label level {} does not match charge length {}",
            lambda.level(),
            s.level()
        )));
    }
    let n = lambda.size();
    let solved = solve_basis(s, n, caps)?;
    let t = solved
        .labels
        .iter()
        .position(|m| m == lambda)
        .ok_or_else(|| Error::Internal("label missing from enumeration".into()))?;
    let mut out = FockVector::zero(s.clone(), n);
    for (&k, c) in &solved.l_cols[t] {
        out.add_term(solved.labels[k].clone(), c.clone())?;
    }
    Ok(out)
}

/// Transition matrix from the dual-canonical basis to the standard basis:
/// entry `(mu, lambda)` is the coefficient of the dual-canonical vector of
/// `mu` in the expansion of the standard vector of `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct DMatrix {
    s: Charge,
    labels: Vec<Multipartition>,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl DMatrix {
    pub fn charge(&self) -> &Charge {
        &self.s
    }

    pub fn labels(&self) -> &[Multipartition] {
        &self.labels
    }

    pub fn entry(&self, row: usize, col: usize) -> LaurentPoly {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn get(&self, mu: &Multipartition, lambda: &Multipartition) -> LaurentPoly {
        let r = self.labels.iter().position(|m| m == mu);
        let c = self.labels.iter().position(|m| m == lambda);
        match (r, c) {
            (Some(r), Some(c)) => self.entry(r, c),
            _ => LaurentPoly::zero(),
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&usize, &usize, &LaurentPoly)> {
        self.entries.iter().map(|((r, c), p)| (r, c, p))
    }

    /// Label indices grouped by residue multiset, ordered by first member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<Vec<(i64, usize)>, Vec<usize>> = BTreeMap::new();
        for (i, m) in self.labels.iter().enumerate() {
            let key: Vec<(i64, usize)> = m
                .residue_multiset(self.s.as_slice())
                .into_iter()
                .collect();
            groups.entry(key).or_default().push(i);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == self.labels.len()
            && self
                .entries
                .iter()
                .all(|((r, c), p)| r == c && p.is_one())
    }
}

#[derive(serde::Serialize)]
struct BlockRepr {
    block: Vec<String>,
    rows: usize,
    entries: Vec<(String, String, String)>,
}

impl Serialize for DMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks = self.blocks();
        let mut seq = serializer.serialize_seq(Some(blocks.len()))?;
        for block in blocks {
            let members: Vec<String> = block.iter().map(|&i| self.labels[i].to_string()).collect();
            let mut entries = Vec::new();
            for &c in &block {
                for &r in &block {
                    let p = self.entry(r, c);
                    if !p.is_zero() {
                        entries.push((
                            self.labels[r].to_string(),
                            self.labels[c].to_string(),
                            p.to_string_var('v'),
                        ));
                    }
                }
            }
            seq.serialize_element(&BlockRepr {
                rows: members.len(),
                block: members,
                entries,
            })?;
        }
        seq.end()
    }
}

/// Compute the full d-matrix on the degree-`n` part.
pub fn d_matrix(s: &Charge, n: u64, caps: &Caps) -> Result<DMatrix> {
    let solved = solve_basis(s, n, caps)?;
    let mut entries: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    for t in 0..solved.labels.len() {
        // Expand the standard vector of labels[t] in the dual-canonical
        // basis by back-substitution down the topological order.
        let mut rest: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        rest.insert(t, LaurentPoly::one());
        for &p in solved.topo.iter().rev() {
            let Some(c) = rest.get(&p).cloned() else {
                continue;
            };
            if c.is_zero() {
                continue;
            }
            entries.insert((p, t), c.clone());
            for (&k, lc) in &solved.l_cols[p] {
                let sub = &c * lc;
                let slot = rest.entry(k).or_insert_with(LaurentPoly::zero);
                *slot = &*slot - &sub;
                if slot.is_zero() {
                    rest.remove(&k);
                }
            }
        }
        if !rest.is_empty() {
            return Err(Error::Internal("triangular back-substitution left a residue".into()));
        }
    }
    Ok(DMatrix {
        s: s.clone(),
        labels: solved.labels,
        entries,
    })
}

/// One layer-multiplicity row of the radical table.
#[derive(Debug, Clone, PartialEq)]
pub struct RadicalEntry {
    pub delta_label: Multipartition,
    pub simple_label: Multipartition,
    pub layer: i64,
    pub multiplicity: BigRational,
}

/// Read the d-matrix as radical-filtration data, re-indexed through the
/// star involution: the coefficient of `v^j` in entry `(mu, lambda)` is
/// the layer-`j` multiplicity of the simple labelled `mu*` in the standard
/// module labelled `lambda*`.
pub fn radical_table(s: &Charge, n: u64, caps: &Caps) -> Result<Vec<RadicalEntry>> {
    let d = d_matrix(s, n, caps)?;
    let mut out = Vec::new();
    for t in 0..d.labels().len() {
        for r in 0..d.labels().len() {
            let p = d.entry(r, t);
            if p.is_zero() {
                continue;
            }
            for (&e, c) in p.terms() {
                out.push(RadicalEntry {
                    delta_label: d.labels()[t].star(),
                    simple_label: d.labels()[r].star(),
                    layer: e,
                    multiplicity: c.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Labels of the singular subspace together with the Gram matrix of the
/// bilinear form on the dual-canonical vectors spanning it, with the
/// parameter kept symbolic.
pub fn singular_gram(
    s: &Charge,
    n: u64,
    caps: &Caps,
) -> Result<(Vec<Multipartition>, PolyMatrix)> {
    let solved = solve_basis(s, n, caps)?;
    let singular: Vec<usize> = (0..solved.labels.len())
        .filter(|&i| crystal::is_singular(&solved.labels[i], s))
        .collect();
    let (lo, hi) = residue_window(s, n);
    for &t in &singular {
        let mut x = FockVector::zero(s.clone(), n);
        for (&k, c) in &solved.l_cols[t] {
            x.add_term(solved.labels[k].clone(), c.clone())?;
        }
        for i in lo..=hi {
            if !apply(FockOp::E(i), &x).is_zero() {
                return Err(Error::Internal(
                    "a crystal-singular dual-canonical vector is not annihilated by the raising operators"
                        .into(),
                ));
            }
        }
    }
    let mut gram = PolyMatrix::zeros(singular.len(), singular.len());
    for (a, &ta) in singular.iter().enumerate() {
        for (bix, &tb) in singular.iter().enumerate() {
            let mut acc = LaurentPoly::zero();
            for (&k, ca) in &solved.l_cols[ta] {
                if let Some(cb) = solved.l_cols[tb].get(&k) {
                    acc = &acc + &(ca * cb);
                }
            }
            gram.set(a, bix, acc);
        }
    }
    let labels = singular.into_iter().map(|i| solved.labels[i].clone()).collect();
    Ok((labels, gram))
}

/// Exact determinant of the singular-subspace Gram matrix specialized at
/// a rational parameter value.
pub fn gram_singular(s: &Charge, n: u64, q: &BigRational, caps: &Caps) -> Result<BigRational> {
    if q.is_zero() {
        return Err(Error::Hypothesis("the parameter q must be nonzero".into()));
    }
    if *q == -BigRational::from_integer(1.into()) {
        return Err(Error::Hypothesis(
            "q = -1 is a nontrivial root of unity and is outside the valid range".into(),
        ));
    }
    let (_, gram) = singular_gram(s, n, caps)?;
    gram.eval(q)?.det()
}

/// Check that the transpose of a raising operator equals `v K_i F_i`
/// (lowering followed by the torus operator, scaled by `v`), the
/// adjunction defining the bilinear form.
pub fn tau_adjoint_ok(s: &Charge, n: u64, i: i64, caps: &Caps) -> Result<bool> {
    if n == 0 {
        return Ok(true);
    }
    let l = s.level();
    let e = operator_matrix(FockOp::E(i), l, n, s, caps)?;
    let f = operator_matrix(FockOp::F(i), l, n - 1, s, caps)?;
    let k = operator_matrix(FockOp::K(i), l, n, s, caps)?;
    let tau = k.mul(&f)?.scaled(&LaurentPoly::monomial_int(1, 1));
    Ok(e.transpose() == tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn mp(text: &str) -> Multipartition {
        text.parse().unwrap()
    }

    fn charge(s: &[i64]) -> Charge {
        Charge::new(s.to_vec()).unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(c, e) in terms {
            p = &p + &LaurentPoly::monomial_int(c, e);
        }
        p
    }

    #[test]
    fn level_one_bar_is_trivial() {
        let caps = Caps::default();
        let s = charge(&[0]);
        for n in 0..=4u64 {
            let b = bar_matrix(&s, n, &caps).unwrap();
            assert_eq!(b, PolyMatrix::identity(b.rows()));
        }
    }

    #[test]
    fn distinct_weights_pin_bar_to_the_identity() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let b = bar_matrix(&s, 1, &caps).unwrap();
        assert_eq!(b, PolyMatrix::identity(2));
    }

    #[test]
    fn bar_on_the_two_box_block() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let labels = Multipartition::enumerate(2, 2, &caps).unwrap();
        let idx = |m: &Multipartition| labels.iter().position(|x| x == m).unwrap();
        let x1 = idx(&mp("[[1,1],[]]"));
        let x2 = idx(&mp("[[1],[1]]"));
        let x3 = idx(&mp("[[],[2]]"));
        let x4 = idx(&mp("[[2],[]]"));
        let x5 = idx(&mp("[[],[1,1]]"));
        let b = bar_matrix(&s, 2, &caps).unwrap();
        assert_eq!(b.get(x1, x1), &LaurentPoly::one());
        assert_eq!(b.get(x2, x1), &poly(&[(1, -1), (-1, 1)]));
        assert_eq!(b.get(x3, x1), &poly(&[(1, 2), (-1, 0)]));
        assert_eq!(b.get(x3, x2), &poly(&[(1, -1), (-1, 1)]));
        assert_eq!(b.get(x4, x4), &LaurentPoly::one());
        assert_eq!(b.get(x5, x5), &LaurentPoly::one());
        assert!(b.get(x4, x1).is_zero());
        assert!(b.get(x1, x2).is_zero());
    }

    #[test]
    fn bar_is_an_involution() {
        let caps = Caps::default();
        for (s, nmax) in [(charge(&[1, 0]), 3u64), (charge(&[2, 0, 1]), 2u64)] {
            for n in 0..=nmax {
                let b = bar_matrix(&s, n, &caps).unwrap();
                let square = b.mul(&b.entrywise_bar()).unwrap();
                assert_eq!(square, PolyMatrix::identity(b.rows()), "s={s} n={n}");
            }
        }
    }

    #[test]
    fn bar_commutes_with_the_action() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let bs = bar_matrices(&s, 3, &caps).unwrap();
        for i in -1..=2i64 {
            for n in 1..=3u64 {
                let e = operator_matrix(FockOp::E(i), 2, n, &s, &caps).unwrap();
                let lhs = bs[n as usize - 1].mul(&e.entrywise_bar()).unwrap();
                let rhs = e.mul(&bs[n as usize]).unwrap();
                assert_eq!(lhs, rhs, "E_{i} at degree {n}");
            }
            for n in 0..=2u64 {
                let f = operator_matrix(FockOp::F(i), 2, n, &s, &caps).unwrap();
                let lhs = bs[n as usize + 1].mul(&f.entrywise_bar()).unwrap();
                let rhs = f.mul(&bs[n as usize]).unwrap();
                assert_eq!(lhs, rhs, "F_{i} at degree {n}");
            }
        }
    }

    #[test]
    fn dual_canonical_on_the_two_box_block() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let l1 = dual_canonical(&s, &mp("[[1,1],[]]"), &caps).unwrap();
        assert_eq!(l1.get(&mp("[[1,1],[]]")), LaurentPoly::one());
        assert_eq!(l1.get(&mp("[[1],[1]]")), LaurentPoly::monomial_int(-1, 1));
        assert_eq!(l1.get(&mp("[[],[2]]")), LaurentPoly::monomial_int(1, 2));
        assert_eq!(l1.len(), 3);
        let l3 = dual_canonical(&s, &mp("[[],[2]]"), &caps).unwrap();
        assert_eq!(l3.len(), 1);
        // Bar-invariance of the result.
        assert_eq!(bar(&l1, &caps).unwrap(), l1);
    }

    #[test]
    fn d_matrix_on_the_two_box_block() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let d = d_matrix(&s, 2, &caps).unwrap();
        assert_eq!(
            d.get(&mp("[[1],[1]]"), &mp("[[1,1],[]]")),
            LaurentPoly::monomial_int(1, 1)
        );
        assert!(d.get(&mp("[[],[2]]"), &mp("[[1,1],[]]")).is_zero());
        assert_eq!(
            d.get(&mp("[[],[2]]"), &mp("[[1],[1]]")),
            LaurentPoly::monomial_int(1, 1)
        );
        for (i, m) in d.labels().iter().enumerate() {
            assert_eq!(d.entry(i, i), LaurentPoly::one(), "diagonal at {m}");
        }
    }

    #[test]
    fn d_matrix_invariants() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        for n in 0..=3u64 {
            let d = d_matrix(&s, n, &caps).unwrap();
            for (&r, &c, p) in d.nonzero() {
                if r == c {
                    assert!(p.is_one());
                    continue;
                }
                assert!(p.min_exp().unwrap() >= 1, "off-diagonal entries lie in v Z[v]");
                let mu = &d.labels()[r];
                let la = &d.labels()[c];
                assert_eq!(
                    mu.residue_multiset(s.as_slice()),
                    la.residue_multiset(s.as_slice()),
                    "entries stay within a residue block"
                );
                assert!(
                    matches!(mu.dominance_cmp(la), Dominance::Less),
                    "nonzero entries point down the dominance order"
                );
            }
        }
    }

    #[test]
    fn small_d_matrices_are_identities() {
        let caps = Caps::default();
        let s1 = charge(&[0]);
        for n in 0..=4u64 {
            assert!(d_matrix(&s1, n, &caps).unwrap().is_identity());
        }
        let s3 = charge(&[2, 0, 1]);
        assert!(d_matrix(&s3, 1, &caps).unwrap().is_identity());
    }

    #[test]
    fn radical_layers() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let table = radical_table(&s, 2, &caps).unwrap();
        let hit = table.iter().any(|e| {
            e.delta_label == mp("[[1,1],[]]").star()
                && e.simple_label == mp("[[1],[1]]").star()
                && e.layer == 1
                && e.multiplicity == BigRational::one()
        });
        assert!(hit);
        // Diagonal rows sit in layer zero with multiplicity one.
        for e in &table {
            if e.delta_label == e.simple_label {
                assert_eq!(e.layer, 0);
                assert_eq!(e.multiplicity, BigRational::one());
            }
        }
        let flat = radical_table(&charge(&[0]), 3, &caps).unwrap();
        assert!(flat.iter().all(|e| e.delta_label == e.simple_label && e.layer == 0));
    }

    #[test]
    fn singular_gram_values() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let q2 = BigRational::from_integer(2.into());
        // Empty singular space: determinant of the empty matrix.
        assert_eq!(gram_singular(&s, 1, &q2, &caps).unwrap(), BigRational::one());
        assert_eq!(gram_singular(&s, 0, &q2, &caps).unwrap(), BigRational::one());
        // One singular label in degree two: <L, L> = 1 + v^2 + v^4.
        let (labels, gram) = singular_gram(&s, 2, &caps).unwrap();
        assert_eq!(labels, vec![mp("[[1,1],[]]")]);
        assert_eq!(gram.get(0, 0), &poly(&[(1, 0), (1, 2), (1, 4)]));
        assert_eq!(
            gram_singular(&s, 2, &q2, &caps).unwrap(),
            BigRational::from_integer(21.into())
        );
        assert_eq!(
            gram_singular(&s, 2, &BigRational::one(), &caps).unwrap(),
            BigRational::from_integer(3.into())
        );
        assert!(gram_singular(&s, 2, &BigRational::zero(), &caps).is_err());
        assert!(gram_singular(&s, 2, &-BigRational::one(), &caps).is_err());
    }

    #[test]
    fn adjunction_against_the_form() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        for n in 1..=3u64 {
            for i in -1..=2i64 {
                assert!(tau_adjoint_ok(&s, n, i, &caps).unwrap(), "i={i} n={n}");
            }
        }
    }

    #[test]
    fn dmatrix_serialization_shape() {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let d = d_matrix(&s, 2, &caps).unwrap();
        let json = serde_json::to_value(&d).unwrap();
        let blocks = json.as_array().unwrap();
        assert_eq!(blocks.len(), 3);
        let big = blocks
            .iter()
            .find(|b| b["rows"].as_u64() == Some(3))
            .expect("the three-element block");
        let entries = big["entries"].as_array().unwrap();
        assert!(entries
            .iter()
            .any(|e| e[2].as_str() == Some("v") && e[0].as_str() != e[1].as_str()));
    }
}
