//! Independent oracles for the dual-canonical transition matrices: the
//! canonical basis of the Hecke algebra of a symmetric group, the
//! analogous basis of its antispherical module, and the level-two
//! cap-diagram closed form.  These are used only for cross-validation at
//! desk scale.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::multipartition::Multipartition;
use crate::params::Charge;
use crate::perm::Perm;

/// Coordinates of an algebra or module element in a fixed basis.
type Coeffs = BTreeMap<usize, LaurentPoly>;

fn add_into(map: &mut Coeffs, key: usize, val: LaurentPoly) {
    if val.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(LaurentPoly::zero);
    *slot = &*slot + &val;
    if slot.is_zero() {
        map.remove(&key);
    }
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

/// Bar-invariant unitriangular basis from the bar images of the standard
/// basis vectors; index order must extend the support triangularity.
fn canonical_solve(bar_images: &[Coeffs]) -> Result<Vec<Coeffs>> {
    let n = bar_images.len();
    let bar_elt = |x: &Coeffs| -> Coeffs {
        let mut out = Coeffs::new();
        for (&k, c) in x {
            let barred = c.bar();
            for (&r, bc) in &bar_images[k] {
                add_into(&mut out, r, bc * &barred);
            }
        }
        out
    };
    let mut basis: Vec<Coeffs> = vec![Coeffs::new(); n];
    for t in 0..n {
        let mut x = Coeffs::new();
        x.insert(t, LaurentPoly::one());
        let mut rounds = 0usize;
        loop {
            let mut delta = bar_elt(&x);
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
            if rounds > n {
                return Err(Error::Internal("canonical-basis solve did not converge".into()));
            }
            let (&u, du) = delta.iter().next_back().expect("nonempty support");
            if u >= t {
                return Err(Error::Internal(
                    "bar image is not triangular in the chosen order".into(),
                ));
            }
            if !du.coeff(0).is_zero() || !(&du.bar() + du).is_zero() {
                return Err(Error::Internal("bar defect is not antisymmetric".into()));
            }
            let alpha = positive_part(du);
            let base = basis[u].clone();
            for (k, c) in base {
                add_into(&mut x, k, &alpha * &c);
            }
        }
        basis[t] = x;
    }
    Ok(basis)
}

/// A symmetric group with its elements sorted by length, plus the data
/// needed to run Hecke-algebra computations.
pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    lengths: Vec<usize>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 7 {
            return Err(Error::ResourceCap(
                "symmetric-group oracle supports 1 <= n <= 7".into(),
            ));
        }
        let mut elements: Vec<Vec<usize>> = Perm::all(n)
            .into_iter()
            .map(|p| p.to_one_based())
            .collect();
        let length = |w: &Vec<usize>| -> usize {
            let mut c = 0;
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    if w[i] > w[j] {
                        c += 1;
                    }
                }
            }
            c
        };
        elements.sort_by_key(|w| (length(w), w.clone()));
        let lengths: Vec<usize> = elements.iter().map(length).collect();
        let index: BTreeMap<Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(SymmetricGroup {
            n,
            elements,
            index,
            lengths,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn one_line(&self, x: usize) -> &[usize] {
        &self.elements[x]
    }

    pub fn length(&self, x: usize) -> usize {
        self.lengths[x]
    }

    pub fn index_of(&self, one_line: &[usize]) -> Result<usize> {
        self.index
            .get(one_line)
            .copied()
            .ok_or_else(|| Error::IndexOutOfRange("not a valid one-line word".into()))
    }

    /// Index of `w s_i` (generator applied on the right), `i` zero-based.
    fn right(&self, x: usize, i: usize) -> usize {
        let mut w = self.elements[x].clone();
        w.swap(i, i + 1);
        self.index[&w]
    }

    /// Right multiplication is a length increase iff the one-line word
    /// ascends at `i`.
    fn right_ascent(&self, x: usize, i: usize) -> bool {
        self.elements[x][i] < self.elements[x][i + 1]
    }

    /// Index of `s_j w` (generator applied on the left), `j` zero-based.
    fn left(&self, x: usize, j: usize) -> usize {
        let a = j + 1;
        let b = j + 2;
        let w: Vec<usize> = self.elements[x]
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        self.index[&w]
    }

    fn left_descent(&self, x: usize, j: usize) -> bool {
        let pos_a = self.elements[x].iter().position(|&v| v == j + 1).unwrap();
        let pos_b = self.elements[x].iter().position(|&v| v == j + 2).unwrap();
        pos_a > pos_b
    }

    fn h_mul_gen(&self, h: &Coeffs, i: usize) -> Coeffs {
        let fall = &LaurentPoly::monomial_int(1, -1) - &LaurentPoly::monomial_int(1, 1);
        let mut out = Coeffs::new();
        for (&x, c) in h {
            let xs = self.right(x, i);
            if self.right_ascent(x, i) {
                add_into(&mut out, xs, c.clone());
            } else {
                add_into(&mut out, xs, c.clone());
                add_into(&mut out, x, c * &fall);
            }
        }
        out
    }

    /// Bar images of all standard basis vectors, by induction on length.
    fn bar_table(&self) -> Vec<Coeffs> {
        let rise = &LaurentPoly::monomial_int(1, 1) - &LaurentPoly::monomial_int(1, -1);
        let mut table: Vec<Coeffs> = vec![Coeffs::new(); self.order()];
        for x in 0..self.order() {
            if self.lengths[x] == 0 {
                table[x].insert(x, LaurentPoly::one());
                continue;
            }
            let i = (0..self.n - 1)
                .find(|&i| !self.right_ascent(x, i))
                .expect("positive length has a descent");
            let shorter = self.right(x, i);
            // bar(H_x) = bar(H_{x s_i}) (H_{s_i} + (v - v^{-1})).
            let prev = table[shorter].clone();
            let mut img = self.h_mul_gen(&prev, i);
            for (&k, c) in &prev {
                add_into(&mut img, k, c * &rise);
            }
            table[x] = img;
        }
        table
    }
}

/// The canonical-basis transition table of a symmetric group's Hecke
/// algebra: `entry(x, w)` is the coefficient of the standard vector of
/// `x` in the canonical vector of `w`.
pub struct KlTable {
    group: SymmetricGroup,
    basis: Vec<Coeffs>,
}

impl KlTable {
    pub fn new(n: usize) -> Result<Self> {
        let group = SymmetricGroup::new(n)?;
        let basis = canonical_solve(&group.bar_table())?;
        Ok(KlTable { group, basis })
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn entry(&self, x: &[usize], w: &[usize]) -> Result<LaurentPoly> {
        let xi = self.group.index_of(x)?;
        let wi = self.group.index_of(w)?;
        Ok(self.basis[wi].get(&xi).cloned().unwrap_or_else(LaurentPoly::zero))
    }
}

/// The canonical-basis transition table of the antispherical module for a
/// parabolic subgroup generated by the listed simple reflections
/// (zero-based indices).
pub struct AntisphericalTable {
    group: SymmetricGroup,
    parabolic: Vec<usize>,
    reps: Vec<usize>,
    basis: Vec<Coeffs>,
}

impl AntisphericalTable {
    pub fn new(n: usize, parabolic: &[usize]) -> Result<Self> {
        let group = SymmetricGroup::new(n)?;
        if parabolic.iter().any(|&j| j + 1 >= n) {
            return Err(Error::IndexOutOfRange(
                "parabolic generator index out of range".into(),
            ));
        }
        let reps: Vec<usize> = (0..group.order())
            .filter(|&x| parabolic.iter().all(|&j| !group.left_descent(x, j)))
            .collect();
        let rep_pos: BTreeMap<usize, usize> =
            reps.iter().enumerate().map(|(p, &x)| (x, p)).collect();

        // Project a Hecke element to the module: strip parabolic left
        // descents, each contributing a factor of -v.
        let project = |h: &Coeffs| -> Coeffs {
            let minus_v = LaurentPoly::monomial_int(-1, 1);
            let mut out = Coeffs::new();
            for (&w, c) in h {
                let mut cur = w;
                let mut factor = LaurentPoly::one();
                loop {
                    match parabolic.iter().find(|&&j| group.left_descent(cur, j)) {
                        Some(&j) => {
                            cur = group.left(cur, j);
                            factor = &factor * &minus_v;
                        }
                        None => break,
                    }
                }
                add_into(&mut out, rep_pos[&cur], c * &factor);
            }
            out
        };

        let hecke_bar = group.bar_table();
        let bar_images: Vec<Coeffs> = reps.iter().map(|&x| project(&hecke_bar[x])).collect();
        let basis = canonical_solve(&bar_images)?;
        Ok(AntisphericalTable {
            group,
            parabolic: parabolic.to_vec(),
            reps,
            basis,
        })
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn representatives(&self) -> Vec<&[usize]> {
        self.reps.iter().map(|&x| self.group.one_line(x)).collect()
    }

    pub fn entry(&self, x: &[usize], w: &[usize]) -> Result<LaurentPoly> {
        let xi = self.rep_position(x)?;
        let wi = self.rep_position(w)?;
        Ok(self.basis[wi].get(&xi).cloned().unwrap_or_else(LaurentPoly::zero))
    }

    fn rep_position(&self, w: &[usize]) -> Result<usize> {
        let idx = self.group.index_of(w)?;
        self.reps
            .iter()
            .position(|&x| x == idx)
            .ok_or_else(|| Error::Hypothesis("not a minimal coset representative".into()))
    }

    /// Elements of the parabolic subgroup, as group indices.
    pub fn parabolic_elements(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&z| {
                let w = self.group.one_line(z);
                // z lies in the parabolic iff it only moves letters within
                // the blocks spanned by consecutive parabolic generators.
                (0..self.group.n).all(|i| {
                    let v = w[i] - 1;
                    if v == i {
                        return true;
                    }
                    let (a, b) = (v.min(i), v.max(i));
                    (a..b).all(|j| self.parabolic.contains(&j))
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Cross,
    Wedge,
    Vee,
    Empty,
}

/// Weight diagram of a level-two label over the given window of
/// positions: a position carries a cross if it lies in both shifted beta
/// sets, a wedge for the first component only, a vee for the second only.
fn weight_diagram(lambda: &Multipartition, s: &Charge, lo: i64, hi: i64) -> Vec<Mark> {
    let beta = |comp: usize, sj: i64| -> Vec<i64> {
        let mut out = Vec::new();
        let parts = lambda.comp(comp);
        let mut i: i64 = 1;
        loop {
            let part = parts.part(i as usize) as i64;
            let b = part + sj + 1 - i;
            if part == 0 && b < lo {
                break;
            }
            if b >= lo && b <= hi {
                out.push(b);
            }
            i += 1;
        }
        out
    };
    let b1 = beta(1, s.get(1));
    let b2 = beta(2, s.get(2));
    (lo..=hi)
        .map(|p| match (b1.contains(&p), b2.contains(&p)) {
            (true, true) => Mark::Cross,
            (true, false) => Mark::Wedge,
            (false, true) => Mark::Vee,
            (false, false) => Mark::Empty,
        })
        .collect()
}

fn caps_of(diagram: &[Mark]) -> Vec<(usize, usize)> {
    let mut caps = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for (p, mark) in diagram.iter().enumerate() {
        match mark {
            Mark::Vee => stack.push(p),
            Mark::Wedge => {
                if let Some(open) = stack.pop() {
                    caps.push((open, p));
                }
            }
            _ => {}
        }
    }
    caps
}

/// Closed-form transition entry for level two: `v` to the number of caps
/// of the column label's diagram that are flipped in the row label's
/// diagram, or zero when the row label is not reachable by flipping caps.
pub fn cap_d_entry(
    mu: &Multipartition,
    lambda: &Multipartition,
    s: &Charge,
) -> Result<LaurentPoly> {
    if s.level() != 2 || mu.level() != 2 || lambda.level() != 2 {
        return Err(Error::LevelMismatch(
            "the cap-diagram oracle is defined for level two only".into(),
        ));
    }
    if mu.size() != lambda.size() {
        return Ok(LaurentPoly::zero());
    }
    let n = lambda.size() as i64;
    let lo = s.as_slice().iter().min().unwrap() - n - 1;
    let hi = s.as_slice().iter().max().unwrap() + n;
    let dl = weight_diagram(lambda, s, lo, hi);
    let dm = weight_diagram(mu, s, lo, hi);
    let caps = caps_of(&dl);
    let on_cap = |p: usize| caps.iter().any(|&(a, b)| a == p || b == p);
    for p in 0..dl.len() {
        if !on_cap(p) && dl[p] != dm[p] {
            return Ok(LaurentPoly::zero());
        }
    }
    let mut flips = 0i64;
    for &(a, b) in &caps {
        match (dm[a], dm[b]) {
            (Mark::Vee, Mark::Wedge) => {}
            (Mark::Wedge, Mark::Vee) => flips += 1,
            _ => return Ok(LaurentPoly::zero()),
        }
    }
    Ok(LaurentPoly::monomial_int(1, flips))
}
