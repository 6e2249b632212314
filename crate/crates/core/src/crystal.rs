//! The combinatorial crystal on charged multipartitions: residue
//! signatures and their reduction, raising/lowering operators, singular
//! labels, descent depth, supports, and the finite-dimensionality census.

use std::collections::BTreeMap;
use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::multipartition::{BoxPos, Multipartition};
use crate::params::{Charge, Params};

/// Sign of a signature entry: addable boxes are `Plus`, removable `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// A residue signature: boxes with their signs, ordered top-down (by
/// component, then row).
pub type Signature = Vec<(BoxPos, Sign)>;

fn check_level(lambda: &Multipartition, s: &Charge) {
    assert_eq!(
        lambda.level(),
        s.level(),
        "label level and charge length must agree"
    );
}

/// The full (unreduced) signature of residue `i`: addable and removable
/// `i`-boxes merged in reading order.
pub fn signature(lambda: &Multipartition, s: &Charge, i: i64) -> Signature {
    check_level(lambda, s);
    let mut entries: Signature = Vec::new();
    for b in lambda.addable_boxes() {
        if Multipartition::residue(&b, s.as_slice()) == i {
            entries.push((b, Sign::Plus));
        }
    }
    for b in lambda.removable_boxes() {
        if Multipartition::residue(&b, s.as_slice()) == i {
            entries.push((b, Sign::Minus));
        }
    }
    entries.sort_by_key(|(b, _)| b.reading_key());
    entries
}

/// Cancel adjacent `(-, +)` pairs until none remain: the result is a run
/// of `+` entries followed by a run of `-` entries.
pub fn reduced_signature(lambda: &Multipartition, s: &Charge, i: i64) -> Signature {
    let mut stack: Signature = Vec::new();
    for (b, sign) in signature(lambda, s, i) {
        if sign == Sign::Plus && matches!(stack.last(), Some((_, Sign::Minus))) {
            stack.pop();
        } else {
            stack.push((b, sign));
        }
    }
    stack
}

/// The crystal data of one residue: the counts `ε_i` and `φ_i` together
/// with the raised and lowered labels when they exist.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalData {
    pub eps: usize,
    pub phi: usize,
    pub raised: Option<Multipartition>,
    pub lowered: Option<Multipartition>,
}

/// Compute `ε_i`, `φ_i`, `ẽ_i λ` (remove the box of the first surviving
/// `-`) and `f̃_i λ` (add the box of the last surviving `+`).
pub fn crystal(lambda: &Multipartition, s: &Charge, i: i64) -> CrystalData {
    let reduced = reduced_signature(lambda, s, i);
    let eps = reduced.iter().filter(|(_, x)| *x == Sign::Minus).count();
    let phi = reduced.len() - eps;
    let raised = reduced
        .iter()
        .find(|(_, x)| *x == Sign::Minus)
        .map(|(b, _)| lambda.with_box_removed(b).expect("removable box"));
    let lowered = reduced
        .iter()
        .rev()
        .find(|(_, x)| *x == Sign::Plus)
        .map(|(b, _)| lambda.with_box_added(b).expect("addable box"));
    CrystalData {
        eps,
        phi,
        raised,
        lowered,
    }
}

/// Residues carried by the removable boxes of a label.
fn removable_residues(lambda: &Multipartition, s: &Charge) -> Vec<i64> {
    let mut res: Vec<i64> = lambda
        .removable_boxes()
        .iter()
        .map(|b| Multipartition::residue(b, s.as_slice()))
        .collect();
    res.sort_unstable();
    res.dedup();
    res
}

/// Residues carried by the addable boxes of a label.
pub fn addable_residues(lambda: &Multipartition, s: &Charge) -> Vec<i64> {
    let mut res: Vec<i64> = lambda
        .addable_boxes()
        .iter()
        .map(|b| Multipartition::residue(b, s.as_slice()))
        .collect();
    res.sort_unstable();
    res.dedup();
    res
}

/// A label is singular when every raising operator kills it, i.e.
/// `ε_i = 0` for every residue (only residues of removable boxes can
/// contribute).
pub fn is_singular(lambda: &Multipartition, s: &Charge) -> bool {
    check_level(lambda, s);
    removable_residues(lambda, s)
        .into_iter()
        .all(|i| crystal(lambda, s, i).eps == 0)
}

fn n_of_memo(
    lambda: &Multipartition,
    s: &Charge,
    memo: &mut BTreeMap<Multipartition, u64>,
) -> u64 {
    if let Some(&v) = memo.get(lambda) {
        return v;
    }
    let mut best = 0u64;
    for i in removable_residues(lambda, s) {
        let data = crystal(lambda, s, i);
        if let Some(up) = data.raised {
            best = best.max(1 + n_of_memo(&up, s, memo));
        }
    }
    memo.insert(lambda.clone(), best);
    best
}

/// The descent depth `N(λ)`: the longest chain of raising moves starting
/// at `λ`.
pub fn n_of(lambda: &Multipartition, s: &Charge) -> u64 {
    check_level(lambda, s);
    let mut memo = BTreeMap::new();
    n_of_memo(lambda, s, &mut memo)
}

/// The support label `X^n_m`: the orbit closure of points with `m` free
/// coordinates among `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportLabel {
    pub n: u64,
    pub m: u64,
}

impl fmt::Display for SupportLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{}_{}", self.n, self.m)
    }
}

/// Support of the simple module attached to `λ` (in the dual labelling):
/// `X^{|λ|}_{N(λ)}`.  Requires a strictly decreasing charge.
pub fn support_of(lambda: &Multipartition, s: &Charge) -> Result<SupportLabel> {
    check_level(lambda, s);
    if !s.is_strictly_decreasing() {
        return Err(Error::Hypothesis(
            "supports are only classified for strictly decreasing charges".into(),
        ));
    }
    Ok(SupportLabel {
        n: lambda.size(),
        m: n_of(lambda, s),
    })
}

/// A weighting is dominant when the last entry bounds the first and the
/// leading entries are weakly decreasing.
pub fn weighting_is_dominant(m: &[i64]) -> bool {
    let l = m.len();
    m[l - 1] >= m[0] && m[..l - 1].windows(2).all(|p| p[0] >= p[1])
}

/// Labels of the finite-dimensional simples at parameter `p`, in the dual
/// parameterization: the starred singular labels.  Requires a symbolic
/// deformation parameter, a strictly decreasing charge, and a dominant
/// weighting.
pub fn finite_dim_labels(n: u64, p: &Params, caps: &Caps) -> Result<Vec<Multipartition>> {
    if !p.kappa.is_symbolic() {
        return Err(Error::Hypothesis(
            "the finite-dimensionality census requires a symbolic (irrational) deformation parameter"
                .into(),
        ));
    }
    if !p.s.is_strictly_decreasing() {
        return Err(Error::Hypothesis(
            "the finite-dimensionality census requires a strictly decreasing charge".into(),
        ));
    }
    match &p.m {
        Some(m) if weighting_is_dominant(m) => {}
        Some(_) => {
            return Err(Error::Hypothesis(
                "the finite-dimensionality census requires a dominant weighting".into(),
            ))
        }
        None => {
            return Err(Error::Hypothesis(
                "the finite-dimensionality census requires an explicit weighting".into(),
            ))
        }
    }
    let labels = Multipartition::enumerate(p.level(), n, caps)?;
    Ok(labels
        .into_iter()
        .filter(|lambda| is_singular(lambda, &p.s))
        .map(|lambda| lambda.star())
        .collect())
}

/// The crystal graph on labels of size at most `n`: nodes in enumeration
/// order per size, edges `λ → f̃_i λ` labeled by the residue.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalGraph {
    pub nodes: Vec<Multipartition>,
    pub edges: Vec<(usize, usize, i64)>,
}

pub fn crystal_graph(l: usize, n: u64, s: &Charge, caps: &Caps) -> Result<CrystalGraph> {
    let mut nodes = Vec::new();
    for k in 0..=n {
        nodes.extend(Multipartition::enumerate(l, k, caps)?);
    }
    let index: BTreeMap<&Multipartition, usize> =
        nodes.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut edges = Vec::new();
    for (from, lambda) in nodes.iter().enumerate() {
        if lambda.size() == n {
            continue;
        }
        for i in addable_residues(lambda, s) {
            if let Some(down) = crystal(lambda, s, i).lowered {
                edges.push((from, index[&down], i));
            }
        }
    }
    Ok(CrystalGraph { nodes, edges })
}
