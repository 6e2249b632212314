//! The dictionary between multipartitions and column-strict tableaux on a
//! staircase of column heights determined by a strictly decreasing charge:
//! ground-state tableau, label tableau, weight vector, and the label
//! transport record used by the parabolic comparison.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::crystal::weighting_is_dominant;
use crate::error::{Error, Result};
use crate::multipartition::Multipartition;
use crate::params::{Charge, Params};
use crate::partition::Partition;
use crate::scalar::Kappa;

/// Column heights `d_j = m + s_j - s_1` for a strictly decreasing integer
/// charge; the transpose of the height vector is a partition shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauShape {
    s: Charge,
    m: i64,
    heights: Vec<u64>,
}

impl TauShape {
    pub fn new(s: &Charge, m: i64) -> Result<Self> {
        if !s.is_strictly_decreasing() {
            return Err(Error::Hypothesis(
                "the charge must be strictly decreasing to form a column shape".into(),
            ));
        }
        let s1 = s.get(1);
        let sl = s.get(s.level());
        if m + sl - s1 < 1 {
            return Err(Error::Hypothesis(format!(
                "m = {m} is too small: every column height m + s_j - s_1 must be at least 1"
            )));
        }
        let heights = s
            .as_slice()
            .iter()
            .map(|&sj| (m + sj - s1) as u64)
            .collect();
        Ok(TauShape {
            s: s.clone(),
            m,
            heights,
        })
    }

    pub fn level(&self) -> usize {
        self.heights.len()
    }

    pub fn charge(&self) -> &Charge {
        &self.s
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Height of column `j` (1-based).
    pub fn height(&self, j: usize) -> u64 {
        self.heights[j - 1]
    }

    pub fn heights(&self) -> &[u64] {
        &self.heights
    }

    pub fn total(&self) -> u64 {
        self.heights.iter().sum()
    }

    /// The partition whose transpose lists the column heights.
    pub fn tau_partition(&self) -> Partition {
        Partition::new(self.heights.clone())
            .expect("weakly decreasing heights")
            .transpose()
    }

    /// Whether every label of size `n` fits: the shortest column must
    /// have at least `n` rows.
    pub fn admits(&self, n: u64) -> bool {
        *self.heights.last().expect("nonempty") >= n
    }
}

/// A filling of a column shape; column `j` occupies the bottom `d_j`
/// global rows out of `d_1`, and entries are stored top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    shape: TauShape,
    cols: Vec<Vec<i64>>,
}

impl Tableau {
    pub fn shape(&self) -> &TauShape {
        &self.shape
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.cols
    }

    /// Entry at global row `i` of column `j` (both 1-based); the column
    /// is present only for `i > d_1 - d_j`.
    pub fn entry(&self, i: u64, j: usize) -> Result<i64> {
        let d1 = self.shape.height(1);
        let dj = self.shape.height(j);
        if i == 0 || i > d1 || i + dj <= d1 {
            return Err(Error::IndexOutOfRange(format!(
                "no cell at row {i} of column {j}"
            )));
        }
        Ok(self.cols[j - 1][(i - (d1 - dj) - 1) as usize])
    }

    /// Strictly increasing from bottom to top in every column.
    pub fn is_column_strict(&self) -> bool {
        self.cols
            .iter()
            .all(|col| col.windows(2).all(|w| w[0] > w[1]))
    }

    /// Entries read column by column, top to bottom.
    pub fn reading(&self) -> Vec<i64> {
        self.cols.iter().flatten().copied().collect()
    }

    /// The weight vector: the reading word shifted by the staircase,
    /// position `k` (1-based) gaining `k - 1`.
    pub fn weight_tau(&self) -> Vec<i64> {
        self.reading()
            .into_iter()
            .enumerate()
            .map(|(k, a)| a + k as i64)
            .collect()
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut out = serializer.serialize_struct("Tableau", 2)?;
        out.serialize_field("shape", &self.shape.heights)?;
        out.serialize_field("cols", &self.cols)?;
        out.end()
    }
}

/// The tableau whose entries along global row `i` all equal `s_1 + 1 - i`.
pub fn ground_state(shape: &TauShape) -> Tableau {
    let s1 = shape.charge().get(1);
    let d1 = shape.height(1);
    let cols = (1..=shape.level())
        .map(|j| {
            let dj = shape.height(j);
            ((d1 - dj + 1)..=d1).map(|i| s1 + 1 - i as i64).collect()
        })
        .collect();
    Tableau {
        shape: shape.clone(),
        cols,
    }
}

/// The tableau of a label: column `j`, global row `i` holds
/// `lambda^(j)_(d_j - d_1 + i) + s_1 + 1 - i`.
pub fn tableau_of(lambda: &Multipartition, shape: &TauShape) -> Result<Tableau> {
    if lambda.level() != shape.level() {
        return Err(Error::LevelMismatch(format!(
            "label level {} does not match the {}-column shape",
            lambda.level(),
            shape.level()
        )));
    }
    if !shape.admits(lambda.size()) {
        return Err(Error::Hypothesis(format!(
            "m = {} is too small for a label of size {}: the shortest column must have at least that many rows",
            shape.m(),
            lambda.size()
        )));
    }
    let s1 = shape.charge().get(1);
    let d1 = shape.height(1);
    let mut cols = Vec::with_capacity(shape.level());
    for j in 1..=shape.level() {
        let dj = shape.height(j);
        let parts = lambda.comp(j);
        if parts.num_parts() as u64 > dj {
            return Err(Error::Hypothesis(format!(
                "component {j} has more rows than the column height {dj}"
            )));
        }
        let col = ((d1 - dj + 1)..=d1)
            .map(|i| {
                let p = (dj + i - d1) as usize;
                parts.part(p) as i64 + s1 + 1 - i as i64
            })
            .collect();
        cols.push(col);
    }
    Ok(Tableau {
        shape: shape.clone(),
        cols,
    })
}

/// Invert the tableau of a label; fails when the filling does not arise
/// from a multipartition on this shape.
pub fn lambda_of(tableau: &Tableau) -> Result<Multipartition> {
    let shape = tableau.shape();
    let s1 = shape.charge().get(1);
    let d1 = shape.height(1);
    let mut comps = Vec::with_capacity(shape.level());
    for j in 1..=shape.level() {
        let dj = shape.height(j);
        let mut parts = Vec::new();
        for i in (d1 - dj + 1)..=d1 {
            let a = tableau.entry(i, j)?;
            let part = a - (s1 + 1 - i as i64);
            if part < 0 {
                return Err(Error::Hypothesis(format!(
                    "cell at row {i} of column {j} lies below the ground state"
                )));
            }
            parts.push(part as u64);
        }
        comps.push(Partition::new(parts).map_err(|_| {
            Error::Hypothesis(format!("column {j} does not give weakly decreasing row lengths"))
        })?);
    }
    Multipartition::new(comps)
}

/// Label transport for the parabolic comparison: the category side keeps
/// the starred label over the starred charge, the parabolic side keeps
/// the tableau of the unstarred label, and induction/restriction indices
/// are negated.
#[derive(Debug, Clone, PartialEq)]
pub struct UpsilonRecord {
    pub cherednik_charge: Charge,
    pub cherednik_weights: Vec<i64>,
    pub cherednik_label: Multipartition,
    pub shape: TauShape,
    pub tableau: Tableau,
}

impl UpsilonRecord {
    /// Index transport between the two sides' categorical branching
    /// operators.
    pub fn functor_index(&self, i: i64) -> i64 {
        -i
    }
}

pub fn upsilon_labels(lambda: &Multipartition, params: &Params) -> Result<UpsilonRecord> {
    if !matches!(params.kappa, Kappa::Symbolic) {
        return Err(Error::Hypothesis(
            "the label transport requires the deformation parameter to stay symbolic".into(),
        ));
    }
    if !params.s.is_strictly_decreasing() {
        return Err(Error::Hypothesis(
            "the label transport requires a strictly decreasing charge".into(),
        ));
    }
    let m_vec = params.m.as_ref().ok_or_else(|| {
        Error::Hypothesis("the label transport requires a component weighting".into())
    })?;
    if !weighting_is_dominant(m_vec) {
        return Err(Error::Hypothesis(
            "the component weighting must satisfy m_l >= m_1 >= ... >= m_(l-1)".into(),
        ));
    }
    if lambda.level() != params.s.level() {
        return Err(Error::LevelMismatch(format!(
            "label level {} does not match charge length {}",
            lambda.level(),
            params.s.level()
        )));
    }
    let n = lambda.size();
    let s1 = params.s.get(1);
    let sl = params.s.get(params.s.level());
    let m = s1 - sl + n as i64;
    let shape = TauShape::new(&params.s, m)?;
    let tableau = tableau_of(lambda, &shape)?;
    Ok(UpsilonRecord {
        cherednik_charge: params.s.star(),
        cherednik_weights: m_vec.clone(),
        cherednik_label: lambda.star(),
        shape,
        tableau,
    })
}
