//! Tuples of partitions, their boxes and residues, the dominance and
//! column-lexicographic orders, and bounded enumeration.
//!
//! Throughout, component indices, rows, and columns are 1-based, matching
//! the usual combinatorial conventions; a box is written `(row, col, comp)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::partition::{Dominance, Partition};
use crate::perm::Perm;

/// A box of a multipartition: row `a`, column `b`, component `m`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxPos {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl BoxPos {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        BoxPos { row, col, comp }
    }

    /// Position key for the reading order on boxes: component first, then
    /// row, both increasing.
    pub fn reading_key(&self) -> (usize, usize) {
        (self.comp, self.row)
    }
}

impl fmt::Display for BoxPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// A multipartition with a fixed number of components (the level).
///
/// The derived `Ord` is structural (for use in sets and maps) and is *not*
/// one of the mathematical orders; those are [`Multipartition::dominance_cmp`]
/// and [`Multipartition::col_lex_cmp`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyMultipartition);
        }
        Ok(Multipartition { components })
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(Partition::new)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn empty(level: usize) -> Result<Self> {
        Self::new(vec![Partition::empty(); level])
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> u64 {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(Partition::is_empty)
    }

    /// The `r`-th component, 1-based.
    pub fn comp(&self, r: usize) -> &Partition {
        &self.components[r - 1]
    }

    pub fn comps(&self) -> &[Partition] {
        &self.components
    }

    pub fn boxes(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for (r0, part) in self.components.iter().enumerate() {
            for (i0, &row) in part.parts().iter().enumerate() {
                for j in 1..=row as usize {
                    out.push(BoxPos::new(i0 + 1, j, r0 + 1));
                }
            }
        }
        out
    }

    /// Addable boxes in reading order (component, then row, increasing).
    pub fn addable_boxes(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for (r0, part) in self.components.iter().enumerate() {
            for i in part.addable_rows() {
                out.push(BoxPos::new(i, part.part(i) as usize + 1, r0 + 1));
            }
        }
        out
    }

    /// Removable boxes in reading order (component, then row, increasing).
    pub fn removable_boxes(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for (r0, part) in self.components.iter().enumerate() {
            for i in part.removable_rows() {
                out.push(BoxPos::new(i, part.part(i) as usize, r0 + 1));
            }
        }
        out
    }

    pub fn with_box_added(&self, b: &BoxPos) -> Option<Multipartition> {
        if b.comp == 0 || b.comp > self.level() {
            return None;
        }
        let part = self.comp(b.comp);
        if part.part(b.row) as usize + 1 != b.col {
            return None;
        }
        let new_part = part.with_box_added(b.row)?;
        let mut components = self.components.clone();
        components[b.comp - 1] = new_part;
        Some(Multipartition { components })
    }

    pub fn with_box_removed(&self, b: &BoxPos) -> Option<Multipartition> {
        if b.comp == 0 || b.comp > self.level() {
            return None;
        }
        let part = self.comp(b.comp);
        if part.part(b.row) as usize != b.col {
            return None;
        }
        let new_part = part.with_box_removed(b.row)?;
        let mut components = self.components.clone();
        components[b.comp - 1] = new_part;
        Some(Multipartition { components })
    }

    /// The charged content `s_m + b - a` of a box.
    pub fn residue(b: &BoxPos, s: &[i64]) -> i64 {
        s[b.comp - 1] + b.col as i64 - b.row as i64
    }

    /// The charged content reduced modulo the level `l`.
    pub fn residue_mod(b: &BoxPos, s: &[i64], l: u64) -> u64 {
        Self::residue(b, s).rem_euclid(l as i64) as u64
    }

    /// Multiset of charged contents of all boxes.
    pub fn residue_multiset(&self, s: &[i64]) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in self.boxes() {
            *out.entry(Self::residue(&b, s)).or_insert(0) += 1;
        }
        out
    }

    /// The dual multipartition: components before the last are reversed and
    /// transposed, the last is transposed in place.
    pub fn star(&self) -> Multipartition {
        let l = self.level();
        let mut components = Vec::with_capacity(l);
        for r in (1..l).rev() {
            components.push(self.comp(r).transpose());
        }
        components.push(self.comp(l).transpose());
        Multipartition { components }
    }

    /// Permute components: the result `m` satisfies `m^(w(r)) = self^(r)`.
    pub fn permuted(&self, w: &Perm) -> Result<Multipartition> {
        Ok(Multipartition {
            components: w.act(&self.components)?,
        })
    }

    /// Dominance via partial sums over the concatenated row lists.  Both
    /// sides must have equal level and size; unequal sizes compare as
    /// incomparable.
    pub fn dominance_cmp(&self, other: &Multipartition) -> Dominance {
        if self.level() != other.level() || self.size() != other.size() {
            return Dominance::Incomparable;
        }
        let mut ge = true;
        let mut le = true;
        let (mut sa, mut sb) = (0u64, 0u64);
        for r in 1..=self.level() {
            let rows = self.comp(r).num_parts().max(other.comp(r).num_parts());
            let (base_a, base_b) = (sa, sb);
            for i in 1..=rows {
                sa += self.comp(r).part(i);
                sb += other.comp(r).part(i);
                if sa < sb {
                    ge = false;
                }
                if sa > sb {
                    le = false;
                }
            }
            sa = base_a + self.comp(r).size();
            sb = base_b + other.comp(r).size();
        }
        match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        }
    }

    /// Total column-lexicographic order: compare column heights component
    /// by component, earlier components and taller first columns first.
    pub fn col_lex_cmp(&self, other: &Multipartition) -> Ordering {
        for r in 1..=self.level().min(other.level()) {
            let a = self.comp(r).transpose();
            let b = other.comp(r).transpose();
            let cols = a.num_parts().max(b.num_parts());
            for j in 1..=cols {
                match a.part(j).cmp(&b.part(j)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
        }
        self.level().cmp(&other.level())
    }

    /// Index of the last nonempty component, 1-based.
    pub fn last_nonempty_comp(&self) -> Option<usize> {
        (1..=self.level()).rev().find(|&r| !self.comp(r).is_empty())
    }

    /// Remove the bottom box of the rightmost column of the last nonempty
    /// component; the unique removal giving the column-lexicographically
    /// largest predecessor.
    pub fn detach_last(&self) -> Option<(Multipartition, BoxPos)> {
        let k = self.last_nonempty_comp()?;
        let part = self.comp(k);
        let col = part.part(1) as usize;
        let row = part.transpose().part(col) as usize;
        let b = BoxPos::new(row, col, k);
        let smaller = self.with_box_removed(&b)?;
        Some((smaller, b))
    }

    /// Number of multipartitions of `n` with `level` components.
    pub fn count(level: usize, n: u64) -> u128 {
        let n = n as usize;
        let p: Vec<u128> = (0..=n as u64).map(Partition::count).collect();
        let mut table = vec![0u128; n + 1];
        table[0] = 1;
        for _ in 0..level {
            let mut next = vec![0u128; n + 1];
            for (total, entry) in next.iter_mut().enumerate() {
                for m in 0..=total {
                    *entry += table[total - m] * p[m];
                }
            }
            table = next;
        }
        table[n]
    }

    /// All multipartitions of `n` with `level` components, in increasing
    /// column-lexicographic order.
    pub fn enumerate(level: usize, n: u64, caps: &Caps) -> Result<Vec<Multipartition>> {
        if level == 0 {
            return Err(Error::EmptyMultipartition);
        }
        let count = Self::count(level, n);
        if count > caps.max_enumeration as u128 {
            return Err(Error::ResourceCap(format!(
                "enumeration of {count} multipartitions exceeds the cap of {}",
                caps.max_enumeration
            )));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut cur: Vec<Partition> = Vec::with_capacity(level);
        fn rec(level: usize, rest: u64, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
            if cur.len() == level - 1 {
                for p in Partition::all(rest) {
                    cur.push(p);
                    out.push(Multipartition {
                        components: cur.clone(),
                    });
                    cur.pop();
                }
                return;
            }
            for m in 0..=rest {
                for p in Partition::all(m) {
                    cur.push(p);
                    rec(level, rest - m, cur, out);
                    cur.pop();
                }
            }
        }
        rec(level, n, &mut cur, &mut out);
        out.sort_by(|a, b| a.col_lex_cmp(b));
        Ok(out)
    }

    /// Reconstruct a multipartition from the set of all its one-box
    /// removals.  The preimage is unique for sizes >= 3; at size 2 the
    /// row and the column in a single component share the removal set
    /// `{single box}` and are reported as ambiguous.
    pub fn recover_from_removals(results: &[Multipartition]) -> Result<Multipartition> {
        let first = results.first().ok_or(Error::NoPreimage)?;
        let target: BTreeSet<&Multipartition> = results.iter().collect();
        let mut matches: Vec<Multipartition> = Vec::new();
        for b in first.addable_boxes() {
            let candidate = first
                .with_box_added(&b)
                .expect("addable boxes can be added");
            let removals: BTreeSet<Multipartition> = candidate
                .removable_boxes()
                .iter()
                .map(|rb| candidate.with_box_removed(rb).expect("removable"))
                .collect();
            if removals.iter().collect::<BTreeSet<_>>() == target {
                matches.push(candidate);
            }
        }
        matches.sort();
        matches.dedup();
        match matches.len() {
            0 => Err(Error::NoPreimage),
            1 => Ok(matches.pop().unwrap()),
            n => Err(Error::Ambiguous(format!(
                "{n} multipartitions share this removal set"
            ))),
        }
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
        if inner.is_empty() {
            return Err(Error::EmptyMultipartition);
        }
        let mut components = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for ch in inner.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    cur.push(ch);
                }
                ']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in `{s}`")))?;
                    cur.push(ch);
                    if depth == 0 {
                        components.push(cur.parse::<Partition>()?);
                        cur.clear();
                    }
                }
                ',' if depth == 0 => {
                    if !cur.is_empty() {
                        return Err(Error::Parse(format!("bad multipartition `{s}`")));
                    }
                }
                _ => cur.push(ch),
            }
        }
        if depth != 0 || !cur.is_empty() {
            return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
        }
        Multipartition::new(components)
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[u64]> = self.components.iter().map(|p| p.parts()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u64>>::deserialize(deserializer)?;
        Multipartition::from_rows(rows).map_err(D::Error::custom)
    }
}
