//! Integer partitions: hooks, transposes, box moves, enumeration, and the
//! dominance order.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One};

use crate::error::{Error, Result};

/// Outcome of comparing two (multi)partitions in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    /// The left argument strictly dominates the right.
    Greater,
    /// The right argument strictly dominates the left.
    Less,
    Incomparable,
}

/// A partition: weakly decreasing positive parts (trailing zeros are
/// stripped on construction).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// The `i`-th part with 1-based `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> u64 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.part(1) as usize;
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u64)
            .collect();
        Partition { parts }
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hook_lengths(&self) -> Vec<u64> {
        let t = self.transpose();
        let mut out = Vec::new();
        for (i0, &row) in self.parts.iter().enumerate() {
            let i = (i0 + 1) as u64;
            for j in 1..=row {
                out.push(row - j + t.part(j as usize) - i + 1);
            }
        }
        out
    }

    /// The statistic `sum_i (i - 1) * part_i`.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i0, &p)| i0 as u64 * p)
            .sum()
    }

    /// Rows where a box may be added (1-based), in increasing order.  A box
    /// can go at row `i` when the result is still a partition.
    pub fn addable_rows(&self) -> Vec<usize> {
        let mut rows = Vec::new();
        for i in 1..=self.parts.len() + 1 {
            if self.part(i) < self.part(i.wrapping_sub(1)) || i == 1 {
                rows.push(i);
            }
        }
        rows
    }

    /// Rows whose last box may be removed (1-based), in increasing order.
    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.parts.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    pub fn with_box_added(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.parts.len() + 1 {
            return None;
        }
        if row > 1 && self.part(row) >= self.part(row - 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        if row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Some(Partition { parts })
    }

    pub fn with_box_removed(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.parts.len() || self.part(row) <= self.part(row + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// First-column displaced lengths `part_i + s + 1 - i` for `i = 1..=len`.
    /// With `len` at least the number of parts this is a strictly decreasing
    /// sequence determining the partition.
    pub fn beta_set(&self, s: i64, len: usize) -> Vec<i64> {
        (1..=len)
            .map(|i| self.part(i) as i64 + s + 1 - i as i64)
            .collect()
    }

    /// Number of standard Young tableaux, via the hook length formula.
    pub fn standard_count(&self) -> BigInt {
        let mut num = BigInt::one();
        for m in 1..=self.size() {
            num *= BigInt::from(m);
        }
        let mut den = BigInt::one();
        for h in self.hook_lengths() {
            den *= BigInt::from(h);
        }
        num / den
    }

    /// Dominance comparison via partial sums.  Both partitions must have
    /// the same size; otherwise they are reported incomparable.
    pub fn dominance_cmp(&self, other: &Partition) -> Dominance {
        if self.size() != other.size() {
            return Dominance::Incomparable;
        }
        let rows = self.num_parts().max(other.num_parts());
        let mut ge = true;
        let mut le = true;
        let (mut sa, mut sb) = (0u64, 0u64);
        for i in 1..=rows {
            sa += self.part(i);
            sb += other.part(i);
            if sa < sb {
                ge = false;
            }
            if sa > sb {
                le = false;
            }
        }
        match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        }
    }

    /// All partitions of `n`, first part largest, in lexicographically
    /// decreasing order of the part sequence.
    pub fn all(n: u64) -> Vec<Partition> {
        fn rec(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            let top = rest.min(max);
            for k in (1..=top).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Number of partitions of `n`.
    pub fn count(n: u64) -> u128 {
        // Standard dynamic programme over largest allowed part.
        let n = n as usize;
        let mut table = vec![0u128; n + 1];
        table[0] = 1;
        for part in 1..=n {
            for total in part..=n {
                table[total] += table[total - part];
            }
        }
        table[n]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad part `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn transpose_is_an_involution() {
        let a = p(&[4, 2, 1]);
        assert_eq!(a.transpose(), p(&[3, 2, 1, 1]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn hooks_of_a_staircase() {
        // (2,1) has hooks 3,1,1.
        let mut h = p(&[2, 1]).hook_lengths();
        h.sort_unstable();
        assert_eq!(h, vec![1, 1, 3]);
        // (2,2) has hooks 3,2,2,1.
        let mut h = p(&[2, 2]).hook_lengths();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 2, 3]);
    }

    #[test]
    fn standard_tableaux_counts() {
        assert_eq!(p(&[2, 1]).standard_count(), BigInt::from(2));
        assert_eq!(p(&[3, 2]).standard_count(), BigInt::from(5));
        assert_eq!(p(&[2, 2]).standard_count(), BigInt::from(2));
        assert_eq!(Partition::empty().standard_count(), BigInt::from(1));
    }

    #[test]
    fn addable_and_removable_rows() {
        let a = p(&[3, 3, 1]);
        assert_eq!(a.addable_rows(), vec![1, 3, 4]);
        assert_eq!(a.removable_rows(), vec![2, 3]);
        assert_eq!(a.with_box_added(3).unwrap(), p(&[3, 3, 2]));
        assert_eq!(a.with_box_removed(2).unwrap(), p(&[3, 2, 1]));
        assert!(a.with_box_added(2).is_none());
        assert!(a.with_box_removed(1).is_none());
    }

    #[test]
    fn dominance_on_size_four() {
        assert_eq!(p(&[4]).dominance_cmp(&p(&[2, 2])), Dominance::Greater);
        assert_eq!(p(&[2, 2]).dominance_cmp(&p(&[2, 1, 1])), Dominance::Greater);
        assert_eq!(p(&[1, 1, 1, 1]).dominance_cmp(&p(&[4])), Dominance::Less);
        assert_eq!(p(&[2, 2]).dominance_cmp(&p(&[2, 2])), Dominance::Equal);
        // Different sizes are incomparable by convention.
        assert_eq!(p(&[2]).dominance_cmp(&p(&[2, 1])), Dominance::Incomparable);
        // The classical first incomparable pair has size six.
        assert_eq!(
            p(&[3, 1, 1, 1]).dominance_cmp(&p(&[2, 2, 2])),
            Dominance::Incomparable
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Partition::all(0).len(), 1);
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(4)[0], p(&[4]));
        assert_eq!(Partition::all(10).len(), Partition::count(10) as usize);
        assert_eq!(Partition::count(100), 190569292);
    }

    #[test]
    fn beta_sets() {
        // ((1), s = 7) over four slots: 8, 6, 5, 4.
        assert_eq!(p(&[1]).beta_set(7, 4), vec![8, 6, 5, 4]);
        assert_eq!(Partition::empty().beta_set(0, 3), vec![0, -1, -2]);
    }

    #[test]
    fn parse_display_round_trip() {
        for text in ["[]", "[3,1]", "[5,5,2,1]"] {
            let a: Partition = text.parse().unwrap();
            assert_eq!(a.to_string(), text);
        }
        assert!("[1,2]".parse::<Partition>().is_err());
        assert_eq!("[3,1,0]".parse::<Partition>().unwrap(), p(&[3, 1]));
    }
}
