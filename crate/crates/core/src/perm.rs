//! Finite permutations with the slot-moving action used for reducing
//! weightings to dominant form.
//!
//! A permutation `w` acts on a tuple by moving the entry in position `i`
//! to position `w(i)`: `(w . m)_{w(i)} = m_i`.  Length is the number of
//! inversions, as for any Coxeter group of type A.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored as 0-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Build from 0-based images (`images[i] = w(i)`).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(Error::Parse(format!(
                    "not a permutation of 0..{n}: {images:?}"
                )));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Build from the usual 1-based one-line notation.
    pub fn from_one_based(line: &[usize]) -> Result<Self> {
        let images = line
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::Parse("one-line notation is 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| i == w)
    }

    /// `w(i)` with 0-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &w) in self.images.iter().enumerate() {
            inv[w] = i;
        }
        Perm { images: inv }
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch(format!(
                "composing permutations of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut len = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Act on a tuple: the result `r` satisfies `r[w(i)] = xs[i]`.
    pub fn act<T: Clone>(&self, xs: &[T]) -> Result<Vec<T>> {
        if xs.len() != self.degree() {
            return Err(Error::SizeMismatch(format!(
                "permutation of degree {} acting on tuple of length {}",
                self.degree(),
                xs.len()
            )));
        }
        let mut out: Vec<T> = xs.to_vec();
        for (i, x) in xs.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        Ok(out)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// All permutations of degree `n`, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm {
                    images: cur.clone(),
                });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line: Vec<String> = self.to_one_based().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", line.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let w = Perm::from_one_based(&[3, 1, 2]).unwrap();
        let wi = w.inverse();
        assert!(w.compose(&wi).unwrap().is_identity());
        assert!(wi.compose(&w).unwrap().is_identity());
    }

    #[test]
    fn length_counts_inversions() {
        assert_eq!(Perm::identity(4).length(), 0);
        assert_eq!(Perm::from_one_based(&[3, 1, 2]).unwrap().length(), 2);
        assert_eq!(Perm::from_one_based(&[4, 3, 2, 1]).unwrap().length(), 6);
    }

    #[test]
    fn action_moves_entry_i_to_slot_w_i() {
        // w = (2,3,1) sends position 1 to 2, 2 to 3, 3 to 1.
        let w = Perm::from_one_based(&[2, 3, 1]).unwrap();
        let m = vec![10, 20, 30];
        let r = w.act(&m).unwrap();
        assert_eq!(r, vec![30, 10, 20]);
        // r[w(i)] = m[i] in 1-based terms.
        for i in 0..3 {
            assert_eq!(r[w.apply(i)], m[i]);
        }
    }

    #[test]
    fn all_permutations_of_small_degree() {
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(0).len(), 1);
        let all4 = Perm::all(4);
        assert_eq!(all4.len(), 24);
        assert!(all4[0].is_identity());
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }
}
