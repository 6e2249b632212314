//! Exact dense linear algebra: matrices over the rationals (rank, kernel,
//! determinant via Gaussian elimination) and matrices of Laurent
//! polynomials (ring operations and evaluation), sized for desk-scale
//! verification rather than bulk computation.

use num::{BigRational, One, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A dense matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn checked(rows: usize, cols: usize, caps: &Caps) -> Result<Self> {
        if rows.saturating_mul(cols) > caps.max_matrix_cells {
            return Err(Error::ResourceCap(format!(
                "{rows} x {cols} matrix exceeds the {} cell budget",
                caps.max_matrix_cells
            )));
        }
        Ok(Self::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &BigRational) {
        let e = &mut self.data[i * self.cols + j];
        *e = &*e + v;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_assign_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch("shape mismatch in subtraction".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &BigRational) -> QMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, col).recip();
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j) - &factor * self.get(row, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right kernel, one coordinate vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect())
    }
}

/// A dense matrix of Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &LaurentPoly) {
        let e = &mut self.data[i * self.cols + j];
        *e = &*e + v;
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_assign_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch("shape mismatch in addition".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch("shape mismatch in subtraction".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> PolyMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Apply the bar involution (invert the variable) entrywise.
    pub fn entrywise_bar(&self) -> PolyMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.bar();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rank over the fraction field of Laurent polynomials, computed by
    /// fraction-free elimination; rows are reduced to primitive parts to
    /// control coefficient growth.
    pub fn rank_fraction_free(&self) -> usize {
        let mut m = self.clone();
        for i in 0..m.rows {
            let row: Vec<LaurentPoly> =
                m.data[i * m.cols..(i + 1) * m.cols].to_vec();
            let reduced = primitive_row(&row);
            m.data[i * m.cols..(i + 1) * m.cols].clone_from_slice(&reduced);
        }
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, rank * m.cols + j);
                }
            }
            let pivot = m.get(rank, col).clone();
            for r in rank + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                let mut row: Vec<LaurentPoly> = Vec::with_capacity(m.cols);
                for j in 0..m.cols {
                    row.push(&(&pivot * m.get(r, j)) - &(&factor * m.get(rank, j)));
                }
                let reduced = primitive_row(&row);
                m.data[r * m.cols..(r + 1) * m.cols].clone_from_slice(&reduced);
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Evaluate every entry at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> Result<QMatrix> {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(x)?);
            }
        }
        Ok(out)
    }
}

/// Scale a row of Laurent polynomials by the positive rational that makes
/// the coefficients coprime integers, and drop the common power of the
/// variable.  Row scaling by nonzero factors preserves rank.
fn primitive_row(row: &[LaurentPoly]) -> Vec<LaurentPoly> {
    use num::{BigInt, Integer};
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    let mut min_e: Option<i64> = None;
    for p in row {
        for (e, c) in p.terms() {
            den_lcm = den_lcm.lcm(c.denom());
            min_e = Some(min_e.map_or(*e, |m| m.min(*e)));
        }
    }
    let Some(min_e) = min_e else {
        return row.to_vec();
    };
    for p in row {
        for (_, c) in p.terms() {
            let scaled = c.numer() * &den_lcm / c.denom();
            num_gcd = num_gcd.gcd(&scaled);
        }
    }
    let factor = BigRational::new(den_lcm, num_gcd);
    row.iter()
        .map(|p| p.scaled(&factor).shifted(-min_e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank_and_kernel() {
        // Rows (1,2,3), (2,4,6), (1,0,1): rank 2, kernel spanned by one vector.
        let m = QMatrix::from_rows(vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(1, 1), q(0, 1), q(1, 1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        let image = m.apply(&ker[0]).unwrap();
        assert!(image.iter().all(|x| x.is_zero()));
        assert_eq!(QMatrix::identity(4).rank(), 4);
        assert!(QMatrix::identity(3).kernel().is_empty());
    }

    #[test]
    fn determinants() {
        let m = QMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 1)],
            vec![q(1, 1), q(3, 1)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), q(1, 2));
        let singular = QMatrix::from_rows(vec![
            vec![q(1, 1), q(2, 1)],
            vec![q(2, 1), q(4, 1)],
        ])
        .unwrap();
        assert!(singular.det().unwrap().is_zero());
        assert!(QMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn matrix_products() {
        let a = QMatrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        let b = QMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(3, 1), q(1, 1)]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.get(0, 0), &q(7, 1));
        assert_eq!(ab.get(0, 1), &q(2, 1));
        let i = QMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn resource_cap() {
        let caps = Caps::tiny();
        assert!(QMatrix::checked(100, 100, &caps).is_err());
        assert!(QMatrix::checked(4, 4, &caps).is_ok());
    }

    #[test]
    fn poly_matrix_rank() {
        // Rows: (1, v), (v^-1, 1) are proportional over the fraction field;
        // adding (1, 0) makes the rank 2.
        let v = LaurentPoly::monomial_int(1, 1);
        let vinv = LaurentPoly::monomial_int(1, -1);
        let mut m = PolyMatrix::zeros(3, 2);
        m.set(0, 0, LaurentPoly::one());
        m.set(0, 1, v);
        m.set(1, 0, vinv);
        m.set(1, 1, LaurentPoly::one());
        m.set(2, 0, LaurentPoly::one());
        assert_eq!(m.rank_fraction_free(), 2);
        assert_eq!(PolyMatrix::zeros(2, 2).rank_fraction_free(), 0);
        assert_eq!(PolyMatrix::identity(3).rank_fraction_free(), 3);
    }

    #[test]
    fn poly_matrices() {
        let v = LaurentPoly::monomial_int(1, 1);
        let mut a = PolyMatrix::identity(2);
        a.set(0, 1, v.clone());
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.get(0, 1), &LaurentPoly::monomial_int(2, 1));
        let barred = a.entrywise_bar();
        assert_eq!(barred.get(0, 1), &LaurentPoly::monomial_int(1, -1));
        let at_two = a.eval(&q(2, 1)).unwrap();
        assert_eq!(at_two.get(0, 1), &q(2, 1));
        assert!(a.sub(&a).unwrap().is_zero());
    }
}
