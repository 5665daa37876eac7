//! Dense matrices over a finite field and exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct FMat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for FMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for FMat {
    type Output = FieldElem;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElem {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElem {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
pub struct Rref {
    pub mat: FMat,
    pub pivots: Vec<usize>,
}

impl FMat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FMat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<FieldElem> = rows.into_iter().flatten().collect();
        if data.iter().any(|a| a.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(FMat {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    /// Column vector.
    pub fn column(field: &Field, v: Vec<FieldElem>) -> Self {
        FMat {
            field: field.clone(),
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn from_cols(field: &Field, cols: &[Vec<FieldElem>]) -> Result<Self> {
        let nc = cols.len();
        let nr = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(field, nr, nc);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != nr {
                return Err(Error::DimensionMismatch("ragged columns".into()));
            }
            for (i, a) in col.iter().enumerate() {
                m[(i, j)] = a.clone();
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let a = &self[(r, c)];
                    if r == c {
                        a.is_one()
                    } else {
                        a.is_zero()
                    }
                })
            })
    }

    pub fn map(&self, f: impl Fn(&FieldElem) -> FieldElem) -> FMat {
        let data: Vec<FieldElem> = self.data.iter().map(f).collect();
        let field = data.first().map_or(self.field.clone(), |a| a.field().clone());
        FMat {
            field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn try_map(&self, f: impl Fn(&FieldElem) -> Result<FieldElem>, target: &Field) -> Result<FMat> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(FMat {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn embed(&self, sup: &Field) -> Result<FMat> {
        let emb = Embedding::canonical(&self.field, sup)?;
        self.embed_with(&emb)
    }

    pub fn embed_with(&self, emb: &Embedding) -> Result<FMat> {
        self.try_map(|a| emb.apply(a), emb.sup())
    }

    /// Entrywise `x -> x^k`.
    pub fn twist(&self, k: u128) -> FMat {
        self.map(|a| a.pow(k))
    }

    pub fn transpose(&self) -> FMat {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn add(&self, o: &FMat) -> Result<FMat> {
        self.check_shape(o)?;
        Ok(FMat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &FMat) -> Result<FMat> {
        self.check_shape(o)?;
        Ok(FMat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &FieldElem) -> FMat {
        self.map(|a| a * s)
    }

    fn check_shape(&self, o: &FMat) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, o: &FMat) -> Result<FMat> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let v = &out[(r, c)] + &(a * &o[(k, c)]);
                    out[(r, c)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        Ok(self.mul(&FMat::column(&self.field, v.to_vec()))?.data)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, row);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(r, c)] - &(&f * &m[(row, c)]);
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { mat: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column, in
    /// increasing free-column order.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let Rref { mat, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&mat[(i, fc)];
                }
                v
            })
            .collect()
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] * &inv;
                for c in col..n {
                    let v = &m[(r, c)] - &(&f * &m[(col, c)]);
                    m[(r, c)] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<FMat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = self.field.one();
        }
        let Rref { mat, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = mat[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// Some solution `x` of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let Rref { mat, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = mat[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Multiplicative order of an invertible square matrix, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self).ok()?;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f3 = Field::prime(3).unwrap();
        let a = FMat::from_ints(&f3, &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let d = a.det().unwrap();
        // 1*(1-0) - 2*(0-2) + 0 = 5 = 2 mod 3
        assert_eq!(d, f3.from_int(2));
        let s = FMat::from_ints(&f3, &[&[1, 2], &[2, 1]]);
        assert_eq!(s.det().unwrap(), f3.zero());
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f5 = Field::prime(5).unwrap();
        let a = FMat::from_ints(&f5, &[&[1, 2, 3, 4], &[2, 4, 1, 3]]);
        let k = a.kernel();
        assert_eq!(k.len(), 4 - a.rank());
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f2 = Field::prime(2).unwrap();
        let a = FMat::from_ints(&f2, &[&[1, 1], &[1, 1]]);
        let one = f2.one();
        let zero = f2.zero();
        assert!(a.solve(&[one.clone(), zero.clone()]).unwrap().is_none());
        let x = a.solve(&[one.clone(), one.clone()]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![one.clone(), one]);
    }
}
