use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};
use crate::linalg::FMat;

use super::{MPoly, RatFun};

/// Dense row-major matrix of [`RatFun`] entries sharing one field and arity.
#[derive(Clone, PartialEq, Eq)]
pub struct MatRF {
    field: Field,
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl fmt::Debug for MatRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl MatRF {
    pub fn zeros(field: &Field, nvars: usize, rows: usize, cols: usize) -> Self {
        MatRF {
            field: field.clone(),
            nvars,
            rows,
            cols,
            data: vec![RatFun::zero(field, nvars); rows * cols],
        }
    }

    pub fn identity(field: &Field, nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(field, nvars, n, n);
        for i in 0..n {
            m.data[i * n + i] = RatFun::one(field, nvars);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let r = rows.len();
        let first = rows
            .first()
            .and_then(|row| row.first())
            .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
        let (field, nvars) = (first.field().clone(), first.nvars());
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for x in row {
                if x.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                if x.nvars() != nvars {
                    return Err(Error::ArityMismatch {
                        expected: nvars,
                        got: x.nvars(),
                    });
                }
                data.push(x);
            }
        }
        Ok(MatRF {
            field,
            nvars,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_polys(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(RatFun::from).collect())
                .collect(),
        )
    }

    /// Constant matrix over the coefficient field.
    pub fn from_fmat(m: &FMat, nvars: usize) -> Self {
        MatRF {
            field: m.field().clone(),
            nvars,
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|c| RatFun::constant(c.clone(), nvars))
                .collect(),
        }
    }

    pub fn from_cols(cols: &[Vec<RatFun>]) -> Result<Self> {
        let r = cols.first().map_or(0, Vec::len);
        let rows = (0..r)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFun {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFun) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn col(&self, c: usize) -> Vec<RatFun> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFun>> {
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> MatRF {
        MatRF {
            field: self.field.clone(),
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, o: &MatRF) -> Result<MatRF> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = MatRF::zeros(&self.field, self.nvars, self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = RatFun::zero(&self.field, self.nvars);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = o.get(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &MatRF) -> Result<MatRF> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&o.data) {
            *x = x.add(y);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &RatFun) -> MatRF {
        self.map(|x| x.mul(s))
    }

    /// Entrywise `x -> x^q`.
    pub fn qtwist(&self) -> Result<MatRF> {
        let data = self.data.iter().map(RatFun::qpower).collect::<Result<_>>()?;
        Ok(MatRF {
            data,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> MatRF {
        let mut out = MatRF::zeros(&self.field, self.nvars, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    fn square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Ok(self.rows)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> MatRF {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != skip_r) {
            for c in (0..n).filter(|&c| c != skip_c) {
                data.push(self.get(r, c).clone());
            }
        }
        MatRF {
            field: self.field.clone(),
            nvars: self.nvars,
            rows: n - 1,
            cols: n - 1,
            data,
        }
    }

    /// Cofactor expansion up to 4x4, fraction-free Bareiss beyond.
    pub fn det(&self) -> Result<RatFun> {
        let n = self.square()?;
        Ok(if n <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        })
    }

    fn det_cofactor(&self) -> RatFun {
        let n = self.rows;
        match n {
            0 => RatFun::one(&self.field, self.nvars),
            1 => self.data[0].clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            _ => {
                let mut acc = RatFun::zero(&self.field, self.nvars);
                for c in 0..n {
                    let a = self.get(0, c);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&self.minor(0, c).det_cofactor());
                    acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    fn det_bareiss(&self) -> RatFun {
        let n = self.rows;
        let (f, nv) = (&self.field, self.nvars);
        // clear denominators row by row
        let mut scale = RatFun::one(f, nv);
        let mut m: Vec<Vec<MPoly>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut den = MPoly::one(f, nv);
            for c in 0..n {
                let d = self.get(r, c).den();
                if den.div_exact(d).is_none() {
                    den = den.mul(d);
                }
            }
            scale = scale.mul(&RatFun::from(den.clone()));
            let row = (0..n)
                .map(|c| {
                    let x = self.get(r, c);
                    let k = den.div_exact(x.den()).expect("row denominator");
                    x.num().mul(&k)
                })
                .collect();
            m.push(row);
        }
        let mut sign_neg = false;
        let mut prev = MPoly::one(f, nv);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign_neg = !sign_neg;
                    }
                    None => return RatFun::zero(f, nv),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = MPoly::zero(f, nv);
            }
            prev = m[k][k].clone();
        }
        let mut d = RatFun::from(m[n - 1][n - 1].clone());
        if sign_neg {
            d = d.neg();
        }
        d.div(&scale).expect("nonzero scale")
    }

    pub fn adjugate(&self) -> Result<MatRF> {
        let n = self.square()?;
        let mut out = MatRF::zeros(&self.field, self.nvars, n, n);
        if n == 1 {
            out.data[0] = RatFun::one(&self.field, self.nvars);
            return Ok(out);
        }
        for r in 0..n {
            for c in 0..n {
                let m = self.minor(r, c).det()?;
                out.set(c, r, if (r + c) % 2 == 0 { m } else { m.neg() });
            }
        }
        Ok(out)
    }

    /// `adj / det`; fails when the determinant vanishes identically.
    pub fn inv(&self) -> Result<MatRF> {
        let d = self.det()?;
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let di = d.inv()?;
        Ok(self.adjugate()?.scale(&di))
    }

    /// Evaluation at `xi` through a fixed coefficient embedding.
    pub fn eval_with(&self, xi: &[FieldElem], emb: &Embedding) -> Result<FMat> {
        let vals = self
            .data
            .iter()
            .map(|x| x.eval_with(xi, emb))
            .collect::<Result<Vec<_>>>()?;
        let rows = vals.chunks(self.cols).map(<[_]>::to_vec).collect();
        FMat::from_rows(emb.sup(), rows)
    }

    pub fn eval(&self, xi: &[FieldElem]) -> Result<FMat> {
        let target = xi.first().map_or(self.field.clone(), |x| x.field().clone());
        let emb = Embedding::canonical(&self.field, &target)?;
        self.eval_with(xi, &emb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(f: &Field) -> (RatFun, RatFun) {
        (MPoly::var(f, 2, 0).into(), MPoly::var(f, 2, 1).into())
    }

    #[test]
    fn example_determinants() {
        let f3 = Field::prime(3).unwrap();
        let (t1, t2) = vars(&f3);
        let a = MatRF::from_rows(vec![vec![t1.clone(), t2.neg()], vec![t2.clone(), t1.clone()]]).unwrap();
        assert_eq!(a.det().unwrap().to_string(), "t1^2+t2^2");
        let one = RatFun::one(&f3, 2);
        let zero = RatFun::zero(&f3, 2);
        let n = MatRF::from_rows(vec![vec![one.clone(), t1.clone()], vec![zero, t2.clone()]]).unwrap();
        assert_eq!(n.det().unwrap(), t2);
        let nq = n.qtwist().unwrap();
        assert_eq!(format!("{nq:?}"), "[1, t1^3; 0, t2^3]");
        let id = MatRF::identity(&f3, 2, 3);
        assert!(id.det().unwrap().is_one());
        assert!(id.inv().unwrap().is_identity());
        assert!(id.qtwist().unwrap().is_identity());
    }

    #[test]
    fn inverse_and_bareiss() {
        let f3 = Field::prime(3).unwrap();
        let (t1, t2) = vars(&f3);
        let one = RatFun::one(&f3, 2);
        let a = MatRF::from_rows(vec![vec![t1.clone(), one.clone()], vec![one.clone(), t2.clone()]]).unwrap();
        assert!(a.inv().unwrap().mul(&a).unwrap().is_identity());
        // 5x5 with fractions: Bareiss vs cofactor on the same matrix
        let h = t1.div(&t2.add(&one)).unwrap();
        let mut m = MatRF::identity(&f3, 2, 5);
        for i in 0..5 {
            for j in 0..5 {
                let base = if (i + j) % 3 == 0 { t1.clone() } else { t2.clone() };
                let v = if i == j { base.add(&h) } else { base.scale(&f3.from_int((i * j) as i64 + 1)) };
                m.set(i, j, v);
            }
        }
        let d1 = m.det_bareiss();
        let mut by_rows = RatFun::zero(&f3, 2);
        for c in 0..5 {
            let term = m.get(0, c).mul(&m.minor(0, c).det_cofactor());
            by_rows = if c % 2 == 0 { by_rows.add(&term) } else { by_rows.sub(&term) };
        }
        assert_eq!(d1, by_rows);
        let singular = MatRF::from_rows(vec![vec![t1.clone(), t1.clone()], vec![t2.clone(), t2.clone()]]).unwrap();
        assert_eq!(singular.inv().unwrap_err(), Error::Singular);
    }
}
