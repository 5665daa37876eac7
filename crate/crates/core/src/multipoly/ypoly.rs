use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};
use crate::upoly::UPoly;

use super::{var_names, RatFun};

/// Univariate polynomial in `Y` with [`RatFun`] coefficients, constant first.
#[derive(Clone, PartialEq, Eq)]
pub struct YPoly {
    field: Field,
    nvars: usize,
    c: Vec<RatFun>,
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_names(self.nvars), "Y"))
    }
}

impl YPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        YPoly {
            field: field.clone(),
            nvars,
            c: Vec::new(),
        }
    }

    pub fn from_coeffs(field: &Field, nvars: usize, c: Vec<RatFun>) -> Self {
        let mut p = YPoly {
            field: field.clone(),
            nvars,
            c,
        };
        p.trim();
        p
    }

    /// `coeff * Y^k`.
    pub fn monomial(coeff: RatFun, k: usize) -> Self {
        let (field, nvars) = (coeff.field().clone(), coeff.nvars());
        let mut c = vec![RatFun::zero(&field, nvars); k];
        c.push(coeff);
        Self::from_coeffs(&field, nvars, c)
    }

    pub fn y(field: &Field, nvars: usize) -> Self {
        Self::monomial(RatFun::one(field, nvars), 1)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(RatFun::is_zero) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.c
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFun::zero(&self.field, self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn add(&self, o: &YPoly) -> YPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Self::from_coeffs(&self.field, self.nvars, c)
    }

    pub fn neg(&self) -> YPoly {
        YPoly {
            c: self.c.iter().map(RatFun::neg).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &YPoly) -> YPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &YPoly) -> YPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let mut c = vec![RatFun::zero(&self.field, self.nvars); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(&self.field, self.nvars, c)
    }

    pub fn scale(&self, s: &RatFun) -> YPoly {
        Self::from_coeffs(&self.field, self.nvars, self.c.iter().map(|x| x.mul(s)).collect())
    }

    /// Long division over the fraction field: `self = q*d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &YPoly) -> Result<(YPoly, YPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.c[dd].inv()?;
        let mut r = self.c.clone();
        let nq = (r.len() + 1).saturating_sub(dd + 1);
        let mut q = vec![RatFun::zero(&self.field, self.nvars); nq];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].mul(&lc_inv);
            for (i, dc) in d.c.iter().enumerate() {
                if !dc.is_zero() {
                    r[k - dd + i] = r[k - dd + i].sub(&c.mul(dc));
                }
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((
            Self::from_coeffs(&self.field, self.nvars, q),
            Self::from_coeffs(&self.field, self.nvars, r),
        ))
    }

    /// Specializes every coefficient at `xi`, giving a polynomial over `emb.sup()`.
    pub fn eval_with(&self, xi: &[FieldElem], emb: &Embedding) -> Result<UPoly> {
        let c = self
            .c
            .iter()
            .map(|x| x.eval_with(xi, emb))
            .collect::<Result<Vec<_>>>()?;
        Ok(UPoly::from_coeffs(emb.sup(), c))
    }

    pub fn eval(&self, xi: &[FieldElem]) -> Result<UPoly> {
        let target = xi.first().map_or(self.field.clone(), |x| x.field().clone());
        let emb = Embedding::canonical(&self.field, &target)?;
        self.eval_with(xi, &emb)
    }

    /// Text form, highest power first: `Y^4 + (t1+t2)*Y^2 + t1`.
    pub fn render(&self, names: &[String], y: &str) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let ypow = match k {
                0 => String::new(),
                1 => y.to_string(),
                _ => format!("{y}^{k}"),
            };
            let coeff = a.render(names);
            let simple = a.is_polynomial() && a.num().len() == 1;
            parts.push(match (k, a.is_one()) {
                (0, _) => coeff,
                (_, true) => ypow,
                _ if simple => format!("{coeff}*{ypow}"),
                _ => format!("({coeff})*{ypow}"),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MPoly;

    #[test]
    fn divrem_examples() {
        let f3 = Field::prime(3).unwrap();
        let y9 = YPoly::monomial(RatFun::one(&f3, 1), 9);
        let (q, r) = y9.divrem(&YPoly::y(&f3, 1)).unwrap();
        assert_eq!(q, YPoly::monomial(RatFun::one(&f3, 1), 8));
        assert!(r.is_zero());

        let f2 = Field::prime(2).unwrap();
        let t1 = RatFun::from(MPoly::var(&f2, 1, 0));
        let one = RatFun::one(&f2, 1);
        let f = YPoly::from_coeffs(&f2, 1, vec![t1.clone(), RatFun::zero(&f2, 1), one.clone()]);
        let g = YPoly::from_coeffs(&f2, 1, vec![one.clone(), one.clone()]);
        let (q, r) = f.divrem(&g).unwrap();
        assert_eq!(q, g);
        assert_eq!(r, YPoly::from_coeffs(&f2, 1, vec![t1.add(&one)]));
        assert_eq!(f.divrem(&YPoly::zero(&f2, 1)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn divrem_with_fraction_lead() {
        let f3 = Field::prime(3).unwrap();
        let t1 = RatFun::from(MPoly::var(&f3, 1, 0));
        let one = RatFun::one(&f3, 1);
        let f = YPoly::from_coeffs(&f3, 1, vec![one.clone(), t1.clone(), one.clone(), t1.clone()]);
        let g = YPoly::from_coeffs(&f3, 1, vec![t1.clone(), t1.clone()]);
        let (q, r) = f.divrem(&g).unwrap();
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
