use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};

use super::MPoly;

/// A formal fraction `num / den` of polynomials.
///
/// Reduction is limited to monomial content, scalar normalization of the
/// denominator and exact trial division; equality is cross-multiplication.
#[derive(Clone)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl PartialEq for RatFun {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for RatFun {}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        let den = MPoly::one(p.field(), p.nvars());
        RatFun { num: p, den }
    }
}

impl RatFun {
    /// Normalized fraction; fails on a zero denominator.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::ArityMismatch {
                expected: num.nvars(),
                got: den.nvars(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        let nv = num.nvars();
        if num.is_zero() {
            return RatFun {
                den: MPoly::one(num.field(), nv),
                num,
            };
        }
        if den.is_one() {
            return RatFun { num, den };
        }
        // common monomial content
        let g = num.monomial_content().gcd(&den.monomial_content());
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_mono(&g), den.div_mono(&g))
        };
        // leading coefficient of den becomes 1
        let lc = den.lead().expect("nonzero den").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() {
            return RatFun { num, den };
        }
        if let Some(q) = num.div_exact(&den) {
            let one = MPoly::one(q.field(), nv);
            return RatFun { num: q, den: one };
        }
        RatFun { num, den }
    }

    pub fn zero(field: &Field, nvars: usize) -> Self {
        MPoly::zero(field, nvars).into()
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        MPoly::one(field, nvars).into()
    }

    pub fn constant(c: FieldElem, nvars: usize) -> Self {
        MPoly::constant(c, nvars).into()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            return Self::normalized(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if let Some(k) = o.den.div_exact(&self.den) {
            return Self::normalized(self.num.mul(&k).add(&o.num), o.den.clone());
        }
        if let Some(k) = self.den.div_exact(&o.den) {
            return Self::normalized(self.num.add(&o.num.mul(&k)), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field(), self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun {
                num: self.num.mul(&o.num),
                den: self.den.clone(),
            };
        }
        // cross-cancel before multiplying out
        let (mut a, mut b) = (self.num.clone(), self.den.clone());
        let (mut c, mut d) = (o.num.clone(), o.den.clone());
        if !d.is_one() {
            if let Some(q) = a.div_exact(&d) {
                a = q;
                d = MPoly::one(d.field(), d.nvars());
            }
        }
        if !b.is_one() {
            if let Some(q) = c.div_exact(&b) {
                c = q;
                b = MPoly::one(b.field(), b.nvars());
            }
        }
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, s: &FieldElem) -> RatFun {
        Self::normalized(self.num.scale(s), self.den.clone())
    }

    /// `r^q` with `q` the order of the coefficient field.
    pub fn qpower(&self) -> Result<RatFun> {
        Ok(RatFun {
            num: self.num.qpower()?,
            den: self.den.qpower()?,
        })
    }

    /// Evaluation at `xi`; a vanishing denominator is a bad point.
    pub fn eval(&self, xi: &[FieldElem]) -> Result<FieldElem> {
        let target = xi.first().map_or(self.field().clone(), |x| x.field().clone());
        let emb = Embedding::canonical(self.field(), &target)?;
        self.eval_with(xi, &emb)
    }

    pub fn eval_with(&self, xi: &[FieldElem], emb: &Embedding) -> Result<FieldElem> {
        let d = self.den.eval_with(xi, emb)?;
        if d.is_zero() {
            return Err(Error::BadPoint("denominator vanishes".into()));
        }
        let n = self.num.eval_with(xi, emb)?;
        Ok(&n / &d)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            self.num.render(names)
        } else {
            format!("({})/({})", self.num.render(names), self.den.render(names))
        }
    }
}

/// Cross-multiplication equality.
pub fn rf_equal(r: &RatFun, s: &RatFun) -> bool {
    r == s
}
