//! Sparse multivariate polynomials over a finite field, formal fractions of
//! them, matrices of fractions, and univariate polynomials in `Y` over the
//! fraction field.
//!
//! Graded lexicographic order (total degree first, then `t1` most
//! significant) is the single term order used for storage, display and
//! serialization. Text form: terms in descending order joined by `+`, each
//! written `coeff*t1^a1*...*tm^am`; a unit coefficient is omitted on
//! non-constant terms, zero exponents are omitted and `^1` is dropped.

mod matrf;
mod parse;
mod ratfun;
mod ypoly;

pub use matrf::MatRF;
pub use parse::{parse_mpoly, parse_ypoly, var_names};
pub use ratfun::{rf_equal, RatFun};
pub use ypoly::YPoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{ArithOp, Embedding, Field, FieldElem};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(SmallVec<[u32; 6]>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Mono(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&o.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self | o`.
    fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    fn gcd(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    fn scale_exps(&self, k: u128) -> Result<Mono> {
        self.0
            .iter()
            .map(|&e| {
                u32::try_from(e as u128 * k)
                    .map_err(|_| Error::CapExceeded("exponent overflow in q-power".into()))
            })
            .collect::<Result<SmallVec<_>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial in `t1..tm` over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    // no zero coefficients; ascending grlex
    terms: BTreeMap<Mono, FieldElem>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_names(self.nvars)))
    }
}

impl MPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    /// The variable `t_{i+1}`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field.one(), Mono::var(nvars, i))
    }

    pub fn monomial(c: FieldElem, m: Mono) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    pub fn lead(&self) -> Option<(&Mono, &FieldElem)> {
        self.terms.iter().next_back()
    }

    fn compatible(&self, o: &MPoly) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != o.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: o.nvars,
            });
        }
        Ok(())
    }

    /// Checked ring arithmetic (`Div` is exact division and fails when inexact).
    pub fn arith(&self, o: &MPoly, op: ArithOp) -> Result<MPoly> {
        self.compatible(o)?;
        Ok(match op {
            ArithOp::Add => self.add(o),
            ArithOp::Sub => self.sub(o),
            ArithOp::Mul => self.mul(o),
            ArithOp::Div => self
                .div_exact(o)
                .ok_or(Error::InexactDivision)?,
        })
    }

    fn add_term(&mut self, m: Mono, c: FieldElem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        assert!(self.field == o.field && self.nvars == o.nvars, "incompatible polynomials");
        let (mut big, small) = if self.terms.len() >= o.terms.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        assert!(self.field == o.field && self.nvars == o.nvars, "incompatible polynomials");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        assert!(self.field == o.field && self.nvars == o.nvars, "incompatible polynomials");
        let mut out = MPoly::zero(&self.field, self.nvars);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &FieldElem) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(&self.field, self.nvars);
        }
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(&self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f^q` for `q` the order of the coefficient field, computed by the
    /// substitution `ti -> ti^q` (coefficients are fixed by `x -> x^q`).
    pub fn qpower(&self) -> Result<MPoly> {
        self.qpower_by(self.field.order())
    }

    /// Substitution `ti -> ti^k`, which equals `f^k` when `k` is a power of
    /// the coefficient field's order.
    pub fn qpower_by(&self, k: u128) -> Result<MPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.scale_exps(k)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// Greatest common monomial divisor of all terms (`1` for zero).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        match it.next() {
            None => Mono::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn div_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.quotient_of(k), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.lead()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let lc_inv = lc.inv().ok()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.field, self.nvars);
        while let Some((lm, lcr)) = r.lead() {
            if !ld.divides(lm) {
                return None;
            }
            let m = ld.quotient_of(lm);
            let c = lcr * &lc_inv;
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&m), -&(&c * dc));
            }
            q.terms.insert(m, c);
        }
        Some(q)
    }

    /// Evaluation at a point of some extension `L` of the coefficient field.
    pub fn eval(&self, xi: &[FieldElem]) -> Result<FieldElem> {
        if xi.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: xi.len(),
            });
        }
        let target = match xi.first() {
            Some(x) => x.field().clone(),
            None => self.field.clone(),
        };
        if xi.iter().any(|x| x.field() != &target) {
            return Err(Error::FieldMismatch);
        }
        let emb = Embedding::canonical(&self.field, &target)?;
        self.eval_with(xi, &emb)
    }

    pub fn eval_with(&self, xi: &[FieldElem], emb: &Embedding) -> Result<FieldElem> {
        let target = emb.sup();
        // cache powers per variable
        let mut powers: Vec<Vec<FieldElem>> = xi.iter().map(|x| vec![target.one(), x.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = emb.apply(c)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = &pw[pw.len() - 1] * &xi[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Text form with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push('+');
            }
            let mut factors = Vec::new();
            if m.is_one() || !c.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Reinterprets the polynomial with extra trailing variables.
    pub fn extend_vars(&self, nvars: usize) -> MPoly {
        assert!(nvars >= self.nvars);
        MPoly {
            field: self.field.clone(),
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn t(field: &Field, nvars: usize, i: usize) -> MPoly {
        MPoly::var(field, nvars, i)
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = f(3);
        let (t1, t2) = (t(&f3, 2, 0), t(&f3, 2, 1));
        let prod = t1.add(&t2).mul(&t1.sub(&t2));
        assert_eq!(prod.to_string(), "t1^2+2*t2^2");
        assert_eq!(t1.add(&MPoly::zero(&f3, 2)), t1);
        let f2 = f(2);
        let (u1, u2) = (t(&f2, 2, 0), t(&f2, 2, 1));
        let s = u1.add(&u2);
        assert_eq!(s.mul(&s).to_string(), "t1^2+t2^2");
    }

    #[test]
    fn arity_and_field_checks() {
        let f3 = f(3);
        let a = t(&f3, 2, 0);
        let b = t(&f3, 3, 0);
        assert!(matches!(a.arith(&b, ArithOp::Add), Err(Error::ArityMismatch { .. })));
        let c = t(&f(5), 2, 0);
        assert_eq!(a.arith(&c, ArithOp::Mul), Err(Error::FieldMismatch));
    }

    #[test]
    fn qpower_examples() {
        let f3 = f(3);
        let (t1, t2) = (t(&f3, 2, 0), t(&f3, 2, 1));
        assert_eq!(t1.add(&t2).qpower().unwrap().to_string(), "t1^3+t2^3");
        let c = MPoly::constant(f3.from_int(2), 2);
        assert_eq!(c.qpower().unwrap(), c);
        let f2 = f(2);
        let g = t(&f2, 2, 0).mul(&t(&f2, 2, 1)).add(&MPoly::one(&f2, 2));
        assert_eq!(g.qpower().unwrap().to_string(), "t1^2*t2^2+1");
        assert_eq!(g.qpower().unwrap(), g.pow(2));
    }

    #[test]
    fn eval_examples() {
        let f3 = f(3);
        let (t1, t2) = (t(&f3, 2, 0), t(&f3, 2, 1));
        let s = t1.mul(&t1).add(&t2.mul(&t2));
        assert_eq!(s.eval(&[f3.one(), f3.one()]).unwrap(), f3.from_int(2));
        let g = s.add(&MPoly::constant(f3.from_int(2), 2));
        assert_eq!(g.eval(&[f3.zero(), f3.zero()]).unwrap(), f3.from_int(2));
        let f9 = Field::ext(3, 2).unwrap();
        let w = f9.generator();
        assert_eq!(t1.mul(&t2).eval(&[w.clone(), w]).unwrap(), f9.from_int(-1));
        assert!(matches!(s.eval(&[f3.one()]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn exact_division() {
        let f3 = f(3);
        let (t1, t2) = (t(&f3, 2, 0), t(&f3, 2, 1));
        let a = t1.add(&t2);
        let b = t1.sub(&t2).add(&MPoly::one(&f3, 2));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.add(&MPoly::one(&f3, 2)).div_exact(&a), None);
    }

    #[test]
    fn grlex_order() {
        let a = Mono::from_exps(&[2, 0]);
        let b = Mono::from_exps(&[1, 1]);
        let c = Mono::from_exps(&[0, 3]);
        assert!(a > b && c > a);
    }
}
