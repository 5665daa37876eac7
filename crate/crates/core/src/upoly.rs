//! Dense univariate polynomials over a finite field.
//!
//! Supports the root finding behind subfield embeddings and the
//! distinct-degree factorization used for cycle-type sampling.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::rng::Lcg64;

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    // trimmed: no trailing zeros, empty for the zero polynomial
    c: Vec<FieldElem>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "Y")?,
                (1, false) => write!(f, "{a}*Y")?,
                (_, true) => write!(f, "Y^{i}")?,
                (_, false) => write!(f, "{a}*Y^{i}")?,
            }
        }
        Ok(())
    }
}

/// Factor-degree pattern of a univariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdfPattern {
    /// True when `gcd(h, h') = 1`.
    pub squarefree: bool,
    /// Multiplicity -> sorted irreducible-factor degrees of that squarefree part.
    pub blocks: BTreeMap<usize, Vec<usize>>,
}

impl DdfPattern {
    /// Sorted degrees of the distinct irreducible factors (multiplicities ignored).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.blocks.values().flatten().copied().collect();
        d.sort_unstable();
        d
    }
}

impl UPoly {
    pub fn zero(field: &Field) -> Self {
        UPoly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let field = c.field().clone();
        Self::from_coeffs(&field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Self::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn from_coeffs(field: &Field, c: Vec<FieldElem>) -> Self {
        let mut p = UPoly {
            field: field.clone(),
            c,
        };
        p.trim();
        p
    }

    /// Coefficients are integers read in the prime subfield.
    pub fn from_ints(field: &Field, ints: &[u32]) -> Self {
        Self::from_coeffs(field, ints.iter().map(|&v| field.from_int(v as i64)).collect())
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.c.last()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn embed_coeffs(&self, sup: &Field) -> Result<UPoly> {
        let c = self
            .c
            .iter()
            .map(|a| a.embed(sup))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(sup, c))
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
            .collect();
        Self::from_coeffs(&self.field, c)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z))
            .collect();
        Self::from_coeffs(&self.field, c)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(&self.field, c)
    }

    pub fn scale(&self, s: &FieldElem) -> UPoly {
        Self::from_coeffs(&self.field, self.c.iter().map(|a| a * s).collect())
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?;
        let inv = dl.inv()?;
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &inv;
            if coef.is_zero() {
                continue;
            }
            for (i, b) in d.c.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&coef * b);
            }
            q[k] = coef;
        }
        r.truncate(dd);
        Ok((
            Self::from_coeffs(&self.field, q),
            Self::from_coeffs(&self.field, r),
        ))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).expect("nonzero divisor").1
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &UPoly, m: &UPoly) -> UPoly {
        self.mul(o).rem(m)
    }

    /// `self^k mod m`.
    pub fn powmod(&self, mut k: u128, m: &UPoly) -> UPoly {
        let mut base = self.rem(m);
        let mut acc = Self::constant(self.field.one()).rem(m);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            k >>= 1;
            if k > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * &self.field.from_int((i as u64 % self.field.p() as u64) as i64))
            .collect();
        Self::from_coeffs(&self.field, c)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        self.c
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, a| &(&acc * x) + a)
    }

    fn random_below_degree(&self, d: usize, rng: &mut Lcg64) -> UPoly {
        let c = (0..d)
            .map(|_| self.field.element_at(rng.below(self.field.order())))
            .collect();
        Self::from_coeffs(&self.field, c)
    }

    /// Distinct roots in the coefficient field, in no particular order.
    pub fn roots(&self) -> Vec<FieldElem> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let xq = UPoly::x(&self.field).powmod(self.field.order(), &f);
        let lin = f.gcd(&xq.sub(&UPoly::x(&self.field).rem(&f)));
        let mut out = Vec::new();
        let mut rng = Lcg64::new(0x5eed);
        split_linear(&lin, &mut rng, &mut out);
        out
    }

    /// Squarefree decomposition: multiplicity -> monic squarefree factor.
    pub fn squarefree_decomposition(&self) -> Result<BTreeMap<usize, UPoly>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = BTreeMap::new();
        self.sqf_into(1, &mut out);
        Ok(out)
    }

    fn sqf_into(&self, mult: usize, out: &mut BTreeMap<usize, UPoly>) {
        let f = self.monic();
        if f.degree() == Some(0) {
            return;
        }
        let mut c = f.gcd(&f.derivative());
        let mut w = f.divrem(&c).unwrap().0;
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).unwrap().0;
            if fac.degree() != Some(0) {
                let e = out.entry(i * mult).or_insert_with(|| UPoly::constant(self.field.one()));
                *e = e.mul(&fac);
            }
            w = y.clone();
            c = c.divrem(&y).unwrap().0;
            i += 1;
        }
        if c.degree() != Some(0) {
            // c is a polynomial in Y^p: take p-th roots of its coefficients
            let p = self.field.p() as usize;
            let root_exp = self.field.order() / self.field.p() as u128;
            let coeffs = c
                .c
                .iter()
                .step_by(p)
                .map(|a| a.pow(root_exp))
                .collect();
            UPoly::from_coeffs(&self.field, coeffs).sqf_into(mult * p, out);
        }
    }

    /// Distinct-degree factorization of a squarefree polynomial: sorted list
    /// of irreducible-factor degrees.
    pub fn ddf_degrees(&self) -> Vec<usize> {
        let mut h = self.monic();
        let x = UPoly::x(&self.field);
        let mut xp = x.rem(&h);
        let mut out = Vec::new();
        let mut i = 1;
        while h.degree().unwrap_or(0) >= 2 * i {
            xp = xp.powmod(self.field.order(), &h);
            let g = h.gcd(&xp.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                let gd = g.degree().unwrap();
                out.extend(std::iter::repeat_n(i, gd / i));
                h = h.divrem(&g).unwrap().0;
                xp = xp.rem(&h);
            }
            i += 1;
        }
        if let Some(d) = h.degree() {
            if d > 0 {
                out.push(d);
            }
        }
        out.sort_unstable();
        out
    }

    /// Factor-degree pattern; non-squarefree input is decomposed first and
    /// reported per multiplicity.
    pub fn ddf_pattern(&self) -> Result<DdfPattern> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let squarefree = self.gcd(&self.derivative()).degree() == Some(0);
        let mut blocks = BTreeMap::new();
        if squarefree {
            blocks.insert(1, self.ddf_degrees());
        } else {
            for (m, part) in self.squarefree_decomposition()? {
                blocks.insert(m, part.ddf_degrees());
            }
        }
        Ok(DdfPattern { squarefree, blocks })
    }
}

fn split_linear(h: &UPoly, rng: &mut Lcg64, out: &mut Vec<FieldElem>) {
    match h.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = h.coeffs();
            out.push(-&(&c[0] / &c[1]));
        }
        Some(d) => {
            let field = h.field().clone();
            loop {
                let r = h.random_below_degree(d, rng);
                if r.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let t = if field.p() == 2 {
                    // absolute trace map
                    let mut acc = r.clone();
                    let mut s = r.clone();
                    for _ in 1..field.e() {
                        s = s.mulmod(&s, h);
                        acc = acc.add(&s);
                    }
                    acc
                } else {
                    r.powmod((field.order() - 1) / 2, h)
                        .sub(&UPoly::constant(field.one()))
                };
                let g = h.gcd(&t);
                if let Some(gd) = g.degree() {
                    if gd > 0 && gd < d {
                        let other = h.divrem(&g).unwrap().0;
                        split_linear(&g, rng, out);
                        split_linear(&other, rng, out);
                        return;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &Field, ints: &[u32]) -> UPoly {
        UPoly::from_ints(field, ints)
    }

    #[test]
    fn divrem_reconstructs() {
        let f3 = Field::prime(3).unwrap();
        let a = poly(&f3, &[1, 2, 0, 1, 1]);
        let b = poly(&f3, &[2, 1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn roots_match_brute_force() {
        let f9 = Field::ext(3, 2).unwrap();
        // Y^4 - 1 splits over F_9
        let f = poly(&f9, &[2, 0, 0, 0, 1]);
        let mut got: Vec<u128> = f.roots().iter().map(|r| r.index()).collect();
        got.sort();
        let want: Vec<u128> = f9
            .enumerate()
            .unwrap()
            .filter(|x| f.eval(x).is_zero())
            .map(|x| x.index())
            .collect();
        assert_eq!(got, want);
        let f16 = Field::ext(2, 4).unwrap();
        let g = poly(&f16, &[1, 1, 1]);
        assert_eq!(g.roots().len(), 2);
    }

    #[test]
    fn ddf_examples() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(poly(&f2, &[0, 1, 1]).ddf_pattern().unwrap().degrees(), vec![1, 1]);
        // Y^4 + Y^2 + Y + 1 = (Y + 1)(Y^3 + Y^2 + 1)
        assert_eq!(poly(&f2, &[1, 1, 1, 0, 1]).ddf_pattern().unwrap().degrees(), vec![1, 3]);
        // Y^4 + Y + 1 is irreducible over F_2
        assert_eq!(poly(&f2, &[1, 1, 0, 0, 1]).ddf_pattern().unwrap().degrees(), vec![4]);
    }

    #[test]
    fn non_squarefree_reported_by_multiplicity() {
        let f2 = Field::prime(2).unwrap();
        // (Y+1)^2 * Y = Y^3 + Y
        let p = poly(&f2, &[0, 1, 0, 1]);
        let pat = p.ddf_pattern().unwrap();
        assert!(!pat.squarefree);
        assert_eq!(pat.blocks.get(&1), Some(&vec![1]));
        assert_eq!(pat.blocks.get(&2), Some(&vec![1]));
        let f3 = Field::prime(3).unwrap();
        // (Y+1)^3 (Y^2+1)
        let q = poly(&f3, &[1, 0, 1]).mul(&poly(&f3, &[1, 1]).powmod(3, &poly(&f3, &[0, 0, 0, 0, 0, 0, 0, 1])));
        let pat = q.ddf_pattern().unwrap();
        assert_eq!(pat.blocks.get(&1), Some(&vec![2]));
        assert_eq!(pat.blocks.get(&3), Some(&vec![1]));
    }

    #[test]
    fn ddf_matches_brute_factor_count() {
        // products of known irreducibles over F_3
        let f3 = Field::prime(3).unwrap();
        let a = poly(&f3, &[1, 0, 1]); // Y^2+1
        let b = poly(&f3, &[1, 1]);
        let c = poly(&f3, &[1, 2, 0, 1]); // Y^3+2Y+1, irreducible
        assert_eq!(a.mul(&b).mul(&c).ddf_pattern().unwrap().degrees(), vec![1, 2, 3]);
    }
}
