//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: sums and differences of products; products may be written with
//! `*`, `/` (by a nonzero constant-in-`Y` factor) or by juxtaposition;
//! powers take a nonnegative integer exponent. Identifiers are a letter,
//! an optional `_` and optional digits, so `t_1t_2` reads as `t1*t2`.
//! Atoms are identifiers, decimal integers, bracketed coefficient lists
//! `[c0,c1,...]` for extension-field constants, and parenthesized groups.

use crate::error::{Error, Result};
use crate::field::Field;

use super::{MPoly, RatFun, YPoly};

/// Default variable names `t1..tn`.
pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

/// Parses a polynomial in the variables `names` (no `Y`).
pub fn parse_mpoly(text: &str, field: &Field, names: &[String]) -> Result<MPoly> {
    let y = parse_any(text, field, names, None)?;
    match y.degree() {
        None => Ok(MPoly::zero(field, names.len())),
        Some(0) => y.coeffs()[0]
            .as_poly()
            .cloned()
            .ok_or_else(|| Error::Parse("expression is not a polynomial".into())),
        Some(_) => unreachable!("no Y variable"),
    }
}

/// Parses a polynomial in `y` whose coefficients are expressions in `names`.
pub fn parse_ypoly(text: &str, field: &Field, names: &[String], y: &str) -> Result<YPoly> {
    parse_any(text, field, names, Some(y))
}

fn parse_any(text: &str, field: &Field, names: &[String], y: Option<&str>) -> Result<YPoly> {
    let norm: Vec<String> = names.iter().map(|s| s.replace('_', "")).collect();
    let mut p = Parser {
        s: text.replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect(),
        i: 0,
        field,
        names: &norm,
        y: y.map(|s| s.replace('_', "")),
    };
    let v = p.expr()?;
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: Vec<char>,
    i: usize,
    field: &'a Field,
    names: &'a [String],
    y: Option<String>,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.i))
    }

    fn constant(&self, c: crate::field::FieldElem) -> YPoly {
        YPoly::monomial(RatFun::constant(c, self.nvars()), 0)
    }

    fn expr(&mut self) -> Result<YPoly> {
        let mut acc = YPoly::zero(self.field, self.nvars());
        let mut sign = match self.peek() {
            Some('-') => {
                self.i += 1;
                true
            }
            Some('+') => {
                self.i += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => sign = false,
                Some('-') => sign = true,
                _ => return Ok(acc),
            }
            self.i += 1;
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '[')
    }

    fn term(&mut self) -> Result<YPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.i += 1;
                    let d = self.factor()?;
                    if d.degree() != Some(0) {
                        return Err(self.err("division by a non-constant in Y"));
                    }
                    acc = acc.scale(&d.coeffs()[0].inv()?);
                }
                _ if self.starts_factor() => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<YPoly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.i += 1;
        let k = self.integer()?;
        let k = usize::try_from(k).map_err(|_| self.err("exponent too large"))?;
        Ok(pow(&base, k, self.field, self.nvars()))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        let s: String = self.s[start..self.i].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<YPoly> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some('[') => {
                let start = self.i;
                while self.peek().is_some_and(|c| c != ']') {
                    self.i += 1;
                }
                if self.peek() != Some(']') {
                    return Err(self.err("unterminated '['"));
                }
                self.i += 1;
                let lit: String = self.s[start..self.i].iter().collect();
                Ok(self.constant(self.field.parse_elem(&lit)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.field.p() as u64;
                Ok(self.constant(self.field.from_int((v % p) as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = String::from(c);
                self.i += 1;
                if self.peek() == Some('_') {
                    self.i += 1;
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    name.push(self.peek().unwrap());
                    self.i += 1;
                }
                if self.y.as_deref() == Some(name.as_str()) {
                    return Ok(YPoly::y(self.field, self.nvars()));
                }
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                Ok(YPoly::monomial(
                    MPoly::var(self.field, self.nvars(), idx).into(),
                    0,
                ))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

fn pow(base: &YPoly, k: usize, field: &Field, nvars: usize) -> YPoly {
    // Y^k and c*Y^j shortcuts keep large exponents cheap
    if let Some(d) = base.degree() {
        let lead = &base.coeffs()[d];
        if base.coeffs()[..d].iter().all(RatFun::is_zero) && lead.is_polynomial() {
            let c = lead.num().pow(k as u32);
            return YPoly::monomial(c.into(), d * k);
        }
    }
    let mut acc = YPoly::monomial(RatFun::one(field, nvars), 0);
    let mut b = base.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&b);
        }
        k >>= 1;
        if k > 0 {
            b = b.mul(&b);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let f3 = Field::prime(3).unwrap();
        let names = var_names(2);
        let p = parse_mpoly("t1^2 - t2^2", &f3, &names).unwrap();
        assert_eq!(p.to_string(), "t1^2+2*t2^2");
        assert_eq!(parse_mpoly(&p.to_string(), &f3, &names).unwrap(), p);
        let q = parse_mpoly("t_1t_2 + 2(t_1 + 1)", &f3, &names).unwrap();
        assert_eq!(q.to_string(), "t1*t2+2*t1+2");
        assert!(parse_mpoly("t3", &f3, &names).is_err());
        assert!(parse_mpoly("t1 +", &f3, &names).is_err());
    }

    #[test]
    fn parse_ypoly_forms() {
        let f2 = Field::prime(2).unwrap();
        let names = vec!["s".to_string()];
        let g1 = parse_ypoly("s+Y+Y^2+Y^4", &f2, &names, "Y").unwrap();
        assert_eq!(g1.degree(), Some(4));
        assert_eq!(g1.to_string(), "Y^4 + Y^2 + Y + t1");
        let f3 = Field::prime(3).unwrap();
        let f = parse_ypoly("Y^9 - t1(t1^2+t2^2)Y^3 + t2^2(t1^2+t2^2)Y", &f3, &var_names(2), "Y").unwrap();
        assert_eq!(f.degree(), Some(9));
        assert_eq!(f.coeff(3).to_string(), "2*t1^3+2*t1*t2^2");
        let f9 = Field::ext(3, 2).unwrap();
        let c = parse_mpoly("[0,1]*t1", &f9, &var_names(1)).unwrap();
        assert_eq!(c.to_string(), "[0,1]*t1");
    }
}
