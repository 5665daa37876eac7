//! Finite fields `F_{p^e}` in a fixed power basis.
//!
//! A [`Field`] is an interned, immutable context `(p, e, modulus)`. Elements
//! ([`FieldElem`]) carry their context and refuse to mix with elements of a
//! different field. The default modulus of `F_{p^e}` is the first monic
//! irreducible polynomial of degree `e` in the coefficient-tuple scan order
//! (`c_0` ranging fastest), which makes every derived output reproducible.
//!
//! Text form: prime-field elements are decimal integers, extension-field
//! elements are bracketed little-endian coefficient lists such as `[2,1]`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Deref, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::upoly::UPoly;

/// Default enumeration cap on field sizes.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 32;

/// Fields whose order needs more than this many bits are refused.
pub const MAX_ORDER_BITS: f64 = 120.0;

pub(crate) type Coeffs = SmallVec<[u32; 4]>;

pub struct FieldCtx {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    order: u128,
    // sub-field key (e, modulus) -> coefficients of the chosen root in this field
    embeddings: Mutex<HashMap<(u32, Vec<u32>), Coeffs>>,
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Monic modulus, constant term first, length `e + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `q = p^e`.
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }
}

/// Shared handle to an interned field context.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Deref for Field {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p == other.p && self.e == other.e && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.e.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.p, self.e, self.modulus)
        }
    }
}

type Registry = Mutex<HashMap<(u32, u32, Vec<u32>), Field>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn default_moduli() -> &'static Mutex<HashMap<(u32, u32), Vec<u32>>> {
    static DEF: OnceLock<Mutex<HashMap<(u32, u32), Vec<u32>>>> = OnceLock::new();
    DEF.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` (monic, degree `e`) is irreducible over `F_p` iff
/// `x^{p^e} = x mod f` and `gcd(x^{p^{e/r}} - x, f) = 1` for each prime `r | e`.
pub(crate) fn is_irreducible_over_prime(prime: &Field, monic: &[u32]) -> bool {
    let e = monic.len() - 1;
    if e == 1 {
        return true;
    }
    let f = UPoly::from_ints(prime, monic);
    if f.coeffs()[0].is_zero() {
        return false;
    }
    let x = UPoly::x(prime);
    // frob[i] = x^{p^i} mod f
    let mut frob = Vec::with_capacity(e + 1);
    frob.push(x.clone());
    for i in 1..=e {
        let next = frob[i - 1].powmod(prime.p as u128, &f);
        frob.push(next);
    }
    if frob[e] != x.rem(&f) {
        return false;
    }
    prime_factors(e as u32)
        .into_iter()
        .all(|r| frob[e / r as usize].sub(&x).gcd(&f).degree() == Some(0))
}

fn digits(mut idx: u128, p: u32, len: usize) -> Coeffs {
    let mut c = Coeffs::with_capacity(len);
    for _ in 0..len {
        c.push((idx % p as u128) as u32);
        idx /= p as u128;
    }
    c
}

impl Field {
    /// Builds (or fetches the interned) context for `F_{p^e}`.
    ///
    /// `modulus`, when given, is the full monic coefficient list of length
    /// `e + 1`, constant term first. Otherwise the default scan modulus is used.
    pub fn new(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let p = p as u32;
        if (e as f64) * (p as f64).log2() > MAX_ORDER_BITS {
            return Err(Error::CapExceeded(format!("F_{p}^{e} is too large")));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::BadModulus(format!(
                        "expected monic coefficient list of length {}",
                        e + 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus("coefficient out of range".into()));
                }
                if e > 1 && !is_irreducible_over_prime(&Field::prime(p)?, m) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => Self::default_modulus(p, e)?,
        };
        let key = (p, e, modulus.clone());
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&key) {
            return Ok(f.clone());
        }
        let order = (p as u128).pow(e);
        let field = Field(Arc::new(FieldCtx {
            p,
            e,
            modulus,
            order,
            embeddings: Mutex::new(HashMap::new()),
        }));
        reg.insert(key, field.clone());
        Ok(field)
    }

    /// The prime field `F_p` (modulus `Y`).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p as u64, 1, None)
    }

    /// `F_{p^e}` with the default scan modulus.
    pub fn ext(p: u32, e: u32) -> Result<Field> {
        Field::new(p as u64, e, None)
    }

    fn default_modulus(p: u32, e: u32) -> Result<Vec<u32>> {
        if let Some(m) = default_moduli().lock().unwrap().get(&(p, e)) {
            return Ok(m.clone());
        }
        let m = if e == 1 {
            vec![0, 1]
        } else {
            let prime = Field::prime(p)?;
            let total = (p as u128).pow(e);
            let mut found = None;
            for idx in 0..total {
                let mut m: Vec<u32> = digits(idx, p, e as usize).to_vec();
                m.push(1);
                if is_irreducible_over_prime(&prime, &m) {
                    found = Some(m);
                    break;
                }
            }
            found.ok_or_else(|| Error::Internal(format!("no irreducible of degree {e}")))?
        };
        default_moduli().lock().unwrap().insert((p, e), m.clone());
        Ok(m)
    }

    /// The prime subfield of this field.
    pub fn prime_field(&self) -> Field {
        Field::prime(self.p).expect("characteristic is prime")
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            c: SmallVec::from_elem(0, self.e as usize),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElem {
        let mut z = self.zero();
        z.c[0] = v.rem_euclid(self.p as i64) as u32;
        z
    }

    /// Element from little-endian power-basis coefficients (reduced mod p,
    /// missing high coefficients are zero).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.e as usize {
            return Err(Error::Parse(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.e
            )));
        }
        let mut z = self.zero();
        for (i, &v) in coeffs.iter().enumerate() {
            z.c[i] = v % self.p;
        }
        Ok(z)
    }

    /// The class of `Y` in `F_p[Y]/(modulus)`.
    pub fn generator(&self) -> FieldElem {
        if self.e == 1 {
            return self.from_int(-(self.modulus[0] as i64));
        }
        let mut z = self.zero();
        z.c[1] = 1;
        z
    }

    /// The `idx`-th element in enumeration order (`c_0` fastest).
    pub fn element_at(&self, idx: u128) -> FieldElem {
        FieldElem {
            field: self.clone(),
            c: digits(idx % self.order, self.p, self.e as usize),
        }
    }

    /// All `q` elements in enumeration order, refusing fields above `cap`.
    pub fn enumerate_capped(&self, cap: u128) -> Result<impl Iterator<Item = FieldElem> + '_> {
        if self.order > cap {
            return Err(Error::CapExceeded(format!(
                "enumerating {} elements (cap {cap})",
                self.order
            )));
        }
        Ok((0..self.order).map(move |i| self.element_at(i)))
    }

    pub fn enumerate(&self) -> Result<impl Iterator<Item = FieldElem> + '_> {
        self.enumerate_capped(DEFAULT_ENUM_CAP)
    }

    /// Parses the text form: a decimal integer (read mod p) or `[c0,c1,...]`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated element `{s}`")))?;
            let coeffs = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map(|v| v.rem_euclid(self.p as i64) as u32)
                        .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            self.from_coeffs(&coeffs)
        } else {
            let v: i64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad field element `{s}`")))?;
            Ok(self.from_int(v))
        }
    }

    fn check_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn mul_raw(&self, a: &[u32], b: &[u32]) -> Coeffs {
        let p = self.p as u64;
        let e = self.e as usize;
        if e == 1 {
            return smallvec::smallvec![((a[0] as u64 * b[0] as u64) % p) as u32];
        }
        let mut prod = vec![0u64; 2 * e - 1];
        if p < (1 << 16) {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] += x as u64 * y as u64;
                }
            }
            for v in prod.iter_mut() {
                *v %= p;
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64 % p) % p;
                }
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..e {
                let m = self.modulus[i] as u64;
                if m != 0 {
                    prod[k - e + i] = (prod[k - e + i] + c * (p - m)) % p;
                }
            }
        }
        prod[..e].iter().map(|&v| v as u32).collect()
    }

    /// Root of `sub`'s modulus in `self` used to embed `sub`: the first root
    /// in enumeration order, cached per pair.
    pub fn embedding_root(&self, sub: &Field) -> Result<FieldElem> {
        if sub.p != self.p {
            return Err(Error::IncompatibleFields(format!(
                "characteristic {} vs {}",
                sub.p, self.p
            )));
        }
        if self.e % sub.e != 0 {
            return Err(Error::IncompatibleFields(format!(
                "degree {} does not divide {}",
                sub.e, self.e
            )));
        }
        if sub == self {
            return Ok(self.generator());
        }
        let key = (sub.e, sub.modulus.clone());
        if let Some(c) = self.embeddings.lock().unwrap().get(&key) {
            return Ok(FieldElem {
                field: self.clone(),
                c: c.clone(),
            });
        }
        let root = if sub.e == 1 {
            self.from_int(-(sub.modulus[0] as i64))
        } else {
            let ints: Vec<u32> = sub.modulus.clone();
            let f = UPoly::from_ints(&self.prime_field(), &ints).embed_coeffs(self)?;
            let roots = f.roots();
            roots
                .into_iter()
                .min_by_key(|r| r.index())
                .ok_or_else(|| Error::Internal("subfield modulus has no root".into()))?
        };
        self.embeddings
            .lock()
            .unwrap()
            .insert(key, root.c.clone());
        Ok(root)
    }
}

/// An element of a finite field, tagged with its context.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    c: Coeffs,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "[")?;
            for (i, v) in self.c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Little-endian power-basis coefficients.
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    /// Position in the enumeration order of the field.
    pub fn index(&self) -> u128 {
        self.c
            .iter()
            .rev()
            .fold(0u128, |acc, &v| acc * self.field.p as u128 + v as u128)
    }

    /// Checked arithmetic: rejects mixed fields and division by zero.
    pub fn arith(&self, other: &FieldElem, op: ArithOp) -> Result<FieldElem> {
        self.field.check_same(&other.field)?;
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self.mul(&other.inv()?),
        })
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.e == 1 {
            // extended Euclid on integers
            let p = self.field.p as i64;
            let (mut r0, mut r1) = (p, self.c[0] as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let t = r0 / r1;
                (r0, r1) = (r1, r0 - t * r1);
                (s0, s1) = (s1, s0 - t * s1);
            }
            return Ok(self.field.from_int(s0));
        }
        Ok(self.pow(self.field.order - 2))
    }

    pub fn pow(&self, mut k: u128) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `x^q` for the given `q` (a power of the characteristic).
    pub fn frobenius(&self, q: u128) -> FieldElem {
        self.pow(q)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u128> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.order - 1;
        let mut ord = n;
        let mut m = n;
        let mut d = 2u128;
        while d * d <= m {
            if m % d == 0 {
                while m % d == 0 {
                    m /= d;
                }
                while ord % d == 0 && self.pow(ord / d).is_one() {
                    ord /= d;
                }
            }
            d += 1;
        }
        if m > 1 && self.pow(ord / m).is_one() {
            ord /= m;
        }
        Some(ord)
    }

    /// Image under the canonical embedding into `sup`.
    pub fn embed(&self, sup: &Field) -> Result<FieldElem> {
        Embedding::canonical(&self.field, sup)?.apply(self)
    }

    /// True when `self` lies in the subfield of order `q` (i.e. `x^q = x`).
    pub fn in_subfield(&self, q: u128) -> bool {
        self.pow(q) == *self
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        assert!(self.field == rhs.field, "field mismatch in add");
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(rhs.c.iter())
            .map(|(&a, &b)| {
                let s = a as u64 + b as u64;
                (if s >= p as u64 { s - p as u64 } else { s }) as u32
            })
            .collect();
        FieldElem {
            field: self.field.clone(),
            c,
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        assert!(self.field == rhs.field, "field mismatch in sub");
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(rhs.c.iter())
            .map(|(&a, &b)| if a >= b { a - b } else { a + (p - b) })
            .collect();
        FieldElem {
            field: self.field.clone(),
            c,
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        assert!(self.field == rhs.field, "field mismatch in mul");
        FieldElem {
            c: self.field.mul_raw(&self.c, &rhs.c),
            field: self.field.clone(),
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.field.p;
        FieldElem {
            field: self.field.clone(),
            c: self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// A ring embedding `sub -> sup` fixed by the image of `sub`'s generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Field,
    sup: Field,
    root: FieldElem,
    // root^i for i < e_sub
    powers: Vec<FieldElem>,
}

impl Embedding {
    /// The embedding chosen by [`Field::embedding_root`].
    pub fn canonical(sub: &Field, sup: &Field) -> Result<Embedding> {
        let root = sup.embedding_root(sub)?;
        Ok(Self::from_root(sub, sup, root))
    }

    fn from_root(sub: &Field, sup: &Field, root: FieldElem) -> Embedding {
        let mut powers = Vec::with_capacity(sub.e as usize);
        let mut acc = sup.one();
        for _ in 0..sub.e {
            powers.push(acc.clone());
            acc = &acc * &root;
        }
        Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            root,
            powers,
        }
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    /// Image of the generator of `sub`.
    pub fn root(&self) -> &FieldElem {
        &self.root
    }

    pub fn apply(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.field != self.sub {
            return Err(Error::FieldMismatch);
        }
        if self.sub.e == 1 {
            return Ok(self.sup.from_int(a.c[0] as i64));
        }
        let mut acc = self.sup.zero();
        for (i, &v) in a.c.iter().enumerate() {
            if v != 0 {
                acc = &acc + &(&self.powers[i] * &self.sup.from_int(v as i64));
            }
        }
        Ok(acc)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if self.sup != next.sub {
            return Err(Error::FieldMismatch);
        }
        let root = next.apply(&self.root)?;
        Ok(Self::from_root(&self.sub, &next.sup, root))
    }
}

/// Canonical embedding of `a` from its own field into `sup`.
pub fn embed(a: &FieldElem, sub: &Field, sup: &Field) -> Result<FieldElem> {
    if a.field() != sub {
        return Err(Error::FieldMismatch);
    }
    a.embed(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(p: u32, f: &[u32]) -> bool {
        // trial division by all monic polynomials of degree 1..=deg/2
        let prime = Field::prime(p).unwrap();
        let fp = UPoly::from_ints(&prime, f);
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for idx in 0..(p as u128).pow(d as u32) {
                let mut g: Vec<u32> = digits(idx, p, d).to_vec();
                g.push(1);
                let gp = UPoly::from_ints(&prime, &g);
                if fp.rem(&gp).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn default_moduli_match_scan() {
        let f9 = Field::ext(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(3, 0, None), Err(Error::ZeroDegree)));
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for &(p, maxdeg) in &[(2u32, 6usize), (3, 4), (5, 3)] {
            let prime = Field::prime(p).unwrap();
            for deg in 2..=maxdeg {
                for idx in 0..(p as u128).pow(deg as u32) {
                    let mut f: Vec<u32> = digits(idx, p, deg).to_vec();
                    f.push(1);
                    assert_eq!(
                        is_irreducible_over_prime(&prime, &f),
                        brute_irreducible(p, &f),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn default_modulus_is_first_irreducible() {
        for &(p, e) in &[(2u32, 2u32), (2, 3), (2, 4), (3, 3), (5, 2)] {
            let f = Field::ext(p, e).unwrap();
            let first = (0..(p as u128).pow(e))
                .map(|idx| {
                    let mut m: Vec<u32> = digits(idx, p, e as usize).to_vec();
                    m.push(1);
                    m
                })
                .find(|m| brute_irreducible(p, m))
                .unwrap();
            assert_eq!(f.modulus(), first.as_slice());
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            Field::new(3, 2, Some(&[2, 0, 1])),
            Err(Error::ReducibleModulus(3))
        ));
        assert!(Field::new(3, 2, Some(&[1, 0])).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(&f3.from_int(2) * &f3.from_int(2), f3.one());
        assert_eq!(
            f3.from_int(1).arith(&f3.from_int(2), ArithOp::Div).unwrap(),
            f3.from_int(2)
        );
        assert_eq!(
            f3.one().arith(&f3.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        let f9 = Field::ext(3, 2).unwrap();
        let w = f9.generator();
        assert_eq!(&w * &w, f9.from_int(2));
        assert_eq!(w.pow(3), &f9.from_int(2) * &w);
        assert_eq!(f3.from_int(2).pow(9), f3.from_int(2));
        assert_eq!(f9.from_int(2).pow(0), f9.one());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f3.one().arith(&f5.one(), ArithOp::Add), Err(Error::FieldMismatch));
    }

    #[test]
    fn enumeration_order() {
        let f3 = Field::prime(3).unwrap();
        let els: Vec<_> = f3.enumerate().unwrap().map(|x| x.to_string()).collect();
        assert_eq!(els, ["0", "1", "2"]);
        let f9 = Field::ext(3, 2).unwrap();
        let els: Vec<_> = f9.enumerate().unwrap().collect();
        assert_eq!(els.len(), 9);
        assert!(els[0].is_zero() && els[1].is_one());
        for (i, a) in els.iter().enumerate() {
            assert_eq!(a.index(), i as u128);
        }
        let big = Field::ext(2, 40).unwrap();
        assert!(big.enumerate().is_err());
    }

    #[test]
    fn frobenius_is_ring_endomorphism_on_f27() {
        let f = Field::ext(3, 3).unwrap();
        let els: Vec<_> = f.enumerate().unwrap().collect();
        for a in &els {
            for b in &els {
                assert_eq!((a + b).pow(3), &a.pow(3) + &b.pow(3));
                assert_eq!((a * b).pow(3), &a.pow(3) * &b.pow(3));
            }
            if !a.is_zero() {
                assert!((a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn embedding_f9_into_f81() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::ext(3, 2).unwrap();
        let f81 = Field::ext(3, 4).unwrap();
        assert_eq!(embed(&f3.from_int(2), &f3, &f9).unwrap(), f9.from_int(2));
        let w = f9.generator();
        let img = w.embed(&f81).unwrap();
        let brute = f81
            .enumerate()
            .unwrap()
            .find(|z| (&(z * z) + &f81.one()).is_zero())
            .unwrap();
        assert_eq!(img, brute);
        let els9: Vec<_> = f9.enumerate().unwrap().collect();
        for a in &els9 {
            for b in &els9 {
                let (ea, eb) = (a.embed(&f81).unwrap(), b.embed(&f81).unwrap());
                assert_eq!((a + b).embed(&f81).unwrap(), &ea + &eb);
                assert_eq!((a * b).embed(&f81).unwrap(), &ea * &eb);
            }
        }
        let f27 = Field::ext(3, 3).unwrap();
        assert!(matches!(w.embed(&f27), Err(Error::IncompatibleFields(_))));
    }

    #[test]
    fn subfield_test_matches_embedding_image() {
        let f9 = Field::ext(3, 2).unwrap();
        let f81 = Field::ext(3, 4).unwrap();
        let image: std::collections::HashSet<u128> = f9
            .enumerate()
            .unwrap()
            .map(|a| a.embed(&f81).unwrap().index())
            .collect();
        for z in f81.enumerate().unwrap() {
            assert_eq!(z.in_subfield(9), image.contains(&z.index()));
        }
    }

    #[test]
    fn text_round_trip() {
        let f9 = Field::ext(3, 2).unwrap();
        let a = f9.parse_elem("[2,1]").unwrap();
        assert_eq!(a.to_string(), "[2,1]");
        assert_eq!(f9.parse_elem("5").unwrap(), f9.from_int(2));
        assert!(f9.parse_elem("[1,2,0]").is_err());
    }

    #[test]
    fn element_orders() {
        let f9 = Field::ext(3, 2).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for a in f9.enumerate().unwrap().skip(1) {
            *counts.entry(a.order().unwrap()).or_insert(0) += 1;
        }
        assert_eq!(counts, [(1, 1), (2, 1), (4, 2), (8, 4)].into_iter().collect());
    }
}
