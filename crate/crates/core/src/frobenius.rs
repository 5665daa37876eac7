//! Frobenius modules `X -> A X^(q)`, cyclic vectors, companion forms and
//! the additive polynomials read off them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};
use crate::linalg::FMat;
use crate::multipoly::{parse_mpoly, var_names, MPoly, MatRF, RatFun, YPoly};
use crate::upoly::UPoly;

/// Largest `q^n` for which an additive polynomial is expanded densely.
pub const DENSE_DEGREE_CAP: u128 = 1 << 16;

/// Bound on cyclic-vector candidates tried before giving up.
pub const CYCLIC_CANDIDATE_CAP: usize = 100_000;

/// Frobenius module over `F_q(t)` given by an invertible matrix `A(t)`.
#[derive(Debug, Clone)]
pub struct SymbolicModule {
    a: MatRF,
    det: RatFun,
}

impl SymbolicModule {
    pub fn new(a: MatRF) -> Result<Self> {
        let det = a.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(SymbolicModule { a, det })
    }

    pub fn matrix(&self) -> &MatRF {
        &self.a
    }

    pub fn det(&self) -> &RatFun {
        &self.det
    }

    pub fn rank(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn nvars(&self) -> usize {
        self.a.nvars()
    }

    /// `phi(x) = A x^(q)` on a column.
    pub fn apply(&self, x: &[RatFun]) -> Result<Vec<RatFun>> {
        let col = MatRF::from_cols(&[x.to_vec()])?.qtwist()?;
        Ok(self.a.mul(&col)?.col(0))
    }

    /// `N = (v | phi(v) | ... | phi^{n-1}(v))`.
    pub fn cyclic_matrix(&self, v: &[RatFun]) -> Result<MatRF> {
        let n = self.rank();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!("vector of length {} for rank {n}", v.len())));
        }
        let mut cols = vec![v.to_vec()];
        while cols.len() < n {
            let next = self.apply(cols.last().unwrap())?;
            cols.push(next);
        }
        MatRF::from_cols(&cols)
    }

    /// The module at a point `xi` over an extension `L` of `F_q`.
    pub fn specialize(&self, xi: &[FieldElem], emb: &Embedding) -> Result<ConcreteModule> {
        if self.det.eval_with(xi, emb)?.is_zero() {
            return Err(Error::BadPoint("det A vanishes".into()));
        }
        ConcreteModule::new(self.field(), self.a.eval_with(xi, emb)?)
    }
}

/// Frobenius module `X -> B X^(q)` over a finite extension `L` of `F_q`.
#[derive(Debug, Clone)]
pub struct ConcreteModule {
    base: Field,
    b: FMat,
}

impl ConcreteModule {
    /// `base` is `F_q`; `b` is an invertible matrix over an extension of it.
    pub fn new(base: &Field, b: FMat) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::DimensionMismatch("module matrix is not square".into()));
        }
        if b.field().p() != base.p() || b.field().e() % base.e() != 0 {
            return Err(Error::IncompatibleFields("matrix field does not contain F_q".into()));
        }
        if b.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(ConcreteModule {
            base: base.clone(),
            b,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn q(&self) -> u128 {
        self.base.order()
    }

    pub fn field(&self) -> &Field {
        self.b.field()
    }

    pub fn matrix(&self) -> &FMat {
        &self.b
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    pub fn apply(&self, x: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let q = self.q();
        let xq: Vec<_> = x.iter().map(|v| v.pow(q)).collect();
        self.b.mul_vec(&xq)
    }

    pub fn cyclic_matrix(&self, v: &[FieldElem]) -> Result<FMat> {
        let mut cols = vec![v.to_vec()];
        while cols.len() < self.rank() {
            let next = self.apply(cols.last().unwrap())?;
            cols.push(next);
        }
        FMat::from_cols(self.field(), &cols)
    }

    /// `B* = (B^-1)^T`, with the same base field.
    pub fn star(&self) -> Result<ConcreteModule> {
        ConcreteModule::new(&self.base, star_fmat(&self.b)?)
    }
}

/// `(B^-1)^T` over a finite field.
pub fn star_fmat(b: &FMat) -> Result<FMat> {
    Ok(b.inverse()?.transpose())
}

/// `(B^-1)^T` over `F_q(t)`.
pub fn star(b: &MatRF) -> Result<MatRF> {
    Ok(b.inv()?.transpose())
}

/// A cyclic vector and its matrix `N`.
#[derive(Debug, Clone)]
pub struct CyclicVector {
    pub v: Vec<RatFun>,
    pub n: MatRF,
    pub det_n: RatFun,
    /// Candidates examined, counting the accepted one.
    pub tried: usize,
}

/// Validates an explicit vector, or scans for the first cyclic vector.
///
/// Scan order: nonzero constant vectors, read as base-`q` numbers with the
/// leftmost coordinate most significant and digits in field enumeration
/// order; then vectors over the alphabet `0, 1, t1, ..., tm` (in that
/// order, leftmost most significant) that contain at least one variable.
pub fn cyclic_vector(fm: &SymbolicModule, v_override: Option<&[RatFun]>) -> Result<CyclicVector> {
    if let Some(v) = v_override {
        let n = fm.cyclic_matrix(v)?;
        let det_n = n.det()?;
        if det_n.is_zero() {
            return Err(Error::NoCyclicVector(1));
        }
        return Ok(CyclicVector {
            v: v.to_vec(),
            n,
            det_n,
            tried: 1,
        });
    }
    let (field, m, rank) = (fm.field().clone(), fm.nvars(), fm.rank());
    let mut tried = 0;
    let mut attempt = |v: Vec<RatFun>| -> Result<Option<CyclicVector>> {
        tried += 1;
        let n = fm.cyclic_matrix(&v)?;
        let det_n = n.det()?;
        Ok((!det_n.is_zero()).then(|| CyclicVector { v, n, det_n, tried }))
    };
    let q = field.order();
    let constants: Vec<RatFun> = (0..q.min(CYCLIC_CANDIDATE_CAP as u128))
        .map(|i| RatFun::constant(field.element_at(i), m))
        .collect();
    let total = q.checked_pow(rank as u32).unwrap_or(u128::MAX);
    for idx in 1..total.min(CYCLIC_CANDIDATE_CAP as u128) {
        let v = digits_msb(idx, q, rank).iter().map(|&d| constants[d as usize].clone()).collect();
        if let Some(cv) = attempt(v)? {
            return Ok(cv);
        }
    }
    let mut alphabet = vec![RatFun::zero(&field, m), RatFun::one(&field, m)];
    alphabet.extend((0..m).map(|i| RatFun::from(MPoly::var(&field, m, i))));
    let a = alphabet.len() as u128;
    let total = a.checked_pow(rank as u32).unwrap_or(u128::MAX);
    for idx in 0..total.min(CYCLIC_CANDIDATE_CAP as u128) {
        let ds = digits_msb(idx, a, rank);
        if ds.iter().all(|&d| d < 2) {
            continue;
        }
        let v = ds.iter().map(|&d| alphabet[d as usize].clone()).collect();
        if let Some(cv) = attempt(v)? {
            return Ok(cv);
        }
    }
    Err(Error::NoCyclicVector(tried))
}

fn digits_msb(mut idx: u128, base: u128, len: usize) -> Vec<u128> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    d
}

/// Cyclic basis data `(v, N, Delta)` with `Delta = N^-1 A N^(q)`.
#[derive(Debug, Clone)]
pub struct CompanionForm {
    pub v: Vec<RatFun>,
    pub n: MatRF,
    pub det_n: RatFun,
    pub delta: MatRF,
    /// Last column `a_0, ..., a_{n-1}` of `Delta`.
    pub lastcol: Vec<RatFun>,
}

/// Computes `Delta` over the single denominator `det N` and checks its shape.
pub fn companion_form(fm: &SymbolicModule, cv: &CyclicVector) -> Result<CompanionForm> {
    let n = fm.rank();
    for k in 0..n.saturating_sub(1) {
        let next = fm.apply(&cv.n.col(k))?;
        if next != cv.n.col(k + 1) {
            return Err(Error::Internal("column recurrence of N fails".into()));
        }
    }
    let num = cv.n.adjugate()?.mul(&fm.a)?.mul(&cv.n.qtwist()?)?;
    let delta = num.scale(&cv.det_n.inv()?);
    for r in 0..n {
        for c in 0..n - 1 {
            let x = delta.get(r, c);
            let ok = if r == c + 1 { x.is_one() } else { x.is_zero() };
            if !ok {
                return Err(Error::Internal(format!("Delta is not in companion shape at ({r},{c})")));
            }
        }
    }
    let lastcol = delta.col(n - 1);
    Ok(CompanionForm {
        v: cv.v.clone(),
        n: cv.n.clone(),
        det_n: cv.det_n.clone(),
        delta,
        lastcol,
    })
}

/// `f(Y) = Y^(q^n) - a_{n-1} Y^(q^(n-1)) - ... - a_0 Y` over `F_q(t)`,
/// together with the determinants that must not vanish at a specialization.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditivePolynomial {
    pub q: u128,
    pub coeffs: Vec<RatFun>,
    pub det_n: RatFun,
    pub det_a: RatFun,
}

pub fn emit_additive_poly(cf: &CompanionForm, det_a: &RatFun) -> Result<AdditivePolynomial> {
    let a0 = cf.lastcol.first().ok_or_else(|| Error::Internal("empty companion form".into()))?;
    if a0.is_zero() {
        return Err(Error::Inseparable);
    }
    Ok(AdditivePolynomial {
        q: cf.delta.field().order(),
        coeffs: cf.lastcol.clone(),
        det_n: cf.det_n.clone(),
        det_a: det_a.clone(),
    })
}

/// Full pipeline output for one module.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub module: SymbolicModule,
    pub companion: CompanionForm,
    pub poly: AdditivePolynomial,
}

impl Pipeline {
    pub fn run(a: MatRF, v_override: Option<&[RatFun]>) -> Result<Pipeline> {
        let module = SymbolicModule::new(a)?;
        let cv = cyclic_vector(&module, v_override)?;
        let companion = companion_form(&module, &cv)?;
        let poly = emit_additive_poly(&companion, module.det())?;
        Ok(Pipeline {
            module,
            companion,
            poly,
        })
    }

    /// `det Delta = det A * (det N)^(q-1)` and `det Delta = (-1)^(n-1) a_0`.
    pub fn check_determinants(&self) -> Result<bool> {
        let dd = self.companion.delta.det()?;
        let q = self.module.field().order();
        let dn = &self.companion.det_n;
        let pow = (1..q).fold(RatFun::one(dn.field(), dn.nvars()), |acc, _| acc.mul(dn));
        let lhs = self.module.det().mul(&pow);
        let n = self.module.rank();
        let a0 = &self.poly.coeffs[0];
        let signed = if n % 2 == 1 { a0.clone() } else { a0.neg() };
        Ok(dd == lhs && dd == signed)
    }

    /// Concrete module and concrete polynomial at `xi`; rejects points where
    /// `det A` or `det N` vanish.
    pub fn specialize(&self, xi: &[FieldElem], emb: &Embedding) -> Result<(ConcreteModule, ConcreteAdditive)> {
        let f = self.poly.specialize(xi, emb)?;
        let m = self.module.specialize(xi, emb)?;
        Ok((m, f))
    }
}

impl AdditivePolynomial {
    pub fn field(&self) -> &Field {
        self.det_a.field()
    }

    pub fn nvars(&self) -> usize {
        self.det_a.nvars()
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// `q^n`, the `Y`-degree.
    pub fn degree(&self) -> Option<u128> {
        self.q.checked_pow(self.rank() as u32)
    }

    /// Dense form in `Y`; refused beyond [`DENSE_DEGREE_CAP`].
    pub fn to_ypoly(&self) -> Result<YPoly> {
        let deg = self
            .degree()
            .filter(|&d| d <= DENSE_DEGREE_CAP)
            .ok_or_else(|| Error::CapExceeded("additive polynomial degree too large to expand".into()))?;
        let (f, m) = (self.field(), self.nvars());
        let mut c = vec![RatFun::zero(f, m); deg as usize + 1];
        c[deg as usize] = RatFun::one(f, m);
        let mut qi = 1u128;
        for a in &self.coeffs {
            c[qi as usize] = a.neg();
            qi *= self.q;
        }
        Ok(YPoly::from_coeffs(f, m, c))
    }

    /// `Y^9 - (a1)*Y^3 - (a0)*Y`, omitting zero coefficients.
    pub fn render(&self) -> String {
        let names = var_names(self.nvars());
        let n = self.rank();
        let mut s = format!("Y^{}", self.q.pow(n as u32));
        for i in (0..n).rev() {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            let ypow = match i {
                0 => "Y".to_string(),
                _ => format!("Y^{}", self.q.pow(i as u32)),
            };
            let simple = a.is_polynomial() && a.num().len() == 1;
            if a.is_one() {
                s.push_str(&format!(" - {ypow}"));
            } else if simple {
                s.push_str(&format!(" - {}*{ypow}", a.render(&names)));
            } else {
                s.push_str(&format!(" - ({})*{ypow}", a.render(&names)));
            }
        }
        s
    }

    /// Coefficients at `xi`; fails when `det N` or `det A` vanish there.
    pub fn specialize(&self, xi: &[FieldElem], emb: &Embedding) -> Result<ConcreteAdditive> {
        if xi.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: xi.len(),
            });
        }
        if self.det_a.eval_with(xi, emb)?.is_zero() {
            return Err(Error::BadPoint("det A vanishes".into()));
        }
        if self.det_n.eval_with(xi, emb)?.is_zero() {
            return Err(Error::BadPoint("evaluation point annihilates det N".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.eval_with(xi, emb))
            .collect::<Result<Vec<_>>>()?;
        ConcreteAdditive::new(emb.sub(), coeffs)
    }

    pub fn to_json(&self) -> EmittedPoly {
        let f = self.field();
        let names = var_names(self.nvars());
        let pair = |r: &RatFun| [r.num().render(&names), r.den().render(&names)];
        EmittedPoly {
            p: f.p(),
            e: f.e(),
            modulus: f.modulus().to_vec(),
            q: self.q,
            n: self.rank(),
            nvars: self.nvars(),
            coeffs: self.coeffs.iter().map(pair).collect(),
            det_n: pair(&self.det_n),
            det_a: pair(&self.det_a),
            poly: self.render(),
        }
    }

    pub fn from_json(e: &EmittedPoly) -> Result<AdditivePolynomial> {
        let field = Field::new(e.p as u64, e.e, Some(&e.modulus))?;
        if field.order() != e.q {
            return Err(Error::Parse(format!("q = {} does not match the field", e.q)));
        }
        if e.coeffs.len() != e.n {
            return Err(Error::Parse("coefficient count differs from n".into()));
        }
        let names = var_names(e.nvars);
        let rf = |pair: &[String; 2]| {
            RatFun::new(
                parse_mpoly(&pair[0], &field, &names)?,
                parse_mpoly(&pair[1], &field, &names)?,
            )
        };
        Ok(AdditivePolynomial {
            q: e.q,
            coeffs: e.coeffs.iter().map(rf).collect::<Result<_>>()?,
            det_n: rf(&e.det_n)?,
            det_a: rf(&e.det_a)?,
        })
    }
}

/// Serialized form of an [`AdditivePolynomial`]; fractions are `[num, den]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmittedPoly {
    pub q: u128,
    pub n: usize,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub nvars: usize,
    pub coeffs: Vec<[String; 2]>,
    pub det_n: [String; 2],
    pub det_a: [String; 2],
    pub poly: String,
}

/// `f(Y) = Y^(q^n) - sum a_i Y^(q^i)` with `a_i` in a finite field `L ⊇ F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteAdditive {
    base: Field,
    coeffs: Vec<FieldElem>,
}

impl ConcreteAdditive {
    pub fn new(base: &Field, coeffs: Vec<FieldElem>) -> Result<Self> {
        let Some(a0) = coeffs.first() else {
            return Err(Error::DimensionMismatch("no coefficients".into()));
        };
        let l = a0.field();
        if coeffs.iter().any(|c| c.field() != l) {
            return Err(Error::FieldMismatch);
        }
        if l.p() != base.p() || l.e() % base.e() != 0 {
            return Err(Error::IncompatibleFields("coefficient field does not contain F_q".into()));
        }
        Ok(ConcreteAdditive {
            base: base.clone(),
            coeffs,
        })
    }

    /// Reads an additive polynomial from a dense one over `L`, checking shape.
    pub fn from_upoly(base: &Field, f: &UPoly) -> Result<Self> {
        let q = base.order();
        let l = f.field().clone();
        let deg = f.degree().ok_or_else(|| Error::Parse("zero polynomial".into()))?;
        let mut n = 0u32;
        let mut qn = 1u128;
        while qn < deg as u128 {
            qn *= q;
            n += 1;
        }
        if qn != deg as u128 || !f.lead().unwrap().is_one() || n == 0 {
            return Err(Error::Parse(format!("not a monic additive polynomial of degree q^n with q = {q}")));
        }
        let mut coeffs = vec![l.zero(); n as usize];
        let mut qi = 1u128;
        let mut slot = 0;
        for (k, c) in f.coeffs().iter().enumerate().take(deg) {
            if k as u128 == qi {
                coeffs[slot] = -c;
                slot += 1;
                qi *= q;
            } else if !c.is_zero() {
                return Err(Error::Parse(format!("Y^{k} is not a q-power term")));
            }
        }
        Self::new(base, coeffs)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn q(&self) -> u128 {
        self.base.order()
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_separable(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// `f(y)` for `y` in an extension, through the embedding `emb: L -> L'`.
    pub fn eval_with(&self, y: &FieldElem, emb: &Embedding) -> Result<FieldElem> {
        let q = self.q();
        let mut acc = y.pow(q.pow(self.rank() as u32));
        let mut yq = y.clone();
        for a in &self.coeffs {
            acc = &acc - &(&emb.apply(a)? * &yq);
            yq = yq.pow(q);
        }
        Ok(acc)
    }

    pub fn to_upoly(&self) -> Result<UPoly> {
        let deg = self
            .q()
            .checked_pow(self.rank() as u32)
            .filter(|&d| d <= DENSE_DEGREE_CAP)
            .ok_or_else(|| Error::CapExceeded("additive polynomial degree too large to expand".into()))?;
        let l = self.field();
        let mut c = vec![l.zero(); deg as usize + 1];
        c[deg as usize] = l.one();
        let mut qi = 1u128;
        for a in &self.coeffs {
            c[qi as usize] = -a;
            qi *= self.q();
        }
        Ok(UPoly::from_coeffs(l, c))
    }
}

impl fmt::Display for ConcreteAdditive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_upoly() {
            Ok(u) => write!(f, "{u}"),
            Err(_) => write!(f, "<additive polynomial of degree {}^{}>", self.q(), self.rank()),
        }
    }
}

/// `T^(q^k) - sum_{j<k} c_j T^(q^j)` annihilating all solution coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub q: u128,
    pub k: usize,
    pub coeffs: Vec<FieldElem>,
}

impl IntegralityCertificate {
    /// Value at `x`, with the coefficients mapped through `emb`.
    pub fn eval_with(&self, x: &FieldElem, emb: &Embedding) -> Result<FieldElem> {
        let mut acc = x.clone();
        let mut powers = Vec::with_capacity(self.k + 1);
        for _ in 0..=self.k {
            powers.push(acc.clone());
            acc = acc.pow(self.q);
        }
        let mut v = powers[self.k].clone();
        for (c, xp) in self.coeffs.iter().zip(&powers) {
            v = &v - &(&emb.apply(c)? * xp);
        }
        Ok(v)
    }

    pub fn render(&self) -> String {
        let mut s = format!("T^{}", self.q.pow(self.k as u32));
        for j in (0..self.k).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let tp = match j {
                0 => "T".to_string(),
                _ => format!("T^{}", self.q.pow(j as u32)),
            };
            if c.is_one() {
                s.push_str(&format!(" - {tp}"));
            } else {
                s.push_str(&format!(" - {c}*{tp}"));
            }
        }
        s
    }
}

/// First linear dependence `B_k = sum c_j B_j` among `B_0 = I`,
/// `B_k = (A^-1)^(q^(k-1)) B_{k-1}` over the module's field.
pub fn integrality_certificate(fm: &ConcreteModule) -> Result<IntegralityCertificate> {
    let l = fm.field().clone();
    let n = fm.rank();
    let q = fm.q();
    let ainv = fm.matrix().inverse()?;
    let mut bs: Vec<Vec<FieldElem>> = vec![FMat::identity(&l, n).entries().to_vec()];
    let mut b = FMat::identity(&l, n);
    let mut twisted = ainv;
    for k in 1..=n * n + 1 {
        b = twisted.mul(&b)?;
        twisted = twisted.twist(q);
        let target = b.entries().to_vec();
        let sys = FMat::from_cols(&l, &bs)?;
        if let Some(c) = sys.solve(&target)? {
            return Ok(IntegralityCertificate { q, k, coeffs: c });
        }
        bs.push(target);
    }
    Err(Error::Internal("no dependence within n^2 + 1 steps".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::catalog;
    use crate::multipoly::parse_ypoly;

    fn ints(field: &Field, m: usize, v: &[i64]) -> Vec<RatFun> {
        v.iter().map(|&x| RatFun::constant(field.from_int(x), m)).collect()
    }

    fn c8() -> (Algebra, MatRF) {
        let alg = Algebra::from_spec(&catalog::c8_spec()).unwrap();
        let a = alg.generic_matrix().unwrap().0;
        (alg, a)
    }

    #[test]
    fn c8_pipeline() {
        let (alg, a) = c8();
        let f3 = alg.field().clone();
        let v = ints(&f3, 2, &[1, 0]);
        let p = Pipeline::run(a, Some(&v)).unwrap();
        assert_eq!(format!("{:?}", p.companion.n), "[1, t1; 0, t2]");
        assert_eq!(
            format!("{:?}", p.companion.delta),
            "[0, 2*t1^2*t2^2+2*t2^4; 1, t1^3+t1*t2^2]"
        );
        let expected = parse_ypoly(catalog::C8_F, &f3, &var_names(2), "Y").unwrap();
        assert_eq!(p.poly.to_ypoly().unwrap(), expected);
        assert!(p.check_determinants().unwrap());
        assert_eq!(
            p.poly.render(),
            "Y^9 - (t1^3+t1*t2^2)*Y^3 - (2*t1^2*t2^2+2*t2^4)*Y"
        );
    }

    #[test]
    fn c8_other_vector() {
        let (alg, a) = c8();
        let f3 = alg.field().clone();
        let m = SymbolicModule::new(a).unwrap();
        let cv = cyclic_vector(&m, Some(&ints(&f3, 2, &[0, 1]))).unwrap();
        assert_eq!(format!("{:?}", cv.n), "[0, 2*t2; 1, t1]");
        let cf = companion_form(&m, &cv).unwrap();
        assert_eq!(cf.lastcol.len(), 2);
        // default scan picks (0,1) first: leftmost digit most significant
        let scanned = cyclic_vector(&m, None).unwrap();
        assert_eq!(scanned.v, ints(&f3, 2, &[0, 1]));
    }

    #[test]
    fn rank_one() {
        let f5 = Field::prime(5).unwrap();
        let t1 = RatFun::from(MPoly::var(&f5, 1, 0));
        let a = MatRF::from_rows(vec![vec![t1.clone()]]).unwrap();
        let p = Pipeline::run(a.clone(), None).unwrap();
        assert_eq!(p.companion.v, ints(&f5, 1, &[1]));
        assert!(p.companion.n.is_identity());
        assert_eq!(p.companion.delta, a);
        assert_eq!(p.poly.render(), "Y^5 - t1*Y");
        let s = star(&a).unwrap();
        assert_eq!(s.get(0, 0), &t1.inv().unwrap());
    }

    #[test]
    fn p5_pipeline() {
        let alg = Algebra::from_spec(&catalog::p5_spec()).unwrap();
        let f5 = alg.field().clone();
        let a = alg.generic_matrix().unwrap().0;
        let p = Pipeline::run(a, Some(&ints(&f5, 2, &[1, 0]))).unwrap();
        let expected = parse_ypoly(catalog::P5_F, &f5, &var_names(2), "Y").unwrap();
        assert_eq!(p.poly.to_ypoly().unwrap(), expected);
        let a0 = parse_mpoly("-t2^4(t1^2-2t2^2)", &f5, &var_names(2)).unwrap();
        let a1 = parse_mpoly("t1(t1^4+t2^4)", &f5, &var_names(2)).unwrap();
        assert_eq!(p.companion.lastcol, vec![RatFun::from(a0), RatFun::from(a1)]);
    }

    #[test]
    fn star_identities() {
        let (_, a) = c8();
        let f3 = a.field().clone();
        let p = Pipeline::run(a.clone(), Some(&ints(&f3, 2, &[1, 0]))).unwrap();
        let d = &p.companion.delta;
        assert_eq!(&star(&star(d).unwrap()).unwrap(), d);
        let lhs = star(&a.mul(d).unwrap()).unwrap();
        let rhs = star(&a).unwrap().mul(&star(d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(star(&MatRF::identity(&f3, 2, 2)).unwrap().is_identity());
    }

    #[test]
    fn specialization_examples() {
        let (_, a) = c8();
        let f3 = a.field().clone();
        let p = Pipeline::run(a, Some(&ints(&f3, 2, &[1, 0]))).unwrap();
        let emb = Embedding::canonical(&f3, &f3).unwrap();
        let f = p.poly.specialize(&[f3.zero(), f3.one()], &emb).unwrap();
        assert_eq!(f.to_string(), "Y^9 + Y");
        let err = p.poly.specialize(&[f3.one(), f3.zero()], &emb).unwrap_err();
        assert!(matches!(err, Error::BadPoint(ref s) if s.contains("det N")));
        let err = p.module.specialize(&[f3.zero(), f3.zero()], &emb).unwrap_err();
        assert!(matches!(err, Error::BadPoint(_)));
    }

    #[test]
    fn json_round_trip() {
        let (_, a) = c8();
        let f3 = a.field().clone();
        let p = Pipeline::run(a, Some(&ints(&f3, 2, &[1, 0]))).unwrap();
        let j = p.poly.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: EmittedPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(AdditivePolynomial::from_json(&back).unwrap(), p.poly);
    }

    #[test]
    fn certificates() {
        let f3 = Field::prime(3).unwrap();
        let one = ConcreteModule::new(&f3, FMat::from_ints(&f3, &[&[1]])).unwrap();
        let c = integrality_certificate(&one).unwrap();
        assert_eq!((c.k, c.render()), (1, "T^3 - T".to_string()));
        let f2 = Field::prime(2).unwrap();
        let id = ConcreteModule::new(&f2, FMat::identity(&f2, 2)).unwrap();
        let c = integrality_certificate(&id).unwrap();
        assert_eq!((c.k, c.render()), (1, "T^2 - T".to_string()));
        // B_1 = -B_0 already, so the first dependence is T^3 + T
        let neg = ConcreteModule::new(&f3, FMat::from_ints(&f3, &[&[-1]])).unwrap();
        let c = integrality_certificate(&neg).unwrap();
        assert_eq!((c.k, c.render()), (1, "T^3 - 2*T".to_string()));
        let f9 = Field::ext(3, 2).unwrap();
        let emb = Embedding::canonical(&f3, &f9).unwrap();
        for x in f9.enumerate().unwrap() {
            let is_sol = (-&x.pow(3)) == x;
            assert_eq!(c.eval_with(&x, &emb).unwrap().is_zero(), is_sol);
            // the weaker annihilator T^9 - T kills every solution as well
            if is_sol {
                assert_eq!(x.pow(9), x);
            }
        }
    }

    #[test]
    fn dense_additive_round_trip() {
        let f3 = Field::prime(3).unwrap();
        let f = ConcreteAdditive::new(&f3, vec![f3.from_int(2), f3.zero()]).unwrap();
        assert_eq!(f.to_string(), "Y^9 + Y");
        let u = f.to_upoly().unwrap();
        assert_eq!(ConcreteAdditive::from_upoly(&f3, &u).unwrap(), f);
        let bad = UPoly::from_ints(&f3, &[0, 1, 1]);
        assert!(ConcreteAdditive::from_upoly(&f3, &bad).is_err());
    }
}
