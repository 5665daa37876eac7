//! Finite-dimensional unital subalgebras of `M_n(F_q)`, their generic matrix
//! `A(t) = sum t_i a_i`, and their unit groups.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::FMat;
use crate::multipoly::{MPoly, MatRF, RatFun};

/// Default bound on `q^m` for unit-group enumeration.
pub const UNIT_GROUP_CAP: u128 = 1 << 24;

/// A field element as written in algebra files: an integer, a text form
/// (`"2"` or `"[2,1]"`), or a bare coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemText {
    Int(i64),
    Coeffs(Vec<u32>),
    Text(String),
}

impl ElemText {
    fn parse(&self, field: &Field) -> Result<FieldElem> {
        match self {
            ElemText::Int(v) => Ok(field.from_int(*v)),
            ElemText::Coeffs(c) => field.from_coeffs(c),
            ElemText::Text(s) => field.parse_elem(s.trim()),
        }
    }
}

pub type MatText = Vec<Vec<ElemText>>;

/// Input description of an algebra: base field, matrix size and generators,
/// optionally with an explicit ordered basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub generators: Vec<MatText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<MatText>>,
}

fn one() -> u32 {
    1
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidAlgebra(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.e, self.modulus.as_deref())
    }

    fn matrix(&self, field: &Field, m: &MatText) -> Result<FMat> {
        if m.len() != self.n || m.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidAlgebra(format!("matrix is not {0}x{0}", self.n)));
        }
        let rows = m
            .iter()
            .map(|r| r.iter().map(|x| x.parse(field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FMat::from_rows(field, rows)
    }

    pub fn generator_matrices(&self) -> Result<Vec<FMat>> {
        let f = self.field()?;
        self.generators.iter().map(|g| self.matrix(&f, g)).collect()
    }

    pub fn basis_matrices(&self) -> Result<Option<Vec<FMat>>> {
        let f = self.field()?;
        self.basis
            .as_ref()
            .map(|b| b.iter().map(|m| self.matrix(&f, m)).collect())
            .transpose()
    }

    /// Replaces the basis (used by `--basis` overrides).
    pub fn with_basis(mut self, basis: Vec<MatText>) -> Self {
        self.basis = Some(basis);
        self
    }
}

/// Text form of a matrix for serialization.
pub fn mat_text(m: &FMat) -> MatText {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| ElemText::Text(x.to_string())).collect())
        .collect()
}

fn flatten(m: &FMat) -> Vec<FieldElem> {
    m.entries().to_vec()
}

fn unflatten(field: &Field, n: usize, v: &[FieldElem]) -> FMat {
    FMat::from_rows(field, v.chunks(n).map(<[_]>::to_vec).collect()).expect("square")
}

/// Incrementally grown list of linearly independent flattened matrices.
struct SpanBuilder {
    rows: Vec<Vec<FieldElem>>,
    // echelon copy for independence tests
    echelon: Vec<(usize, Vec<FieldElem>)>,
}

impl SpanBuilder {
    fn new() -> Self {
        SpanBuilder {
            rows: Vec::new(),
            echelon: Vec::new(),
        }
    }

    fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut v = v.to_vec();
        for (piv, row) in &self.echelon {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of what is already present.
    fn push(&mut self, v: Vec<FieldElem>) -> bool {
        let r = self.reduce(&v);
        let Some(piv) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[piv].inv().expect("nonzero");
        let r: Vec<_> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.echelon.iter_mut() {
            if !row[piv].is_zero() {
                let f = row[piv].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.echelon.push((piv, r));
        self.rows.push(v);
        true
    }

    fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(FieldElem::is_zero)
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduced echelon basis ordered by pivot position.
    fn canonical(&self) -> Vec<Vec<FieldElem>> {
        let mut e = self.echelon.clone();
        e.sort_by_key(|(p, _)| *p);
        e.into_iter().map(|(_, r)| r).collect()
    }
}

/// A unital subalgebra of `M_n(F_q)` with an ordered basis.
#[derive(Debug, Clone)]
pub struct Algebra {
    field: Field,
    n: usize,
    basis: Vec<FMat>,
    generators: Vec<FMat>,
}

/// Smallest unital subalgebra containing the generators, with the reduced
/// echelon basis of its row-major flattening.
pub fn close_basis(spec: &AlgebraSpec) -> Result<Algebra> {
    let field = spec.field()?;
    let gens = spec.generator_matrices()?;
    let basis = closure(&field, spec.n, &gens);
    Ok(Algebra {
        field,
        n: spec.n,
        basis,
        generators: gens,
    })
}

fn closure(field: &Field, n: usize, gens: &[FMat]) -> Vec<FMat> {
    let mut span = SpanBuilder::new();
    span.push(flatten(&FMat::identity(field, n)));
    for g in gens {
        span.push(flatten(g));
    }
    let mut done = 0;
    loop {
        let before = span.dim();
        let mats: Vec<FMat> = span.rows.iter().map(|v| unflatten(field, n, v)).collect();
        for i in 0..mats.len() {
            for j in 0..mats.len() {
                if i < done && j < done {
                    continue;
                }
                span.push(flatten(&mats[i].mul(&mats[j]).expect("square")));
            }
        }
        done = before;
        if span.dim() == before {
            break;
        }
    }
    span.canonical()
        .iter()
        .map(|v| unflatten(field, n, v))
        .collect()
}

impl Algebra {
    /// Uses the spec's explicit basis when present, after validating it
    /// against the closure of the generators; otherwise the canonical basis.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Algebra> {
        let mut alg = close_basis(spec)?;
        if let Some(basis) = spec.basis_matrices()? {
            alg.set_basis(basis)?;
        }
        Ok(alg)
    }

    fn set_basis(&mut self, basis: Vec<FMat>) -> Result<()> {
        let mut span = SpanBuilder::new();
        for b in &basis {
            if !span.push(flatten(b)) {
                return Err(Error::InvalidAlgebra("basis is linearly dependent".into()));
            }
        }
        if !span.contains(&flatten(&FMat::identity(&self.field, self.n))) {
            return Err(Error::InvalidAlgebra("identity is not in the span of the basis".into()));
        }
        for a in &basis {
            for b in &basis {
                if !span.contains(&flatten(&a.mul(b)?)) {
                    return Err(Error::InvalidAlgebra("span of the basis is not closed under products".into()));
                }
            }
        }
        if self.generators.iter().any(|g| !span.contains(&flatten(g))) {
            return Err(Error::InvalidAlgebra("a generator is outside the span of the basis".into()));
        }
        if span.dim() != self.basis.len() {
            return Err(Error::InvalidAlgebra(format!(
                "basis has dimension {} but the generated algebra has dimension {}",
                span.dim(),
                self.basis.len()
            )));
        }
        self.basis = basis;
        Ok(())
    }

    /// Algebra with the given basis, validated for independence and closure.
    pub fn with_basis(field: &Field, n: usize, basis: Vec<FMat>) -> Result<Algebra> {
        let gens = basis.clone();
        let mut alg = Algebra {
            field: field.clone(),
            n,
            basis: closure(field, n, &gens),
            generators: gens,
        };
        alg.set_basis(basis)?;
        Ok(alg)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FMat] {
        &self.basis
    }

    /// `A(t) = sum t_i a_i` and `d = det A(t)`.
    pub fn generic_matrix(&self) -> Result<(MatRF, RatFun)> {
        let m = self.dim();
        let n = self.n;
        let mut rows = vec![vec![MPoly::zero(&self.field, m); n]; n];
        for (i, a) in self.basis.iter().enumerate() {
            let t = MPoly::var(&self.field, m, i);
            for (r, row) in rows.iter_mut().enumerate() {
                for (c, x) in row.iter_mut().enumerate() {
                    if !a[(r, c)].is_zero() {
                        *x = x.add(&t.scale(&a[(r, c)]));
                    }
                }
            }
        }
        let a = MatRF::from_polys(rows)?;
        let d = a.det()?;
        if d.is_zero() {
            return Err(Error::Internal("generic determinant vanishes".into()));
        }
        Ok((a, d))
    }

    /// `sum xi_i a_i` over the field of `xi`.
    pub fn element(&self, xi: &[FieldElem]) -> Result<FMat> {
        if xi.len() != self.dim() {
            return Err(Error::ArityMismatch {
                expected: self.dim(),
                got: xi.len(),
            });
        }
        let target = xi.first().map_or(self.field.clone(), |x| x.field().clone());
        let mut acc = FMat::zeros(&target, self.n, self.n);
        for (x, a) in xi.iter().zip(&self.basis) {
            if !x.is_zero() {
                acc = acc.add(&a.embed(&target)?.scale(x))?;
            }
        }
        Ok(acc)
    }

    /// Coordinates of `x` in the basis, over the field of `x`.
    pub fn membership(&self, x: &FMat) -> Result<Option<Vec<FieldElem>>> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::DimensionMismatch("matrix size differs from algebra".into()));
        }
        let target = x.field().clone();
        let cols = self
            .basis
            .iter()
            .map(|a| Ok(flatten(&a.embed(&target)?)))
            .collect::<Result<Vec<_>>>()?;
        if cols.is_empty() {
            return Ok(x.is_zero().then(Vec::new));
        }
        let sys = FMat::from_cols(&target, &cols)?;
        sys.solve(&flatten(x))
    }

    pub fn unit_group(&self) -> Result<UnitGroup> {
        self.unit_group_capped(UNIT_GROUP_CAP)
    }

    /// All invertible members, listed in coordinate enumeration order
    /// (first coordinate fastest, each over the base field's element order).
    pub fn unit_group_capped(&self, cap: u128) -> Result<UnitGroup> {
        let q = self.field.order();
        let total = q
            .checked_pow(self.dim() as u32)
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::CapExceeded(format!("unit group enumeration beyond {cap} candidates")))?;
        let elements: Vec<FMat> = (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let mut k = idx;
                let xi: Vec<FieldElem> = (0..self.dim())
                    .map(|_| {
                        let e = self.field.element_at(k % q);
                        k /= q;
                        e
                    })
                    .collect();
                let x = self.element(&xi).expect("valid coordinates");
                (!x.det().expect("square").is_zero()).then_some(x)
            })
            .collect();
        let limit = elements.len() as u64;
        let orders = elements
            .par_iter()
            .map(|g| g.order(limit).expect("finite group"))
            .collect();
        Ok(UnitGroup { elements, orders })
    }

    /// Bound for the order of any element of the unit group: the exponent
    /// when enumeration is feasible, otherwise `None`.
    pub fn unit_exponent(&self) -> Option<u64> {
        let ug = self.unit_group().ok()?;
        Some(ug.exponent())
    }
}

/// The invertible members of an algebra.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    elements: Vec<FMat>,
    orders: Vec<u64>,
}

impl UnitGroup {
    pub fn elements(&self) -> &[FMat] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Multiset of element orders as `order -> count`.
    pub fn profile(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for &o in &self.orders {
            *m.entry(o).or_insert(0) += 1;
        }
        m
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| lcm(a, b))
    }

    /// Abelian iff a basis of the linear span of the group commutes pairwise.
    pub fn is_abelian(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return true;
        };
        let field = first.field();
        let n = first.rows();
        let mut span = SpanBuilder::new();
        for g in &self.elements {
            span.push(flatten(g));
        }
        let gens: Vec<FMat> = span.rows.iter().map(|v| unflatten(field, n, v)).collect();
        gens.iter().enumerate().all(|(i, a)| {
            gens[i + 1..]
                .iter()
                .all(|b| a.mul(b).unwrap() == b.mul(a).unwrap())
        })
    }

    pub fn contains(&self, x: &FMat) -> bool {
        self.elements.contains(x)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        group_fingerprint(self)
    }
}

/// Order, element-order profile and commutativity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub profile: BTreeMap<u64, usize>,
    pub abelian: bool,
}

pub fn group_fingerprint(ug: &UnitGroup) -> GroupFingerprint {
    GroupFingerprint {
        order: ug.order(),
        profile: ug.profile(),
        abelian: ug.is_abelian(),
    }
}

impl fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prof: Vec<String> = self.profile.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        write!(
            f,
            "order={} profile={} abelian={}",
            self.order,
            prof.join(","),
            self.abelian
        )
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn c8_closure_and_units() {
        let spec = catalog::c8_spec();
        let canon = close_basis(&spec).unwrap();
        assert_eq!(canon.dim(), 2);
        let alg = Algebra::from_spec(&spec).unwrap();
        let (a, d) = alg.generic_matrix().unwrap();
        assert_eq!(format!("{a:?}"), "[t1, 2*t2; t2, t1]");
        assert_eq!(d.to_string(), "t1^2+t2^2");
        let fp = alg.unit_group().unwrap().fingerprint();
        assert_eq!(fp.to_string(), "order=8 profile=1:1,2:1,4:2,8:4 abelian=true");
    }

    #[test]
    fn a4_closure_and_units() {
        let spec = catalog::a4_spec();
        assert_eq!(close_basis(&spec).unwrap().dim(), 5);
        let alg = Algebra::from_spec(&spec).unwrap();
        let ug = alg.unit_group().unwrap();
        assert_eq!(ug.fingerprint().to_string(), "order=12 profile=1:1,2:3,3:8 abelian=false");
        for g in ug.elements() {
            assert!(ug.contains(&g.inverse().unwrap()));
            for h in ug.elements() {
                assert!(ug.contains(&g.mul(h).unwrap()));
            }
        }
    }

    #[test]
    fn trivial_algebras() {
        let spec = AlgebraSpec {
            p: 3,
            e: 1,
            modulus: None,
            n: 1,
            generators: vec![vec![vec![ElemText::Int(1)]]],
            basis: None,
        };
        let alg = Algebra::from_spec(&spec).unwrap();
        assert_eq!(alg.dim(), 1);
        let (a, d) = alg.generic_matrix().unwrap();
        assert_eq!(format!("{a:?}"), "[t1]");
        assert_eq!(d.to_string(), "t1");
        let f2 = AlgebraSpec { p: 2, ..spec };
        let fp = Algebra::from_spec(&f2).unwrap().unit_group().unwrap().fingerprint();
        assert_eq!(fp.to_string(), "order=1 profile=1:1 abelian=true");
    }

    #[test]
    fn membership_examples() {
        let alg = Algebra::from_spec(&catalog::a4_spec()).unwrap();
        let f2 = alg.field().clone();
        let id = FMat::identity(&f2, 3);
        let coords = alg.membership(&id).unwrap().unwrap();
        assert_eq!(coords, vec![f2.one(), f2.zero(), f2.zero(), f2.zero(), f2.zero()]);
        let zero = FMat::zeros(&f2, 3, 3);
        assert!(alg.membership(&zero).unwrap().unwrap().iter().all(FieldElem::is_zero));
        let e21 = FMat::from_ints(&f2, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(alg.membership(&e21).unwrap(), None);
        // over an extension field
        let f4 = Field::ext(2, 2).unwrap();
        let w = f4.generator();
        let xi = vec![w.clone(), f4.one(), f4.zero(), w.clone(), f4.zero()];
        let x = alg.element(&xi).unwrap();
        assert_eq!(alg.membership(&x).unwrap(), Some(xi));
    }

    #[test]
    fn explicit_basis_is_validated() {
        let mut spec = catalog::c8_spec();
        spec.basis = Some(vec![spec.generators[0].clone()]);
        assert!(matches!(Algebra::from_spec(&spec), Err(Error::InvalidAlgebra(_))));
        let mut spec = catalog::c8_spec();
        let i = spec.basis.as_ref().unwrap()[0].clone();
        spec.basis = Some(vec![i.clone(), i]);
        assert!(matches!(Algebra::from_spec(&spec), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn closure_is_idempotent() {
        let spec = catalog::a4_spec();
        let alg = close_basis(&spec).unwrap();
        let again = AlgebraSpec {
            generators: alg.basis().iter().map(mat_text).collect(),
            basis: None,
            ..spec
        };
        let alg2 = close_basis(&again).unwrap();
        assert_eq!(alg.basis(), alg2.basis());
    }

    #[test]
    fn indicator_specializations_and_units() {
        let alg = Algebra::from_spec(&catalog::a4_spec()).unwrap();
        let f2 = alg.field().clone();
        let (a, d) = alg.generic_matrix().unwrap();
        for i in 0..alg.dim() {
            let xi: Vec<_> = (0..alg.dim()).map(|j| if i == j { f2.one() } else { f2.zero() }).collect();
            assert_eq!(a.eval(&xi).unwrap(), alg.basis()[i]);
        }
        let ug = alg.unit_group().unwrap();
        let mut found = Vec::new();
        for idx in 0..32u32 {
            let xi: Vec<_> = (0..5).map(|j| f2.from_int(((idx >> j) & 1) as i64)).collect();
            let ax = a.eval(&xi).unwrap();
            let dx = d.eval(&xi).unwrap();
            assert_eq!(ax.det().unwrap().is_zero(), dx.is_zero());
            if !dx.is_zero() {
                found.push(ax);
            }
        }
        assert_eq!(found.len(), ug.order());
        assert!(found.iter().all(|x| ug.contains(x)));
    }
}
