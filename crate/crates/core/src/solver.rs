//! Finite-field oracle: solutions of `B X^(q) = X` and roots of additive
//! polynomials by linear algebra over `F_q`, splitting degrees, Frobenius
//! elements `U^-1 U^(|L|)`, and seeded sampling over specializations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{lcm, mat_text, Algebra, MatText, UNIT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem, MAX_ORDER_BITS};
use crate::frobenius::{ConcreteAdditive, ConcreteModule, Pipeline};
use crate::linalg::FMat;
use crate::multipoly::YPoly;
use crate::rng::Lcg64;
use crate::upoly::{DdfPattern, UPoly};

/// Truncation point of the default extension-degree cap.
pub const EXT_CAP_LIMIT: u64 = 10_000;

/// Exponent bound for `GL_n(F_q)`: `p^ceil(log_p n) * lcm(q^i - 1, i <= n)`,
/// saturating at [`EXT_CAP_LIMIT`].
pub fn default_ext_cap(base: &Field, n: usize) -> u64 {
    let p = base.p() as u64;
    let q = base.order();
    let mut unip = 1u64;
    while (unip as usize) < n {
        unip = unip.saturating_mul(p);
    }
    let mut acc = unip;
    let mut qi = 1u128;
    for _ in 0..n {
        qi = qi.saturating_mul(q);
        let t = u64::try_from(qi - 1).unwrap_or(u64::MAX).min(EXT_CAP_LIMIT);
        acc = lcm(acc, t.max(1));
        if acc >= EXT_CAP_LIMIT {
            return EXT_CAP_LIMIT;
        }
    }
    acc.min(EXT_CAP_LIMIT)
}

/// Base `F_q`, its extension `L` holding the data, and `L_j = F_{|L|^j}` on demand.
#[derive(Debug, Clone)]
pub struct Tower {
    base: Field,
    l: Field,
    emb_ql: Embedding,
}

impl Tower {
    pub fn new(base: &Field, l: &Field) -> Result<Self> {
        Ok(Tower {
            base: base.clone(),
            l: l.clone(),
            emb_ql: Embedding::canonical(base, l)?,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn l(&self) -> &Field {
        &self.l
    }

    /// `[L : F_q]`.
    pub fn k(&self) -> u32 {
        self.l.e() / self.base.e()
    }

    pub fn level(&self, j: u32) -> Result<Level> {
        Level::new(self, j)
    }
}

/// `L_j` with an `F_q`-basis `1, x, ..., x^{d-1}` (`x` its power-basis
/// generator, `d = [L_j : F_q]`) and coordinate maps.
#[derive(Debug, Clone)]
pub struct Level {
    pub j: u32,
    lj: Field,
    emb_l: Embedding,
    emb_q: Embedding,
    d: usize,
    xpow: Vec<FieldElem>,
    // F_p coordinates -> (r, i) coordinates, when q is not prime
    tinv: Option<FMat>,
    wq: Vec<FieldElem>,
}

impl Level {
    fn new(t: &Tower, j: u32) -> Result<Level> {
        let e_lj = t.l.e().checked_mul(j).ok_or_else(|| Error::CapExceeded("extension degree overflow".into()))?;
        if e_lj as f64 * (t.l.p() as f64).log2() > MAX_ORDER_BITS {
            return Err(Error::CapExceeded(format!("F_{}^{} exceeds the field-size limit", t.l.p(), e_lj)));
        }
        let lj = Field::ext(t.l.p(), e_lj)?;
        let emb_l = Embedding::canonical(&t.l, &lj)?;
        let emb_q = t.emb_ql.then(&emb_l)?;
        let e = t.base.e() as usize;
        let d = e_lj as usize / e;
        let x = lj.generator();
        let mut xpow = Vec::with_capacity(d);
        let mut acc = lj.one();
        for _ in 0..d {
            xpow.push(acc.clone());
            acc = &acc * &x;
        }
        let (tinv, wq) = if e == 1 {
            (None, Vec::new())
        } else {
            let fp = lj.prime_field();
            let w = emb_q.root().clone();
            let mut cols = Vec::with_capacity(e * d);
            let mut wr = lj.one();
            for _ in 0..e {
                for xi in &xpow {
                    let v = &wr * xi;
                    cols.push(v.coeffs().iter().map(|&c| fp.from_int(c as i64)).collect());
                }
                wr = &wr * &w;
            }
            let tm = FMat::from_cols(&fp, &cols)?;
            let g = t.base.generator();
            let wq = (0..e as u128).map(|r| g.pow(r)).collect();
            (Some(tm.inverse()?), wq)
        };
        Ok(Level {
            j,
            lj,
            emb_l,
            emb_q,
            d,
            xpow,
            tinv,
            wq,
        })
    }

    pub fn field(&self) -> &Field {
        &self.lj
    }

    /// `L -> L_j`.
    pub fn emb_l(&self) -> &Embedding {
        &self.emb_l
    }

    /// `F_q -> L_j`, the composite through `L`.
    pub fn emb_q(&self) -> &Embedding {
        &self.emb_q
    }

    /// `[L_j : F_q]`.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// `F_q`-coordinates of `y` in the basis `x^i`.
    pub fn coords(&self, y: &FieldElem, base: &Field) -> Vec<FieldElem> {
        match &self.tinv {
            None => y.coeffs().iter().map(|&c| base.from_int(c as i64)).collect(),
            Some(tinv) => {
                let fp = tinv.field();
                let v: Vec<FieldElem> = y.coeffs().iter().map(|&c| fp.from_int(c as i64)).collect();
                let c = tinv.mul_vec(&v).expect("square");
                (0..self.d)
                    .map(|i| {
                        let mut acc = base.zero();
                        for (r, w) in self.wq.iter().enumerate() {
                            let cv = &c[r * self.d + i];
                            if !cv.is_zero() {
                                acc = &acc + &(&base.from_int(cv.coeffs()[0] as i64) * w);
                            }
                        }
                        acc
                    })
                    .collect()
            }
        }
    }

    pub fn from_coords(&self, c: &[FieldElem]) -> Result<FieldElem> {
        let mut acc = self.lj.zero();
        for (ci, xi) in c.iter().zip(&self.xpow) {
            if !ci.is_zero() {
                acc = &acc + &(&self.emb_q.apply(ci)? * xi);
            }
        }
        Ok(acc)
    }

    /// Preimage in `F_q` of an element of `L_j`, if it lies in `F_q`.
    pub fn pull_back(&self, y: &FieldElem, base: &Field) -> Option<FieldElem> {
        let c = self.coords(y, base);
        c[1..].iter().all(FieldElem::is_zero).then(|| c[0].clone())
    }

    /// Matrix over `F_q` of an `F_q`-linear map on `L_j^ncomp`.
    pub fn linearize(
        &self,
        base: &Field,
        ncomp: usize,
        map: impl Fn(&[FieldElem]) -> Result<Vec<FieldElem>>,
    ) -> Result<FMat> {
        let dim = ncomp * self.d;
        let mut cols = Vec::with_capacity(dim);
        for a in 0..ncomp {
            for i in 0..self.d {
                let mut v = vec![self.lj.zero(); ncomp];
                v[a] = self.xpow[i].clone();
                let out = map(&v)?;
                cols.push(out.iter().flat_map(|y| self.coords(y, base)).collect());
            }
        }
        FMat::from_cols(base, &cols)
    }

    fn vector_from_kernel(&self, ncomp: usize, k: &[FieldElem]) -> Result<Vec<FieldElem>> {
        (0..ncomp)
            .map(|a| self.from_coords(&k[a * self.d..(a + 1) * self.d]))
            .collect()
    }
}

/// `F_q`-basis of `{X in L_j^n : B X^(q) = X}`.
pub fn solution_space(module: &ConcreteModule, level: &Level) -> Result<Vec<Vec<FieldElem>>> {
    let base = module.base();
    let q = module.q();
    let n = module.rank();
    let b = module.matrix().embed_with(level.emb_l())?;
    let m = level.linearize(base, n, |x| {
        let xq: Vec<_> = x.iter().map(|v| v.pow(q)).collect();
        let bx = b.mul_vec(&xq)?;
        Ok(bx.iter().zip(x).map(|(y, v)| y - v).collect())
    })?;
    m.kernel()
        .iter()
        .map(|k| level.vector_from_kernel(n, k))
        .collect()
}

/// Solution dimensions up to the splitting degree, a solution basis `U` and
/// the Frobenius element `g = U^-1 U^(|L|)` over `F_q`.
#[derive(Debug, Clone)]
pub struct SolutionReport {
    pub base: Field,
    pub l: Field,
    /// `dims[j-1]` is the `F_q`-dimension of the solutions over `L_j`.
    pub dims: Vec<usize>,
    pub splitting_degree: u32,
    pub u: FMat,
    pub g: FMat,
    pub g_order: u64,
}

pub fn splitting_report(module: &ConcreteModule, ext_cap: Option<u64>) -> Result<SolutionReport> {
    let base = module.base().clone();
    let n = module.rank();
    let cap = ext_cap.unwrap_or_else(|| default_ext_cap(&base, n));
    let tower = Tower::new(&base, module.field())?;
    let mut dims = Vec::new();
    for j in 1..=cap {
        let j = u32::try_from(j).map_err(|_| Error::CapExceeded("extension degree".into()))?;
        let level = tower.level(j)?;
        let sols = solution_space(module, &level)?;
        dims.push(sols.len());
        if sols.len() < n {
            continue;
        }
        let lj = level.field();
        let u = FMat::from_cols(lj, &sols)?;
        let b = module.matrix().embed_with(level.emb_l())?;
        if b.mul(&u.twist(module.q()))? != u {
            return Err(Error::Internal("A U^(q) != U".into()));
        }
        let (g, g_order) = frobenius_element(&u, &tower, &level, cap.max(j as u64))?;
        return Ok(SolutionReport {
            base,
            l: tower.l().clone(),
            dims,
            splitting_degree: j,
            u,
            g,
            g_order,
        });
    }
    Err(Error::CapExceeded(format!("no full solution space up to degree {cap}")))
}

/// Invertible `U` in `A (x) L_j` with `B U^(q) = U`, where `B` is the
/// module matrix (itself a member of `A (x) L`). The solutions form an
/// `F_q`-space of dimension `dim A` when `j` is a multiple of the splitting
/// degree; the first invertible combination of its kernel basis, with
/// coefficient tuples enumerated first-coordinate-fastest, is returned.
pub fn lang_matrix(module: &ConcreteModule, alg: &Algebra, level: &Level) -> Result<Option<FMat>> {
    let base = module.base();
    if alg.field() != base {
        return Err(Error::FieldMismatch);
    }
    let q = module.q();
    let lj = level.field();
    let b = module.matrix().embed_with(level.emb_l())?;
    let basis = alg
        .basis()
        .iter()
        .map(|a| a.embed_with(level.emb_q()))
        .collect::<Result<Vec<_>>>()?;
    let combine = |u: &[FieldElem]| -> Result<FMat> {
        let mut acc = FMat::zeros(lj, alg.n(), alg.n());
        for (c, a) in u.iter().zip(&basis) {
            if !c.is_zero() {
                acc = acc.add(&a.scale(c))?;
            }
        }
        Ok(acc)
    };
    let m = level.linearize(base, basis.len(), |u| {
        let x = combine(u)?;
        Ok(b.mul(&x.twist(q))?.sub(&x)?.entries().to_vec())
    })?;
    let sols = m
        .kernel()
        .iter()
        .map(|k| Ok(combine(&level.vector_from_kernel(basis.len(), k)?)?))
        .collect::<Result<Vec<FMat>>>()?;
    if sols.is_empty() {
        return Ok(None);
    }
    let total = q
        .checked_pow(sols.len() as u32)
        .filter(|&t| t <= UNIT_GROUP_CAP)
        .ok_or_else(|| Error::CapExceeded("Lang matrix search space".into()))?;
    for idx in 1..total {
        let mut k = idx;
        let mut acc = FMat::zeros(lj, alg.n(), alg.n());
        for s in &sols {
            let c = base.element_at(k % q);
            k /= q;
            if !c.is_zero() {
                acc = acc.add(&s.scale(&level.emb_q().apply(&c)?))?;
            }
        }
        if !acc.det()?.is_zero() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// [`splitting_report`] with `U` taken inside the algebra, so that `g`
/// lands in its unit group.
pub fn splitting_report_in(module: &ConcreteModule, alg: &Algebra, ext_cap: Option<u64>) -> Result<SolutionReport> {
    let cap = ext_cap.or_else(|| alg.unit_exponent());
    let mut rep = splitting_report(module, cap)?;
    let tower = Tower::new(module.base(), module.field())?;
    let level = tower.level(rep.splitting_degree)?;
    let u = lang_matrix(module, alg, &level)?
        .ok_or_else(|| Error::Internal("no invertible solution inside the algebra".into()))?;
    let (g, g_order) = frobenius_element(&u, &tower, &level, cap.unwrap_or(EXT_CAP_LIMIT).max(rep.splitting_degree as u64))?;
    rep.u = u;
    rep.g = g;
    rep.g_order = g_order;
    Ok(rep)
}

fn frobenius_element(u: &FMat, tower: &Tower, level: &Level, limit: u64) -> Result<(FMat, u64)> {
    let base = tower.base();
    let uinv = u.inverse().map_err(|_| Error::Internal("solution matrix is singular".into()))?;
    let gl = uinv.mul(&u.twist(tower.l().order()))?;
    let rows = gl
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|y| level.pull_back(y, base))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("Frobenius element has entries outside F_q".into()))?;
    let g = FMat::from_rows(base, rows)?;
    let g_order = g
        .order(limit)
        .ok_or_else(|| Error::Internal("Frobenius element order exceeds the cap".into()))?;
    Ok((g, g_order))
}

/// Coordinates of the Frobenius element in the algebra basis.
pub fn frobenius_membership(report: &SolutionReport, alg: &Algebra) -> Result<Vec<FieldElem>> {
    if report.g.det()?.is_zero() {
        return Err(Error::Internal("Frobenius element is singular".into()));
    }
    let g = if report.g.field() == alg.field() {
        report.g.clone()
    } else {
        return Err(Error::FieldMismatch);
    };
    alg.membership(&g)?.ok_or(Error::NotInAlgebra)
}

/// Root-space dimensions of an additive polynomial over `L_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveReport {
    pub dims: Vec<usize>,
    pub splitting_degree: u32,
}

pub fn additive_splitting_degree(f: &ConcreteAdditive, ext_cap: Option<u64>) -> Result<AdditiveReport> {
    if !f.is_separable() {
        return Err(Error::Inseparable);
    }
    let base = f.base().clone();
    let n = f.rank();
    let cap = ext_cap.unwrap_or_else(|| default_ext_cap(&base, n));
    let tower = Tower::new(&base, f.field())?;
    let mut dims = Vec::new();
    for j in 1..=cap {
        let j = u32::try_from(j).map_err(|_| Error::CapExceeded("extension degree".into()))?;
        let level = tower.level(j)?;
        let emb = level.emb_l().clone();
        let m = level.linearize(&base, 1, |y| Ok(vec![f.eval_with(&y[0], &emb)?]))?;
        let dim = m.kernel().len();
        dims.push(dim);
        if dim == n {
            return Ok(AdditiveReport {
                dims,
                splitting_degree: j,
            });
        }
    }
    Err(Error::CapExceeded(format!("roots not split up to degree {cap}")))
}

/// Roots of `f` in `L_j` as an `F_q`-basis.
pub fn additive_root_basis(f: &ConcreteAdditive, level: &Level) -> Result<Vec<FieldElem>> {
    let base = f.base();
    let emb = level.emb_l().clone();
    let m = level.linearize(base, 1, |y| Ok(vec![f.eval_with(&y[0], &emb)?]))?;
    m.kernel().iter().map(|k| level.from_coords(k)).collect()
}

/// Factor-degree pattern of `h`, with multiplicities reported separately.
pub fn ddf_pattern(h: &UPoly) -> Result<DdfPattern> {
    h.ddf_pattern()
}

/// Serializable view of a [`SolutionReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub q: u128,
    pub field: String,
    pub dims: Vec<usize>,
    pub splitting_degree: u32,
    pub u: MatText,
    pub g: MatText,
    pub g_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<Vec<String>>,
}

impl SolutionReport {
    pub fn to_json(&self, membership: Option<&[FieldElem]>) -> SolutionJson {
        SolutionJson {
            q: self.base.order(),
            field: format!("{},{}", self.l.p(), self.l.e()),
            dims: self.dims.clone(),
            splitting_degree: self.splitting_degree,
            u: mat_text(&self.u),
            g: mat_text(&self.g),
            g_order: self.g_order,
            membership: membership.map(|c| c.iter().map(ToString::to_string).collect()),
        }
    }
}

/// Options for [`sample_frobenius`].
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    /// Degrees `k` of the fields `L = F_{q^k}`, visited round-robin.
    pub degrees: Vec<u32>,
    pub ext_cap: Option<u64>,
    pub jobs: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            samples: 20,
            degrees: vec![1],
            ext_cap: None,
            jobs: 1,
        }
    }
}

/// Attempts allowed per requested sample.
pub const ATTEMPTS_PER_SAMPLE: usize = 64;

/// One accepted specialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub field: String,
    pub xi: Vec<String>,
    pub splitting_degree: u32,
    pub additive_degree: u32,
    pub g: MatText,
    pub g_order: u64,
    pub membership: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub seed: u64,
    pub requested: usize,
    pub accepted: usize,
    pub attempts: usize,
    pub skipped_det_a: usize,
    pub skipped_det_n: usize,
    pub order_counts: BTreeMap<u64, usize>,
    pub unit_orders: Option<Vec<u64>>,
    pub orders_within_units: Option<bool>,
    pub failures: Vec<String>,
    pub records: Vec<SampleRecord>,
}

struct Point {
    index: usize,
    l: Field,
    xi: Vec<FieldElem>,
}

/// Seeded specializations of the pipeline's module and polynomial, each
/// checked for: full solution space, `g` over `F_q` of order equal to the
/// splitting degree, `g` in the algebra, and agreement of the additive
/// polynomial's splitting degree.
///
/// Points are drawn serially (one LCG draw per coordinate, in `t1..tm`
/// order) and evaluated in parallel; `jobs` does not affect the output.
pub fn sample_frobenius(pipe: &Pipeline, alg: &Algebra, cfg: &SampleConfig) -> Result<SampleReport> {
    let base = pipe.module.field().clone();
    let m = pipe.module.nvars();
    if cfg.degrees.is_empty() || cfg.degrees.contains(&0) {
        return Err(Error::BadPoint("field degrees must be positive".into()));
    }
    let fields = cfg
        .degrees
        .iter()
        .map(|&k| Field::ext(base.p(), base.e() * k))
        .collect::<Result<Vec<_>>>()?;
    let embs = fields
        .iter()
        .map(|l| Embedding::canonical(&base, l))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = Lcg64::new(cfg.seed);
    let mut points = Vec::new();
    let (mut attempts, mut skip_a, mut skip_n) = (0, 0, 0);
    let max_attempts = cfg.samples.saturating_mul(ATTEMPTS_PER_SAMPLE);
    while points.len() < cfg.samples && attempts < max_attempts {
        let slot = attempts % fields.len();
        attempts += 1;
        let l = &fields[slot];
        let xi: Vec<FieldElem> = (0..m).map(|_| l.element_at(rng.below(l.order()))).collect();
        if pipe.poly.det_a.eval_with(&xi, &embs[slot])?.is_zero() {
            skip_a += 1;
            continue;
        }
        if pipe.poly.det_n.eval_with(&xi, &embs[slot])?.is_zero() {
            skip_n += 1;
            continue;
        }
        points.push(Point {
            index: points.len(),
            l: l.clone(),
            xi,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let ext_cap = cfg.ext_cap.or_else(|| alg.unit_exponent());
    let results: Vec<std::result::Result<SampleRecord, String>> = pool.install(|| {
        points
            .par_iter()
            .map(|pt| run_point(pipe, alg, pt, ext_cap).map_err(|e| format!("sample {}: {e}", pt.index)))
            .collect()
    });
    let unit_orders = alg.unit_group().ok().map(|ug| {
        let mut o: Vec<u64> = ug.profile().keys().copied().collect();
        o.dedup();
        o
    });
    let mut order_counts = BTreeMap::new();
    let mut failures = Vec::new();
    let mut records = Vec::new();
    for r in results {
        match r {
            Ok(rec) => {
                *order_counts.entry(rec.g_order).or_insert(0) += 1;
                if rec.additive_degree != rec.splitting_degree {
                    failures.push(format!("sample {}: additive degree differs", rec.index));
                }
                if rec.g_order != rec.splitting_degree as u64 {
                    failures.push(format!("sample {}: g order differs from splitting degree", rec.index));
                }
                if rec.membership.is_none() {
                    failures.push(format!("sample {}: g outside the algebra", rec.index));
                }
                records.push(rec);
            }
            Err(e) => failures.push(e),
        }
    }
    let orders_within_units = unit_orders
        .as_ref()
        .map(|u| order_counts.keys().all(|o| u.contains(o)));
    Ok(SampleReport {
        seed: cfg.seed,
        requested: cfg.samples,
        accepted: points.len(),
        attempts,
        skipped_det_a: skip_a,
        skipped_det_n: skip_n,
        order_counts,
        unit_orders,
        orders_within_units,
        failures,
        records,
    })
}

fn run_point(pipe: &Pipeline, alg: &Algebra, pt: &Point, ext_cap: Option<u64>) -> Result<SampleRecord> {
    let emb = Embedding::canonical(pipe.module.field(), &pt.l)?;
    let (module, f) = pipe.specialize(&pt.xi, &emb)?;
    let rep = splitting_report_in(&module, alg, ext_cap)?;
    let add = additive_splitting_degree(&f, ext_cap.map(|c| c.max(rep.splitting_degree as u64)))?;
    let membership = match frobenius_membership(&rep, alg) {
        Ok(c) => Some(c.iter().map(ToString::to_string).collect()),
        Err(Error::NotInAlgebra) => None,
        Err(e) => return Err(e),
    };
    Ok(SampleRecord {
        index: pt.index,
        field: format!("{},{}", pt.l.p(), pt.l.e()),
        xi: pt.xi.iter().map(ToString::to_string).collect(),
        splitting_degree: rep.splitting_degree,
        additive_degree: add.splitting_degree,
        g: mat_text(&rep.g),
        g_order: rep.g_order,
        membership,
    })
}

/// Factor-degree patterns of seeded specializations of a polynomial in `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdfSampleReport {
    pub seed: u64,
    pub samples: usize,
    pub squarefree: usize,
    pub not_squarefree: usize,
    /// Sorted factor degrees of squarefree specializations, with counts.
    pub patterns: BTreeMap<String, usize>,
}

/// Draws `samples` points round-robin over `F_{q^k}`, `k` in `degrees`, and
/// records the distinct-degree pattern of each specialization.
pub fn sample_ddf(g: &YPoly, degrees: &[u32], samples: usize, seed: u64) -> Result<DdfSampleReport> {
    let base = g.field().clone();
    let m = g.nvars();
    let fields = degrees
        .iter()
        .map(|&k| Field::ext(base.p(), base.e() * k))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = Lcg64::new(seed);
    let mut rep = DdfSampleReport {
        seed,
        samples,
        squarefree: 0,
        not_squarefree: 0,
        patterns: BTreeMap::new(),
    };
    for i in 0..samples {
        let l = &fields[i % fields.len()];
        let xi: Vec<FieldElem> = (0..m).map(|_| l.element_at(rng.below(l.order()))).collect();
        let h = g.eval(&xi)?;
        if h.degree() != g.degree() {
            rep.not_squarefree += 1;
            continue;
        }
        let pat = h.ddf_pattern()?;
        if pat.squarefree {
            rep.squarefree += 1;
            *rep.patterns.entry(pattern_key(&pat.degrees())).or_insert(0) += 1;
        } else {
            rep.not_squarefree += 1;
        }
    }
    Ok(rep)
}

/// `"1,3"` for degrees `[1, 3]`.
pub fn pattern_key(degs: &[usize]) -> String {
    let mut d = degs.to_vec();
    d.sort_unstable();
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::multipoly::RatFun;

    fn module(field: &Field, rows: &[&[i64]]) -> ConcreteModule {
        ConcreteModule::new(field, FMat::from_ints(field, rows)).unwrap()
    }

    #[test]
    fn solution_space_examples() {
        let f3 = Field::prime(3).unwrap();
        let t = Tower::new(&f3, &f3).unwrap();
        let id = module(&f3, &[&[1]]);
        let s = solution_space(&id, &t.level(1).unwrap()).unwrap();
        assert_eq!(s, vec![vec![f3.one()]]);
        let neg = module(&f3, &[&[-1]]);
        assert!(solution_space(&neg, &t.level(1).unwrap()).unwrap().is_empty());
        let lvl = t.level(2).unwrap();
        let s = solution_space(&neg, &lvl).unwrap();
        assert_eq!(s.len(), 1);
        // oracle: every solution in F9 of -x^3 = x
        let f9 = lvl.field().clone();
        let brute: Vec<_> = f9.enumerate().unwrap().filter(|x| -&x.pow(3) == *x).collect();
        assert_eq!(brute.len(), 3);
        let y = &s[0][0];
        for c in 0..3 {
            assert!(brute.contains(&(y * &f9.from_int(c))));
        }
    }

    #[test]
    fn split_examples() {
        let f3 = Field::prime(3).unwrap();
        let r = splitting_report(&module(&f3, &[&[1, 0], &[0, 1]]), None).unwrap();
        assert_eq!((r.splitting_degree, r.g_order), (1, 1));
        assert!(r.g.is_identity());
        let r = splitting_report(&module(&f3, &[&[-1]]), None).unwrap();
        assert_eq!(r.dims, vec![0, 1]);
        assert_eq!(r.splitting_degree, 2);
        assert_eq!(r.g, FMat::from_ints(&f3, &[&[-1]]));
        assert_eq!(r.g_order, 2);
    }

    #[test]
    fn f4_base_coordinates() {
        let f4 = Field::ext(2, 2).unwrap();
        let f16 = Field::ext(2, 4).unwrap();
        let t = Tower::new(&f4, &f16).unwrap();
        let lvl = t.level(1).unwrap();
        for y in f16.enumerate().unwrap() {
            let c = lvl.coords(&y, &f4);
            assert_eq!(lvl.from_coords(&c).unwrap(), y);
        }
        for a in f4.enumerate().unwrap() {
            let img = lvl.emb_q().apply(&a).unwrap();
            assert_eq!(lvl.pull_back(&img, &f4), Some(a));
        }
    }

    #[test]
    fn additive_examples() {
        let f3 = Field::prime(3).unwrap();
        let f = ConcreteAdditive::new(&f3, vec![f3.one()]).unwrap();
        let r = additive_splitting_degree(&f, None).unwrap();
        assert_eq!((r.splitting_degree, r.dims.clone()), (1, vec![1]));
        let bad = ConcreteAdditive::new(&f3, vec![f3.zero(), f3.one()]).unwrap();
        assert_eq!(additive_splitting_degree(&bad, None).unwrap_err(), Error::Inseparable);
    }

    #[test]
    fn c8_point_equivalence() {
        let alg = Algebra::from_spec(&catalog::c8_spec()).unwrap();
        let f3 = alg.field().clone();
        let a = alg.generic_matrix().unwrap().0;
        let v: Vec<RatFun> = [1, 0].iter().map(|&x| RatFun::constant(f3.from_int(x), 2)).collect();
        let pipe = Pipeline::run(a, Some(&v)).unwrap();
        let emb = Embedding::canonical(&f3, &f3).unwrap();
        let (m, f) = pipe.specialize(&[f3.zero(), f3.one()], &emb).unwrap();
        let rep = splitting_report_in(&m, &alg, None).unwrap();
        let add = additive_splitting_degree(&f, None).unwrap();
        assert_eq!(rep.splitting_degree, add.splitting_degree);
        assert_eq!(rep.splitting_degree, splitting_report(&m, None).unwrap().splitting_degree);
        assert_eq!(rep.g_order, rep.splitting_degree as u64);
        assert!(frobenius_membership(&rep, &alg).is_ok());
        let star = splitting_report(&m.star().unwrap(), None).unwrap();
        assert_eq!(star.splitting_degree, rep.splitting_degree);
    }

    #[test]
    fn sampling_is_job_independent() {
        let alg = Algebra::from_spec(&catalog::c8_spec()).unwrap();
        let f3 = alg.field().clone();
        let a = alg.generic_matrix().unwrap().0;
        let v: Vec<RatFun> = [1, 0].iter().map(|&x| RatFun::constant(f3.from_int(x), 2)).collect();
        let pipe = Pipeline::run(a, Some(&v)).unwrap();
        let cfg = SampleConfig {
            seed: 7,
            samples: 12,
            degrees: vec![1, 2],
            ext_cap: None,
            jobs: 1,
        };
        let r1 = sample_frobenius(&pipe, &alg, &cfg).unwrap();
        let r4 = sample_frobenius(&pipe, &alg, &SampleConfig { jobs: 4, ..cfg }).unwrap();
        assert_eq!(r1, r4);
        assert!(r1.failures.is_empty(), "{:?}", r1.failures);
        assert_eq!(r1.accepted, 12);
        assert_eq!(r1.orders_within_units, Some(true));
    }

    #[test]
    fn ddf_g1_at_one() {
        let f2 = Field::prime(2).unwrap();
        let g1 = crate::multipoly::parse_ypoly(catalog::A4_G1, &f2, &["s".to_string()], "Y").unwrap();
        let h = g1.eval(&[f2.one()]).unwrap();
        assert_eq!(h.to_string(), "Y^4 + Y^2 + Y + 1");
        assert_eq!(pattern_key(&ddf_pattern(&h).unwrap().degrees()), "1,3");
    }

    #[test]
    fn ext_cap_default() {
        let f3 = Field::prime(3).unwrap();
        // lcm(2, 8) with unipotent part 3
        assert_eq!(default_ext_cap(&f3, 2), 24);
        let f2 = Field::prime(2).unwrap();
        // 4 * lcm(1, 3, 7)
        assert_eq!(default_ext_cap(&f2, 3), 84);
    }
}
