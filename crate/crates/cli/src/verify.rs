//! Golden suites behind `frobgen verify`. Seeds are fixed so the report is
//! identical on every run; `--jobs` only changes the worker count.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use frobgen::algebra::Algebra;
use frobgen::catalog;
use frobgen::frobenius::Pipeline;
use frobgen::multipoly::{parse_mpoly, parse_ypoly, var_names, MatRF, RatFun, YPoly};
use frobgen::rng::Lcg64;
use frobgen::solver::{
    additive_splitting_degree, pattern_key, sample_ddf, sample_frobenius, splitting_report, SampleConfig,
};
use frobgen::upoly::UPoly;
use frobgen::{Embedding, Field, FieldElem};

use crate::{CliError, CliResult, GlobalOpts, Report};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub example: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag}  {}: {}", c.name, c.detail);
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "{}: {ok}/{} checks passed", self.example, self.checks.len());
        if let Some(f) = self.first_failure() {
            let _ = writeln!(s, "first failure: {}", f.name);
        }
        s
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn new() -> Self {
        Suite { checks: Vec::new() }
    }

    /// Records a check; errors inside the closure count as failures.
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String), String>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, e));
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn consts(field: &Field, m: usize, v: &[i64]) -> Vec<RatFun> {
    v.iter().map(|&x| RatFun::constant(field.from_int(x), m)).collect()
}

fn parse_mat(rows: &[&[&str]], field: &Field, m: usize) -> Result<MatRF, String> {
    let names = var_names(m);
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_mpoly(s, field, &names).map(RatFun::from))
                .collect::<frobgen::Result<Vec<_>>>()
        })
        .collect::<frobgen::Result<Vec<_>>>()
        .map_err(e2s)?;
    MatRF::from_rows(rows).map_err(e2s)
}

fn build(spec: frobgen::algebra::AlgebraSpec, v: &[i64]) -> CliResult<(Algebra, Pipeline)> {
    let alg = Algebra::from_spec(&spec)?;
    let (a, _) = alg.generic_matrix()?;
    let v = consts(alg.field(), a.nvars(), v);
    let pipe = Pipeline::run(a, Some(&v))?;
    Ok((alg, pipe))
}

pub fn run_suite(example: &str, g: &GlobalOpts) -> CliResult<VerifyReport> {
    let checks = match example {
        "c8" => c8(g)?,
        "a4" => a4(g)?,
        "p5" => p5(g)?,
        other => return Err(CliError::spec(format!("unknown example `{other}`"))),
    };
    Ok(VerifyReport {
        example: example.to_string(),
        checks,
    })
}

fn structural(s: &mut Suite, pipe: &Pipeline) {
    s.check("structure", || {
        let ok = pipe.check_determinants().map_err(e2s)?;
        let a0 = !pipe.poly.coeffs[0].is_zero();
        Ok((ok && a0, "companion shape, det Delta = det A * det N^(q-1), a0 != 0".into()))
    });
}

fn f_matches(s: &mut Suite, pipe: &Pipeline, expected: &str) {
    s.check("f", || {
        let f = parse_ypoly(expected, pipe.module.field(), &var_names(pipe.module.nvars()), "Y").map_err(e2s)?;
        Ok((pipe.poly.to_ypoly().map_err(e2s)? == f, pipe.poly.render()))
    });
}

fn unit_group(s: &mut Suite, alg: &Algebra, expected: &str) {
    s.check("unit group", || {
        let fp = alg.unit_group().map_err(e2s)?.fingerprint().to_string();
        Ok((fp == expected, fp))
    });
}

fn orders_check(
    s: &mut Suite,
    name: &str,
    pipe: &Pipeline,
    alg: &Algebra,
    cfg: SampleConfig,
    allowed: &[u64],
    required: &[u64],
) {
    s.check(name, || {
        let rep = sample_frobenius(pipe, alg, &cfg).map_err(e2s)?;
        let seen: BTreeSet<u64> = rep.order_counts.keys().copied().collect();
        let ok = rep.failures.is_empty()
            && rep.accepted == cfg.samples
            && seen.iter().all(|o| allowed.contains(o))
            && required.iter().all(|o| seen.contains(o));
        let counts: Vec<String> = rep.order_counts.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        Ok((
            ok,
            format!("{} samples, orders {}, {} failures", rep.accepted, counts.join(","), rep.failures.len()),
        ))
    });
}

fn c8(g: &GlobalOpts) -> CliResult<Vec<Check>> {
    let (alg, pipe) = build(catalog::c8_spec(), &catalog::C8_V)?;
    let f3 = alg.field().clone();
    let mut s = Suite::new();
    s.check("closure", || Ok((alg.dim() == 2, format!("dim {}", alg.dim()))));
    unit_group(&mut s, &alg, "order=8 profile=1:1,2:1,4:2,8:4 abelian=true");
    s.check("A(t)", || {
        let a = parse_mat(&[&["t1", "-t2"], &["t2", "t1"]], &f3, 2)?;
        Ok((pipe.module.matrix() == &a, format!("{:?}", pipe.module.matrix())))
    });
    s.check("N", || {
        let n = parse_mat(&[&["1", "t1"], &["0", "t2"]], &f3, 2)?;
        Ok((pipe.companion.n == n, format!("{:?}", pipe.companion.n)))
    });
    s.check("Delta", || {
        let d = parse_mat(&[&["0", "-t2^2(t1^2+t2^2)"], &["1", "t1(t1^2+t2^2)"]], &f3, 2)?;
        Ok((pipe.companion.delta == d, format!("{:?}", pipe.companion.delta)))
    });
    f_matches(&mut s, &pipe, catalog::C8_F);
    structural(&mut s, &pipe);
    s.check("specialize (0,1)", || {
        let emb = Embedding::canonical(&f3, &f3).map_err(e2s)?;
        let f = pipe.poly.specialize(&[f3.zero(), f3.one()], &emb).map_err(e2s)?;
        Ok((f.to_string() == "Y^9 + Y", f.to_string()))
    });
    s.check("system vs additive", || {
        let mut rng = Lcg64::new(0xC8);
        let mut n = 0;
        let mut draws = 0;
        while n < 20 {
            draws += 1;
            if draws > 2000 {
                return Err("too many rejected points".into());
            }
            let l = Field::ext(3, 1 + (draws % 2) as u32).map_err(e2s)?;
            let emb = Embedding::canonical(&f3, &l).map_err(e2s)?;
            let xi: Vec<FieldElem> = (0..2).map(|_| l.element_at(rng.below(l.order()))).collect();
            let Ok((m, f)) = pipe.specialize(&xi, &emb) else {
                continue;
            };
            let sys = splitting_report(&m, None).map_err(e2s)?.splitting_degree;
            let add = additive_splitting_degree(&f, None).map_err(e2s)?.splitting_degree;
            if sys != add {
                return Ok((false, format!("xi {xi:?}: system {sys}, additive {add}")));
            }
            n += 1;
        }
        Ok((true, format!("{n} points agree")))
    });
    let cfg = SampleConfig {
        seed: 2024,
        samples: 200,
        degrees: vec![1, 2, 3],
        ext_cap: None,
        jobs: g.jobs,
    };
    orders_check(&mut s, "Frobenius sampling", &pipe, &alg, cfg, &[1, 2, 4, 8], &[8]);
    Ok(s.checks)
}

fn a4(g: &GlobalOpts) -> CliResult<Vec<Check>> {
    let (alg, pipe) = build(catalog::a4_spec(), &catalog::A4_V)?;
    let f2 = alg.field().clone();
    let mut s = Suite::new();
    s.check("closure", || {
        let closed = frobgen::algebra::close_basis(&catalog::a4_spec()).map_err(e2s)?;
        Ok((closed.dim() == 5 && alg.dim() == 5, format!("dim {}", closed.dim())))
    });
    unit_group(&mut s, &alg, "order=12 profile=1:1,2:3,3:8 abelian=false");
    s.check("A(t)", || {
        let rows: Vec<&[&str]> = catalog::A4_GENERIC_MATRIX.iter().map(|r| &r[..]).collect();
        let a = parse_mat(&rows, &f2, 5)?;
        Ok((pipe.module.matrix() == &a, format!("{:?}", pipe.module.matrix())))
    });
    s.check("det N", || {
        Ok((!pipe.companion.det_n.is_zero(), format!("v = (1,0,1), det N = {}", pipe.companion.det_n)))
    });
    s.check("f shape", || {
        let f = pipe.poly.to_ypoly().map_err(e2s)?;
        let ladder = f.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || i.is_power_of_two());
        let ok = f.degree() == Some(8) && f.coeff(8).is_one() && ladder;
        Ok((ok, format!("degree {}, terms in Y^1, Y^2, Y^4, Y^8", f.degree().map_or("-".into(), |d| d.to_string()))))
    });
    let quartic = parse_ypoly(catalog::A4_G, &f2, &var_names(5), "Y")?;
    s.check("g divides f", || {
        let f = pipe.poly.to_ypoly().map_err(e2s)?;
        let (_, r) = f.divrem(&quartic).map_err(e2s)?;
        Ok((r.is_zero(), format!("remainder {r}")))
    });
    structural(&mut s, &pipe);
    s.check("g1 at s=1", || {
        let g1 = parse_ypoly(catalog::A4_G1, &f2, &["s".to_string()], "Y").map_err(e2s)?;
        let h = g1.eval(&[f2.one()]).map_err(e2s)?;
        let pat = pattern_key(&h.ddf_pattern().map_err(e2s)?.degrees());
        let ok = h == UPoly::from_ints(&f2, &[1, 1, 1, 0, 1]) && pat == "1,3";
        Ok((ok, format!("{h}: {pat}")))
    });
    let s_names = ["s".to_string()];
    let polys: [(&str, YPoly); 3] = [
        ("g", quartic.clone()),
        ("g1", parse_ypoly(catalog::A4_G1, &f2, &s_names, "Y")?),
        ("g2", parse_ypoly(catalog::A4_G2, &f2, &s_names, "Y")?),
    ];
    let allowed = ["1,1,1,1", "2,2", "1,3"];
    for (name, p) in &polys {
        s.check(&format!("cycle types of {name}"), || {
            let rep = sample_ddf(p, &[1, 2, 3, 4, 5, 6], 120, 5).map_err(e2s)?;
            let keys: Vec<&str> = rep.patterns.keys().map(String::as_str).collect();
            let ok = rep.squarefree >= 50
                && keys.iter().all(|k| allowed.contains(k))
                && keys.contains(&"2,2")
                && keys.contains(&"1,3");
            let counts: Vec<String> = rep.patterns.iter().map(|(k, c)| format!("{{{k}}}:{c}")).collect();
            Ok((ok, format!("{} squarefree, {}", rep.squarefree, counts.join(" "))))
        });
    }
    let cfg = SampleConfig {
        seed: 2024,
        samples: 60,
        degrees: vec![1, 2, 3, 4],
        ext_cap: None,
        jobs: g.jobs,
    };
    orders_check(&mut s, "Frobenius sampling", &pipe, &alg, cfg, &[1, 2, 3], &[2, 3]);
    Ok(s.checks)
}

fn p5(g: &GlobalOpts) -> CliResult<Vec<Check>> {
    let (alg, pipe) = build(catalog::p5_spec(), &catalog::P5_V)?;
    let mut s = Suite::new();
    s.check("w^2 = 2", || {
        let w = &alg.basis()[1];
        let w2 = w.mul(w).map_err(e2s)?;
        let two = frobgen::linalg::FMat::identity(alg.field(), 2).scale(&alg.field().from_int(2));
        Ok((w2 == two, "basis {I, W}".into()))
    });
    f_matches(&mut s, &pipe, catalog::P5_F);
    s.check("last column", || {
        let names = var_names(2);
        let a0 = parse_mpoly("-t2^4(t1^2-2t2^2)", alg.field(), &names).map_err(e2s)?;
        let a1 = parse_mpoly("t1(t1^4+t2^4)", alg.field(), &names).map_err(e2s)?;
        let ok = pipe.companion.lastcol == vec![RatFun::from(a0), RatFun::from(a1)];
        Ok((ok, "a0 = -t2^4(t1^2-2t2^2), a1 = t1(t1^4+t2^4)".into()))
    });
    structural(&mut s, &pipe);
    unit_group(&mut s, &alg, "order=24 profile=1:1,2:1,3:2,4:2,6:2,8:4,12:4,24:8 abelian=true");
    let cfg = SampleConfig {
        seed: 2024,
        samples: 100,
        degrees: vec![1, 2],
        ext_cap: None,
        jobs: g.jobs,
    };
    orders_check(&mut s, "Frobenius sampling", &pipe, &alg, cfg, &[1, 2, 3, 4, 6, 8, 12, 24], &[]);
    Ok(s.checks)
}
