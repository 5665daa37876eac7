//! Command-line front end: algebra ingestion, polynomial generation,
//! golden verification suites, specialization, splitting and sampling.
//!
//! Every command renders a serializable report. `--format structured`
//! prints it as pretty JSON; `--format text` (the default) prints a line
//! rendering of the same data. Output is assembled in full before anything
//! is written, so error paths produce no partial output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use frobgen::algebra::{mat_text, Algebra, AlgebraSpec, ElemText, GroupFingerprint, MatText};
use frobgen::field::MAX_ORDER_BITS;
use frobgen::frobenius::{AdditivePolynomial, ConcreteAdditive, EmittedPoly, Pipeline};
use frobgen::multipoly::{parse_mpoly, parse_ypoly, var_names, MatRF, RatFun, YPoly};
use frobgen::solver::{
    additive_splitting_degree, frobenius_membership, pattern_key, sample_ddf, sample_frobenius,
    splitting_report_in, DdfSampleReport, SampleConfig, SampleReport, SolutionJson,
};
use frobgen::{Embedding, Error, Field, FieldElem};

pub mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_CYCLIC: i32 = 3;
pub const EXIT_POINT: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "frobgen", version, about = "Generic additive polynomials from finite algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// Options shared by all commands. Defaults: seed 1, 100 samples, field
/// degrees 1,2,3, no extension cap override, 120-bit field limit, text
/// output, one worker.
#[derive(Debug, Clone, clap::Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Extension-degree cap for splitting searches.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Largest admissible field, in bits of its order.
    #[arg(long, global = true, default_value_t = MAX_ORDER_BITS as u32)]
    pub field_cap: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit A(t), the cyclic vector, N, Delta and the additive polynomial.
    Gen {
        #[arg(long)]
        algebra: PathBuf,
        /// JSON list of basis matrices replacing the spec's basis.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        cyclic_vector: Option<String>,
        /// Polynomial file whose remainder against f is reported.
        #[arg(long)]
        check_divisor: Option<PathBuf>,
    },
    /// Run a built-in golden suite.
    Verify {
        #[arg(value_parser = ["c8", "a4", "p5"])]
        example: String,
    },
    /// Substitute a point into a polynomial file.
    Specialize {
        input: PathBuf,
        #[arg(long)]
        xi: String,
        /// Field of the point as `p,e`; defaults to the polynomial's field.
        #[arg(long)]
        field: Option<String>,
    },
    /// Splitting report of a specialized module or an additive polynomial.
    ///
    /// INPUT is an algebra file, a polynomial file, or a literal polynomial
    /// in `Y` with coefficients in `--field`.
    Split {
        input: String,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        field: Option<String>,
        /// Base field `F_q` as `p,e` for literal polynomials; defaults to `F_p`.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        cyclic_vector: Option<String>,
    },
    /// Seeded Frobenius sampling for an algebra, or factor-pattern sampling
    /// for a polynomial file.
    Sample {
        #[arg(long, conflicts_with = "input")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        cyclic_vector: Option<String>,
        /// Degrees k of the sampled fields F_{q^k}.
        #[arg(long, default_value = "1,2,3")]
        degrees: String,
    },
    /// Order, element-order profile and commutativity of the unit group.
    Unitgroup {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
}

/// Failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn spec(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_SPEC,
            message: msg.into(),
        }
    }

    fn point(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_POINT,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoCyclicVector(_) => EXIT_CYCLIC,
            Error::BadPoint(_) | Error::Inseparable => EXIT_POINT,
            Error::CapExceeded(_) => EXIT_CAP,
            Error::NotInAlgebra | Error::Internal(_) => EXIT_VERIFY,
            _ => EXIT_SPEC,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Successful command output: the report text and the exit code
/// (nonzero only for failed verification suites).
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let g = &cli.global;
    let text = match &cli.command {
        Command::Gen {
            algebra,
            basis,
            cyclic_vector,
            check_divisor,
        } => render(g, &cmd_gen(algebra, basis.as_deref(), cyclic_vector.as_deref(), check_divisor.as_deref())?),
        Command::Verify { example } => {
            let rep = verify::run_suite(example, g)?;
            let code = if rep.passed() { EXIT_OK } else { EXIT_VERIFY };
            return Ok(Output {
                text: render(g, &rep),
                code,
            });
        }
        Command::Specialize { input, xi, field } => render(g, &cmd_specialize(input, xi, field.as_deref(), g)?),
        Command::Split {
            input,
            xi,
            field,
            base,
            basis,
            cyclic_vector,
        } => render(
            g,
            &cmd_split(
                input,
                xi.as_deref(),
                field.as_deref(),
                base.as_deref(),
                basis.as_deref(),
                cyclic_vector.as_deref(),
                g,
            )?,
        ),
        Command::Sample {
            algebra,
            input,
            basis,
            cyclic_vector,
            degrees,
        } => match (algebra, input) {
            (Some(a), _) => render(g, &cmd_sample(a, basis.as_deref(), cyclic_vector.as_deref(), degrees, g)?),
            (None, Some(i)) => render(g, &cmd_sample_ddf(i, degrees, g)?),
            (None, None) => return Err(CliError::spec("sample needs --algebra or --input")),
        },
        Command::Unitgroup { algebra, basis } => render(g, &cmd_unitgroup(algebra, basis.as_deref())?),
    };
    Ok(Output { text, code: EXIT_OK })
}

/// A report with a structured and a text form.
pub trait Report: Serialize {
    fn text(&self) -> String;
}

fn render<R: Report>(g: &GlobalOpts, r: &R) -> String {
    match g.format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => r.text(),
    }
}

// ---------------------------------------------------------------- inputs

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::spec(format!("{}: {e}", path.display())))
}

/// Algebra from a spec file, with an optional basis file overriding the
/// spec's basis.
pub fn load_algebra(path: &Path, basis: Option<&Path>) -> CliResult<Algebra> {
    let mut spec = AlgebraSpec::from_json(&read_file(path)?)?;
    if let Some(b) = basis {
        let mats: Vec<MatText> = serde_json::from_str(&read_file(b)?)
            .map_err(|e| CliError::spec(format!("{}: {e}", b.display())))?;
        spec = spec.with_basis(mats);
    }
    Ok(Algebra::from_spec(&spec)?)
}

/// Polynomial in `Y` with parameters: `{"p", "e", "modulus"?, "vars"?, "poly"}`.
/// Variable names are taken as given, with underscores dropped.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
    #[serde(default)]
    pub vars: Vec<String>,
    pub poly: String,
}

fn one() -> u32 {
    1
}

/// Contents of a polynomial file: an emitted additive polynomial (as
/// written by `gen --format structured` or its `f` member) or a plain
/// [`PolyFile`].
pub enum LoadedPoly {
    Additive(AdditivePolynomial),
    Plain(YPoly, Vec<String>),
}

impl LoadedPoly {
    fn field(&self) -> &Field {
        match self {
            LoadedPoly::Additive(a) => a.field(),
            LoadedPoly::Plain(y, _) => y.field(),
        }
    }

    fn nvars(&self) -> usize {
        match self {
            LoadedPoly::Additive(a) => a.nvars(),
            LoadedPoly::Plain(y, _) => y.nvars(),
        }
    }
}

pub fn load_poly(path: &Path) -> CliResult<LoadedPoly> {
    let text = read_file(path)?;
    let bad = |e: serde_json::Error| CliError::spec(format!("{}: {e}", path.display()));
    let mut v: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    if let Some(f) = v.get("f").filter(|f| f.get("coeffs").is_some()) {
        v = f.clone();
    }
    if v.get("coeffs").is_some() {
        let e: EmittedPoly = serde_json::from_value(v).map_err(bad)?;
        return Ok(LoadedPoly::Additive(AdditivePolynomial::from_json(&e)?));
    }
    let pf: PolyFile = serde_json::from_value(v).map_err(bad)?;
    let field = Field::new(pf.p, pf.e, pf.modulus.as_deref())?;
    let names: Vec<String> = pf.vars.iter().map(|s| s.replace('_', "")).collect();
    let y = parse_ypoly(&pf.poly, &field, &names, "Y")?;
    Ok(LoadedPoly::Plain(y, names))
}

/// `p,e` (or just `p`).
pub fn parse_field(s: &str) -> CliResult<Field> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<u64>().map_err(|_| CliError::spec(format!("bad field `{s}`")));
    let (p, e) = match parts.as_slice() {
        [p] => (num(p)?, 1),
        [p, e] => (num(p)?, num(e)? as u32),
        _ => return Err(CliError::spec(format!("bad field `{s}`, expected p,e"))),
    };
    Ok(Field::new(p, e, None)?)
}

/// Comma-separated items, ignoring commas inside `[...]`.
pub fn split_csv(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn parse_point(xi: &str, field: &Field, m: usize) -> CliResult<Vec<FieldElem>> {
    let items = split_csv(xi);
    if items.len() != m {
        return Err(CliError::point(format!("expected {m} coordinates, got {}", items.len())));
    }
    items
        .iter()
        .map(|s| field.parse_elem(s).map_err(|e| CliError::point(e.to_string())))
        .collect()
}

fn parse_cyclic_vector(s: &str, field: &Field, m: usize, n: usize) -> CliResult<Vec<RatFun>> {
    let items = split_csv(s);
    if items.len() != n {
        return Err(CliError::spec(format!("cyclic vector needs {n} entries, got {}", items.len())));
    }
    let names = var_names(m);
    items
        .iter()
        .map(|t| {
            let v = if t.starts_with('[') {
                RatFun::constant(field.parse_elem(t)?, m)
            } else {
                RatFun::from(parse_mpoly(t, field, &names)?)
            };
            Ok(v)
        })
        .collect::<frobgen::Result<Vec<_>>>()
        .map_err(CliError::from)
}

fn check_field_cap(l: &Field, g: &GlobalOpts) -> CliResult<()> {
    if (l.order() as f64).log2() > g.field_cap as f64 {
        return Err(CliError {
            code: EXIT_CAP,
            message: format!("F_{}^{} exceeds the {}-bit field cap", l.p(), l.e(), g.field_cap),
        });
    }
    Ok(())
}

fn point_field(flag: Option<&str>, default: &Field, g: &GlobalOpts) -> CliResult<(Field, Embedding)> {
    let l = match flag {
        Some(s) => parse_field(s)?,
        None => default.clone(),
    };
    check_field_cap(&l, g)?;
    let emb = Embedding::canonical(default, &l).map_err(|e| CliError::point(e.to_string()))?;
    Ok((l, emb))
}

fn mat_strings(m: &MatRF) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn rows_text(rows: &[Vec<String>]) -> String {
    let r: Vec<String> = rows.iter().map(|r| r.join(", ")).collect();
    format!("[{}]", r.join("; "))
}

fn mat_text_str(m: &MatText) -> Vec<Vec<String>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| match x {
                    ElemText::Int(v) => v.to_string(),
                    ElemText::Coeffs(c) => format!("{c:?}").replace(' ', ""),
                    ElemText::Text(t) => t.clone(),
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------- gen

#[derive(Debug, Clone, Serialize)]
pub struct GenReport {
    pub field: FieldJson,
    pub n: usize,
    pub dim: usize,
    pub basis: Vec<MatText>,
    pub a: Vec<Vec<String>>,
    pub det_a: String,
    pub v: Vec<String>,
    pub n_matrix: Vec<Vec<String>>,
    pub det_n: String,
    pub delta: Vec<Vec<String>>,
    pub f: EmittedPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldJson {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    fn of(f: &Field) -> Self {
        FieldJson {
            p: f.p(),
            e: f.e(),
            modulus: f.modulus().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisorCheck {
    pub divisor: String,
    pub quotient_degree: Option<usize>,
    pub remainder: String,
    pub divides: bool,
}

impl Report for GenReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field: F_{}^{}", self.field.p, self.field.e);
        let _ = writeln!(s, "n = {}, dim = {}", self.n, self.dim);
        let _ = writeln!(s, "A = {}", rows_text(&self.a));
        let _ = writeln!(s, "det A = {}", self.det_a);
        let _ = writeln!(s, "v = ({})", self.v.join(", "));
        let _ = writeln!(s, "N = {}", rows_text(&self.n_matrix));
        let _ = writeln!(s, "det N = {}", self.det_n);
        let _ = writeln!(s, "Delta = {}", rows_text(&self.delta));
        let _ = writeln!(s, "f = {}", self.f.poly);
        if let Some(d) = &self.divisor {
            let _ = writeln!(s, "f mod g = {} ({})", d.remainder, if d.divides { "divides" } else { "does not divide" });
        }
        s
    }
}

pub fn pipeline_for(alg: &Algebra, cyclic_vector: Option<&str>) -> CliResult<Pipeline> {
    let (a, _) = alg.generic_matrix()?;
    let v = cyclic_vector
        .map(|s| parse_cyclic_vector(s, alg.field(), a.nvars(), alg.n()))
        .transpose()?;
    Ok(Pipeline::run(a, v.as_deref())?)
}

pub fn cmd_gen(
    algebra: &Path,
    basis: Option<&Path>,
    cyclic_vector: Option<&str>,
    check_divisor: Option<&Path>,
) -> CliResult<GenReport> {
    let alg = load_algebra(algebra, basis)?;
    let pipe = pipeline_for(&alg, cyclic_vector)?;
    let divisor = match check_divisor {
        None => None,
        Some(path) => {
            let g = match load_poly(path)? {
                LoadedPoly::Plain(y, _) => y,
                LoadedPoly::Additive(a) => a.to_ypoly()?,
            };
            if g.field() != alg.field() || g.nvars() > pipe.module.nvars() {
                return Err(CliError::spec("divisor is not over the algebra's field and parameters"));
            }
            let f = pipe.poly.to_ypoly()?;
            let g = extend_nvars(&g, f.nvars());
            let (q, r) = f.divrem(&g)?;
            Some(DivisorCheck {
                divisor: g.to_string(),
                quotient_degree: q.degree(),
                remainder: r.to_string(),
                divides: r.is_zero(),
            })
        }
    };
    let cf = &pipe.companion;
    Ok(GenReport {
        field: FieldJson::of(alg.field()),
        n: alg.n(),
        dim: alg.dim(),
        basis: alg.basis().iter().map(mat_text).collect(),
        a: mat_strings(pipe.module.matrix()),
        det_a: pipe.module.det().to_string(),
        v: cf.v.iter().map(ToString::to_string).collect(),
        n_matrix: mat_strings(&cf.n),
        det_n: cf.det_n.to_string(),
        delta: mat_strings(&cf.delta),
        f: pipe.poly.to_json(),
        divisor,
    })
}

fn extend_nvars(g: &YPoly, nvars: usize) -> YPoly {
    if g.nvars() == nvars {
        return g.clone();
    }
    let c = g
        .coeffs()
        .iter()
        .map(|r| RatFun::new(r.num().extend_vars(nvars), r.den().extend_vars(nvars)).expect("nonzero denominator"))
        .collect();
    YPoly::from_coeffs(g.field(), nvars, c)
}

// ---------------------------------------------------------------- specialize

#[derive(Debug, Clone, Serialize)]
pub struct SpecializeReport {
    pub field: FieldJson,
    pub xi: Vec<String>,
    pub poly: String,
    pub degree: Option<usize>,
    /// Factor degrees when the specialization is squarefree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ddf: Option<String>,
    pub squarefree: bool,
}

impl Report for SpecializeReport {
    fn text(&self) -> String {
        format!("{}\n", self.poly)
    }
}

pub fn cmd_specialize(input: &Path, xi: &str, field: Option<&str>, g: &GlobalOpts) -> CliResult<SpecializeReport> {
    let poly = load_poly(input)?;
    let (l, emb) = point_field(field, poly.field(), g)?;
    let pt = parse_point(xi, &l, poly.nvars())?;
    let h = match &poly {
        LoadedPoly::Additive(a) => a.specialize(&pt, &emb)?.to_upoly()?,
        LoadedPoly::Plain(y, _) => y.eval_with(&pt, &emb)?,
    };
    let pat = h.ddf_pattern().ok();
    let squarefree = pat.as_ref().is_some_and(|p| p.squarefree);
    Ok(SpecializeReport {
        field: FieldJson::of(&l),
        xi: pt.iter().map(ToString::to_string).collect(),
        poly: h.to_string(),
        degree: h.degree(),
        ddf: pat.filter(|p| p.squarefree).map(|p| pattern_key(&p.degrees())),
        squarefree,
    })
}

// ---------------------------------------------------------------- split

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SplitReport {
    System {
        xi: Vec<String>,
        #[serde(flatten)]
        report: SolutionJson,
        additive_splitting_degree: u32,
    },
    Additive {
        q: u128,
        field: String,
        poly: String,
        dims: Vec<usize>,
        splitting_degree: u32,
    },
}

impl Report for SplitReport {
    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            SplitReport::System {
                report,
                additive_splitting_degree,
                ..
            } => {
                let _ = writeln!(s, "dims: {:?}", report.dims);
                let _ = writeln!(s, "splitting degree: {}", report.splitting_degree);
                let _ = writeln!(s, "additive splitting degree: {additive_splitting_degree}");
                let _ = writeln!(s, "g = {}", rows_text(&mat_text_str(&report.g)));
                let _ = writeln!(s, "g order: {}", report.g_order);
                if let Some(m) = &report.membership {
                    let _ = writeln!(s, "membership: ({})", m.join(", "));
                }
            }
            SplitReport::Additive {
                dims, splitting_degree, ..
            } => {
                let _ = writeln!(s, "dims: {dims:?}");
                let _ = writeln!(s, "splitting degree: {splitting_degree}");
            }
        }
        s
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_split(
    input: &str,
    xi: Option<&str>,
    field: Option<&str>,
    base: Option<&str>,
    basis: Option<&Path>,
    cyclic_vector: Option<&str>,
    g: &GlobalOpts,
) -> CliResult<SplitReport> {
    let path = Path::new(input);
    if !path.is_file() {
        return split_literal(input, field, base, g);
    }
    let xi = xi.ok_or_else(|| CliError::point("--xi is required for file inputs"))?;
    let text = read_file(path)?;
    if text.contains("\"generators\"") {
        let alg = load_algebra(path, basis)?;
        let pipe = pipeline_for(&alg, cyclic_vector)?;
        let (l, emb) = point_field(field, alg.field(), g)?;
        let pt = parse_point(xi, &l, pipe.module.nvars())?;
        let (m, f) = pipe.specialize(&pt, &emb)?;
        let rep = splitting_report_in(&m, &alg, g.cap)?;
        let add = additive_splitting_degree(&f, g.cap.map(|c| c.max(rep.splitting_degree as u64)))?;
        let coords = frobenius_membership(&rep, &alg)?;
        return Ok(SplitReport::System {
            xi: pt.iter().map(ToString::to_string).collect(),
            report: rep.to_json(Some(&coords)),
            additive_splitting_degree: add.splitting_degree,
        });
    }
    let poly = load_poly(path)?;
    let (l, emb) = point_field(field, poly.field(), g)?;
    let pt = parse_point(xi, &l, poly.nvars())?;
    let f = match &poly {
        LoadedPoly::Additive(a) => a.specialize(&pt, &emb)?,
        LoadedPoly::Plain(y, _) => {
            ConcreteAdditive::from_upoly(y.field(), &y.eval_with(&pt, &emb)?)?
        }
    };
    split_additive(&f, g)
}

fn split_literal(text: &str, field: Option<&str>, base: Option<&str>, g: &GlobalOpts) -> CliResult<SplitReport> {
    let l = match field {
        Some(s) => parse_field(s)?,
        None => return Err(CliError::spec(format!("`{text}` is not a file; literal polynomials need --field"))),
    };
    check_field_cap(&l, g)?;
    let base = match base {
        Some(s) => parse_field(s)?,
        None => l.prime_field(),
    };
    let y = parse_ypoly(text, &l, &[], "Y")?;
    let u = y.eval(&[])?;
    let f = ConcreteAdditive::from_upoly(&base, &u)?;
    if !f.is_separable() {
        return Err(CliError::spec(Error::Inseparable.to_string()));
    }
    split_additive(&f, g)
}

fn split_additive(f: &ConcreteAdditive, g: &GlobalOpts) -> CliResult<SplitReport> {
    let rep = additive_splitting_degree(f, g.cap)?;
    Ok(SplitReport::Additive {
        q: f.q(),
        field: format!("{},{}", f.field().p(), f.field().e()),
        poly: f.to_string(),
        dims: rep.dims,
        splitting_degree: rep.splitting_degree,
    })
}

// ---------------------------------------------------------------- sample

fn parse_degrees(s: &str) -> CliResult<Vec<u32>> {
    let d = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().ok().filter(|&k| k > 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::spec(format!("bad degree list `{s}`")))?;
    if d.is_empty() {
        return Err(CliError::spec("empty degree list"));
    }
    Ok(d)
}

impl Report for SampleReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "accepted: {} of {} requested ({} draws)", self.accepted, self.requested, self.attempts);
        let _ = writeln!(s, "skipped: det A = 0: {}, det N = 0: {}", self.skipped_det_a, self.skipped_det_n);
        let orders: Vec<String> = self.order_counts.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        let _ = writeln!(s, "orders: {}", orders.join(","));
        if let Some(u) = &self.unit_orders {
            let u: Vec<String> = u.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "unit group orders: {}", u.join(","));
        }
        if let Some(w) = self.orders_within_units {
            let _ = writeln!(s, "orders within unit group: {w}");
        }
        let _ = writeln!(s, "failures: {}", self.failures.len());
        for f in &self.failures {
            let _ = writeln!(s, "  {f}");
        }
        s
    }
}

impl Report for DdfSampleReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "samples: {} (squarefree {}, not squarefree {})", self.samples, self.squarefree, self.not_squarefree);
        for (k, c) in &self.patterns {
            let _ = writeln!(s, "pattern {k}: {c}");
        }
        s
    }
}

pub fn cmd_sample(
    algebra: &Path,
    basis: Option<&Path>,
    cyclic_vector: Option<&str>,
    degrees: &str,
    g: &GlobalOpts,
) -> CliResult<SampleReport> {
    let alg = load_algebra(algebra, basis)?;
    let degrees = parse_degrees(degrees)?;
    for &k in &degrees {
        check_field_cap(&Field::ext(alg.field().p(), alg.field().e() * k)?, g)?;
    }
    let pipe = pipeline_for(&alg, cyclic_vector)?;
    let cfg = SampleConfig {
        seed: g.seed,
        samples: g.samples.unwrap_or(100),
        degrees,
        ext_cap: g.cap,
        jobs: g.jobs,
    };
    Ok(sample_frobenius(&pipe, &alg, &cfg)?)
}

pub fn cmd_sample_ddf(input: &Path, degrees: &str, g: &GlobalOpts) -> CliResult<DdfSampleReport> {
    let y = match load_poly(input)? {
        LoadedPoly::Plain(y, _) => y,
        LoadedPoly::Additive(a) => a.to_ypoly()?,
    };
    let degrees = parse_degrees(degrees)?;
    for &k in &degrees {
        check_field_cap(&Field::ext(y.field().p(), y.field().e() * k)?, g)?;
    }
    Ok(sample_ddf(&y, &degrees, g.samples.unwrap_or(100), g.seed)?)
}

// ---------------------------------------------------------------- unitgroup

impl Report for GroupFingerprint {
    fn text(&self) -> String {
        format!("{self}\n")
    }
}

pub fn cmd_unitgroup(algebra: &Path, basis: Option<&Path>) -> CliResult<GroupFingerprint> {
    let alg = load_algebra(algebra, basis)?;
    Ok(alg.unit_group()?.fingerprint())
}
