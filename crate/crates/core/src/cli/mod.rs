//! Command-line front end: argument parsing, dispatch to the algebra
//! operations and report assembly.
//!
//! Objects are named as `NAME` (looked up in the shipped library) or
//! `PATH:NAME` (looked up in an algebra file).
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | every check passed |
//! | 1 | a law failed, or the input describes an unlawful object |
//! | 2 | usage error, syntax error or unmet precondition |
//! | 3 | a size cap or enumeration budget was hit |
//! | 4 | unresolved name |
//! | 5 | table dimensions do not match the declared carriers |
//! | 6 | internal consistency failure |

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Fact, GeneratorTable, ObjectSummary, Report};

use crate::abelian::{abelian_reflection, inv, is_abelian};
use crate::envelope::{check_envelope, enveloping, stability_check};
use crate::lie::{check_lie, lie_of_monoid, LieObject};
use crate::limits::{Limits, DEFAULT_CAP};
use crate::monoidal::{
    check_antipode, check_antipode_reverses, check_bimonoid, check_comonoid, check_compatibility, check_monoid,
    ComonoidObject, HopfObject, MonoidObject,
};
use crate::primitives::{adjunction_check, check_antipode_on_primitives, check_p_bar, p_bar, primitives};
use crate::report::witness;
use crate::semimodule::{check_block, Elem, FinSemimodule, Hom};
use crate::semiring::check_semiring;
use crate::tensor::tensor;
use crate::tensor_algebra::{check_generators_primitive, truncated_tensor_algebra};
use crate::text::{self, AlgebraFile, Decl, ParseErrorKind};
use crate::{Error, Result, ValidationReport};

#[derive(Parser, Debug)]
#[command(name = "entropic", version, about = "Exact law checks for Hopf and Lie objects over finite semimodules")]
pub struct Cli {
    /// Largest carrier materialized element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a law suite or the adjunction check.
    #[command(subcommand)]
    Check(Check),
    /// The invertible elements of a semimodule.
    Inv { name: String },
    /// The reflection onto internal groups.
    Abelianize { name: String },
    /// The tensor product of two semimodules.
    Tensor { left: String, right: String },
    /// The commutator Lie object on the invertible part of a monoid.
    LieOfMonoid { name: String },
    /// The truncated tensor bimonoid on a semimodule.
    TensorAlgebra {
        name: String,
        #[arg(long)]
        degree: usize,
    },
    /// The truncated enveloping monoid of a Lie object.
    Envelope {
        name: String,
        #[arg(long)]
        degree: usize,
        /// Compare with the next degree bound.
        #[arg(long)]
        stability_check: bool,
    },
    /// Primitive elements of a bimonoid.
    Primitives { name: String },
    /// Declarations in a file (the shipped library by default).
    List { file: Option<PathBuf> },
    /// Parse a file and print it back in normal form.
    Fmt { file: Option<PathBuf> },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    Laws {
        name: String,
    },
    Adjunction {
        lie: String,
        hopf: String,
        #[arg(long)]
        degree: usize,
    },
}

/// What a run writes and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Laws(_) => 1,
        Error::Parse(p) => match p.kind {
            ParseErrorKind::Invalid => 1,
            ParseErrorKind::Syntax => 2,
            ParseErrorKind::Unresolved => 4,
            ParseErrorKind::Dimension => 5,
        },
        Error::Malformed(_) | Error::InvalidParameter(_) | Error::Precondition(_) | Error::Mismatch(_) => 2,
        Error::Resource { .. } => 3,
        Error::Unresolved(_) => 4,
        Error::Internal(_) => 6,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    execute(&cli, &format!("entropic {}", echo.join(" ")))
}

pub fn execute(cli: &Cli, command: &str) -> Outcome {
    let limits = Limits::with_cap(cli.cap);
    let mut r = Report { command: command.to_string(), ..Report::default() };
    let start = Instant::now();
    let mut ws = Workspace::default();
    let result = dispatch(&cli.command, &mut ws, &limits, &mut r);
    if std::env::var_os("ENTROPIC_TIMING").is_some() {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let mut stderr = String::new();
    match result {
        Ok(Some(raw)) if cli.format == Format::Text => {
            return Outcome { stdout: raw, stderr, code: 0 };
        }
        Ok(_) => {
            let (outcome, code) = if r.passed() { ("pass", 0) } else { ("law violation", 1) };
            r.outcome = outcome.into();
            r.exit_code = code;
        }
        Err(Stop::Inconclusive) => {
            r.outcome = "inconclusive".into();
            r.exit_code = 3;
        }
        Err(Stop::Failed(e)) => {
            if let Error::Laws(rep) = &e {
                r.checks.push((**rep).clone());
            }
            stderr = format!("error: {e}\n");
            r.outcome = "error".into();
            r.exit_code = exit_code(&e);
            r.error = Some(e.to_string());
        }
    }
    let stdout = match cli.format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json(),
    };
    Outcome { stdout, stderr, code: r.exit_code }
}

enum Stop {
    Failed(Error),
    /// An enumeration hit its budget; the report is partial.
    Inconclusive,
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Failed(e)
    }
}

/// Parsed files by path; the library is always available.
#[derive(Default)]
struct Workspace {
    files: BTreeMap<PathBuf, AlgebraFile>,
    library: Option<AlgebraFile>,
}

impl Workspace {
    fn file(&mut self, path: Option<&PathBuf>, limits: &Limits) -> Result<&AlgebraFile> {
        match path {
            None => Ok(self.library.get_or_insert_with(text::library)),
            Some(p) => {
                if !self.files.contains_key(p) {
                    let f = text::parse_file(p, limits)?;
                    self.files.insert(p.clone(), f);
                }
                Ok(&self.files[p])
            }
        }
    }

    /// `NAME` or `PATH:NAME`.
    fn resolve(&mut self, reference: &str, limits: &Limits) -> Result<(&AlgebraFile, String)> {
        match reference.rsplit_once(':') {
            Some((path, name)) => Ok((self.file(Some(&PathBuf::from(path)), limits)?, name.to_string())),
            None => Ok((self.file(None, limits)?, reference.to_string())),
        }
    }
}

/// Block generators of `a`.
fn generators(a: &FinSemimodule) -> Vec<Elem> {
    (0..a.num_blocks()).flat_map(|i| a.block(i).generators().iter().map(move |&g| a.inject(i, g))).collect()
}

fn set(a: &FinSemimodule, xs: &[Elem]) -> String {
    let names: Vec<String> = xs.iter().map(|x| a.name(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn summary(name: &str, kind: &str, a: &FinSemimodule, tables: Vec<GeneratorTable>) -> ObjectSummary {
    ObjectSummary {
        name: name.to_string(),
        kind: kind.to_string(),
        semiring: a.base().name().to_string(),
        size: a.size(),
        blocks: a.num_blocks(),
        generators: generators(a).iter().map(|g| a.name(g)).collect(),
        tables,
    }
}

fn mul_table(m: &MonoidObject) -> GeneratorTable {
    let a = m.carrier();
    let gs = generators(a);
    let mut entries = vec![format!("unit = {}", a.name(m.unit()))];
    for x in &gs {
        for y in &gs {
            let v = m.mul(x, y).map_or("undefined".into(), |z| a.name(&z));
            entries.push(format!("{} · {} = {v}", a.name(x), a.name(y)));
        }
    }
    GeneratorTable { operation: "product".into(), entries }
}

fn comult_table(c: &ComonoidObject) -> GeneratorTable {
    let a = c.carrier();
    let entries = generators(a)
        .iter()
        .map(|x| {
            let terms: Vec<String> =
                c.split(x).iter().map(|(p, q)| format!("{}⊗{}", paren(a, p), paren(a, q))).collect();
            let sum = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
            let counit = a.base().element_name(c.counit_scalar(x));
            format!("Δ({}) = {sum}, ε({}) = {counit}", a.name(x), a.name(x))
        })
        .collect();
    GeneratorTable { operation: "coproduct".into(), entries }
}

fn paren(a: &FinSemimodule, x: &[u32]) -> String {
    let n = a.name(x);
    if n.contains('+') {
        format!("({n})")
    } else {
        n
    }
}

fn map_table(operation: &str, symbol: &str, f: &Hom) -> GeneratorTable {
    let (a, b) = (f.source(), f.target());
    let entries = generators(a).iter().map(|x| format!("{symbol}({}) = {}", a.name(x), b.name(&f.apply(x)))).collect();
    GeneratorTable { operation: operation.into(), entries }
}

fn bracket_table(l: &LieObject) -> GeneratorTable {
    let a = l.carrier();
    let gs = generators(a);
    let mut entries = vec![];
    for x in &gs {
        for y in &gs {
            let v = l.br(x, y).map_or("undefined".into(), |z| a.name(&z));
            entries.push(format!("[{}, {}] = {v}", a.name(x), a.name(y)));
        }
    }
    GeneratorTable { operation: "bracket".into(), entries }
}

fn hopf_tables(h: &HopfObject) -> Vec<GeneratorTable> {
    vec![mul_table(&h.bimonoid.monoid), comult_table(&h.bimonoid.comonoid), map_table("antipode", "S", &h.antipode)]
}

fn decl_summary(name: &str, d: &Decl) -> Option<ObjectSummary> {
    let tables = match d {
        Decl::Semiring { .. } => return None,
        Decl::Semimodule { .. } => vec![],
        Decl::Monoid { monoid, .. } => vec![mul_table(monoid)],
        Decl::Comonoid { comonoid, .. } => vec![comult_table(comonoid)],
        Decl::Bimonoid { bimonoid, .. } => vec![mul_table(&bimonoid.monoid), comult_table(&bimonoid.comonoid)],
        Decl::Hopf { hopf, .. } => hopf_tables(hopf),
        Decl::Lie { lie, .. } => vec![bracket_table(lie)],
    };
    Some(summary(name, d.kind(), d.carrier()?, tables))
}

fn titled(mut r: ValidationReport, subject: &str) -> ValidationReport {
    r.subject = subject.to_string();
    r
}

/// Every law suite that applies to a declaration, one report per layer.
pub fn law_suites(d: &Decl, limits: &Limits) -> Result<Vec<ValidationReport>> {
    Ok(match d {
        Decl::Semiring { semiring, .. } => vec![titled(check_semiring(&semiring.to_raw())?, "semiring")],
        Decl::Semimodule { module, .. } => {
            let mut r = ValidationReport::new("semimodule");
            for (i, b) in module.blocks().iter().enumerate() {
                let label = module.labels()[i].clone().unwrap_or_else(|| format!("block{i}"));
                r.absorb(&label, check_block(module.base(), &b.to_raw(&label))?);
            }
            vec![r]
        }
        Decl::Monoid { monoid, .. } => vec![check_monoid(monoid)],
        Decl::Comonoid { comonoid, .. } => vec![check_comonoid(comonoid, limits)?],
        Decl::Bimonoid { bimonoid: b, .. } => {
            vec![check_monoid(&b.monoid), check_comonoid(&b.comonoid, limits)?, check_compatibility(b)]
        }
        Decl::Hopf { hopf: h, .. } => {
            let b = &h.bimonoid;
            vec![
                check_monoid(&b.monoid),
                check_comonoid(&b.comonoid, limits)?,
                check_compatibility(b),
                check_antipode(h),
                titled(check_antipode_reverses(h), "antipode"),
            ]
        }
        Decl::Lie { lie, .. } => vec![check_lie(lie)],
    })
}

/// `Some(text)` for commands whose text output is not a report.
fn dispatch(cmd: &Command, ws: &mut Workspace, limits: &Limits, r: &mut Report) -> Result<Option<String>, Stop> {
    match cmd {
        Command::Check(Check::Laws { name }) => {
            let (f, name) = ws.resolve(name, limits)?;
            let d = f.get(&name)?;
            r.objects.extend(decl_summary(&name, d));
            if let Decl::Semiring { semiring, .. } = d {
                r.fact("semiring", format!("{} ({} elements)", semiring.name(), semiring.size()));
            }
            r.checks = law_suites(d, limits)?;
        }
        Command::Check(Check::Adjunction { lie, hopf, degree }) => {
            let (f, lname) = ws.resolve(lie, limits)?;
            let l = f.lie(&lname)?.clone();
            let (f, hname) = ws.resolve(hopf, limits)?;
            let h = f.hopf(&hname)?.clone();
            r.objects.push(summary(&lname, "lie", l.carrier(), vec![bracket_table(&l)]));
            r.objects.push(summary(&hname, "hopf", h.carrier(), hopf_tables(&h)));
            let adj = adjunction_check(&l, &h, *degree, limits)?;
            r.fact("degree bound", adj.degree);
            r.fact("Lie morphisms", adj.lie_morphisms.len());
            r.fact("Hopf morphisms", adj.hopf_morphisms.len());
            for (k, (f, ft)) in adj.lie_morphisms.iter().zip(&adj.factorizations).enumerate() {
                r.fact(format!("f{k}"), describe(f));
                r.fact(format!("f{k} extended"), describe(ft));
            }
            r.fact("assumption", "the bijection is checked for the degree-bounded envelope only");
            r.checks.push(adj.report);
            if !adj.conclusive {
                return Err(Stop::Inconclusive);
            }
        }
        Command::Inv { name } => {
            let (f, name) = ws.resolve(name, limits)?;
            let a = f.module(&name)?.clone();
            let i = inv(&a);
            r.objects.push(summary(&name, "semimodule", &a, vec![]));
            r.fact("Inv", set(&a, &i.members(limits)?));
            let mut c = ValidationReport::new("inv");
            c.absorb("embedding", i.embedding.check());
            c.absorb("negation", i.negation.check());
            c.law("abelian", [witness(is_abelian(&i.object), || "Inv is not an internal group".into())]);
            r.checks.push(c);
        }
        Command::Abelianize { name } => {
            let (f, name) = ws.resolve(name, limits)?;
            let a = f.module(&name)?.clone();
            let (ab, q) = abelian_reflection(&a);
            r.objects.push(summary(&name, "semimodule", &a, vec![]));
            r.objects.push(summary(&format!("{name}_ab"), "semimodule", &ab, vec![map_table("reflection", "r", &q)]));
            r.fact("reflection size", ab.size());
            let mut c = ValidationReport::new("abelianize");
            c.absorb("r", q.check());
            c.law("abelian", [witness(is_abelian(&ab), || "the reflection is not an internal group".into())]);
            r.checks.push(c);
        }
        Command::Tensor { left, right } => {
            let (f, ln) = ws.resolve(left, limits)?;
            let a = f.module(&ln)?.clone();
            let (f, rn) = ws.resolve(right, limits)?;
            let b = f.module(&rn)?.clone();
            let t = tensor(&a, &b, limits)?;
            let ab = t.object();
            let mut entries = vec![];
            for x in generators(&a) {
                for y in generators(&b) {
                    entries.push(format!("{}⊗{} = {}", a.name(&x), b.name(&y), ab.name(&t.pure(&x, &y))));
                }
            }
            r.objects.push(summary(&ln, "semimodule", &a, vec![]));
            r.objects.push(summary(&rn, "semimodule", &b, vec![]));
            let table = GeneratorTable { operation: "pure tensors".into(), entries };
            r.objects.push(summary(&format!("{ln}⊗{rn}"), "semimodule", ab, vec![table]));
            let mut c = ValidationReport::new("tensor");
            c.absorb("universal", t.univ().check());
            c.law("generated_by_pure_tensors", [witness(t.is_generated_by_pure_tensors(), String::new)]);
            c.law(
                "decomposition",
                ab.spanning_elements().into_iter().map(|z| {
                    let back: Vec<Elem> = t.decompose(&z).iter().map(|(x, y)| t.pure(x, y)).collect();
                    witness(ab.sum(&back) == z, || ab.name(&z))
                }),
            );
            r.checks.push(c);
        }
        Command::LieOfMonoid { name } => {
            let (f, name) = ws.resolve(name, limits)?;
            let m = f.monoid(&name)?.clone();
            let (l, _) = lie_of_monoid(&m)?;
            r.objects.push(summary(&name, "monoid", m.carrier(), vec![mul_table(&m)]));
            r.objects.push(summary(&format!("Lie({name})"), "lie", l.carrier(), vec![bracket_table(&l)]));
            r.checks.push(check_lie(&l));
        }
        Command::TensorAlgebra { name, degree } => {
            let (f, name) = ws.resolve(name, limits)?;
            let a = f.module(&name)?.clone();
            let t = truncated_tensor_algebra(&a, *degree, limits)?;
            r.objects.push(summary(&name, "semimodule", &a, vec![]));
            let tables = vec![comult_table(t.comonoid())];
            r.objects.push(summary(&format!("T≤{degree}({name})"), "bimonoid", t.carrier(), tables));
            for n in 0..=*degree {
                r.fact(format!("degree {n} size"), t.component(n).size());
            }
            r.checks.push(check_bimonoid(t.bimonoid(), limits)?);
            r.checks.push(check_generators_primitive(&t)?);
            match t.hopf() {
                Ok(h) => r.checks.push(check_antipode(&h)),
                Err(Error::Precondition(why)) => r.fact("antipode", format!("none ({why})")),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Envelope { name, degree, stability_check: stable } => {
            let (f, name) = ws.resolve(name, limits)?;
            let l = f.lie(&name)?.clone();
            let e = enveloping(&l, *degree, limits)?;
            let u = e.quotient();
            r.objects.push(summary(&name, "lie", l.carrier(), vec![bracket_table(&l)]));
            let tables = vec![mul_table(e.monoid()), comult_table(e.comonoid())];
            r.objects.push(summary(&format!("U≤{degree}({name})"), "bimonoid", u, tables));
            r.fact("engine", e.engine());
            r.fact("tensor size", e.tensor().carrier().size());
            r.fact("quotient size", u.size());
            r.fact("congruence classes", u.size());
            r.fact("congruence blocks", u.num_blocks());
            for n in 0..=*degree {
                r.fact(format!("filtration {n} size"), e.filtration_size(n));
            }
            r.checks.push(check_envelope(&e, limits)?);
            if *stable {
                r.checks.push(stability_check(&l, *degree, limits)?);
                r.fact("assumption", format!("degree ≤ {degree} fragment compared against bound {}", degree + 1));
            } else {
                r.fact("assumption", format!("degree ≤ {degree} fragment taken as exact (unchecked)"));
            }
        }
        Command::Primitives { name } => {
            let (f, name) = ws.resolve(name, limits)?;
            let d = f.get(&name)?.clone();
            let b = f.bimonoid(&name)?.clone();
            r.objects.extend(decl_summary(&name, &d));
            let p = primitives(&b, limits)?;
            let a = b.carrier();
            r.fact("Prim", set(a, &p.members));
            r.fact("E1", set(a, &p.e1));
            r.fact("E2", set(a, &p.e2));
            if let Decl::Hopf { hopf, .. } = &d {
                let pb = p_bar(hopf, limits)?;
                r.objects.push(summary(&format!("P({name})"), "lie", pb.lie.carrier(), vec![bracket_table(&pb.lie)]));
                r.checks.push(check_antipode_on_primitives(hopf, limits)?);
                r.checks.push(check_p_bar(hopf, limits)?);
            }
        }
        Command::List { file } => {
            let f = ws.file(file.as_ref(), limits)?;
            for e in &f.entries {
                r.fact(&e.name, e.decl.kind());
            }
        }
        Command::Fmt { file } => {
            let f = ws.file(file.as_ref(), limits)?;
            let s = text::serialize(f, limits)?;
            r.fact("source", &s);
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A hom by its values on block generators.
fn describe(f: &Hom) -> String {
    let (a, b) = (f.source(), f.target());
    let parts: Vec<String> = generators(a).iter().map(|x| format!("{} ↦ {}", a.name(x), b.name(&f.apply(x)))).collect();
    if parts.is_empty() {
        "zero map".into()
    } else {
        parts.join(", ")
    }
}
