use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use crate::lie::LieObject;
use crate::limits::Limits;
use crate::monoidal::{BimonoidObject, ComonoidObject, HopfObject, MonoidObject};
use crate::semimodule::{Block, Elem, FinSemimodule, Hom, RawBlock};
use crate::semiring::{builtin, Builtin, FiniteSemiring, RawSemiring};
use crate::tensor::{tensor, Bimorphism, TensorObject};
use crate::{Error, Result};

use super::{AlgebraFile, Decl, Entry, ParseError, ParseErrorKind};

use ParseErrorKind::{Dimension, Invalid, Syntax, Unresolved};

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn fail(kind: ParseErrorKind, at: Tok, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line: at.line, column: at.col, kind, message: message.into() })
}

struct Line<'a> {
    toks: Vec<Tok<'a>>,
    /// The line without its comment.
    body: Tok<'a>,
}

fn column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn lex(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim_end();
        if body.trim().is_empty() {
            continue;
        }
        let mut toks = Vec::new();
        let mut start = None;
        for (b, c) in body.char_indices().chain([(body.len(), ' ')]) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(b),
                (true, Some(s)) => {
                    toks.push(Tok { text: &body[s..b], line: i + 1, col: column(raw, s) });
                    start = None;
                }
                _ => {}
            }
        }
        let lead = body.len() - body.trim_start().len();
        out.push(Line { toks, body: Tok { text: body.trim(), line: i + 1, col: column(raw, lead) } });
    }
    out
}

enum Row<'a> {
    Table { label: Tok<'a>, values: Vec<Tok<'a>> },
    Map { lhs: Tok<'a>, rhs: Tok<'a> },
}

struct Section<'a> {
    head: Tok<'a>,
    inline: Vec<Tok<'a>>,
    rows: Vec<Row<'a>>,
}

const INLINE: &[&str] = &["elements", "zero", "one", "unit"];
const TABLES: &[&str] = &["add", "mul", "act", "bracket"];
const MAPS: &[&str] = &["comult", "counit", "antipode"];

fn allowed(kind: &str) -> &'static [&'static str] {
    match kind {
        "semiring" => &["elements", "zero", "one", "add", "mul"],
        "semimodule" => &["elements", "zero", "add", "act"],
        "monoid" => &["unit", "mul"],
        "comonoid" => &["comult", "counit"],
        "bimonoid" => &["unit", "mul", "comult", "counit"],
        "hopf" => &["unit", "mul", "comult", "counit", "antipode"],
        "lie" => &["bracket"],
        _ => &[],
    }
}

struct Body<'a> {
    head: Tok<'a>,
    name: String,
    sections: HashMap<&'a str, Section<'a>>,
}

impl<'a> Body<'a> {
    fn get(&self, key: &str) -> Result<&Section<'a>> {
        self.sections
            .get(key)
            .ok_or_else(|| fail(Syntax, self.head, format!("`{}` is missing its `{key}` section", self.name)))
    }

    /// The single inline value of `key`.
    fn value(&self, key: &str) -> Result<Tok<'a>> {
        let s = self.get(key)?;
        match s.inline[..] {
            [t] => Ok(t),
            _ => Err(fail(Syntax, s.head, format!("`{key}` takes exactly one value"))),
        }
    }
}

fn read_body<'a>(
    kind: &str,
    name: &str,
    head: Tok<'a>,
    lines: &mut std::slice::Iter<'_, Line<'a>>,
) -> Result<Body<'a>> {
    let mut sections: HashMap<&str, Section> = HashMap::new();
    let mut current: Option<&str> = None;
    loop {
        let Some(line) = lines.next() else {
            return Err(fail(Syntax, head, format!("`{name}` has no closing `end`")));
        };
        let first = line.toks[0];
        if first.text == "end" {
            if line.toks.len() > 1 {
                return Err(fail(Syntax, line.toks[1], "unexpected text after `end`"));
            }
            return Ok(Body { head, name: name.to_string(), sections });
        }
        let keyword = INLINE.iter().chain(TABLES).chain(MAPS).any(|k| *k == first.text);
        if keyword {
            if !allowed(kind).contains(&first.text) {
                return Err(fail(Syntax, first, format!("`{}` does not belong in a {kind}", first.text)));
            }
            if sections.contains_key(first.text) {
                return Err(fail(Syntax, first, format!("`{}` given twice", first.text)));
            }
            let inline = line.toks[1..].to_vec();
            if !INLINE.contains(&first.text) && !inline.is_empty() {
                return Err(fail(
                    Syntax,
                    inline[0],
                    format!("`{}` takes its entries on the following lines", first.text),
                ));
            }
            sections.insert(first.text, Section { head: first, inline, rows: vec![] });
            current = Some(first.text);
            continue;
        }
        let section = current.filter(|c| !INLINE.contains(c)).and_then(|c| sections.get_mut(c));
        let Some(section) = section else {
            return Err(fail(Syntax, first, format!("expected a section keyword, found `{}`", first.text)));
        };
        if MAPS.contains(&section.head.text) {
            let body = line.body;
            let Some(arrow) = body.text.find("->") else {
                return Err(fail(Syntax, first, "expected `element -> value`"));
            };
            let (l, r) = (&body.text[..arrow], &body.text[arrow + 2..]);
            let r_start = arrow + 2 + (r.len() - r.trim_start().len());
            let lhs = Tok { text: l.trim(), line: body.line, col: body.col };
            let rhs = Tok { text: r.trim(), line: body.line, col: body.col + body.text[..r_start].chars().count() };
            if lhs.text.is_empty() || rhs.text.is_empty() {
                return Err(fail(Syntax, first, "expected `element -> value`"));
            }
            section.rows.push(Row::Map { lhs, rhs });
        } else {
            let Some(label) = first.text.strip_suffix(':') else {
                return Err(fail(Syntax, first, "expected a row label ending in `:`"));
            };
            section.rows.push(Row::Table { label: Tok { text: label, ..first }, values: line.toks[1..].to_vec() });
        }
    }
}

/// Rows of a table, placed by `row_index` and returned in `row_names` order.
fn table<'a, T>(
    body: &Body<'a>,
    key: &str,
    row_names: &[String],
    row_index: impl Fn(Tok<'a>) -> Result<usize>,
    ncols: usize,
    mut cell: impl FnMut(Tok<'a>) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let s = body.get(key)?;
    let mut rows: Vec<Option<Vec<T>>> = (0..row_names.len()).map(|_| None).collect();
    for row in &s.rows {
        let Row::Table { label, values } = row else { unreachable!("table sections hold table rows") };
        let i = row_index(*label)?;
        if rows[i].is_some() {
            return Err(fail(
                Dimension,
                *label,
                format!("row `{}` of `{key}` in `{}` is repeated", label.text, body.name),
            ));
        }
        if values.len() != ncols {
            return Err(fail(
                Dimension,
                *label,
                format!(
                    "row `{}` of `{key}` in `{}` has {} entries, expected {ncols}",
                    label.text,
                    body.name,
                    values.len()
                ),
            ));
        }
        rows[i] = Some(values.iter().map(|&t| cell(t)).collect::<Result<_>>()?);
    }
    rows.into_iter()
        .zip(row_names)
        .map(|(r, n)| r.ok_or_else(|| fail(Dimension, s.head, format!("`{key}` in `{}` has no row `{n}`", body.name))))
        .collect()
}

fn lookup(names: &[String], t: Tok, what: &str) -> Result<usize> {
    names.iter().position(|n| n == t.text).ok_or_else(|| fail(Unresolved, t, format!("`{}` is not {what}", t.text)))
}

fn element(a: &FinSemimodule, t: Tok) -> Result<Elem> {
    a.parse_element(t.text).map_err(|_| fail(Unresolved, t, format!("`{}` is not an element of the carrier", t.text)))
}

/// Splits at `sep` outside parentheses and brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, vec![]);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_parens(s: &str) -> &str {
    match s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) if balanced(inner) => inner,
        _ => s,
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    s.chars().all(|c| {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        depth >= 0
    }) && depth == 0
}

/// `a⊗b + c⊗d`, with `0` for the empty sum.
fn tensor_value(a: &FinSemimodule, sq: &TensorObject, t: Tok) -> Result<Elem> {
    let mut terms = vec![];
    for term in split_top(t.text, '+').into_iter().map(str::trim) {
        if term == "0" {
            continue;
        }
        let factors: Vec<&str> = split_top(term, '⊗').into_iter().map(|f| strip_parens(f.trim())).collect();
        let [l, r] = factors[..] else {
            return Err(fail(Syntax, t, format!("`{term}` is not of the form `a⊗b`")));
        };
        let parse = |f: &str| element(a, Tok { text: f, ..t });
        terms.push(sq.pure(&parse(l)?, &parse(r)?));
    }
    Ok(sq.object().sum(&terms))
}

fn invalid(at: Tok, e: Error) -> Error {
    match e {
        Error::Resource { .. } => e,
        Error::Laws(r) => fail(Invalid, at, format!("{}: {}", r.subject, r.first_violation().unwrap_or_default())),
        other => fail(Invalid, at, other.to_string()),
    }
}

fn map_section(
    body: &Body,
    key: &str,
    source: &Arc<FinSemimodule>,
    target: &Arc<FinSemimodule>,
    limits: &Limits,
    mut value: impl FnMut(Tok) -> Result<Elem>,
) -> Result<Hom> {
    let s = body.get(key)?;
    let mut values = vec![];
    for row in &s.rows {
        let Row::Map { lhs, rhs } = row else { unreachable!("map sections hold map rows") };
        values.push((element(source, *lhs)?, value(*rhs)?));
    }
    Hom::extend(source, target, &values, limits).map_err(|e| invalid(s.head, e))
}

struct Parser<'l> {
    file: AlgebraFile,
    limits: &'l Limits,
}

impl Parser<'_> {
    fn resolve<T>(&self, t: Tok, f: impl FnOnce(&AlgebraFile) -> Result<T>) -> Result<T> {
        f(&self.file).map_err(|e| fail(Unresolved, t, e.to_string()))
    }

    fn semiring(&self, body: &Body) -> Result<Decl> {
        let names: Vec<String> = body.get("elements")?.inline.iter().map(|t| t.text.to_string()).collect();
        let n = names.len();
        let idx = |t: Tok| lookup(&names, t, "a declared element");
        let raw = RawSemiring {
            name: body.name.clone(),
            add: table(body, "add", &names, idx, n, idx)?,
            mul: table(body, "mul", &names, idx, n, idx)?,
            zero: idx(body.value("zero")?)?,
            one: idx(body.value("one")?)?,
            names,
        };
        let s = FiniteSemiring::new(raw).map_err(|e| invalid(body.head, e))?;
        Ok(Decl::Semiring { semiring: Arc::new(s), builtin: None })
    }

    fn table_module(&self, body: &Body, over: &str, base: &Arc<FiniteSemiring>) -> Result<Decl> {
        let names: Vec<String> = body.get("elements")?.inline.iter().map(|t| t.text.to_string()).collect();
        let n = names.len();
        let idx = |t: Tok| lookup(&names, t, "a declared element");
        let raw = RawBlock {
            name: body.name.clone(),
            add: table(body, "add", &names, idx, n, idx)?,
            zero: idx(body.value("zero")?)?,
            act: table(body, "act", base.names(), |t| lookup(base.names(), t, "a scalar"), n, idx)?,
            names,
        };
        let block = Block::new(base.clone(), &raw).map_err(|e| invalid(body.head, e))?;
        Ok(Decl::Semimodule { over: over.to_string(), module: Arc::new(FinSemimodule::from_block(Arc::new(block))) })
    }

    /// A full table of a possibly partial bimorphism on `a`.
    fn bimorphism(&self, body: &Body, key: &str, a: &Arc<FinSemimodule>) -> Result<Bimorphism> {
        let elems = a.elements(self.limits)?;
        let names: Vec<String> = elems.iter().map(|x| a.name(x)).collect();
        let s = body.get(key)?;
        // Row labels may use any spelling of an element.
        let row = |t: Tok| element(a, t).map(|x| a.index_of(&x));
        let cell = |t: Tok| if t.text == "-" { Ok(None) } else { element(a, t).map(Some) };
        let t = table(body, key, &names, row, names.len(), cell)?;
        let b = Bimorphism::from_partial_fn(a, a, a, |x, y| t[a.index_of(x)][a.index_of(y)].clone());
        let r = b.check();
        if !r.passed() {
            return Err(invalid(s.head, Error::Laws(Box::new(r))));
        }
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                if b.apply(x, y) != t[i][j] {
                    let msg = format!(
                        "entry ({}, {}) of `{key}` is not the bilinear extension of the others",
                        names[i], names[j]
                    );
                    return Err(fail(Invalid, s.head, msg));
                }
            }
        }
        Ok(b)
    }

    fn monoid(&self, body: &Body, a: &Arc<FinSemimodule>) -> Result<MonoidObject> {
        let mult = self.bimorphism(body, "mul", a)?;
        let unit = element(a, body.value("unit")?)?;
        MonoidObject::new(mult, unit).map_err(|e| invalid(body.head, e))
    }

    fn comonoid(&self, body: &Body, a: &Arc<FinSemimodule>) -> Result<ComonoidObject> {
        let sq = tensor(a, a, self.limits)?;
        let comult = map_section(body, "comult", a, sq.object(), self.limits, |t| tensor_value(a, &sq, t))?;
        let f1 = Arc::new(FinSemimodule::unit(a.base()));
        let counit = map_section(body, "counit", a, &f1, self.limits, |t| {
            a.base()
                .index_of(t.text)
                .map(|s| vec![s])
                .ok_or_else(|| fail(Unresolved, t, format!("`{}` is not a scalar", t.text)))
        })?;
        ComonoidObject::new(sq, comult, counit).map_err(|e| invalid(body.head, e))
    }

    fn object(&self, kind: &str, body: &Body, on: &str, a: &Arc<FinSemimodule>) -> Result<Decl> {
        let on = on.to_string();
        let bimonoid = |p: &Self| -> Result<BimonoidObject> {
            BimonoidObject::new(p.monoid(body, a)?, p.comonoid(body, a)?).map_err(|e| invalid(body.head, e))
        };
        Ok(match kind {
            "monoid" => Decl::Monoid { on, monoid: self.monoid(body, a)? },
            "comonoid" => Decl::Comonoid { on, comonoid: self.comonoid(body, a)? },
            "bimonoid" => Decl::Bimonoid { on, bimonoid: bimonoid(self)? },
            "hopf" => {
                let s = map_section(body, "antipode", a, a, self.limits, |t| element(a, t))?;
                Decl::Hopf { on, hopf: HopfObject::new(bimonoid(self)?, s).map_err(|e| invalid(body.head, e))? }
            }
            "lie" => Decl::Lie {
                on,
                lie: LieObject::new(self.bimorphism(body, "bracket", a)?).map_err(|e| invalid(body.head, e))?,
            },
            _ => unreachable!("kinds are checked by the caller"),
        })
    }

    fn declaration<'a>(&mut self, line: &Line<'a>, lines: &mut std::slice::Iter<'_, Line<'a>>) -> Result<()> {
        let t = &line.toks;
        let kind = t[0];
        if !["semiring", "semimodule", "monoid", "comonoid", "bimonoid", "hopf", "lie"].contains(&kind.text) {
            return Err(fail(Syntax, kind, format!("expected a declaration, found `{}`", kind.text)));
        }
        let Some(&name) = t.get(1) else {
            return Err(fail(Syntax, kind, "missing name"));
        };
        if self.file.get(name.text).is_ok() {
            return Err(fail(Syntax, name, format!("`{}` is declared twice", name.text)));
        }
        let words: Vec<&str> = t[2..].iter().map(|t| t.text).collect();
        let decl = match (kind.text, &words[..]) {
            ("semiring", ["=", "builtin", rest @ ..]) => {
                let b: Builtin = rest.join(" ").parse().map_err(|e: Error| fail(Syntax, t[3], e.to_string()))?;
                let s = builtin(b).map_err(|e| fail(Syntax, t[3], e.to_string()))?.with_name(name.text);
                Decl::Semiring { semiring: Arc::new(s), builtin: Some(b) }
            }
            ("semiring", []) => self.semiring(&read_body("semiring", name.text, name, lines)?)?,
            ("semimodule", ["over", s, rest @ ..]) => {
                let base = self.resolve(t[3], |f| f.semiring(s).cloned())?;
                match rest {
                    ["=", "free", labels @ ..] => {
                        let labels = labels.iter().map(|l| Some(l.to_string())).collect();
                        let module = Arc::new(FinSemimodule::free_labeled(&base, labels));
                        Decl::Semimodule { over: s.to_string(), module }
                    }
                    [] => self.table_module(&read_body("semimodule", name.text, name, lines)?, s, &base)?,
                    _ => return Err(fail(Syntax, t[4], "expected `= free <labels>` or a table body")),
                }
            }
            (k, ["on", a]) if k != "semiring" && k != "semimodule" => {
                let carrier = self.resolve(t[3], |f| match f.get(a)? {
                    Decl::Semimodule { module, .. } => Ok(module.clone()),
                    other => Err(Error::Unresolved(format!("`{a}` is a {}, not a semimodule", other.kind()))),
                })?;
                self.object(k, &read_body(k, name.text, name, lines)?, a, &carrier)?
            }
            _ => return Err(fail(Syntax, kind, format!("malformed `{}` declaration", kind.text))),
        };
        self.file.entries.push(Entry { name: name.text.to_string(), decl });
        Ok(())
    }
}

pub fn parse(src: &str, limits: &Limits) -> Result<AlgebraFile> {
    let lines = lex(src);
    let mut it = lines.iter();
    let mut p = Parser { file: AlgebraFile::default(), limits };
    while let Some(line) = it.next() {
        p.declaration(line, &mut it)?;
    }
    Ok(p.file)
}

pub fn parse_file(path: &Path, limits: &Limits) -> Result<AlgebraFile> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    parse(&src, limits)
}
