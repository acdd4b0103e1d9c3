use std::fmt::Write as _;

use crate::limits::Limits;
use crate::monoidal::{ComonoidObject, MonoidObject};
use crate::semimodule::{Elem, FinSemimodule, Hom};
use crate::tensor::Bimorphism;
use crate::{Error, Result};

use super::{AlgebraFile, Decl};

fn row(out: &mut String, label: &str, cells: impl IntoIterator<Item = String>) {
    let cells: Vec<String> = cells.into_iter().collect();
    writeln!(out, "    {label}: {}", cells.join(" ")).unwrap();
}

fn full_table(out: &mut String, key: &str, b: &Bimorphism, limits: &Limits) -> Result<()> {
    let a = b.target();
    let elems = a.elements(limits)?;
    let names: Vec<String> = elems.iter().map(|x| a.name(x)).collect();
    writeln!(out, "  {key}  # columns: {}", names.join(" ")).unwrap();
    for (x, n) in elems.iter().zip(&names) {
        row(out, n, elems.iter().map(|y| b.apply(x, y).map_or("-".into(), |z| a.name(&z))));
    }
    Ok(())
}

/// Block generators of `a`; together they determine any hom out of `a`.
fn generators(a: &FinSemimodule) -> Vec<Elem> {
    (0..a.num_blocks()).flat_map(|i| a.block(i).generators().iter().map(move |&g| a.inject(i, g))).collect()
}

fn factor(a: &FinSemimodule, x: &[u32]) -> String {
    let n = a.name(x);
    if n.contains(['+', '⊗']) {
        format!("({n})")
    } else {
        n
    }
}

fn map_lines(out: &mut String, key: &str, f: &Hom, value: impl Fn(&Elem) -> String) {
    let a = f.source();
    writeln!(out, "  {key}").unwrap();
    for g in generators(a) {
        writeln!(out, "    {} -> {}", a.name(&g), value(&f.apply(&g))).unwrap();
    }
}

fn monoid(out: &mut String, m: &MonoidObject, limits: &Limits) -> Result<()> {
    writeln!(out, "  unit {}", m.carrier().name(m.unit())).unwrap();
    full_table(out, "mul", m.mult(), limits)
}

fn comonoid(out: &mut String, c: &ComonoidObject) {
    let a = c.carrier();
    let sq = c.square();
    map_lines(out, "comult", c.comult(), |z| {
        let terms: Vec<String> =
            sq.decompose(z).iter().map(|(x, y)| format!("{}⊗{}", factor(a, x), factor(a, y))).collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    });
    map_lines(out, "counit", c.counit(), |s| a.base().element_name(s[0]).to_string());
}

fn semimodule(out: &mut String, name: &str, over: &str, a: &FinSemimodule) -> Result<()> {
    if a.is_free() && a.labels().iter().all(Option::is_some) {
        let labels: Vec<String> = (0..a.num_blocks()).map(|i| format!(" {}", a.label(i))).collect();
        writeln!(out, "semimodule {name} over {over} = free{}", labels.concat()).unwrap();
        return Ok(());
    }
    if a.num_blocks() != 1 || a.labels()[0].is_some() {
        return Err(Error::Precondition(format!("`{name}` is neither free nor a single table")));
    }
    let raw = a.block(0).to_raw(name);
    writeln!(out, "semimodule {name} over {over}").unwrap();
    writeln!(out, "  elements {}", raw.names.join(" ")).unwrap();
    writeln!(out, "  zero {}", raw.names[raw.zero]).unwrap();
    writeln!(out, "  add").unwrap();
    for (n, r) in raw.names.iter().zip(&raw.add) {
        row(out, n, r.iter().map(|&k| raw.names[k].clone()));
    }
    writeln!(out, "  act").unwrap();
    for (s, r) in a.base().names().iter().zip(&raw.act) {
        row(out, s, r.iter().map(|&k| raw.names[k].clone()));
    }
    writeln!(out, "end").unwrap();
    Ok(())
}

/// Text form of `file`; parsing it back gives an equal file.
pub fn serialize(file: &AlgebraFile, limits: &Limits) -> Result<String> {
    let mut out = String::new();
    for (k, e) in file.entries.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let name = &e.name;
        match &e.decl {
            Decl::Semiring { builtin: Some(b), .. } => writeln!(out, "semiring {name} = builtin {b}").unwrap(),
            Decl::Semiring { semiring, builtin: None } => {
                let raw = semiring.to_raw();
                writeln!(out, "semiring {name}").unwrap();
                writeln!(out, "  elements {}", raw.names.join(" ")).unwrap();
                writeln!(out, "  zero {}", raw.names[raw.zero]).unwrap();
                writeln!(out, "  one {}", raw.names[raw.one]).unwrap();
                for (key, t) in [("add", &raw.add), ("mul", &raw.mul)] {
                    writeln!(out, "  {key}").unwrap();
                    for (n, r) in raw.names.iter().zip(t) {
                        row(&mut out, n, r.iter().map(|&k| raw.names[k].clone()));
                    }
                }
                writeln!(out, "end").unwrap();
            }
            Decl::Semimodule { over, module } => semimodule(&mut out, name, over, module)?,
            other => {
                let on = match other {
                    Decl::Monoid { on, .. }
                    | Decl::Comonoid { on, .. }
                    | Decl::Bimonoid { on, .. }
                    | Decl::Hopf { on, .. }
                    | Decl::Lie { on, .. } => on,
                    _ => unreachable!("semirings and semimodules are handled above"),
                };
                writeln!(out, "{} {name} on {on}", other.kind()).unwrap();
                match other {
                    Decl::Monoid { monoid: m, .. } => monoid(&mut out, m, limits)?,
                    Decl::Comonoid { comonoid: c, .. } => comonoid(&mut out, c),
                    Decl::Bimonoid { bimonoid: b, .. } => {
                        monoid(&mut out, &b.monoid, limits)?;
                        comonoid(&mut out, &b.comonoid);
                    }
                    Decl::Hopf { hopf: h, .. } => {
                        monoid(&mut out, &h.bimonoid.monoid, limits)?;
                        comonoid(&mut out, &h.bimonoid.comonoid);
                        let a = h.carrier();
                        map_lines(&mut out, "antipode", &h.antipode, |y| a.name(y));
                    }
                    Decl::Lie { lie, .. } => full_table(&mut out, "bracket", lie.bracket(), limits)?,
                    _ => unreachable!("semirings and semimodules are handled above"),
                }
                writeln!(out, "end").unwrap();
            }
        }
    }
    Ok(out)
}
