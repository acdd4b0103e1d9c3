//! Line-oriented text format for algebra definitions.
//!
//! ```text
//! # Comments run to the end of the line.
//! semiring zmod2 = builtin zmod 2
//!
//! semimodule C3 over B2
//!   elements 0 a 1
//!   zero 0
//!   add
//!     0: 0 a 1
//!     a: a a 1
//!     1: 1 1 1
//!   act
//!     0: 0 0 0
//!     1: 0 a 1
//! end
//!
//! semimodule A over zmod2 = free 1 x
//!
//! hopf X2 on A
//!   unit 1
//!   mul  # columns: 0 x 1 1+x
//!     0: 0 0 0 0
//!     x: 0 0 x x
//!     1: 0 x 1 1+x
//!     1+x: 0 x 1+x 1
//!   comult
//!     1 -> 1⊗1
//!     x -> x⊗1 + 1⊗x
//!   counit
//!     1 -> 1
//!     x -> 0
//!   antipode
//!     1 -> 1
//!     x -> x
//! end
//! ```
//!
//! Table rows are labeled; columns follow the carrier's element order.
//! Products and brackets are given on all pairs (`-` marks an undefined
//! product); comultiplication, counit and antipode are given on enough
//! elements to determine them and extended additively.

mod parse;
mod write;

use std::fmt;
use std::sync::Arc;

use crate::lie::LieObject;
use crate::monoidal::{BimonoidObject, ComonoidObject, HopfObject, MonoidObject};
use crate::semimodule::FinSemimodule;
use crate::semiring::{Builtin, FiniteSemiring};
use crate::{Error, Result};

pub use parse::{parse, parse_file};
pub use write::serialize;

/// The shipped fixture library.
pub const LIBRARY: &str = include_str!("../../fixtures/library.alg");

pub fn library() -> AlgebraFile {
    parse(LIBRARY, &crate::Limits::default()).expect("the shipped library parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// A name that is not declared (or not declared before use).
    Unresolved,
    /// Tables whose shape does not match the declared carriers.
    Dimension,
    /// Well-formed input describing something that is not a valid object.
    Invalid,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Unresolved => "unresolved reference",
            ParseErrorKind::Dimension => "dimension mismatch",
            ParseErrorKind::Invalid => "invalid object",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Clone, Debug)]
pub enum Decl {
    Semiring { semiring: Arc<FiniteSemiring>, builtin: Option<Builtin> },
    Semimodule { over: String, module: Arc<FinSemimodule> },
    Monoid { on: String, monoid: MonoidObject },
    Comonoid { on: String, comonoid: ComonoidObject },
    Bimonoid { on: String, bimonoid: BimonoidObject },
    Hopf { on: String, hopf: HopfObject },
    Lie { on: String, lie: LieObject },
}

impl Decl {
    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Semiring { .. } => "semiring",
            Decl::Semimodule { .. } => "semimodule",
            Decl::Monoid { .. } => "monoid",
            Decl::Comonoid { .. } => "comonoid",
            Decl::Bimonoid { .. } => "bimonoid",
            Decl::Hopf { .. } => "hopf",
            Decl::Lie { .. } => "lie",
        }
    }

    /// The carrier, for everything but semirings.
    pub fn carrier(&self) -> Option<&Arc<FinSemimodule>> {
        match self {
            Decl::Semiring { .. } => None,
            Decl::Semimodule { module, .. } => Some(module),
            Decl::Monoid { monoid, .. } => Some(monoid.carrier()),
            Decl::Comonoid { comonoid, .. } => Some(comonoid.carrier()),
            Decl::Bimonoid { bimonoid, .. } => Some(bimonoid.carrier()),
            Decl::Hopf { hopf, .. } => Some(hopf.carrier()),
            Decl::Lie { lie, .. } => Some(lie.carrier()),
        }
    }
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Decl::Semiring { semiring: a, builtin: x }, Decl::Semiring { semiring: b, builtin: y }) => {
                a == b && x == y
            }
            (Decl::Semimodule { over: o, module: a }, Decl::Semimodule { over: p, module: b }) => o == p && a == b,
            (Decl::Monoid { on: o, monoid: a }, Decl::Monoid { on: p, monoid: b }) => o == p && monoid_eq(a, b),
            (Decl::Comonoid { on: o, comonoid: a }, Decl::Comonoid { on: p, comonoid: b }) => {
                o == p && comonoid_eq(a, b)
            }
            (Decl::Bimonoid { on: o, bimonoid: a }, Decl::Bimonoid { on: p, bimonoid: b }) => {
                o == p && bimonoid_eq(a, b)
            }
            (Decl::Hopf { on: o, hopf: a }, Decl::Hopf { on: p, hopf: b }) => {
                o == p && bimonoid_eq(&a.bimonoid, &b.bimonoid) && a.antipode == b.antipode
            }
            (Decl::Lie { on: o, lie: a }, Decl::Lie { on: p, lie: b }) => o == p && a.bracket() == b.bracket(),
            _ => false,
        }
    }
}

fn monoid_eq(a: &MonoidObject, b: &MonoidObject) -> bool {
    a.mult() == b.mult() && a.unit() == b.unit()
}

fn comonoid_eq(a: &ComonoidObject, b: &ComonoidObject) -> bool {
    a.comult() == b.comult() && a.counit() == b.counit()
}

fn bimonoid_eq(a: &BimonoidObject, b: &BimonoidObject) -> bool {
    monoid_eq(&a.monoid, &b.monoid) && comonoid_eq(&a.comonoid, &b.comonoid)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: String,
    pub decl: Decl,
}

/// Declarations in file order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraFile {
    pub entries: Vec<Entry>,
}

impl AlgebraFile {
    pub fn get(&self, name: &str) -> Result<&Decl> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.decl)
            .ok_or_else(|| Error::Unresolved(format!("`{name}` is not declared")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    fn wrong_kind(&self, name: &str, want: &str) -> Error {
        let kind = self.get(name).map(Decl::kind).unwrap_or("undeclared");
        Error::Unresolved(format!("`{name}` is a {kind}, not a {want}"))
    }

    pub fn semiring(&self, name: &str) -> Result<&Arc<FiniteSemiring>> {
        match self.get(name)? {
            Decl::Semiring { semiring, .. } => Ok(semiring),
            _ => Err(self.wrong_kind(name, "semiring")),
        }
    }

    /// The carrier of any non-semiring declaration.
    pub fn module(&self, name: &str) -> Result<&Arc<FinSemimodule>> {
        self.get(name)?.carrier().ok_or_else(|| self.wrong_kind(name, "semimodule"))
    }

    /// The monoid of a monoid, bimonoid or Hopf declaration.
    pub fn monoid(&self, name: &str) -> Result<&MonoidObject> {
        match self.get(name)? {
            Decl::Monoid { monoid, .. } => Ok(monoid),
            Decl::Bimonoid { bimonoid, .. } => Ok(&bimonoid.monoid),
            Decl::Hopf { hopf, .. } => Ok(&hopf.bimonoid.monoid),
            _ => Err(self.wrong_kind(name, "monoid")),
        }
    }

    pub fn bimonoid(&self, name: &str) -> Result<&BimonoidObject> {
        match self.get(name)? {
            Decl::Bimonoid { bimonoid, .. } => Ok(bimonoid),
            Decl::Hopf { hopf, .. } => Ok(&hopf.bimonoid),
            _ => Err(self.wrong_kind(name, "bimonoid")),
        }
    }

    pub fn hopf(&self, name: &str) -> Result<&HopfObject> {
        match self.get(name)? {
            Decl::Hopf { hopf, .. } => Ok(hopf),
            _ => Err(self.wrong_kind(name, "hopf object")),
        }
    }

    pub fn lie(&self, name: &str) -> Result<&LieObject> {
        match self.get(name)? {
            Decl::Lie { lie, .. } => Ok(lie),
            _ => Err(self.wrong_kind(name, "Lie object")),
        }
    }
}
