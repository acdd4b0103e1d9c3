//! Finite commutative semirings given by dense operation tables.
//!
//! Elements are the indices `0..n`. Every constructed semiring has been law
//! checked; [`check_semiring`] exposes the checker for raw candidate tables.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::report::{witness, ValidationReport};
use crate::{Error, Result};

/// Candidate tables, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSemiring {
    pub name: String,
    pub names: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    names: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: u32,
    one: u32,
}

impl FiniteSemiring {
    /// Validates shape and laws of `raw`.
    pub fn new(raw: RawSemiring) -> Result<Self> {
        let report = check_semiring(&raw)?;
        report.into_result()?;
        Ok(Self::from_raw_unchecked(&raw))
    }

    fn from_raw_unchecked(raw: &RawSemiring) -> Self {
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&v| v as u32).collect();
        FiniteSemiring {
            name: raw.name.clone(),
            names: raw.names.clone(),
            add: flat(&raw.add),
            mul: flat(&raw.mul),
            zero: raw.zero as u32,
            one: raw.one as u32,
        }
    }

    pub fn to_raw(&self) -> RawSemiring {
        let n = self.size();
        let rows = |t: &[u32]| (0..n).map(|i| (0..n).map(|j| t[i * n + j] as usize).collect()).collect();
        RawSemiring {
            name: self.name.clone(),
            names: self.names.clone(),
            add: rows(&self.add),
            mul: rows(&self.mul),
            zero: self.zero as usize,
            one: self.one as usize,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size() + b as usize]
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size() as u32
    }

    /// Additive inverse, if one exists.
    pub fn neg(&self, a: u32) -> Option<u32> {
        self.elements().find(|&b| self.add(a, b) == self.zero)
    }

    /// Multiplicative inverse, if one exists.
    pub fn inv(&self, a: u32) -> Option<u32> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_ring(&self) -> bool {
        self.elements().all(|a| self.neg(a).is_some())
    }

    /// A ring in which every nonzero element is a unit (and 0 ≠ 1).
    pub fn is_field(&self) -> bool {
        self.zero != self.one
            && self.is_ring()
            && self.elements().filter(|&a| a != self.zero).all(|a| self.inv(a).is_some())
    }

    /// The image of the natural number `n` (the n-fold sum of `one`).
    pub fn natural(&self, n: u64) -> u32 {
        let mut acc = self.zero;
        for _ in 0..n {
            acc = self.add(acc, self.one);
        }
        acc
    }
}

impl fmt::Display for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.size())
    }
}

/// Checks dimensions and index ranges (hard errors) and then every semiring
/// law exhaustively (violations are reported with witnesses).
pub fn check_semiring(raw: &RawSemiring) -> Result<ValidationReport> {
    let n = raw.names.len();
    if n == 0 {
        return Err(Error::Malformed(format!("semiring {}: empty carrier", raw.name)));
    }
    for (label, t) in [("add", &raw.add), ("mul", &raw.mul)] {
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("semiring {}: {label} table must be {n}x{n}", raw.name)));
        }
        if let Some(v) = t.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::Malformed(format!("semiring {}: {label} entry {v} out of range 0..{n}", raw.name)));
        }
    }
    if raw.zero >= n || raw.one >= n {
        return Err(Error::Malformed(format!("semiring {}: zero/one out of range", raw.name)));
    }

    let nm = |i: usize| raw.names[i].as_str();
    let add = |a: usize, b: usize| raw.add[a][b];
    let mul = |a: usize, b: usize| raw.mul[a][b];
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let triples = || pairs().flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)));
    let z = raw.zero;
    let o = raw.one;

    let mut r = ValidationReport::new(format!("semiring {}", raw.name));
    r.law(
        "add.commutative",
        pairs().map(|(a, b)| witness(add(a, b) == add(b, a), || format!("{}+{} != {}+{}", nm(a), nm(b), nm(b), nm(a)))),
    );
    r.law(
        "add.associative",
        triples().map(|(a, b, c)| {
            witness(add(add(a, b), c) == add(a, add(b, c)), || format!("({}+{})+{}", nm(a), nm(b), nm(c)))
        }),
    );
    r.law("add.zero", (0..n).map(|a| witness(add(z, a) == a, || format!("0+{} != {}", nm(a), nm(a)))));
    r.law(
        "mul.commutative",
        pairs().map(|(a, b)| witness(mul(a, b) == mul(b, a), || format!("{}*{} != {}*{}", nm(a), nm(b), nm(b), nm(a)))),
    );
    r.law(
        "mul.associative",
        triples().map(|(a, b, c)| {
            witness(mul(mul(a, b), c) == mul(a, mul(b, c)), || format!("({}*{})*{}", nm(a), nm(b), nm(c)))
        }),
    );
    r.law("mul.unit", (0..n).map(|a| witness(mul(o, a) == a, || format!("1*{} != {}", nm(a), nm(a)))));
    r.law(
        "distributive",
        triples().map(|(a, b, c)| {
            witness(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), || format!("{}*({}+{})", nm(a), nm(b), nm(c)))
        }),
    );
    r.law("zero.annihilates", (0..n).map(|a| witness(mul(z, a) == z, || format!("0*{} != 0", nm(a)))));
    Ok(r)
}

/// Names of the shipped semiring families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Bool,
    ZMod(usize),
    NatSat(usize),
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let param = |w: Option<&&str>| -> Result<usize> {
            w.ok_or_else(|| Error::InvalidParameter(format!("builtin `{s}` needs a parameter")))?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad parameter in `{s}`")))
        };
        match words.first().copied() {
            Some("bool") if words.len() == 1 => Ok(Builtin::Bool),
            Some("zmod") if words.len() == 2 => Ok(Builtin::ZMod(param(words.get(1))?)),
            Some("nat_sat") if words.len() == 2 => Ok(Builtin::NatSat(param(words.get(1))?)),
            _ => Err(Error::InvalidParameter(format!("unknown builtin semiring `{s}`"))),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Bool => write!(f, "bool"),
            Builtin::ZMod(k) => write!(f, "zmod {k}"),
            Builtin::NatSat(k) => write!(f, "nat_sat {k}"),
        }
    }
}

pub fn builtin(which: Builtin) -> Result<FiniteSemiring> {
    let table = |n: usize, op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect()
    };
    let numbered = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    let raw = match which {
        Builtin::Bool => RawSemiring {
            name: which.to_string(),
            names: numbered(2),
            add: table(2, &|a, b| a | b),
            mul: table(2, &|a, b| a & b),
            zero: 0,
            one: 1,
        },
        Builtin::ZMod(0) | Builtin::NatSat(0) => {
            return Err(Error::InvalidParameter(format!("{which}: parameter must be at least 1")))
        }
        Builtin::ZMod(k) => RawSemiring {
            name: which.to_string(),
            names: numbered(k),
            add: table(k, &|a, b| (a + b) % k),
            mul: table(k, &|a, b| (a * b) % k),
            zero: 0,
            one: 1 % k,
        },
        Builtin::NatSat(k) => RawSemiring {
            name: which.to_string(),
            names: numbered(k + 1),
            add: table(k + 1, &|a, b| (a + b).min(k)),
            mul: table(k + 1, &|a, b| (a * b).min(k)),
            zero: 0,
            one: 1,
        },
    };
    FiniteSemiring::new(raw)
}

/// A map of semirings, stored as an index array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringHom {
    pub source: Arc<FiniteSemiring>,
    pub target: Arc<FiniteSemiring>,
    pub map: Vec<u32>,
}

impl SemiringHom {
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    pub fn check(&self) -> ValidationReport {
        let (s, t) = (&*self.source, &*self.target);
        let f = |a: u32| self.map[a as usize];
        let pairs = || s.elements().flat_map(move |a| s.elements().map(move |b| (a, b)));
        let mut r = ValidationReport::new(format!("semiring map {} -> {}", s.name(), t.name()));
        r.law("units", [witness(f(s.zero()) == t.zero() && f(s.one()) == t.one(), || "0 or 1 not preserved".into())]);
        r.law(
            "additive",
            pairs().map(|(a, b)| {
                witness(f(s.add(a, b)) == t.add(f(a), f(b)), || {
                    format!("{} + {}", s.element_name(a), s.element_name(b))
                })
            }),
        );
        r.law(
            "multiplicative",
            pairs().map(|(a, b)| {
                witness(f(s.mul(a, b)) == t.mul(f(a), f(b)), || {
                    format!("{} * {}", s.element_name(a), s.element_name(b))
                })
            }),
        );
        r
    }
}

/// Elements identified by `a ≈ b ⇔ ∃c. a + c = b + c`, as class ids in
/// order of first appearance. This relation is a congruence for every
/// additive structure; on a finite commutative monoid the quotient is the
/// group completion.
pub(crate) fn cancellation_classes(n: usize, add: impl Fn(u32, u32) -> u32) -> Vec<u32> {
    let mut class = vec![u32::MAX; n];
    let mut next = 0;
    for a in 0..n as u32 {
        if class[a as usize] != u32::MAX {
            continue;
        }
        class[a as usize] = next;
        for b in a + 1..n as u32 {
            if class[b as usize] == u32::MAX && (0..n as u32).any(|c| add(a, c) == add(b, c)) {
                class[b as usize] = next;
            }
        }
        next += 1;
    }
    class
}

/// Group completion of `(S, +)` with the induced multiplication, and the
/// universal map `r: S → RS`.
pub fn ring_reflection(s: &Arc<FiniteSemiring>) -> (Arc<FiniteSemiring>, SemiringHom) {
    let n = s.size();
    let class = cancellation_classes(n, |a, b| s.add(a, b));
    let m = class.iter().max().map_or(0, |&c| c as usize + 1);
    let mut rep = vec![0u32; m];
    for a in (0..n as u32).rev() {
        rep[class[a as usize] as usize] = a;
    }
    let op = |f: &dyn Fn(u32, u32) -> u32| -> Vec<Vec<usize>> {
        (0..m).map(|i| (0..m).map(|j| class[f(rep[i], rep[j]) as usize] as usize).collect()).collect()
    };
    let raw = RawSemiring {
        name: format!("R({})", s.name()),
        names: rep.iter().map(|&a| s.element_name(a).to_string()).collect(),
        add: op(&|a, b| s.add(a, b)),
        mul: op(&|a, b| s.mul(a, b)),
        zero: class[s.zero() as usize] as usize,
        one: class[s.one() as usize] as usize,
    };
    // Laws of the quotient follow from those of S.
    let target = Arc::new(FiniteSemiring::from_raw_unchecked(&raw));
    let hom = SemiringHom { source: s.clone(), target: target.clone(), map: class };
    (target, hom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        let b = builtin(Builtin::Bool).unwrap();
        assert_eq!(b.add(1, 1), 1);
        let z2 = builtin(Builtin::ZMod(2)).unwrap();
        assert!(z2.is_field());
        let ns = builtin(Builtin::NatSat(2)).unwrap();
        assert_eq!(ns.size(), 3);
        assert_eq!(ns.add(1, 2), 2);
        assert_eq!(ns.add(2, 2), 2);
        assert_eq!(builtin(Builtin::ZMod(5)).unwrap().size(), 5);
    }

    #[test]
    fn zero_parameter_is_rejected() {
        assert!(matches!(builtin(Builtin::ZMod(0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin(Builtin::NatSat(0)), Err(Error::InvalidParameter(_))));
        assert!("zmod x".parse::<Builtin>().is_err());
        assert_eq!("nat_sat 3".parse::<Builtin>().unwrap(), Builtin::NatSat(3));
    }

    #[test]
    fn broken_unit_is_reported_with_witness() {
        let mut raw = builtin(Builtin::Bool).unwrap().to_raw();
        raw.mul[1][1] = 0;
        let r = check_semiring(&raw).unwrap();
        assert!(!r.passed());
        let unit = r.checks.iter().find(|c| c.law == "mul.unit").unwrap();
        assert_eq!(unit.witness.as_deref(), Some("1*1 != 1"));
    }

    #[test]
    fn out_of_range_is_malformed_not_a_violation() {
        let mut raw = builtin(Builtin::Bool).unwrap().to_raw();
        raw.add[0][1] = 7;
        assert!(matches!(check_semiring(&raw), Err(Error::Malformed(_))));
        raw.add[0][1] = 1;
        raw.mul.pop();
        assert!(matches!(check_semiring(&raw), Err(Error::Malformed(_))));
    }

    #[test]
    fn ring_reflection_examples() {
        let z2 = Arc::new(builtin(Builtin::ZMod(2)).unwrap());
        let (r, h) = ring_reflection(&z2);
        assert_eq!(r.size(), 2);
        assert_eq!(h.map, vec![0, 1]);
        assert!(h.check().passed());

        for b in [Builtin::Bool, Builtin::NatSat(2)] {
            let s = Arc::new(builtin(b).unwrap());
            let (r, h) = ring_reflection(&s);
            assert_eq!(r.size(), 1, "{b}");
            assert!(h.map.iter().all(|&v| v == 0));
            assert!(h.check().passed());
        }
    }

    /// Pair construction oracle: (a,b) ~ (a',b') iff ∃c. a+b'+c = a'+b+c.
    fn pair_completion_size(s: &FiniteSemiring) -> usize {
        let n = s.size() as u32;
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let mut reps: Vec<(u32, u32)> = Vec::new();
        for &(a, b) in &pairs {
            let equiv = |&(a2, b2): &(u32, u32)| (0..n).any(|c| s.add(s.add(a, b2), c) == s.add(s.add(a2, b), c));
            if !reps.iter().any(equiv) {
                reps.push((a, b));
            }
        }
        reps.len()
    }

    #[test]
    fn reflection_matches_pair_construction() {
        for b in [Builtin::Bool, Builtin::ZMod(2), Builtin::ZMod(4), Builtin::NatSat(2), Builtin::NatSat(3)] {
            let s = Arc::new(builtin(b).unwrap());
            let (r, _) = ring_reflection(&s);
            assert_eq!(r.size(), pair_completion_size(&s), "{b}");
            assert!(r.is_ring());
        }
    }

    #[test]
    fn reflection_is_idempotent_and_epic() {
        for b in [Builtin::Bool, Builtin::ZMod(3), Builtin::ZMod(6), Builtin::NatSat(2)] {
            let s = Arc::new(builtin(b).unwrap());
            let (r, h) = ring_reflection(&s);
            let (rr, hh) = ring_reflection(&r);
            assert_eq!(rr.size(), r.size());
            assert!(hh.map.iter().enumerate().all(|(i, &v)| i as u32 == v));
            // r is surjective, so parallel maps out of RS agreeing on its image agree.
            let mut hit = vec![false; r.size()];
            h.map.iter().for_each(|&v| hit[v as usize] = true);
            assert!(hit.iter().all(|&x| x));
        }
    }
}
