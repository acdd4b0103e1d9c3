use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use crate::report::{witness, ValidationReport};
use crate::semiring::FiniteSemiring;
use crate::{Error, Result};

/// Candidate tables for a table-backed semimodule, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBlock {
    pub name: String,
    pub names: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub zero: usize,
    /// One row per scalar, in semiring element order.
    pub act: Vec<Vec<usize>>,
}

/// A finite semimodule stored as dense tables over the carrier `0..n`.
///
/// Blocks are the atoms from which every [`FinSemimodule`](super::FinSemimodule)
/// is assembled as a direct sum.
#[derive(Debug)]
pub struct Block {
    base: Arc<FiniteSemiring>,
    names: Vec<String>,
    add: Vec<u32>,
    zero: u32,
    act: Vec<u32>,
    unit: bool,
    generators: OnceLock<Vec<u32>>,
    additive_generators: OnceLock<Vec<u32>>,
    neg: OnceLock<Vec<Option<u32>>>,
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.names == other.names
            && self.add == other.add
            && self.zero == other.zero
            && self.act == other.act
    }
}

impl Eq for Block {}

impl Block {
    /// Validates `raw` over `base`: dimensions are hard errors, law failures
    /// come back as [`Error::Laws`].
    pub fn new(base: Arc<FiniteSemiring>, raw: &RawBlock) -> Result<Self> {
        check_block(&base, raw)?.into_result()?;
        Ok(Self::from_raw_unchecked(base, raw))
    }

    fn from_raw_unchecked(base: Arc<FiniteSemiring>, raw: &RawBlock) -> Self {
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&v| v as u32).collect();
        Self::from_tables(base, raw.names.clone(), flat(&raw.add), raw.zero as u32, flat(&raw.act))
    }

    pub(crate) fn from_tables(
        base: Arc<FiniteSemiring>,
        names: Vec<String>,
        add: Vec<u32>,
        zero: u32,
        act: Vec<u32>,
    ) -> Self {
        Block {
            base,
            names,
            add,
            zero,
            act,
            unit: false,
            generators: OnceLock::new(),
            additive_generators: OnceLock::new(),
            neg: OnceLock::new(),
        }
    }

    /// The free module of rank one: the base semiring acting on itself.
    pub fn unit(base: &Arc<FiniteSemiring>) -> Self {
        let n = base.size();
        let add = (0..n as u32).flat_map(|a| (0..n as u32).map(move |b| (a, b)));
        let add = add.map(|(a, b)| base.add(a, b)).collect();
        let act = (0..n as u32).flat_map(|s| (0..n as u32).map(move |x| (s, x)));
        let act = act.map(|(s, x)| base.mul(s, x)).collect();
        let mut b = Self::from_tables(base.clone(), base.names().to_vec(), add, base.zero(), act);
        b.unit = true;
        b
    }

    /// Same tables, new element names.
    pub(crate) fn renamed(&self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.size());
        let mut b = Self::from_tables(self.base.clone(), names, self.add.clone(), self.zero, self.act.clone());
        b.unit = self.unit;
        b
    }

    pub fn to_raw(&self, name: &str) -> RawBlock {
        let n = self.size();
        RawBlock {
            name: name.to_string(),
            names: self.names.clone(),
            add: (0..n).map(|i| (0..n).map(|j| self.add[i * n + j] as usize).collect()).collect(),
            zero: self.zero as usize,
            act: (0..self.base.size()).map(|s| (0..n).map(|x| self.act[s * n + x] as usize).collect()).collect(),
        }
    }

    pub fn base(&self) -> &Arc<FiniteSemiring> {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// True for the rank-one free block built by [`Block::unit`].
    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: u32) -> &str {
        &self.names[x as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn act(&self, s: u32, x: u32) -> u32 {
        self.act[s as usize * self.size() + x as usize]
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size() as u32
    }

    pub fn neg(&self, x: u32) -> Option<u32> {
        self.neg
            .get_or_init(|| self.elements().map(|a| self.elements().find(|&b| self.add(a, b) == self.zero)).collect())
            [x as usize]
    }

    /// Smallest set reached when closing `gens` under addition and action.
    pub fn span(&self, gens: &[u32]) -> Vec<bool> {
        let mut seen = vec![false; self.size()];
        let mut queue = VecDeque::from([self.zero]);
        seen[self.zero as usize] = true;
        let scalars = self.base.size() as u32;
        while let Some(x) = queue.pop_front() {
            let next = gens.iter().map(|&g| self.add(x, g)).chain((0..scalars).map(|s| self.act(s, x)));
            for y in next.collect::<Vec<_>>() {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Greedy generating set: scan in index order, keep whatever is not yet spanned.
    pub fn generators(&self) -> &[u32] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut spanned = self.span(&gens);
            for x in self.elements() {
                if !spanned[x as usize] {
                    gens.push(x);
                    spanned = self.span(&gens);
                }
            }
            gens
        })
    }

    /// Scalar multiples of the generators; these generate `(block, +)` as a monoid.
    pub fn additive_generators(&self) -> &[u32] {
        self.additive_generators.get_or_init(|| {
            let mut out: Vec<u32> = self
                .generators()
                .iter()
                .flat_map(|&g| self.base.elements().map(move |s| (s, g)))
                .map(|(s, g)| self.act(s, g))
                .filter(|&x| x != self.zero)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
    }
}

/// Dimensions and ranges are checked first (hard errors); then every
/// semimodule law exhaustively.
pub fn check_block(base: &FiniteSemiring, raw: &RawBlock) -> Result<ValidationReport> {
    let n = raw.names.len();
    let k = base.size();
    let bad = |msg: String| Err(Error::Malformed(format!("semimodule {}: {msg}", raw.name)));
    if n == 0 {
        return bad("empty carrier".into());
    }
    if raw.add.len() != n || raw.add.iter().any(|r| r.len() != n) {
        return bad(format!("add table must be {n}x{n}"));
    }
    if raw.act.len() != k || raw.act.iter().any(|r| r.len() != n) {
        return bad(format!("act table must be {k}x{n}"));
    }
    if raw.zero >= n || raw.add.iter().chain(&raw.act).flatten().any(|&v| v >= n) {
        return bad(format!("table entry out of range 0..{n}"));
    }

    let nm = |i: usize| raw.names[i].as_str();
    let sn = |s: usize| base.element_name(s as u32);
    let add = |x: usize, y: usize| raw.add[x][y];
    let act = |s: usize, x: usize| raw.act[s][x];
    let sadd = |s: usize, t: usize| base.add(s as u32, t as u32) as usize;
    let smul = |s: usize, t: usize| base.mul(s as u32, t as u32) as usize;
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let z = raw.zero;
    let (s0, s1) = (base.zero() as usize, base.one() as usize);

    let mut r = ValidationReport::new(format!("semimodule {}", raw.name));
    r.law("add.commutative", pairs().map(|(x, y)| witness(add(x, y) == add(y, x), || format!("{}+{}", nm(x), nm(y)))));
    r.law(
        "add.associative",
        pairs().flat_map(|(x, y)| (0..n).map(move |w| (x, y, w))).map(|(x, y, w)| {
            witness(add(add(x, y), w) == add(x, add(y, w)), || format!("({}+{})+{}", nm(x), nm(y), nm(w)))
        }),
    );
    r.law("add.zero", (0..n).map(|x| witness(add(z, x) == x, || format!("0+{}", nm(x)))));
    r.law(
        "act.unit",
        (0..n).map(|x| witness(act(s1, x) == x, || format!("1·{} = {} != {}", nm(x), nm(act(s1, x)), nm(x)))),
    );
    r.law("act.zero_scalar", (0..n).map(|x| witness(act(s0, x) == z, || format!("0·{}", nm(x)))));
    r.law("act.zero_vector", (0..k).map(|s| witness(act(s, z) == z, || format!("{}·0", sn(s)))));
    let sx = || (0..k).flat_map(move |s| (0..k).flat_map(move |t| (0..n).map(move |x| (s, t, x))));
    r.law(
        "act.associative",
        sx().map(|(s, t, x)| {
            witness(act(s, act(t, x)) == act(smul(s, t), x), || format!("{}·({}·{})", sn(s), sn(t), nm(x)))
        }),
    );
    r.law(
        "act.scalar_additive",
        sx().map(|(s, t, x)| {
            witness(act(sadd(s, t), x) == add(act(s, x), act(t, x)), || format!("({}+{})·{}", sn(s), sn(t), nm(x)))
        }),
    );
    r.law(
        "act.vector_additive",
        (0..k).flat_map(|s| pairs().map(move |(x, y)| (s, x, y))).map(|(s, x, y)| {
            witness(act(s, add(x, y)) == add(act(s, x), act(s, y)), || format!("{}·({}+{})", sn(s), nm(x), nm(y)))
        }),
    );
    Ok(r)
}
