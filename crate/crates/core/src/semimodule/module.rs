use std::fmt;
use std::sync::Arc;

use super::block::Block;
use crate::limits::Limits;
use crate::semiring::FiniteSemiring;
use crate::{Error, Result};

/// An element of a [`FinSemimodule`]: one block-local index per block.
pub type Elem = Vec<u32>;

/// A finite semimodule presented as a direct sum of table-backed blocks.
///
/// A single table block is the ordinary explicit case. A free module of
/// rank `r` is `r` copies of the rank-one block, so tensor powers of free
/// modules never need their (possibly astronomically large) carriers
/// materialized. The empty sum is the zero module.
#[derive(Debug, PartialEq, Eq)]
pub struct FinSemimodule {
    base: Arc<FiniteSemiring>,
    blocks: Vec<Arc<Block>>,
    labels: Vec<Option<String>>,
}

impl FinSemimodule {
    pub fn new(base: Arc<FiniteSemiring>, blocks: Vec<Arc<Block>>, labels: Vec<Option<String>>) -> Self {
        assert_eq!(blocks.len(), labels.len());
        debug_assert!(blocks.iter().all(|b| b.base() == &base));
        FinSemimodule { base, blocks, labels }
    }

    pub fn from_block(block: Arc<Block>) -> Self {
        let base = block.base().clone();
        FinSemimodule { base, blocks: vec![block], labels: vec![None] }
    }

    /// The zero object.
    pub fn trivial(base: &Arc<FiniteSemiring>) -> Self {
        FinSemimodule { base: base.clone(), blocks: Vec::new(), labels: Vec::new() }
    }

    /// Free module with one rank-one block per basis label; no size cap.
    pub fn free_labeled(base: &Arc<FiniteSemiring>, labels: Vec<Option<String>>) -> Self {
        let unit = Arc::new(Block::unit(base));
        let blocks = vec![unit; labels.len()];
        FinSemimodule { base: base.clone(), blocks, labels }
    }

    /// The monoidal unit F1 (free on one unlabeled generator).
    pub fn unit(base: &Arc<FiniteSemiring>) -> Self {
        Self::free_labeled(base, vec![None])
    }

    pub fn base(&self) -> &Arc<FiniteSemiring> {
        &self.base
    }

    pub fn blocks(&self) -> &[Arc<Block>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_free(&self) -> bool {
        self.blocks.iter().all(|b| b.is_unit())
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.size() == 1)
    }

    /// Carrier size, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        self.blocks.iter().fold(1u128, |acc, b| acc.saturating_mul(b.size() as u128))
    }

    pub fn zero(&self) -> Elem {
        self.blocks.iter().map(|b| b.zero()).collect()
    }

    pub fn is_zero(&self, x: &[u32]) -> bool {
        x.iter().zip(&self.blocks).all(|(&v, b)| v == b.zero())
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Elem {
        self.blocks.iter().enumerate().map(|(i, b)| b.add(x[i], y[i])).collect()
    }

    pub fn add_assign(&self, x: &mut [u32], y: &[u32]) {
        for (i, b) in self.blocks.iter().enumerate() {
            x[i] = b.add(x[i], y[i]);
        }
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        let mut acc = self.zero();
        for x in xs {
            self.add_assign(&mut acc, x);
        }
        acc
    }

    pub fn act(&self, s: u32, x: &[u32]) -> Elem {
        self.blocks.iter().enumerate().map(|(i, b)| b.act(s, x[i])).collect()
    }

    /// Additive inverse, computed blockwise.
    pub fn neg(&self, x: &[u32]) -> Option<Elem> {
        self.blocks.iter().enumerate().map(|(i, b)| b.neg(x[i])).collect()
    }

    /// `x + … + x` with `n` summands.
    pub fn nfold(&self, n: u64, x: &[u32]) -> Elem {
        let mut acc = self.zero();
        for _ in 0..n {
            self.add_assign(&mut acc, x);
        }
        acc
    }

    /// The element that is `v` in block `i` and zero elsewhere.
    pub fn inject(&self, i: usize, v: u32) -> Elem {
        let mut x = self.zero();
        x[i] = v;
        x
    }

    /// Zero followed by every nonzero block-local element, in block order.
    /// Every element is a sum of these, so multilinear laws need only be
    /// checked on them.
    pub fn spanning_elements(&self) -> Vec<Elem> {
        let mut out = vec![self.zero()];
        for (i, b) in self.blocks.iter().enumerate() {
            for v in b.elements().filter(|&v| v != b.zero()) {
                out.push(self.inject(i, v));
            }
        }
        out
    }

    /// Mixed-radix index, block 0 most significant.
    pub fn index_of(&self, x: &[u32]) -> usize {
        let mut idx = 0usize;
        for (i, b) in self.blocks.iter().enumerate() {
            idx = idx * b.size() + x[i] as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Elem {
        let mut x = vec![0; self.blocks.len()];
        for (i, b) in self.blocks.iter().enumerate().rev() {
            x[i] = (idx % b.size()) as u32;
            idx /= b.size();
        }
        x
    }

    /// Every element in index order; fails if the carrier exceeds the cap.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Elem>> {
        let n = self.size();
        limits.check("element enumeration", n)?;
        Ok((0..n as usize).map(|i| self.element_at(i)).collect())
    }

    /// Label of block `i`, with a positional default.
    pub fn label(&self, i: usize) -> String {
        match &self.labels[i] {
            Some(l) => l.clone(),
            None if self.blocks[i].is_unit() => format!("e{i}"),
            None => format!("b{i}"),
        }
    }

    /// Label used when naming this block inside a larger sum; `None` when
    /// the module is a single unlabeled block.
    pub(crate) fn display_label(&self, i: usize) -> Option<String> {
        if self.plain() {
            None
        } else {
            Some(self.label(i))
        }
    }

    fn plain(&self) -> bool {
        self.blocks.len() == 1 && self.labels[0].is_none()
    }

    pub fn name(&self, x: &[u32]) -> String {
        if self.plain() {
            return self.blocks[0].name(x[0]).to_string();
        }
        let terms: Vec<String> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, b)| x[*i] != b.zero())
            .map(|(i, b)| {
                if b.is_unit() {
                    if x[i] == self.base.one() {
                        self.label(i)
                    } else {
                        format!("{}*{}", self.base.element_name(x[i]), self.label(i))
                    }
                } else {
                    format!("{}[{}]", self.label(i), b.name(x[i]))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`FinSemimodule::name`].
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let unknown = || Error::Malformed(format!("unknown element `{text}`"));
        if self.plain() {
            return self.blocks[0].index_of(text).map(|v| vec![v]).ok_or_else(unknown);
        }
        let mut x = self.zero();
        if text == "0" {
            return Ok(x);
        }
        for term in split_top_level(text) {
            let (i, v) = self.parse_term(term).ok_or_else(unknown)?;
            x[i] = self.blocks[i].add(x[i], v);
        }
        Ok(x)
    }

    fn parse_term(&self, term: &str) -> Option<(usize, u32)> {
        if let Some(open) = term.find('[') {
            let lab = &term[..open];
            let inner = term[open + 1..].strip_suffix(']')?;
            let i = (0..self.blocks.len()).find(|&i| !self.blocks[i].is_unit() && self.label(i) == lab)?;
            return Some((i, self.blocks[i].index_of(inner)?));
        }
        let (coef, lab) = match term.split_once('*') {
            Some((c, l)) => (self.base.index_of(c)?, l),
            None => (self.base.one(), term),
        };
        let i = (0..self.blocks.len()).find(|&i| self.blocks[i].is_unit() && self.label(i) == lab)?;
        Some((i, coef))
    }

    /// Same base and identical block structure.
    pub fn same_as(&self, other: &FinSemimodule) -> bool {
        std::ptr::eq(self, other)
            || (self.base == other.base
                && self.blocks.len() == other.blocks.len()
                && self.blocks.iter().zip(&other.blocks).all(|(a, b)| Arc::ptr_eq(a, b) || a == b))
    }
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl fmt::Display for FinSemimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "semimodule over {} with {} block(s), size {}", self.base.name(), self.blocks.len(), self.size())
    }
}
