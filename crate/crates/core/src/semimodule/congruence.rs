use std::collections::VecDeque;
use std::sync::Arc;

use super::block::Block;
use super::hom::Hom;
use super::module::{Elem, FinSemimodule};
use crate::limits::Limits;
use crate::report::{witness, ValidationReport};
use crate::Result;

/// A congruence on an enumerable semimodule.
///
/// Classes are numbered in order of their least member (by carrier
/// index), which makes the numbering independent of how the partition
/// was computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    on: Arc<FinSemimodule>,
    class: Vec<u32>,
    reps: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl Congruence {
    pub fn on(&self) -> &Arc<FinSemimodule> {
        &self.on
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, x: &[u32]) -> u32 {
        self.class[self.on.index_of(x)]
    }

    pub fn related(&self, x: &[u32], y: &[u32]) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    /// Least member of each class, as carrier indices.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn is_discrete(&self) -> bool {
        self.reps.len() == self.class.len()
    }

    /// Exhaustive compatibility check with addition and action.
    pub fn check(&self) -> ValidationReport {
        let a = &*self.on;
        let elems: Vec<Elem> = (0..self.class.len()).map(|i| a.element_at(i)).collect();
        let mut r = ValidationReport::new("congruence");
        let n = elems.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.class[i] == self.class[j])
            .collect();
        let pairs = || pairs.iter().copied();
        r.law(
            "translation",
            pairs().flat_map(|(i, j)| elems.iter().map(move |c| (i, j, c))).map(|(i, j, c)| {
                witness(self.related(&a.add(&elems[i], c), &a.add(&elems[j], c)), || {
                    format!("{} ~ {} but not after adding {}", a.name(&elems[i]), a.name(&elems[j]), a.name(c))
                })
            }),
        );
        r.law(
            "action",
            pairs().flat_map(|(i, j)| a.base().elements().map(move |s| (i, j, s))).map(|(i, j, s)| {
                witness(self.related(&a.act(s, &elems[i]), &a.act(s, &elems[j])), || {
                    format!("{} ~ {} but not after acting by {}", a.name(&elems[i]), a.name(&elems[j]), s)
                })
            }),
        );
        r
    }
}

/// Least congruence containing `seeds`.
///
/// Worklist over a union-find: each fresh merge of `(u, v)` enqueues
/// `(u + g, v + g)` for every additive generator `g` and `(s·u, s·v)` for
/// every scalar. Translation by an arbitrary element follows because every
/// element is a sum of additive generators.
pub fn congruence_closure(a: &Arc<FinSemimodule>, seeds: &[(Elem, Elem)], limits: &Limits) -> Result<Congruence> {
    let n = a.size();
    limits.check("congruence closure", n)?;
    let n = n as usize;
    let translators: Vec<Elem> = a
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.additive_generators().iter().map(move |&g| (i, g)))
        .map(|(i, g)| a.inject(i, g))
        .collect();
    let scalars: Vec<u32> = a.base().elements().collect();
    let mut uf = UnionFind((0..n).collect());
    let mut queue: VecDeque<(Elem, Elem)> = seeds.iter().cloned().collect();
    while let Some((u, v)) = queue.pop_front() {
        if !uf.union(a.index_of(&u), a.index_of(&v)) {
            continue;
        }
        for g in &translators {
            queue.push_back((a.add(&u, g), a.add(&v, g)));
        }
        for &s in &scalars {
            queue.push_back((a.act(s, &u), a.act(s, &v)));
        }
    }
    Ok(from_union_find(a, &mut uf))
}

fn from_union_find(a: &Arc<FinSemimodule>, uf: &mut UnionFind) -> Congruence {
    let n = uf.0.len();
    let mut class = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut root_class = vec![u32::MAX; n];
    for (i, c) in class.iter_mut().enumerate() {
        let r = uf.find(i);
        if root_class[r] == u32::MAX {
            root_class[r] = reps.len() as u32;
            reps.push(i);
        }
        *c = root_class[r];
    }
    Congruence { on: a.clone(), class, reps }
}

/// The quotient module with its surjective projection. Each class is named
/// after its least member.
pub fn quotient(c: &Congruence) -> (Arc<FinSemimodule>, Hom) {
    let a = &c.on;
    let reps: Vec<Elem> = c.reps.iter().map(|&i| a.element_at(i)).collect();
    let k = reps.len();
    let cls = |x: &Elem| c.class_of(x);
    let add = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| cls(&a.add(&reps[i], &reps[j]))).collect();
    let act =
        a.base().elements().flat_map(|s| reps.iter().map(move |x| (s, x))).map(|(s, x)| cls(&a.act(s, x))).collect();
    let names = reps.iter().map(|x| a.name(x)).collect();
    let zero = cls(&a.zero());
    let block = Block::from_tables(a.base().clone(), names, add, zero, act);
    let q = Arc::new(FinSemimodule::from_block(Arc::new(block)));
    let proj = Hom::from_fn(a, &q, |x| vec![cls(x)]);
    (q, proj)
}
