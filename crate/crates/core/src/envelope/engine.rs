//! Quotienting a graded carrier by the congruence generated by a set of
//! seed pairs, with least-degree representatives for every class.

use std::sync::Arc;

use crate::limits::Limits;
use crate::registry::{Named, Registry};
use crate::semimodule::{congruence_closure, quotient, Elem, FinSemimodule, Hom};
use crate::Result;

/// A quotient with a section on block-local elements.
#[derive(Clone, Debug)]
pub struct Piece {
    pub object: Arc<FinSemimodule>,
    pub q: Hom,
    /// `lifts[b][v]` is a least-degree preimage of block-local element `v` of block `b`.
    pub lifts: Vec<Vec<Elem>>,
    pub lift_degree: Vec<Vec<usize>>,
}

/// Highest degree among the nonzero blocks of `x`.
pub(crate) fn graded_degree(a: &FinSemimodule, block_degree: &[usize], x: &[u32]) -> usize {
    (0..x.len()).filter(|&b| x[b] != a.block(b).zero()).map(|b| block_degree[b]).max().unwrap_or(0)
}

impl Piece {
    pub fn identity(a: &Arc<FinSemimodule>, block_degree: &[usize]) -> Self {
        Piece::with_lifts(a.clone(), Hom::identity(a), block_degree, |b, v| a.inject(b, v))
    }

    fn with_lifts(
        object: Arc<FinSemimodule>,
        q: Hom,
        block_degree: &[usize],
        mut lift: impl FnMut(usize, u32) -> Elem,
    ) -> Self {
        let src = q.source().clone();
        let lifts: Vec<Vec<Elem>> =
            (0..object.num_blocks()).map(|b| object.block(b).elements().map(|v| lift(b, v)).collect()).collect();
        let lift_degree =
            lifts.iter().map(|l| l.iter().map(|x| graded_degree(&src, block_degree, x)).collect()).collect();
        Piece { object, q, lifts, lift_degree }
    }

    /// A preimage of `u`, summed from block-local lifts.
    pub fn lift(&self, u: &[u32]) -> Elem {
        let src = self.q.source();
        let parts: Vec<&Elem> = u.iter().enumerate().map(|(b, &v)| &self.lifts[b][v as usize]).collect();
        src.sum(parts)
    }
}

pub trait EnvelopeEngine: Named + Send + Sync {
    fn applies(&self, carrier: &FinSemimodule) -> bool;
    fn quotient(
        &self,
        carrier: &Arc<FinSemimodule>,
        block_degree: &[usize],
        seeds: &[(Elem, Elem)],
        limits: &Limits,
    ) -> Result<Piece>;
}

/// Row reduction of the seed differences, for free carriers over a field.
/// Columns are eliminated highest degree first, so normal forms never
/// raise degree.
pub struct LinearEngine;

impl Named for LinearEngine {
    fn name(&self) -> &'static str {
        "linear"
    }
}

impl EnvelopeEngine for LinearEngine {
    fn applies(&self, carrier: &FinSemimodule) -> bool {
        carrier.is_free() && carrier.base().is_field()
    }

    fn quotient(
        &self,
        comp: &Arc<FinSemimodule>,
        block_degree: &[usize],
        seeds: &[(Elem, Elem)],
        _: &Limits,
    ) -> Result<Piece> {
        let s = comp.base();
        let n = comp.num_blocks();
        // Working coordinates list columns by descending degree.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(block_degree[j]));
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (u, v) in seeds {
            let mut r: Vec<u32> = order.iter().map(|&j| s.add(u[j], s.neg(v[j]).expect("field"))).collect();
            // Reduce against the current echelon rows, then insert if nonzero.
            for row in &rows {
                let p = row.iter().position(|&c| c != s.zero()).expect("nonzero row");
                if r[p] != s.zero() {
                    let f = s.neg(r[p]).expect("field");
                    for j in 0..n {
                        r[j] = s.add(r[j], s.mul(f, row[j]));
                    }
                }
            }
            if let Some(p) = r.iter().position(|&c| c != s.zero()) {
                let inv = s.inv(r[p]).expect("field");
                r.iter_mut().for_each(|c| *c = s.mul(inv, *c));
                for row in rows.iter_mut() {
                    if row[p] != s.zero() {
                        let f = s.neg(row[p]).expect("field");
                        for j in 0..n {
                            row[j] = s.add(row[j], s.mul(f, r[j]));
                        }
                    }
                }
                rows.push(r);
            }
        }
        let mut pivot_row = vec![None; n];
        for (i, row) in rows.iter().enumerate() {
            pivot_row[row.iter().position(|&c| c != s.zero()).expect("nonzero row")] = Some(i);
        }
        // Free columns in working order, then back in carrier order.
        let mut free_cols: Vec<usize> = (0..n).filter(|&p| pivot_row[p].is_none()).collect();
        free_cols.sort_by_key(|&p| order[p]);
        let labels = free_cols.iter().map(|&p| Some(comp.label(order[p]))).collect();
        let object = Arc::new(FinSemimodule::free_labeled(s, labels));
        let mut position = vec![0; n];
        order.iter().enumerate().for_each(|(p, &j)| position[j] = p);
        let q = Hom::linear(comp, &object, |j| match pivot_row[position[j]] {
            None => object.inject(free_cols.iter().position(|&p| p == position[j]).expect("free column"), s.one()),
            // e_j ≡ −Σ row[p] e_p over the free columns.
            Some(r) => free_cols.iter().map(|&p| s.neg(rows[r][p]).expect("field")).collect(),
        })?;
        Ok(Piece::with_lifts(object, q, block_degree, |b, c| comp.inject(order[free_cols[b]], c)))
    }
}

/// Union-find congruence closure over the whole carrier.
pub struct ClosureEngine;

impl Named for ClosureEngine {
    fn name(&self) -> &'static str {
        "closure"
    }
}

impl EnvelopeEngine for ClosureEngine {
    fn applies(&self, _: &FinSemimodule) -> bool {
        true
    }

    fn quotient(
        &self,
        comp: &Arc<FinSemimodule>,
        block_degree: &[usize],
        seeds: &[(Elem, Elem)],
        limits: &Limits,
    ) -> Result<Piece> {
        let c = congruence_closure(comp, seeds, limits)?;
        let (object, q) = quotient(&c);
        let mut best: Vec<Option<(usize, Elem)>> = vec![None; c.num_classes()];
        for i in 0..comp.size() as usize {
            let x = comp.element_at(i);
            let (k, d) = (c.class_of(&x) as usize, graded_degree(comp, block_degree, &x));
            if best[k].as_ref().is_none_or(|(d0, _)| d < *d0) {
                best[k] = Some((d, x));
            }
        }
        Ok(Piece::with_lifts(object, q, block_degree, |_, v| best[v as usize].clone().expect("nonempty class").1))
    }
}

pub fn envelope_engines() -> Registry<dyn EnvelopeEngine> {
    let mut r: Registry<dyn EnvelopeEngine> = Registry::new("envelope engine");
    r.register(Box::new(LinearEngine));
    r.register(Box::new(ClosureEngine));
    r
}
