use std::sync::Arc;

use crate::report::{witness, ValidationReport};
use crate::semimodule::{Elem, FinSemimodule};
use crate::{Error, Result};

/// A map `A × B → C` additive and action-preserving in each variable.
///
/// Stored per pair of blocks `(i, j)` as a table over `A_i × B_j`. Entries
/// may be `None` for products that are undefined, which is how
/// degree-truncated multiplications are represented; every total
/// bimorphism has no `None` entries.
#[derive(Clone, Debug)]
pub struct Bimorphism {
    left: Arc<FinSemimodule>,
    right: Arc<FinSemimodule>,
    target: Arc<FinSemimodule>,
    parts: Vec<Vec<Option<Elem>>>,
}

impl PartialEq for Bimorphism {
    fn eq(&self, other: &Self) -> bool {
        self.left.same_as(&other.left)
            && self.right.same_as(&other.right)
            && self.target.same_as(&other.target)
            && self.parts == other.parts
    }
}

impl Bimorphism {
    /// Tabulates a possibly partial `f` on pairs of block-local elements.
    pub fn from_partial_fn(
        left: &Arc<FinSemimodule>,
        right: &Arc<FinSemimodule>,
        target: &Arc<FinSemimodule>,
        mut f: impl FnMut(&Elem, &Elem) -> Option<Elem>,
    ) -> Self {
        let mut parts = Vec::with_capacity(left.num_blocks() * right.num_blocks());
        for i in 0..left.num_blocks() {
            let xs: Vec<Elem> = left.block(i).elements().map(|v| left.inject(i, v)).collect();
            for j in 0..right.num_blocks() {
                let ys: Vec<Elem> = right.block(j).elements().map(|v| right.inject(j, v)).collect();
                parts.push(xs.iter().flat_map(|x| ys.iter().map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect());
            }
        }
        Bimorphism { left: left.clone(), right: right.clone(), target: target.clone(), parts }
    }

    pub fn from_fn(
        left: &Arc<FinSemimodule>,
        right: &Arc<FinSemimodule>,
        target: &Arc<FinSemimodule>,
        mut f: impl FnMut(&Elem, &Elem) -> Elem,
    ) -> Self {
        Self::from_partial_fn(left, right, target, |x, y| Some(f(x, y)))
    }

    /// The bilinear map on free modules with `f(e_i, e_j) = value(i, j)`.
    pub fn bilinear(
        left: &Arc<FinSemimodule>,
        right: &Arc<FinSemimodule>,
        target: &Arc<FinSemimodule>,
        mut value: impl FnMut(usize, usize) -> Elem,
    ) -> Result<Self> {
        if !(left.is_free() && right.is_free()) {
            return Err(Error::Precondition("bilinear extension needs free factors".into()));
        }
        let base = left.base();
        let mut parts = Vec::with_capacity(left.num_blocks() * right.num_blocks());
        for i in 0..left.num_blocks() {
            for j in 0..right.num_blocks() {
                let v = value(i, j);
                parts.push(
                    base.elements()
                        .flat_map(|s| base.elements().map(move |t| (s, t)))
                        .map(|(s, t)| Some(target.act(base.mul(s, t), &v)))
                        .collect(),
                );
            }
        }
        Ok(Bimorphism { left: left.clone(), right: right.clone(), target: target.clone(), parts })
    }

    pub(crate) fn from_parts(
        left: &Arc<FinSemimodule>,
        right: &Arc<FinSemimodule>,
        target: &Arc<FinSemimodule>,
        parts: Vec<Vec<Option<Elem>>>,
    ) -> Self {
        Bimorphism { left: left.clone(), right: right.clone(), target: target.clone(), parts }
    }

    pub fn zero(left: &Arc<FinSemimodule>, right: &Arc<FinSemimodule>, target: &Arc<FinSemimodule>) -> Self {
        let z = target.zero();
        Self::from_fn(left, right, target, |_, _| z.clone())
    }

    pub fn left(&self) -> &Arc<FinSemimodule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinSemimodule> {
        &self.right
    }

    pub fn target(&self) -> &Arc<FinSemimodule> {
        &self.target
    }

    pub fn is_total(&self) -> bool {
        self.parts.iter().flatten().all(Option::is_some)
    }

    /// Value on block-local elements `a ∈ A_i`, `b ∈ B_j`.
    pub fn local(&self, i: usize, j: usize, a: u32, b: u32) -> Option<&Elem> {
        let nb = self.right.block(j).size();
        self.parts[i * self.right.num_blocks() + j][a as usize * nb + b as usize].as_ref()
    }

    /// Sum over block pairs; `None` if any contributing product is undefined.
    pub fn apply(&self, x: &[u32], y: &[u32]) -> Option<Elem> {
        let mut acc = self.target.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == self.left.block(i).zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == self.right.block(j).zero() {
                    continue;
                }
                self.target.add_assign(&mut acc, self.local(i, j, a, b)?);
            }
        }
        Some(acc)
    }

    /// Like [`Bimorphism::apply`] but for total bimorphisms.
    pub fn eval(&self, x: &[u32], y: &[u32]) -> Elem {
        self.apply(x, y).expect("total bimorphism")
    }

    /// Biadditivity, zero and action laws on every block pair. Where a
    /// product is undefined the law is checked only among defined values.
    pub fn check(&self) -> ValidationReport {
        let (l, r, t) = (&*self.left, &*self.right, &*self.target);
        let mut rep = ValidationReport::new("bimorphism");
        let scalars: Vec<u32> = l.base().elements().collect();
        let eq = |p: Option<&Elem>, q: Option<Elem>| match (p, q) {
            (Some(p), Some(q)) => *p == q,
            (_, None) => true,
            (None, Some(_)) => false,
        };
        for i in 0..l.num_blocks() {
            let a_blk = l.block(i);
            for j in 0..r.num_blocks() {
                let b_blk = r.block(j);
                let f = |a: u32, b: u32| self.local(i, j, a, b);
                let nm = |a: u32, b: u32| format!("({}, {})", l.name(&l.inject(i, a)), r.name(&r.inject(j, b)));
                let pairs: Vec<(u32, u32)> =
                    a_blk.elements().flat_map(|a| b_blk.elements().map(move |b| (a, b))).collect();
                let sum = |p: Option<&Elem>, q: Option<&Elem>| Some(t.add(p?, q?));
                let ok = rep.law(
                    format!("blocks{i},{j}.zero"),
                    a_blk
                        .elements()
                        .map(|a| (a, b_blk.zero()))
                        .chain(b_blk.elements().map(|b| (a_blk.zero(), b)))
                        .map(|(a, b)| witness(f(a, b).is_some_and(|v| t.is_zero(v)), || nm(a, b))),
                ) && rep.law(
                    format!("blocks{i},{j}.left_additive"),
                    pairs.iter().flat_map(|&(a, b)| a_blk.elements().map(move |a2| (a, a2, b))).map(|(a, a2, b)| {
                        witness(eq(f(a_blk.add(a, a2), b), sum(f(a, b), f(a2, b))), || {
                            format!("{} with {}", nm(a, b), l.name(&l.inject(i, a2)))
                        })
                    }),
                ) && rep.law(
                    format!("blocks{i},{j}.right_additive"),
                    pairs.iter().flat_map(|&(a, b)| b_blk.elements().map(move |b2| (a, b, b2))).map(|(a, b, b2)| {
                        witness(eq(f(a, b_blk.add(b, b2)), sum(f(a, b), f(a, b2))), || {
                            format!("{} with {}", nm(a, b), r.name(&r.inject(j, b2)))
                        })
                    }),
                ) && rep.law(
                    format!("blocks{i},{j}.action"),
                    pairs.iter().flat_map(|&(a, b)| scalars.iter().map(move |&s| (a, b, s))).map(|(a, b, s)| {
                        let scaled = f(a, b).map(|v| t.act(s, v));
                        witness(eq(f(a_blk.act(s, a), b), scaled.clone()) && eq(f(a, b_blk.act(s, b)), scaled), || {
                            format!("{} scaled by {}", nm(a, b), l.base().element_name(s))
                        })
                    }),
                );
                if !ok {
                    return rep;
                }
            }
        }
        rep
    }

    pub fn validated(self) -> Result<Self> {
        self.check().into_result()?;
        Ok(self)
    }

    /// `(x, y) ↦ h(f(x, y))`.
    pub fn then(&self, h: &crate::semimodule::Hom) -> Bimorphism {
        let parts = self.parts.iter().map(|p| p.iter().map(|v| v.as_ref().map(|v| h.apply(v))).collect()).collect();
        Bimorphism { left: self.left.clone(), right: self.right.clone(), target: h.target().clone(), parts }
    }

    /// `(x, y) ↦ f(y, x)`.
    pub fn swapped(&self) -> Bimorphism {
        Bimorphism::from_partial_fn(&self.right, &self.left, &self.target, |y, x| self.apply(x, y))
    }

    pub(crate) fn require_total(&self, what: &str) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} needs a total bimorphism")))
        }
    }
}
