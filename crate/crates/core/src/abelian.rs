//! Invertible elements, internal groups and the reflection onto them.
//!
//! Everything is computed block by block: an element of a direct sum is
//! invertible exactly when each component is, and the reflection of a
//! direct sum is the direct sum of the reflections.

use std::sync::Arc;

use crate::limits::Limits;
use crate::report::{witness, ValidationReport};
use crate::semimodule::{Block, Elem, FinSemimodule, Hom};
use crate::semiring::cancellation_classes;
use crate::tensor::{tensor, unit_left, Bimorphism};
use crate::{Error, Result};

/// `Inv(A)` with its embedding and negation.
#[derive(Clone, Debug)]
pub struct InvSubobject {
    pub parent: Arc<FinSemimodule>,
    pub object: Arc<FinSemimodule>,
    pub embedding: Hom,
    pub negation: Hom,
    /// Per parent block, the sub-block index of each parent element.
    position: Vec<Vec<Option<u32>>>,
}

impl InvSubobject {
    /// The element of `Inv(A)` corresponding to `x`, if `x` is invertible.
    pub fn corestrict(&self, x: &[u32]) -> Option<Elem> {
        x.iter().enumerate().map(|(i, &v)| self.position[i][v as usize]).collect()
    }

    pub fn members(&self, limits: &Limits) -> Result<Vec<Elem>> {
        Ok(self.object.elements(limits)?.iter().map(|x| self.embedding.apply(x)).collect())
    }
}

fn sub_block(blk: &Arc<Block>, keep: &[u32]) -> (Arc<Block>, Vec<Option<u32>>) {
    if keep.len() == blk.size() {
        return (blk.clone(), blk.elements().map(Some).collect());
    }
    let mut pos = vec![None; blk.size()];
    for (i, &x) in keep.iter().enumerate() {
        pos[x as usize] = Some(i as u32);
    }
    let at = |x: u32| pos[x as usize].expect("sub-block is closed");
    let k = keep.len();
    let add = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| at(blk.add(keep[i], keep[j]))).collect();
    let act =
        blk.base().elements().flat_map(|s| keep.iter().map(move |&x| (s, x))).map(|(s, x)| at(blk.act(s, x))).collect();
    let names = keep.iter().map(|&x| blk.name(x).to_string()).collect();
    let b = Block::from_tables(blk.base().clone(), names, add, at(blk.zero()), act);
    (Arc::new(b), pos)
}

pub fn inv(a: &Arc<FinSemimodule>) -> InvSubobject {
    let mut blocks = Vec::new();
    let mut position = Vec::new();
    for blk in a.blocks() {
        let keep: Vec<u32> = blk.elements().filter(|&x| blk.neg(x).is_some()).collect();
        let (b, pos) = sub_block(blk, &keep);
        blocks.push(b);
        position.push(pos);
    }
    let object = Arc::new(FinSemimodule::new(a.base().clone(), blocks, a.labels().to_vec()));
    let parts: Vec<Vec<Elem>> = (0..a.num_blocks())
        .map(|i| {
            let back: Vec<u32> = (0..a.block(i).size() as u32).filter(|&x| position[i][x as usize].is_some()).collect();
            back.into_iter().map(|x| a.inject(i, x)).collect()
        })
        .collect();
    let embedding = Hom::from_parts(&object, a, parts);
    let negation = Hom::from_fn(&object, &object, |x| {
        let y = a.neg(&embedding.apply(x)).expect("members are invertible");
        y.iter().enumerate().map(|(i, &v)| position[i][v as usize].expect("negatives are invertible")).collect()
    });
    InvSubobject { parent: a.clone(), object, embedding, negation, position }
}

pub fn is_abelian(a: &FinSemimodule) -> bool {
    a.blocks().iter().all(|b| b.elements().all(|x| b.neg(x).is_some()))
}

/// `Inv(f): Inv(A) → Inv(B)`.
pub fn restrict_hom_to_inv(f: &Hom, inv_a: &InvSubobject, inv_b: &InvSubobject) -> Result<Hom> {
    if !(f.source().same_as(&inv_a.parent) && f.target().same_as(&inv_b.parent)) {
        return Err(Error::Mismatch("hom does not match the given invertible subobjects".into()));
    }
    let mut escaped = None;
    let g = Hom::from_fn(&inv_a.object, &inv_b.object, |x| {
        let y = f.apply(&inv_a.embedding.apply(x));
        inv_b.corestrict(&y).unwrap_or_else(|| {
            escaped.get_or_insert_with(|| inv_a.object.name(x));
            inv_b.object.zero()
        })
    });
    if let Some(x) = escaped {
        return Err(Error::Internal(format!("hom sends invertible {x} to a non-invertible element")));
    }
    if let Some(v) = g.check().first_violation() {
        return Err(Error::Internal(format!("restriction is not a hom: {v}")));
    }
    Ok(g)
}

/// Reflection of `A` onto internal groups, with its unit `r: A → G`.
pub fn abelian_reflection(a: &Arc<FinSemimodule>) -> (Arc<FinSemimodule>, Hom) {
    let mut blocks = Vec::new();
    let mut classes = Vec::new();
    for blk in a.blocks() {
        let class = cancellation_classes(blk.size(), |x, y| blk.add(x, y));
        let k = class.iter().max().map_or(0, |&c| c as usize + 1);
        if k == blk.size() && class.iter().enumerate().all(|(i, &c)| c as usize == i) {
            blocks.push(blk.clone());
            classes.push(class);
            continue;
        }
        let mut rep = vec![u32::MAX; k];
        for x in blk.elements().rev() {
            rep[class[x as usize] as usize] = x;
        }
        let cls = |x: u32| class[x as usize];
        let add = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| cls(blk.add(rep[i], rep[j]))).collect();
        let act = blk
            .base()
            .elements()
            .flat_map(|s| rep.iter().map(move |&x| (s, x)))
            .map(|(s, x)| cls(blk.act(s, x)))
            .collect();
        let names = rep.iter().map(|&x| blk.name(x).to_string()).collect();
        blocks.push(Arc::new(Block::from_tables(blk.base().clone(), names, add, cls(blk.zero()), act)));
        classes.push(class);
    }
    let g = Arc::new(FinSemimodule::new(a.base().clone(), blocks, a.labels().to_vec()));
    let parts = classes.iter().enumerate().map(|(i, class)| class.iter().map(|&c| g.inject(i, c)).collect()).collect();
    let r = Hom::from_parts(a, &g, parts);
    (g, r)
}

/// The unique `g` with `g ∘ r = f`, for `r` surjective. Errors if `f` does
/// not factor (for instance when its target is not an internal group).
pub fn factor_through(r: &Hom, f: &Hom, limits: &Limits) -> Result<Hom> {
    let values: Vec<(Elem, Elem)> = r.source().spanning_elements().iter().map(|x| (r.apply(x), f.apply(x))).collect();
    Hom::extend(r.target(), f.target(), &values, limits)
}

/// `G ⊗ H` is an internal group, and the unit isomorphism of the internal
/// group category agrees with the ambient one along `r ⊗ id`.
pub fn check_tensor_closure(
    g: &Arc<FinSemimodule>,
    h: &Arc<FinSemimodule>,
    limits: &Limits,
) -> Result<ValidationReport> {
    if !(is_abelian(g) && is_abelian(h)) {
        return Err(Error::Precondition("both factors must be internal groups".into()));
    }
    let mut r = ValidationReport::new("tensor of internal groups");
    let gh = tensor(g, h, limits)?;
    r.law("tensor.abelian", [witness(is_abelian(gh.object()), || "some element has no negative".into())]);

    // Both routes F1 ⊗ G → G.
    let base = g.base();
    let f1 = Arc::new(FinSemimodule::unit(base));
    let (f1_g, can_v) = unit_left(g, limits)?;
    let (rf1, refl) = abelian_reflection(&f1);
    let rf1_g = tensor(&rf1, g, limits)?;
    // can: RF1 ⊗ G → G sends r(1) ⊗ x to x; on r(s) ⊗ x it is s·x.
    let mut acts: Vec<Hom> = Vec::new();
    for x in g.spanning_elements() {
        let along = Hom::from_fn(&f1, g, |s| g.act(s[0], &x));
        acts.push(factor_through(&refl, &along, limits)?);
    }
    let span = g.spanning_elements();
    let can = rf1_g.factor(&Bimorphism::from_fn(&rf1, g, g, |rho, x| {
        let k = span.iter().position(|y| y == x).expect("block-local elements are spanning");
        acts[k].apply(rho)
    }))?;
    let r_id = f1_g.map(&refl, &Hom::identity(g), &rf1_g)?;
    let via_reflection = r_id.then(&can);
    r.law(
        "unit.reflection_diagram",
        f1.spanning_elements().iter().flat_map(|s| span.iter().map(move |x| (s, x))).map(|(s, x)| {
            let z = f1_g.pure(s, x);
            witness(via_reflection.apply(&z) == can_v.forward.apply(&z), || f1_g.object().name(&z))
        }),
    );
    Ok(r)
}
