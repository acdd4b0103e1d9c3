use std::collections::HashMap;
use std::sync::Arc;

use super::block::{check_block, Block, RawBlock};
use super::hom::{enumerate_homs, Hom};
use super::module::{Elem, FinSemimodule};
use crate::limits::{sat_pow, Limits};
use crate::report::ValidationReport;
use crate::semiring::FiniteSemiring;
use crate::Result;

/// Law check for candidate semimodule tables; see [`check_block`].
pub fn check_semimodule(base: &FiniteSemiring, raw: &RawBlock) -> Result<ValidationReport> {
    check_block(base, raw)
}

/// The free module of rank `n`, subject to the carrier cap.
pub fn free(base: &Arc<FiniteSemiring>, n: usize, limits: &Limits) -> Result<FinSemimodule> {
    limits.check("free module", sat_pow(base.size() as u128, n))?;
    Ok(FinSemimodule::free_labeled(base, vec![None; n]))
}

/// `A ⊕ B` with its structure maps.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub object: Arc<FinSemimodule>,
    pub injections: [Hom; 2],
    pub projections: [Hom; 2],
}

pub fn biproduct(a: &Arc<FinSemimodule>, b: &Arc<FinSemimodule>, limits: &Limits) -> Result<Biproduct> {
    limits.check("biproduct", a.size().saturating_mul(b.size()))?;
    let blocks = a.blocks().iter().chain(b.blocks()).cloned().collect();
    let labels = a.labels().iter().chain(b.labels()).cloned().collect();
    let sum = Arc::new(FinSemimodule::new(a.base().clone(), blocks, labels));
    let k = a.num_blocks();
    let split = |x: &Elem| (x[..k].to_vec(), x[k..].to_vec());
    let injections = [
        Hom::from_fn(a, &sum, |x| x.iter().copied().chain(b.zero()).collect()),
        Hom::from_fn(b, &sum, |y| a.zero().into_iter().chain(y.iter().copied()).collect()),
    ];
    let projections = [Hom::from_fn(&sum, a, |z| split(z).0), Hom::from_fn(&sum, b, |z| split(z).1)];
    Ok(Biproduct { object: sum, injections, projections })
}

/// The submodule on `members`, which must be closed under addition and
/// action and contain zero, with its inclusion.
pub fn subobject(a: &Arc<FinSemimodule>, members: &[Elem]) -> (Arc<FinSemimodule>, Hom) {
    let pos: HashMap<&Elem, u32> = members.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let at = |x: Elem| pos[&x];
    let k = members.len();
    let add =
        (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| at(a.add(&members[i], &members[j]))).collect();
    let act =
        a.base().elements().flat_map(|s| members.iter().map(move |x| (s, x))).map(|(s, x)| at(a.act(s, x))).collect();
    let names = members.iter().map(|x| a.name(x)).collect();
    let block = Block::from_tables(a.base().clone(), names, add, at(a.zero()), act);
    let sub = Arc::new(FinSemimodule::from_block(Arc::new(block)));
    let inclusion = Hom::from_fn(&sub, a, |x| members[x[0] as usize].clone());
    (sub, inclusion)
}

/// `{x : f(x) = g(x)}` with its embedding.
pub fn equalizer(f: &Hom, g: &Hom, limits: &Limits) -> Result<(Arc<FinSemimodule>, Hom)> {
    let members: Vec<Elem> = f.source().elements(limits)?.into_iter().filter(|x| f.apply(x) == g.apply(x)).collect();
    Ok(subobject(f.source(), &members))
}

/// `x + … + x` with `n` summands.
pub fn nfold(a: &FinSemimodule, n: u64, x: &[u32]) -> Elem {
    a.nfold(n, x)
}

/// Some isomorphism `A → B`, if one exists, found among all homs.
pub fn find_isomorphism(a: &Arc<FinSemimodule>, b: &Arc<FinSemimodule>, limits: &Limits) -> Result<Option<Hom>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let elems = a.elements(limits)?;
    for h in enumerate_homs(a, b, limits)? {
        let mut seen = std::collections::HashSet::new();
        if elems.iter().all(|x| seen.insert(h.apply(x))) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}
