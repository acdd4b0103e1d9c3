use std::collections::HashMap;
use std::sync::Arc;

use super::bimorphism::Bimorphism;
use crate::limits::Limits;
use crate::semimodule::{block_homs, enumerate_homs, Block, Elem, FinSemimodule, Hom};
use crate::Result;

/// The semimodule `[A, B]` of all homs with pointwise structure.
#[derive(Clone, Debug)]
pub struct HomObject {
    pub object: Arc<FinSemimodule>,
    /// `homs[i]` is the hom named by block-local element `i`.
    pub homs: Vec<Hom>,
}

pub fn hom_object(a: &Arc<FinSemimodule>, b: &Arc<FinSemimodule>, limits: &Limits) -> Result<HomObject> {
    let homs = enumerate_homs(a, b, limits)?;
    let index: HashMap<&[Vec<Elem>], u32> = homs.iter().enumerate().map(|(i, h)| (h.parts(), i as u32)).collect();
    let at = |h: Hom| index[h.parts()];
    let n = homs.len();
    let add = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| at(homs[i].plus(&homs[j]))).collect();
    let act = a.base().elements().flat_map(|s| homs.iter().map(move |h| (s, h))).map(|(s, h)| at(h.scale(s))).collect();
    let zero = at(Hom::zero(a, b));
    let names = homs.iter().map(|h| hom_name(a, b, h)).collect();
    let block = Block::from_tables(a.base().clone(), names, add, zero, act);
    Ok(HomObject { object: Arc::new(FinSemimodule::from_block(Arc::new(block))), homs })
}

/// Lists the images of the source's generators, which determine the hom.
fn hom_name(a: &FinSemimodule, b: &FinSemimodule, h: &Hom) -> String {
    let images: Vec<String> = (0..a.num_blocks())
        .flat_map(|i| a.block(i).generators().iter().map(move |&g| (i, g)))
        .map(|(i, g)| b.name(&h.apply(&a.inject(i, g))))
        .collect();
    format!("[{}]", images.join(","))
}

/// Every bimorphism `A × B → C`, enumerated through the currying
/// `Bimorphism(A_i × B_j, C) ≅ Hom(A_i, [B_j, C])` for each block pair;
/// the tensor product is not involved.
pub fn enumerate_bimorphisms(
    a: &Arc<FinSemimodule>,
    b: &Arc<FinSemimodule>,
    c: &Arc<FinSemimodule>,
    limits: &Limits,
) -> Result<Vec<Bimorphism>> {
    let mut per_pair: Vec<Vec<Vec<Option<Elem>>>> = Vec::new();
    let mut total = 1u128;
    for ab in a.blocks() {
        for bb in b.blocks() {
            let bj = Arc::new(FinSemimodule::from_block(bb.clone()));
            let h = hom_object(&bj, c, limits)?;
            let h_elems: Vec<Elem> = (0..h.homs.len() as u32).map(|i| vec![i]).collect();
            let options: Vec<Vec<Option<Elem>>> = block_homs(ab, &h.object, &h_elems)
                .into_iter()
                .map(|curried| {
                    ab.elements()
                        .flat_map(|x| bb.elements().map(move |y| (x, y)))
                        .map(|(x, y)| Some(h.homs[curried[x as usize][0] as usize].apply(&[y])))
                        .collect()
                })
                .collect();
            total = total.saturating_mul(options.len() as u128);
            limits.check_budget("bimorphism enumeration", total)?;
            per_pair.push(options);
        }
    }
    let mut out: Vec<Vec<Vec<Option<Elem>>>> = vec![Vec::new()];
    for options in &per_pair {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(|parts| Bimorphism::from_parts(a, b, c, parts)).collect())
}
