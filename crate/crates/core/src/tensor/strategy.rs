//! Ways of computing the tensor product of two table blocks.

use std::sync::Arc;

use crate::limits::{sat_pow, Limits};
use crate::registry::{Named, Registry};
use crate::semimodule::{congruence_closure, quotient, Block, Elem, FinSemimodule};
use crate::Result;

/// Tensor product of two blocks with its universal bimorphism.
#[derive(Clone, Debug)]
pub struct BlockTensor {
    pub block: Arc<Block>,
    /// `univ[a * |B| + b]`.
    pub univ: Vec<u32>,
    /// For each element, pure tensors summing to it.
    pub decomposition: Vec<Vec<(u32, u32)>>,
}

impl BlockTensor {
    fn swapped(self, a: &Block, b: &Block) -> BlockTensor {
        // `self` is B ⊗ A; reindex it as A ⊗ B.
        let (na, nb) = (a.size(), b.size());
        let univ = (0..na).flat_map(|x| (0..nb).map(move |y| (x, y))).map(|(x, y)| self.univ[y * na + x]).collect();
        let decomposition: Vec<Vec<(u32, u32)>> =
            self.decomposition.into_iter().map(|d| d.into_iter().map(|(y, x)| (x, y)).collect()).collect();
        let names = decomposition.iter().map(|d| pure_sum_name(a, b, d)).collect();
        BlockTensor { block: Arc::new(self.block.renamed(names)), univ, decomposition }
    }
}

fn pure_sum_name(a: &Block, b: &Block, terms: &[(u32, u32)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|&(x, y)| format!("{}⊗{}", a.name(x), b.name(y))).collect::<Vec<_>>().join("+")
}

pub trait TensorStrategy: Named + Send + Sync {
    fn applies(&self, a: &Block, b: &Block) -> bool;
    fn tensor(&self, a: &Arc<Block>, b: &Arc<Block>, limits: &Limits) -> Result<BlockTensor>;
}

/// `F1 ⊗ X ≅ X ≅ X ⊗ F1` with `univ(s, x) = s·x`.
pub struct UnitStrategy;

impl Named for UnitStrategy {
    fn name(&self) -> &'static str {
        "unit"
    }
}

impl TensorStrategy for UnitStrategy {
    fn applies(&self, a: &Block, b: &Block) -> bool {
        a.is_unit() || b.is_unit()
    }

    fn tensor(&self, a: &Arc<Block>, b: &Arc<Block>, _limits: &Limits) -> Result<BlockTensor> {
        let one = a.base().one();
        let (na, nb) = (a.size() as u32, b.size() as u32);
        let pairs = || (0..na).flat_map(move |x| (0..nb).map(move |y| (x, y)));
        Ok(if a.is_unit() {
            BlockTensor {
                block: b.clone(),
                univ: pairs().map(|(s, y)| b.act(s, y)).collect(),
                decomposition: b.elements().map(|y| if y == b.zero() { vec![] } else { vec![(one, y)] }).collect(),
            }
        } else {
            BlockTensor {
                block: a.clone(),
                univ: pairs().map(|(x, s)| a.act(s, x)).collect(),
                decomposition: a.elements().map(|x| if x == a.zero() { vec![] } else { vec![(x, one)] }).collect(),
            }
        })
    }
}

/// Works for any pair of blocks.
///
/// Writing `B` as a quotient of `S^Γ` (Γ a generating set, every element
/// being `Σ c_γ·γ`), right exactness gives `A ⊗ B` as the quotient of
/// `A ⊗ S^Γ ≅ A^Γ` by the congruence generated by
/// `(c_γ·a)_γ ~ (c'_γ·a)_γ` whenever `c` and `c'` evaluate to the same
/// element of `B`. The cheaper of the two orientations is used.
pub struct PresentationStrategy;

impl Named for PresentationStrategy {
    fn name(&self) -> &'static str {
        "presentation"
    }
}

impl TensorStrategy for PresentationStrategy {
    fn applies(&self, _a: &Block, _b: &Block) -> bool {
        true
    }

    fn tensor(&self, a: &Arc<Block>, b: &Arc<Block>, limits: &Limits) -> Result<BlockTensor> {
        let cost_ab = sat_pow(a.size() as u128, b.generators().len());
        let cost_ba = sat_pow(b.size() as u128, a.generators().len());
        if cost_ab <= cost_ba {
            present(a, b, limits)
        } else {
            Ok(present(b, a, limits)?.swapped(a, b))
        }
    }
}

fn present(a: &Arc<Block>, b: &Arc<Block>, limits: &Limits) -> Result<BlockTensor> {
    let base = a.base();
    let gens = b.generators().to_vec();
    let k = gens.len();
    let m = base.size();
    limits.check("tensor presentation", sat_pow(a.size() as u128, k))?;
    limits.check("tensor coefficient enumeration", sat_pow(m as u128, k))?;

    let coeffs: Vec<Vec<u32>> = (0..m.pow(k as u32))
        .map(|mut idx| {
            let mut c = vec![0u32; k];
            for slot in c.iter_mut().rev() {
                *slot = (idx % m) as u32;
                idx /= m;
            }
            c
        })
        .collect();
    let eval = |c: &[u32]| c.iter().zip(&gens).fold(b.zero(), |acc, (&s, &g)| b.add(acc, b.act(s, g)));
    let mut rep: Vec<Option<usize>> = vec![None; b.size()];
    for (i, c) in coeffs.iter().enumerate() {
        rep[eval(c) as usize].get_or_insert(i);
    }
    let rep: Vec<usize> = rep.into_iter().map(|r| r.expect("generators span the block")).collect();

    let candidate = Arc::new(FinSemimodule::new(base.clone(), vec![a.clone(); k], vec![None; k]));
    let phi = |x: u32, c: &[u32]| -> Elem { c.iter().map(|&s| a.act(s, x)).collect() };
    let mut seeds = Vec::new();
    for x in a.elements() {
        for c in &coeffs {
            let canonical = &coeffs[rep[eval(c) as usize]];
            if c != canonical {
                seeds.push((phi(x, c), phi(x, canonical)));
            }
        }
    }
    let cong = congruence_closure(&candidate, &seeds, limits)?;
    let (q, _) = quotient(&cong);

    let univ = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| cong.class_of(&phi(x, &coeffs[rep[y as usize]])))
        .collect();
    let decomposition: Vec<Vec<(u32, u32)>> = cong
        .representatives()
        .iter()
        .map(|&r| {
            let u = candidate.element_at(r);
            u.iter().zip(&gens).filter(|(&x, _)| x != a.zero()).map(|(&x, &g)| (x, g)).collect()
        })
        .collect();
    let names = decomposition.iter().map(|d| pure_sum_name(a, b, d)).collect();
    Ok(BlockTensor { block: Arc::new(q.block(0).renamed(names)), univ, decomposition })
}

pub fn tensor_strategies() -> Registry<dyn TensorStrategy> {
    let mut r: Registry<dyn TensorStrategy> = Registry::new("tensor strategy");
    r.register(Box::new(UnitStrategy));
    r.register(Box::new(PresentationStrategy));
    r
}
