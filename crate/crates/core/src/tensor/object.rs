use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use super::bimorphism::Bimorphism;
use super::strategy::{tensor_strategies, BlockTensor, TensorStrategy};
use crate::limits::Limits;
use crate::semimodule::{biproduct, Biproduct, Block, Elem, FinSemimodule, Hom};
use crate::{Error, Result};

/// `A ⊗ B` together with its universal bimorphism.
///
/// The object is the direct sum over block pairs `(i, j)` of `A_i ⊗ B_j`,
/// with block index `i * |blocks of B| + j`. Every element carries a
/// decomposition into pure tensors, which is what makes factoring
/// bimorphisms a table lookup.
#[derive(Clone, Debug)]
pub struct TensorObject {
    left: Arc<FinSemimodule>,
    right: Arc<FinSemimodule>,
    object: Arc<FinSemimodule>,
    univ: Bimorphism,
    decomposition: Vec<Vec<Vec<(u32, u32)>>>,
}

/// `A ⊗ B`, picking the first applicable strategy per block pair.
pub fn tensor(a: &Arc<FinSemimodule>, b: &Arc<FinSemimodule>, limits: &Limits) -> Result<TensorObject> {
    tensor_with(a, b, None, limits)
}

/// `A ⊗ B` using the named strategy for every block pair, or automatic
/// selection when `strategy` is `None`.
pub fn tensor_with(
    a: &Arc<FinSemimodule>,
    b: &Arc<FinSemimodule>,
    strategy: Option<&str>,
    limits: &Limits,
) -> Result<TensorObject> {
    if a.base() != b.base() {
        return Err(Error::Mismatch("tensor factors have different base semirings".into()));
    }
    let registry = tensor_strategies();
    let forced: Option<&dyn TensorStrategy> = strategy.map(|s| registry.get(s)).transpose()?;
    let mut cache: HashMap<(*const Block, *const Block), BlockTensor> = HashMap::new();
    let (mut blocks, mut labels, mut tables, mut decomposition) = (vec![], vec![], vec![], vec![]);
    for (i, ab) in a.blocks().iter().enumerate() {
        for (j, bb) in b.blocks().iter().enumerate() {
            let key = (Arc::as_ptr(ab), Arc::as_ptr(bb));
            if let Entry::Vacant(slot) = cache.entry(key) {
                let s = match forced {
                    Some(s) if s.applies(ab, bb) => s,
                    Some(s) => {
                        return Err(Error::InvalidParameter(format!(
                            "tensor strategy `{}` does not apply to blocks {i} and {j}",
                            s.name()
                        )))
                    }
                    None => registry.iter().find(|s| s.applies(ab, bb)).expect("presentation applies to all blocks"),
                };
                slot.insert(s.tensor(ab, bb, limits)?);
            }
            let bt = &cache[&key];
            blocks.push(bt.block.clone());
            let parts: Vec<String> = [a.display_label(i), b.display_label(j)].into_iter().flatten().collect();
            labels.push(if parts.is_empty() { None } else { Some(parts.join("⊗")) });
            tables.push(bt.univ.clone());
            decomposition.push(bt.decomposition.clone());
        }
    }
    let object = Arc::new(FinSemimodule::new(a.base().clone(), blocks, labels));
    let parts = tables
        .into_iter()
        .enumerate()
        .map(|(k, t)| t.into_iter().map(|v| Some(object.inject(k, v))).collect())
        .collect();
    let univ = Bimorphism::from_parts(a, b, &object, parts);
    Ok(TensorObject { left: a.clone(), right: b.clone(), object, univ, decomposition })
}

impl TensorObject {
    pub fn left(&self) -> &Arc<FinSemimodule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinSemimodule> {
        &self.right
    }

    pub fn object(&self) -> &Arc<FinSemimodule> {
        &self.object
    }

    pub fn univ(&self) -> &Bimorphism {
        &self.univ
    }

    /// `a ⊗ b`.
    pub fn pure(&self, a: &[u32], b: &[u32]) -> Elem {
        self.univ.eval(a, b)
    }

    /// The pair of factor blocks behind object block `k`.
    pub fn block_pair(&self, k: usize) -> (usize, usize) {
        (k / self.right.num_blocks(), k % self.right.num_blocks())
    }

    /// Block-local pure tensors summing to block-local element `v` of block `k`.
    pub fn local_decomposition(&self, k: usize, v: u32) -> &[(u32, u32)] {
        &self.decomposition[k][v as usize]
    }

    /// Pure tensors `(a, b)` whose images sum to `z`.
    pub fn decompose(&self, z: &[u32]) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (k, &v) in z.iter().enumerate() {
            let (i, j) = self.block_pair(k);
            for &(x, y) in self.local_decomposition(k, v) {
                out.push((self.left.inject(i, x), self.right.inject(j, y)));
            }
        }
        out
    }

    /// The unique hom `g` with `g ∘ univ = f`.
    pub fn factor(&self, f: &Bimorphism) -> Result<Hom> {
        if !(f.left().same_as(&self.left) && f.right().same_as(&self.right)) {
            return Err(Error::Mismatch("bimorphism sources differ from the tensor factors".into()));
        }
        f.require_total("factoring through a tensor product")?;
        f.check().into_result()?;
        let target = f.target();
        let parts: Vec<Vec<Elem>> = (0..self.object.num_blocks())
            .map(|k| {
                let (i, j) = self.block_pair(k);
                self.decomposition[k]
                    .iter()
                    .map(|d| {
                        let mut acc = target.zero();
                        for &(x, y) in d {
                            target.add_assign(&mut acc, f.local(i, j, x, y).expect("total"));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let g = Hom::from_parts(&self.object, target, parts);
        if let Some(v) = g.check().first_violation() {
            return Err(Error::Internal(format!("factored map is not a hom: {v}")));
        }
        if self.univ.then(&g) != *f {
            return Err(Error::Internal("factored map does not reproduce the bimorphism".into()));
        }
        Ok(g)
    }

    /// True if the image of `univ` generates the object, checked block by block.
    pub fn is_generated_by_pure_tensors(&self) -> bool {
        (0..self.object.num_blocks()).all(|k| {
            let (i, j) = self.block_pair(k);
            let (ab, bb) = (self.left.block(i), self.right.block(j));
            let image: Vec<u32> = ab
                .elements()
                .flat_map(|x| bb.elements().map(move |y| (x, y)))
                .map(|(x, y)| self.univ.local(i, j, x, y).expect("total")[k])
                .collect();
            self.object.block(k).span(&image).into_iter().all(|b| b)
        })
    }

    /// `(f ⊗ g)`, where `into` is the tensor of the codomains.
    pub fn map(&self, f: &Hom, g: &Hom, into: &TensorObject) -> Result<Hom> {
        let h = Bimorphism::from_fn(&self.left, &self.right, &into.object, |x, y| into.pure(&f.apply(x), &g.apply(y)));
        self.factor(&h)
    }
}

/// An isomorphism with its verified inverse.
#[derive(Clone, Debug)]
pub struct Iso {
    pub forward: Hom,
    pub inverse: Hom,
}

impl Iso {
    fn new(forward: Hom, inverse: Hom) -> Result<Iso> {
        if forward.then(&inverse) != Hom::identity(forward.source())
            || inverse.then(&forward) != Hom::identity(inverse.source())
        {
            return Err(Error::Internal("canonical maps are not mutually inverse".into()));
        }
        Ok(Iso { forward, inverse })
    }
}

/// `F1 ⊗ A → A`.
pub fn unit_left(a: &Arc<FinSemimodule>, limits: &Limits) -> Result<(TensorObject, Iso)> {
    let f1 = Arc::new(FinSemimodule::unit(a.base()));
    let t = tensor(&f1, a, limits)?;
    let fwd = t.factor(&Bimorphism::from_fn(&f1, a, a, |s, x| a.act(s[0], x)))?;
    let one = vec![a.base().one()];
    let inv = Hom::from_fn(a, &t.object, |x| t.pure(&one, x));
    let iso = Iso::new(fwd, inv)?;
    Ok((t, iso))
}

/// `A ⊗ F1 → A`.
pub fn unit_right(a: &Arc<FinSemimodule>, limits: &Limits) -> Result<(TensorObject, Iso)> {
    let f1 = Arc::new(FinSemimodule::unit(a.base()));
    let t = tensor(a, &f1, limits)?;
    let fwd = t.factor(&Bimorphism::from_fn(a, &f1, a, |x, s| a.act(s[0], x)))?;
    let one = vec![a.base().one()];
    let inv = Hom::from_fn(a, &t.object, |x| t.pure(x, &one));
    let iso = Iso::new(fwd, inv)?;
    Ok((t, iso))
}

/// `σ : A ⊗ B → B ⊗ A`, `a⊗b ↦ b⊗a`.
pub fn symmetry(ab: &TensorObject, ba: &TensorObject) -> Result<Iso> {
    let fwd = ab.factor(&Bimorphism::from_fn(&ab.left, &ab.right, &ba.object, |x, y| ba.pure(y, x)))?;
    let inv = ba.factor(&Bimorphism::from_fn(&ba.left, &ba.right, &ab.object, |y, x| ab.pure(x, y)))?;
    Iso::new(fwd, inv)
}

/// The four tensors an associator relates.
#[derive(Clone, Debug)]
pub struct TripleTensor {
    pub ab: TensorObject,
    pub bc: TensorObject,
    /// `(A ⊗ B) ⊗ C`.
    pub ab_c: TensorObject,
    /// `A ⊗ (B ⊗ C)`.
    pub a_bc: TensorObject,
}

impl TripleTensor {
    pub fn new(
        a: &Arc<FinSemimodule>,
        b: &Arc<FinSemimodule>,
        c: &Arc<FinSemimodule>,
        limits: &Limits,
    ) -> Result<TripleTensor> {
        let ab = tensor(a, b, limits)?;
        let bc = tensor(b, c, limits)?;
        let ab_c = tensor(&ab.object, c, limits)?;
        let a_bc = tensor(a, &bc.object, limits)?;
        Ok(TripleTensor { ab, bc, ab_c, a_bc })
    }

    /// `(a⊗b)⊗c ↦ a⊗(b⊗c)`.
    pub fn associator(&self) -> Result<Iso> {
        let (ab, bc, ab_c, a_bc) = (&self.ab, &self.bc, &self.ab_c, &self.a_bc);
        let fwd = ab_c.factor(&Bimorphism::from_fn(&ab.object, &ab_c.right, &a_bc.object, |z, c| {
            let terms: Vec<Elem> = ab.decompose(z).iter().map(|(x, y)| a_bc.pure(x, &bc.pure(y, c))).collect();
            a_bc.object.sum(&terms)
        }))?;
        let inv = a_bc.factor(&Bimorphism::from_fn(&a_bc.left, &bc.object, &ab_c.object, |x, w| {
            let terms: Vec<Elem> = bc.decompose(w).iter().map(|(y, c)| ab_c.pure(&ab.pure(x, y), c)).collect();
            ab_c.object.sum(&terms)
        }))?;
        Iso::new(fwd, inv)
    }
}

/// The canonical isomorphisms for `A`, `B`, `C`.
#[derive(Clone, Debug)]
pub struct CanonicalIsos {
    pub unit_left: Iso,
    pub unit_right: Iso,
    pub symmetry: Iso,
    pub associator: Iso,
}

pub fn canonical_isos(
    a: &Arc<FinSemimodule>,
    b: &Arc<FinSemimodule>,
    c: &Arc<FinSemimodule>,
    limits: &Limits,
) -> Result<CanonicalIsos> {
    let triple = TripleTensor::new(a, b, c, limits)?;
    let ba = tensor(b, a, limits)?;
    Ok(CanonicalIsos {
        unit_left: unit_left(a, limits)?.1,
        unit_right: unit_right(a, limits)?.1,
        symmetry: symmetry(&triple.ab, &ba)?,
        associator: triple.associator()?,
    })
}

/// `b_r(a) = a⊗b`, `b_l(a) = b⊗a` and their pairing into the product.
#[derive(Clone, Debug)]
pub struct BMaps {
    pub right: Hom,
    pub left: Hom,
    pub product: Biproduct,
    pub both: Hom,
}

pub fn b_maps(ab: &TensorObject, ba: &TensorObject, b: &Elem, limits: &Limits) -> Result<BMaps> {
    let a = &ab.left;
    let right = Hom::from_fn(a, &ab.object, |x| ab.pure(x, b)).validated()?;
    let left = Hom::from_fn(a, &ba.object, |x| ba.pure(b, x)).validated()?;
    let product = biproduct(&ab.object, &ba.object, limits)?;
    let both = right.then(&product.injections[0]).plus(&left.then(&product.injections[1])).validated()?;
    Ok(BMaps { right, left, product, both })
}
