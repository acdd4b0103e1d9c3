//! The tensor product of finite semimodules, its universal bimorphism,
//! canonical isomorphisms and internal homs.

mod bimorphism;
mod homobj;
mod object;
mod strategy;

pub use bimorphism::Bimorphism;
pub use homobj::{enumerate_bimorphisms, hom_object, HomObject};
pub use object::{
    b_maps, canonical_isos, symmetry, tensor, tensor_with, unit_left, unit_right, BMaps, CanonicalIsos, Iso,
    TensorObject, TripleTensor,
};
pub use strategy::{tensor_strategies, BlockTensor, PresentationStrategy, TensorStrategy, UnitStrategy};
