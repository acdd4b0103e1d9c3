//! Finite semimodules over a finite commutative semiring, their
//! homomorphisms, and the limits and colimits built from them.

mod block;
mod congruence;
mod hom;
mod module;
mod ops;

pub use block::{check_block, Block, RawBlock};
pub use congruence::{congruence_closure, quotient, Congruence};
pub(crate) use hom::block_homs;
pub use hom::{enumerate_homs, Hom};
pub use module::{Elem, FinSemimodule};
pub use ops::{biproduct, check_semimodule, equalizer, find_isomorphism, free, nfold, subobject, Biproduct};

#[cfg(test)]
pub(crate) use ops::tests::chain;
