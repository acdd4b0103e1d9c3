//! Hopf and Lie structures in categories of finite semimodules over finite
//! commutative semirings, checked by exact finite computation.

pub mod abelian;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod lie;
pub mod limits;
pub mod monoidal;
pub mod primitives;
pub mod registry;
pub mod report;
pub mod semimodule;
pub mod semiring;
pub mod tensor;
pub mod tensor_algebra;
pub mod text;

pub use error::{Error, Result};
pub use limits::Limits;
pub use report::ValidationReport;
