//! Exact computations in the generic Hecke algebra of the complex reflection
//! group `G(b,1,n)`.

pub mod error;
pub mod expr;
pub mod glnq;
pub mod group;
pub mod hecke;
pub mod kl;
pub mod order;
pub mod report;
pub mod rpoly;
pub mod scalar;
pub mod subexp;
pub mod verify;

pub use error::{HeckeError, Result};
pub use expr::parse_element;
pub use group::{DiagSet, GroupElement, GroupParams, Perm, Reflection};
pub use hecke::{GenericElement, HeckeElement, SpecializedElement};
pub use scalar::{GenericScalar, HeckeScalar, SpecializedScalar};
