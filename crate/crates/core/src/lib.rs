//! Exact symmetric-function computations over `Q(q, t)`: modified Macdonald
//! polynomials, the nabla family of eigenoperators, plethysm and the
//! positivity identities built on them.

mod error;
pub mod identities;
pub mod linalg;
pub mod macdonald;
pub mod modular;
pub mod operators;
pub mod partitions;
pub mod plethysm;
pub mod specials;
pub mod symfunc;
pub mod ring;

pub use error::{Error, Result};
