//! Exact computation of Nichols algebras of diagonal and group type over
//! cyclotomic fields, the type A root-vector theory, and lifting families.

pub mod braiding;
pub mod error;
pub mod freealg;
pub mod lifting;
pub mod linalg;
pub mod nichols;
pub mod scalar;
pub mod typea;

pub use error::{Error, Result};
pub use scalar::{CycNumber, RootOfUnity};
