pub mod analysis;
pub mod clifford;
pub mod dsl;
pub mod error;
pub mod field;
pub mod linalg;
pub mod operators;
pub mod superspace;

pub use error::{Error, Result};
pub use field::Scalar;
pub use superspace::{BasisKey, Element, PolyMonomial, SpaceConfig, SpinorMonomial};
