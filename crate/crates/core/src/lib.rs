//! Additive codes over F_{p^e} under general dualities.

pub mod cli;
pub mod code;
pub mod construct;
pub mod duality;
pub mod error;
pub mod fpmat;
pub mod gf;
pub mod ortho;
pub mod search;

pub use code::AdditiveCode;
pub use duality::{ClassFilter, Duality, DualityClass};
pub use error::{Error, Result};
pub use fpmat::{Matrix, Prime, Residue};
pub use gf::{FieldSpec, GFElement, GFVector};

/// The matrix type used throughout: residues stored as `u16`.
pub type FpMatrix = fpmat::Matrix<u16>;
