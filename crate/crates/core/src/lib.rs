//! Principal Albert isotopes K^(f,g) of cyclic extensions of finite fields.
//!
//! The crate is `no_std` + `alloc`: finite-field arithmetic, the cyclic
//! extension K/F with its norm-one group and transversal, twisted operators
//! sum L(y_i) tau^i, structure tensors with Kaplansky heart extraction, and
//! the isomorphism classifier together with its brute-force GL(n, q) oracle.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod classify;
pub mod error;
pub mod ff;
pub mod galois;
pub mod linalg;
mod poly;
pub mod space;
pub mod twistop;
pub mod verify;

pub use algebra::{AlgebraStructure, IsotopePresentation};
pub use error::{Error, Result};
pub use ff::{make_field, Elem, FieldElement, FieldSpec, Gf};
pub use galois::CyclicExtension;
pub use linalg::Matrix;
pub use space::VecSpace;
pub use twistop::TwistedOperator;
