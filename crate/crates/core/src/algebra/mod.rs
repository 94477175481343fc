//! Multiplication tensors of algebras, their spread sets, and the standard
//! constructions on them.

mod construct;
mod hypercube;
mod tensor;

pub use construct::{field_construct, gtf_construct, kaplansky_normalize, knuth_orbit};
pub use hypercube::{compose, Hypercube, S3};
pub use tensor::{reduced_basis, GeneralTensor};
