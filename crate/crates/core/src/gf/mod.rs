//! Arithmetic over the prime fields F_2, F_3, F_5, F_7: packed vectors,
//! row-reduced subspaces, square matrices and extension fields.

mod ext;
mod field;
mod mat;
mod packed;
mod poly;
mod span;

pub use ext::ExtField;
pub use field::Fq;
pub use mat::{Mat, Vector, MAX_N};
pub use packed::{PVec, MAX_LEN};
pub use poly::Poly;
pub use span::{Span, SpanElements};
