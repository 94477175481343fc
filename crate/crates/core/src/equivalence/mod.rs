//! The action X -> A X B of GL_n x GL_n on matrix spaces: equivalence
//! tests, class representatives and stabilizers.

mod classes;
mod group;
mod invariant;
mod isotopism;
mod matcher;

pub use classes::{are_equivalent, equivalence_classes, equivalence_classes_with, fingerprint, Fingerprint};
pub use group::{automorphism_group, orbits_on_points, rank_one_orbits, rank_one_points, StabilizerGroup};
pub use invariant::{char_poly, conjugacy_invariant, InvariantCache};
pub use isotopism::{act, Isotopism};
