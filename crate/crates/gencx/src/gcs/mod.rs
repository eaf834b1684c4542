//! Generalized complex structures given by pure spinors.

mod courant;
mod deform;
mod pair;
mod spinor;
mod structure;

pub use courant::{courant, courant_tensor, involutive};
pub use deform::{deformed_spinor, Deformation};
pub use pair::{kahler_pair_check, submanifold_check, symplectic_part, two_form_matrix, GKPair, GKReport, SubmanifoldReport};
pub use spinor::{annihilator, clifford_matrix, integrability_solution, spinor_of, verify_spinor, SpinorReport};
pub use structure::{EulerCheck, GCStructure};
