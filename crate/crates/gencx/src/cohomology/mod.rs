//! Cohomology of cochain algebras and Lie models: Betti numbers, cup products,
//! twisted cohomology, Lefschetz maps, lemma checks, Massey products.

mod complex;
mod existence;
mod lemma;
mod massey;
mod ring;

pub use complex::{coords_form, form_coords, spot_cohomology, CochainAlgebra, Cohomology, DegreeCohomology};
pub use existence::{symplectic_existence, Existence, ExistenceReport};
pub use lemma::{lemma_check, LemmaVerdict};
pub use massey::{massey_quadruple, massey_triple, Cochain, MasseyProblem};
pub use ring::{cohomology, CohomologyRing, CupBlock, LefschetzLevel, LefschetzReport, ParityDims, TwistedReport};
