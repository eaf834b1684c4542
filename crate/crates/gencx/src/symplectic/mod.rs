//! Symplectic operators `L`, `Λ`, `H`, the symplectic star and `δ`, the map `φ` onto
//! the `U`-grading of `e^{iω}`, and harmonic-form reports.

mod harmonic;
mod operators;

pub use harmonic::{
    EquivalenceReport, HarmonicLevel, HarmonicReport, IdentityPair, LefschetzConstant, PhiReport, PrimitiveDecomposition,
};
pub use operators::{Relation, RelationReport, SymplecticData};
