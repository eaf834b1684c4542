//! Cohomology ring of a symplectic blow-up and the behaviour of the Lefschetz maps under it.

mod analysis;
mod ring;

pub use analysis::{
    blowup_conditions, blowup_lefschetz, blowup_report, default_samples, has_lefschetz, massey_survival, predict,
    BlowupConditions, BlowupReport, LevelKernels, LevelReport, MasseySurvival, Prediction,
};
pub use ring::{build_blowup_ring, BlowupInput, BlowupRing, Embedding};
