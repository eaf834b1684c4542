//! Lie-algebra models: structure constants, Chevalley–Eilenberg differentials,
//! nilpotency filtrations.

mod filtration;
mod model;

pub use filtration::{restrict, wedge_power_span, Filtration, FiltrationReport};
pub use model::LieModel;
