//! Finite CDGAs, Hirsch extensions, partial Sullivan minimal models and formality probes.

mod cdga;
mod extension;
mod formality;
mod model;

pub use cdga::Cdga;
pub use extension::{hirsch_extend, ExtElem, FreeExtension, Generator, Key, Materialized, Monomial};
pub use model::{minimal_model, GeneratorKind, ModelCheck, ModelGenerator, ModelMap, ModelReport, PartialMinimalModel};
pub use formality::{massey_witness, s_formality_probe, FormalityReport, FormalityVerdict, MasseyWitness};
