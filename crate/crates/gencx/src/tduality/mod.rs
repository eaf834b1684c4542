//! T-duality of invariant forms and generalized vectors along a circle generator.

mod bundle;
mod transport;
mod verify;

pub use bundle::{dualize_along, CircleBundle, DualityPair};
pub use transport::{Transport, TransportReport};
pub use verify::DualityReport;
