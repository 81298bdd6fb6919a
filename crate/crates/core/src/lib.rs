//! Graceful difference labelings of disjoint unions of directed circuits.
//!
//! A labeling assigns `1..=n` bijectively to the `n` vertices; it is a gdl
//! when the arc labels `f(head) - f(tail)` are pairwise distinct.

pub mod catalog;
pub mod certificate;
pub mod constructions;
pub mod error;
pub mod family;
pub mod labeling;
pub mod search;
pub mod triangles;
pub mod verify;

pub use certificate::{Certificate, Provenance, Status};
pub use constructions::{plan, plan_and_construct, ConstructionPlan, ConstructionTrace};
pub use error::{GdlError, Result};
pub use family::CircuitFamily;
pub use labeling::Labeling;
pub use search::{search_gdl, MagnitudeProfile, SearchBudget, SearchStats};
pub use verify::{is_gdl, verify_gdl, VerificationReport};
