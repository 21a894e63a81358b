//! Free rigid body on so(n), with the so(5) case worked out in full.

pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod report;
pub mod sampling;
pub mod stability;
pub mod verify;

pub use equilibria::{EquilibriumPoint, OrbitInvariants, Provenance, SlotClass, WeylSlot};
pub use error::{Error, Result};
pub use lie::so5::{Coordinates10, Mat10, Vec10};
pub use lie::{InertiaSpec, SkewMatrix};
