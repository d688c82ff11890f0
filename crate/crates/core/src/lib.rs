//! Phase sensitivity of a Mach-Zehnder interferometer read out by photon
//! parity, for the common entangled two-mode inputs (Yurke, dual-Fock, NOON,
//! intelligent states), with optional photon loss in one arm.
//!
//! The interferometer is modelled in the Schwinger (spin-`N/2`) picture:
//! the first beam splitter is `exp(-i pi/2 J_x)`, the relative phase
//! `exp(-i phi J_z)` and the second beam splitter `exp(+i pi/2 J_x)`, which
//! together compose to `exp(-i phi J_y)`.

pub mod detection;
pub mod error;
pub mod linalg;
pub mod loss;
pub mod optimize;
pub mod oracle;
pub mod specialfn;
pub mod states;
pub mod su2;

pub use error::{Error, Result};
pub use su2::{JState, WignerBlock};
