//! Delta-kicked planar (2D) and rigid (3D) rotors.
//!
//! Exact quantum evolution, zero- and finite-temperature classical ensembles,
//! uniform semiclassical approximations of the focus (cusp), rainbow (fold)
//! and glory, and the accumulative squeezing recurrence.

pub mod classical;
pub mod error;
pub mod profile;
pub mod quad;
pub mod quantum2d;
pub mod quantum3d;
pub mod semiclassical;
pub mod specfun;
pub mod squeeze;
pub mod sum;
pub mod thermal;

pub use error::{Result, RotorError};
pub use num_complex::Complex64;
