//! Special functions: Bessel, spherical Bessel, Airy, Gamma, Legendre,
//! Pearcey integrals and the ₁F₁(½; 3/2; iz) helper.

mod airy;
mod bessel;
mod gamma;
mod hyp;
mod legendre;
mod pearcey;

pub use airy::{airy, AI0, AIP0};
pub(crate) use airy::airy_any;
pub use bessel::{bessel_j, bessel_j_seq, spherical_j, spherical_j_seq};
pub(crate) use bessel::bessel_j_unchecked;
pub use gamma::{gamma_fn, ln_gamma};
pub use hyp::{hyp1f1_asymptotic, hyp1f1_focus, hyp1f1_series};
pub use legendre::{legendre_p, legendre_seq};
pub use pearcey::{
    moment_contour, moment_series, pearcey, pearcey_half, pearcey_half_dy, pearcey_moment,
    PearceyRoute,
};

/// Complex amplitude type used throughout the crate.
pub type ComplexValue = num_complex::Complex64;
