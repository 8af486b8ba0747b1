//! Modeling and synthesis of mutually coupled linear dipole arrays.
//!
//! The crate computes impedance matrices of side-by-side parallel dipoles
//! (induced-EMF closed forms cross-validated against far-field pattern
//! integration), network quantities (S-parameters, active reflection
//! coefficients, mismatch/radiation/total efficiency), far-field patterns
//! (directivity, gain, realized gain), and drives a differential-evolution
//! optimizer that searches for super-directive configurations holding a
//! target realized gain at end-fire.
//!
//! Coordinate conventions: dipoles are z-directed with feed points on the
//! x-axis, `theta` is the polar angle from +z, `phi` the azimuth from +x.
//! End-fire is `(theta, phi) = (pi/2, 0)`. All internal quantities are SI.

pub mod constants;
pub mod em;
pub mod error;
pub mod experiments;
pub mod files;
pub mod geometry;
pub mod impedance;
pub mod network;
pub mod optimizer;
pub mod quadrature;
pub mod special;

pub mod cli;

pub use error::{Error, Result};
pub use geometry::{ArrayDesign, Dipole, Excitation};
pub use impedance::ImpedanceMatrix;
