//! Quantum mechanics numerics toolkit: closed-form textbook systems
//! cross-validated against grid-based numerical solvers.
//!
//! The crate is grouped by subject: [`quanta`] (constants and old quantum
//! theory), [`gridops`] (finite-difference machinery), [`analytic`]
//! (closed-form bound states), [`fourier`] (momentum representation),
//! [`scattering`] (steps, barriers, wells), [`spin`] (two-level systems and
//! angular momentum algebra), [`manybody`] (exchange symmetry and occupation
//! statistics) and [`bands`] (the Kronig-Penney periodic potential).

pub mod analytic;
pub mod bands;
pub mod error;
pub mod exercises;
pub mod fourier;
pub mod gridops;
pub mod manybody;
pub mod quanta;
pub mod scattering;
pub mod spin;

pub use error::{QmError, Result};

// re-exported so downstream code names the same matrix types
pub use nalgebra;
