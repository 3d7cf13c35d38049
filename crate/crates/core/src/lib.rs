//! Weyl-Heisenberg covariant SIC-POVMs and the extended Clifford group.
//!
//! Layers, bottom up: [`numtheory`] (modular arithmetic), [`weyl`]
//! (displacement operators), [`clifford`] (the group modulo phases and
//! operator synthesis), [`analysis`] (fiducials, stabilizers, orbits),
//! [`search`] (numerical fiducial search), and the [`cli`] front end.

pub mod analysis;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod numtheory;
pub mod search;
pub mod tables;
pub mod vecfile;
pub mod weyl;

pub use error::{Error, Result};
