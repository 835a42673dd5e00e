//! A_α-spectra and A_α-energies of graphs obtained from unary operations.
//!
//! `A_α(G) = αD(G) + (1−α)A(G)`. The energy of a graph with p vertices and
//! q edges is `Σ|λ_i − 2αq/p|`.

pub mod alpha;
pub mod analysis;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod ops;

pub use alpha::{alpha_energy, alpha_spectrum, energy_sweep, AlphaValue, EnergyReport};
pub use closed_forms::{
    verify_closed_form, ClosedForm, RegularBase, ScalingOp, VerificationRecord,
};
pub use error::{Error, ParseError, Result};
pub use graph::Graph;
pub use ops::OpDescriptor;
