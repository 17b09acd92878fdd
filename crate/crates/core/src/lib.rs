//! Markov traces on the cubic Hecke quotients `K_n(alpha, beta)` and the
//! link invariants built from them.

#![allow(clippy::type_complexity)]

pub mod atlas;
pub mod braid;
pub mod coeff;
pub mod data;
pub mod engine;
pub mod invariants;
pub mod numeric;
pub mod obstructions;
pub mod oracle;
pub mod properties;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Engine(#[from] engine::EngineError),
    #[error(transparent)]
    Coeff(#[from] coeff::CoeffError),
    #[error(transparent)]
    Braid(#[from] braid::BraidError),
    /// A verified identity or contract did not hold.
    #[error("check failed: {0}")]
    Check(String),
    #[error("unknown atlas entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
