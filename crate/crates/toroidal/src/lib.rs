//! Exact fixed-point model of the shifted quantum toroidal algebra acting on
//! the equivariant K-theory of moduli of parabolic sheaves.
//!
//! Everything is evaluated over exact rationals at random specializations of
//! the equivariant parameters. The modules build on each other in order:
//!
//! * [`scalars`]: rationals, parameter specializations, truncated series.
//! * [`colored`]: colors, the ζ function, τ±, sheet conventions, monomials.
//! * [`partitions`]: r-partitions, degree vectors, tableaux chains.
//! * [`action`]: generator and fine operators on a degree window.
//! * [`walgebra`]: the elements `W_{ij}^k` and the vanishing theorem.
//! * [`shuffle`]: the shuffle algebra evaluated as black-box functions.
//! * [`verify`]: the relation suite and the theorem suite.
//! * [`cli`]: the command-line front end and JSON reports.

pub mod action;
pub mod cli;
pub mod colored;
pub mod partitions;
pub mod scalars;
pub mod shuffle;
pub mod verify;
pub mod walgebra;

pub use scalars::{Specialization, Q};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("non-generic specialization: {0}")]
    NonGeneric(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("adjacent pole in tableau denominator: {0}")]
    AdjacentPole(String),
    #[error("series truncation too short: {0}")]
    Truncation(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
