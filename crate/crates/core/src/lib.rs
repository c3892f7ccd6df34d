//! Discrete eigenvalue spectra of finite element, finite difference and
//! Legendre spectral discretizations of the Dirichlet Laplacian on intervals
//! and squares, and tools for counting how many of them can be trusted.

// `!(x > 0.0)` is used on purpose: NaN must fail positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod asymptotics;
pub mod band;
pub mod discretize;
pub mod dispersion;
pub mod domain;
pub mod eig;
pub mod error;
pub mod experiments;
pub mod ordering;
pub mod reliability;
pub mod spectrum;
pub mod theorem;

pub use assembly::MatrixPencil;
pub use domain::{DomainSpec, Method, ModeIndex, UniformMesh};
pub use eig::{EigenSolveOptions, SolvePath};
pub use error::{Error, Result};
pub use spectrum::{DiscreteSpectrum, Resolution, SpectrumEntry};
pub use ordering::{LevelGroup, OrderingStrategy};
pub use reliability::{Pairing, ReliabilityReport};
pub use theorem::TheoremParams;
