//! Exact integral cohomology for topological T-duality of principal circle
//! bundles and of semi-free circle actions.
//!
//! The layers, bottom up: [`chain`] (integer linear algebra and cochain
//! complexes), [`simplicial`] (simplicial cochains and cup products),
//! [`catalog`] (shipped models), [`gysin`] (total-space models and the Gysin
//! sequence), [`tdual`] (the duality transform), [`borel`] (truncated Borel
//! constructions), and [`dsl`] (input language and reports).

pub mod borel;
pub mod catalog;
pub mod chain;
pub mod cup;
pub mod dsl;
pub mod error;
pub mod gysin;
pub mod simplicial;
pub mod tdual;

pub use error::{Error, ErrorClass, Result};
