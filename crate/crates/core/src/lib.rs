//! Exact computations for quotients `S/I` of a polynomial ring by a quadratic
//! monomial ideal, with edge ideals of paths and cycles as the main subject:
//! deviations and multigraded deviations, Betti tables, and the Koszul
//! homology algebra computed three independent ways.

pub mod betti;
pub mod deviations;
pub mod dgmodel;
pub mod error;
pub mod ideals;
pub mod koszul;
pub mod linalg;
pub mod report;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use report::CheckReport;
