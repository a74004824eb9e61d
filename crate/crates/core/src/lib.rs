//! Exact computation of the structure maps of the Hopf algebroid that classifies
//! A-typical one-dimensional formal A-module laws over a p-adic number ring `A`.
//!
//! The modules build on one another: [`coeff`] (the coefficient field and its
//! residue rings), [`sequences`], [`gpoly`] (sparse graded polynomials and power
//! series), [`witt`], [`universal`] (logarithms and formal sums), [`hopf`] (right
//! unit, coproduct and their verification suites) and [`stabilizer`].

pub mod coeff;
pub mod error;
pub mod gpoly;
pub mod hopf;
pub mod par;
pub mod report;
pub mod sequences;
pub mod stabilizer;
pub mod universal;
pub mod witt;

pub use error::{Error, Result};
