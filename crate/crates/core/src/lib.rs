//! Exact polynomial vector-field models of free nilpotent Lie algebras and of the
//! Carnot algebra with growth vector (2, 3, 5, 8).

pub mod cli;
pub mod ggmodel;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod sym258;
pub mod vecfield;
