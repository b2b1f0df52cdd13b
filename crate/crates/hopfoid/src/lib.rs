//! Exact finite-dimensional Hopf algebroids over function algebras on finite
//! sets, their coupled Hopf categories, and both Galois theories.

pub mod bimodule;
pub mod category;
pub mod error;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod bialgebroid;
pub mod constructions;
pub mod correspondence;
pub mod galois;
pub mod io;
