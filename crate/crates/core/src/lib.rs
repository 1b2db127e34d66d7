//! Exact computational engine for random walks driven by finite R-trivial
//! transformation monoids: monoid closure and structure, the lattice of
//! idempotent-generated left ideals with its Moebius function, exact
//! transition-matrix spectra, stationary distributions by independent
//! routes, absorption and mixing bounds, and a library of built-in models
//! (Tsetlin, Toom-style shelf dynamics, free tree monoids, sandpiles on
//! arborescences, Coxeter exchange walks).

pub mod action;
pub mod coxeter;
pub mod error;
pub mod green;
pub mod lattice;
pub mod matrix;
pub mod models;
pub mod monoid;
pub mod prob;
pub mod ratio;
pub mod report;
pub mod rng;
pub mod sim;
pub mod transform;
pub mod walk;

pub use error::{Error, Result};
