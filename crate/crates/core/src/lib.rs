//! Exact arithmetic for graph motif parameters.
//!
//! A motif parameter is a finite rational combination of induced-subgraph
//! counts. This crate counts induced substructures, rewrites polynomials in
//! such counts as linear combinations, decides whether a parameter has a
//! counting interpretation, and simulates the oracle counting game on small
//! instances, checking every closed form against brute force.

pub mod caps;
pub mod counting;
pub mod error;
pub mod graph;
pub mod io;
pub mod linearize;
pub mod motif;
pub mod oraclesim;
pub mod relstruct;
pub mod universes;
pub mod witness;

pub use caps::Caps;
pub use error::{Error, Result};
