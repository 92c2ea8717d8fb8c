//! Parametrized Lagrangians of non-uniform hypergraphs.
//!
//! * [`hypergraph`], [`colex`], [`compress`], [`clique`], [`links`]: the
//!   combinatorial side (edge sets, colex initial segments, left-compression).
//! * [`lagrangian`]: evaluation and maximization of `L_α(H, x)` over the
//!   standard simplex, optimality checks and a brute-force oracle.
//! * [`theorems`]: closed-form values and verifiers.
//! * [`lab`]: enumeration of left-compressed families and extremal scans.

pub mod clique;
pub mod colex;
pub mod compress;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod lab;
pub mod lagrangian;
pub mod links;
pub mod theorems;

pub use error::{Error, Result};
pub use hypergraph::{complete, induced, isolated_vertices, Edge, EdgeTypeSet, Hypergraph};
pub use lagrangian::{AlphaParams, Optimum, SolverConfig, Weighting};
