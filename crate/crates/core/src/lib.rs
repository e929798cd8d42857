//! Symplectic graphs over GF(2), Godsil-McKay switching and 2-ranks.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: bit-packed GF(2) matrices (rank, echelon basis, row-space
//!   membership, mod-2 sums and Kronecker products).
//! - [`graph`] and [`graph6`]: graphs, the symplectic graphs `Sp(2ν,2)`,
//!   strongly-regular verification and graph6 interchange.
//! - [`switching`]: Godsil-McKay switching sets, the switch itself, exhaustive
//!   size-4 enumeration, per-graph censuses and rank-ascent chains.
//! - [`hadamard`]: ±1 Hadamard matrices, Kronecker towers and the 2-rank
//!   functional `ρ(H)`, plus the graph ↔ Hadamard correspondence.
//! - [`iso`]: canonical forms by individualization-refinement, used to sort
//!   switched graphs into isomorphism classes.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod graph6;
pub mod hadamard;
pub mod iso;
pub mod switching;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use graph::{srg_params, symplectic_graph, Graph, SrgParams};
