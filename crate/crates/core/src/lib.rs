//! Total colorings of fullerene nanodiscs.
//!
//! A fullerene nanodisc of radius `r >= 2` is the cubic planar graph of
//! girth 5 whose faces are one central layer of twelve pentagons arranged
//! in adjacent pairs and hexagons everywhere else, closed off by two cap
//! faces. This crate provides:
//!
//! * [`semigraph`]: graphs with semiedges, rotation systems, face tracing;
//! * [`disc`]: the nanodisc generator and structural validation;
//! * [`coloring`]: total colorings, verification, cycle and central-layer
//!   patterns;
//! * [`solver`]: an exact backtracking solver for total coloring problems,
//!   plus CNF export;
//! * [`blocks`]: hemisphere and block decomposition with the junction
//!   operations and compatibility predicates;
//! * [`constructive`]: the 4-total-coloring construction for the whole
//!   family, built from solved base blocks;
//! * [`json`]: serialization of graphs, colorings and witness bundles.

pub mod blocks;
pub mod coloring;
pub mod constructive;
pub mod disc;
pub mod json;
pub mod semigraph;
pub mod solver;

mod search;

pub use blocks::{Block, Hemisphere, Side};
pub use coloring::{Color, ConflictReport, TotalColoring};
pub use constructive::{BaseCaseTables, FamilyWitness, Provenance, SearchOutcome};
pub use disc::Nanodisc;
pub use semigraph::{Edge, EdgeKind, Element, Semigraph, VertexId};
