//! Word-representability of graphs through semi-transitive orientations,
//! together with exhaustive verifiers for triangulations of grid-covered
//! cylinder graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: graph and digraph values, shortcut detection, induced
//!   subgraph search and canonical forms;
//! * [`words`]: alternation, representation checks and a bounded search for
//!   uniform representing words;
//! * [`semitrans`]: the orientation solver and the branching-proof replayer;
//! * [`gccg`]: cylinder grids, triangulations, cell types and orientation O;
//! * [`catalog`]: named fixtures (wheels, obstructions, oriented bases);
//! * [`verify`]: characterization checks, obstruction census and the
//!   induction step.

pub mod catalog;
pub mod error;
pub mod gccg;
pub mod graph;
pub mod semitrans;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use graph::{Digraph, Graph, VertexId};
