//! Semantic units over RDF knowledge graphs.
//!
//! A dataset of quads is partitioned into statement units, which are then
//! composed into compound units (typed statements, items, item groups,
//! granularity trees, contexts, lists). Units can be translated to a logic
//! program and OWL axioms, packaged as nanopublications, filtered by an access
//! policy and aligned against another processed graph.
//!
//! See the `examples/` directory for one runnable walk-through per capability.

pub mod align;
pub mod cli;
pub mod compound;
pub mod fdo;
pub mod semantics;
pub mod store;
pub mod units;
