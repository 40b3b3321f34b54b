//! Shared-memory vertex-centric graph processing.
//!
//! A graph is loaded once into compressed adjacency arrays and then processed
//! in synchronous supersteps: every selected vertex runs a user `compute`
//! function, exchanges messages, and optionally votes to halt. Message
//! storage is a single combined slot per vertex, so memory stays linear in
//! the vertex count no matter how many messages fly in a superstep.
//!
//! Two axes of the runtime are configurable per run, not per build:
//!
//! * [`Delivery`]: `Push` writes each message into the recipient's slot under
//!   a per-vertex exclusion flag; `Pull` lets a vertex publish one broadcast
//!   value that in-neighbours read without synchronisation.
//! * [`Selection`]: `Naive` scans every vertex each superstep and checks its
//!   status; `Bypass` tracks exactly which vertices received mail and runs
//!   only those, which requires programs that halt on every invocation.
//!
//! ```no_run
//! use supersteps::{algorithms, EngineConfig, Graph, Directedness};
//!
//! let graph = Graph::load_edge_list("graph.txt", Directedness::Undirected)?;
//! let config = EngineConfig::default();
//! let (labels, report) = algorithms::connected_components(&graph, &config)?;
//! println!("{} supersteps, {} messages", report.supersteps, report.totals.messages_sent);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The `examples/` directory has one runnable program per capability:
//! algorithms, push vs pull, selection bypass, custom vertex programs,
//! loading, and instrumentation.

pub mod algorithms;
pub mod bench;
mod engine;
mod graph;
pub mod oracle;
pub mod rss;

pub use engine::{
    run, Context, ContractViolation, Counters, Delivery, EngineConfig, RunError, RunReport,
    Selection, VertexProgram,
};
pub use graph::{build_adjacency, Adjacency, Directedness, Graph, GraphError, VertexId};
