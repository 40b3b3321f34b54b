//! Naive selection versus bypass on a worst-case shape.
//!
//! On a long chain, a shortest-path wave keeps exactly one vertex busy per
//! superstep. Naive selection still asks every vertex "do you run?" every
//! superstep, so its status checks grow as V times supersteps. Bypass
//! builds the next run set from the vertices that actually received mail
//! and never asks.

use std::time::Instant;

use supersteps::algorithms;
use supersteps::{Delivery, EngineConfig, Graph, Selection, VertexId};

fn main() {
    let n: usize = 10_000;
    let edges: Vec<(VertexId, VertexId)> = (0..n as VertexId - 1).map(|i| (i, i + 1)).collect();
    let chain = Graph::from_edges(n, &edges).unwrap();

    for selection in [Selection::Naive, Selection::Bypass] {
        let config = EngineConfig {
            delivery: Delivery::Push,
            selection,
            ..EngineConfig::default()
        };
        let started = Instant::now();
        let (distances, report) = algorithms::shortest_paths(&chain, 0, &config).unwrap();
        let elapsed = started.elapsed();

        assert_eq!(distances[n - 1], (n - 1) as u64);
        println!(
            "{selection:>6}: {} supersteps, {} vertices computed, {:>11} status checks, {elapsed:.2?}",
            report.supersteps, report.totals.vertices_computed, report.totals.status_checks,
        );
    }
}
