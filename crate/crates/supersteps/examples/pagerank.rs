//! PageRank over a small link graph.
//!
//! Builds a directed graph by hand, runs a fixed budget of update rounds,
//! and prints the ranking. Vertex 4 links nowhere, so its rank leaks out of
//! the system each round instead of being redistributed.

use supersteps::algorithms;
use supersteps::{EngineConfig, Graph};

fn main() {
    // A tiny site: 0 is the landing page everyone links back to, and 4 is a
    // dead end with no outgoing links at all.
    let edges = [(0u32, 1u32), (0, 2), (1, 0), (2, 0), (2, 3), (3, 0), (3, 4)];
    let graph = Graph::from_edges(5, &edges).unwrap();

    let config = EngineConfig::default();
    let (ranks, report) = algorithms::pagerank(&graph, 30, &config).unwrap();

    let mut order: Vec<usize> = (0..ranks.len()).collect();
    order.sort_by(|&a, &b| ranks[b].total_cmp(&ranks[a]));

    println!("rank after 30 rounds ({} supersteps):", report.supersteps);
    for page in order {
        println!("  page {page}: {:.6}", ranks[page]);
    }
    println!("total mass retained: {:.6}", ranks.iter().sum::<f64>());
}
