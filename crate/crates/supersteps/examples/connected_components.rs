//! Connected components by minimum-label propagation.
//!
//! The label of a component is the smallest dense id it contains, so the
//! result doubles as a canonical partition: two vertices are connected
//! exactly when their labels match.

use std::collections::BTreeMap;

use supersteps::algorithms;
use supersteps::{EngineConfig, Graph, VertexId};

fn main() {
    // Three islands: a square, a pair, and a lone vertex (8).
    let pairs = [(0u32, 1u32), (1, 2), (2, 3), (3, 0), (4, 5), (6, 7), (7, 6)];
    let mut edges = Vec::new();
    for (a, b) in pairs {
        edges.push((a, b));
        edges.push((b, a));
    }
    let graph = Graph::from_edges(9, &edges).unwrap();

    let (labels, report) =
        algorithms::connected_components(&graph, &EngineConfig::default()).unwrap();

    let mut components: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (v, &label) in labels.iter().enumerate() {
        components.entry(label).or_default().push(v as VertexId);
    }

    println!(
        "{} components in {} supersteps:",
        components.len(),
        report.supersteps
    );
    for (label, members) in components {
        println!("  component {label}: {members:?}");
    }
}
