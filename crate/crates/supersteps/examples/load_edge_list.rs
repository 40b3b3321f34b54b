//! Loading a graph from an edge-list file.
//!
//! The format is the usual one for published graph datasets: two integer
//! ids per line, `#` for comments. Ids can be arbitrary u64 values; the
//! loader renumbers them densely in order of first appearance and keeps the
//! mapping, so results can be reported against the original ids.
//!
//! Pass a path to load your own file, or run without arguments to see the
//! demo below.

use std::io::Write;
use std::path::PathBuf;

use supersteps::{Directedness, Graph};

const DEMO: &str = "\
# node ids are arbitrary; 9000000033 is a perfectly fine name
42 7
7 9000000033
9000000033 42
42 100
";

fn main() {
    let (path, _keep_alive) = match std::env::args_os().nth(1) {
        Some(arg) => (PathBuf::from(arg), None),
        None => {
            let mut file = tempfile::NamedTempFile::new().expect("create temp file");
            file.write_all(DEMO.as_bytes()).expect("write demo graph");
            (file.path().to_path_buf(), Some(file))
        }
    };

    let graph = match Graph::load_edge_list(&path, Directedness::Directed) {
        Ok(graph) => graph,
        Err(e) => {
            // The error names the file and, for bad lines, the line number.
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };

    println!(
        "{}: {} vertices, {} directed edges",
        path.display(),
        graph.vertex_count(),
        graph.edge_count()
    );
    let shown = graph.vertex_count().min(10);
    println!("first {shown} vertices (dense id <- original id):");
    for v in 0..shown as u32 {
        println!(
            "  {v} <- {:<12} out-degree {} in-degree {}",
            graph.original_id(v),
            graph.out_degree(v),
            graph.in_degree(v)
        );
    }
}
