//! Graph storage: dense vertex ids plus out- and in-adjacency in compressed
//! offset/target form.
//!
//! Vertices are remapped to dense `u32` ids in order of first appearance in
//! the input; the original ids are kept for reporting. Both adjacency
//! directions are materialised because pull-mode processing walks incoming
//! edges while push mode walks outgoing ones.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

/// Dense vertex identifier. Dense ids are contiguous from zero.
pub type VertexId = u32;

/// How to interpret one line of an edge-list file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Directedness {
    /// Each line is one directed edge.
    Directed,
    /// Each line is an unordered pair, stored as two directed edges.
    /// A self-loop line is stored twice like any other pair.
    Undirected,
}

#[derive(Debug)]
pub enum GraphError {
    Io {
        path: PathBuf,
        source: io::Error,
    },
    /// A line that is neither a `#` comment nor two whitespace-separated
    /// unsigned integers. `line` is 1-based and counts every line.
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    EndpointOutOfRange {
        endpoint: VertexId,
        vertex_count: usize,
    },
    TooManyVertices {
        count: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Io { path, source } => {
                write!(f, "cannot read {}: {}", path.display(), source)
            }
            GraphError::Parse { path, line, reason } => {
                write!(f, "{}:{}: {}", path.display(), line, reason)
            }
            GraphError::EndpointOutOfRange {
                endpoint,
                vertex_count,
            } => write!(
                f,
                "edge endpoint {} out of range for {} vertices",
                endpoint, vertex_count
            ),
            GraphError::TooManyVertices { count } => {
                write!(f, "{} vertices exceed the dense id space", count)
            }
        }
    }
}

impl Error for GraphError {
    fn source(&self) -> Option<&(dyn Error + 'static)> {
        match self {
            GraphError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// One adjacency direction in offset/target form: the neighbours of vertex
/// `v` are `targets[offsets[v]..offsets[v + 1]]`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub offsets: Vec<usize>,
    pub targets: Vec<VertexId>,
}

impl Adjacency {
    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }
}

/// Builds the outgoing and incoming adjacency for `edges` over a dense id
/// space of `vertex_count` vertices. Duplicate edges and self-loops are kept
/// as given; each neighbour range comes out sorted ascending.
pub fn build_adjacency(
    vertex_count: usize,
    edges: &[(VertexId, VertexId)],
) -> Result<(Adjacency, Adjacency), GraphError> {
    if vertex_count > u32::MAX as usize {
        return Err(GraphError::TooManyVertices {
            count: vertex_count,
        });
    }
    for &(src, dst) in edges {
        for endpoint in [src, dst] {
            if endpoint as usize >= vertex_count {
                return Err(GraphError::EndpointOutOfRange {
                    endpoint,
                    vertex_count,
                });
            }
        }
    }
    let out = half(vertex_count, edges, |&(src, dst)| (src, dst));
    let inc = half(vertex_count, edges, |&(src, dst)| (dst, src));
    Ok((out, inc))
}

fn half(
    vertex_count: usize,
    edges: &[(VertexId, VertexId)],
    orient: impl Fn(&(VertexId, VertexId)) -> (VertexId, VertexId),
) -> Adjacency {
    let mut offsets = vec![0usize; vertex_count + 1];
    for e in edges {
        let (src, _) = orient(e);
        offsets[src as usize + 1] += 1;
    }
    for v in 0..vertex_count {
        offsets[v + 1] += offsets[v];
    }
    let mut cursor: Vec<usize> = offsets[..vertex_count].to_vec();
    let mut targets = vec![0 as VertexId; edges.len()];
    for e in edges {
        let (src, dst) = orient(e);
        targets[cursor[src as usize]] = dst;
        cursor[src as usize] += 1;
    }
    for v in 0..vertex_count {
        targets[offsets[v]..offsets[v + 1]].sort_unstable();
    }
    Adjacency { offsets, targets }
}

/// An immutable graph over dense vertex ids with both adjacency directions.
#[derive(Clone, Debug)]
pub struct Graph {
    out: Adjacency,
    inc: Adjacency,
    original_ids: Vec<u64>,
    dense_ids: HashMap<u64, VertexId>,
}

impl Graph {
    /// Builds a graph directly from dense edges. Vertex `v`'s original id is
    /// `v` itself.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Graph, GraphError> {
        let (out, inc) = build_adjacency(vertex_count, edges)?;
        let original_ids: Vec<u64> = (0..vertex_count as u64).collect();
        let dense_ids = original_ids
            .iter()
            .enumerate()
            .map(|(dense, &orig)| (orig, dense as VertexId))
            .collect();
        Ok(Graph {
            out,
            inc,
            original_ids,
            dense_ids,
        })
    }

    /// Builds a graph from edges over arbitrary `u64` ids, remapping them to
    /// dense ids in order of first appearance (sources before destinations,
    /// line order preserved). Undirected input stores each pair in both
    /// directions.
    pub fn from_original_edges(
        pairs: &[(u64, u64)],
        directedness: Directedness,
    ) -> Result<Graph, GraphError> {
        let mut dense_ids: HashMap<u64, VertexId> = HashMap::new();
        let mut original_ids: Vec<u64> = Vec::new();
        let mut intern = |id: u64| -> Result<VertexId, GraphError> {
            if let Some(&dense) = dense_ids.get(&id) {
                return Ok(dense);
            }
            if original_ids.len() >= u32::MAX as usize {
                return Err(GraphError::TooManyVertices {
                    count: original_ids.len() + 1,
                });
            }
            let dense = original_ids.len() as VertexId;
            original_ids.push(id);
            dense_ids.insert(id, dense);
            Ok(dense)
        };
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(match directedness {
            Directedness::Directed => pairs.len(),
            Directedness::Undirected => pairs.len() * 2,
        });
        for &(a, b) in pairs {
            let (da, db) = (intern(a)?, intern(b)?);
            edges.push((da, db));
            if directedness == Directedness::Undirected {
                edges.push((db, da));
            }
        }
        let (out, inc) = build_adjacency(original_ids.len(), &edges)?;
        Ok(Graph {
            out,
            inc,
            original_ids,
            dense_ids,
        })
    }

    /// Loads a whitespace-separated edge-list file: two unsigned integer ids
    /// per line, lines starting with `#` skipped. Any other line shape is a
    /// parse error naming the 1-based line number.
    pub fn load_edge_list(
        path: impl AsRef<Path>,
        directedness: Directedness,
    ) -> Result<Graph, GraphError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| GraphError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|source| GraphError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let parse_err = |reason: String| GraphError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                reason,
            };
            let text = line.trim();
            if text.starts_with('#') {
                continue;
            }
            let mut fields = text.split_whitespace();
            let (a, b) = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(parse_err(format!(
                        "expected two whitespace-separated ids, got {:?}",
                        text
                    )))
                }
            };
            let parse_id = |field: &str| {
                field
                    .parse::<u64>()
                    .map_err(|_| parse_err(format!("invalid vertex id {:?}", field)))
            };
            pairs.push((parse_id(a)?, parse_id(b)?));
        }
        Graph::from_original_edges(&pairs, directedness)
    }

    pub fn vertex_count(&self) -> usize {
        self.original_ids.len()
    }

    /// Number of stored directed edges. Undirected input counts twice.
    pub fn edge_count(&self) -> usize {
        self.out.targets.len()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.out.neighbors(v)
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.inc.neighbors(v)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out.degree(v)
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inc.degree(v)
    }

    pub fn out_offsets(&self) -> &[usize] {
        &self.out.offsets
    }

    pub fn out_targets(&self) -> &[VertexId] {
        &self.out.targets
    }

    pub fn in_offsets(&self) -> &[usize] {
        &self.inc.offsets
    }

    pub fn in_targets(&self) -> &[VertexId] {
        &self.inc.targets
    }

    /// The id vertex `v` had in the input.
    pub fn original_id(&self, v: VertexId) -> u64 {
        self.original_ids[v as usize]
    }

    /// Original ids indexed by dense id.
    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Dense id for an original id, if that vertex exists.
    pub fn dense_id(&self, original: u64) -> Option<VertexId> {
        self.dense_ids.get(&original).copied()
    }
}
