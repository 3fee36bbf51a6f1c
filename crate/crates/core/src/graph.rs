//! The ordered theta-graph data structure.
//!
//! Vertices are identified by their 1-based insertion order; adjacency
//! lists are kept sorted counterclockwise by the angle from the owning
//! vertex, which is the order local routing sweeps them in.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{angle_from_east, Point};

/// 1-based insertion order of a vertex; doubles as its identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub point: Point,
}

/// One adjacency entry of a vertex: the neighbour's id and the
/// counterclockwise angle from east of the direction owner -> neighbour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighbourEntry {
    pub id: VertexId,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    Empty,
    #[error("vertex id {id} is out of range 1..={n}")]
    InvalidVertexId { id: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge between {0} and {1} joins coincident points")]
    CoincidentEndpoints(VertexId, VertexId),
}

/// An ordered theta-graph: points in insertion order plus the adjacency
/// produced by the cone construction (or loaded from a file).
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedThetaGraph {
    k: u32,
    points: Vec<Point>,
    adjacency: Vec<Vec<NeighbourEntry>>,
}

impl OrderedThetaGraph {
    /// Internal constructor used by the builder; `adjacency` must already
    /// be sorted counterclockwise per vertex.
    pub(crate) fn from_adjacency(
        k: u32,
        points: Vec<Point>,
        adjacency: Vec<Vec<NeighbourEntry>>,
    ) -> Self {
        debug_assert_eq!(points.len(), adjacency.len());
        OrderedThetaGraph {
            k,
            points,
            adjacency,
        }
    }

    /// Assembles a graph from an explicit vertex and edge list without
    /// running the cone construction. Used when reading graph files and
    /// for hand-made test fixtures; no general-position or structural
    /// validation is performed beyond basic edge sanity.
    pub fn from_parts(
        k: u32,
        points: Vec<Point>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        if points.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = points.len();
        let check = |id: VertexId| {
            if id.0 >= 1 && id.0 <= n {
                Ok(())
            } else {
                Err(GraphError::InvalidVertexId { id: id.0, n })
            }
        };
        let mut adjacency: Vec<Vec<NeighbourEntry>> = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in edges {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            let (pa, pb) = (points[a.0 - 1], points[b.0 - 1]);
            if pa == pb {
                return Err(GraphError::CoincidentEndpoints(key.0, key.1));
            }
            adjacency[a.0 - 1].push(NeighbourEntry {
                id: b,
                angle: angle_from_east(pa, pb),
            });
            adjacency[b.0 - 1].push(NeighbourEntry {
                id: a,
                angle: angle_from_east(pb, pa),
            });
        }
        for list in &mut adjacency {
            list.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.id.cmp(&b.id)));
        }
        Ok(OrderedThetaGraph {
            k,
            points,
            adjacency,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, id: VertexId) -> bool {
        id.0 >= 1 && id.0 <= self.points.len()
    }

    /// The vertex with the given id. Panics if the id is out of range.
    pub fn vertex(&self, id: VertexId) -> Vertex {
        Vertex {
            id,
            point: self.points[id.0 - 1],
        }
    }

    pub fn point(&self, id: VertexId) -> Point {
        self.points[id.0 - 1]
    }

    /// The first-inserted vertex.
    pub fn first_vertex(&self) -> Vertex {
        self.vertex(VertexId(1))
    }

    /// Adjacency of `id`, sorted counterclockwise by angle from east.
    /// Panics if the id is out of range.
    pub fn neighbours(&self, id: VertexId) -> &[NeighbourEntry] {
        &self.adjacency[id.0 - 1]
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.adjacency[id.0 - 1].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.contains(a) && self.adjacency[a.0 - 1].iter().any(|e| e.id == b)
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.points.len()).map(VertexId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.ids().map(|id| self.vertex(id))
    }

    /// All edges as `(a, b)` pairs with `a < b`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for id in self.ids() {
            for entry in self.neighbours(id) {
                if id < entry.id {
                    out.push((id, entry.id));
                }
            }
        }
        out.sort();
        out
    }
}
