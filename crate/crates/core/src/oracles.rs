//! Global reference computations used to check the local algorithms.
//!
//! Everything here may look at the whole graph at once — exactly what the
//! routers are forbidden from doing — so these functions serve as ground
//! truth in tests, validation, and statistics, never inside a router.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::engine::{local_view, VertexRef};
use crate::graph::{OrderedThetaGraph, VertexId};
use crate::routers::{candidate_check, ordered_theta_step};

#[derive(PartialEq)]
struct QueueEntry {
    dist: f64,
    id: VertexId,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed so the max-heap pops the smallest distance first.
        self.dist
            .total_cmp(&other.dist)
            .then_with(|| self.id.cmp(&other.id))
            .reverse()
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Euclidean-weight shortest path from `s` to `t`, or `None` when `t` is
/// unreachable. Distance ties are resolved toward smaller ids, making the
/// returned path deterministic.
pub fn dijkstra(
    graph: &OrderedThetaGraph,
    s: VertexId,
    t: VertexId,
) -> Option<(f64, Vec<VertexId>)> {
    let n = graph.vertex_count();
    let index = |id: VertexId| id.0 - 1;
    let mut dist = vec![f64::INFINITY; n];
    let mut prev: Vec<Option<VertexId>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[index(s)] = 0.0;
    heap.push(QueueEntry { dist: 0.0, id: s });

    while let Some(QueueEntry { dist: d, id: u }) = heap.pop() {
        if settled[index(u)] {
            continue;
        }
        settled[index(u)] = true;
        if u == t {
            break;
        }
        let up = graph.point(u);
        for entry in graph.neighbours(u) {
            let alt = d + up.distance(graph.point(entry.id));
            let slot = index(entry.id);
            if alt < dist[slot] {
                dist[slot] = alt;
                prev[slot] = Some(u);
                heap.push(QueueEntry {
                    dist: alt,
                    id: entry.id,
                });
            }
        }
    }

    if !dist[index(t)].is_finite() {
        return None;
    }
    let mut path = vec![t];
    let mut current = t;
    while current != s {
        current = prev[index(current)].expect("finite distance implies a predecessor chain");
        path.push(current);
    }
    path.reverse();
    Some((dist[index(t)], path))
}

/// Whether every vertex is reachable from the first one.
pub fn is_connected(graph: &OrderedThetaGraph) -> bool {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let start = graph.first_vertex().id;
    seen[start.0 - 1] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for entry in graph.neighbours(u) {
            let slot = entry.id.0 - 1;
            if !seen[slot] {
                seen[slot] = true;
                count += 1;
                queue.push_back(entry.id);
            }
        }
    }
    count == n
}

/// The set of vertices the exploration phase may visit for destination
/// order `t`: the least fixpoint containing the first vertex and closed
/// under [`candidate_check`]-accepted neighbour edges.
///
/// Panics if the graph is not in general position.
pub fn exploration_space(graph: &OrderedThetaGraph, t: VertexId) -> BTreeSet<VertexId> {
    let first = graph.first_vertex();
    let root = VertexRef {
        id: first.id,
        point: first.point,
    };
    let mut space = BTreeSet::from([root.id]);
    let mut frontier = vec![root.id];
    while let Some(u) = frontier.pop() {
        let u_ref = VertexRef {
            id: u,
            point: graph.point(u),
        };
        for entry in graph.neighbours(u) {
            if space.contains(&entry.id) {
                continue;
            }
            let cand = VertexRef {
                id: entry.id,
                point: graph.point(entry.id),
            };
            let accepted = candidate_check(&u_ref, &cand, t, &root, graph.k())
                .expect("exploration space requires a graph in general position");
            if accepted {
                space.insert(entry.id);
                frontier.push(entry.id);
            }
        }
    }
    space
}

/// The full walk of repeated ordered steps from `from` toward the first
/// vertex. Ids along the path strictly decrease until the first vertex
/// closes it.
///
/// Panics if a step gets stuck, which cannot happen on a connected graph
/// produced by the builder.
pub fn ordered_theta_path(graph: &OrderedThetaGraph, from: VertexId) -> Vec<VertexId> {
    let first = graph.first_vertex();
    let root = VertexRef {
        id: first.id,
        point: first.point,
    };
    let mut path = vec![from];
    let mut current = from;
    while current != root.id {
        let view = local_view(graph, current, root.id);
        let next = ordered_theta_step(&view, &root)
            .expect("ordered steps toward the first vertex cannot get stuck on a valid graph");
        path.push(next);
        current = next;
    }
    path
}
