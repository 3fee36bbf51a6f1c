//! The routing engine.
//!
//! Routers in this crate are deliberately myopic: at every hop they are handed
//! a [`LocalView`] describing the current vertex, its immediate neighbours,
//! and the destination, plus a small fixed-size [`RoutingMemory`] they may
//! rewrite. They never see the rest of the graph. The engine owns the walk:
//! it builds views, invokes the router, validates that every proposed move
//! follows an actual edge, meters memory, and records a [`Trace`].

use std::collections::{btree_map, BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, Point};
use crate::graph::{OrderedThetaGraph, VertexId};

/// Upper bound on [`RoutingMemory::word_count`] that any router is allowed
/// to reach: one word for the phase, one for the sweep state, and three
/// (id, x, y) for each of the two optional vertex slots.
pub const MEMORY_WORD_BUDGET: usize = 8;

/// A vertex as seen from inside a routing step: its identifier and position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexRef {
    pub id: VertexId,
    pub point: Point,
}

/// One neighbour of the current vertex. `angle` is the direction of the edge
/// measured counterclockwise from due east, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighbourView {
    pub id: VertexId,
    pub point: Point,
    pub angle: f64,
}

/// Everything a router is allowed to look at when deciding a hop.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalView {
    pub current: VertexRef,
    pub destination: VertexRef,
    /// Neighbours of `current`, sorted by `angle` (ties broken by id).
    pub neighbours: Vec<NeighbourView>,
    /// Number of cones used when the graph was built.
    pub k: u32,
}

impl LocalView {
    /// Looks up a neighbour of the current vertex by id.
    pub fn neighbour(&self, id: VertexId) -> Option<&NeighbourView> {
        self.neighbours.iter().find(|n| n.id == id)
    }
}

/// Which of the two phases a two-phase walk is in. Single-phase routers
/// simply stay in [`Phase::Down`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Down,
    Up,
}

/// The constant-size state a router may carry between hops.
///
/// Two vertex slots is all the working set any router here needs: `v1` pins
/// the vertex where the second phase began and `prev` remembers where the
/// walk just came from so an interrupted neighbourhood sweep can resume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutingMemory {
    pub phase: Phase,
    pub v1: Option<VertexRef>,
    pub prev: Option<VertexRef>,
    /// Sweep flag: `true` when the next exploration sweep should start from
    /// scratch, `false` when it must resume past `prev`.
    pub state: bool,
}

impl RoutingMemory {
    /// Memory contents at the start of every walk.
    pub fn initial() -> Self {
        RoutingMemory {
            phase: Phase::Down,
            v1: None,
            prev: None,
            state: true,
        }
    }

    /// Number of machine words needed to store the current contents: phase
    /// and sweep flag cost one word each, and each occupied vertex slot
    /// costs three (id, x, y).
    pub fn word_count(&self) -> usize {
        2 + 3 * usize::from(self.v1.is_some()) + 3 * usize::from(self.prev.is_some())
    }
}

/// How a hop was chosen, recorded for traces and rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopKind {
    /// Descending hop toward smaller insertion ids.
    Down,
    /// Exploration hop into a candidate subtree.
    Explore,
    /// Retreat hop back toward the exploration root.
    Backtrack,
    /// Cone-directed hop toward the destination.
    Theta,
}

/// A single traversed edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub from: VertexId,
    pub to: VertexId,
    pub kind: HopKind,
}

/// Why a walk ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteOutcome {
    Arrived,
    Stuck,
    BudgetExhausted,
}

/// Work accounting for a finished walk.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    /// Edges traversed.
    pub hops: usize,
    /// Neighbours examined during exploration sweeps.
    pub candidate_verifications: usize,
}

/// Complete record of one routing attempt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub source: VertexId,
    pub target: VertexId,
    pub result: RouteOutcome,
    pub hops: Vec<Hop>,
    pub counters: Counters,
    /// Largest [`RoutingMemory::word_count`] observed during the walk.
    /// Runtime diagnostic only, so it is not part of the serialized form.
    #[serde(skip)]
    pub peak_memory_words: usize,
}

impl Trace {
    /// The vertex where the walk ended.
    pub fn final_vertex(&self) -> VertexId {
        self.hops.last().map_or(self.source, |hop| hop.to)
    }
}

/// A router's answer for one step.
#[derive(Debug, Clone, PartialEq)]
pub enum StepDecision {
    /// Traverse the edge to `to`. The engine rejects the move if no such
    /// edge exists.
    Forward { to: VertexId, kind: HopKind },
    /// Give up: the local rule has no admissible move.
    Stuck,
}

/// Outcome of a single router invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RouterStep {
    pub decision: StepDecision,
    /// Replacement memory contents for the next hop.
    pub memory: RoutingMemory,
    /// Neighbours this step examined as exploration candidates.
    pub verifications: usize,
}

/// Errors a router may raise from inside a step.
#[derive(Debug, Error, PartialEq)]
pub enum RouterError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// The router reached a state its own invariants say is impossible.
    #[error("router has no admissible move at vertex {at} despite its progress guarantee")]
    InternalStuck { at: VertexId },
}

/// Errors raised by [`run`].
#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("vertex {id} is not in the graph")]
    UnknownVertex { id: VertexId },
    #[error("router proposed moving from {from} to {to}, but no such edge exists")]
    IllegalMove { from: VertexId, to: VertexId },
    #[error(transparent)]
    Router(#[from] RouterError),
}

/// A local routing strategy.
///
/// Implementations must be memoryless apart from the [`RoutingMemory`] they
/// are handed: `step` may only consult `view` and `memory`. The engine
/// enforces the edge discipline, so a buggy strategy cannot teleport.
pub trait Router {
    /// Registry name of this strategy.
    fn name(&self) -> &'static str;

    /// Memory contents at the start of a walk.
    fn initial_memory(&self) -> RoutingMemory {
        RoutingMemory::initial()
    }

    /// Decides the next hop from the vertex described by `view`.
    fn step(&self, view: &LocalView, memory: &RoutingMemory) -> Result<RouterStep, RouterError>;
}

/// Assembles the local view a router receives at `current`.
///
/// Panics if either vertex id is not in the graph.
pub fn local_view(
    graph: &OrderedThetaGraph,
    current: VertexId,
    destination: VertexId,
) -> LocalView {
    let neighbours = graph
        .neighbours(current)
        .iter()
        .map(|entry| NeighbourView {
            id: entry.id,
            point: graph.point(entry.id),
            angle: entry.angle,
        })
        .collect();
    LocalView {
        current: VertexRef {
            id: current,
            point: graph.point(current),
        },
        destination: VertexRef {
            id: destination,
            point: graph.point(destination),
        },
        neighbours,
        k: graph.k(),
    }
}

/// Walks `router` across `graph` from `source` toward `target`, spending at
/// most `budget` hops.
///
/// The engine stops as soon as the walk reaches `target` (zero hops if
/// `source == target`), the router reports [`StepDecision::Stuck`], or the
/// hop budget runs out. A proposed move that is not an edge of the graph
/// aborts the walk with [`EngineError::IllegalMove`].
pub fn run(
    graph: &OrderedThetaGraph,
    router: &dyn Router,
    source: VertexId,
    target: VertexId,
    budget: usize,
) -> Result<Trace, EngineError> {
    if !graph.contains(source) {
        return Err(EngineError::UnknownVertex { id: source });
    }
    if !graph.contains(target) {
        return Err(EngineError::UnknownVertex { id: target });
    }

    let mut memory = router.initial_memory();
    let mut counters = Counters::default();
    let mut hops = Vec::new();
    let mut peak = memory.word_count();
    let mut current = source;

    let result = loop {
        if current == target {
            break RouteOutcome::Arrived;
        }
        if counters.hops >= budget {
            break RouteOutcome::BudgetExhausted;
        }

        let view = local_view(graph, current, target);
        let step = router.step(&view, &memory)?;
        counters.candidate_verifications += step.verifications;
        peak = peak.max(step.memory.word_count());
        memory = step.memory;
        debug_assert_eq!(
            memory.phase == Phase::Up,
            memory.v1.is_some(),
            "the exploration root must be recorded exactly while in the second phase",
        );

        match step.decision {
            StepDecision::Stuck => break RouteOutcome::Stuck,
            StepDecision::Forward { to, kind } => {
                if !graph.has_edge(current, to) {
                    return Err(EngineError::IllegalMove { from: current, to });
                }
                hops.push(Hop {
                    from: current,
                    to,
                    kind,
                });
                counters.hops += 1;
                current = to;
            }
        }
    };

    Ok(Trace {
        source,
        target,
        result,
        hops,
        counters,
        peak_memory_words: peak,
    })
}

/// An induced subgraph, in canonical form: both lists sorted ascending and
/// every edge stored with its smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// The subgraph induced by all vertices within `h` hops of `centre`.
///
/// Panics if `centre` is not in the graph. `h = 0` yields the single vertex
/// and no edges.
pub fn h_neighbourhood(graph: &OrderedThetaGraph, centre: VertexId, h: usize) -> Subgraph {
    assert!(
        graph.contains(centre),
        "vertex {centre} is not in the graph"
    );
    let mut dist: BTreeMap<VertexId, usize> = BTreeMap::new();
    dist.insert(centre, 0);
    let mut queue = VecDeque::from([centre]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        if du == h {
            continue;
        }
        for entry in graph.neighbours(u) {
            if let btree_map::Entry::Vacant(slot) = dist.entry(entry.id) {
                slot.insert(du + 1);
                queue.push_back(entry.id);
            }
        }
    }

    let vertices: Vec<VertexId> = dist.keys().copied().collect();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for &u in &vertices {
        for entry in graph.neighbours(u) {
            if u < entry.id && dist.contains_key(&entry.id) {
                edges.push((u, entry.id));
            }
        }
    }
    edges.sort_unstable();
    Subgraph { vertices, edges }
}

/// Whether two induced subgraphs are identical as labelled graphs.
pub fn views_equal(a: &Subgraph, b: &Subgraph) -> bool {
    a == b
}
