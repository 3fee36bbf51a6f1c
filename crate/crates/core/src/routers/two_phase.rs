//! The two-phase local router.
//!
//! The walk first descends insertion order until it reaches the vertex
//! with no earlier neighbour — on a connected ordered theta-graph that is
//! the first vertex inserted, here called the root. It then runs a
//! depth-first exploration of the subgraph spanned by candidate edges (see
//! [`candidate_check`]), sweeping each vertex's neighbours by angle and
//! retreating along ordered steps toward the root when a vertex is
//! exhausted. Both phases need only the constant-size [`RoutingMemory`].

use crate::engine::{
    HopKind, LocalView, Phase, Router, RouterError, RouterStep, RoutingMemory, StepDecision,
    VertexRef,
};
use crate::geometry::{angle_from_east, cone_index, GeometryError};
use crate::graph::VertexId;
use crate::routers::ordered_theta_step;

/// One descent step: the smallest-id neighbour among those inserted
/// before the current vertex, or `None` when no neighbour is earlier.
pub fn a_down_step(view: &LocalView) -> Option<VertexId> {
    view.neighbours
        .iter()
        .map(|n| n.id)
        .filter(|id| *id < view.current.id)
        .min()
}

/// Whether the edge from `u` up to its neighbour `v` is an exploration
/// edge for destination order `t_id` and root `v1`: `v` must come after
/// `u` and no later than the destination, and the cone of `v` containing
/// the root must also contain `u` (trivially so when `u` is the root).
///
/// On a validated graph this holds exactly when an ordered step from `v`
/// toward `v1` lands on `u`, which makes the depth-first retreat correct.
pub fn candidate_check(
    u: &VertexRef,
    v: &VertexRef,
    t_id: VertexId,
    v1: &VertexRef,
    k: u32,
) -> Result<bool, GeometryError> {
    if !(u.id < v.id && v.id <= t_id) {
        return Ok(false);
    }
    if u.id == v1.id {
        return Ok(true);
    }
    Ok(cone_index(v.point, u.point, k)? == cone_index(v.point, v1.point, k)?)
}

/// The composed two-phase router, registered as "a".
pub struct TwoPhaseRouter;

impl Router for TwoPhaseRouter {
    fn name(&self) -> &'static str {
        "a"
    }

    fn step(&self, view: &LocalView, memory: &RoutingMemory) -> Result<RouterStep, RouterError> {
        match memory.phase {
            Phase::Down => {
                if let Some(to) = a_down_step(view) {
                    return Ok(RouterStep {
                        decision: StepDecision::Forward {
                            to,
                            kind: HopKind::Down,
                        },
                        memory: *memory,
                        verifications: 0,
                    });
                }
                // No earlier neighbour: this vertex is the root. Switch
                // phases and start exploring without spending a hop.
                let up = RoutingMemory {
                    phase: Phase::Up,
                    v1: Some(view.current),
                    prev: None,
                    state: true,
                };
                explore(view, up)
            }
            Phase::Up => explore(view, *memory),
        }
    }
}

/// One exploration step: sweep the neighbours counterclockwise — from due
/// east if `memory.state` is set, strictly past the neighbour we just
/// retreated from otherwise — and move to the first exploration candidate.
/// An exhausted sweep retreats one ordered step toward the root.
fn explore(view: &LocalView, memory: RoutingMemory) -> Result<RouterStep, RouterError> {
    let v1 = memory.v1.expect("exploration runs with the root on record");
    let t_id = view.destination.id;

    let resume_after = if memory.state {
        None
    } else {
        let prev = memory
            .prev
            .expect("a resumed sweep records where it left off");
        Some(angle_from_east(view.current.point, prev.point))
    };

    let mut verifications = 0;
    for n in &view.neighbours {
        if let Some(limit) = resume_after {
            if n.angle <= limit {
                continue;
            }
        }
        verifications += 1;
        let cand = VertexRef {
            id: n.id,
            point: n.point,
        };
        if candidate_check(&view.current, &cand, t_id, &v1, view.k)? {
            return Ok(RouterStep {
                decision: StepDecision::Forward {
                    to: n.id,
                    kind: HopKind::Explore,
                },
                memory: RoutingMemory {
                    state: true,
                    ..memory
                },
                verifications,
            });
        }
    }

    // Sweep exhausted. Retreating from the root would mean the whole
    // exploration space was searched without meeting the destination,
    // which cannot happen on a validated graph.
    if view.current.id == v1.id {
        return Err(RouterError::InternalStuck {
            at: view.current.id,
        });
    }
    match ordered_theta_step(view, &v1) {
        Some(to) => Ok(RouterStep {
            decision: StepDecision::Forward {
                to,
                kind: HopKind::Backtrack,
            },
            memory: RoutingMemory {
                prev: Some(view.current),
                state: false,
                ..memory
            },
            verifications,
        }),
        None => Err(RouterError::InternalStuck {
            at: view.current.id,
        }),
    }
}
