//! Routing toward earlier-inserted vertices through canonical triangles.

use crate::engine::{
    HopKind, LocalView, Router, RouterError, RouterStep, RoutingMemory, StepDecision, VertexRef,
};
use crate::geometry::CanonicalTriangle;
use crate::graph::VertexId;

/// One ordered step toward `target`: if an edge to `target` exists, take
/// it; otherwise move to the earlier-inserted neighbour inside the
/// canonical triangle of `(current, target)` with the smallest bisector
/// projection (ties to the smaller id).
///
/// Returns `None` when no neighbour qualifies. Degenerate directions — a
/// target or neighbour exactly on a cone boundary — disqualify the vertex
/// involved rather than aborting the step.
pub fn ordered_theta_step(view: &LocalView, target: &VertexRef) -> Option<VertexId> {
    if view.neighbour(target.id).is_some() {
        return Some(target.id);
    }
    let triangle = CanonicalTriangle::new(view.current.point, target.point, view.k).ok()?;

    let mut best: Option<(f64, VertexId)> = None;
    for n in &view.neighbours {
        if n.id >= view.current.id {
            continue;
        }
        if !triangle.contains(n.point).unwrap_or(false) {
            continue;
        }
        let proj = triangle.projection(n.point);
        let closer =
            best.is_none_or(|(bp, bid)| proj.total_cmp(&bp).then_with(|| n.id.cmp(&bid)).is_lt());
        if closer {
            best = Some((proj, n.id));
        }
    }
    best.map(|(_, id)| id)
}

/// Memoryless router that applies [`ordered_theta_step`] toward the
/// destination. Guaranteed to arrive when the destination was inserted
/// before the source; for later destinations it reports being stuck as
/// soon as no earlier-inserted neighbour qualifies.
pub struct OrderedThetaRouter;

impl Router for OrderedThetaRouter {
    fn name(&self) -> &'static str {
        "ordered-theta"
    }

    fn step(&self, view: &LocalView, memory: &RoutingMemory) -> Result<RouterStep, RouterError> {
        let decision = match ordered_theta_step(view, &view.destination) {
            Some(to) => StepDecision::Forward {
                to,
                kind: HopKind::Theta,
            },
            None => StepDecision::Stuck,
        };
        Ok(RouterStep {
            decision,
            memory: *memory,
            verifications: 0,
        })
    }
}
