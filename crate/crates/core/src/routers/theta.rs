//! Classic cone routing.

use crate::engine::{
    HopKind, LocalView, Router, RouterError, RouterStep, RoutingMemory, StepDecision,
};
use crate::geometry::{cone_index, projection_onto_bisector};
use crate::graph::VertexId;

/// One cone-routing step: if the destination is a neighbour, go there;
/// otherwise move to the neighbour with the smallest bisector projection
/// inside the cone of the current vertex that contains the destination.
///
/// Returns `None` when that cone holds no neighbour. A destination lying
/// exactly on a cone boundary leaves the rule without a well-defined cone,
/// which is also reported as `None`; neighbours on a boundary ray are
/// skipped for the same reason. Projection ties break to the smaller id.
pub fn theta_step(view: &LocalView) -> Option<VertexId> {
    if view.neighbour(view.destination.id).is_some() {
        return Some(view.destination.id);
    }
    let apex = view.current.point;
    let cone = cone_index(apex, view.destination.point, view.k).ok()?;

    let mut best: Option<(f64, VertexId)> = None;
    for n in &view.neighbours {
        if cone_index(apex, n.point, view.k) != Ok(cone) {
            continue;
        }
        let proj = projection_onto_bisector(apex, n.point, cone, view.k);
        let closer =
            best.is_none_or(|(bp, bid)| proj.total_cmp(&bp).then_with(|| n.id.cmp(&bid)).is_lt());
        if closer {
            best = Some((proj, n.id));
        }
    }
    best.map(|(_, id)| id)
}

/// Memoryless router that applies [`theta_step`] until it arrives or has no
/// neighbour in the destination's cone.
pub struct ThetaRouter;

impl Router for ThetaRouter {
    fn name(&self) -> &'static str {
        "theta"
    }

    fn step(&self, view: &LocalView, memory: &RoutingMemory) -> Result<RouterStep, RouterError> {
        let decision = match theta_step(view) {
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
