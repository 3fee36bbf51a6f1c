//! Straight-line greedy routing.

use crate::engine::{
    HopKind, LocalView, Router, RouterError, RouterStep, RoutingMemory, StepDecision,
};

/// Memoryless router that always moves to the neighbour closest (in
/// Euclidean distance) to the destination, breaking ties toward the
/// smaller id. It happily moves away from the destination when every
/// neighbour does, so on adversarial instances it oscillates until the
/// hop budget runs out.
pub struct GreedyRouter;

impl Router for GreedyRouter {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn step(&self, view: &LocalView, memory: &RoutingMemory) -> Result<RouterStep, RouterError> {
        let target = view.destination.point;
        let closest = view.neighbours.iter().min_by(|a, b| {
            a.point
                .distance(target)
                .total_cmp(&b.point.distance(target))
                .then_with(|| a.id.cmp(&b.id))
        });
        let decision = match closest {
            Some(n) => StepDecision::Forward {
                to: n.id,
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
