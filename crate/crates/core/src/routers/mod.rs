//! Routing strategies and the registry that names them.

mod greedy;
mod ordered_theta;
mod theta;
mod two_phase;

pub use greedy::GreedyRouter;
pub use ordered_theta::{ordered_theta_step, OrderedThetaRouter};
pub use theta::{theta_step, ThetaRouter};
pub use two_phase::{a_down_step, candidate_check, TwoPhaseRouter};

use crate::engine::Router;

/// Names accepted by [`by_name`], in listing order.
pub const ROUTER_NAMES: [&str; 4] = ["a", "greedy", "ordered-theta", "theta"];

/// Looks up a routing strategy by name.
pub fn by_name(name: &str) -> Option<Box<dyn Router>> {
    match name {
        "a" => Some(Box::new(TwoPhaseRouter)),
        "greedy" => Some(Box::new(GreedyRouter)),
        "ordered-theta" => Some(Box::new(OrderedThetaRouter)),
        "theta" => Some(Box::new(ThetaRouter)),
        _ => None,
    }
}
