//! Instance generators: the canonical stuck demo, the paired adversarial
//! path instances that defeat memoryless routers, and seeded random point
//! sets for property testing.

use std::iter::once;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::builder::{build, validate_general_position};
use crate::geometry::{cone_aperture, Point};
use crate::graph::OrderedThetaGraph;
use crate::oracles::is_connected;

/// Cone count the stuck demo is designed for.
pub const STUCK_DEMO_K: u32 = 4;

/// Every generated random instance is kept in general position for this
/// whole range of cone counts, so one point set can be built at any of
/// them.
pub const RANDOM_POINTS_K_RANGE: RangeInclusive<u32> = 2..=12;

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    /// No epsilon in the halving schedule produced a pair of valid
    /// simple-path graphs. Expected when horizontal cone boundaries make
    /// the construction impossible (k = 2 mod 4); anywhere else it
    /// signals a geometry bug.
    #[error("no epsilon yields a valid instance pair for h={h}, k={k}")]
    EpsilonSearchFailed { h: u32, k: u32 },
    #[error(
        "no general-position sample of {n} points within {retry_limit} attempts (seed {seed})"
    )]
    RetryLimitExceeded {
        n: usize,
        seed: u64,
        retry_limit: u32,
    },
}

/// The canonical three-vertex instance on which classic cone routing gets
/// stuck: built at k = 4 it has edges {1,2} and {2,3}, and vertex 3 lies
/// in the northern cone of vertex 1 where vertex 1 has no neighbour, so
/// the cone rule cannot leave vertex 1 toward it.
pub fn make_stuck_demo() -> Vec<Point> {
    vec![
        Point::new(0.0, 0.0),
        Point::new(2.0, 1.0),
        Point::new(1.0, 3.0),
    ]
}

/// A pair of instances whose graphs agree around the first vertex but end
/// on opposite sides, so any fixed local rule with too little memory
/// commits identically on both and must fail on one.
#[derive(Debug, Clone, PartialEq)]
pub struct LRPair {
    /// Point list whose tail vertex sits at x = -2.
    pub left: Vec<Point>,
    /// Point list identical to `left` except the tail vertex at x = +2.
    pub right: Vec<Point>,
    pub h: u32,
    pub k: u32,
    /// The vertical perturbation the validation search settled on.
    pub epsilon: f64,
}

/// Generates the adversarial pair for depth `h` and cone count `k`.
///
/// Epsilon is chosen by search: zero first, then halvings of 1/(100h),
/// accepting the first value where both point lists pass validation and
/// both build to simple paths on 2h+3 vertices. The search fails for
/// k = 2 mod 4, where two construction points always align exactly
/// horizontally while horizontal rays are cone boundaries.
pub fn make_lr(h: u32, k: u32) -> Result<LRPair, InstanceError> {
    assert!(h >= 1, "construction depth h must be at least 1");
    let eps0 = 1.0 / (100.0 * f64::from(h));
    let schedule = once(0.0).chain((0..=60).map(move |j| eps0 / f64::powi(2.0, j)));
    for epsilon in schedule {
        if let Some(pair) = try_epsilon(h, k, epsilon) {
            return Ok(pair);
        }
    }
    Err(InstanceError::EpsilonSearchFailed { h, k })
}

fn try_epsilon(h: u32, k: u32, epsilon: f64) -> Option<LRPair> {
    let left = lr_points(h, k, epsilon, false);
    let right = lr_points(h, k, epsilon, true);
    for points in [&left, &right] {
        if !validate_general_position(points, k).is_valid() {
            return None;
        }
        let graph = build(points, k).ok()?;
        if !is_simple_path(&graph) {
            return None;
        }
    }
    Some(LRPair {
        left,
        right,
        h,
        k,
        epsilon,
    })
}

fn lr_points(h: u32, k: u32, epsilon: f64, right: bool) -> Vec<Point> {
    let hf = f64::from(h);
    let mut points = Vec::with_capacity(2 * h as usize + 3);
    points.push(Point::new(0.0, 0.0));
    for i in 1..=h {
        let level = f64::from(i);
        points.push(Point::new(level / hf, -level * epsilon));
        points.push(Point::new(-level / hf, -level * epsilon));
    }
    let tail_x = if right { 2.0 } else { -2.0 };
    points.push(Point::new(tail_x, -2.0 * hf * epsilon));
    let half = cone_aperture(k) / 2.0;
    points.push(Point::new(0.0, -2.0 / half.tan() - 3.0 * hf * epsilon));
    points
}

fn is_simple_path(graph: &OrderedThetaGraph) -> bool {
    graph.edge_count() == graph.vertex_count() - 1
        && graph.ids().all(|id| graph.degree(id) <= 2)
        && is_connected(graph)
}

/// Samples `n` points uniformly from the unit square with a seeded
/// generator, redrawing (up to `retry_limit` attempts) until the sample is
/// in general position for every k in [`RANDOM_POINTS_K_RANGE`]. The same
/// (n, seed) always yields the same list.
pub fn random_points(n: usize, seed: u64, retry_limit: u32) -> Result<Vec<Point>, InstanceError> {
    assert!(n >= 1, "n must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_limit {
        let points: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect();
        let valid = RANDOM_POINTS_K_RANGE
            .clone()
            .all(|k| validate_general_position(&points, k).is_valid());
        if valid {
            return Ok(points);
        }
    }
    Err(InstanceError::RetryLimitExceeded {
        n,
        seed,
        retry_limit,
    })
}
