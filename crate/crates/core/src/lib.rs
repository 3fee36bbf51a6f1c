//! Construction of and local routing on ordered theta-graphs.
//!
//! An ordered theta-graph is grown by inserting points one at a time:
//! each new vertex splits the plane around itself into k equal cones and
//! connects, per cone, to the already-inserted vertex whose projection
//! onto the cone's bisector is shortest. The interesting question is
//! routing on the result using only local information, and the crate is
//! organized around that:
//!
//! - [`builder`] constructs graphs from ordered point lists and validates
//!   general position;
//! - [`engine`] walks a message across a graph while enforcing that the
//!   chosen strategy sees nothing beyond the current neighbourhood and a
//!   constant-size memory;
//! - [`routers`] holds the strategies — classic cone routing, ordered
//!   routing toward early vertices, a greedy adversary baseline, and the
//!   two-phase router "a" that always arrives;
//! - [`instances`] generates canonical, adversarial, and random inputs;
//! - [`oracles`] computes global ground truth (shortest paths,
//!   connectivity, exploration spaces) for tests and statistics;
//! - [`io`] reads and writes the points, graph, and trace file formats.

#![forbid(unsafe_code)]

pub mod builder;
pub mod engine;
pub mod geometry;
pub mod graph;
pub mod instances;
pub mod io;
pub mod oracles;
pub mod routers;

pub use engine::{run, Trace};
pub use geometry::Point;
pub use graph::{OrderedThetaGraph, VertexId};
