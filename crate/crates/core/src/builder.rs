//! Incremental construction of ordered theta-graphs.
//!
//! Points are inserted in the given order. Each new vertex looks at every
//! cone around itself: if a cone already contains earlier vertices, one
//! edge is added to the earlier vertex whose orthogonal projection onto
//! the cone's bisector is closest to the new vertex.
//!
//! Inputs are required to be in general position: no earlier vertex on a
//! cone-boundary ray of a later one, no tie for any per-cone projection
//! minimum, and no two neighbours of one vertex at the same angle. Inputs
//! that violate this are rejected, never perturbed.

use thiserror::Error;

use crate::geometry::{
    angle_from_east, cone_index, projection_onto_bisector, ConeIndex, GeometryError, Point,
};
use crate::graph::{NeighbourEntry, OrderedThetaGraph, VertexId};

/// Absolute tolerance on projection distances under which two earlier
/// vertices count as tied for a per-cone minimum.
pub const PROJECTION_TIE_TOL: f64 = 1e-12;

/// Absolute tolerance (radians) under which two neighbours of one vertex
/// count as lying at the same angle.
pub const ANGLE_TIE_TOL: f64 = 1e-12;

/// One general-position violation found in an input point sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A coordinate is NaN or infinite.
    NonFiniteCoordinate { vertex: VertexId },
    /// Two input points coincide exactly.
    DuplicatePoint { first: VertexId, second: VertexId },
    /// An earlier vertex lies on a cone-boundary ray of a later vertex.
    BoundaryAlignment { apex: VertexId, earlier: VertexId },
    /// Two or more earlier vertices tie for the projection minimum of one
    /// cone of the vertex being inserted.
    ProjectionTie {
        apex: VertexId,
        cone: ConeIndex,
        tied: Vec<VertexId>,
    },
    /// Two neighbours of one vertex sit at the same angle from it.
    EqualNeighbourAngles {
        vertex: VertexId,
        first: VertexId,
        second: VertexId,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonFiniteCoordinate { vertex } => {
                write!(f, "vertex {vertex} has a non-finite coordinate")
            }
            Violation::DuplicatePoint { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            Violation::BoundaryAlignment { apex, earlier } => write!(
                f,
                "vertex {earlier} lies on a cone-boundary ray of vertex {apex}"
            ),
            Violation::ProjectionTie { apex, cone, tied } => {
                let ids: Vec<String> = tied.iter().map(|v| v.to_string()).collect();
                write!(
                    f,
                    "vertices {} tie for the projection minimum in cone {cone} of vertex {apex}",
                    ids.join(", ")
                )
            }
            Violation::EqualNeighbourAngles {
                vertex,
                first,
                second,
            } => write!(
                f,
                "neighbours {first} and {second} of vertex {vertex} share an angle"
            ),
        }
    }
}

/// Outcome of [`validate_general_position`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "no violations");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("input must contain at least one point")]
    Empty,
    #[error("duplicate point: vertices {first} and {second} coincide")]
    DuplicatePoint { first: VertexId, second: VertexId },
    #[error("input is not in general position: {report}")]
    DegenerateInput { report: ValidationReport },
}

/// Shared core of validation and construction: runs the full insertion
/// process, recording the adjacency it would create along with every
/// general-position violation encountered.
fn construct(points: &[Point], k: u32) -> (Vec<Vec<NeighbourEntry>>, Vec<Violation>) {
    let n = points.len();
    let mut violations = Vec::new();

    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            violations.push(Violation::NonFiniteCoordinate {
                vertex: VertexId(i + 1),
            });
        }
        for (j, q) in points.iter().enumerate().take(i) {
            if p == q {
                violations.push(Violation::DuplicatePoint {
                    first: VertexId(j + 1),
                    second: VertexId(i + 1),
                });
            }
        }
    }

    let mut adjacency: Vec<Vec<NeighbourEntry>> = vec![Vec::new(); n];
    // (projection distance, earlier id), bucketed per cone of the vertex
    // being inserted; reused across insertions.
    let mut buckets: Vec<Vec<(f64, VertexId)>> = vec![Vec::new(); k as usize];

    for i in 0..n {
        let apex = points[i];
        for bucket in &mut buckets {
            bucket.clear();
        }
        for (j, &earlier) in points.iter().enumerate().take(i) {
            match cone_index(apex, earlier, k) {
                Ok(cone) => {
                    let d = projection_onto_bisector(apex, earlier, cone, k);
                    buckets[cone.0 as usize].push((d, VertexId(j + 1)));
                }
                Err(GeometryError::DegeneratePosition { .. }) => {
                    violations.push(Violation::BoundaryAlignment {
                        apex: VertexId(i + 1),
                        earlier: VertexId(j + 1),
                    });
                }
                // Coincident points were already reported above.
                Err(GeometryError::IdenticalPoints(_)) => {}
            }
        }
        for (c, bucket) in buckets.iter().enumerate() {
            let Some(&(best, _)) = bucket
                .iter()
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .as_ref()
            else {
                continue;
            };
            let mut tied: Vec<VertexId> = bucket
                .iter()
                .filter(|(d, _)| (d - best).abs() <= PROJECTION_TIE_TOL)
                .map(|&(_, id)| id)
                .collect();
            tied.sort();
            if tied.len() > 1 {
                violations.push(Violation::ProjectionTie {
                    apex: VertexId(i + 1),
                    cone: ConeIndex(c as u32),
                    tied: tied.clone(),
                });
            }
            let target = tied[0];
            let u = VertexId(i + 1);
            adjacency[i].push(NeighbourEntry {
                id: target,
                angle: angle_from_east(apex, points[target.0 - 1]),
            });
            adjacency[target.0 - 1].push(NeighbourEntry {
                id: u,
                angle: angle_from_east(points[target.0 - 1], apex),
            });
        }
    }

    for list in &mut adjacency {
        list.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.id.cmp(&b.id)));
    }
    for (i, list) in adjacency.iter().enumerate() {
        for pair in list.windows(2) {
            if (pair[1].angle - pair[0].angle).abs() <= ANGLE_TIE_TOL {
                violations.push(Violation::EqualNeighbourAngles {
                    vertex: VertexId(i + 1),
                    first: pair[0].id,
                    second: pair[1].id,
                });
            }
        }
    }

    (adjacency, violations)
}

/// Checks an input point sequence for every general-position violation
/// the construction at this `k` would run into.
pub fn validate_general_position(points: &[Point], k: u32) -> ValidationReport {
    let (_, violations) = construct(points, k);
    ValidationReport { violations }
}

/// Builds the ordered theta-graph of `points` (in insertion order) with
/// `k` cones. The input must be in general position; degenerate input is
/// rejected with the full validation report.
pub fn build(points: &[Point], k: u32) -> Result<OrderedThetaGraph, BuildError> {
    if points.is_empty() {
        return Err(BuildError::Empty);
    }
    let (adjacency, violations) = construct(points, k);
    if let Some(Violation::DuplicatePoint { first, second }) = violations
        .iter()
        .find(|v| matches!(v, Violation::DuplicatePoint { .. }))
    {
        return Err(BuildError::DuplicatePoint {
            first: *first,
            second: *second,
        });
    }
    if !violations.is_empty() {
        return Err(BuildError::DegenerateInput {
            report: ValidationReport { violations },
        });
    }
    Ok(OrderedThetaGraph::from_adjacency(
        k,
        points.to_vec(),
        adjacency,
    ))
}
