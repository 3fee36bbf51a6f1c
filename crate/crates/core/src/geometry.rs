//! Cone geometry around an apex point.
//!
//! The plane around an apex is partitioned into `k` cones of aperture
//! `2π/k`. Cone 0 is bisected by the vertical half-line pointing up and
//! indices increase clockwise. All predicates here work on that fixed
//! frame; directions that fall on a cone-boundary ray are rejected as
//! degenerate rather than silently binned to one side.

use std::f64::consts::{FRAC_PI_2, TAU};

use thiserror::Error;

/// Absolute tolerance (radians) under which a direction counts as lying
/// on a cone-boundary ray.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-12;

/// A point in the Euclidean plane. Coordinates are expected to be finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: Point) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Index of one of the `k` cones around an apex, in `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeIndex(pub u32);

impl ConeIndex {
    /// Unit vector along the cone's bisector. Cone `i` is bisected by the
    /// direction at clockwise angle `i * 2π/k` from vertical-up, so the
    /// bisector of cone 0 is `(0, 1)` and of cone 1 (for k = 4) is `(1, 0)`.
    pub fn bisector_direction(self, k: u32) -> (f64, f64) {
        let a = f64::from(self.0) * cone_aperture(k);
        (a.sin(), a.cos())
    }
}

impl std::fmt::Display for ConeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("apex and target coincide at {0}")]
    IdenticalPoints(Point),
    #[error("target {target} lies on a cone-boundary ray of apex {apex} for k = {k}")]
    DegeneratePosition { apex: Point, target: Point, k: u32 },
}

/// Aperture `2π/k` of each cone.
pub fn cone_aperture(k: u32) -> f64 {
    assert!(k >= 2, "cone count k must be at least 2, got {k}");
    TAU / f64::from(k)
}

/// Clockwise angle in `[0, 2π)` of the direction `apex -> target`,
/// measured from the vertical-up half-line.
fn clockwise_angle_from_north(apex: Point, target: Point) -> Result<f64, GeometryError> {
    let dx = target.x - apex.x;
    let dy = target.y - apex.y;
    if dx == 0.0 && dy == 0.0 {
        return Err(GeometryError::IdenticalPoints(apex));
    }
    let a = (FRAC_PI_2 - dy.atan2(dx)).rem_euclid(TAU);
    // rem_euclid of a tiny negative value can round up to exactly 2π.
    Ok(if a >= TAU { 0.0 } else { a })
}

/// Index of the cone of `apex` whose interior contains `target`.
///
/// Uses [`DEFAULT_BOUNDARY_TOL`]; see [`cone_index_with_tol`] for a
/// configurable tolerance.
pub fn cone_index(apex: Point, target: Point, k: u32) -> Result<ConeIndex, GeometryError> {
    cone_index_with_tol(apex, target, k, DEFAULT_BOUNDARY_TOL)
}

/// Like [`cone_index`], with an explicit angular tolerance: if the
/// direction is within `tol` radians of a cone-boundary ray the position
/// is reported as degenerate.
pub fn cone_index_with_tol(
    apex: Point,
    target: Point,
    k: u32,
    tol: f64,
) -> Result<ConeIndex, GeometryError> {
    let theta = cone_aperture(k);
    let cw = clockwise_angle_from_north(apex, target)?;
    // Boundaries sit at (i + 1/2) * theta; shifting by theta/2 turns the
    // boundary test into a remainder-is-zero test.
    let shifted = cw + theta / 2.0;
    let rem = shifted.rem_euclid(theta);
    if rem.min(theta - rem) <= tol {
        return Err(GeometryError::DegeneratePosition { apex, target, k });
    }
    let index = (shifted / theta).floor() as i64;
    Ok(ConeIndex(index.rem_euclid(i64::from(k)) as u32))
}

/// Distance from `apex` to the orthogonal projection of `target` onto the
/// bisector of the cone of `apex` containing `target`.
pub fn projection_distance(apex: Point, target: Point, k: u32) -> Result<f64, GeometryError> {
    let cone = cone_index(apex, target, k)?;
    Ok(projection_onto_bisector(apex, target, cone, k))
}

/// Projection of `apex -> target` onto the bisector of `cone`. The caller
/// is responsible for `target` actually lying in that cone.
pub(crate) fn projection_onto_bisector(apex: Point, target: Point, cone: ConeIndex, k: u32) -> f64 {
    let (bx, by) = cone.bisector_direction(k);
    (target.x - apex.x) * bx + (target.y - apex.y) * by
}

/// The canonical triangle of an apex/tip pair: the cone of the apex that
/// contains the tip, cut off by the line through the tip perpendicular to
/// the cone's bisector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalTriangle {
    apex: Point,
    cone: ConeIndex,
    closing_distance: f64,
    k: u32,
}

impl CanonicalTriangle {
    pub fn new(apex: Point, tip: Point, k: u32) -> Result<Self, GeometryError> {
        let cone = cone_index(apex, tip, k)?;
        let closing_distance = projection_onto_bisector(apex, tip, cone, k);
        Ok(CanonicalTriangle {
            apex,
            cone,
            closing_distance,
            k,
        })
    }

    pub fn apex(&self) -> Point {
        self.apex
    }

    pub fn cone(&self) -> ConeIndex {
        self.cone
    }

    /// Distance from the apex to the closing line along the bisector.
    pub fn closing_distance(&self) -> f64 {
        self.closing_distance
    }

    /// Projection of `p` onto this triangle's bisector.
    pub fn projection(&self, p: Point) -> f64 {
        projection_onto_bisector(self.apex, p, self.cone, self.k)
    }

    /// Membership test. Open along the cone-boundary rays (a point on a
    /// ray is degenerate and reported as an error), closed along the
    /// closing line.
    pub fn contains(&self, p: Point) -> Result<bool, GeometryError> {
        let cone = cone_index(self.apex, p, self.k)?;
        Ok(cone == self.cone && self.projection(p) <= self.closing_distance)
    }
}

/// True iff `w` lies in the canonical triangle of `(u, v)`.
pub fn in_canonical_triangle(u: Point, v: Point, w: Point, k: u32) -> Result<bool, GeometryError> {
    CanonicalTriangle::new(u, v, k)?.contains(w)
}

/// Counterclockwise angle in `[0, 2π)` of the direction `u -> v`,
/// measured from the positive x-axis. `u` and `v` must be distinct.
pub fn angle_from_east(u: Point, v: Point) -> f64 {
    debug_assert!(
        u != v,
        "angle_from_east requires distinct points, got {u} twice"
    );
    let a = (v.y - u.y).atan2(v.x - u.x).rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}
