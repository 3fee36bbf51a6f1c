//! On-disk formats: plain-text points files and JSON graph/trace files.
//!
//! Writers emit canonical output — vertices in insertion order, edges
//! sorted with the smaller endpoint first, a single trailing newline — so
//! a write/read/write cycle is byte-identical.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Trace;
use crate::geometry::Point;
use crate::graph::{GraphError, OrderedThetaGraph, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cone count must be at least 2, got {0}")]
    InvalidK(u32),
    #[error("expected {expected} points, found {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("coordinates must be finite, got ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("vertex ids must be 1..=n in order; entry {position} has id {id}")]
    OutOfOrderIds { position: usize, id: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Contents of a points file: the intended cone count and the points in
/// insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct PointsFile {
    pub k: u32,
    pub points: Vec<Point>,
}

/// Renders a points file: a "k n" header line followed by one "x y" line
/// per point. Coordinates use the shortest representation that parses
/// back to the same value.
pub fn format_points(k: u32, points: &[Point]) -> String {
    let mut out = format!("{} {}\n", k, points.len());
    for p in points {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

/// Parses the points-file format. Strict: the header count must match the
/// number of point lines exactly, every coordinate must be finite, and
/// blank lines are not allowed.
pub fn parse_points(text: &str) -> Result<PointsFile, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let mut parts = header.split_whitespace();
    let k: u32 = parts
        .next()
        .ok_or_else(|| syntax(1, "missing cone count"))?
        .parse()
        .map_err(|_| syntax(1, "cone count is not an integer"))?;
    let n: usize = parts
        .next()
        .ok_or_else(|| syntax(1, "missing point count"))?
        .parse()
        .map_err(|_| syntax(1, "point count is not an integer"))?;
    if parts.next().is_some() {
        return Err(syntax(1, "header has trailing tokens"));
    }
    if k < 2 {
        return Err(FormatError::InvalidK(k));
    }

    let mut points = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let mut coords = line.split_whitespace();
        let x: f64 = coords
            .next()
            .ok_or_else(|| syntax(line_no, "empty point line"))?
            .parse()
            .map_err(|_| syntax(line_no, "x coordinate is not a number"))?;
        let y: f64 = coords
            .next()
            .ok_or_else(|| syntax(line_no, "missing y coordinate"))?
            .parse()
            .map_err(|_| syntax(line_no, "y coordinate is not a number"))?;
        if coords.next().is_some() {
            return Err(syntax(line_no, "point line has trailing tokens"));
        }
        if !x.is_finite() || !y.is_finite() {
            return Err(FormatError::NonFinite { x, y });
        }
        points.push(Point::new(x, y));
    }

    if points.len() != n {
        return Err(FormatError::WrongPointCount {
            expected: n,
            found: points.len(),
        });
    }
    Ok(PointsFile { k, points })
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointsFile, FormatError> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn write_points(path: impl AsRef<Path>, k: u32, points: &[Point]) -> Result<(), FormatError> {
    fs::write(path, format_points(k, points))?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphFileVertex {
    id: usize,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    k: u32,
    vertices: Vec<GraphFileVertex>,
    edges: Vec<[usize; 2]>,
}

/// Renders a graph as canonical pretty-printed JSON.
pub fn graph_to_json(graph: &OrderedThetaGraph) -> String {
    let file = GraphFile {
        k: graph.k(),
        vertices: graph
            .vertices()
            .map(|v| GraphFileVertex {
                id: v.id.0,
                x: v.point.x,
                y: v.point.y,
            })
            .collect(),
        edges: graph.edges().iter().map(|&(a, b)| [a.0, b.0]).collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("graph serialization cannot fail");
    out.push('\n');
    out
}

/// Parses the JSON graph format and revalidates it: ids must be exactly
/// 1..=n in order, coordinates finite, and the edge list must describe a
/// well-formed graph on those vertices.
pub fn graph_from_json(text: &str) -> Result<OrderedThetaGraph, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    if file.k < 2 {
        return Err(FormatError::InvalidK(file.k));
    }
    let mut points = Vec::with_capacity(file.vertices.len());
    for (position, v) in file.vertices.iter().enumerate() {
        if v.id != position + 1 {
            return Err(FormatError::OutOfOrderIds {
                position: position + 1,
                id: v.id,
            });
        }
        if !v.x.is_finite() || !v.y.is_finite() {
            return Err(FormatError::NonFinite { x: v.x, y: v.y });
        }
        points.push(Point::new(v.x, v.y));
    }
    let edges: Vec<(VertexId, VertexId)> = file
        .edges
        .iter()
        .map(|&[a, b]| (VertexId(a), VertexId(b)))
        .collect();
    Ok(OrderedThetaGraph::from_parts(file.k, points, &edges)?)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<OrderedThetaGraph, FormatError> {
    graph_from_json(&fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, graph: &OrderedThetaGraph) -> Result<(), FormatError> {
    fs::write(path, graph_to_json(graph))?;
    Ok(())
}

/// Renders a routing trace as pretty-printed JSON.
pub fn trace_to_json(trace: &Trace) -> String {
    let mut out = serde_json::to_string_pretty(trace).expect("trace serialization cannot fail");
    out.push('\n');
    out
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<Trace, FormatError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn write_trace(path: impl AsRef<Path>, trace: &Trace) -> Result<(), FormatError> {
    fs::write(path, trace_to_json(trace))?;
    Ok(())
}
