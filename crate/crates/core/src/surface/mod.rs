//! Triangulations of the disk with two punctures `P` and `Q`.
//!
//! Boundary marked points are `1..=b` in counterclockwise order and
//! `Segment(i)` is the boundary edge from `i` to `next(i)`. Plain triangles
//! list their sides counterclockwise. A self-folded triangle is stored as its
//! loop and radius; internally it behaves like the plain triangle with sides
//! `[loop, radius, radius]`.

mod classify;
mod format;
mod generate;
mod mesh;
mod quasi;
mod strings;
mod strip;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fence::FenceError;

pub use classify::{classify, CaseTag, PunctureDegrees};
pub use format::{FormatError, TriangulationFile};
pub use generate::{add_ears, random_triangulation, GenCase, GenError, GenParams};
pub use quasi::{boundary_quiddity, loop_review_vertices, quasi_simple_digraph};
pub use strings::{a_value, band_word, pq_string};
pub use strip::{strip_peripheral, strip_peripheral_counted};
pub use validate::{validate, ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Puncture {
    P,
    Q,
}

impl Puncture {
    pub fn other(self) -> Puncture {
        match self {
            Puncture::P => Puncture::Q,
            Puncture::Q => Puncture::P,
        }
    }
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Puncture::P => write!(f, "P"),
            Puncture::Q => write!(f, "Q"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Boundary(usize),
    Puncture(Puncture),
}

impl Endpoint {
    pub fn is_puncture(self) -> bool {
        matches!(self, Endpoint::Puncture(_))
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Boundary(i) => write!(f, "{i}"),
            Endpoint::Puncture(x) => write!(f, "{x}"),
        }
    }
}

pub type ArcId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: ArcId,
    pub ends: [Endpoint; 2],
}

impl Arc {
    pub fn new(id: ArcId, a: Endpoint, b: Endpoint) -> Self {
        Arc { id, ends: [a, b] }
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// Number of ends at `x` (a loop based at `x` gives 2).
    pub fn ends_at(&self, x: Endpoint) -> usize {
        self.ends.iter().filter(|&&e| e == x).count()
    }

    pub fn touches_puncture(&self) -> bool {
        self.ends.iter().any(|e| e.is_puncture())
    }

    pub fn joins_punctures(&self) -> bool {
        let [a, b] = self.ends;
        a.is_puncture() && b.is_puncture() && a != b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Arc(ArcId),
    /// The boundary edge from `i` to `next(i)`.
    Segment(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Triangle {
    Plain([Side; 3]),
    SelfFolded { loop_arc: ArcId, radius: ArcId },
}

impl Triangle {
    /// The three side slots in counterclockwise order.
    pub fn slots(&self) -> [Side; 3] {
        match *self {
            Triangle::Plain(s) => s,
            Triangle::SelfFolded { loop_arc, radius } => [Side::Arc(loop_arc), Side::Arc(radius), Side::Arc(radius)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskTriangulation {
    pub b: usize,
    pub arcs: Vec<Arc>,
    pub triangles: Vec<Triangle>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("triangulation is invalid: {0}")]
    Invalid(ValidationReport),
    #[error("{case} needs {bounds}, found p={p}, q={q}")]
    DegreeBounds { case: CaseTag, bounds: &'static str, p: usize, q: usize },
    #[error("found {0} arcs joining P and Q; at most one is possible")]
    TooManyPQArcs(usize),
    #[error("case I strip is malformed: {0}")]
    MalformedCaseI(String),
    #[error("inconsistent triangulation: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Fence(#[from] FenceError),
}

impl DiskTriangulation {
    pub fn new(b: usize, arcs: Vec<Arc>, triangles: Vec<Triangle>) -> Self {
        DiskTriangulation { b, arcs, triangles }
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.id == id)
    }

    pub fn arc_map(&self) -> BTreeMap<ArcId, Arc> {
        self.arcs.iter().map(|a| (a.id, *a)).collect()
    }

    pub fn next(&self, i: usize) -> usize {
        i % self.b.max(1) + 1
    }

    pub fn prev(&self, i: usize) -> usize {
        if i == 1 {
            self.b
        } else {
            i - 1
        }
    }

    /// Arc-ends at `x`, loops counted twice.
    pub fn degree(&self, x: Endpoint) -> usize {
        self.arcs.iter().map(|a| a.ends_at(x)).sum()
    }

    pub fn puncture_degree(&self, x: Puncture) -> usize {
        self.degree(Endpoint::Puncture(x))
    }

    /// Exchange the names of the two punctures.
    pub fn swap_punctures(&self) -> DiskTriangulation {
        let swap = |e: Endpoint| match e {
            Endpoint::Puncture(x) => Endpoint::Puncture(x.other()),
            other => other,
        };
        let arcs = self.arcs.iter().map(|a| Arc::new(a.id, swap(a.ends[0]), swap(a.ends[1]))).collect();
        DiskTriangulation { b: self.b, arcs, triangles: self.triangles.clone() }
    }

    /// Rename boundary vertex `i` to `i + k` (mod `b`).
    pub fn rotate_labels(&self, k: usize) -> DiskTriangulation {
        let b = self.b;
        let shift = |i: usize| (i - 1 + k) % b + 1;
        let end = |e: Endpoint| match e {
            Endpoint::Boundary(i) => Endpoint::Boundary(shift(i)),
            other => other,
        };
        let side = |s: Side| match s {
            Side::Segment(i) => Side::Segment(shift(i)),
            other => other,
        };
        let arcs = self.arcs.iter().map(|a| Arc::new(a.id, end(a.ends[0]), end(a.ends[1]))).collect();
        let triangles = self
            .triangles
            .iter()
            .map(|t| match *t {
                Triangle::Plain(s) => Triangle::Plain(s.map(side)),
                sf => sf,
            })
            .collect();
        DiskTriangulation { b, arcs, triangles }
    }

    pub fn from_json(text: &str) -> Result<DiskTriangulation, FormatError> {
        let file: TriangulationFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        file.into_triangulation()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TriangulationFile::from_triangulation(self)).expect("file format serializes")
    }
}
