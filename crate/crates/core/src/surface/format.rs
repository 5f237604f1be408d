//! JSON file format for triangulations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Arc, ArcId, DiskTriangulation, Endpoint, Puncture, Side, Triangle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed triangulation file: {0}")]
    Json(String),
    #[error("segment [{0},{1}] does not join consecutive boundary points")]
    BadSegment(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub boundary_points: usize,
    pub arcs: Vec<ArcEntry>,
    pub triangles: Vec<TriangleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcEntry {
    pub id: ArcId,
    pub ends: [EndpointEntry; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum EndpointEntry {
    Boundary(usize),
    Puncture(Puncture),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SideEntry {
    Arc(ArcId),
    Segment([usize; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TriangleEntry {
    Plain(PlainEntry),
    SelfFolded(FoldedEntry),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainEntry {
    pub sides: [SideEntry; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldedEntry {
    pub selffolded: LoopRadius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopRadius {
    #[serde(rename = "loop")]
    pub loop_arc: ArcId,
    pub radius: ArcId,
}

impl TriangulationFile {
    pub fn into_triangulation(self) -> Result<DiskTriangulation, FormatError> {
        let b = self.boundary_points;
        let end = |e: EndpointEntry| match e {
            EndpointEntry::Boundary(i) => Endpoint::Boundary(i),
            EndpointEntry::Puncture(x) => Endpoint::Puncture(x),
        };
        let arcs = self.arcs.iter().map(|a| Arc::new(a.id, end(a.ends[0]), end(a.ends[1]))).collect();
        let side = |s: SideEntry| match s {
            SideEntry::Arc(id) => Ok(Side::Arc(id)),
            SideEntry::Segment([i, j]) if b > 0 && j == i % b + 1 => Ok(Side::Segment(i)),
            SideEntry::Segment([i, j]) => Err(FormatError::BadSegment(i, j)),
        };
        let triangles = self
            .triangles
            .iter()
            .map(|t| match t {
                TriangleEntry::Plain(p) => {
                    Ok(Triangle::Plain([side(p.sides[0])?, side(p.sides[1])?, side(p.sides[2])?]))
                }
                TriangleEntry::SelfFolded(f) => Ok(Triangle::SelfFolded {
                    loop_arc: f.selffolded.loop_arc,
                    radius: f.selffolded.radius,
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DiskTriangulation::new(b, arcs, triangles))
    }

    pub fn from_triangulation(t: &DiskTriangulation) -> TriangulationFile {
        let end = |e: Endpoint| match e {
            Endpoint::Boundary(i) => EndpointEntry::Boundary(i),
            Endpoint::Puncture(x) => EndpointEntry::Puncture(x),
        };
        let side = |s: Side| match s {
            Side::Arc(id) => SideEntry::Arc(id),
            Side::Segment(i) => SideEntry::Segment([i, t.next(i)]),
        };
        TriangulationFile {
            boundary_points: t.b,
            arcs: t.arcs.iter().map(|a| ArcEntry { id: a.id, ends: a.ends.map(end) }).collect(),
            triangles: t
                .triangles
                .iter()
                .map(|tri| match *tri {
                    Triangle::Plain(s) => TriangleEntry::Plain(PlainEntry { sides: s.map(side) }),
                    Triangle::SelfFolded { loop_arc, radius } => {
                        TriangleEntry::SelfFolded(FoldedEntry { selffolded: LoopRadius { loop_arc, radius } })
                    }
                })
                .collect(),
        }
    }
}
