use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DiskTriangulation, Puncture, SurfaceError, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// No arc joins `P` and `Q`.
    I,
    /// A plain arc joins `P` and `Q`.
    II,
    /// The arc joining the punctures is the radius of a self-folded triangle
    /// whose loop is based at `loop_at`.
    III { loop_at: Puncture },
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::I => write!(f, "case I"),
            CaseTag::II => write!(f, "case II"),
            CaseTag::III { loop_at } => write!(f, "case III (loop at {loop_at})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PunctureDegrees {
    pub p: usize,
    pub q: usize,
}

/// Case and puncture degrees of a peripheral-free triangulation.
///
/// In case III the degrees are reported with the loop puncture first, so
/// `p` counts the ends at the loop's base. A single boundary point leaves
/// room for one fewer arc end at the punctures, and the bounds relax by one.
pub fn classify(t: &DiskTriangulation) -> Result<(CaseTag, PunctureDegrees), SurfaceError> {
    let joining: Vec<_> = t.arcs.iter().filter(|a| a.joins_punctures()).collect();
    if joining.len() > 1 {
        return Err(SurfaceError::TooManyPQArcs(joining.len()));
    }
    let deg_p = t.puncture_degree(Puncture::P);
    let deg_q = t.puncture_degree(Puncture::Q);
    let tight = t.b >= 2;
    let Some(gamma) = joining.first() else {
        let degrees = PunctureDegrees { p: deg_p, q: deg_q };
        if deg_p == 0 || deg_q == 0 {
            return Err(bounds(CaseTag::I, "p, q >= 1", degrees));
        }
        return Ok((CaseTag::I, degrees));
    };
    let loop_base = t.triangles.iter().find_map(|tri| match *tri {
        Triangle::SelfFolded { loop_arc, radius } if radius == gamma.id => t.arc(loop_arc).map(|l| l.ends[0]),
        _ => None,
    });
    match loop_base {
        None => {
            let degrees = PunctureDegrees { p: deg_p, q: deg_q };
            let min = if tight { 3 } else { 2 };
            if deg_p < min || deg_q < min {
                let msg = if tight { "p, q >= 3" } else { "p, q >= 2 on one boundary point" };
                return Err(bounds(CaseTag::II, msg, degrees));
            }
            Ok((CaseTag::II, degrees))
        }
        Some(base) => {
            let loop_at = match base {
                super::Endpoint::Puncture(x) => x,
                super::Endpoint::Boundary(v) => {
                    return Err(SurfaceError::Inconsistent(format!(
                        "radius {} joins P and Q but its loop sits at boundary vertex {v}",
                        gamma.id
                    )))
                }
            };
            let case = CaseTag::III { loop_at };
            let degrees = match loop_at {
                Puncture::P => PunctureDegrees { p: deg_p, q: deg_q },
                Puncture::Q => PunctureDegrees { p: deg_q, q: deg_p },
            };
            let min = if tight { 6 } else { 5 };
            if degrees.p < min || degrees.q != 1 {
                let msg = if tight { "p >= 6 and q = 1" } else { "p >= 5 and q = 1 on one boundary point" };
                return Err(bounds(case, msg, degrees));
            }
            Ok((case, degrees))
        }
    }
}

fn bounds(case: CaseTag, msg: &'static str, d: PunctureDegrees) -> SurfaceError {
    SurfaceError::DegreeBounds { case, bounds: msg, p: d.p, q: d.q }
}
