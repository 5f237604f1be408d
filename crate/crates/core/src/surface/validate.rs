use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::mesh::{Gluing, WalkError};
use super::{ArcId, DiskTriangulation, Endpoint, Puncture, Side, Triangle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BoundaryTooSmall(usize),
    DuplicateArcId(ArcId),
    EndpointOutOfRange { arc: ArcId, vertex: usize },
    ArcCount { expected: usize, found: usize },
    TriangleCount { expected: usize, found: usize },
    SegmentOutOfRange { triangle: usize, segment: usize },
    SegmentUse { segment: usize, uses: usize },
    UnknownArc { triangle: usize, arc: ArcId },
    ArcSlots { arc: ArcId, slots: usize },
    SelfFoldedShape { triangle: usize },
    RepeatedSide { triangle: usize },
    TriangleEndpoints { triangle: usize },
    Disconnected { triangle: usize },
    FanBroken { vertex: usize },
    FanExit { vertex: usize, exit: usize },
    FanMismatch { vertex: usize },
    PunctureOrbits { found: usize },
    PunctureMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            BoundaryTooSmall(b) => write!(f, "boundary has {b} marked points"),
            DuplicateArcId(id) => write!(f, "arc id {id} is used twice"),
            EndpointOutOfRange { arc, vertex } => write!(f, "arc {arc} ends at missing boundary vertex {vertex}"),
            ArcCount { expected, found } => write!(f, "expected {expected} arcs, found {found}"),
            TriangleCount { expected, found } => write!(f, "expected {expected} triangles, found {found}"),
            SegmentOutOfRange { triangle, segment } => {
                write!(f, "triangle {triangle} uses missing boundary segment {segment}")
            }
            SegmentUse { segment, uses } => write!(f, "boundary segment {segment} is used {uses} times"),
            UnknownArc { triangle, arc } => write!(f, "triangle {triangle} uses unknown arc {arc}"),
            ArcSlots { arc, slots } => write!(f, "arc {arc} fills {slots} triangle sides instead of 2"),
            SelfFoldedShape { triangle } => {
                write!(f, "self-folded triangle {triangle} needs a loop around the far end of its radius")
            }
            RepeatedSide { triangle } => write!(f, "plain triangle {triangle} repeats a side"),
            TriangleEndpoints { triangle } => write!(f, "sides of triangle {triangle} do not close up"),
            Disconnected { triangle } => write!(f, "triangle {triangle} is not connected to triangle 0"),
            FanBroken { vertex } => write!(f, "the triangles around boundary vertex {vertex} do not form a fan"),
            FanExit { vertex, exit } => {
                write!(f, "the fan at boundary vertex {vertex} ends at segment {exit}")
            }
            FanMismatch { vertex } => write!(f, "arcs crossed around vertex {vertex} differ from its arc ends"),
            PunctureOrbits { found } => write!(f, "found {found} interior vertices instead of 2"),
            PunctureMismatch => write!(f, "interior vertices do not match the arc ends at P and Q"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate(t: &DiskTriangulation) -> ValidationReport {
    let mut out = Vec::new();
    let b = t.b;
    if b == 0 {
        out.push(Violation::BoundaryTooSmall(b));
        return ValidationReport { violations: out };
    }

    let mut ids = BTreeSet::new();
    for a in &t.arcs {
        if !ids.insert(a.id) {
            out.push(Violation::DuplicateArcId(a.id));
        }
        for e in a.ends {
            if let Endpoint::Boundary(v) = e {
                if v == 0 || v > b {
                    out.push(Violation::EndpointOutOfRange { arc: a.id, vertex: v });
                }
            }
        }
    }
    if t.arcs.len() != b + 3 {
        out.push(Violation::ArcCount { expected: b + 3, found: t.arcs.len() });
    }
    if t.triangles.len() != b + 2 {
        out.push(Violation::TriangleCount { expected: b + 2, found: t.triangles.len() });
    }

    let arcs = t.arc_map();
    let mut structural = !out.is_empty();
    for (ti, tri) in t.triangles.iter().enumerate() {
        for side in tri.slots() {
            match side {
                Side::Segment(i) if i == 0 || i > b => {
                    out.push(Violation::SegmentOutOfRange { triangle: ti, segment: i });
                    structural = true;
                }
                Side::Arc(id) if !arcs.contains_key(&id) => {
                    out.push(Violation::UnknownArc { triangle: ti, arc: id });
                    structural = true;
                }
                _ => {}
            }
        }
    }

    let g = Gluing::new(t);
    for s in 1..=b {
        let uses = g.segment_slots.get(&s).map_or(0, |v| v.len());
        if uses != 1 {
            out.push(Violation::SegmentUse { segment: s, uses });
            structural = true;
        }
    }
    for a in &t.arcs {
        let slots = g.arc_slots.get(&a.id).map_or(0, |v| v.len());
        if slots != 2 {
            out.push(Violation::ArcSlots { arc: a.id, slots });
            structural = true;
        }
    }

    for (ti, tri) in t.triangles.iter().enumerate() {
        match *tri {
            Triangle::SelfFolded { loop_arc, radius } => {
                let ok = match (arcs.get(&loop_arc), arcs.get(&radius)) {
                    (Some(l), Some(r)) if l.is_loop() && loop_arc != radius => {
                        let base = l.ends[0];
                        let far = if r.ends[0] == base { r.ends[1] } else { r.ends[0] };
                        r.ends_at(base) == 1 && far.is_puncture()
                    }
                    _ => false,
                };
                if !ok {
                    out.push(Violation::SelfFoldedShape { triangle: ti });
                    structural = true;
                }
            }
            Triangle::Plain(sides) => {
                if sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2] {
                    out.push(Violation::RepeatedSide { triangle: ti });
                    structural = true;
                } else if !closes_up(t, &arcs, &sides) {
                    out.push(Violation::TriangleEndpoints { triangle: ti });
                    structural = true;
                }
            }
        }
    }

    if !t.triangles.is_empty() {
        if let Some(ti) = first_unreached(&g) {
            out.push(Violation::Disconnected { triangle: ti });
        }
    }

    if !structural {
        check_fans(t, &g, &mut out);
    }
    ValidationReport { violations: out }
}

fn ends_of(t: &DiskTriangulation, arcs: &BTreeMap<ArcId, super::Arc>, s: Side) -> Option<[Endpoint; 2]> {
    match s {
        Side::Segment(i) => Some([Endpoint::Boundary(i), Endpoint::Boundary(t.next(i))]),
        Side::Arc(id) => arcs.get(&id).map(|a| a.ends),
    }
}

/// Some orientation of the arc sides makes the three sides a closed walk
/// (segments keep their boundary orientation).
fn closes_up(t: &DiskTriangulation, arcs: &BTreeMap<ArcId, super::Arc>, sides: &[Side; 3]) -> bool {
    let Some(ends) = sides.iter().map(|&s| ends_of(t, arcs, s)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    (0u8..8).any(|mask| {
        let oriented: Vec<[Endpoint; 2]> = (0..3)
            .map(|k| {
                let flip = mask & (1 << k) != 0 && matches!(sides[k], Side::Arc(_));
                if flip {
                    [ends[k][1], ends[k][0]]
                } else {
                    ends[k]
                }
            })
            .collect();
        let fixed_ok = (0..3).all(|k| match sides[k] {
            Side::Segment(_) => mask & (1 << k) == 0,
            Side::Arc(_) => true,
        });
        fixed_ok && (0..3).all(|k| oriented[k][1] == oriented[(k + 1) % 3][0])
    })
}

fn first_unreached(g: &Gluing) -> Option<usize> {
    let n = g.slots.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(ti) = stack.pop() {
        for side in g.slots[ti] {
            if let Side::Arc(id) = side {
                for &(tj, _) in g.arc_slots.get(&id).into_iter().flatten() {
                    if !seen[tj] {
                        seen[tj] = true;
                        stack.push(tj);
                    }
                }
            }
        }
    }
    seen.iter().position(|&s| !s)
}

fn end_multiset(t: &DiskTriangulation, x: Endpoint) -> BTreeMap<ArcId, usize> {
    t.arcs
        .iter()
        .filter(|a| a.ends_at(x) > 0)
        .map(|a| (a.id, a.ends_at(x)))
        .collect()
}

fn crossing_multiset(crossed: &[ArcId]) -> BTreeMap<ArcId, usize> {
    let mut m = BTreeMap::new();
    for &id in crossed {
        *m.entry(id).or_insert(0) += 1;
    }
    m
}

fn check_fans(t: &DiskTriangulation, g: &Gluing, out: &mut Vec<Violation>) {
    let mut used = BTreeSet::new();
    for v in 1..=t.b {
        match g.boundary_fan(t, v) {
            Err(WalkError::BadArc(_)) | Err(WalkError::NoExit) | Err(WalkError::MissingSegment(_)) => {
                out.push(Violation::FanBroken { vertex: v });
            }
            Ok(fan) => {
                if fan.exit != v {
                    out.push(Violation::FanExit { vertex: v, exit: fan.exit });
                } else if crossing_multiset(&fan.crossed) != end_multiset(t, Endpoint::Boundary(v)) {
                    out.push(Violation::FanMismatch { vertex: v });
                }
                used.extend(fan.corners);
            }
        }
    }
    if out.iter().any(|v| matches!(v, Violation::FanBroken { .. } | Violation::FanExit { .. })) {
        return;
    }
    let mut orbits = Vec::new();
    for ti in 0..g.slots.len() {
        for k in 0..3 {
            if used.contains(&(ti, k)) {
                continue;
            }
            match g.cycle((ti, k)) {
                Ok(fan) if fan.exit == 0 => {
                    used.extend(fan.corners.iter().copied());
                    orbits.push(crossing_multiset(&fan.crossed));
                }
                _ => {
                    out.push(Violation::PunctureOrbits { found: orbits.len() });
                    return;
                }
            }
        }
    }
    if orbits.len() != 2 {
        out.push(Violation::PunctureOrbits { found: orbits.len() });
        return;
    }
    let at_p = end_multiset(t, Endpoint::Puncture(Puncture::P));
    let at_q = end_multiset(t, Endpoint::Puncture(Puncture::Q));
    let matched = (orbits[0] == at_p && orbits[1] == at_q) || (orbits[0] == at_q && orbits[1] == at_p);
    if !matched {
        out.push(Violation::PunctureMismatch);
    }
}
