//! Side-slot gluing and the corner walks around marked points.
//!
//! Corner `(t, k)` of triangle `t` sits at the end of slot `k`, between slot
//! `k` and slot `k + 1`. Stepping from a corner crosses slot `k + 1`; if that
//! side is an arc we land in the arc's other slot `(t', j)`, whose corner
//! `(t', j)` is at the same marked point. Repeating this sweeps the fan of
//! triangles around that point.

use std::collections::BTreeMap;

use super::{ArcId, DiskTriangulation, Side};

pub(crate) type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Step {
    Cross { arc: ArcId, to: Slot },
    Boundary(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum WalkError {
    /// The arc does not sit in exactly two slots.
    BadArc(ArcId),
    /// Walked more steps than there are corners.
    NoExit,
    /// The starting segment is not used by exactly one triangle.
    MissingSegment(usize),
}

pub(crate) struct Gluing {
    pub slots: Vec<[Side; 3]>,
    pub arc_slots: BTreeMap<ArcId, Vec<Slot>>,
    pub segment_slots: BTreeMap<usize, Vec<Slot>>,
}

impl Gluing {
    pub fn new(t: &DiskTriangulation) -> Gluing {
        let slots: Vec<[Side; 3]> = t.triangles.iter().map(|tri| tri.slots()).collect();
        let mut arc_slots: BTreeMap<ArcId, Vec<Slot>> = BTreeMap::new();
        let mut segment_slots: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
        for (ti, s) in slots.iter().enumerate() {
            for (k, side) in s.iter().enumerate() {
                match side {
                    Side::Arc(id) => arc_slots.entry(*id).or_default().push((ti, k)),
                    Side::Segment(i) => segment_slots.entry(*i).or_default().push((ti, k)),
                }
            }
        }
        Gluing { slots, arc_slots, segment_slots }
    }

    pub fn corner_count(&self) -> usize {
        3 * self.slots.len()
    }

    pub fn other_slot(&self, arc: ArcId, here: Slot) -> Option<Slot> {
        match self.arc_slots.get(&arc).map(|v| v.as_slice()) {
            Some(&[x, y]) if x == here => Some(y),
            Some(&[x, y]) if y == here => Some(x),
            _ => None,
        }
    }

    /// One step from corner `c`.
    pub fn step(&self, c: Slot) -> Result<Step, WalkError> {
        let (t, k) = c;
        let crossing = (t, (k + 1) % 3);
        match self.slots[t][crossing.1] {
            Side::Segment(i) => Ok(Step::Boundary(i)),
            Side::Arc(id) => self
                .other_slot(id, crossing)
                .map(|to| Step::Cross { arc: id, to })
                .ok_or(WalkError::BadArc(id)),
        }
    }

    /// Sweep the fan at boundary vertex `v`, starting at the end of
    /// `Segment(prev(v))`. Returns the visited corners, the crossed arcs in
    /// order, and the segment where the walk left.
    pub fn boundary_fan(&self, t: &DiskTriangulation, v: usize) -> Result<Fan, WalkError> {
        let start_seg = t.prev(v);
        let start = match self.segment_slots.get(&start_seg).map(|v| v.as_slice()) {
            Some(&[s]) => s,
            _ => return Err(WalkError::MissingSegment(start_seg)),
        };
        let mut corners = vec![start];
        let mut crossed = Vec::new();
        let mut here = start;
        loop {
            match self.step(here)? {
                Step::Boundary(i) => return Ok(Fan { corners, crossed, exit: i }),
                Step::Cross { arc, to } => {
                    crossed.push(arc);
                    if corners.len() > self.corner_count() {
                        return Err(WalkError::NoExit);
                    }
                    corners.push(to);
                    here = to;
                }
            }
        }
    }

    /// Close the orbit through `start`, which must avoid boundary segments.
    pub fn cycle(&self, start: Slot) -> Result<Fan, WalkError> {
        let mut corners = vec![start];
        let mut crossed = Vec::new();
        let mut here = start;
        loop {
            match self.step(here)? {
                Step::Boundary(i) => return Ok(Fan { corners, crossed, exit: i }),
                Step::Cross { arc, to } => {
                    crossed.push(arc);
                    if to == start {
                        return Ok(Fan { corners, crossed, exit: 0 });
                    }
                    if corners.len() > self.corner_count() {
                        return Err(WalkError::NoExit);
                    }
                    corners.push(to);
                    here = to;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Fan {
    pub corners: Vec<Slot>,
    pub crossed: Vec<ArcId>,
    /// Segment through which the walk left; 0 for a closed orbit.
    pub exit: usize,
}
