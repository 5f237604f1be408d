use super::{Arc, DiskTriangulation, Endpoint, Side, Triangle};

/// Clip ears until none is left. An ear is a plain triangle whose sides are
/// `Segment(prev(v))`, `Segment(v)` and an arc `X` in counterclockwise order;
/// clipping deletes vertex `v`, turns `X` into a boundary segment and
/// renumbers the later vertices.
pub fn strip_peripheral(t: &DiskTriangulation) -> DiskTriangulation {
    strip_peripheral_counted(t).0
}

/// As [`strip_peripheral`], also returning the number of ears clipped.
pub fn strip_peripheral_counted(t: &DiskTriangulation) -> (DiskTriangulation, usize) {
    let mut cur = t.clone();
    let mut clipped = 0;
    while let Some((ti, v, x)) = find_ear(&cur) {
        cur = clip(&cur, ti, v, x);
        clipped += 1;
    }
    (cur, clipped)
}

fn find_ear(t: &DiskTriangulation) -> Option<(usize, usize, u32)> {
    if t.b < 2 {
        return None;
    }
    t.triangles.iter().enumerate().find_map(|(ti, tri)| {
        let Triangle::Plain(s) = tri else { return None };
        (0..3).find_map(|k| match (s[k], s[(k + 1) % 3], s[(k + 2) % 3]) {
            (Side::Segment(u), Side::Segment(v), Side::Arc(x)) if t.next(u) == v => Some((ti, v, x)),
            _ => None,
        })
    })
}

fn clip(t: &DiskTriangulation, ear: usize, v: usize, x: u32) -> DiskTriangulation {
    let relabel = |w: usize| if w > v { w - 1 } else { w };
    let new_segment = relabel(t.prev(v));
    let end = |e: Endpoint| match e {
        Endpoint::Boundary(w) => Endpoint::Boundary(relabel(w)),
        other => other,
    };
    let side = |s: Side| match s {
        Side::Arc(id) if id == x => Side::Segment(new_segment),
        Side::Segment(w) => Side::Segment(relabel(w)),
        other => other,
    };
    let arcs = t
        .arcs
        .iter()
        .filter(|a| a.id != x)
        .map(|a| Arc::new(a.id, end(a.ends[0]), end(a.ends[1])))
        .collect();
    let triangles = t
        .triangles
        .iter()
        .enumerate()
        .filter(|&(ti, _)| ti != ear)
        .map(|(_, tri)| match *tri {
            Triangle::Plain(s) => Triangle::Plain(s.map(side)),
            sf => sf,
        })
        .collect();
    DiskTriangulation { b: t.b - 1, arcs, triangles }
}
