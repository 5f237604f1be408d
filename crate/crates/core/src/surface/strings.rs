use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::mesh::{Gluing, Slot};
use super::{classify, ArcId, CaseTag, DiskTriangulation, Endpoint, Puncture, Side, SurfaceError};
use crate::fence::{ideal_count, CyclicWord, FenceWord, Letter};

/// String of the arc from `P` to `Q`; `None` when that arc is in the
/// triangulation (cases II and III).
///
/// In case I the arcs without puncture ends are exactly the arcs crossed on
/// the way from `P` to `Q`. They must chain the triangles they bound into a
/// single path from a triangle at `P` to a triangle at `Q`; each inner
/// triangle contributes `Down` when the exit side follows the entry side
/// counterclockwise and `Up` otherwise.
pub fn pq_string(t: &DiskTriangulation) -> Result<Option<FenceWord>, SurfaceError> {
    let (case, _) = classify(t)?;
    if case != CaseTag::I {
        return Ok(None);
    }
    let malformed = |msg: String| Err(SurfaceError::MalformedCaseI(msg));
    let g = Gluing::new(t);
    let crossing: Vec<ArcId> = t.arcs.iter().filter(|a| !a.touches_puncture()).map(|a| a.id).collect();
    if crossing.is_empty() {
        return malformed("no arc separates P from Q".to_string());
    }

    // triangle -> [(arc, slot in this triangle, neighbouring triangle)]
    let mut incident: BTreeMap<usize, Vec<(ArcId, usize, usize)>> = BTreeMap::new();
    for &id in &crossing {
        let slots = g.arc_slots.get(&id).cloned().unwrap_or_default();
        let [(t1, k1), (t2, k2)]: [Slot; 2] = match slots.as_slice().try_into() {
            Ok(pair) => pair,
            Err(_) => return malformed(format!("arc {id} does not bound two triangle sides")),
        };
        if t1 == t2 {
            return malformed(format!("arc {id} bounds triangle {t1} twice"));
        }
        incident.entry(t1).or_default().push((id, k1, t2));
        incident.entry(t2).or_default().push((id, k2, t1));
    }
    if let Some((&ti, _)) = incident.iter().find(|(_, v)| v.len() > 2) {
        return malformed(format!("triangle {ti} has three sides crossed by the P-Q line"));
    }
    let ends: Vec<usize> = incident.iter().filter(|(_, v)| v.len() == 1).map(|(&ti, _)| ti).collect();
    if ends.len() != 2 || incident.len() != crossing.len() + 1 {
        return malformed("crossed arcs do not chain into one path of triangles".to_string());
    }

    let at = |ti: usize, x: Puncture| {
        g.slots[ti].iter().any(|s| match s {
            Side::Arc(id) => t.arc(*id).is_some_and(|a| a.ends_at(Endpoint::Puncture(x)) > 0),
            Side::Segment(_) => false,
        })
    };
    let start = match (ends[0], ends[1]) {
        (a, b) if at(a, Puncture::P) && at(b, Puncture::Q) && !at(a, Puncture::Q) => a,
        (a, b) if at(b, Puncture::P) && at(a, Puncture::Q) && !at(b, Puncture::Q) => b,
        _ => return malformed("the path of crossed triangles does not run from P to Q".to_string()),
    };

    let mut letters = Vec::new();
    let mut prev = usize::MAX;
    let mut here = start;
    let mut entry: Option<usize> = None;
    let mut steps = 0;
    loop {
        let next = incident[&here].iter().find(|&&(_, _, other)| other != prev).copied();
        let Some((_, exit, other)) = next else { break };
        if let Some(k) = entry {
            letters.push(if exit == (k + 1) % 3 { Letter::Down } else { Letter::Up });
        }
        let back = incident[&other].iter().find(|&&(_, _, o)| o == here).map(|&(_, k, _)| k);
        entry = back;
        prev = here;
        here = other;
        steps += 1;
        if steps > crossing.len() {
            return malformed("crossed triangles form a cycle".to_string());
        }
        if incident[&here].len() == 1 {
            break;
        }
    }
    if steps != crossing.len() {
        return malformed("the path of crossed triangles misses some crossed arcs".to_string());
    }
    Ok(Some(FenceWord::new(letters)))
}

/// Submodule count of the module of the `P`-`Q` arc; 1 when the arc is in
/// the triangulation.
pub fn a_value(t: &DiskTriangulation) -> Result<BigInt, SurfaceError> {
    Ok(match pq_string(t)? {
        Some(w) => ideal_count(&w),
        None => BigInt::one(),
    })
}

/// The band whose module sits at the mouth of the homogeneous tubes.
pub fn band_word(t: &DiskTriangulation) -> Result<CyclicWord, SurfaceError> {
    let (case, d) = classify(t)?;
    let beta = match case {
        CaseTag::I => {
            let w = pq_string(t)?.expect("case I has a P-Q string");
            FenceWord::up(d.p - 1)
                .link(&w)
                .link(&FenceWord::up(d.q - 1))
                .link(&w.invert())
        }
        CaseTag::II => FenceWord::up(d.p - 2).link(&FenceWord::up(d.q - 2)),
        CaseTag::III { .. } => FenceWord::up(d.p - 4),
    };
    Ok(CyclicWord::new(beta))
}
