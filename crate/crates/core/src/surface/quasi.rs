use num_bigint::BigInt;

use super::mesh::Gluing;
use super::{ArcId, DiskTriangulation, Endpoint, SurfaceError, Triangle};
use crate::fence::Digraph;
use crate::frieze::Quiddity;

/// `a_i = (arc ends at i) + 1`, loops counted twice.
pub fn boundary_quiddity(t: &DiskTriangulation) -> Quiddity {
    let entries = (1..=t.b)
        .map(|i| BigInt::from(t.degree(Endpoint::Boundary(i)) + 1))
        .collect();
    Quiddity::new(entries).expect("every entry is at least 1")
}

/// Boundary vertices carrying more than two loops.
pub fn loop_review_vertices(t: &DiskTriangulation) -> Vec<usize> {
    (1..=t.b)
        .filter(|&i| {
            let at = Endpoint::Boundary(i);
            t.arcs.iter().filter(|a| a.is_loop() && a.ends[0] == at).count() > 2
        })
        .collect()
}

/// Quiver of the module of the arc cutting off boundary vertex `i`.
///
/// The arcs met while sweeping the fan at `i` give the vertices of an
/// equioriented path. A self-folded triangle at `i` is met as loop, radius,
/// loop; those three crossings become two parallel vertices that share all
/// arrows with their neighbours. `None` when no arc ends at `i`.
pub fn quasi_simple_digraph(t: &DiskTriangulation, i: usize) -> Result<Option<Digraph>, SurfaceError> {
    if i == 0 || i > t.b {
        return Err(SurfaceError::Inconsistent(format!("boundary vertex {i} is out of range 1..={}", t.b)));
    }
    let g = Gluing::new(t);
    let fan = g
        .boundary_fan(t, i)
        .map_err(|e| SurfaceError::Inconsistent(format!("fan at vertex {i} is broken: {e:?}")))?;
    if fan.crossed.is_empty() {
        return Ok(None);
    }
    let folded: Vec<(ArcId, ArcId)> = t
        .triangles
        .iter()
        .filter_map(|tri| match *tri {
            Triangle::SelfFolded { loop_arc, radius } => Some((loop_arc, radius)),
            _ => None,
        })
        .collect();
    let mut blocks: Vec<usize> = Vec::new();
    let c = &fan.crossed;
    let mut k = 0;
    while k < c.len() {
        let pair = k + 2 < c.len() && c[k] == c[k + 2] && folded.contains(&(c[k], c[k + 1]));
        if pair {
            blocks.push(2);
            k += 3;
        } else {
            blocks.push(1);
            k += 1;
        }
    }
    let mut arrows = Vec::new();
    let mut start = 0;
    for w in blocks.windows(2) {
        let (from, to) = (start..start + w[0], start + w[0]..start + w[0] + w[1]);
        for s in from {
            for t2 in to.clone() {
                arrows.push((s, t2));
            }
        }
        start += w[0];
    }
    let n = blocks.iter().sum();
    Ok(Some(Digraph::new(n, arrows)?))
}
