//! Seeded test instances.
//!
//! Case I instances are a fan at `P`, a random strip of triangles over the
//! arcs separating the punctures, and a fan at `Q`. Boundary positions are
//! plain integers during construction and become labels `pos mod b + 1`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Arc, ArcId, DiskTriangulation, Endpoint, Puncture, Side, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenCase {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenParams {
    pub case: GenCase,
    pub b: usize,
    pub p: usize,
    pub q: usize,
}

impl GenParams {
    pub fn case_i(b: usize, p: usize, q: usize) -> Self {
        GenParams { case: GenCase::I, b, p, q }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("case I needs b >= 1, p, q >= 1 and p + q <= b + 2 (got b={b}, p={p}, q={q})")]
    CaseI { b: usize, p: usize, q: usize },
    #[error("case II needs p, q >= 3 and b = p + q - 4 (got b={b}, p={p}, q={q})")]
    CaseII { b: usize, p: usize, q: usize },
    #[error("case III needs b >= 2, p = b + 4 and q = 1 (got b={b}, p={p}, q={q})")]
    CaseIII { b: usize, p: usize, q: usize },
}

struct Builder {
    b: usize,
    arcs: Vec<(Endpoint, Endpoint)>,
    triangles: Vec<Triangle>,
}

const P: Endpoint = Endpoint::Puncture(Puncture::P);
const Q: Endpoint = Endpoint::Puncture(Puncture::Q);

impl Builder {
    fn new(b: usize) -> Self {
        Builder { b, arcs: Vec::new(), triangles: Vec::new() }
    }

    fn at(&self, pos: usize) -> Endpoint {
        Endpoint::Boundary(pos % self.b + 1)
    }

    fn seg(&self, pos: usize) -> Side {
        Side::Segment(pos % self.b + 1)
    }

    fn arc(&mut self, x: Endpoint, y: Endpoint) -> Side {
        self.arcs.push((x, y));
        Side::Arc(self.arcs.len() as ArcId - 1)
    }

    fn plain(&mut self, s: [Side; 3]) {
        self.triangles.push(Triangle::Plain(s));
    }

    fn folded(&mut self, loop_arc: Side, radius: Side) {
        let (Side::Arc(l), Side::Arc(r)) = (loop_arc, radius) else { unreachable!("arcs only") };
        self.triangles.push(Triangle::SelfFolded { loop_arc: l, radius: r });
    }

    /// Fan at puncture `x` over positions `lo..=lo+k-1`, closed by an arc
    /// between the two extreme positions. Returns the closing arc.
    fn fan(&mut self, x: Endpoint, lo: usize, k: usize) -> Side {
        let spokes: Vec<Side> = (0..k).map(|j| self.arc(self.at(lo + j), x)).collect();
        let close = self.arc(self.at(lo + k - 1), self.at(lo));
        if k == 1 {
            self.folded(close, spokes[0]);
            return close;
        }
        for j in 0..k - 1 {
            let s = self.seg(lo + j);
            self.plain([s, spokes[j + 1], spokes[j]]);
        }
        self.plain([close, spokes[0], spokes[k - 1]]);
        close
    }

    /// Shuffle arc ids, triangle order and the starting side of plain
    /// triangles, and rotate boundary labels.
    fn finish(self, rng: &mut ChaCha8Rng) -> DiskTriangulation {
        let mut ids: Vec<ArcId> = (0..self.arcs.len() as ArcId).map(|k| k + 1).collect();
        ids.shuffle(rng);
        let arcs = self.arcs.iter().enumerate().map(|(k, &(x, y))| Arc::new(ids[k], x, y)).collect();
        let relabel = |s: Side| match s {
            Side::Arc(k) => Side::Arc(ids[k as usize]),
            seg => seg,
        };
        let mut triangles: Vec<Triangle> = self
            .triangles
            .iter()
            .map(|t| match *t {
                Triangle::Plain(s) => {
                    let mut s = s.map(relabel);
                    s.rotate_left(rng.gen_range(0..3));
                    Triangle::Plain(s)
                }
                Triangle::SelfFolded { loop_arc, radius } => Triangle::SelfFolded {
                    loop_arc: ids[loop_arc as usize],
                    radius: ids[radius as usize],
                },
            })
            .collect();
        triangles.shuffle(rng);
        let t = DiskTriangulation::new(self.b, arcs, triangles);
        let turn = rng.gen_range(0..t.b);
        t.rotate_labels(turn)
    }
}

/// A valid triangulation without peripheral arcs, deterministic in `seed`.
pub fn random_triangulation(seed: u64, params: GenParams) -> Result<DiskTriangulation, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let GenParams { case, b, p, q } = params;
    match case {
        GenCase::I => {
            if b == 0 || p == 0 || q == 0 || p + q > b + 2 {
                return Err(GenError::CaseI { b, p, q });
            }
            Ok(case_i(&mut rng, b, p, q))
        }
        GenCase::II => {
            if p < 3 || q < 3 || p + q != b + 4 {
                return Err(GenError::CaseII { b, p, q });
            }
            Ok(case_ii(&mut rng, b, p, q))
        }
        GenCase::III => {
            if b < 2 || p != b + 4 || q != 1 {
                return Err(GenError::CaseIII { b, p, q });
            }
            Ok(case_iii(&mut rng, b))
        }
    }
}

fn case_i(rng: &mut ChaCha8Rng, b: usize, p: usize, q: usize) -> DiskTriangulation {
    let m = b + 3 - p - q;
    let mut g = Builder::new(b);
    // Work above `b` so that backward steps never go negative.
    let (mut lo, mut hi) = (b, b + p - 1);
    let mut c = g.fan(P, lo, p);
    for _ in 1..m {
        if rng.gen_bool(0.5) {
            let s = g.seg(hi);
            let next = g.arc(g.at(lo), g.at(hi + 1));
            g.plain([c, s, next]);
            hi += 1;
            c = next;
        } else {
            let s = g.seg(lo - 1);
            let next = g.arc(g.at(hi), g.at(lo - 1));
            g.plain([s, c, next]);
            lo -= 1;
            c = next;
        }
    }
    // The last separating arc runs from `lo` to `hi`; the `Q` side spans
    // positions `hi..=lo+b`.
    let spokes: Vec<Side> = (0..q).map(|j| g.arc(g.at(hi + j), Q)).collect();
    if q == 1 {
        g.folded(c, spokes[0]);
    } else {
        for j in 0..q - 1 {
            let s = g.seg(hi + j);
            g.plain([s, spokes[j + 1], spokes[j]]);
        }
        g.plain([c, spokes[0], spokes[q - 1]]);
    }
    g.finish(rng)
}

fn case_ii(rng: &mut ChaCha8Rng, b: usize, p: usize, q: usize) -> DiskTriangulation {
    let mut g = Builder::new(b);
    let d: Vec<Side> = (0..p - 1).map(|k| g.arc(g.at(k), P)).collect();
    let e: Vec<Side> = (0..q - 1).map(|j| g.arc(g.at(p - 2 + j), Q)).collect();
    let gamma = g.arc(P, Q);
    for k in 0..p - 2 {
        let s = g.seg(k);
        g.plain([s, d[k + 1], d[k]]);
    }
    for j in 0..q - 2 {
        let s = g.seg(p - 2 + j);
        g.plain([s, e[j + 1], e[j]]);
    }
    g.plain([e[0], gamma, d[p - 2]]);
    g.plain([d[0], gamma, e[q - 2]]);
    g.finish(rng)
}

fn case_iii(rng: &mut ChaCha8Rng, b: usize) -> DiskTriangulation {
    let mut g = Builder::new(b);
    let d: Vec<Side> = (0..=b).map(|k| g.arc(g.at(k), P)).collect();
    let l = g.arc(P, P);
    let r = g.arc(P, Q);
    for k in 0..b {
        let s = g.seg(k);
        g.plain([s, d[k + 1], d[k]]);
    }
    g.plain([d[0], l, d[b]]);
    g.folded(l, r);
    g.finish(rng)
}

/// Subdivide boundary segment `i`: a new vertex `i + 1` appears, later
/// vertices shift up by one, and an ear on segments `i`, `i + 1` is glued
/// along a new arc from `i` to `i + 2`.
pub fn add_ears(t: &DiskTriangulation, i: usize) -> DiskTriangulation {
    assert!(i >= 1 && i <= t.b, "segment {i} is out of range");
    let b = t.b + 1;
    let shift = |w: usize| if w > i { w + 1 } else { w };
    let end = |e: Endpoint| match e {
        Endpoint::Boundary(w) => Endpoint::Boundary(shift(w)),
        other => other,
    };
    let x = t.arcs.iter().map(|a| a.id).max().unwrap_or(0) + 1;
    let mut arcs: Vec<Arc> = t.arcs.iter().map(|a| Arc::new(a.id, end(a.ends[0]), end(a.ends[1]))).collect();
    arcs.push(Arc::new(x, Endpoint::Boundary(i), Endpoint::Boundary((i + 1) % b + 1)));
    let side = |s: Side| match s {
        Side::Segment(w) if w == i => Side::Arc(x),
        Side::Segment(w) => Side::Segment(shift(w)),
        other => other,
    };
    let mut triangles: Vec<Triangle> = t
        .triangles
        .iter()
        .map(|tri| match *tri {
            Triangle::Plain(s) => Triangle::Plain(s.map(side)),
            sf => sf,
        })
        .collect();
    triangles.push(Triangle::Plain([Side::Segment(i), Side::Segment(i + 1), Side::Arc(x)]));
    DiskTriangulation::new(b, arcs, triangles)
}
