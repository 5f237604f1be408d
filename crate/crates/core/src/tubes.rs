//! The three kinds of tubes of the twice-punctured disk: the big tube of
//! boundary arcs, the two small tubes at the punctures, and the homogeneous
//! tubes. Each yields a frieze; this module computes all of their growth
//! coefficients and the navigation maps of the big and small tubes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fence::band_count;
use crate::frieze::{growth, FriezeError, Quiddity};
use crate::surface::{
    a_value, band_word, boundary_quiddity, classify, loop_review_vertices, strip_peripheral_counted, validate,
    CaseTag, DiskTriangulation, SurfaceError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TubeError {
    #[error("boundary count must be at least 1")]
    EmptyBoundary,
    #[error("coordinate ({v_s},{v_t},{l}) is outside 1..={n} or is not an arc")]
    BadCoordinate { v_s: usize, v_t: usize, l: u64, n: usize },
}

/// The generalized boundary arc `γ^l_{v_s,v_t}`: from `v_s` to `v_t`, winding
/// `l` extra times. Vertices are `1..=n` with `n = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeripheralArcCoord {
    pub v_s: usize,
    pub v_t: usize,
    pub l: u64,
}

fn wrap(x: i64, n: usize) -> usize {
    ((x - 1).rem_euclid(n as i64) + 1) as usize
}

impl PeripheralArcCoord {
    pub fn new(v_s: usize, v_t: usize, l: u64, n: usize) -> Result<Self, TubeError> {
        let c = PeripheralArcCoord { v_s, v_t, l };
        if n == 0 {
            return Err(TubeError::EmptyBoundary);
        }
        if v_s == 0 || v_t == 0 || v_s > n || v_t > n || !c.is_valid(n) {
            return Err(TubeError::BadCoordinate { v_s, v_t, l, n });
        }
        Ok(c)
    }

    /// `l = 0` forbids `v_t ∈ {v_s, v_s + 1}`.
    pub fn is_valid(&self, n: usize) -> bool {
        self.l > 0 || (self.v_t != self.v_s && self.v_t != wrap(self.v_s as i64 + 1, n))
    }

    /// Quasi-simple coordinates `(v, v+2, 0)` sit at the mouth.
    pub fn mouth(v: usize, n: usize) -> PeripheralArcCoord {
        PeripheralArcCoord { v_s: v, v_t: wrap(v as i64 + 2, n), l: 0 }
    }
}

impl fmt::Display for PeripheralArcCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v_s, self.v_t, self.l)
    }
}

/// Move both endpoints one step clockwise.
pub fn tau_peripheral(c: PeripheralArcCoord, n: usize) -> PeripheralArcCoord {
    PeripheralArcCoord { v_s: wrap(c.v_s as i64 - 1, n), v_t: wrap(c.v_t as i64 - 1, n), l: c.l }
}

pub fn tau_inverse_peripheral(c: PeripheralArcCoord, n: usize) -> PeripheralArcCoord {
    PeripheralArcCoord { v_s: wrap(c.v_s as i64 + 1, n), v_t: wrap(c.v_t as i64 + 1, n), l: c.l }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeshDirection {
    Lengthen,
    Shorten,
}

/// Irreducible maps out of `c`: lengthening moves the target forward,
/// shortening moves the source forward. `None` for shortening at the mouth.
pub fn mesh_step(c: PeripheralArcCoord, direction: MeshDirection, n: usize) -> Option<PeripheralArcCoord> {
    let up = |v: usize, k: i64| wrap(v as i64 + k, n);
    let PeripheralArcCoord { v_s, v_t, l } = c;
    match direction {
        MeshDirection::Lengthen => {
            let l = if v_s == up(v_t, 1) { l + 1 } else { l };
            Some(PeripheralArcCoord { v_s, v_t: up(v_t, 1), l })
        }
        MeshDirection::Shorten => match (l, v_t == v_s) {
            (0, _) if v_t == up(v_s, 2) => None,
            (0, _) => Some(PeripheralArcCoord { v_s: up(v_s, 1), v_t, l: 0 }),
            (_, false) => Some(PeripheralArcCoord { v_s: up(v_s, 1), v_t, l }),
            (_, true) => Some(PeripheralArcCoord { v_s: up(v_s, 1), v_t: v_s, l: l - 1 }),
        },
    }
}

/// The arc `γ` from `P` to `Q` with each choice of tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TaggedPQArc {
    Plain,
    NotchedAtP,
    NotchedAtQ,
    NotchedBoth,
}

impl TaggedPQArc {
    pub const ALL: [TaggedPQArc; 4] =
        [TaggedPQArc::Plain, TaggedPQArc::NotchedAtP, TaggedPQArc::NotchedAtQ, TaggedPQArc::NotchedBoth];
}

/// Toggle both tags: `γ ↔ γ^(PQ)` and `γ^(P) ↔ γ^(Q)`.
pub fn tau_tagged(x: TaggedPQArc) -> TaggedPQArc {
    match x {
        TaggedPQArc::Plain => TaggedPQArc::NotchedBoth,
        TaggedPQArc::NotchedBoth => TaggedPQArc::Plain,
        TaggedPQArc::NotchedAtP => TaggedPQArc::NotchedAtQ,
        TaggedPQArc::NotchedAtQ => TaggedPQArc::NotchedAtP,
    }
}

/// `((a, apq), (ap, aq))`.
pub fn small_tube_quiddities(a: &BigInt, p: usize, q: usize) -> (Quiddity, Quiddity) {
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let first = Quiddity::new(vec![a.clone(), a * &p * &q]).expect("a, p, q are positive");
    let second = Quiddity::new(vec![a * &p, a * &q]).expect("a, p, q are positive");
    (first, second)
}

/// `a²pq - 2`.
pub fn growth_formula(a: &BigInt, p: usize, q: usize) -> BigInt {
    a * a * BigInt::from(p) * BigInt::from(q) - 2
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthField {
    Value(#[serde(with = "crate::bigint_serde")] BigInt),
    /// The quiddity does not give an infinite frieze.
    Degenerate,
}

impl GrowthField {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            GrowthField::Value(v) => Some(v),
            GrowthField::Degenerate => None,
        }
    }
}

impl fmt::Display for GrowthField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthField::Value(v) => write!(f, "{v}"),
            GrowthField::Degenerate => write!(f, "degenerate"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeReport {
    pub case: CaseTag,
    pub p: usize,
    pub q: usize,
    #[serde(with = "crate::bigint_serde")]
    pub a: BigInt,
    /// Boundary quiddity of the input as given.
    pub quid1: Quiddity,
    /// Boundary quiddity after clipping all ears.
    pub quid1_stripped: Quiddity,
    pub ears_clipped: usize,
    pub quid2: Quiddity,
    pub quid3: Quiddity,
    #[serde(with = "crate::bigint_serde")]
    pub growth_formula: BigInt,
    pub growth_band: GrowthField,
    pub band_degenerate: bool,
    pub growth_empirical1: GrowthField,
    pub growth_empirical2: GrowthField,
    pub growth_empirical3: GrowthField,
    pub homogeneous_growth: GrowthField,
    pub all_equal: bool,
    /// Boundary vertices with more than two loops, where the quiddity rule
    /// goes beyond the configurations it was derived for.
    pub review_vertices: Vec<usize>,
}

impl TubeReport {
    pub fn growth_fields(&self) -> [(&'static str, &GrowthField); 5] {
        [
            ("band", &self.growth_band),
            ("empirical1", &self.growth_empirical1),
            ("empirical2", &self.growth_empirical2),
            ("empirical3", &self.growth_empirical3),
            ("homogeneous", &self.homogeneous_growth),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    Validate,
    Strip,
    Classify,
    PqString,
    Band,
    Growth,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Validate => "validate",
            Stage::Strip => "strip",
            Stage::Classify => "classify",
            Stage::PqString => "pq-string",
            Stage::Band => "band",
            Stage::Growth => "growth",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{stage} stage failed: {message}")]
pub struct ReportError {
    pub stage: Stage,
    pub message: String,
}

fn fail<E: fmt::Display>(stage: Stage) -> impl Fn(E) -> ReportError {
    move |e| ReportError { stage, message: e.to_string() }
}

fn empirical(q: &Quiddity) -> Result<GrowthField, ReportError> {
    match growth(q) {
        Ok(s) => Ok(GrowthField::Value(s)),
        Err(FriezeError::Unreachable { .. }) => Ok(GrowthField::Degenerate),
        Err(e) => Err(fail(Stage::Growth)(e)),
    }
}

pub fn tube_report(t: &DiskTriangulation) -> Result<TubeReport, ReportError> {
    let report = validate(t);
    if !report.is_valid() {
        return Err(fail(Stage::Validate)(SurfaceError::Invalid(report)));
    }
    let quid1 = boundary_quiddity(t);
    let (stripped, ears_clipped) = strip_peripheral_counted(t);
    let report = validate(&stripped);
    if !report.is_valid() {
        return Err(fail(Stage::Strip)(SurfaceError::Invalid(report)));
    }
    let (case, d) = classify(&stripped).map_err(fail(Stage::Classify))?;
    let a = a_value(&stripped).map_err(fail(Stage::PqString))?;
    let (quid2, quid3) = small_tube_quiddities(&a, d.p, d.q);
    let formula = growth_formula(&a, d.p, d.q);
    let band = band_count(&band_word(&stripped).map_err(fail(Stage::Band))?);

    let homogeneous = if formula.is_positive() {
        empirical(&Quiddity::new(vec![formula.clone()]).expect("positive entry"))?
    } else {
        GrowthField::Degenerate
    };
    let mut out = TubeReport {
        case,
        p: d.p,
        q: d.q,
        a,
        quid1_stripped: boundary_quiddity(&stripped),
        growth_empirical1: empirical(&quid1)?,
        quid1,
        ears_clipped,
        growth_empirical2: empirical(&quid2)?,
        growth_empirical3: empirical(&quid3)?,
        quid2,
        quid3,
        growth_band: GrowthField::Value(band.count),
        band_degenerate: band.degenerate,
        homogeneous_growth: homogeneous,
        growth_formula: formula,
        all_equal: false,
        review_vertices: loop_review_vertices(t),
    };
    out.all_equal = out.growth_fields().iter().all(|(_, g)| g.value() == Some(&out.growth_formula));
    Ok(out)
}

impl fmt::Display for TubeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let rows: Vec<(&str, String)> = vec![
            ("case", self.case.to_string()),
            ("p", self.p.to_string()),
            ("q", self.q.to_string()),
            ("a", self.a.to_string()),
            ("quid1", self.quid1.to_string()),
            ("quid1 stripped", self.quid1_stripped.to_string()),
            ("ears clipped", self.ears_clipped.to_string()),
            ("quid2", self.quid2.to_string()),
            ("quid3", self.quid3.to_string()),
            ("growth formula", self.growth_formula.to_string()),
            ("growth band", self.growth_band.to_string()),
            ("band degenerate", yes_no(self.band_degenerate).to_string()),
            ("growth empirical1", self.growth_empirical1.to_string()),
            ("growth empirical2", self.growth_empirical2.to_string()),
            ("growth empirical3", self.growth_empirical3.to_string()),
            ("homogeneous growth", self.homogeneous_growth.to_string()),
            ("all equal", yes_no(self.all_equal).to_string()),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        if !self.review_vertices.is_empty() {
            let list: Vec<String> = self.review_vertices.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{:<width$}  {}", "review vertices", list.join(","))?;
        }
        Ok(())
    }
}
