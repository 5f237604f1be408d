//! Periodic friezes over the integers.
//!
//! Rows are stored period-aligned: `F(r+1, i)` is computed from `F(r, i)`,
//! `F(r, i+1)` and `F(r-1, i+1)`, indices taken mod the period `m`. With this
//! layout the entry "right above" `F(m, i)` two rows up is `F(m-2, i+1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_MAX_ROWS: usize = 64;
pub const DEFAULT_MAX_BITS: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FriezeError {
    #[error("quiddity must have at least one entry")]
    EmptyQuiddity,
    #[error("quiddity entry {value} at position {index} is not a positive integer")]
    NonPositiveEntry { index: usize, value: BigInt },
    #[error("cannot parse quiddity {0:?}: expected comma-separated positive integers")]
    Parse(String),
    #[error("at least one row must be requested")]
    NoRows,
    #[error("requested {requested} rows, above the cap of {cap}")]
    RowCap { requested: usize, cap: usize },
    #[error("entry in row {row} exceeds {max_bits} bits")]
    EntryTooLarge { row: usize, max_bits: u64 },
    #[error("row {needed} is unreachable: frieze status is {status}")]
    Unreachable { needed: usize, status: FriezeStatus },
    #[error("growth differences are not constant in row {row}")]
    GrowthNotConstant { row: usize },
    #[error("invalid polygon triangulation: {0}")]
    InvalidTriangulation(String),
}

/// One period `a_1..a_m` of the first non-trivial row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiddity(Vec<BigInt>);

impl Quiddity {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, FriezeError> {
        if entries.is_empty() {
            return Err(FriezeError::EmptyQuiddity);
        }
        if let Some((index, value)) = entries.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(FriezeError::NonPositiveEntry { index, value: value.clone() });
        }
        Ok(Quiddity(entries))
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self, FriezeError> {
        Quiddity::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn period(&self) -> usize {
        self.0.len()
    }

    /// Shift left by `k`: entry `i` of the result is entry `i + k` of `self`.
    pub fn rotate(&self, k: usize) -> Quiddity {
        let mut v = self.0.clone();
        let m = v.len();
        v.rotate_left(k % m);
        Quiddity(v)
    }

    /// `k·q`: the sequence repeated `k` times.
    pub fn repeat(&self, k: usize) -> Quiddity {
        assert!(k >= 1, "repeat count starts at 1");
        Quiddity(std::iter::repeat_n(self.0.iter().cloned(), k).flatten().collect())
    }
}

impl fmt::Display for Quiddity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Quiddity {
    type Err = FriezeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = body
            .split(',')
            .map(|part| part.trim().parse::<BigInt>().map_err(|_| FriezeError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Quiddity::new(entries).map_err(|e| match e {
            FriezeError::EmptyQuiddity => FriezeError::Parse(s.to_string()),
            other => other,
        })
    }
}

impl Serialize for Quiddity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::bigint_serde::vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Quiddity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = crate::bigint_serde::vec::deserialize(d)?;
        Quiddity::new(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FriezeStatus {
    /// Every computed row is positive and no closure was seen.
    InfiniteSoFar,
    /// Row `r` is all 1s and row `r+1` all 0s.
    ClosedAtRow(usize),
    /// Inexact division or a non-positive entry at `(row, index)`.
    Invalid { row: usize, index: usize },
}

impl fmt::Display for FriezeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FriezeStatus::InfiniteSoFar => write!(f, "infinite so far"),
            FriezeStatus::ClosedAtRow(r) => write!(f, "closed at row {r}"),
            FriezeStatus::Invalid { row, index } => write!(f, "invalid at row {row}, index {index}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FriezeLimits {
    pub max_rows: usize,
    pub max_bits: u64,
}

impl Default for FriezeLimits {
    fn default() -> Self {
        FriezeLimits { max_rows: DEFAULT_MAX_ROWS, max_bits: DEFAULT_MAX_BITS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frieze {
    quiddity: Quiddity,
    /// `rows[k]` is row `k - 1`.
    rows: Vec<Vec<BigInt>>,
    status: FriezeStatus,
}

impl Frieze {
    pub fn quiddity(&self) -> &Quiddity {
        &self.quiddity
    }

    pub fn period(&self) -> usize {
        self.quiddity.period()
    }

    pub fn status(&self) -> FriezeStatus {
        self.status
    }

    /// Highest stored row index.
    pub fn last_row(&self) -> isize {
        self.rows.len() as isize - 2
    }

    pub fn row(&self, r: isize) -> Option<&[BigInt]> {
        if r < -1 {
            return None;
        }
        self.rows.get((r + 1) as usize).map(|v| v.as_slice())
    }

    /// `F(r, i)` with `i` taken mod the period.
    pub fn entry(&self, r: isize, i: isize) -> Option<&BigInt> {
        let m = self.period() as isize;
        self.row(r).map(|row| &row[i.rem_euclid(m) as usize])
    }

    /// True when every stored row satisfies `F(r+1,i)·F(r-1,i+1) = F(r,i)·F(r,i+1) - 1`.
    pub fn satisfies_diamond_rule(&self) -> bool {
        let m = self.period();
        (0..=self.last_row()).all(|r| match self.row(r + 1) {
            None => true,
            Some(next) => {
                let (prev, cur) = (self.row(r - 1).unwrap(), self.row(r).unwrap());
                (0..m).all(|i| {
                    let j = (i + 1) % m;
                    &next[i] * &prev[j] == &cur[i] * &cur[j] - 1
                })
            }
        })
    }
}

pub fn generate(q: &Quiddity, rows: usize) -> Result<Frieze, FriezeError> {
    generate_with(q, rows, FriezeLimits::default())
}

/// Rows `-1..=rows` by the diamond rule, stopping early at closure or at the
/// first invalid entry.
pub fn generate_with(q: &Quiddity, rows: usize, limits: FriezeLimits) -> Result<Frieze, FriezeError> {
    if rows == 0 {
        return Err(FriezeError::NoRows);
    }
    if rows > limits.max_rows {
        return Err(FriezeError::RowCap { requested: rows, cap: limits.max_rows });
    }
    let m = q.period();
    let mut frieze = Frieze {
        quiddity: q.clone(),
        rows: vec![vec![BigInt::zero(); m], vec![BigInt::one(); m], q.entries().to_vec()],
        status: FriezeStatus::InfiniteSoFar,
    };
    let mut r = 1usize;
    loop {
        if closes_at(&frieze.rows[r + 1], m, r) {
            frieze.rows.push(vec![BigInt::zero(); m]);
            frieze.status = FriezeStatus::ClosedAtRow(r);
            return Ok(frieze);
        }
        if r == rows {
            return Ok(frieze);
        }
        let (prev, cur) = (&frieze.rows[r], &frieze.rows[r + 1]);
        let mut next = Vec::with_capacity(m);
        for i in 0..m {
            let j = (i + 1) % m;
            let numer: BigInt = &cur[i] * &cur[j] - 1;
            let (quot, rem) = numer.div_rem(&prev[j]);
            if !rem.is_zero() {
                frieze.status = FriezeStatus::Invalid { row: r + 1, index: i };
                return Ok(frieze);
            }
            if quot.bits() > limits.max_bits {
                return Err(FriezeError::EntryTooLarge { row: r + 1, max_bits: limits.max_bits });
            }
            next.push(quot);
        }
        let bad = next.iter().position(|x| !x.is_positive());
        frieze.rows.push(next);
        r += 1;
        if let Some(index) = bad {
            frieze.status = FriezeStatus::Invalid { row: r, index };
            return Ok(frieze);
        }
    }
}

/// A closing row of 1s at height `r` can only belong to a frieze whose
/// polygon has `r + 2` vertices, so the period must divide `r + 2`.
fn closes_at(row: &[BigInt], m: usize, r: usize) -> bool {
    (r + 2).is_multiple_of(m) && row.iter().all(|x| x.is_one())
}

/// Growth coefficient `s(q) = F(m,i) - F(m-2,i+1)`.
pub fn growth(q: &Quiddity) -> Result<BigInt, FriezeError> {
    let m = q.period();
    let limits = FriezeLimits { max_rows: DEFAULT_MAX_ROWS.max(m), ..FriezeLimits::default() };
    let f = generate_with(q, m, limits)?;
    if f.status() != FriezeStatus::InfiniteSoFar || f.last_row() < m as isize {
        return Err(FriezeError::Unreachable { needed: m, status: f.status() });
    }
    let m_i = m as isize;
    let s = f.entry(m_i, 0).unwrap() - f.entry(m_i - 2, 1).unwrap();
    for i in 1..m_i {
        if f.entry(m_i, i).unwrap() - f.entry(m_i - 2, i + 1).unwrap() != s {
            return Err(FriezeError::GrowthNotConstant { row: m });
        }
    }
    Ok(s)
}

/// `s_k(q)`, the growth of `k·q`, measured on the frieze.
pub fn growth_k(q: &Quiddity, k: usize) -> Result<BigInt, FriezeError> {
    if k == 0 {
        return Ok(BigInt::from(2));
    }
    growth(&q.repeat(k))
}

/// `s_0 = 2`, `s_{k+2} = s_1·s_{k+1} - s_k`.
pub fn chebyshev_growth(s1: &BigInt, k: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), s1.clone());
    for _ in 0..k {
        let c = s1 * &b - &a;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Quiddity of a triangulated convex `n`-gon with vertices `1..=n`:
/// `a_i` is the number of triangles at vertex `i`.
pub fn polygon_quiddity(n: usize, diagonals: &[(usize, usize)]) -> Result<Quiddity, FriezeError> {
    let bad = |msg: String| Err(FriezeError::InvalidTriangulation(msg));
    if n < 3 {
        return bad(format!("a polygon needs at least 3 vertices, got {n}"));
    }
    if diagonals.len() != n - 3 {
        return bad(format!("expected {} diagonals, got {}", n - 3, diagonals.len()));
    }
    let mut adj = vec![vec![false; n]; n];
    for k in 0..n {
        adj[k][(k + 1) % n] = true;
        adj[(k + 1) % n][k] = true;
    }
    let mut normalized = Vec::with_capacity(diagonals.len());
    for &(x, y) in diagonals {
        if x == 0 || y == 0 || x > n || y > n {
            return bad(format!("diagonal ({x},{y}) leaves the vertex range 1..={n}"));
        }
        let (a, b) = (x.min(y) - 1, x.max(y) - 1);
        if a == b || adj[a][b] {
            return bad(format!("({x},{y}) is not a diagonal or is repeated"));
        }
        adj[a][b] = true;
        adj[b][a] = true;
        normalized.push((a, b));
    }
    for (k, &(a, b)) in normalized.iter().enumerate() {
        for &(c, d) in &normalized[k + 1..] {
            let inside = |v: usize| a < v && v < b;
            let shared = a == c || a == d || b == c || b == d;
            if !shared && inside(c) != inside(d) {
                return bad(format!("diagonals ({},{}) and ({},{}) cross", a + 1, b + 1, c + 1, d + 1));
            }
        }
    }
    let mut counts = vec![0u64; n];
    let mut triangles = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i][j] {
                continue;
            }
            for k in j + 1..n {
                if adj[i][k] && adj[j][k] {
                    triangles += 1;
                    counts[i] += 1;
                    counts[j] += 1;
                    counts[k] += 1;
                }
            }
        }
    }
    if triangles != n - 2 {
        return bad(format!("found {triangles} triangles, expected {}", n - 2));
    }
    Quiddity::from_u64s(&counts)
}
