//! Fence posets, their specialized rank matrices and order-ideal counts.
//!
//! A [`FenceWord`] describes a type A quiver read left to right: letter `k`
//! is the arrow between vertex `k` and vertex `k + 1`. `Down` points right
//! (`k -> k+1`), `Up` points left (`k+1 -> k`). Submodules of the
//! multiplicity-free string module are exactly the successor-closed vertex
//! sets, i.e. the order ideals of the fence poset.
//!
//! Counting goes through 2x2 transfer products. Starting from the one-vertex
//! matrix `[[2,-1],[1,0]]`, every `Down` letter multiplies on the right by the
//! same matrix and every `Up` letter by `[[1,0],[-1,1]]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Default vertex cap for [`closed_subset_count`].
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Hard ceiling for any requested cap; the enumeration uses 64-bit masks.
const MAX_ENUMERATION_CAP: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FenceError {
    #[error("invalid letter {0:?} in fence word (expected U or D)")]
    BadLetter(char),
    #[error("digraph has {vertices} vertices, above the enumeration cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("arrow ({0}, {1}) refers to a vertex outside the digraph")]
    BadArrow(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Down,
    Up,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::Down => Letter::Up,
            Letter::Up => Letter::Down,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Down => 'D',
            Letter::Up => 'U',
        }
    }
}

/// A type A quiver with `len() + 1` vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FenceWord {
    letters: Vec<Letter>,
}

impl FenceWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FenceWord { letters }
    }

    /// The one-vertex poset.
    pub fn point() -> Self {
        FenceWord::default()
    }

    /// `U_t`: an inverse segment of `t` arrows.
    pub fn up(t: usize) -> Self {
        FenceWord::new(vec![Letter::Up; t])
    }

    /// `D_t`: a direct segment of `t` arrows.
    pub fn down(t: usize) -> Self {
        FenceWord::new(vec![Letter::Down; t])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.letters.len() + 1
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// `self ↘ other`: link the rightmost vertex of `self` to the leftmost
    /// vertex of `other` by a `Down` arrow.
    pub fn link(&self, other: &FenceWord) -> FenceWord {
        let mut letters = Vec::with_capacity(self.len() + other.len() + 1);
        letters.extend_from_slice(&self.letters);
        letters.push(Letter::Down);
        letters.extend_from_slice(&other.letters);
        FenceWord { letters }
    }

    /// Reading right to left; every letter flips. An involution.
    pub fn invert(&self) -> FenceWord {
        FenceWord {
            letters: self.letters.iter().rev().map(|l| l.flip()).collect(),
        }
    }

    /// Flip every letter in place order (the opposite quiver).
    pub fn flipped(&self) -> FenceWord {
        FenceWord {
            letters: self.letters.iter().map(|l| l.flip()).collect(),
        }
    }

    pub fn is_all_down(&self) -> bool {
        self.letters.iter().all(|&l| l == Letter::Down)
    }

    /// Vertices `0..=len`, one arrow per letter.
    pub fn digraph(&self) -> Digraph {
        let arrows = self
            .letters
            .iter()
            .enumerate()
            .map(|(k, l)| match l {
                Letter::Down => (k, k + 1),
                Letter::Up => (k + 1, k),
            })
            .collect();
        Digraph::new(self.vertex_count(), arrows).expect("word arrows are in range")
    }
}

impl fmt::Display for FenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for FenceWord {
    type Err = FenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'D' => Ok(Letter::Down),
                'U' => Ok(Letter::Up),
                other => Err(FenceError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FenceWord::new)
    }
}

/// A plain 2x2 integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn from_i64(m: [[i64; 2]; 2]) -> Mat2 {
        Mat2([
            [BigInt::from(m[0][0]), BigInt::from(m[0][1])],
            [BigInt::from(m[1][0]), BigInt::from(m[1][1])],
        ])
    }

    pub fn identity() -> Mat2 {
        Mat2::from_i64([[1, 0], [0, 1]])
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.0[row][col]
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankForm {
    /// `∇ = [[R, -R1], [0R, -0R1]]`
    Specialized,
    /// `Δ = [[R1, R0], [0R1, 0R0]]`
    Dual,
}

/// Rank matrix of a sincere string module in one of its two forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankMatrix {
    form: RankForm,
    entries: Mat2,
}

fn nabla_to_delta() -> Mat2 {
    Mat2::from_i64([[0, 1], [-1, 1]])
}

fn delta_to_nabla() -> Mat2 {
    Mat2::from_i64([[1, -1], [1, 0]])
}

/// Transfer step for a `Down` letter; also `∇` of the one-vertex word.
fn down_step() -> Mat2 {
    Mat2::from_i64([[2, -1], [1, 0]])
}

fn up_step() -> Mat2 {
    Mat2::from_i64([[1, 0], [-1, 1]])
}

impl RankMatrix {
    pub fn new(form: RankForm, entries: Mat2) -> Self {
        RankMatrix { form, entries }
    }

    pub fn form(&self) -> RankForm {
        self.form
    }

    pub fn entries(&self) -> &Mat2 {
        &self.entries
    }

    pub fn to_nabla(&self) -> RankMatrix {
        match self.form {
            RankForm::Specialized => self.clone(),
            RankForm::Dual => RankMatrix::new(RankForm::Specialized, self.entries.mul(&delta_to_nabla())),
        }
    }

    pub fn to_delta(&self) -> RankMatrix {
        match self.form {
            RankForm::Dual => self.clone(),
            RankForm::Specialized => RankMatrix::new(RankForm::Dual, self.entries.mul(&nabla_to_delta())),
        }
    }

    /// Number of submodules (`R`), read from either form.
    pub fn submodule_count(&self) -> BigInt {
        self.to_nabla().entries.0[0][0].clone()
    }

    /// `∇` of the inverse string, from the entries alone:
    /// `[[a,-b],[c,-d]] ↦ [[a, c-a],[a-b, c+b-a-d]]`.
    pub fn nabla_of_inverse(&self) -> RankMatrix {
        let n = self.to_nabla();
        let [[a, minus_b], [c, minus_d]] = &n.entries.0;
        let b = -minus_b;
        let d = -minus_d;
        let entries = Mat2([
            [a.clone(), c - a],
            [a - &b, c + &b - a - &d],
        ]);
        RankMatrix::new(RankForm::Specialized, entries)
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

/// Specialized rank matrix `∇` by transfer product.
pub fn nabla(word: &FenceWord) -> RankMatrix {
    let down = down_step();
    let up = up_step();
    let entries = word.letters().iter().fold(down_step(), |acc, l| match l {
        Letter::Down => acc.mul(&down),
        Letter::Up => acc.mul(&up),
    });
    RankMatrix::new(RankForm::Specialized, entries)
}

/// Dual specialized rank matrix `Δ = ∇ · [[0,1],[-1,1]]`.
pub fn delta(word: &FenceWord) -> RankMatrix {
    nabla(word).to_delta()
}

pub fn invert(word: &FenceWord) -> FenceWord {
    word.invert()
}

pub fn nabla_of_inverse(m: &RankMatrix) -> RankMatrix {
    m.nabla_of_inverse()
}

/// Number of order ideals of the fence poset of `word`.
pub fn ideal_count(word: &FenceWord) -> BigInt {
    nabla(word).submodule_count()
}

/// A finite directed graph with deduplicated arrows. Self-loops are allowed;
/// they never constrain closed subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self, FenceError> {
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(FenceError::BadArrow(s, t));
        }
        let mut arrows = arrows;
        arrows.sort_unstable();
        arrows.dedup();
        Ok(Digraph { vertices, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// The oriented cycle on `n` vertices.
    pub fn oriented_cycle(n: usize) -> Digraph {
        let arrows = (0..n).map(|k| (k, (k + 1) % n)).collect();
        Digraph::new(n, arrows).expect("cycle arrows are in range")
    }
}

/// Number of vertex sets `S` with `v ∈ S, v -> w ⟹ w ∈ S`, by exhaustive
/// enumeration of all `2^n` subsets.
pub fn closed_subset_count(g: &Digraph) -> Result<u64, FenceError> {
    closed_subset_count_capped(g, DEFAULT_ENUMERATION_CAP)
}

pub fn closed_subset_count_capped(g: &Digraph, cap: usize) -> Result<u64, FenceError> {
    let n = g.vertex_count();
    let cap = cap.min(MAX_ENUMERATION_CAP);
    if n > cap {
        return Err(FenceError::TooLarge { vertices: n, cap });
    }
    // Gray-code walk over all subsets; `broken` counts arrows s -> t with
    // s inside and t outside. Toggling one vertex only touches its arrows.
    let proper: Vec<(usize, usize)> = g.arrows().iter().copied().filter(|(s, t)| s != t).collect();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(s, t) in &proper {
        incident[s].push((s, t));
        incident[t].push((s, t));
    }
    let mut member = vec![false; n];
    let mut broken: i64 = 0;
    let mut count: u64 = 1; // the empty set
    let total: u64 = 1u64 << n;
    for step in 1..total {
        let v = step.trailing_zeros() as usize;
        for &(s, t) in &incident[v] {
            if member[s] && !member[t] {
                broken -= 1;
            }
        }
        member[v] = !member[v];
        for &(s, t) in &incident[v] {
            if member[s] && !member[t] {
                broken += 1;
            }
        }
        if broken == 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// `↻β`: the word `β` closed up by an extra `Down` arrow from its last
/// vertex back to its first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    word: FenceWord,
}

impl CyclicWord {
    pub fn new(word: FenceWord) -> Self {
        CyclicWord { word }
    }

    pub fn word(&self) -> &FenceWord {
        &self.word
    }

    pub fn vertex_count(&self) -> usize {
        self.word.vertex_count()
    }

    /// An oriented cycle: no band-module reading, but the count is still defined.
    pub fn is_degenerate(&self) -> bool {
        self.word.is_all_down()
    }

    pub fn digraph(&self) -> Digraph {
        let open = self.word.digraph();
        let mut arrows = open.arrows().to_vec();
        arrows.push((self.word.len(), 0));
        Digraph::new(self.vertex_count(), arrows).expect("closing arrow is in range")
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "↻{}", self.word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandCount {
    pub count: BigInt,
    pub degenerate: bool,
}

/// Submodule count of the band module of `↻β`, as `trace ∇(β)`.
pub fn band_count(c: &CyclicWord) -> BandCount {
    BandCount {
        count: nabla(c.word()).entries().trace(),
        degenerate: c.is_degenerate(),
    }
}

/// `trace(∇(U_{p-1}) ∇(W) ∇(U_{q-1}) ∇(W⁻¹))`, the cyclic count of
/// `↻(U_{p-1} ↘ W ↘ U_{q-1} ↘ W⁻¹)`. Requires `p, q ≥ 1`.
pub fn two_puncture_trace(w: &FenceWord, p: usize, q: usize) -> BigInt {
    assert!(p >= 1 && q >= 1, "puncture degrees start at 1");
    let product = nabla(&FenceWord::up(p - 1))
        .entries()
        .mul(nabla(w).entries())
        .mul(nabla(&FenceWord::up(q - 1)).entries())
        .mul(nabla_of_inverse(&nabla(w)).entries());
    product.trace()
}

pub fn is_zero_or_one(x: &BigInt) -> bool {
    x.is_zero() || x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FenceWord {
        s.parse().unwrap()
    }

    fn m(e: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_i64(e)
    }

    /// Counts straight from the definition: all successor-closed subsets,
    /// split by membership of the leftmost and rightmost vertices.
    fn rank_matrix_oracle(word: &FenceWord) -> Mat2 {
        let g = word.digraph();
        let n = g.vertex_count();
        let (first, last) = (0, n - 1);
        let (mut r, mut r1, mut r0_, mut r01) = (0i64, 0i64, 0i64, 0i64);
        for mask in 0u32..(1 << n) {
            let inside = |v: usize| mask & (1 << v) != 0;
            if g.arrows().iter().any(|&(s, t)| inside(s) && !inside(t)) {
                continue;
            }
            r += 1;
            if inside(last) {
                r1 += 1;
            }
            if !inside(first) {
                r0_ += 1;
                if inside(last) {
                    r01 += 1;
                }
            }
        }
        m([[r, -r1], [r0_, -r01]])
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(nabla(&w("")).entries(), &m([[2, -1], [1, 0]]));
        assert_eq!(nabla(&w("DDUD")).entries(), &m([[11, -7], [8, -5]]));
        assert_eq!(nabla(&w("UUU")).entries(), &m([[5, -1], [1, 0]]));
        assert_eq!(nabla(&w("DD")).entries(), &m([[4, -3], [3, -2]]));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&w("DDUD")).entries(), &m([[7, 4], [5, 3]]));
        assert_eq!(delta(&w("")).entries(), &m([[1, 1], [0, 1]]));
        assert_eq!(delta(&w("DD")).entries(), &m([[3, 1], [2, 1]]));
        assert_eq!(delta(&w("DDUD")).to_nabla(), nabla(&w("DDUD")));
    }

    #[test]
    fn oracle_agrees_on_every_entry_for_short_words() {
        for len in 0..=8usize {
            for bits in 0u32..(1 << len) {
                let letters = (0..len)
                    .map(|k| if bits & (1 << k) != 0 { Letter::Up } else { Letter::Down })
                    .collect();
                let word = FenceWord::new(letters);
                assert_eq!(nabla(&word).entries(), &rank_matrix_oracle(&word), "word {word}");
            }
        }
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("DDUD").invert(), w("UDUU"));
        assert_eq!(w("").invert(), w(""));
        assert_eq!(w("UU").invert(), w("DD"));
    }

    #[test]
    fn nabla_of_inverse_examples() {
        // Frozen from the definitional oracle on "UDUU".
        assert_eq!(rank_matrix_oracle(&w("UDUU")), m([[11, -3], [4, -1]]));
        let got = nabla_of_inverse(&nabla(&w("DDUD")));
        assert_eq!(got.entries(), &m([[11, -3], [4, -1]]));

        let point = nabla(&w(""));
        assert_eq!(nabla_of_inverse(&point), point);

        let u3 = nabla(&w("UUU"));
        assert_eq!(nabla_of_inverse(&u3).entries(), &m([[5, -4], [4, -3]]));
        assert_eq!(rank_matrix_oracle(&w("DDD")), m([[5, -4], [4, -3]]));
    }

    #[test]
    fn ideal_count_examples() {
        assert_eq!(ideal_count(&w("DDUD")), BigInt::from(11));
        assert_eq!(ideal_count(&w("")), BigInt::from(2));
        assert_eq!(ideal_count(&w("D")), BigInt::from(3));
    }

    #[test]
    fn closed_subset_examples() {
        assert_eq!(closed_subset_count(&w("DDUD").digraph()), Ok(11));
        assert_eq!(closed_subset_count(&Digraph::new(1, vec![]).unwrap()), Ok(2));
        assert_eq!(closed_subset_count(&Digraph::oriented_cycle(3)), Ok(2));
        assert_eq!(closed_subset_count(&Digraph::new(0, vec![]).unwrap()), Ok(1));
    }

    #[test]
    fn closed_subset_cap() {
        let big = FenceWord::down(DEFAULT_ENUMERATION_CAP).digraph();
        assert_eq!(
            closed_subset_count(&big),
            Err(FenceError::TooLarge { vertices: DEFAULT_ENUMERATION_CAP + 1, cap: DEFAULT_ENUMERATION_CAP })
        );
        assert_eq!(closed_subset_count_capped(&big, 25), Ok(26));
    }

    #[test]
    fn band_examples() {
        let c = band_count(&CyclicWord::new(w("UDU")));
        assert_eq!(c.count, BigInt::from(7));
        assert!(!c.degenerate);
        assert_eq!(nabla(&w("U")).entries().mul(nabla(&w("U")).entries()), m([[8, -3], [3, -1]]));

        let c = band_count(&CyclicWord::new(w("UU")));
        assert_eq!(c.count, BigInt::from(4));

        let c = band_count(&CyclicWord::new(w("D")));
        assert_eq!(c.count, BigInt::from(2));
        assert!(c.degenerate);
    }

    #[test]
    fn band_digraph_matches_trace_for_short_words() {
        for len in 0..=10usize {
            for bits in 0u32..(1 << len) {
                let letters = (0..len)
                    .map(|k| if bits & (1 << k) != 0 { Letter::Up } else { Letter::Down })
                    .collect();
                let c = CyclicWord::new(FenceWord::new(letters));
                let brute = closed_subset_count(&c.digraph()).unwrap();
                assert_eq!(band_count(&c).count, BigInt::from(brute), "band {c}");
            }
        }
    }

    #[test]
    fn segment_closed_forms() {
        for t in 0..12i64 {
            assert_eq!(nabla(&FenceWord::up(t as usize)).entries(), &m([[t + 2, -1], [1, 0]]));
            assert_eq!(nabla(&FenceWord::down(t as usize)).entries(), &m([[t + 2, -(t + 1)], [t + 1, -t]]));
            assert_eq!(delta(&FenceWord::up(t as usize)).entries(), &m([[1, t + 1], [0, 1]]));
            assert_eq!(delta(&FenceWord::down(t as usize)).entries(), &m([[t + 1, 1], [t, 1]]));
        }
    }

    #[test]
    fn linking_multiplies() {
        // ∇(D₁) · ∇(D₁ with the right end extended by an Up arrow).
        let left = w("D");
        let right = w("U");
        assert_eq!(nabla(&left).entries(), &m([[3, -2], [2, -1]]));
        assert_eq!(nabla(&right).entries(), &m([[3, -1], [1, 0]]));
        assert_eq!(
            nabla(&left.link(&right)).entries(),
            &nabla(&left).entries().mul(nabla(&right).entries())
        );
    }

    #[test]
    fn parse_rejects_other_letters() {
        assert_eq!("DXUD".parse::<FenceWord>(), Err(FenceError::BadLetter('X')));
        assert_eq!(w("DDUD").to_string(), "DDUD");
    }

    #[test]
    fn spec_case_one_word_trace() {
        let word = FenceWord::up(0)
            .link(&w("D"))
            .link(&FenceWord::up(3))
            .link(&w("D").invert());
        assert_eq!(word, w("DDDUUUDU"));
        let expected = m([[2, -1], [1, 0]])
            .mul(&m([[3, -2], [2, -1]]))
            .mul(&m([[5, -1], [1, 0]]))
            .mul(&m([[3, -1], [1, 0]]));
        assert_eq!(expected.trace(), BigInt::from(34));
        assert_eq!(band_count(&CyclicWord::new(word)).count, BigInt::from(34));
        assert_eq!(two_puncture_trace(&w("D"), 1, 4), BigInt::from(34));
    }
}
