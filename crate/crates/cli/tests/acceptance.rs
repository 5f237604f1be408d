//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs with its own harness so the result lines are always printed.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tubefrieze::fence::{
    band_count, closed_subset_count, delta, ideal_count, invert, nabla, nabla_of_inverse, CyclicWord, FenceWord,
    Letter, Mat2,
};
use tubefrieze::frieze::{chebyshev_growth, generate, growth, polygon_quiddity, FriezeStatus, Quiddity};
use tubefrieze::surface::{add_ears, boundary_quiddity, quasi_simple_digraph, random_triangulation, CaseTag, GenParams};
use tubefrieze::tubes::{
    mesh_step, tau_inverse_peripheral, tau_peripheral, tau_tagged, tube_report, GrowthField, MeshDirection,
    PeripheralArcCoord, TaggedPQArc, TubeReport,
};
use tubefrieze::DiskTriangulation;

const TIME_LIMIT: Duration = Duration::from_secs(5);

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn quid(v: &[u64]) -> Quiddity {
    Quiddity::from_u64s(v).unwrap()
}

fn sorted(row: &[BigInt]) -> Vec<BigInt> {
    let mut v = row.to_vec();
    v.sort();
    v
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> FenceWord {
    let len = rng.gen_range(0..=max_len);
    FenceWord::new((0..len).map(|_| if rng.gen() { Letter::Up } else { Letter::Down }).collect())
}

/// Number of vertex sets `S` closed under following arrows, by testing every
/// subset of `0..n`.
fn brute_closed_subsets(n: usize, arrows: &[(usize, usize)]) -> u64 {
    (0u64..1 << n)
        .filter(|s| arrows.iter().all(|&(a, b)| s >> a & 1 == 0 || s >> b & 1 == 1))
        .count() as u64
}

/// Arrows of the path quiver of `w`: a `D` points right, a `U` points left.
fn path_arrows(w: &[Letter], first: usize) -> Vec<(usize, usize)> {
    w.iter()
        .enumerate()
        .map(|(k, l)| match l {
            Letter::Down => (first + k, first + k + 1),
            Letter::Up => (first + k + 1, first + k),
        })
        .collect()
}

/// Order ideals of the fence of `w`, with the path bits checked by shifting.
fn brute_ideal_count(w: &FenceWord) -> BigInt {
    let n = w.len() + 1;
    let (mut right, mut left) = (0u64, 0u64);
    for (k, l) in w.letters().iter().enumerate() {
        match l {
            Letter::Down => right |= 1 << k,
            Letter::Up => left |= 1 << k,
        }
    }
    // Arrow k -> k+1 needs bit k+1 whenever bit k is set, and k+1 -> k the reverse.
    let count = (0u64..1 << n).filter(|&s| s & right & !(s >> 1) == 0 && (s >> 1) & left & !s == 0).count();
    BigInt::from(count)
}

fn fixture(name: &str) -> DiskTriangulation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.json"));
    DiskTriangulation::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

const FIXTURES: [&str; 5] = ["case_ii_minimal", "case_iii_minimal", "triangul_quidd", "case_i_single_crossing", "case_i_du_strip"];

fn frieze_reproduction() -> Check {
    let expect = |q: &[u64], rows: &[&[i64]]| -> Check {
        let f = generate(&quid(q), rows.len() + 1).map_err(|e| e.to_string())?;
        for (k, want) in rows.iter().enumerate() {
            let r = k as isize + 2;
            let got = sorted(f.row(r).ok_or(format!("row {r} missing"))?);
            let want = sorted(&want.iter().map(|&x| int(x)).collect::<Vec<_>>());
            ensure!(got == want, "{q:?} row {r}: {got:?} != {want:?}");
        }
        Ok(())
    };
    expect(&[4, 2, 2], &[&[7, 7, 3], &[12, 10, 10], &[17, 17, 33], &[24, 56, 56]])?;
    expect(&[5, 2], &[&[9, 9], &[16, 40], &[71, 71]])
}

fn growth_values() -> Check {
    for (q, s) in [(&[4, 2, 2][..], 8), (&[5, 2], 8), (&[2, 3], 4), (&[2, 3, 2, 3], 14), (&[4], 4), (&[5], 5), (&[6], 6)] {
        let got = growth(&quid(q)).map_err(|e| e.to_string())?;
        ensure!(got == int(s), "growth {q:?} = {got}, expected {s}");
    }
    ensure!(chebyshev_growth(&int(4), 2) == int(14), "chebyshev_growth(4, 2) != 14");
    Ok(())
}

fn rank_matrices() -> Check {
    let w: FenceWord = "DDUD".parse().unwrap();
    ensure!(ideal_count(&w) == int(11), "ideal count {}", ideal_count(&w));
    ensure!(nabla(&w).entries() == &Mat2::from_i64([[11, -7], [8, -5]]), "nabla {}", nabla(&w).entries());
    ensure!(delta(&w).entries() == &Mat2::from_i64([[7, 4], [5, 3]]), "delta {}", delta(&w).entries());
    let (first, second): (FenceWord, FenceWord) = ("D".parse().unwrap(), "UD".parse().unwrap());
    ensure!(first.link(&second) == w, "D linked to UD is {}", first.link(&second));
    ensure!(nabla(&first).entries() == &Mat2::from_i64([[3, -2], [2, -1]]), "nabla(D) {}", nabla(&first).entries());
    ensure!(nabla(&second).entries() == &Mat2::from_i64([[5, -3], [2, -1]]), "nabla(UD) {}", nabla(&second).entries());
    let product = nabla(&first).entries().mul(nabla(&second).entries());
    ensure!(product == Mat2::from_i64([[11, -7], [8, -5]]), "product {product}");

    let out = cli(&["fence", "--word", "DDUD"]);
    ensure!(out.0 == Some(0), "fence exit {:?}", out.0);
    ensure!(out.1 == "ideal count  11\nnabla        [[11,-7],[8,-5]]\ndelta        [[7,4],[5,3]]\n", "fence output {:?}", out.1);
    Ok(())
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let to_delta = Mat2::from_i64([[0, 1], [-1, 1]]);
    for _ in 0..1000 {
        let w = random_word(&mut rng, 18);
        let (n, d) = (nabla(&w), delta(&w));
        let brute = brute_ideal_count(&w);
        ensure!(n.entries().get(0, 0) == &brute, "{w}: nabla(0,0) {} vs brute {brute}", n.entries().get(0, 0));
        ensure!(n.entries().det() == int(1) && d.entries().det() == int(1), "{w}: determinant");
        ensure!(d.entries() == &n.entries().mul(&to_delta), "{w}: delta is not nabla times the conversion");
        ensure!(nabla_of_inverse(&n) == nabla(&invert(&w)), "{w}: inverse formula");
        ensure!(brute_ideal_count(&invert(&w)) == brute && brute_ideal_count(&w.flipped()) == brute, "{w}: symmetry");
    }
    Ok(())
}

fn trace_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let (p, q) = (rng.gen_range(1..=6usize), rng.gen_range(1..=6usize));
        // Keep the cyclic quiver at 16 vertices or fewer for the brute count.
        let w = random_word(&mut rng, (14 - p - q) / 2);
        let a = ideal_count(&w);
        let expected: BigInt = &a * &a * BigInt::from(p * q) - 2;
        let product = nabla(&FenceWord::up(p - 1))
            .entries()
            .mul(nabla(&w).entries())
            .mul(nabla(&FenceWord::up(q - 1)).entries())
            .mul(nabla(&w.invert()).entries());
        ensure!(product.trace() == expected, "W={w} p={p} q={q}: trace {} != {expected}", product.trace());

        // Four arcs glued head to tail around a cycle, each joined to the next by one more arrow.
        let pieces = [FenceWord::up(p - 1), w.clone(), FenceWord::up(q - 1), w.invert()];
        let mut arrows = Vec::new();
        let mut spans = Vec::new();
        let mut next = 0;
        for piece in &pieces {
            arrows.extend(path_arrows(piece.letters(), next));
            spans.push((next, next + piece.len()));
            next += piece.len() + 1;
        }
        for k in 0..4 {
            arrows.push((spans[k].1, spans[(k + 1) % 4].0));
        }
        let brute = BigInt::from(brute_closed_subsets(next, &arrows));
        ensure!(brute == expected, "W={w} p={p} q={q}: brute {brute} != {expected}");
        let beta = FenceWord::up(p - 1).link(&w).link(&FenceWord::up(q - 1)).link(&w.invert());
        ensure!(band_count(&CyclicWord::new(beta)).count == expected, "W={w} p={p} q={q}: band count");
    }
    Ok(())
}

/// Triangles of a random triangulation of the polygon on `v`.
fn random_triangles(rng: &mut ChaCha8Rng, v: &[usize], out: &mut Vec<[usize; 3]>) {
    if v.len() < 3 {
        return;
    }
    let last = v.len() - 1;
    let apex = rng.gen_range(1..last);
    out.push([v[0], v[apex], v[last]]);
    random_triangles(rng, &v[..=apex], out);
    random_triangles(rng, &v[apex..], out);
}

fn conway_coxeter() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.gen_range(4..=12usize);
        let vertices: Vec<usize> = (1..=n).collect();
        let mut triangles = Vec::new();
        random_triangles(&mut rng, &vertices, &mut triangles);
        let mut diagonals = Vec::new();
        for t in &triangles {
            for (x, y) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if y - x > 1 && !(x == 1 && y == n) && !diagonals.contains(&(x, y)) {
                    diagonals.push((x, y));
                }
            }
        }
        let counts: Vec<u64> = (1..=n).map(|i| triangles.iter().filter(|t| t.contains(&i)).count() as u64).collect();
        let q = polygon_quiddity(n, &diagonals).map_err(|e| e.to_string())?;
        ensure!(q == quid(&counts), "n={n} {diagonals:?}: quiddity {q} vs {counts:?}");
        let f = generate(&q, n).map_err(|e| e.to_string())?;
        ensure!(f.status() == FriezeStatus::ClosedAtRow(n - 2), "{q}: status {}", f.status());
        for r in 1..=(n as isize - 3) {
            let row = f.row(r).unwrap();
            ensure!(row.iter().all(|x| x >= &int(1)), "{q}: row {r} not positive");
            ensure!(row.iter().any(|x| x != &int(1)), "{q}: row {r} is trivial");
        }
        ensure!(f.row(n as isize - 1).unwrap().iter().all(|x| x == &int(0)), "{q}: no row of 0s after closure");
    }
    Ok(())
}

fn growth_fields_equal(r: &TubeReport, s: i64) -> Check {
    ensure!(r.growth_formula == int(s), "formula {}", r.growth_formula);
    for (name, g) in r.growth_fields() {
        ensure!(g == &GrowthField::Value(int(s)), "{name} = {g}, expected {s}");
    }
    ensure!(r.all_equal, "all_equal is false");
    Ok(())
}

fn fixture_reports() -> Check {
    let report = |name| tube_report(&fixture(name)).map_err(|e| format!("{name}: {e}"));
    let r = report("case_ii_minimal")?;
    ensure!((r.case, r.p, r.q, r.a.clone()) == (CaseTag::II, 3, 3, int(1)), "case II header {:?}", (r.case, r.p, r.q, &r.a));
    ensure!((&r.quid1, &r.quid2, &r.quid3) == (&quid(&[3, 3]), &quid(&[1, 9]), &quid(&[3, 3])), "case II quiddities");
    growth_fields_equal(&r, 7)?;

    let r = report("case_iii_minimal")?;
    ensure!(matches!(r.case, CaseTag::III { .. }) && (r.p, r.q, r.a.clone()) == (6, 1, int(1)), "case III header");
    ensure!((&r.quid1, &r.quid2, &r.quid3) == (&quid(&[3, 2]), &quid(&[1, 6]), &quid(&[6, 1])), "case III quiddities");
    growth_fields_equal(&r, 4)?;

    let r = report("triangul_quidd")?;
    ensure!(r.quid1 == quid(&[7, 1, 4, 2, 2]), "boundary quiddity {}", r.quid1);
    ensure!(r.quid2 == quid(&[3, 12]) && r.quid3 == quid(&[3, 12]), "small tubes {} {}", r.quid2, r.quid3);
    growth_fields_equal(&r, 34)
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tubefrieze")).args(args).output().expect("binary runs");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn randomized_verification() -> Check {
    let (code, out) = cli(&["disk", "verify", "--random", "100", "--seed", "42"]);
    ensure!(code == Some(0), "exit code {code:?}");
    let last = out.lines().last().unwrap_or("");
    ensure!(last.starts_with("100/100 "), "summary line {last:?}");
    ensure!(out.lines().filter(|l| l.ends_with(" ok")).count() == 100, "not every instance reported ok");
    Ok(())
}

fn quasi_simple_quiddities() -> Check {
    let mut instances: Vec<(String, DiskTriangulation)> = FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..50 {
        let (p, q) = (rng.gen_range(1..=4usize), rng.gen_range(1..=4usize));
        let b = (p + q).saturating_sub(2).max(1) + rng.gen_range(0..=4);
        let seed = rng.gen();
        let mut t = random_triangulation(seed, GenParams::case_i(b, p, q)).map_err(|e| e.to_string())?;
        // Every other instance gets a few ears so that peripheral arcs show up too.
        if k % 2 == 1 {
            for _ in 0..rng.gen_range(1..=3) {
                let i = rng.gen_range(1..=t.b);
                t = add_ears(&t, i);
            }
        }
        instances.push((format!("seed {seed} b={b} p={p} q={q}"), t));
    }
    for (name, t) in &instances {
        let quid = boundary_quiddity(t);
        for i in 1..=t.b {
            let count = match quasi_simple_digraph(t, i).map_err(|e| format!("{name}: {e}"))? {
                Some(g) => closed_subset_count(&g).map_err(|e| format!("{name}: {e}"))?,
                None => 1,
            };
            ensure!(BigInt::from(count) == quid.entries()[i - 1], "{name} vertex {i}: {count} vs {}", quid.entries()[i - 1]);
        }
    }
    Ok(())
}

fn navigation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    while checked < 100 {
        let n = rng.gen_range(1..=12usize);
        let Ok(c) = PeripheralArcCoord::new(rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(0..4), n) else {
            continue;
        };
        checked += 1;
        let mut x = c;
        for _ in 0..n {
            x = tau_peripheral(x, n);
        }
        ensure!(x == c, "{c:?}: tau^{n} gives {x:?}");
        let long = mesh_step(c, MeshDirection::Lengthen, n).ok_or(format!("{c:?}: lengthen undefined"))?;
        ensure!(mesh_step(long, MeshDirection::Shorten, n) == Some(tau_inverse_peripheral(c, n)), "{c:?}: lengthen then shorten");
        if let Some(short) = mesh_step(c, MeshDirection::Shorten, n) {
            ensure!(mesh_step(short, MeshDirection::Lengthen, n) == Some(tau_inverse_peripheral(c, n)), "{c:?}: shorten then lengthen");
        }
    }
    for x in TaggedPQArc::ALL {
        ensure!(tau_tagged(tau_tagged(x)) == x, "{x:?}: tau_tagged twice");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("frieze reproduction", frieze_reproduction),
        ("growth values", growth_values),
        ("rank matrices", rank_matrices),
        ("oracle equivalence", oracle_equivalence),
        ("trace identity", trace_identity),
        ("Conway-Coxeter closure", conway_coxeter),
        ("tube reports on fixtures", fixture_reports),
        ("randomized tube verification", randomized_verification),
        ("quiddity from quasi-simples", quasi_simple_quiddities),
        ("tube navigation", navigation),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= TIME_LIMIT) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over {}s)", TIME_LIMIT.as_secs()),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2}  {name:<30} {:>8.1?}  {verdict}", k + 1, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
