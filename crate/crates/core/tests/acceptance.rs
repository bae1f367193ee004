//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use holes_core::harness::{
    fit_power_law, lemma1_threshold, run_sweep, strip_timings, verify_pipeline, Engine,
    SweepConfig, VerifyConfig,
};
use holes_core::{
    brute_force_balanced_tetrahedra, brute_force_triangles, generate_random2, generate_random3, lemma1_construct,
    orient2d, orient3d, radial_sweep_triangles, rotating_line_triangles, theorem_construct, Orientation, Pattern,
    PlanarSet, Point2, Point3, SpatialSet, Triangle, MAX_COORD,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const BOUND: i64 = MAX_COORD as i64;

struct Outcome {
    pass: bool,
    summary: String,
    limit: Duration,
}

fn sign(v: &BigInt) -> Orientation {
    if v.is_zero() {
        Orientation::Zero
    } else if v.is_positive() {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

fn big_orient2(p: [[i32; 2]; 3]) -> Orientation {
    let b = |i: usize, k: usize| BigInt::from(p[i][k]) - BigInt::from(p[0][k]);
    sign(&(b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0)))
}

fn big_orient3(p: [[i32; 3]; 4]) -> Orientation {
    let m: Vec<Vec<BigInt>> = (1..4).map(|i| (0..3).map(|k| BigInt::from(p[i][k]) - BigInt::from(p[0][k])).collect()).collect();
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    sign(&det)
}

fn coord(rng: &mut ChaCha8Rng) -> i32 {
    match rng.gen_range(0..4) {
        0 => MAX_COORD,
        1 => -MAX_COORD,
        2 => rng.gen_range(-4..=4),
        _ => rng.gen_range(-MAX_COORD..=MAX_COORD),
    }
}

/// Half the tuples are built with a dependent last point so zero signs occur.
fn criterion1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let (mut mismatches, mut zeros) = (0usize, 0usize);
    let tuples = 100_000;
    for i in 0..tuples {
        if i % 2 == 0 {
            let mut p = [[0i32; 2]; 3];
            p.iter_mut().flatten().for_each(|c| *c = coord(&mut rng));
            if i % 4 == 0 {
                let (dx, dy) = (p[1][0] as i64 - p[0][0] as i64, p[1][1] as i64 - p[0][1] as i64);
                let t = rng.gen_range(-2i64..=2);
                let (x, y) = (p[0][0] as i64 + t * dx, p[0][1] as i64 + t * dy);
                if x.abs() <= BOUND && y.abs() <= BOUND {
                    p[2] = [x as i32, y as i32];
                }
            }
            let want = big_orient2(p);
            let pts = p.map(|[x, y]| Point2::new(x, y));
            zeros += want.is_zero() as usize;
            mismatches += (orient2d(&pts[0], &pts[1], &pts[2]) != want) as usize;
        } else {
            let mut p = [[0i32; 3]; 4];
            p.iter_mut().flatten().for_each(|c| *c = coord(&mut rng));
            if i % 4 == 1 {
                let (s, t) = (rng.gen_range(-1i64..=1), rng.gen_range(-1i64..=1));
                let d: [i64; 3] = std::array::from_fn(|k| {
                    p[0][k] as i64 + s * (p[1][k] as i64 - p[0][k] as i64) + t * (p[2][k] as i64 - p[0][k] as i64)
                });
                if d.iter().all(|c| c.abs() <= BOUND) {
                    p[3] = d.map(|c| c as i32);
                }
            }
            let want = big_orient3(p);
            let pts = p.map(|[x, y, z]| Point3::new(x, y, z));
            zeros += want.is_zero() as usize;
            mismatches += (orient3d(&pts[0], &pts[1], &pts[2], &pts[3]) != want) as usize;
        }
    }
    Outcome {
        pass: mismatches == 0 && zeros > 0,
        summary: format!("{tuples} tuples, {mismatches} mismatches, {zeros} degenerate"),
        limit: Duration::from_secs(10),
    }
}

fn criterion2() -> Outcome {
    let seeds = [11u64, 12, 13, 14, 15];
    let per_seed = 40;
    let mismatches: usize = seeds
        .par_iter()
        .map(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = 0;
            for k in 0..per_seed {
                let total = rng.gen_range(6..=20);
                let red = rng.gen_range(1..total);
                let set: PlanarSet = generate_random2(red, total - red, seed * 1000 + k, BOUND).unwrap();
                for pat in Pattern::ALL {
                    if radial_sweep_triangles(&set, pat) != brute_force_triangles(&set, pat) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    Outcome {
        pass: mismatches == 0,
        summary: format!("{} sets x 4 patterns, {mismatches} mismatches", seeds.len() as u64 * per_seed),
        limit: Duration::from_secs(60),
    }
}

const SIZES2: [usize; 4] = [22, 30, 50, 80];

fn planar_instances() -> Vec<(usize, u64, PlanarSet)> {
    SIZES2
        .iter()
        .flat_map(|&n| (0..25u64).map(move |t| (n, 300_000 + n as u64 * 100 + t)))
        .map(|(n, seed)| (n, seed, generate_random2(n, n, seed, BOUND).unwrap()))
        .collect()
}

fn criterion3(sets: &[(usize, u64, PlanarSet)], oracle: &[BTreeSet<Triangle>]) -> Outcome {
    let mut failures = Vec::new();
    let mut min_ratio = f64::INFINITY;
    for ((n, seed, _), rrb) in sets.iter().zip(oracle) {
        let t = lemma1_threshold(*n);
        min_ratio = min_ratio.min(rrb.len() as f64 / t as f64);
        if (rrb.len() as u64) < t {
            failures.push(format!("n={n} seed={seed}: {} < {t}", rrb.len()));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        summary: format!("{} sets, minimum count/threshold ratio {min_ratio:.1} {failures:?}", sets.len()),
        limit: Duration::from_secs(300),
    }
}

fn criterion4(sets: &[(usize, u64, PlanarSet)], oracle: &[BTreeSet<Triangle>]) -> Outcome {
    let results: Vec<(usize, usize, usize, usize, usize)> = sets
        .par_iter()
        .zip(oracle)
        .map(|((_, _, set), rrb)| {
            let w = lemma1_construct(set).unwrap();
            let outside = w.triangles.iter().filter(|t| !rrb.contains(t) || t.pattern != Pattern::RedRedBlue).count();
            let intervals: Vec<_> = w.anchors.iter().flat_map(|a| a.intervals.iter()).collect();
            let short_intervals = intervals.iter().filter(|r| r.emitted < r.required || !r.hull_clean).count();
            let short_anchors = w.anchors.iter().filter(|a| a.large_m_emitted < a.large_m_required).count();
            (outside + w.rejected, short_intervals, short_anchors, intervals.len(), w.anchors.len())
        })
        .collect();
    let sum = |f: fn(&(usize, usize, usize, usize, usize)) -> usize| results.iter().map(f).sum::<usize>();
    let (unsound, short_i, short_a) = (sum(|r| r.0), sum(|r| r.1), sum(|r| r.2));
    Outcome {
        pass: unsound == 0 && short_i == 0 && short_a == 0,
        summary: format!(
            "{unsound} unsound triangles; {short_i}/{} intervals and {short_a}/{} anchors below their counts",
            sum(|r| r.3),
            sum(|r| r.4)
        ),
        limit: Duration::from_secs(300),
    }
}

fn spatial_instances() -> Vec<(usize, u64, SpatialSet)> {
    [6usize, 10, 15]
        .iter()
        .flat_map(|&n| (0..if n == 15 { 34u64 } else { 33 }).map(move |t| (n, 500_000 + n as u64 * 100 + t)))
        .map(|(n, seed)| (n, seed, generate_random3(n, n, seed, BOUND).unwrap()))
        .collect()
}

struct SpatialRun {
    unsound: usize,
    max_multiplicity: usize,
    skipped: usize,
    side_violations: usize,
    apexes: usize,
}

fn run_spatial(sets: &[(usize, u64, SpatialSet)]) -> Vec<SpatialRun> {
    sets.par_iter()
        .map(|(_, _, set)| {
            let oracle = brute_force_balanced_tetrahedra(set);
            let out = theorem_construct(set).unwrap();
            SpatialRun {
                unsound: out.tetrahedra.iter().filter(|t| !oracle.contains(t) || !t.is_balanced()).count() + out.rejected(),
                max_multiplicity: out.max_multiplicity(),
                skipped: out.skipped_apexes(),
                side_violations: out.apexes.iter().filter(|a| !a.side_invariant_holds()).count(),
                apexes: out.apexes.len(),
            }
        })
        .collect()
}

fn criterion5(runs: &[SpatialRun]) -> Outcome {
    let unsound: usize = runs.iter().map(|r| r.unsound).sum();
    let mult = runs.iter().map(|r| r.max_multiplicity).max().unwrap_or(0);
    Outcome {
        pass: unsound == 0 && mult <= 2,
        summary: format!("{} sets, {unsound} unsound tetrahedra, max multiplicity {mult}", runs.len()),
        limit: Duration::from_secs(300),
    }
}

fn criterion6(runs: &[SpatialRun]) -> Outcome {
    let skipped: usize = runs.iter().map(|r| r.skipped).sum();
    let violations: usize = runs.iter().map(|r| r.side_violations).sum();
    let apexes: usize = runs.iter().map(|r| r.apexes).sum();
    Outcome {
        pass: skipped == 0 && violations == 0,
        summary: format!("{apexes} apexes, {skipped} skipped, {violations} side-count violations"),
        limit: Duration::from_secs(300),
    }
}

/// Returns (total, rotating-line triangles outside the oracle, pairs with a
/// nonempty side that emitted nothing).
fn quadratic_stats(set: &PlanarSet) -> (usize, usize, usize) {
    let rrb = brute_force_triangles(set, Pattern::RedRedBlue);
    let bbr = brute_force_triangles(set, Pattern::BlueBlueRed);
    let line = rotating_line_triangles(set);
    let outside = line.triangles.iter().filter(|t| !rrb.contains(t) && !bbr.contains(t)).count();
    let n = set.red_count();
    let silent = 2 * n * set.blue_count() - line.emissions.len() - line.empty_sides;
    (rrb.len() + bbr.len(), outside, silent)
}

fn criterion7() -> Outcome {
    let confirm: Vec<(usize, usize)> = (3..=8usize)
        .into_par_iter()
        .map(|n| {
            let short = (0..300u64)
                .filter(|&t| {
                    let set: PlanarSet = generate_random2(n, n, 700_000 + n as u64 * 1000 + t, 64).unwrap();
                    quadratic_stats(&set).0 < n * n
                })
                .count();
            (n, short)
        })
        .collect();
    let pre_short: usize = confirm.iter().map(|c| c.1).sum();

    let cases: Vec<(usize, u64)> = [10usize, 20, 40]
        .iter()
        .flat_map(|&n| (0..if n == 40 { 34u64 } else { 33 }).map(move |t| (n, 800_000 + n as u64 * 100 + t)))
        .collect();
    let stats: Vec<(usize, u64, (usize, usize, usize))> = cases
        .par_iter()
        .map(|&(n, seed)| (n, seed, quadratic_stats(&generate_random2(n, n, seed, BOUND).unwrap())))
        .collect();
    let short: Vec<String> =
        stats.iter().filter(|s| s.2 .0 < s.0 * s.0).map(|s| format!("n={} seed={}", s.0, s.1)).collect();
    let outside: usize = stats.iter().map(|s| s.2 .1).sum();
    let silent: usize = stats.iter().map(|s| s.2 .2).sum();
    let min_ratio = stats.iter().map(|s| s.2 .0 as f64 / (s.0 * s.0) as f64).fold(f64::INFINITY, f64::min);
    Outcome {
        pass: pre_short == 0 && short.is_empty() && outside == 0 && silent == 0,
        summary: format!(
            "small-n confirmation (n=3..8, 300 sets each) short {pre_short}; {} sets, min total/n^2 {min_ratio:.2}, \
             {outside} line triangles outside oracle, {silent} silent pairs {short:?}",
            stats.len()
        ),
        limit: Duration::from_secs(300),
    }
}

fn criterion8() -> Outcome {
    let mut worst = 0.0f64;
    for k in [0.5f64, 1.0, 2.0, 2.5, 3.0] {
        let samples: Vec<(f64, f64)> = [3.0f64, 7.0, 12.0, 40.0, 100.0].iter().map(|&n| (n, 1.7 * n.powf(k))).collect();
        worst = worst.max((fit_power_law(&samples).unwrap().slope - k).abs());
    }
    let cfg = SweepConfig {
        dim: 3,
        sizes: vec![8, 12, 16, 24, 32],
        trials: 10,
        seed: 900_000,
        engine: Engine::Oracle,
        coord_bound: BOUND,
        jobs: 0,
    };
    let report = run_sweep(&cfg).unwrap();
    let slope = report.fit.as_ref().map(|f| f.slope).unwrap_or(f64::NAN);
    Outcome {
        pass: worst <= 1e-9 && slope > 2.0,
        summary: format!(
            "synthetic slope error {worst:.1e}; 3D oracle slope {slope:.3} (reference lines 2.5 and 3.0)",
        ),
        limit: Duration::from_secs(600),
    }
}

fn criterion9() -> Outcome {
    let cfg = VerifyConfig::default();
    let runs: Vec<serde_json::Value> = (0..2)
        .map(|_| {
            let mut v = serde_json::to_value(verify_pipeline(&cfg)).unwrap();
            strip_timings(&mut v);
            v
        })
        .collect();
    let a = serde_json::to_string_pretty(&runs[0]).unwrap();
    let b = serde_json::to_string_pretty(&runs[1]).unwrap();
    let failed = runs[0]["failed"].as_u64().unwrap_or(u64::MAX);
    Outcome {
        pass: a == b && failed == 0,
        summary: format!("identical={} ({} bytes), {failed} failed checks", a == b, a.len()),
        limit: Duration::from_secs(120),
    }
}

fn report(id: usize, start: Instant, outcome: Outcome, failures: &mut usize) {
    let elapsed = start.elapsed();
    let pass = outcome.pass && elapsed <= outcome.limit;
    *failures += !pass as usize;
    println!(
        "criterion {id}: {} {} [{:.1}s, limit {}s]",
        if pass { "PASS" } else { "FAIL" },
        outcome.summary,
        elapsed.as_secs_f64(),
        outcome.limit.as_secs()
    );
}

fn main() -> ExitCode {
    let mut failures = 0;
    let t = Instant::now();
    report(1, t, criterion1(), &mut failures);
    let t = Instant::now();
    report(2, t, criterion2(), &mut failures);

    let t = Instant::now();
    let sets = planar_instances();
    let oracle: Vec<BTreeSet<Triangle>> =
        sets.par_iter().map(|(_, _, s)| brute_force_triangles(s, Pattern::RedRedBlue)).collect();
    report(3, t, criterion3(&sets, &oracle), &mut failures);
    let t = Instant::now();
    report(4, t, criterion4(&sets, &oracle), &mut failures);

    let t = Instant::now();
    let runs = run_spatial(&spatial_instances());
    let shared = t.elapsed();
    report(5, t, criterion5(&runs), &mut failures);
    let t6 = Instant::now() - shared;
    report(6, t6, criterion6(&runs), &mut failures);

    let t = Instant::now();
    report(7, t, criterion7(), &mut failures);
    let t = Instant::now();
    report(8, t, criterion8(), &mut failures);
    let t = Instant::now();
    report(9, t, criterion9(), &mut failures);

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
