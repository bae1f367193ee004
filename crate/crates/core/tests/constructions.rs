use std::collections::BTreeSet;

use holes_core::{
    brute_force_balanced_tetrahedra, brute_force_triangles, central_project, choose_subinterval, generate_random2,
    generate_random3, halving_plane, in_triangle, lemma1_construct, orient2d, orient3d, radial_decompose,
    radial_sweep_triangles, rotating_line_triangles, BichromaticSet2, Branch, BichromaticSet3, Color, Orientation, Pattern,
    PlanarSet, Point2, Point3, Side, SpatialSet, MAX_COORD,
};

fn planar(items: &[(i32, i32, Color)]) -> PlanarSet {
    BichromaticSet2::from_colored(items.iter().map(|&(x, y, c)| (Point2::new(x, y), c)).collect()).unwrap()
}

fn map_points(set: &PlanarSet, f: impl Fn(i32, i32) -> (i32, i32)) -> PlanarSet {
    let items = set
        .iter()
        .map(|(p, c)| {
            let (x, y) = f(p.x, p.y);
            (Point2::new(x, y), c)
        })
        .collect();
    BichromaticSet2::from_colored(items).unwrap()
}

fn rotations_equal(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|s| a.iter().cycle().skip(s).take(a.len()).eq(b.iter()))
}

use Color::{Blue as B, Red as R};

#[test]
fn radial_order_matches_atan2() {
    let s = planar(&[
        (0, 0, R),
        (10, 1, B),
        (3, 9, R),
        (-7, 4, R),
        (-9, -2, B),
        (-1, -8, R),
        (6, -5, R),
        (8, 7, B),
        (-4, 11, R),
    ]);
    let dec = radial_decompose(&s, 0).unwrap();
    let mut oracle: Vec<usize> = (1..s.len()).collect();
    // Clockwise means decreasing polar angle.
    oracle.sort_by(|&a, &b| {
        let ang = |i: usize| (s.point(i).y as f64).atan2(s.point(i).x as f64);
        ang(b).partial_cmp(&ang(a)).unwrap()
    });
    assert!(rotations_equal(&dec.order, &oracle), "{:?} vs {:?}", dec.order, oracle);
    let runs: Vec<Vec<usize>> = (0..dec.m()).map(|i| dec.interval_indices(i)).collect();
    let mut reds: Vec<usize> = runs.iter().flatten().copied().collect();
    reds.sort_unstable();
    assert_eq!(reds, vec![2, 3, 5, 6, 8]);
    assert_eq!(dec.m(), 2);
}

#[test]
fn wide_interval_gets_a_half_turn_subrun() {
    // Reds around three quarters of the anchor, one blue closing the circle.
    let s = planar(&[
        (0, 0, R),
        (20, 1, R),
        (14, 15, R),
        (1, 21, R),
        (-15, 13, R),
        (-22, -1, R),
        (-13, -16, R),
        (2, -19, B),
    ]);
    let dec = radial_decompose(&s, 0).unwrap();
    assert_eq!(dec.m(), 1);
    let run = dec.interval_indices(0);
    assert_eq!(run.len(), 6);
    let sub = choose_subinterval(&s, &dec, 0).unwrap();
    let j = &sub.indices;
    assert!(j.len() >= 3);
    assert_eq!(orient2d(s.point(0), s.point(j[0]), s.point(*j.last().unwrap())), Orientation::Negative);
    let window = run.windows(j.len()).any(|w| w == j.as_slice());
    assert!(window, "{j:?} is not a contiguous part of {run:?}");
    let inside: Vec<usize> = (0..s.len())
        .filter(|q| !j.contains(q))
        .filter(|&q| {
            (1..j.len() - 1).any(|k| in_triangle(s.point(q), s.point(j[0]), s.point(j[k]), s.point(j[k + 1])).unwrap())
        })
        .collect();
    assert_eq!(sub.foreign_in_hull, inside);
}

#[test]
fn counts_survive_rigid_and_scaling_maps() {
    for seed in 0..12 {
        let s: PlanarSet = generate_random2(7, 6, seed, 10_000).unwrap();
        let images = [
            map_points(&s, |x, y| (x + 12_345, y - 777)),
            map_points(&s, |x, y| (3 * x, 3 * y)),
            map_points(&s, |x, y| (-y, x)),
        ];
        for pat in Pattern::ALL {
            let base = brute_force_triangles(&s, pat);
            for img in &images {
                assert_eq!(brute_force_triangles(img, pat), base);
                assert_eq!(radial_sweep_triangles(img, pat), base);
            }
        }
        let line = rotating_line_triangles(&s).triangles;
        let lemma = lemma1_construct(&s).unwrap().triangles.len();
        for img in &images[..2] {
            assert_eq!(rotating_line_triangles(img).triangles, line);
            assert_eq!(lemma1_construct(img).unwrap().triangles.len(), lemma);
        }
        assert_eq!(rotating_line_triangles(&images[2]).triangles, line);
    }
    let s3: SpatialSet = generate_random3(5, 5, 3, 1000).unwrap();
    let moved = BichromaticSet3::from_colored(
        s3.iter().map(|(p, c)| (Point3::new(p.x - 50, p.y + 9, 2 * p.z), c)).collect(),
    )
    .unwrap();
    assert_eq!(brute_force_balanced_tetrahedra(&moved), brute_force_balanced_tetrahedra(&s3));
}

/// A point lies in the open cone from the apex over triangle (a, b, c) iff it
/// is strictly on the inner side of the three faces through the apex.
fn in_cone(s: &SpatialSet, apex: usize, tri: [usize; 3], q: usize) -> bool {
    let [a, b, c] = tri.map(|i| s.point(i));
    let (p, q) = (s.point(apex), s.point(q));
    let same = |x: &Point3<i32>, y: &Point3<i32>, opp: &Point3<i32>| orient3d(p, x, y, q) == orient3d(p, x, y, opp);
    same(a, b, c) && same(b, c, a) && same(c, a, b)
}

#[test]
fn projection_is_faithful_to_cones() {
    let mut checked = 0;
    for seed in 0..6 {
        let s: SpatialSet = generate_random3(5, 5, seed, MAX_COORD as i64).unwrap();
        for p in s.indices_of(Color::Blue) {
            let plane = halving_plane(&s, p).unwrap();
            for side in [Side::Above, Side::Below] {
                let proj = central_project(&s, p, &plane, side).unwrap();
                let k = proj.base.len();
                for i in 0..k {
                    for j in i + 1..k {
                        for l in j + 1..k {
                            for q in (0..k).filter(|&q| q != i && q != j && q != l) {
                                let img = |x: usize| proj.base.point(x);
                                let flat = in_triangle(img(q), img(i), img(j), img(l)).unwrap();
                                let pre = [i, j, l].map(|x| proj.preimage[x]);
                                assert_eq!(flat, in_cone(&s, p, pre, proj.preimage[q]));
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

/// Reds in one small square, blues in another far to the right: every red
/// anchor sees a single red run.
fn clustered(n: usize, seed: u64) -> PlanarSet {
    for attempt in 0.. {
        let s = seed * 1000 + attempt;
        let reds: PlanarSet = generate_random2(n, 0, s, 200).unwrap();
        let blues: PlanarSet = generate_random2(0, n, s + 500, 200).unwrap();
        let items: Vec<_> = reds
            .iter()
            .map(|(p, c)| (*p, c))
            .chain(blues.iter().map(|(p, c)| (Point2::new(p.x + 100_000, p.y + 37), c)))
            .collect();
        if let Ok(set) = BichromaticSet2::from_colored(items) {
            return set;
        }
    }
    unreachable!()
}

#[test]
fn clustered_sets_take_the_few_runs_branch() {
    for (seed, n) in [(1u64, 9usize), (2, 16), (3, 25)] {
        let s = clustered(n, seed);
        let oracle: BTreeSet<_> = brute_force_triangles(&s, Pattern::RedRedBlue);
        let w = lemma1_construct(&s).unwrap();
        assert_eq!(w.rejected, 0);
        assert!(w.triangles.is_subset(&oracle));
        assert_eq!(w.small_m_anchors(), n);
        for a in &w.anchors {
            assert_eq!(a.branch, Branch::SmallM);
            assert_eq!(a.m, 1);
            assert!(a.branch_bound_met(), "{a:?}");
            assert!(a.intervals.iter().all(|r| r.hull_clean && r.subinterval_len * 2 >= r.interval_len));
        }
    }
}
