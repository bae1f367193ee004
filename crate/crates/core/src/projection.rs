//! Planes through an apex that split the red points evenly, and central
//! projection of one side onto a parallel plane.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coord::Coordinate;
use crate::geom::{Orientation, Point2, Point3};
use crate::pointset::{BichromaticSet2, BichromaticSet3, Color, PointSetError, Validation};

type Vec3 = [BigInt; 3];
type Vec2 = [BigInt; 2];

fn dot3(a: &Vec3, b: &Vec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn cross2(a: &Vec2, b: &Vec2) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot2(a: &Vec2, b: &Vec2) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn is_zero3(v: &Vec3) -> bool {
    v.iter().all(Zero::is_zero)
}

fn big3<T: Coordinate>(p: &Point3<T>) -> Vec3 {
    [p.x.big(), p.y.big(), p.z.big()]
}

fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("apex {0} is not a blue point")]
    NotBlue(usize),
    #[error("no generic axis direction found through apex {0}")]
    NoGenericAxis(usize),
    #[error("internal: plane through apex {apex} fails its own checks")]
    BadPlane { apex: usize },
    #[error("no points strictly on the chosen side of the plane")]
    EmptySide,
    #[error("internal: projected set is degenerate: {0}")]
    Degenerate(#[from] PointSetError),
}

/// Plane `{x : normal . x = offset}` with a nonzero primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedPlane {
    pub normal: Vec3,
    pub offset: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    fn sign(self) -> Orientation {
        match self {
            Side::Above => Orientation::Positive,
            Side::Below => Orientation::Negative,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Above => "above",
            Side::Below => "below",
        })
    }
}

impl OrientedPlane {
    pub fn through<T: Coordinate>(normal: Vec3, point: &Point3<T>) -> Self {
        assert!(!is_zero3(&normal), "plane normal must be nonzero");
        let g = normal.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let normal = normal.map(|c| c / &g);
        let offset = dot3(&normal, &big3(point));
        OrientedPlane { normal, offset }
    }

    /// Sign of `normal . x - offset`: positive above, negative below.
    pub fn side_of<T: Coordinate>(&self, x: &Point3<T>) -> Orientation {
        Orientation::of(&(dot3(&self.normal, &big3(x)) - &self.offset))
    }

    pub fn normal_strings(&self) -> [String; 3] {
        self.normal.clone().map(|c| c.to_string())
    }
}

/// Strict side counts of a set relative to a plane, excluding the apex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCounts {
    pub red_above: usize,
    pub red_below: usize,
    pub blue_above: usize,
    pub blue_below: usize,
    pub on_plane: usize,
}

pub fn side_counts<T: Coordinate>(set: &BichromaticSet3<T>, apex: usize, plane: &OrientedPlane) -> SideCounts {
    let mut c = SideCounts::default();
    for (i, (q, color)) in set.iter().enumerate() {
        if i == apex {
            continue;
        }
        match (plane.side_of(q), color) {
            (Orientation::Zero, _) => c.on_plane += 1,
            (Orientation::Positive, Color::Red) => c.red_above += 1,
            (Orientation::Negative, Color::Red) => c.red_below += 1,
            (Orientation::Positive, Color::Blue) => c.blue_above += 1,
            (Orientation::Negative, Color::Blue) => c.blue_below += 1,
        }
    }
    c
}

/// Integer directions tried in turn for the sweep axis.
fn axis_candidate(k: i64) -> Vec3 {
    let t = k + 2;
    [BigInt::one(), BigInt::from(t), BigInt::from(t * t + 1)]
}

const AXIS_ATTEMPTS: i64 = 10_000;
const SMALL_DIRECTION_RADIUS: i64 = 64;

fn upper(w: &Vec2) -> Vec2 {
    if w[1].is_positive() || (w[1].is_zero() && w[0].is_positive()) {
        w.clone()
    } else {
        [-&w[0], -&w[1]]
    }
}

fn strictly_between(u: &Vec2, v: &Vec2, d: &Vec2) -> bool {
    cross2(u, d).is_positive() && cross2(d, v).is_positive()
}

/// Plane through blue point `p` containing no other point, with at least
/// `floor(n / 2)` red points strictly on each side.
///
/// A generic axis line through `p` is fixed; the planes containing it form a
/// pencil, seen as lines through the origin after projecting along the axis.
/// Between consecutive point directions the side counts are constant, and
/// rotating by a half turn swaps them, so some slot is balanced. Inside a
/// balanced slot the shortest integer direction is used to keep the normal
/// small.
pub fn halving_plane<T: Coordinate>(set: &BichromaticSet3<T>, p: usize) -> Result<OrientedPlane, ProjectionError> {
    if set.color(p) != Color::Blue {
        return Err(ProjectionError::NotBlue(p));
    }
    let apex = big3(set.point(p));
    let others: Vec<usize> = (0..set.len()).filter(|&i| i != p).collect();
    if others.is_empty() {
        return Ok(OrientedPlane::through([BigInt::zero(), BigInt::zero(), BigInt::one()], set.point(p)));
    }
    let rel: Vec<Vec3> = others.iter().map(|&i| sub3(&big3(set.point(i)), &apex)).collect();

    let axis = (0..AXIS_ATTEMPTS)
        .map(axis_candidate)
        .find(|d| {
            rel.iter().all(|u| !is_zero3(&cross3(d, u)))
                && (0..rel.len()).all(|i| (i + 1..rel.len()).all(|j| !dot3(d, &cross3(&rel[i], &rel[j])).is_zero()))
        })
        .ok_or(ProjectionError::NoGenericAxis(p))?;
    let e1 = cross3(&axis, &[BigInt::one(), BigInt::zero(), BigInt::zero()]);
    let e2 = cross3(&axis, &e1);
    let flat: Vec<Vec2> = rel.iter().map(|u| [dot3(&e1, u), dot3(&e2, u)]).collect();

    let n = set.red_count();
    let need = n / 2;
    let red_split = |nu: &Vec2| -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for (k, w) in flat.iter().enumerate() {
            if set.color(others[k]) == Color::Red {
                if dot2(nu, w).is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
        }
        (pos, neg)
    };

    let mut dirs: Vec<Vec2> = flat.iter().map(upper).collect();
    dirs.sort_by(|a, b| match cross2(a, b) {
        x if x.is_positive() => Ordering::Less,
        x if x.is_negative() => Ordering::Greater,
        _ => Ordering::Equal,
    });
    let k = dirs.len();
    let mut balanced_slots: Vec<(Vec2, Vec2)> = Vec::new();
    for i in 0..k {
        let u = dirs[i].clone();
        let v = if i + 1 < k { dirs[i + 1].clone() } else { [-&dirs[0][0], -&dirs[0][1]] };
        let mid = [&u[0] + &v[0], &u[1] + &v[1]];
        let nu = [-&mid[1], mid[0].clone()];
        let (pos, neg) = red_split(&nu);
        if pos >= need && neg >= need {
            balanced_slots.push((u, v));
        }
    }
    let fallback = balanced_slots.first().cloned().ok_or(ProjectionError::BadPlane { apex: p })?;

    let mut line: Option<Vec2> = None;
    'search: for r in 1..=SMALL_DIRECTION_RADIUS {
        for a in -r..=r {
            for b in -r..=r {
                if a.abs().max(b.abs()) != r {
                    continue;
                }
                let d = [BigInt::from(a), BigInt::from(b)];
                if balanced_slots.iter().any(|(u, v)| strictly_between(u, v, &d)) {
                    line = Some(d);
                    break 'search;
                }
            }
        }
    }
    let line = line.unwrap_or_else(|| {
        let (u, v) = fallback;
        [&u[0] + &v[0], &u[1] + &v[1]]
    });
    let nu = [-&line[1], line[0].clone()];
    let normal = [
        &nu[0] * &e1[0] + &nu[1] * &e2[0],
        &nu[0] * &e1[1] + &nu[1] * &e2[1],
        &nu[0] * &e1[2] + &nu[1] * &e2[2],
    ];
    let plane = OrientedPlane::through(normal, set.point(p));
    let c = side_counts(set, p, &plane);
    if c.on_plane != 0 || c.red_above < need || c.red_below < need {
        return Err(ProjectionError::BadPlane { apex: p });
    }
    Ok(plane)
}

/// Points of one side, centrally projected from the apex onto a plane
/// parallel to the splitting plane.
#[derive(Clone, Debug)]
pub struct ProjectedSet {
    pub base: BichromaticSet2<BigInt>,
    /// 2D index -> 3D index.
    pub preimage: Vec<usize>,
    pub apex: usize,
    pub side: Side,
}

/// Projects every point strictly on `side` of `plane` along its ray from
/// apex `p`.
///
/// With `N` the normal pointing into the chosen side and `(A, B)` coordinate
/// axes on the image plane, point `q` has image `(A.(q-p), B.(q-p)) / N.(q-p)`.
/// All images are scaled by the lcm of the denominators, so coordinates are
/// exact integers. `(A, B, N)` is positively oriented, hence
/// `orient2d` of images equals `orient3d(p, ...)` of preimages.
pub fn central_project<T: Coordinate>(
    set: &BichromaticSet3<T>,
    p: usize,
    plane: &OrientedPlane,
    side: Side,
) -> Result<ProjectedSet, ProjectionError> {
    let apex = big3(set.point(p));
    let normal = match side {
        Side::Above => plane.normal.clone(),
        Side::Below => plane.normal.clone().map(|c| -c),
    };
    let unit = |k: usize| -> Vec3 {
        let mut e = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        e[k] = BigInt::one();
        e
    };
    // det(e_i, e_j, N) equals the remaining component of N for cyclic (i, j, k).
    let (a, b) = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        .into_iter()
        .find(|&(_, _, k)| !normal[k].is_zero())
        .map(|(i, j, k)| if normal[k].is_positive() { (unit(i), unit(j)) } else { (unit(j), unit(i)) })
        .expect("normal is nonzero");
    debug_assert!(dot3(&cross3(&a, &b), &normal).is_positive());

    let mut preimage = Vec::new();
    let mut homogeneous = Vec::new();
    for (i, q) in set.points().iter().enumerate() {
        if i == p || plane.side_of(q) != side.sign() {
            continue;
        }
        let u = sub3(&big3(q), &apex);
        homogeneous.push((dot3(&a, &u), dot3(&b, &u), dot3(&normal, &u)));
        preimage.push(i);
    }
    if preimage.is_empty() {
        return Err(ProjectionError::EmptySide);
    }
    let scale = homogeneous.iter().fold(BigInt::one(), |l, (_, _, w)| l.lcm(w));
    let points: Vec<Point2<BigInt>> = homogeneous
        .into_iter()
        .map(|(x, y, w)| {
            let f = &scale / &w;
            Point2::new(x * &f, y * &f)
        })
        .collect();
    let colors = preimage.iter().map(|&i| set.color(i)).collect();
    let base = BichromaticSet2::with_validation(points, colors, Validation::Full)?;
    Ok(ProjectedSet { base, preimage, apex: p, side })
}
