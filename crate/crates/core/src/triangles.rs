//! Empty triangles in planar two-colored sets: the brute-force oracle, an
//! independent per-anchor angular sweep, and the rotating-line procedure.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::sort_clockwise;
use crate::coord::Coordinate;
use crate::geom::{det2, orient2d, strictly_inside_oriented, Orientation};
use crate::pointset::{BichromaticSet2, Color};

/// Color pattern of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    #[serde(rename = "rrb")]
    RedRedBlue,
    #[serde(rename = "bbr")]
    BlueBlueRed,
    #[serde(rename = "rrr")]
    AllRed,
    #[serde(rename = "bbb")]
    AllBlue,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::RedRedBlue, Pattern::BlueBlueRed, Pattern::AllRed, Pattern::AllBlue];

    pub fn of(colors: [Color; 3]) -> Pattern {
        match colors.iter().filter(|&&c| c == Color::Red).count() {
            3 => Pattern::AllRed,
            2 => Pattern::RedRedBlue,
            1 => Pattern::BlueBlueRed,
            _ => Pattern::AllBlue,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::RedRedBlue => "rrb",
            Pattern::BlueBlueRed => "bbr",
            Pattern::AllRed => "rrr",
            Pattern::AllBlue => "bbb",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pattern {s:?}; expected one of rrb, bbr, rrr, bbb"))
    }
}

/// Triangle spanned by three points of a set, identified by sorted indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub indices: [usize; 3],
    pub pattern: Pattern,
}

impl Triangle {
    pub fn new<T: Coordinate>(set: &BichromaticSet2<T>, i: usize, j: usize, k: usize) -> Self {
        let mut indices = [i, j, k];
        indices.sort_unstable();
        debug_assert!(indices[0] != indices[1] && indices[1] != indices[2]);
        let pattern = Pattern::of(indices.map(|x| set.color(x)));
        Triangle { indices, pattern }
    }

    pub fn contains_vertex(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }
}

/// True when no point of the set lies strictly inside the triangle.
pub fn is_empty_triangle<T: Coordinate>(set: &BichromaticSet2<T>, tri: [usize; 3]) -> bool {
    let pts = set.points();
    let (a, b, c) = (&pts[tri[0]], &pts[tri[1]], &pts[tri[2]]);
    let o = orient2d(a, b, c);
    assert!(!o.is_zero(), "degenerate triangle {tri:?}");
    (0..pts.len())
        .filter(|i| !tri.contains(i))
        .all(|i| !strictly_inside_oriented(&pts[i], a, b, c, o))
}

/// Tests all triples against all other points.
pub fn brute_force_triangles<T: Coordinate>(set: &BichromaticSet2<T>, pattern: Pattern) -> BTreeSet<Triangle> {
    let n = set.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut found = Vec::new();
            for j in i + 1..n {
                for k in j + 1..n {
                    let tri = Triangle::new(set, i, j, k);
                    if tri.pattern == pattern && is_empty_triangle(set, tri.indices) {
                        found.push(tri);
                    }
                }
            }
            found
        })
        .collect()
}

/// Per-anchor angular sweep. For anchor `a` and second vertex `b`, third
/// vertices `c` are visited clockwise from `b` within a half turn; `abc` is
/// empty exactly when `c` is clockwise, as seen from `b`, of every point
/// visited before it.
pub fn radial_sweep_triangles<T: Coordinate>(set: &BichromaticSet2<T>, pattern: Pattern) -> BTreeSet<Triangle> {
    let n = set.len();
    let pts = set.points();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut order: Vec<usize> = (0..n).filter(|&i| i != a).collect();
            sort_clockwise(&pts[a], pts, &mut order);
            let m = order.len();
            let mut found = Vec::new();
            for (pos, &b) in order.iter().enumerate() {
                // Each triangle is reported from its smallest vertex only.
                if b < a {
                    continue;
                }
                let mut frontier: Option<usize> = None;
                for step in 1..m {
                    let c = order[(pos + step) % m];
                    if orient2d(&pts[a], &pts[b], &pts[c]) != Orientation::Negative {
                        break;
                    }
                    let empty = match frontier {
                        None => true,
                        Some(d) => orient2d(&pts[b], &pts[d], &pts[c]) == Orientation::Negative,
                    };
                    if empty {
                        frontier = Some(c);
                        if c > a {
                            let tri = Triangle::new(set, a, b, c);
                            if tri.pattern == pattern {
                                found.push(tri);
                            }
                        }
                    }
                }
            }
            found
        })
        .collect()
}

/// One translated-line event: the pair `(red, blue)` and the first point hit
/// on one side of their line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEmission {
    pub red: usize,
    pub blue: usize,
    pub side: Orientation,
    pub third: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RotatingLine {
    pub triangles: BTreeSet<Triangle>,
    pub emissions: Vec<LineEmission>,
    /// (pair, side) combinations with no point on that side.
    pub empty_sides: usize,
}

/// For every red/blue pair and each side of their line, the point of that
/// side closest to the line closes an empty (2,1)-triangle.
pub fn rotating_line_triangles<T: Coordinate>(set: &BichromaticSet2<T>) -> RotatingLine {
    let pts = set.points();
    let reds = set.indices_of(Color::Red);
    let blues = set.indices_of(Color::Blue);
    let mut out = RotatingLine::default();
    for &r in &reds {
        for &b in &blues {
            let mut nearest: [Option<(T::Wide, usize)>; 2] = [None, None];
            for c in 0..pts.len() {
                if c == r || c == b {
                    continue;
                }
                let d = det2(&pts[r], &pts[b], &pts[c]);
                let side = if d.is_positive() { 0 } else { 1 };
                let dist = d.abs();
                let closer = match &nearest[side] {
                    None => true,
                    Some((best, _)) => dist < *best,
                };
                if closer {
                    nearest[side] = Some((dist, c));
                }
            }
            for (side, slot) in nearest.into_iter().enumerate() {
                match slot {
                    Some((_, c)) => {
                        out.triangles.insert(Triangle::new(set, r, b, c));
                        out.emissions.push(LineEmission {
                            red: r,
                            blue: b,
                            side: if side == 0 { Orientation::Positive } else { Orientation::Negative },
                            third: c,
                        });
                    }
                    None => out.empty_sides += 1,
                }
            }
        }
    }
    out
}
