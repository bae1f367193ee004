//! Empty balanced tetrahedra: the brute-force oracle.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coord::Coordinate;
use crate::geom::{orient3d, strictly_inside_tetra_oriented};
use crate::pointset::{BichromaticSet3, Color};

/// Tetrahedron spanned by four points of a set, identified by sorted indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tetrahedron {
    pub indices: [usize; 4],
    /// Number of red vertices.
    pub reds: u8,
}

impl Tetrahedron {
    pub fn new<T: Coordinate>(set: &BichromaticSet3<T>, vertices: [usize; 4]) -> Self {
        let mut indices = vertices;
        indices.sort_unstable();
        debug_assert!(indices.windows(2).all(|w| w[0] != w[1]));
        let reds = indices.iter().filter(|&&i| set.color(i) == Color::Red).count() as u8;
        Tetrahedron { indices, reds }
    }

    pub fn is_balanced(&self) -> bool {
        self.reds == 2
    }
}

/// True when no point of the set lies strictly inside the tetrahedron.
pub fn is_empty_tetrahedron<T: Coordinate>(set: &BichromaticSet3<T>, tet: [usize; 4]) -> bool {
    let pts = set.points();
    let [a, b, c, d] = tet.map(|i| &pts[i]);
    let o = orient3d(a, b, c, d);
    assert!(!o.is_zero(), "degenerate tetrahedron {tet:?}");
    (0..pts.len())
        .filter(|i| !tet.contains(i))
        .all(|i| !strictly_inside_tetra_oriented(&pts[i], a, b, c, d, o))
}

/// Tests every red-red-blue-blue quadruple against all other points.
pub fn brute_force_balanced_tetrahedra<T: Coordinate>(set: &BichromaticSet3<T>) -> BTreeSet<Tetrahedron> {
    let reds = set.indices_of(Color::Red);
    let blues = set.indices_of(Color::Blue);
    let red_pairs: Vec<(usize, usize)> = reds
        .iter()
        .enumerate()
        .flat_map(|(k, &a)| reds[k + 1..].iter().map(move |&b| (a, b)))
        .collect();
    red_pairs
        .into_par_iter()
        .flat_map_iter(|(r1, r2)| {
            let mut found = Vec::new();
            for (k, &b1) in blues.iter().enumerate() {
                for &b2 in &blues[k + 1..] {
                    let tet = [r1, r2, b1, b2];
                    if is_empty_tetrahedron(set, tet) {
                        found.push(Tetrahedron::new(set, tet));
                    }
                }
            }
            found
        })
        .collect()
}
