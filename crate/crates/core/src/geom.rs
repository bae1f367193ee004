//! Points and exact orientation predicates.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coord::Coordinate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }
}

impl<T: Coordinate> Point2<T> {
    pub fn within_limit(&self) -> bool {
        self.x.within_limit() && self.y.within_limit()
    }
}

impl<T: fmt::Display> fmt::Display for Point2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Point3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }
}

impl<T: Coordinate> Point3<T> {
    pub fn within_limit(&self) -> bool {
        self.x.within_limit() && self.y.within_limit() && self.z.within_limit()
    }
}

impl<T: fmt::Display> fmt::Display for Point3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Negative,
    Zero,
    Positive,
}

impl Orientation {
    pub fn of<W: num_traits::Signed>(value: &W) -> Self {
        if value.is_positive() {
            Orientation::Positive
        } else if value.is_negative() {
            Orientation::Negative
        } else {
            Orientation::Zero
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Orientation::Zero
    }
}

impl Neg for Orientation {
    type Output = Orientation;

    fn neg(self) -> Orientation {
        match self {
            Orientation::Negative => Orientation::Positive,
            Orientation::Zero => Orientation::Zero,
            Orientation::Positive => Orientation::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate triangle: vertices are collinear")]
    DegenerateTriangle,
    #[error("degenerate tetrahedron: vertices are coplanar")]
    DegenerateTetrahedron,
}

/// Twice the signed area of `abc`, evaluated exactly in the wide type.
pub fn det2<T: Coordinate>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> T::Wide {
    let (ax, ay) = (a.x.widen(), a.y.widen());
    let bx = b.x.widen() - ax.clone();
    let by = b.y.widen() - ay.clone();
    let cx = c.x.widen() - ax;
    let cy = c.y.widen() - ay;
    bx * cy - by * cx
}

/// Six times the signed volume of `abcd`: `det(b - a, c - a, d - a)`.
pub fn det3<T: Coordinate>(a: &Point3<T>, b: &Point3<T>, c: &Point3<T>, d: &Point3<T>) -> T::Wide {
    let (ax, ay, az) = (a.x.widen(), a.y.widen(), a.z.widen());
    let (bx, by, bz) = (
        b.x.widen() - ax.clone(),
        b.y.widen() - ay.clone(),
        b.z.widen() - az.clone(),
    );
    let (cx, cy, cz) = (
        c.x.widen() - ax.clone(),
        c.y.widen() - ay.clone(),
        c.z.widen() - az.clone(),
    );
    let (dx, dy, dz) = (d.x.widen() - ax, d.y.widen() - ay, d.z.widen() - az);
    bx * (cy.clone() * dz.clone() - cz.clone() * dy.clone())
        - by * (cx.clone() * dz - cz * dx.clone())
        + bz * (cx * dy - cy * dx)
}

/// Positive when `a, b, c` make a counterclockwise turn.
#[inline]
pub fn orient2d<T: Coordinate>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> Orientation {
    Orientation::of(&det2(a, b, c))
}

#[inline]
pub fn orient3d<T: Coordinate>(
    a: &Point3<T>,
    b: &Point3<T>,
    c: &Point3<T>,
    d: &Point3<T>,
) -> Orientation {
    Orientation::of(&det3(a, b, c, d))
}

/// Strict interior test; boundary points are outside.
pub fn in_triangle<T: Coordinate>(
    p: &Point2<T>,
    a: &Point2<T>,
    b: &Point2<T>,
    c: &Point2<T>,
) -> Result<bool, GeomError> {
    let o = orient2d(a, b, c);
    if o.is_zero() {
        return Err(GeomError::DegenerateTriangle);
    }
    Ok(strictly_inside_oriented(p, a, b, c, o))
}

/// Interior test for a triangle whose orientation `o` is already known.
#[inline]
pub(crate) fn strictly_inside_oriented<T: Coordinate>(
    p: &Point2<T>,
    a: &Point2<T>,
    b: &Point2<T>,
    c: &Point2<T>,
    o: Orientation,
) -> bool {
    orient2d(a, b, p) == o && orient2d(b, c, p) == o && orient2d(c, a, p) == o
}

/// Strict interior test; points on faces, edges or vertices are outside.
pub fn in_tetrahedron<T: Coordinate>(
    p: &Point3<T>,
    a: &Point3<T>,
    b: &Point3<T>,
    c: &Point3<T>,
    d: &Point3<T>,
) -> Result<bool, GeomError> {
    let o = orient3d(a, b, c, d);
    if o.is_zero() {
        return Err(GeomError::DegenerateTetrahedron);
    }
    Ok(strictly_inside_tetra_oriented(p, a, b, c, d, o))
}

#[inline]
pub(crate) fn strictly_inside_tetra_oriented<T: Coordinate>(
    p: &Point3<T>,
    a: &Point3<T>,
    b: &Point3<T>,
    c: &Point3<T>,
    d: &Point3<T>,
    o: Orientation,
) -> bool {
    // Replace each vertex by p in turn; p is interior iff every sub-volume keeps the sign.
    orient3d(p, b, c, d) == o
        && orient3d(a, p, c, d) == o
        && orient3d(a, b, p, d) == o
        && orient3d(a, b, c, p) == o
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn p2(x: i32, y: i32) -> Point2<i32> {
        Point2::new(x, y)
    }

    fn p3(x: i32, y: i32, z: i32) -> Point3<i32> {
        Point3::new(x, y, z)
    }

    #[test]
    fn orient2d_examples() {
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 0), &p2(0, 1)), Orientation::Positive);
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 1), &p2(2, 2)), Orientation::Zero);
        assert_eq!(orient2d(&p2(0, 0), &p2(0, 1), &p2(1, 0)), Orientation::Negative);
    }

    #[test]
    fn orient3d_examples() {
        let o = p3(0, 0, 0);
        assert_eq!(
            orient3d(&o, &p3(1, 0, 0), &p3(0, 1, 0), &p3(0, 0, 1)),
            Orientation::Positive
        );
        assert_eq!(
            orient3d(&o, &p3(1, 0, 0), &p3(0, 1, 0), &p3(1, 1, 0)),
            Orientation::Zero
        );
        assert_eq!(
            orient3d(&o, &p3(1, 0, 0), &p3(0, 1, 0), &p3(0, 0, -1)),
            Orientation::Negative
        );
    }

    #[test]
    fn in_triangle_examples() {
        let (a, b, c) = (p2(0, 0), p2(4, 0), p2(0, 4));
        assert_eq!(in_triangle(&p2(1, 1), &a, &b, &c), Ok(true));
        assert_eq!(in_triangle(&p2(4, 4), &a, &b, &c), Ok(false));
        assert_eq!(in_triangle(&p2(2, 0), &a, &b, &c), Ok(false));
        // Orientation of the vertex order must not matter.
        assert_eq!(in_triangle(&p2(1, 1), &a, &c, &b), Ok(true));
        assert_eq!(
            in_triangle(&p2(1, 1), &a, &p2(1, 1), &p2(2, 2)),
            Err(GeomError::DegenerateTriangle)
        );
    }

    #[test]
    fn in_tetrahedron_examples() {
        let (a, b, c, d) = (p3(0, 0, 0), p3(4, 0, 0), p3(0, 4, 0), p3(0, 0, 4));
        assert_eq!(in_tetrahedron(&p3(1, 1, 1), &a, &b, &c, &d), Ok(true));
        assert_eq!(in_tetrahedron(&p3(4, 4, 4), &a, &b, &c, &d), Ok(false));
        assert_eq!(in_tetrahedron(&p3(2, 2, 0), &a, &b, &c, &d), Ok(false));
        assert_eq!(in_tetrahedron(&p3(1, 1, 1), &b, &a, &c, &d), Ok(true));
        assert_eq!(
            in_tetrahedron(&p3(1, 1, 1), &a, &b, &c, &p3(1, 1, 0)),
            Err(GeomError::DegenerateTetrahedron)
        );
    }

    #[test]
    fn extreme_coordinates_do_not_overflow() {
        let m = crate::coord::MAX_COORD;
        let a = p3(-m, -m, -m);
        let b = p3(m, -m, -m);
        let c = p3(-m, m, -m);
        let d = p3(-m, -m, m);
        let expected = BigInt::from(2 * m as i64).pow(3);
        assert_eq!(BigInt::from(det3(&a, &b, &c, &d)), expected);
        assert_eq!(orient3d(&a, &b, &c, &d), Orientation::Positive);
    }

    #[test]
    fn bigint_coordinates_agree_with_i32() {
        let pts = [p2(3, -7), p2(-11, 5), p2(8, 13)];
        let big: Vec<Point2<BigInt>> = pts
            .iter()
            .map(|p| Point2::new(BigInt::from(p.x), BigInt::from(p.y)))
            .collect();
        assert_eq!(orient2d(&pts[0], &pts[1], &pts[2]), orient2d(&big[0], &big[1], &big[2]));
    }

    fn coord() -> impl Strategy<Value = i32> {
        prop_oneof![
            -crate::coord::MAX_COORD..=crate::coord::MAX_COORD,
            -3i32..=3,
            Just(crate::coord::MAX_COORD),
            Just(-crate::coord::MAX_COORD),
        ]
    }

    fn pt2() -> impl Strategy<Value = Point2<i32>> {
        (coord(), coord()).prop_map(|(x, y)| Point2::new(x, y))
    }

    fn pt3() -> impl Strategy<Value = Point3<i32>> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| Point3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn orient2d_antisymmetric(a in pt2(), b in pt2(), c in pt2()) {
            prop_assert_eq!(orient2d(&a, &b, &c), -orient2d(&a, &c, &b));
            prop_assert_eq!(orient2d(&a, &b, &c), orient2d(&b, &c, &a));
        }

        #[test]
        fn orient3d_permutation_parity(a in pt3(), b in pt3(), c in pt3(), d in pt3()) {
            let o = orient3d(&a, &b, &c, &d);
            prop_assert_eq!(o, -orient3d(&b, &a, &c, &d));
            prop_assert_eq!(o, -orient3d(&a, &b, &d, &c));
            prop_assert_eq!(o, orient3d(&b, &c, &a, &d));
            prop_assert_eq!(o, -orient3d(&d, &b, &c, &a));
        }

        #[test]
        fn simplex_boundary_is_outside(a in pt2(), b in pt2(), c in pt2(), t in 0i64..=8) {
            prop_assume!(!orient2d(&a, &b, &c).is_zero());
            for v in [&a, &b, &c] {
                prop_assert_eq!(in_triangle(v, &a, &b, &c), Ok(false));
            }
            // Lattice points on edge ab at parameter t/8 when they exist.
            let dx = b.x as i64 - a.x as i64;
            let dy = b.y as i64 - a.y as i64;
            if (dx * t) % 8 == 0 && (dy * t) % 8 == 0 {
                let q = Point2::new((a.x as i64 + dx * t / 8) as i32, (a.y as i64 + dy * t / 8) as i32);
                prop_assert_eq!(in_triangle(&q, &a, &b, &c), Ok(false));
            }
        }

        #[test]
        fn tetra_vertices_and_edge_midpoints_outside(
            a in pt3(), b in pt3(), c in pt3(), d in pt3()
        ) {
            prop_assume!(!orient3d(&a, &b, &c, &d).is_zero());
            for v in [&a, &b, &c, &d] {
                prop_assert_eq!(in_tetrahedron(v, &a, &b, &c, &d), Ok(false));
            }
            let doubled = |p: &Point3<i32>| Point3::new(2 * p.x as i64, 2 * p.y as i64, 2 * p.z as i64);
            let (a2, b2, c2, d2) = (doubled(&a), doubled(&b), doubled(&c), doubled(&d));
            let mid = Point3::new(a.x as i64 + b.x as i64, a.y as i64 + b.y as i64, a.z as i64 + b.z as i64);
            prop_assert_eq!(in_tetrahedron(&mid, &a2, &b2, &c2, &d2), Ok(false));
        }
    }
}
