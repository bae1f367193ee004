//! Exact planar convex hulls and squared distances to them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::coord::Coordinate;
use crate::geom::{orient2d, Orientation, Point2};

/// Convex hull as its strictly convex vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexHull<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Coordinate> ConvexHull<T> {
    /// Monotone chain. Collinear boundary points are dropped.
    pub fn new(points: &[Point2<T>]) -> Self {
        let mut pts: Vec<Point2<T>> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return ConvexHull { vertices: pts };
        }
        let mut lower: Vec<Point2<T>> = Vec::with_capacity(pts.len());
        for p in &pts {
            while lower.len() >= 2
                && orient2d(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Orientation::Positive
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point2<T>> = Vec::with_capacity(pts.len());
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient2d(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Orientation::Positive
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexHull { vertices: lower }
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn is_vertex(&self, p: &Point2<T>) -> bool {
        self.vertices.contains(p)
    }

    /// Closed membership: boundary points count as contained.
    pub fn contains(&self, p: &Point2<T>) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == p,
            2 => on_segment(&self.vertices[0], &self.vertices[1], p),
            k => (0..k).all(|i| {
                orient2d(&self.vertices[i], &self.vertices[(i + 1) % k], p) != Orientation::Negative
            }),
        }
    }

    /// Exact squared Euclidean distance from `q` to the hull.
    pub fn sq_distance(&self, q: &Point2<T>) -> SqDistance {
        if self.contains(q) {
            return SqDistance::zero();
        }
        let k = self.vertices.len();
        match k {
            0 => panic!("distance to an empty hull"),
            1 => SqDistance::from_points(&self.vertices[0], q),
            _ => (0..k)
                .map(|i| segment_sq_distance(&self.vertices[i], &self.vertices[(i + 1) % k], q))
                .min()
                .expect("nonempty"),
        }
    }
}

fn on_segment<T: Coordinate>(a: &Point2<T>, b: &Point2<T>, p: &Point2<T>) -> bool {
    orient2d(a, b, p).is_zero()
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Nonnegative rational `num / den`, compared by cross multiplication.
#[derive(Clone, Debug)]
pub struct SqDistance {
    num: BigInt,
    den: BigInt,
}

impl SqDistance {
    pub fn zero() -> Self {
        SqDistance { num: BigInt::zero(), den: BigInt::from(1) }
    }

    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        SqDistance { num, den }
    }

    fn from_points<T: Coordinate>(a: &Point2<T>, b: &Point2<T>) -> Self {
        let dx = a.x.big() - b.x.big();
        let dy = a.y.big() - b.y.big();
        SqDistance::new(&dx * &dx + &dy * &dy, BigInt::from(1))
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }
}

impl PartialEq for SqDistance {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SqDistance {}

impl PartialOrd for SqDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// Squared distance from `q` to the closed segment `ab`.
pub fn segment_sq_distance<T: Coordinate>(a: &Point2<T>, b: &Point2<T>, q: &Point2<T>) -> SqDistance {
    let (ax, ay) = (a.x.big(), a.y.big());
    let (ux, uy) = (b.x.big() - &ax, b.y.big() - &ay);
    let (wx, wy) = (q.x.big() - &ax, q.y.big() - &ay);
    let dot = &ux * &wx + &uy * &wy;
    let len2 = &ux * &ux + &uy * &uy;
    if !dot.is_positive() {
        return SqDistance::from_points(a, q);
    }
    if dot >= len2 {
        return SqDistance::from_points(b, q);
    }
    let cross = &ux * &wy - &uy * &wx;
    SqDistance::new(&cross * &cross, len2)
}
