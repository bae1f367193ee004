//! Exact angular ordering around a center point, without trigonometry.

use std::cmp::Ordering;

use crate::coord::Coordinate;
use crate::geom::{orient2d, Orientation, Point2};

// 0: clockwise angle from +x in [0, pi); 1: [pi, 2pi).
fn clockwise_half<T: Coordinate>(center: &Point2<T>, p: &Point2<T>) -> u8 {
    match p.y.cmp(&center.y) {
        Ordering::Less => 0,
        Ordering::Greater => 1,
        Ordering::Equal => {
            if p.x > center.x {
                0
            } else {
                1
            }
        }
    }
}

/// Clockwise comparison of the directions `center -> a` and `center -> b`,
/// measured from the positive x axis. Directions that coincide compare equal.
pub fn cmp_clockwise<T: Coordinate>(center: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> Ordering {
    let (ha, hb) = (clockwise_half(center, a), clockwise_half(center, b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    match orient2d(center, a, b) {
        Orientation::Negative => Ordering::Less,
        Orientation::Positive => Ordering::Greater,
        Orientation::Zero => Ordering::Equal,
    }
}

/// Sorts point indices clockwise around `center`.
pub fn sort_clockwise<T: Coordinate>(center: &Point2<T>, points: &[Point2<T>], indices: &mut [usize]) {
    indices.sort_by(|&i, &j| cmp_clockwise(center, &points[i], &points[j]).then(i.cmp(&j)));
}

/// True when turning clockwise from `center -> a` to `center -> b` sweeps
/// strictly less than a half turn.
#[inline]
pub fn clockwise_within_half_turn<T: Coordinate>(center: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> bool {
    orient2d(center, a, b) == Orientation::Negative
}
