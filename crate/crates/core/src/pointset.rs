//! Two-colored point sets with validated general position, and random
//! instance generators.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coord::{Coordinate, MAX_COORD};
use crate::geom::{orient2d, orient3d, Orientation, Point2, Point3};

/// Sets up to this size are fully audited for general position on construction.
pub const FULL_VALIDATION_LIMIT: usize = 200;

/// Random generators give up after this many draws per requested point.
pub const RESAMPLE_BUDGET_PER_POINT: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn code(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_code(s: &str) -> Option<Color> {
        match s {
            "R" => Some(Color::Red),
            "B" => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Duplicate,
    Collinear,
    Coplanar,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Duplicate => "duplicate",
            ViolationKind::Collinear => "collinear",
            ViolationKind::Coplanar => "coplanar",
        })
    }
}

/// First degenerate tuple found, by index.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{kind} violation on indices {indices:?}")]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Full check when the set has at most [`FULL_VALIDATION_LIMIT`] points,
    /// duplicates only otherwise.
    #[default]
    Auto,
    Full,
    /// Duplicates and coordinate range only.
    DuplicatesOnly,
}

impl Validation {
    fn is_full(self, len: usize) -> bool {
        match self {
            Validation::Auto => len <= FULL_VALIDATION_LIMIT,
            Validation::Full => true,
            Validation::DuplicatesOnly => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PointSetError {
    #[error("general position violated: {0}")]
    Degenerate(#[from] Violation),
    #[error("point {index} has a coordinate outside the exact predicate range")]
    OutOfRange { index: usize },
    #[error("{points} points but {colors} colors")]
    LengthMismatch { points: usize, colors: usize },
}

fn first_duplicate<P: std::hash::Hash + Eq>(points: &[P]) -> Option<Violation> {
    let mut seen = std::collections::HashMap::with_capacity(points.len());
    for (j, p) in points.iter().enumerate() {
        if let Some(&i) = seen.get(p) {
            return Some(Violation { kind: ViolationKind::Duplicate, indices: vec![i, j] });
        }
        seen.insert(p, j);
    }
    None
}

/// Full general-position audit of a planar point list.
pub fn validate_points2<T: Coordinate>(points: &[Point2<T>]) -> Result<(), Violation> {
    if let Some(v) = first_duplicate(points) {
        return Err(v);
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient2d(&points[i], &points[j], &points[k]).is_zero() {
                    return Err(Violation { kind: ViolationKind::Collinear, indices: vec![i, j, k] });
                }
            }
        }
    }
    Ok(())
}

fn collinear3<T: Coordinate>(a: &Point3<T>, b: &Point3<T>, c: &Point3<T>) -> bool {
    // Cross product of (b - a) and (c - a) vanishes.
    let (ax, ay, az) = (a.x.widen(), a.y.widen(), a.z.widen());
    let (ux, uy, uz) = (b.x.widen() - ax.clone(), b.y.widen() - ay.clone(), b.z.widen() - az.clone());
    let (vx, vy, vz) = (c.x.widen() - ax, c.y.widen() - ay, c.z.widen() - az);
    let cx = uy.clone() * vz.clone() - uz.clone() * vy.clone();
    let cy = uz * vx.clone() - ux.clone() * vz;
    let cz = ux * vy - uy * vx;
    cx.is_zero() && cy.is_zero() && cz.is_zero()
}

/// Full general-position audit of a spatial point list.
pub fn validate_points3<T: Coordinate>(points: &[Point3<T>]) -> Result<(), Violation> {
    if let Some(v) = first_duplicate(points) {
        return Err(v);
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear3(&points[i], &points[j], &points[k]) {
                    return Err(Violation { kind: ViolationKind::Collinear, indices: vec![i, j, k] });
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if orient3d(&points[i], &points[j], &points[k], &points[l]).is_zero() {
                        return Err(Violation {
                            kind: ViolationKind::Coplanar,
                            indices: vec![i, j, k, l],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

macro_rules! colored_set {
    ($name:ident, $point:ident, $validate:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name<T> {
            points: Vec<$point<T>>,
            colors: Vec<Color>,
            red_count: usize,
            blue_count: usize,
        }

        impl<T: Coordinate> $name<T> {
            pub fn new(points: Vec<$point<T>>, colors: Vec<Color>) -> Result<Self, PointSetError> {
                Self::with_validation(points, colors, Validation::Auto)
            }

            pub fn with_validation(
                points: Vec<$point<T>>,
                colors: Vec<Color>,
                validation: Validation,
            ) -> Result<Self, PointSetError> {
                if points.len() != colors.len() {
                    return Err(PointSetError::LengthMismatch {
                        points: points.len(),
                        colors: colors.len(),
                    });
                }
                if let Some(index) = points.iter().position(|p| !p.within_limit()) {
                    return Err(PointSetError::OutOfRange { index });
                }
                if validation.is_full(points.len()) {
                    $validate(&points)?;
                } else if let Some(v) = first_duplicate(&points) {
                    return Err(v.into());
                }
                Ok(Self::assemble(points, colors))
            }

            pub fn from_colored(items: Vec<($point<T>, Color)>) -> Result<Self, PointSetError> {
                let (points, colors) = items.into_iter().unzip();
                Self::new(points, colors)
            }

            /// Caller guarantees general position (e.g. incremental generators).
            pub(crate) fn assemble(points: Vec<$point<T>>, colors: Vec<Color>) -> Self {
                let red_count = colors.iter().filter(|&&c| c == Color::Red).count();
                let blue_count = colors.len() - red_count;
                $name { points, colors, red_count, blue_count }
            }

            pub fn validate_general_position(&self) -> Result<(), Violation> {
                $validate(&self.points)
            }

            pub fn len(&self) -> usize {
                self.points.len()
            }

            pub fn is_empty(&self) -> bool {
                self.points.is_empty()
            }

            pub fn point(&self, i: usize) -> &$point<T> {
                &self.points[i]
            }

            pub fn color(&self, i: usize) -> Color {
                self.colors[i]
            }

            pub fn points(&self) -> &[$point<T>] {
                &self.points
            }

            pub fn colors(&self) -> &[Color] {
                &self.colors
            }

            pub fn red_count(&self) -> usize {
                self.red_count
            }

            pub fn blue_count(&self) -> usize {
                self.blue_count
            }

            pub fn count(&self, color: Color) -> usize {
                match color {
                    Color::Red => self.red_count,
                    Color::Blue => self.blue_count,
                }
            }

            pub fn is_balanced(&self) -> bool {
                self.red_count == self.blue_count
            }

            pub fn indices_of(&self, color: Color) -> Vec<usize> {
                (0..self.len()).filter(|&i| self.colors[i] == color).collect()
            }

            pub fn iter(&self) -> impl Iterator<Item = (&$point<T>, Color)> + '_ {
                self.points.iter().zip(self.colors.iter().copied())
            }
        }
    };
}

colored_set!(BichromaticSet2, Point2, validate_points2);
colored_set!(BichromaticSet3, Point3, validate_points3);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("coordinate bound {0} outside 1..={max}", max = MAX_COORD)]
    BadBound(i64),
    #[error("need at least {needed} points in dimension {dim}, got {got}")]
    TooFewPoints { dim: usize, needed: usize, got: usize },
    #[error("resample budget of {budget} draws exhausted after placing {placed} points; coordinate bound too small")]
    BudgetExhausted { budget: usize, placed: usize },
}

fn check_request(n: usize, dim: usize, bound: i64) -> Result<(), GenerateError> {
    if !(1..=MAX_COORD as i64).contains(&bound) {
        return Err(GenerateError::BadBound(bound));
    }
    if n < dim + 1 {
        return Err(GenerateError::TooFewPoints { dim, needed: dim + 1, got: n });
    }
    Ok(())
}

fn shuffled_colors(n_red: usize, n_blue: usize, rng: &mut ChaCha8Rng) -> Vec<Color> {
    let mut colors: Vec<Color> =
        std::iter::repeat_n(Color::Red, n_red).chain(std::iter::repeat_n(Color::Blue, n_blue)).collect();
    colors.shuffle(rng);
    colors
}

fn coord<T: Coordinate>(v: i64) -> T {
    T::from_i64(v).expect("generator coordinates fit every coordinate type")
}

/// Uniform random planar set in `[0, bound)^2`, general position by construction.
pub fn generate_random2<T: Coordinate>(
    n_red: usize,
    n_blue: usize,
    seed: u64,
    bound: i64,
) -> Result<BichromaticSet2<T>, GenerateError> {
    let n = n_red + n_blue;
    check_request(n, 2, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = RESAMPLE_BUDGET_PER_POINT * n;
    let mut points: Vec<Point2<T>> = Vec::with_capacity(n);
    let mut seen = HashSet::with_capacity(n);
    let mut draws = 0;
    while points.len() < n {
        if draws == budget {
            return Err(GenerateError::BudgetExhausted { budget, placed: points.len() });
        }
        draws += 1;
        let p = Point2::new(coord::<T>(rng.gen_range(0..bound)), coord::<T>(rng.gen_range(0..bound)));
        if seen.contains(&p) {
            continue;
        }
        let degenerate = (0..points.len()).any(|i| {
            (i + 1..points.len()).any(|j| orient2d(&points[i], &points[j], &p).is_zero())
        });
        if degenerate {
            continue;
        }
        seen.insert(p.clone());
        points.push(p);
    }
    let colors = shuffled_colors(n_red, n_blue, &mut rng);
    Ok(BichromaticSet2::assemble(points, colors))
}

/// Uniform random spatial set in `[0, bound)^3`, general position by construction.
pub fn generate_random3<T: Coordinate>(
    n_red: usize,
    n_blue: usize,
    seed: u64,
    bound: i64,
) -> Result<BichromaticSet3<T>, GenerateError> {
    let n = n_red + n_blue;
    check_request(n, 3, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = RESAMPLE_BUDGET_PER_POINT * n;
    let mut points: Vec<Point3<T>> = Vec::with_capacity(n);
    let mut seen = HashSet::with_capacity(n);
    let mut draws = 0;
    while points.len() < n {
        if draws == budget {
            return Err(GenerateError::BudgetExhausted { budget, placed: points.len() });
        }
        draws += 1;
        let p = Point3::new(
            coord::<T>(rng.gen_range(0..bound)),
            coord::<T>(rng.gen_range(0..bound)),
            coord::<T>(rng.gen_range(0..bound)),
        );
        if seen.contains(&p) || creates_degeneracy3(&points, &p) {
            continue;
        }
        seen.insert(p.clone());
        points.push(p);
    }
    let colors = shuffled_colors(n_red, n_blue, &mut rng);
    Ok(BichromaticSet3::assemble(points, colors))
}

fn creates_degeneracy3<T: Coordinate>(placed: &[Point3<T>], p: &Point3<T>) -> bool {
    let k = placed.len();
    for i in 0..k {
        for j in i + 1..k {
            if collinear3(&placed[i], &placed[j], p) {
                return true;
            }
            for l in j + 1..k {
                if orient3d(&placed[i], &placed[j], &placed[l], p) == Orientation::Zero {
                    return true;
                }
            }
        }
    }
    false
}
