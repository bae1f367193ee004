//! Empty two-colored simplices in red/blue point sets with integer
//! coordinates: empty (2,1)-triangles in the plane and empty balanced
//! tetrahedra in space.
//!
//! All geometry is exact. Coordinates are integers of any [`Coordinate`]
//! type; determinants are evaluated in the type's wide companion, so no
//! predicate ever rounds. Planar sets obtained by central projection use
//! arbitrary-precision coordinates.

pub mod angular;
pub mod coord;
pub mod geom;
pub mod harness;
pub mod hull;
pub mod io;
pub mod lemma;
pub mod pointset;
pub mod projection;
pub mod tetrahedra;
pub mod theorem;
pub mod triangles;

pub use coord::{Coordinate, MAX_COORD};
pub use geom::{in_tetrahedron, in_triangle, orient2d, orient3d, GeomError, Orientation, Point2, Point3};
pub use io::{read_points, write_points, Instance, PointFileError};
pub use lemma::{choose_subinterval, lemma1_construct, radial_decompose, Branch, LemmaWitness, RadialDecomposition};
pub use pointset::{
    generate_random2, generate_random3, BichromaticSet2, BichromaticSet3, Color, PointSetError, Validation, Violation,
    ViolationKind,
};
pub use projection::{central_project, halving_plane, OrientedPlane, ProjectedSet, Side};
pub use tetrahedra::{brute_force_balanced_tetrahedra, Tetrahedron};
pub use theorem::{theorem_construct, TheoremOutput};
pub use triangles::{brute_force_triangles, radial_sweep_triangles, rotating_line_triangles, Pattern, Triangle};

use num_bigint::BigInt;

pub type IntPoint2 = Point2<i32>;
pub type IntPoint3 = Point3<i32>;
pub type ExactPoint2 = Point2<BigInt>;

/// Planar set with `i32` coordinates bounded by [`MAX_COORD`].
pub type PlanarSet = BichromaticSet2<i32>;
/// Spatial set with `i32` coordinates bounded by [`MAX_COORD`].
pub type SpatialSet = BichromaticSet3<i32>;
/// Planar set with unbounded coordinates, as produced by central projection.
pub type ExactPlanarSet = BichromaticSet2<BigInt>;
