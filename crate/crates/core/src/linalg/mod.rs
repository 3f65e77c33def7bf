//! Dependency-free numerical kernels: dense complex matrices, a Hermitian
//! eigensolver, polynomial roots, and planar convex geometry.

pub mod eigen;
pub mod geometry;
pub mod matrix;
pub mod poly;

pub use eigen::{hermitian_eigs, HermitianEigen};
pub use geometry::{
    convex_hull, directed_hausdorff, hausdorff_distance, polygon_intersection, polygon_support,
    support_lines_intersection, ConvexPolygon, PolygonKind, SupportLine,
};
pub use matrix::{mat_poly_eval, operator_norm, CMatrix};
pub use poly::{poly_roots, Polynomial};
