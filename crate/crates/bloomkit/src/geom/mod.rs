//! 3D primitives: planes, rigid transforms, convex polyhedra with half-edge
//! connectivity, halfspace intersection, and triangle contact classification.
//!
//! All predicates are tolerance-based (no exact arithmetic). Tolerances are
//! calibrated for inputs with coordinates of order one; see [`EPS_GEOM`].

mod contact;
mod halfspace;
mod hull;
mod plane;
mod polygon;
mod polyhedron;
mod rigid2;
mod transform;

pub use contact::{triangle_contact, ContactClass, Triangle};
pub use halfspace::halfspace_intersection;
pub use hull::build_convex_polyhedron;
pub use plane::Plane;
pub use polygon::{
    convex_hull_2d, ear_triangulate, point_in_polygon, polygon_area, polygon_centroid,
    polygon_intersection_area, polygon_kernel,
};
pub use polyhedron::{
    dihedral_from_normals, BoundingBox, EdgeId, FacetId, HalfEdge, Polyhedron, VertexId,
};
pub use rigid2::Rigid2;
pub use transform::RigidTransform;

use thiserror::Error;

pub type Point3 = nalgebra::Point3<f64>;
pub type Vector3 = nalgebra::Vector3<f64>;
pub type Point2 = nalgebra::Point2<f64>;
pub type Vector2 = nalgebra::Vector2<f64>;

/// Base geometric tolerance for coordinates of order one.
pub const EPS_GEOM: f64 = 1e-9;

/// Default width of the touch band separating touching from crossing
/// contacts. The source definitions are exact; numerically we use a band.
pub const TAU_TOUCH: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("edge {0} is a boundary edge")]
    BoundaryEdge(usize),
    #[error("halfspace intersection is empty")]
    EmptyIntersection,
    #[error("degenerate triangle (area below tolerance)")]
    DegenerateTriangle,
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
}

pub type GeomResult<T> = Result<T, GeomError>;
