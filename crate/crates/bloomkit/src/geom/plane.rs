use serde::{Deserialize, Serialize};

use super::{GeomError, GeomResult, Point3, Vector3, EPS_GEOM};

/// Oriented plane `n · x = d` with unit normal.
///
/// For facet planes of a convex polyhedron the normal points outward, so the
/// solid satisfies `n · x <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub normal: Vector3,
    pub offset: f64,
}

impl Plane {
    pub fn new(normal: Vector3, offset: f64) -> GeomResult<Self> {
        let len = normal.norm();
        if len < EPS_GEOM {
            return Err(GeomError::DegenerateInput("zero plane normal".into()));
        }
        Ok(Self {
            normal: normal / len,
            offset: offset / len,
        })
    }

    pub fn from_point_normal(point: Point3, normal: Vector3) -> GeomResult<Self> {
        let len = normal.norm();
        if len < EPS_GEOM {
            return Err(GeomError::DegenerateInput("zero plane normal".into()));
        }
        let n = normal / len;
        Ok(Self {
            normal: n,
            offset: n.dot(&point.coords),
        })
    }

    /// Plane through three points, normal along `(b-a) × (c-a)`.
    pub fn from_points(a: Point3, b: Point3, c: Point3) -> GeomResult<Self> {
        Self::from_point_normal(a, (b - a).cross(&(c - a)))
    }

    /// Signed distance; positive on the normal side.
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(&p.coords) - self.offset
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: -self.normal,
            offset: -self.offset,
        }
    }

    /// True when the two planes coincide as point sets (orientation ignored).
    pub fn coincides_with(&self, other: &Plane, tol: f64) -> bool {
        let same = (self.normal - other.normal).norm() <= tol && (self.offset - other.offset).abs() <= tol;
        let flipped = (self.normal + other.normal).norm() <= tol
            && (self.offset + other.offset).abs() <= tol;
        same || flipped
    }

    pub fn project(&self, p: Point3) -> Point3 {
        p - self.normal * self.signed_distance(p)
    }
}
