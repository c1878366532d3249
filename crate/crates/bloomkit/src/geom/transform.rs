use nalgebra::{IsometryMatrix3, Rotation3, Translation3, Unit};

use super::{Point3, Vector3};

/// Rigid motion (orthonormal rotation with determinant +1, plus translation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    iso: IsometryMatrix3<f64>,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            iso: IsometryMatrix3::identity(),
        }
    }

    pub fn from_parts(rotation: Rotation3<f64>, translation: Vector3) -> Self {
        Self {
            iso: IsometryMatrix3::from_parts(Translation3::from(translation), rotation),
        }
    }

    /// Rotation by `angle` about the line through `point` with direction `axis`.
    pub fn rotation_about_line(point: Point3, axis: Vector3, angle: f64) -> Self {
        let axis = Unit::new_normalize(axis);
        let rot = Rotation3::from_axis_angle(&axis, angle);
        let translation = point.coords - rot * point.coords;
        Self {
            iso: IsometryMatrix3::from_parts(Translation3::from(translation), rot),
        }
    }

    pub fn translation(v: Vector3) -> Self {
        Self {
            iso: IsometryMatrix3::from_parts(Translation3::from(v), Rotation3::identity()),
        }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        self.iso * p
    }

    pub fn apply_vector(&self, v: Vector3) -> Vector3 {
        self.iso.rotation * v
    }

    pub fn compose(&self, inner: &RigidTransform) -> Self {
        Self {
            iso: self.iso * inner.iso,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            iso: self.iso.inverse(),
        }
    }

    pub fn rotation_determinant(&self) -> f64 {
        self.iso.rotation.matrix().determinant()
    }

    /// Largest displacement this transform applies to any of `points`.
    pub fn max_displacement(&self, points: impl IntoIterator<Item = Point3>) -> f64 {
        points
            .into_iter()
            .map(|p| (self.apply(p) - p).norm())
            .fold(0.0, f64::max)
    }
}

impl Default for RigidTransform {
    fn default() -> Self {
        Self::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_about_line_fixes_the_line() {
        let p = Point3::new(1.0, 2.0, 3.0);
        let axis = Vector3::new(0.0, 0.0, 1.0);
        let t = RigidTransform::rotation_about_line(p, axis, 1.3);
        assert!((t.apply(p) - p).norm() < 1e-12);
        let q = p + axis * 5.0;
        assert!((t.apply(q) - q).norm() < 1e-12);
        assert!((t.rotation_determinant() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn composition_applies_inner_first() {
        let a = RigidTransform::rotation_about_line(
            Point3::origin(),
            Vector3::new(0.0, 1.0, 0.0),
            0.7,
        );
        let b = RigidTransform::translation(Vector3::new(1.0, 0.0, 0.0));
        let p = Point3::new(0.3, -0.2, 0.9);
        let lhs = a.compose(&b).apply(p);
        let rhs = a.apply(b.apply(p));
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
