use super::{Point2, Vector2, EPS_GEOM};

/// Orientation-preserving rigid motion of the plane (rotation + translation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rigid2 {
    pub cos: f64,
    pub sin: f64,
    pub t: Vector2,
}

impl Rigid2 {
    pub fn identity() -> Self {
        Self {
            cos: 1.0,
            sin: 0.0,
            t: Vector2::zeros(),
        }
    }

    pub fn rotation_angle(&self) -> f64 {
        self.sin.atan2(self.cos)
    }

    /// The unique orientation-preserving motion taking segment (a0,b0) onto
    /// (a1,b1). The segments should have equal length; only the direction
    /// and the image of `a0` are used.
    pub fn aligning(a0: Point2, b0: Point2, a1: Point2, b1: Point2) -> Option<Self> {
        let d0 = b0 - a0;
        let d1 = b1 - a1;
        let l0 = d0.norm();
        let l1 = d1.norm();
        if l0 < EPS_GEOM || l1 < EPS_GEOM {
            return None;
        }
        let u0 = d0 / l0;
        let u1 = d1 / l1;
        let cos = u0.dot(&u1);
        let sin = u0.x * u1.y - u0.y * u1.x;
        let mut m = Self {
            cos,
            sin,
            t: Vector2::zeros(),
        };
        m.t = a1.coords - m.rotate(a0.coords);
        Some(m)
    }

    fn rotate(&self, v: Vector2) -> Vector2 {
        Vector2::new(self.cos * v.x - self.sin * v.y, self.sin * v.x + self.cos * v.y)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        Point2::from(self.rotate(p.coords) + self.t)
    }

    pub fn apply_vector(&self, v: Vector2) -> Vector2 {
        self.rotate(v)
    }

    /// `self` after `inner` (apply `inner` first).
    pub fn compose(&self, inner: &Rigid2) -> Self {
        Self {
            cos: self.cos * inner.cos - self.sin * inner.sin,
            sin: self.sin * inner.cos + self.cos * inner.sin,
            t: self.rotate(inner.t) + self.t,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = Self {
            cos: self.cos,
            sin: -self.sin,
            t: Vector2::zeros(),
        };
        Self {
            cos: inv.cos,
            sin: inv.sin,
            t: -inv.rotate(self.t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligning_maps_endpoints() {
        let a0 = Point2::new(0.0, 0.0);
        let b0 = Point2::new(1.0, 0.0);
        let a1 = Point2::new(2.0, 1.0);
        let b1 = Point2::new(2.0, 2.0);
        let m = Rigid2::aligning(a0, b0, a1, b1).unwrap();
        assert!((m.apply(a0) - a1).norm() < 1e-12);
        assert!((m.apply(b0) - b1).norm() < 1e-12);
        let inv = m.inverse();
        assert!((inv.apply(m.apply(Point2::new(0.3, 0.7))) - Point2::new(0.3, 0.7)).norm() < 1e-12);
    }
}
