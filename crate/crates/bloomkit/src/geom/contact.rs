//! Pairwise triangle contact classification.
//!
//! Two sets cross when no plane separates them into opposite closed
//! halfspaces; they touch when they intersect without crossing. Numerically,
//! crossing means penetration deeper than the touch band `tau`, and touching
//! means contact within the band together with an (approximate) separating
//! plane. Separating-axis candidates for a triangle pair are the two face
//! normals, the six in-plane edge normals, and the nine edge-edge cross
//! products; that set is exhaustive, including coplanar pairs.

use super::{GeomError, GeomResult, Plane, Point3, Vector3, EPS_GEOM};

pub type Triangle = [Point3; 3];

#[derive(Debug, Clone)]
pub enum ContactClass {
    /// Disjoint beyond the touch band; carries a separating plane.
    Clear { separation: f64, plane: Plane },
    /// Contact within the touch band, still weakly separated.
    Touch { witnesses: Vec<Point3>, plane: Plane },
    /// Transversal interior intersection deeper than the touch band.
    Cross { penetration: f64, witness: Point3 },
}

impl ContactClass {
    pub fn is_cross(&self) -> bool {
        matches!(self, ContactClass::Cross { .. })
    }

    pub fn is_touch(&self) -> bool {
        matches!(self, ContactClass::Touch { .. })
    }

    /// Signed separation: distance when clear, zero when touching, minus
    /// penetration when crossing.
    pub fn signed_separation(&self) -> f64 {
        match self {
            ContactClass::Clear { separation, .. } => *separation,
            ContactClass::Touch { .. } => 0.0,
            ContactClass::Cross { penetration, .. } => -penetration,
        }
    }
}

fn triangle_area(t: &Triangle) -> f64 {
    0.5 * (t[1] - t[0]).cross(&(t[2] - t[0])).norm()
}

fn triangle_normal(t: &Triangle) -> Vector3 {
    (t[1] - t[0]).cross(&(t[2] - t[0])).normalize()
}

/// Classifies the contact between two nondegenerate triangles.
pub fn triangle_contact(t1: &Triangle, t2: &Triangle, tau: f64) -> GeomResult<ContactClass> {
    if triangle_area(t1) <= EPS_GEOM * EPS_GEOM || triangle_area(t2) <= EPS_GEOM * EPS_GEOM {
        return Err(GeomError::DegenerateTriangle);
    }

    let (gap, axis, mid) = separating_axis(t1, t2);
    if gap > 0.0 {
        // Disjoint on some axis; report the exact distance with the
        // mid-plane of the closest pair as certificate.
        let (d, p, q) = triangle_triangle_distance(t1, t2);
        let (plane, witnesses) = mid_plane(p, q, axis, mid);
        if d > tau {
            return Ok(ContactClass::Clear {
                separation: d,
                plane,
            });
        }
        return Ok(ContactClass::Touch { witnesses, plane });
    }

    let penetration = -gap;
    if penetration <= tau {
        // Weakly separated contact: the best axis still works as an
        // approximate separating plane. Witnesses localize the contact.
        let plane = Plane::new(axis, mid).unwrap_or_else(|_| Plane {
            normal: Vector3::new(0.0, 0.0, 1.0),
            offset: 0.0,
        });
        let witnesses = contact_witnesses(t1, t2, tau);
        return Ok(ContactClass::Touch { witnesses, plane });
    }

    let witness = crossing_witness(t1, t2);
    Ok(ContactClass::Cross {
        penetration,
        witness,
    })
}

/// Maximum signed separation over all candidate axes. Positive means a
/// separating axis exists; the magnitude is a lower bound on the distance.
/// Returns (gap, best axis unit vector oriented from t1 toward t2, plane
/// offset splitting the projections).
fn separating_axis(t1: &Triangle, t2: &Triangle) -> (f64, Vector3, f64) {
    let mut axes: Vec<Vector3> = Vec::with_capacity(17);
    let n1 = triangle_normal(t1);
    let n2 = triangle_normal(t2);
    axes.push(n1);
    axes.push(n2);
    let edges1 = [t1[1] - t1[0], t1[2] - t1[1], t1[0] - t1[2]];
    let edges2 = [t2[1] - t2[0], t2[2] - t2[1], t2[0] - t2[2]];
    for e in &edges1 {
        axes.push(n1.cross(e));
    }
    for e in &edges2 {
        axes.push(n2.cross(e));
    }
    for e1 in &edges1 {
        for e2 in &edges2 {
            axes.push(e1.cross(e2));
        }
    }

    let mut best_gap = f64::NEG_INFINITY;
    let mut best_axis = n1;
    let mut best_mid = 0.0;
    for axis in axes {
        let len = axis.norm();
        if len < EPS_GEOM {
            continue;
        }
        let a = axis / len;
        let (min1, max1) = project(t1, a);
        let (min2, max2) = project(t2, a);
        // Signed separation along this axis.
        let (gap, dir, mid) = if min2 - max1 >= min1 - max2 {
            (min2 - max1, a, 0.5 * (max1 + min2))
        } else {
            (min1 - max2, -a, -0.5 * (max2 + min1))
        };
        if gap > best_gap {
            best_gap = gap;
            best_axis = dir;
            best_mid = mid;
        }
    }
    (best_gap, best_axis, best_mid)
}

fn project(t: &Triangle, axis: Vector3) -> (f64, f64) {
    let d0 = axis.dot(&t[0].coords);
    let d1 = axis.dot(&t[1].coords);
    let d2 = axis.dot(&t[2].coords);
    (d0.min(d1).min(d2), d0.max(d1).max(d2))
}

fn mid_plane(p: Point3, q: Point3, fallback_axis: Vector3, fallback_mid: f64) -> (Plane, Vec<Point3>) {
    let d = q - p;
    let mid = nalgebra::center(&p, &q);
    let plane = if d.norm() > EPS_GEOM {
        Plane::from_point_normal(mid, d).unwrap()
    } else {
        Plane {
            normal: fallback_axis,
            offset: fallback_mid,
        }
    };
    (plane, vec![mid])
}

/// Exact distance between two triangles with a closest point pair,
/// assuming they do not interpenetrate.
pub fn triangle_triangle_distance(t1: &Triangle, t2: &Triangle) -> (f64, Point3, Point3) {
    let mut best = (f64::INFINITY, t1[0], t2[0]);
    let mut consider = |d: f64, p: Point3, q: Point3| {
        if d < best.0 {
            best = (d, p, q);
        }
    };
    for i in 0..3 {
        let (d, q) = point_triangle_closest(t1[i], t2);
        consider(d, t1[i], q);
        let (d, q) = point_triangle_closest(t2[i], t1);
        consider(d, q, t2[i]);
    }
    for i in 0..3 {
        for j in 0..3 {
            let (d, p, q) = segment_segment_closest(
                t1[i],
                t1[(i + 1) % 3],
                t2[j],
                t2[(j + 1) % 3],
            );
            consider(d, p, q);
        }
    }
    best
}

/// Closest point on a triangle to a point, with the distance.
pub fn point_triangle_closest(p: Point3, t: &Triangle) -> (f64, Point3) {
    // Ericson's barycentric region walk.
    let (a, b, c) = (t[0], t[1], t[2]);
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return ((p - a).norm(), a);
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return ((p - b).norm(), b);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        let q = a + ab * v;
        return ((p - q).norm(), q);
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return ((p - c).norm(), c);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        let q = a + ac * w;
        return ((p - q).norm(), q);
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        let q = b + (c - b) * w;
        return ((p - q).norm(), q);
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    let q = a + ab * v + ac * w;
    ((p - q).norm(), q)
}

/// Closest points between segments [p1,q1] and [p2,q2].
pub fn segment_segment_closest(
    p1: Point3,
    q1: Point3,
    p2: Point3,
    q2: Point3,
) -> (f64, Point3, Point3) {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(&r);
    let (s, t);
    if a <= EPS_GEOM * EPS_GEOM && e <= EPS_GEOM * EPS_GEOM {
        s = 0.0;
        t = 0.0;
    } else if a <= EPS_GEOM * EPS_GEOM {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= EPS_GEOM * EPS_GEOM {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let s0 = if denom.abs() > EPS_GEOM * EPS_GEOM {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            } else {
                t = t0;
                s = s0;
            }
        }
    }
    let cp1 = p1 + d1 * s;
    let cp2 = p2 + d2 * t;
    ((cp1 - cp2).norm(), cp1, cp2)
}

/// Points of `t1` within `tau` of `t2` and vice versa, plus edge-face
/// piercing points; localizes touch events.
fn contact_witnesses(t1: &Triangle, t2: &Triangle, tau: f64) -> Vec<Point3> {
    let mut w = Vec::new();
    let band = tau.max(EPS_GEOM) * 4.0;
    for &p in t1.iter() {
        let (d, q) = point_triangle_closest(p, t2);
        if d <= band {
            w.push(nalgebra::center(&p, &q));
        }
    }
    for &p in t2.iter() {
        let (d, q) = point_triangle_closest(p, t1);
        if d <= band {
            w.push(nalgebra::center(&p, &q));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let (d, p, q) = segment_segment_closest(
                t1[i],
                t1[(i + 1) % 3],
                t2[j],
                t2[(j + 1) % 3],
            );
            if d <= band {
                w.push(nalgebra::center(&p, &q));
            }
        }
    }
    for p in segment_triangle_hits(t1, t2) {
        w.push(p);
    }
    for p in segment_triangle_hits(t2, t1) {
        w.push(p);
    }
    if w.is_empty() {
        let (_, p, q) = triangle_triangle_distance(t1, t2);
        w.push(nalgebra::center(&p, &q));
    }
    w
}

/// Transversal intersections of the edges of `ta` with the plane-interior
/// of `tb`.
fn segment_triangle_hits(ta: &Triangle, tb: &Triangle) -> Vec<Point3> {
    let mut hits = Vec::new();
    let n = triangle_normal(tb);
    let d0 = n.dot(&tb[0].coords);
    for i in 0..3 {
        let a = ta[i];
        let b = ta[(i + 1) % 3];
        let da = n.dot(&a.coords) - d0;
        let db = n.dot(&b.coords) - d0;
        if (da > 0.0) == (db > 0.0) || (da - db).abs() < EPS_GEOM {
            continue;
        }
        let t = da / (da - db);
        let x = a + (b - a) * t;
        let (dist, _) = point_triangle_closest(x, tb);
        if dist <= EPS_GEOM * 100.0 {
            hits.push(x);
        }
    }
    hits
}

fn crossing_witness(t1: &Triangle, t2: &Triangle) -> Point3 {
    let mut pts = segment_triangle_hits(t1, t2);
    pts.extend(segment_triangle_hits(t2, t1));
    if pts.is_empty() {
        // Deep coplanar-like overlap without transversal edge hits: take the
        // midpoint of the closest centroid pair as a representative point.
        let c1 = Point3::from((t1[0].coords + t1[1].coords + t1[2].coords) / 3.0);
        let c2 = Point3::from((t2[0].coords + t2[1].coords + t2[2].coords) / 3.0);
        return nalgebra::center(&c1, &c2);
    }
    let mut acc = Vector3::zeros();
    for p in &pts {
        acc += p.coords;
    }
    Point3::from(acc / pts.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::TAU_TOUCH;

    fn tri(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Triangle {
        [
            Point3::new(a[0], a[1], a[2]),
            Point3::new(b[0], b[1], b[2]),
            Point3::new(c[0], c[1], c[2]),
        ]
    }

    #[test]
    fn coplanar_triangles_a_unit_apart_are_clear() {
        let t1 = tri([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let t2 = tri([2.0, 0.0, 0.0], [3.0, 0.0, 0.0], [2.0, 1.0, 0.0]);
        match triangle_contact(&t1, &t2, TAU_TOUCH).unwrap() {
            ContactClass::Clear { separation, plane } => {
                assert!((separation - 1.0).abs() < 1e-9);
                // Separating-plane soundness: the two triangles on opposite
                // closed halfspaces.
                for p in t1 {
                    assert!(plane.signed_distance(p) <= 1e-9);
                }
                for p in t2 {
                    assert!(plane.signed_distance(p) >= -1e-9);
                }
            }
            other => panic!("expected Clear, got {other:?}"),
        }
    }

    #[test]
    fn shared_edge_is_a_touch_with_plane_through_the_edge() {
        // Two faces of a cube sharing an edge.
        let t1 = tri([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]);
        let t2 = tri([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 1.0]);
        match triangle_contact(&t1, &t2, TAU_TOUCH).unwrap() {
            ContactClass::Touch { witnesses, plane } => {
                assert!(!witnesses.is_empty());
                for w in &witnesses {
                    // Witnesses lie on the shared edge y=z=0.
                    assert!(w.y.abs() < 1e-7 && w.z.abs() < 1e-7, "witness {w:?}");
                }
                for p in t1 {
                    assert!(plane.signed_distance(p) <= 1e-7);
                }
                for p in t2 {
                    assert!(plane.signed_distance(p) >= -1e-7);
                }
            }
            other => panic!("expected Touch, got {other:?}"),
        }
    }

    #[test]
    fn piercing_triangle_is_a_cross_with_witness() {
        let t1 = tri([0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 2.0, 0.0]);
        let t2 = tri([0.5, 0.5, -1.0], [0.5, 0.5, 1.0], [1.5, 0.5, 1.0]);
        match triangle_contact(&t1, &t2, TAU_TOUCH).unwrap() {
            ContactClass::Cross {
                penetration,
                witness,
            } => {
                assert!(penetration > TAU_TOUCH);
                // Witness is interior to both triangles: cross-checked with
                // the segment-triangle oracle (the crossing segment runs
                // from (0.5,0.5,0) to (1.0,0.5,0) in the z=0 plane).
                assert!(witness.z.abs() < 1e-9);
                assert!((witness.y - 0.5).abs() < 1e-9);
                assert!(witness.x > 0.5 - 1e-9 && witness.x < 1.0 + 1e-9);
                let (d1, _) = point_triangle_closest(witness, &t1);
                let (d2, _) = point_triangle_closest(witness, &t2);
                assert!(d1 < 1e-9 && d2 < 1e-9);
            }
            other => panic!("expected Cross, got {other:?}"),
        }
    }

    #[test]
    fn coplanar_overlap_is_touch_not_cross() {
        let t1 = tri([0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 2.0, 0.0]);
        let t2 = tri([0.5, 0.5, 0.0], [2.5, 0.5, 0.0], [0.5, 2.5, 0.0]);
        assert!(triangle_contact(&t1, &t2, TAU_TOUCH).unwrap().is_touch());
    }

    #[test]
    fn degenerate_triangle_is_rejected() {
        let t1 = tri([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]);
        let t2 = tri([0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]);
        assert!(matches!(
            triangle_contact(&t1, &t2, TAU_TOUCH),
            Err(GeomError::DegenerateTriangle)
        ));
    }

    #[test]
    fn classification_is_symmetric() {
        let t1 = tri([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let cases = [
            tri([2.0, 0.0, 0.0], [3.0, 0.0, 0.0], [2.0, 1.0, 0.0]),
            tri([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 1.0]),
            tri([0.2, 0.2, -0.5], [0.2, 0.2, 0.5], [0.8, 0.2, 0.5]),
        ];
        for t2 in cases {
            let ab = triangle_contact(&t1, &t2, TAU_TOUCH).unwrap();
            let ba = triangle_contact(&t2, &t1, TAU_TOUCH).unwrap();
            assert_eq!(
                std::mem::discriminant(&ab),
                std::mem::discriminant(&ba),
                "asymmetric classes {ab:?} vs {ba:?}"
            );
        }
    }
}
