//! Intersection of halfspaces `n · x <= d` by Sutherland-Hodgman clipping of
//! a seed box. Unbounded intersections stay bounded by the caller-supplied
//! clip box; facets contributed by the box are flagged artificial.

use super::{
    BoundingBox, GeomError, GeomResult, Plane, Point2, Point3, Polyhedron, EPS_GEOM,
};

struct ClipFacet {
    plane: Plane,
    pts: Vec<Point3>,
    artificial: bool,
}

/// Intersects the given halfspaces (solid side `n · x <= d`), clipped to
/// `clip_box`. Returns `EmptyIntersection` when nothing remains.
pub fn halfspace_intersection(planes: &[Plane], clip_box: BoundingBox) -> GeomResult<Polyhedron> {
    if planes.is_empty() {
        return Err(GeomError::DegenerateInput("no halfspaces given".into()));
    }
    let scale = clip_box.diagonal().max(1.0);
    let tol = EPS_GEOM * scale * 16.0;

    let mut facets = box_facets(&clip_box);
    let mut used: Vec<Plane> = Vec::new();
    for plane in planes {
        if used.iter().any(|p| p.coincides_with(plane, tol)) {
            continue;
        }
        used.push(*plane);
        facets = clip_by_halfspace(facets, *plane, tol)?;
    }

    facets.retain(|f| f.pts.len() >= 3 && polygon_area_3d(&f.pts) > tol * tol);
    if facets.len() < 4 {
        return Err(GeomError::EmptyIntersection);
    }

    // Weld vertices and emit facet loops.
    let mut vertices: Vec<Point3> = Vec::new();
    let weld = |vertices: &mut Vec<Point3>, p: Point3| -> usize {
        for (i, q) in vertices.iter().enumerate() {
            if (p - q).norm() <= tol {
                return i;
            }
        }
        vertices.push(p);
        vertices.len() - 1
    };
    let mut loops = Vec::with_capacity(facets.len());
    let mut artificial = Vec::with_capacity(facets.len());
    for f in &facets {
        let mut loop_: Vec<usize> = Vec::with_capacity(f.pts.len());
        for &p in &f.pts {
            let id = weld(&mut vertices, p);
            if loop_.last() != Some(&id) {
                loop_.push(id);
            }
        }
        while loop_.len() > 1 && loop_.first() == loop_.last() {
            loop_.pop();
        }
        if loop_.len() < 3 {
            continue;
        }
        loops.push(loop_);
        artificial.push(f.artificial);
    }
    if loops.len() < 4 {
        return Err(GeomError::EmptyIntersection);
    }
    Polyhedron::from_facet_loops(vertices, loops, artificial)
}

fn box_facets(bb: &BoundingBox) -> Vec<ClipFacet> {
    let (lo, hi) = (bb.min, bb.max);
    let corners = |ids: [usize; 4]| -> Vec<Point3> {
        let all = [
            Point3::new(lo.x, lo.y, lo.z),
            Point3::new(hi.x, lo.y, lo.z),
            Point3::new(hi.x, hi.y, lo.z),
            Point3::new(lo.x, hi.y, lo.z),
            Point3::new(lo.x, lo.y, hi.z),
            Point3::new(hi.x, lo.y, hi.z),
            Point3::new(hi.x, hi.y, hi.z),
            Point3::new(lo.x, hi.y, hi.z),
        ];
        ids.iter().map(|&i| all[i]).collect()
    };
    // Outward-oriented box faces (CCW from outside).
    let faces = [
        ([0, 3, 2, 1], Plane::new(nalgebra::Vector3::new(0.0, 0.0, -1.0), -lo.z)),
        ([4, 5, 6, 7], Plane::new(nalgebra::Vector3::new(0.0, 0.0, 1.0), hi.z)),
        ([0, 1, 5, 4], Plane::new(nalgebra::Vector3::new(0.0, -1.0, 0.0), -lo.y)),
        ([2, 3, 7, 6], Plane::new(nalgebra::Vector3::new(0.0, 1.0, 0.0), hi.y)),
        ([0, 4, 7, 3], Plane::new(nalgebra::Vector3::new(-1.0, 0.0, 0.0), -lo.x)),
        ([1, 2, 6, 5], Plane::new(nalgebra::Vector3::new(1.0, 0.0, 0.0), hi.x)),
    ];
    faces
        .into_iter()
        .map(|(ids, plane)| ClipFacet {
            plane: plane.unwrap(),
            pts: corners(ids),
            artificial: true,
        })
        .collect()
}

fn clip_by_halfspace(
    facets: Vec<ClipFacet>,
    plane: Plane,
    tol: f64,
) -> GeomResult<Vec<ClipFacet>> {
    let mut out: Vec<ClipFacet> = Vec::with_capacity(facets.len() + 1);
    let mut section: Vec<Point3> = Vec::new();
    for f in facets {
        let mut kept: Vec<Point3> = Vec::new();
        let n = f.pts.len();
        for i in 0..n {
            let s = f.pts[i];
            let e = f.pts[(i + 1) % n];
            let ds = plane.signed_distance(s);
            let de = plane.signed_distance(e);
            let s_in = ds <= tol;
            let e_in = de <= tol;
            if s_in {
                kept.push(s);
                if ds.abs() <= tol {
                    section.push(s);
                }
            }
            if s_in != e_in && ds.abs() > tol && de.abs() > tol {
                let t = ds / (ds - de);
                let x = s + (e - s) * t;
                kept.push(x);
                section.push(x);
            }
        }
        if kept.len() >= 3 {
            out.push(ClipFacet {
                plane: f.plane,
                pts: kept,
                artificial: f.artificial,
            });
        }
    }
    if out.is_empty() {
        return Err(GeomError::EmptyIntersection);
    }
    // The section of a convex body by a plane is a convex polygon: order the
    // collected crossing points by a 2D hull in the plane.
    if section.len() >= 3 {
        let nrm = plane.normal;
        let origin = section[0];
        let seed = section
            .iter()
            .map(|p| *p - origin)
            .find(|d| d.norm() > tol)
            .unwrap_or(nalgebra::Vector3::new(1.0, 0.0, 0.0));
        let u = (seed - nrm * seed.dot(&nrm)).normalize();
        let v = nrm.cross(&u);
        let chart: Vec<Point2> = section
            .iter()
            .map(|p| {
                let d = *p - origin;
                Point2::new(d.dot(&u), d.dot(&v))
            })
            .collect();
        let hull = super::convex_hull_2d(&chart);
        if hull.len() >= 3 {
            let pts: Vec<Point3> = hull
                .iter()
                .map(|h| origin + u * h.x + v * h.y)
                .collect();
            out.push(ClipFacet {
                plane,
                pts,
                artificial: false,
            });
        }
    }
    Ok(out)
}

fn polygon_area_3d(pts: &[Point3]) -> f64 {
    let n = pts.len();
    let mut s = nalgebra::Vector3::zeros();
    for i in 1..n - 1 {
        s += (pts[i] - pts[0]).cross(&(pts[i + 1] - pts[0]));
    }
    0.5 * s.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::build_convex_polyhedron;

    fn cube() -> Polyhedron {
        let mut v = Vec::new();
        for &x in &[0.0, 1.0] {
            for &y in &[0.0, 1.0] {
                for &z in &[0.0, 1.0] {
                    v.push(Point3::new(x, y, z));
                }
            }
        }
        build_convex_polyhedron(&v).unwrap()
    }

    #[test]
    fn all_cube_halfspaces_reproduce_the_cube() {
        let q = cube();
        let clip = q.bounding_box().scaled(10.0);
        let r = halfspace_intersection(&q.planes, clip).unwrap();
        assert_eq!(r.vertices.len(), 8);
        assert_eq!(r.facets.len(), 6);
        assert!(r.artificial.iter().all(|&a| !a));
        for v in &q.vertices {
            assert!(r.contains_point(*v, 1e-7));
        }
    }

    #[test]
    fn two_halfspaces_give_a_clipped_wedge_containing_the_cube() {
        let q = cube();
        let clip = q.bounding_box().scaled(10.0);
        let wedge = halfspace_intersection(&q.planes[0..2], clip).unwrap();
        for v in &q.vertices {
            assert!(wedge.contains_point(*v, 1e-7));
        }
        assert!(wedge.artificial.iter().any(|&a| a));
        assert!(wedge.artificial.iter().any(|&a| !a));
    }

    #[test]
    fn empty_intersection_is_reported() {
        let q = cube();
        let clip = q.bounding_box().scaled(10.0);
        let p = Plane::new(nalgebra::Vector3::new(0.0, 0.0, 1.0), -5.0).unwrap();
        let opposite = Plane::new(nalgebra::Vector3::new(0.0, 0.0, -1.0), -5.0).unwrap();
        assert!(matches!(
            halfspace_intersection(&[p, opposite], clip),
            Err(GeomError::EmptyIntersection)
        ));
    }
}
