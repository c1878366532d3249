//! Exact shortest paths on convex polyhedral surfaces, cut loci, grown
//! polyhedra, and the source unfolding.
//!
//! Shortest paths are found by branch-and-bound over unfolded edge
//! sequences: a search state unfolds a chain of facets into the plane of the
//! start facet, tracks the cone of directions that pass through every
//! crossed edge in order, and is pruned when the cone empties or its best
//! possible length exceeds the incumbent. Shortest paths on convex
//! polyhedra cross each edge at most once, which bounds the search.
//!
//! The cut locus of a source point is recovered from the full set of
//! unfolded windows: inside each facet it is the locus where two distinct
//! windows achieve the minimal distance, traced as straight bisector
//! segments; ties across an edge are detected separately so that arcs lying
//! on polyhedron edges (as on the cube) are found as well.

mod cut_locus;
mod source;
mod surface;
mod windows;

pub use cut_locus::CutLocus;
pub use source::{source_unfolding, SourceUnfoldingTree};
pub use surface::SurfacePoint;

use thiserror::Error;

use crate::geom::{FacetId, GeomError, Plane, Point3, Polyhedron};

#[derive(Debug, Error)]
pub enum GeodesicError {
    #[error("point is not on the surface: {0:?}")]
    NotOnSurface(Point3),
    #[error("the source point lies on a vertex")]
    SourceIsVertex,
    #[error("window search exceeded the state budget")]
    SearchBudgetExceeded,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type GeodesicResult<T> = Result<T, GeodesicError>;

/// A geodesic on the surface: straight in its own development.
///
/// `points[0]` and the last point are the endpoints; interior points lie on
/// polyhedron edges. Segment `points[i] .. points[i+1]` lies in
/// `face_sequence[i]`.
#[derive(Debug, Clone)]
pub struct GeodesicPath {
    pub points: Vec<Point3>,
    pub face_sequence: Vec<FacetId>,
    pub length: f64,
}

/// Globally shortest surface path between two surface points.
pub fn shortest_path(
    poly: &Polyhedron,
    p: &SurfacePoint,
    q: &SurfacePoint,
) -> GeodesicResult<GeodesicPath> {
    windows::shortest_path(poly, p, q)
}

/// Cut locus of a non-vertex source point: the closure of the set of points
/// with more than one shortest path to the source. Forms a tree spanning
/// all polyhedron vertices.
pub fn cut_locus(poly: &Polyhedron, s: &SurfacePoint) -> GeodesicResult<CutLocus> {
    cut_locus::cut_locus(poly, s)
}

/// Grown polyhedron of a geodesic: the intersection of the supporting
/// halfspaces of its face sequence, clipped to ten times the bounding box.
pub fn grown_polyhedron(poly: &Polyhedron, path: &GeodesicPath) -> GeodesicResult<Polyhedron> {
    let mut planes: Vec<Plane> = Vec::new();
    for &f in &path.face_sequence {
        let pl = poly.planes[f];
        if !planes.iter().any(|p| p.coincides_with(&pl, 1e-9)) {
            planes.push(pl);
        }
    }
    let clip = poly.bounding_box().scaled(10.0);
    Ok(crate::geom::halfspace_intersection(&planes, clip)?)
}

/// Maximum deviation of the path from a straight segment in its own
/// development, rebuilt by unfolding the face sequence.
pub fn straightness_deviation(poly: &Polyhedron, path: &GeodesicPath) -> f64 {
    use crate::geom::{Point2, Rigid2};
    if path.points.len() < 3 {
        return 0.0;
    }
    let mut to_root = Rigid2::identity();
    let mut imgs: Vec<Point2> = Vec::new();
    imgs.push(poly.to_chart(path.face_sequence[0], path.points[0]));
    for i in 0..path.face_sequence.len() {
        let f = path.face_sequence[i];
        imgs.push(to_root.apply(poly.to_chart(f, path.points[i + 1])));
        if i + 1 < path.face_sequence.len() {
            let g = path.face_sequence[i + 1];
            let crossing = path.points[i + 1];
            // Find the shared edge's endpoints to build the unfold map; use
            // the crossing point and edge direction from connectivity.
            let e = poly
                .shared_edge(f, g)
                .expect("consecutive path faces share an edge");
            let (a3, b3) = poly.edge_endpoints(e);
            let m = Rigid2::aligning(
                poly.to_chart(g, a3),
                poly.to_chart(g, b3),
                to_root.apply(poly.to_chart(f, a3)),
                to_root.apply(poly.to_chart(f, b3)),
            )
            .expect("nondegenerate edge");
            let _ = crossing;
            to_root = m;
        }
    }
    let a = imgs[0];
    let b = *imgs.last().unwrap();
    imgs.iter()
        .map(|p| {
            let ab = b - a;
            let len2 = ab.norm_squared();
            if len2 < 1e-30 {
                (p - a).norm()
            } else {
                let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
                (p - (a + ab * t)).norm()
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::build_convex_polyhedron;

    fn unit_cube() -> Polyhedron {
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

    fn regular_tetrahedron() -> Polyhedron {
        build_convex_polyhedron(&[
            Point3::new(1.0, 1.0, 1.0),
            Point3::new(1.0, -1.0, -1.0),
            Point3::new(-1.0, 1.0, -1.0),
            Point3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn cube_bottom_center_to_top_center_is_two() {
        let q = unit_cube();
        let p = SurfacePoint::locate(&q, Point3::new(0.5, 0.5, 0.0)).unwrap();
        let t = SurfacePoint::locate(&q, Point3::new(0.5, 0.5, 1.0)).unwrap();
        let path = shortest_path(&q, &p, &t).unwrap();
        assert!(
            (path.length - 2.0).abs() < 1e-9,
            "length {} != 2",
            path.length
        );
        assert_eq!(path.face_sequence.len(), 3);
        assert!(straightness_deviation(&q, &path) < 1e-8);
    }

    #[test]
    fn same_facet_is_a_straight_segment() {
        let q = unit_cube();
        let p = SurfacePoint::locate(&q, Point3::new(0.2, 0.3, 0.0)).unwrap();
        let t = SurfacePoint::locate(&q, Point3::new(0.9, 0.8, 0.0)).unwrap();
        let path = shortest_path(&q, &p, &t).unwrap();
        assert_eq!(path.points.len(), 2);
        assert!((path.length - (t.position - p.position).norm()).abs() < 1e-12);
    }

    #[test]
    fn identical_points_give_zero_length() {
        let q = unit_cube();
        let p = SurfacePoint::locate(&q, Point3::new(0.5, 0.25, 0.0)).unwrap();
        let path = shortest_path(&q, &p, &p).unwrap();
        assert_eq!(path.length, 0.0);
    }

    #[test]
    fn cube_cut_locus_spans_vertices_and_is_a_tree() {
        let q = unit_cube();
        let s = SurfacePoint::locate(&q, Point3::new(0.5, 0.5, 0.0)).unwrap();
        let cl = cut_locus(&q, &s).unwrap();
        assert!(cl.spans_vertices(&q, 1e-6), "cut locus misses a vertex");
        assert!(cl.is_tree(), "cut locus is not a tree: {cl:?}");
        // For the bottom-center source the locus is the four vertical edges
        // plus the two top-face diagonals.
        let top_center = Point3::new(0.5, 0.5, 1.0);
        assert!(cl.distance_to(top_center) < 1e-6);
        let mid_vertical = Point3::new(0.0, 0.0, 0.5);
        assert!(cl.distance_to(mid_vertical) < 1e-6);
        // 4-fold symmetry about the source: distance field symmetric probes.
        let probe = Point3::new(0.25, 0.0, 0.75);
        let images = [
            probe,
            Point3::new(0.0, 0.25, 0.75),
            Point3::new(0.75, 1.0, 0.75),
            Point3::new(1.0, 0.75, 0.75),
        ];
        let d0 = cl.distance_to(images[0]);
        for img in &images[1..] {
            assert!((cl.distance_to(*img) - d0).abs() < 1e-6);
        }
        // The locus keeps away from the source.
        assert!(cl.distance_to(s.position) > 0.5);
    }

    #[test]
    fn tetrahedron_cut_locus_spans_vertices() {
        let q = regular_tetrahedron();
        let centroid = Point3::from(
            (q.vertices[q.facets[0][0]].coords
                + q.vertices[q.facets[0][1]].coords
                + q.vertices[q.facets[0][2]].coords)
                / 3.0,
        );
        let s = SurfacePoint::locate(&q, centroid).unwrap();
        let cl = cut_locus(&q, &s).unwrap();
        assert!(cl.spans_vertices(&q, 1e-6));
        assert!(cl.is_tree());
        assert!(cl.distance_to(s.position) > 0.5);
    }

    #[test]
    fn source_at_vertex_is_rejected() {
        let q = unit_cube();
        let s = SurfacePoint::locate(&q, Point3::new(0.0, 0.0, 0.0)).unwrap();
        assert!(matches!(
            cut_locus(&q, &s),
            Err(GeodesicError::SourceIsVertex)
        ));
    }

    #[test]
    fn grown_polyhedron_contains_the_original() {
        let q = unit_cube();
        let p = SurfacePoint::locate(&q, Point3::new(0.5, 0.5, 0.0)).unwrap();
        let t = SurfacePoint::locate(&q, Point3::new(0.5, 0.5, 1.0)).unwrap();
        let path = shortest_path(&q, &p, &t).unwrap();
        let grown = grown_polyhedron(&q, &path).unwrap();
        for v in &q.vertices {
            assert!(grown.contains_point(*v, 1e-7));
        }
        // The path lies on the boundary of the grown polyhedron.
        for pt in &path.points {
            let on_boundary = grown
                .planes
                .iter()
                .any(|pl| pl.signed_distance(*pt).abs() < 1e-7);
            assert!(on_boundary && grown.contains_point(*pt, 1e-7));
        }
    }
}
