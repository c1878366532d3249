use serde::{Deserialize, Serialize};

use super::{GeomError, GeomResult, Plane, Point2, Point3, Vector3, EPS_GEOM};

pub type VertexId = usize;
pub type FacetId = usize;
/// Index of the representative half-edge (the smaller of the twin pair).
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub twin: usize,
    pub next: usize,
    pub facet: FacetId,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min: Point3,
    pub max: Point3,
}

impl BoundingBox {
    pub fn of_points(points: &[Point3]) -> Self {
        let mut min = points[0];
        let mut max = points[0];
        for p in points {
            for k in 0..3 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        Self { min, max }
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    /// Box scaled about its center by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let c = nalgebra::center(&self.min, &self.max);
        Self {
            min: c + (self.min - c) * factor,
            max: c + (self.max - c) * factor,
        }
    }
}

/// Closed convex polyhedral surface with facet loops and half-edge
/// connectivity. Facet vertex loops are counterclockwise seen from outside;
/// facet planes have outward normals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Polyhedron {
    pub vertices: Vec<Point3>,
    /// CCW vertex-index loops, one per facet.
    pub facets: Vec<Vec<VertexId>>,
    pub planes: Vec<Plane>,
    /// Clipping facets introduced by bounded halfspace intersection.
    pub artificial: Vec<bool>,
    #[serde(skip)]
    pub half_edges: Vec<HalfEdge>,
    /// One half-edge index per facet (entry into its loop).
    #[serde(skip)]
    pub facet_half_edge: Vec<usize>,
}

impl Polyhedron {
    /// Assembles connectivity from vertex positions and facet loops and
    /// validates closedness, Euler's formula, planarity, and convexity.
    pub fn from_facet_loops(
        vertices: Vec<Point3>,
        facets: Vec<Vec<VertexId>>,
        artificial: Vec<bool>,
    ) -> GeomResult<Self> {
        if facets.len() < 4 {
            return Err(GeomError::InvalidMesh(format!(
                "need at least 4 facets, got {}",
                facets.len()
            )));
        }
        let mut planes = Vec::with_capacity(facets.len());
        for loop_ in &facets {
            if loop_.len() < 3 {
                return Err(GeomError::InvalidMesh("facet with <3 vertices".into()));
            }
            planes.push(best_fit_plane(loop_.iter().map(|&v| vertices[v]))?);
        }

        let mut half_edges: Vec<HalfEdge> = Vec::new();
        let mut facet_half_edge = Vec::with_capacity(facets.len());
        let mut directed: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        for (f, loop_) in facets.iter().enumerate() {
            let base = half_edges.len();
            facet_half_edge.push(base);
            let n = loop_.len();
            for i in 0..n {
                let a = loop_[i];
                let b = loop_[(i + 1) % n];
                if a == b {
                    return Err(GeomError::InvalidMesh("repeated vertex in facet".into()));
                }
                if directed.insert((a, b), base + i).is_some() {
                    return Err(GeomError::InvalidMesh(format!(
                        "directed edge ({a},{b}) appears twice; surface not oriented"
                    )));
                }
                half_edges.push(HalfEdge {
                    origin: a,
                    twin: usize::MAX,
                    next: base + (i + 1) % n,
                    facet: f,
                });
            }
        }
        for (&(a, b), &he) in directed.iter() {
            match directed.get(&(b, a)) {
                Some(&tw) => half_edges[he].twin = tw,
                None => {
                    return Err(GeomError::InvalidMesh(format!(
                        "edge ({a},{b}) has no twin; surface not closed"
                    )))
                }
            }
        }

        let e = half_edges.len() / 2;
        let v = vertices.len();
        let f = facets.len();
        if v + f != e + 2 {
            return Err(GeomError::InvalidMesh(format!(
                "Euler check failed: V={v} E={e} F={f}"
            )));
        }

        let poly = Self {
            vertices,
            facets,
            planes,
            artificial,
            half_edges,
            facet_half_edge,
        };
        poly.check_convex()?;
        Ok(poly)
    }

    fn check_convex(&self) -> GeomResult<()> {
        let tol = self.geometry_tolerance();
        for (fi, plane) in self.planes.iter().enumerate() {
            for loop_ in &self.facets {
                for &v in loop_ {
                    if plane.signed_distance(self.vertices[v]) > tol {
                        return Err(GeomError::InvalidMesh(format!(
                            "vertex {v} is outside the plane of facet {fi}; not convex"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Geometric tolerance scaled to this mesh's extent.
    pub fn geometry_tolerance(&self) -> f64 {
        EPS_GEOM * self.bounding_box().diagonal().max(1.0) * 16.0
    }

    pub fn bounding_box(&self) -> BoundingBox {
        BoundingBox::of_points(&self.vertices)
    }

    pub fn facet_points(&self, f: FacetId) -> Vec<Point3> {
        self.facets[f].iter().map(|&v| self.vertices[v]).collect()
    }

    /// Orthonormal in-plane chart of a facet: returns (origin, u, v) with
    /// u × v = outward normal.
    pub fn facet_chart(&self, f: FacetId) -> (Point3, Vector3, Vector3) {
        let origin = self.vertices[self.facets[f][0]];
        let n = self.planes[f].normal;
        let first = self.vertices[self.facets[f][1]] - origin;
        let u = (first - n * first.dot(&n)).normalize();
        let v = n.cross(&u);
        (origin, u, v)
    }

    pub fn to_chart(&self, f: FacetId, p: Point3) -> Point2 {
        let (o, u, v) = self.facet_chart(f);
        let d = p - o;
        Point2::new(d.dot(&u), d.dot(&v))
    }

    pub fn from_chart(&self, f: FacetId, p: Point2) -> Point3 {
        let (o, u, v) = self.facet_chart(f);
        o + u * p.x + v * p.y
    }

    pub fn facet_polygon_2d(&self, f: FacetId) -> Vec<Point2> {
        self.facets[f]
            .iter()
            .map(|&vid| self.to_chart(f, self.vertices[vid]))
            .collect()
    }

    /// Unique undirected edges as (representative half-edge id, endpoints).
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.half_edges.iter().enumerate().filter_map(|(i, he)| {
            if i < he.twin {
                Some((i, he.origin, self.half_edges[he.next].origin))
            } else {
                None
            }
        })
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (Point3, Point3) {
        let he = &self.half_edges[e];
        (
            self.vertices[he.origin],
            self.vertices[self.half_edges[he.next].origin],
        )
    }

    pub fn edge_facets(&self, e: EdgeId) -> (FacetId, FacetId) {
        let he = &self.half_edges[e];
        (he.facet, self.half_edges[he.twin].facet)
    }

    /// Representative half-edge of the edge shared by two facets, if any.
    pub fn shared_edge(&self, fa: FacetId, fb: FacetId) -> Option<EdgeId> {
        self.half_edges.iter().enumerate().find_map(|(i, he)| {
            if i < he.twin && he.facet == fa && self.half_edges[he.twin].facet == fb {
                Some(i)
            } else if i < he.twin && he.facet == fb && self.half_edges[he.twin].facet == fa {
                Some(i)
            } else {
                None
            }
        })
    }

    /// Interior dihedral angle at an edge, in (0, pi]; pi for flat edges.
    pub fn dihedral_angle(&self, e: EdgeId) -> GeomResult<f64> {
        let he = &self.half_edges[e];
        if he.twin == usize::MAX {
            return Err(GeomError::BoundaryEdge(e));
        }
        let (fa, fb) = self.edge_facets(e);
        Ok(dihedral_from_normals(
            self.planes[fa].normal,
            self.planes[fb].normal,
        ))
    }

    /// True when `p` is inside or on the solid within tolerance.
    pub fn contains_point(&self, p: Point3, tol: f64) -> bool {
        self.planes.iter().all(|pl| pl.signed_distance(p) <= tol)
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.facets.len())
            .map(|f| super::polygon_area(&self.facet_polygon_2d(f)).abs())
            .sum()
    }
}

/// Interior dihedral between facets with outward normals `na`, `nb`:
/// pi minus the normal angle, so perpendicular facets give pi/2 and
/// coplanar facets give pi.
pub fn dihedral_from_normals(na: Vector3, nb: Vector3) -> f64 {
    let c = na.dot(&nb).clamp(-1.0, 1.0);
    std::f64::consts::PI - c.acos()
}

fn best_fit_plane(points: impl IntoIterator<Item = Point3>) -> GeomResult<Plane> {
    let pts: Vec<Point3> = points.into_iter().collect();
    let mut centroid = Vector3::zeros();
    for p in &pts {
        centroid += p.coords;
    }
    centroid /= pts.len() as f64;
    // Newell's method; robust for nearly-planar loops.
    let mut normal = Vector3::zeros();
    let n = pts.len();
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        normal.x += (a.y - b.y) * (a.z + b.z);
        normal.y += (a.z - b.z) * (a.x + b.x);
        normal.z += (a.x - b.x) * (a.y + b.y);
    }
    Plane::from_point_normal(Point3::from(centroid), normal)
}
