use crate::geom::{point_in_polygon, FacetId, Point3, Polyhedron, VertexId};

use super::{GeodesicError, GeodesicResult};

/// A point on the surface of a polyhedron together with every facet it lies
/// on (one for facet-interior points, two for edge points, more at vertices).
#[derive(Debug, Clone)]
pub struct SurfacePoint {
    pub position: Point3,
    pub facets: Vec<FacetId>,
    /// Set when the point coincides with a polyhedron vertex.
    pub vertex: Option<VertexId>,
}

impl SurfacePoint {
    /// Locates `p` on the surface, projecting onto the nearest facet plane
    /// within tolerance.
    pub fn locate(poly: &Polyhedron, p: Point3) -> GeodesicResult<Self> {
        let tol = poly.geometry_tolerance().max(1e-7);
        let mut facets = Vec::new();
        let mut projected = p;
        for f in 0..poly.facets.len() {
            let d = poly.planes[f].signed_distance(p);
            if d.abs() <= tol {
                let p2 = poly.to_chart(f, p);
                if point_in_polygon(p2, &poly.facet_polygon_2d(f), tol) {
                    if facets.is_empty() {
                        projected = poly.planes[f].project(p);
                    }
                    facets.push(f);
                }
            }
        }
        if facets.is_empty() {
            return Err(GeodesicError::NotOnSurface(p));
        }
        let vertex = poly
            .vertices
            .iter()
            .position(|v| (v - projected).norm() <= tol);
        Ok(Self {
            position: projected,
            facets,
            vertex,
        })
    }

    /// The point must lie on the given facet; used when the caller already
    /// knows the facet (e.g. CLI source with an explicit facet id).
    pub fn on_facet(poly: &Polyhedron, facet: FacetId, p: Point3) -> GeodesicResult<Self> {
        let located = Self::locate(poly, p)?;
        if !located.facets.contains(&facet) {
            return Err(GeodesicError::NotOnSurface(p));
        }
        Ok(located)
    }
}
