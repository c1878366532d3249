//! Source unfolding: cut along the cut locus and root the face tree at the
//! face containing the source.

use crate::geom::Point3;
use crate::unfolding::Unfolding;

use super::surface::SurfacePoint;
use super::GeodesicResult;

/// Rooted tree of faces of the source unfolding. The parent of a face is
/// the face through which shortest paths from the source enter it.
#[derive(Debug, Clone)]
pub struct SourceUnfoldingTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Sample interior point per face used to establish parenthood.
    pub samples: Vec<Point3>,
}

pub fn source_unfolding(
    _poly: &crate::geom::Polyhedron,
    _s: &SurfacePoint,
) -> GeodesicResult<(Unfolding, SourceUnfoldingTree)> {
    unimplemented!("filled in after the unfolding module")
}
