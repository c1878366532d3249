//! Unfolded-window search over edge sequences.
//!
//! Every state unfolds a simple chain of facets into the plane of its start
//! facet ("root plane"). The source image stays fixed; the state keeps the
//! cone of directions that cross all portal edges of the chain in order.
//! A straight segment from the source image to a point of the current facet
//! is a genuine surface path exactly when its direction lies in the cone.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geom::{
    EdgeId, FacetId, Point2, Point3, Polyhedron, Rigid2, Vector2, EPS_GEOM,
};

use super::surface::SurfacePoint;
use super::{GeodesicError, GeodesicPath, GeodesicResult};

const STATE_BUDGET: usize = 2_000_000;

fn cross2(a: Vector2, b: Vector2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[derive(Debug, Clone)]
pub(super) struct Portal {
    /// Representative id of the undirected edge crossed.
    pub edge: EdgeId,
    /// Full edge endpoints in root-plane coordinates.
    pub a: Point2,
    pub b: Point2,
    /// Full edge endpoints in 3D.
    pub a3: Point3,
    pub b3: Point3,
}

#[derive(Debug, Clone)]
pub(super) struct WindowState {
    pub facet: FacetId,
    pub parent: Option<usize>,
    /// Facet chart -> root plane.
    pub to_root: Rigid2,
    pub portal: Option<Portal>,
    /// CCW direction cone (lo, hi) from the source image; `None` on the
    /// start facet (full circle).
    pub cone: Option<(Vector2, Vector2)>,
    /// Source image in root-plane coordinates.
    pub s_img: Point2,
    /// Undirected edges crossed so far (shortest paths cross each at most
    /// once).
    pub crossed: Vec<EdgeId>,
    /// Lower bound on the length of any path through this window.
    pub min_dist: f64,
}

impl WindowState {
    pub fn direction_visible(&self, dir: Vector2, tol: f64) -> bool {
        match self.cone {
            None => true,
            Some((lo, hi)) => {
                let n = dir.norm();
                if n < EPS_GEOM {
                    return true;
                }
                let d = dir / n;
                cross2(lo, d) >= -tol && cross2(d, hi) >= -tol
            }
        }
    }
}

struct QueueItem {
    dist: f64,
    idx: usize,
}

impl PartialEq for QueueItem {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist
    }
}
impl Eq for QueueItem {}
impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance.
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

pub(super) struct WindowSearch<'a> {
    pub poly: &'a Polyhedron,
    pub arena: Vec<WindowState>,
    queue: BinaryHeap<QueueItem>,
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 < EPS_GEOM * EPS_GEOM {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

impl<'a> WindowSearch<'a> {
    pub fn new(poly: &'a Polyhedron, source: &SurfacePoint) -> Self {
        let mut search = Self {
            poly,
            arena: Vec::new(),
            queue: BinaryHeap::new(),
        };
        for &f in &source.facets {
            let s_img = poly.to_chart(f, source.position);
            let idx = search.arena.len();
            search.arena.push(WindowState {
                facet: f,
                parent: None,
                to_root: Rigid2::identity(),
                portal: None,
                cone: None,
                s_img,
                crossed: Vec::new(),
                min_dist: 0.0,
            });
            search.queue.push(QueueItem { dist: 0.0, idx });
        }
        search
    }

    /// Pops the next state by smallest lower bound; `None` when exhausted or
    /// nothing beats `bound`.
    pub fn pop(&mut self, bound: f64) -> GeodesicResult<Option<usize>> {
        match self.queue.pop() {
            Some(item) if item.dist <= bound => Ok(Some(item.idx)),
            _ => Ok(None),
        }
    }

    /// Expands a state across every uncrossed boundary edge of its facet.
    pub fn expand(&mut self, idx: usize, bound: f64) -> GeodesicResult<()> {
        if self.arena.len() > STATE_BUDGET {
            return Err(GeodesicError::SearchBudgetExceeded);
        }
        let state = self.arena[idx].clone();
        let poly = self.poly;
        let tol = EPS_GEOM * 16.0;
        let start = poly.facet_half_edge[state.facet];
        let mut he_id = start;
        loop {
            let he = poly.half_edges[he_id];
            let next_id = he.next;
            let twin = poly.half_edges[he.twin];
            let edge_rep = he_id.min(he.twin);
            if !state.crossed.contains(&edge_rep) && !poly.artificial[twin.facet] {
                self.try_cross(idx, &state, he_id, edge_rep, bound, tol);
            }
            he_id = next_id;
            if he_id == start {
                break;
            }
        }
        Ok(())
    }

    fn try_cross(
        &mut self,
        parent_idx: usize,
        state: &WindowState,
        he_id: usize,
        edge_rep: EdgeId,
        bound: f64,
        tol: f64,
    ) {
        let poly = self.poly;
        let he = poly.half_edges[he_id];
        let twin = poly.half_edges[he.twin];
        let next_facet = twin.facet;
        let a3 = poly.vertices[he.origin];
        let b3 = poly.vertices[poly.half_edges[he.next].origin];
        let a = state.to_root.apply(poly.to_chart(state.facet, a3));
        let b = state.to_root.apply(poly.to_chart(state.facet, b3));

        // Visible parameter range of [a, b] within the cone.
        let (t0, t1) = match state.cone {
            None => (0.0, 1.0),
            Some((lo, hi)) => {
                let range = |v: Vector2, sign: f64| -> Option<(f64, f64)> {
                    // sign=+1: cross2(v, P(t)-s) >= 0; sign=-1: <= 0.
                    let f0 = sign * cross2(v, a - state.s_img);
                    let f1 = sign * cross2(v, b - state.s_img);
                    if f0 >= -tol && f1 >= -tol {
                        Some((0.0, 1.0))
                    } else if f0 < -tol && f1 < -tol {
                        None
                    } else {
                        let t = f0 / (f0 - f1);
                        if f0 < 0.0 {
                            Some((t.clamp(0.0, 1.0), 1.0))
                        } else {
                            Some((0.0, t.clamp(0.0, 1.0)))
                        }
                    }
                };
                let r_lo = range(lo, 1.0);
                let r_hi = range(hi, -1.0);
                match (r_lo, r_hi) {
                    (Some((a0, a1)), Some((b0, b1))) => {
                        let t0 = a0.max(b0);
                        let t1 = a1.min(b1);
                        if t1 - t0 <= 1e-12 {
                            return;
                        }
                        (t0, t1)
                    }
                    _ => return,
                }
            }
        };

        let p0 = Point2::from(a.coords + (b.coords - a.coords) * t0);
        let p1 = Point2::from(a.coords + (b.coords - a.coords) * t1);
        let d0 = p0 - state.s_img;
        let d1 = p1 - state.s_img;
        if d0.norm() < EPS_GEOM || d1.norm() < EPS_GEOM {
            return; // source on the portal line; nothing to gain crossing here
        }
        let (lo, hi) = if cross2(d0, d1) >= 0.0 {
            (d0.normalize(), d1.normalize())
        } else {
            (d1.normalize(), d0.normalize())
        };
        let min_dist = point_segment_distance(state.s_img, p0, p1);
        if min_dist > bound {
            return;
        }

        // Unfold the next facet across the shared edge into the root plane.
        let a_next = poly.to_chart(next_facet, a3);
        let b_next = poly.to_chart(next_facet, b3);
        let a_cur = state.to_root.inverse().apply(a);
        let b_cur = state.to_root.inverse().apply(b);
        let m = match Rigid2::aligning(a_next, b_next, a_cur, b_cur) {
            Some(m) => m,
            None => return,
        };
        let to_root = state.to_root.compose(&m);

        let mut crossed = state.crossed.clone();
        crossed.push(edge_rep);
        let idx = self.arena.len();
        self.arena.push(WindowState {
            facet: next_facet,
            parent: Some(parent_idx),
            to_root,
            portal: Some(Portal {
                edge: edge_rep,
                a,
                b,
                a3,
                b3,
            }),
            cone: Some((lo, hi)),
            s_img: state.s_img,
            crossed,
            min_dist,
        });
        self.queue.push(QueueItem {
            dist: min_dist,
            idx,
        });
    }

    /// Reconstructs the 3D polyline for a straight segment from the source
    /// image to `q_img` through the portal chain of `state_idx`.
    pub fn reconstruct(
        &self,
        state_idx: usize,
        q3: Point3,
        q_img: Point2,
        source3: Point3,
    ) -> GeodesicPath {
        let mut chain = Vec::new();
        let mut cur = Some(state_idx);
        while let Some(i) = cur {
            chain.push(i);
            cur = self.arena[i].parent;
        }
        chain.reverse();

        let s_img = self.arena[state_idx].s_img;
        let dir = q_img - s_img;
        let mut points = vec![source3];
        let mut faces = Vec::new();
        for &i in &chain {
            let st = &self.arena[i];
            if let Some(portal) = &st.portal {
                // Solve s_img + t*dir = a + u*(b-a) for the edge parameter u.
                let e = portal.b - portal.a;
                let denom = cross2(e, dir);
                let u = if denom.abs() < 1e-300 {
                    0.5
                } else {
                    (cross2(s_img - portal.a, dir) / denom).clamp(0.0, 1.0)
                };
                points.push(portal.a3 + (portal.b3 - portal.a3) * u);
            }
            faces.push(st.facet);
        }
        points.push(q3);
        let length = (q_img - s_img).norm();
        GeodesicPath {
            points,
            face_sequence: faces,
            length,
        }
    }
}

pub(super) fn shortest_path(
    poly: &Polyhedron,
    p: &SurfacePoint,
    q: &SurfacePoint,
) -> GeodesicResult<GeodesicPath> {
    // Same-facet pairs: the in-facet straight segment equals the 3D chord,
    // a global lower bound for any surface path.
    for &f in &p.facets {
        if q.facets.contains(&f) {
            let length = (q.position - p.position).norm();
            return Ok(GeodesicPath {
                points: vec![p.position, q.position],
                face_sequence: vec![f],
                length,
            });
        }
    }

    let mut search = WindowSearch::new(poly, p);
    let mut best: Option<(f64, usize, Point2, Point3)> = None;
    let mut processed = 0usize;
    loop {
        let bound = best.as_ref().map(|b| b.0).unwrap_or(f64::INFINITY);
        let idx = match search.pop(bound - 1e-12)? {
            Some(i) => i,
            None => break,
        };
        processed += 1;
        if processed > STATE_BUDGET {
            return Err(GeodesicError::SearchBudgetExceeded);
        }
        // Goal test on the current facet.
        let st = &search.arena[idx];
        if q.facets.contains(&st.facet) {
            let q_img = st.to_root.apply(poly.to_chart(st.facet, q.position));
            let dir = q_img - st.s_img;
            if st.direction_visible(dir, EPS_GEOM * 16.0) {
                let len = dir.norm();
                if best.as_ref().map(|b| len < b.0).unwrap_or(true) {
                    best = Some((len, idx, q_img, q.position));
                }
            }
        }
        let bound = best.as_ref().map(|b| b.0).unwrap_or(f64::INFINITY);
        search.expand(idx, bound)?;
    }

    let (_, idx, q_img, q3) = best.expect("convex surfaces are geodesically complete");
    Ok(search.reconstruct(idx, q3, q_img, p.position))
}

/// Enumerates all windows with a length lower bound at most `d_max` and
/// returns the arena. Used by the cut-locus construction.
pub(super) fn enumerate_windows(
    poly: &Polyhedron,
    source: &SurfacePoint,
    d_max: f64,
) -> GeodesicResult<Vec<WindowState>> {
    let mut search = WindowSearch::new(poly, source);
    loop {
        let idx = match search.pop(d_max)? {
            Some(i) => i,
            None => break,
        };
        search.expand(idx, d_max)?;
    }
    Ok(search.arena)
}

/// Upper bound on the geodesic distance from `source` to any surface point:
/// Dijkstra over the vertex-edge graph seeded with in-facet distances from
/// the source, plus the largest facet diameter.
pub(super) fn geodesic_radius_upper_bound(poly: &Polyhedron, source: &SurfacePoint) -> f64 {
    let n = poly.vertices.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap: BinaryHeap<QueueItem> = BinaryHeap::new();
    for &f in &source.facets {
        for &v in &poly.facets[f] {
            let d = (poly.vertices[v] - source.position).norm();
            if d < dist[v] {
                dist[v] = d;
                heap.push(QueueItem { dist: d, idx: v });
            }
        }
    }
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (_, a, b) in poly.edges() {
        let len = (poly.vertices[a] - poly.vertices[b]).norm();
        adj[a].push((b, len));
        adj[b].push((a, len));
    }
    while let Some(QueueItem { dist: d, idx: v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(w, len) in &adj[v] {
            let nd = d + len;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(QueueItem { dist: nd, idx: w });
            }
        }
    }
    let max_vertex = dist.iter().cloned().fold(0.0, f64::max);
    let max_diam = (0..poly.facets.len())
        .map(|f| {
            let pts = poly.facet_points(f);
            let mut d = 0.0f64;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    d = d.max((pts[i] - pts[j]).norm());
                }
            }
            d
        })
        .fold(0.0, f64::max);
    max_vertex + max_diam
}
