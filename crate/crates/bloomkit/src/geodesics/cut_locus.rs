//! Cut locus construction from the full set of unfolded windows.
//!
//! Inside a facet, the distance to the source is the lower envelope of
//! `|x - s_w|` over windows `w` valid at `x` (direction within the window's
//! cone). The cut locus is where two windows with distinct unfoldings tie at
//! the minimum: straight bisector segments inside facets, plus tie loci
//! along polyhedron edges (comparing windows of both incident facets after
//! unfolding across the edge).

use crate::geom::{EdgeId, FacetId, Point2, Point3, Polyhedron, Rigid2, Vector2, EPS_GEOM};

use super::surface::SurfacePoint;
use super::windows::{enumerate_windows, geodesic_radius_upper_bound, WindowState};
use super::{GeodesicError, GeodesicResult};

/// Tie tolerance for "two windows achieve the minimum distance".
const TIE_TOL: f64 = 1e-8;
/// Arcs shorter than this are collapsed into nodes.
const MIN_ARC_LEN: f64 = 1e-7;
/// Endpoint weld tolerance when stitching arcs into a tree.
const WELD_TOL: f64 = 1e-6;

fn cross2(a: Vector2, b: Vector2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Tree of points with more than one shortest path to the source.
#[derive(Debug, Clone)]
pub struct CutLocus {
    /// Straight arc segments in 3D.
    pub segments: Vec<(Point3, Point3)>,
    /// Welded node positions (segment endpoints).
    pub nodes: Vec<Point3>,
    /// Segments as node index pairs.
    pub arcs: Vec<(usize, usize)>,
    /// Per segment, the facet it lies in (edge arcs use one incident facet).
    pub segment_facets: Vec<FacetId>,
}

impl CutLocus {
    pub fn distance_to(&self, p: Point3) -> f64 {
        self.segments
            .iter()
            .map(|(a, b)| point_segment_distance_3d(p, *a, *b))
            .fold(f64::INFINITY, f64::min)
    }

    /// True when the arc graph is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let n = self.nodes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n && self.arcs.len() + 1 == n
    }

    /// True when every polyhedron vertex lies within `tol` of some arc.
    pub fn spans_vertices(&self, poly: &Polyhedron, tol: f64) -> bool {
        poly.vertices.iter().all(|&v| self.distance_to(v) <= tol)
    }
}

fn point_segment_distance_3d(p: Point3, a: Point3, b: Point3) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 < EPS_GEOM * EPS_GEOM {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// A window expressed in one facet's own chart.
#[derive(Debug, Clone)]
struct LocalWindow {
    s: Point2,
    cone: Option<(Vector2, Vector2)>,
    /// Undirected edge the window entered through, if any.
    entry_edge: Option<EdgeId>,
}

impl LocalWindow {
    fn valid_at(&self, x: Point2, tol: f64) -> bool {
        match self.cone {
            None => true,
            Some((lo, hi)) => {
                let d = x - self.s;
                let n = d.norm();
                if n < EPS_GEOM {
                    return true;
                }
                let d = d / n;
                cross2(lo, d) >= -tol && cross2(d, hi) >= -tol
            }
        }
    }

    fn dist(&self, x: Point2) -> f64 {
        (x - self.s).norm()
    }
}

fn localize(poly: &Polyhedron, arena: &[WindowState]) -> Vec<Vec<LocalWindow>> {
    let mut per_facet: Vec<Vec<LocalWindow>> = vec![Vec::new(); poly.facets.len()];
    for st in arena {
        let inv = st.to_root.inverse();
        let s = inv.apply(st.s_img);
        let cone = st
            .cone
            .map(|(lo, hi)| (inv.apply_vector(lo), inv.apply_vector(hi)));
        per_facet[st.facet].push(LocalWindow {
            s,
            cone,
            entry_edge: st.portal.as_ref().map(|p| p.edge),
        });
    }
    per_facet
}

pub(super) fn cut_locus(poly: &Polyhedron, s: &SurfacePoint) -> GeodesicResult<CutLocus> {
    if s.vertex.is_some() {
        return Err(GeodesicError::SourceIsVertex);
    }
    let d_max = geodesic_radius_upper_bound(poly, s) + 4.0 * TIE_TOL;
    let arena = enumerate_windows(poly, s, d_max)?;
    let per_facet = localize(poly, &arena);

    let mut raw: Vec<(Point3, Point3, FacetId)> = Vec::new();
    for f in 0..poly.facets.len() {
        if poly.artificial[f] {
            continue;
        }
        facet_interior_arcs(poly, f, &per_facet[f], &mut raw);
    }
    for (he, _, _) in poly.edges().collect::<Vec<_>>() {
        edge_arcs(poly, he, &per_facet, &mut raw);
    }

    Ok(stitch(poly, raw))
}

/// Emits tie segments between window pairs inside facet `f`.
fn facet_interior_arcs(
    poly: &Polyhedron,
    f: FacetId,
    windows: &[LocalWindow],
    out: &mut Vec<(Point3, Point3, FacetId)>,
) {
    let polygon = poly.facet_polygon_2d(f);
    let w = windows.len();
    let tol = EPS_GEOM * 64.0;
    for i in 0..w {
        for j in (i + 1)..w {
            let si = windows[i].s;
            let sj = windows[j].s;
            let sep = (sj - si).norm();
            if sep < 1e-9 {
                continue;
            }
            // Perpendicular bisector of the two source images.
            let mid = nalgebra::center(&si, &sj);
            let dn = (sj - si) / sep;
            let dir = Vector2::new(-dn.y, dn.x);
            let Some((t0, t1)) = clip_line_to_convex(mid, dir, &polygon, tol) else {
                continue;
            };
            if t1 - t0 <= MIN_ARC_LEN {
                continue;
            }
            let mut cuts = vec![t0, t1];
            collect_breakpoints(mid, dir, t0, t1, windows, i, &mut cuts);
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for k in 0..cuts.len() - 1 {
                let (a, b) = (cuts[k], cuts[k + 1]);
                if b - a <= MIN_ARC_LEN {
                    continue;
                }
                let tm = 0.5 * (a + b);
                let x = Point2::from(mid.coords + dir * tm);
                if is_tie(windows, i, j, x, tol) {
                    let pa = poly.from_chart(f, Point2::from(mid.coords + dir * a));
                    let pb = poly.from_chart(f, Point2::from(mid.coords + dir * b));
                    out.push((pa, pb, f));
                }
            }
        }
    }
}

/// Both `i` and `j` valid at `x` and within the tie tolerance of the
/// minimum over all valid windows.
fn is_tie(windows: &[LocalWindow], i: usize, j: usize, x: Point2, tol: f64) -> bool {
    if !windows[i].valid_at(x, tol) || !windows[j].valid_at(x, tol) {
        return false;
    }
    let di = windows[i].dist(x);
    let dj = windows[j].dist(x);
    let mut dmin = f64::INFINITY;
    for w in windows {
        if w.valid_at(x, tol) {
            dmin = dmin.min(w.dist(x));
        }
    }
    di <= dmin + TIE_TOL && dj <= dmin + TIE_TOL
}

/// Parameter values along `p(t) = m + t*dir` where the minimizer set may
/// change: ties of window `i` with every other window, and every window's
/// cone boundary rays.
fn collect_breakpoints(
    m: Point2,
    dir: Vector2,
    t0: f64,
    t1: f64,
    windows: &[LocalWindow],
    i: usize,
    cuts: &mut Vec<f64>,
) {
    let mut push = |t: f64| {
        if t > t0 + 1e-12 && t < t1 - 1e-12 {
            cuts.push(t);
        }
    };
    let si = windows[i].s;
    for (k, wk) in windows.iter().enumerate() {
        if k != i {
            // |p - si|^2 = |p - sk|^2  is linear in t.
            let sk = wk.s;
            let d = sk - si;
            let c0 = (m - si).norm_squared() - (m - sk).norm_squared();
            let c1 = 2.0 * dir.dot(&d);
            if c1.abs() > 1e-14 {
                push(-c0 / c1);
            }
        }
        if let Some((lo, hi)) = wk.cone {
            for ray in [lo, hi] {
                // cross(ray, p(t) - s_k) = 0 is linear in t.
                let c0 = cross2(ray, m - wk.s);
                let c1 = cross2(ray, dir);
                if c1.abs() > 1e-14 {
                    push(-c0 / c1);
                }
            }
        }
    }
}

/// Clips the line `m + t*dir` to a convex CCW polygon; returns the t-range.
fn clip_line_to_convex(
    m: Point2,
    dir: Vector2,
    polygon: &[Point2],
    tol: f64,
) -> Option<(f64, f64)> {
    let mut t0 = f64::NEG_INFINITY;
    let mut t1 = f64::INFINITY;
    let n = polygon.len();
    for k in 0..n {
        let a = polygon[k];
        let b = polygon[(k + 1) % n];
        let e = b - a;
        // inside: cross(e, p - a) >= -tol
        let c0 = cross2(e, m - a) + tol;
        let c1 = cross2(e, dir);
        if c1.abs() < 1e-14 {
            if c0 < 0.0 {
                return None;
            }
        } else {
            let t = -c0 / c1;
            if c1 > 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    (t1 > t0).then_some((t0, t1))
}

/// Emits tie loci along a polyhedron edge, comparing windows from both
/// incident facets after unfolding across the edge. Windows that entered
/// through this very edge are excluded (they duplicate their parent on the
/// other side).
fn edge_arcs(
    poly: &Polyhedron,
    he: usize,
    per_facet: &[Vec<LocalWindow>],
    out: &mut Vec<(Point3, Point3, FacetId)>,
) {
    let tol = EPS_GEOM * 64.0;
    let rep = he.min(poly.half_edges[he].twin);
    let twin = poly.half_edges[he].twin;
    let fa = poly.half_edges[he].facet;
    let fb = poly.half_edges[twin].facet;
    if poly.artificial[fa] || poly.artificial[fb] {
        return;
    }
    let (a3, b3) = poly.edge_endpoints(he);

    let a_in_a = poly.to_chart(fa, a3);
    let b_in_a = poly.to_chart(fa, b3);
    let a_in_b = poly.to_chart(fb, a3);
    let b_in_b = poly.to_chart(fb, b3);
    let Some(m_ba) = Rigid2::aligning(a_in_b, b_in_b, a_in_a, b_in_a) else {
        return;
    };

    // Candidates in facet A's chart; remember which side each came from.
    let mut cands: Vec<(LocalWindow, bool)> = Vec::new();
    for w in &per_facet[fa] {
        if w.entry_edge == Some(rep) {
            continue;
        }
        cands.push((w.clone(), false));
    }
    for w in &per_facet[fb] {
        if w.entry_edge == Some(rep) {
            continue;
        }
        let cone = w
            .cone
            .map(|(lo, hi)| (m_ba.apply_vector(lo), m_ba.apply_vector(hi)));
        cands.push((
            LocalWindow {
                s: m_ba.apply(w.s),
                cone,
                entry_edge: w.entry_edge,
            },
            true,
        ));
    }
    if cands.len() < 2 {
        return;
    }

    // Edge parameterization in facet A's chart.
    let e2 = b_in_a - a_in_a;
    let elen = e2.norm();
    if elen < EPS_GEOM {
        return;
    }
    let x_at = |u: f64| Point2::from(a_in_a.coords + e2 * u);

    let windows: Vec<LocalWindow> = cands.iter().map(|(w, _)| w.clone()).collect();
    for i in 0..windows.len() {
        for j in (i + 1)..windows.len() {
            // Cross-side ties are what creates edge arcs; same-side ties on
            // an edge are the boundary trace of interior arcs and come out
            // of the facet pass, but including them here is harmless and
            // catches bisectors collinear with the edge.
            let si = windows[i].s;
            let sj = windows[j].s;
            if (sj - si).norm() < 1e-9 {
                continue;
            }
            // f(u) = |x(u)-si|^2 - |x(u)-sj|^2 is linear in u.
            let f0 = (x_at(0.0) - si).norm_squared() - (x_at(0.0) - sj).norm_squared();
            let f1 = (x_at(1.0) - si).norm_squared() - (x_at(1.0) - sj).norm_squared();
            let scale = elen * elen;
            let mut intervals: Vec<(f64, f64)> = Vec::new();
            if f0.abs() <= TIE_TOL * scale && f1.abs() <= TIE_TOL * scale {
                intervals.push((0.0, 1.0));
            } else {
                let denom = f0 - f1;
                if denom.abs() > 1e-14 {
                    let u = f0 / denom;
                    if (0.0..=1.0).contains(&u) {
                        let h = MIN_ARC_LEN / elen;
                        intervals.push(((u - h).max(0.0), (u + h).min(1.0)));
                    }
                }
            }
            for (u0, u1) in intervals {
                // Subdivide at every candidate breakpoint, then test.
                let mut cuts = vec![u0, u1];
                for (k, wk) in windows.iter().enumerate() {
                    if k != i {
                        let sk = wk.s;
                        let g0 =
                            (x_at(0.0) - si).norm_squared() - (x_at(0.0) - sk).norm_squared();
                        let g1 =
                            (x_at(1.0) - si).norm_squared() - (x_at(1.0) - sk).norm_squared();
                        let denom = g0 - g1;
                        if denom.abs() > 1e-14 {
                            let u = g0 / denom;
                            if u > u0 + 1e-12 && u < u1 - 1e-12 {
                                cuts.push(u);
                            }
                        }
                    }
                    if let Some((lo, hi)) = wk.cone {
                        for ray in [lo, hi] {
                            let c0 = cross2(ray, x_at(0.0) - wk.s);
                            let c1 = cross2(ray, x_at(1.0) - wk.s) - c0;
                            if c1.abs() > 1e-14 {
                                let u = -c0 / c1;
                                if u > u0 + 1e-12 && u < u1 - 1e-12 {
                                    cuts.push(u);
                                }
                            }
                        }
                    }
                }
                cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                for k in 0..cuts.len() - 1 {
                    let (ua, ub) = (cuts[k], cuts[k + 1]);
                    if (ub - ua) * elen <= MIN_ARC_LEN {
                        continue;
                    }
                    let um = 0.5 * (ua + ub);
                    let x = x_at(um);
                    if !windows[i].valid_at(x, tol) || !windows[j].valid_at(x, tol) {
                        continue;
                    }
                    let di = windows[i].dist(x);
                    let dj = windows[j].dist(x);
                    if (di - dj).abs() > TIE_TOL {
                        continue;
                    }
                    let mut dmin = f64::INFINITY;
                    for w in &windows {
                        if w.valid_at(x, tol) {
                            dmin = dmin.min(w.dist(x));
                        }
                    }
                    if di <= dmin + TIE_TOL && dj <= dmin + TIE_TOL {
                        let pa = a3 + (b3 - a3) * ua;
                        let pb = a3 + (b3 - a3) * ub;
                        out.push((pa, pb, fa));
                    }
                }
            }
        }
    }
}

/// Welds endpoints (snapping to polyhedron vertices first), merges
/// collinear segments with positive-length overlap, splits arcs at junction
/// nodes interior to them, and assembles the arc graph.
fn stitch(poly: &Polyhedron, raw: Vec<(Point3, Point3, FacetId)>) -> CutLocus {
    // Merge collinear segments that genuinely overlap; abutting segments
    // stay separate so junction nodes survive.
    let mut merged: Vec<(Point3, Point3, FacetId)> = Vec::new();
    'next: for (a, b, f) in raw {
        if (a - b).norm() < MIN_ARC_LEN {
            continue;
        }
        for seg in merged.iter_mut() {
            let dir = (seg.1 - seg.0).normalize();
            let on_line = |p: Point3| -> bool {
                let d = p - seg.0;
                (d - dir * d.dot(&dir)).norm() < WELD_TOL
            };
            if on_line(a) && on_line(b) {
                let t_a = (a - seg.0).dot(&dir);
                let t_b = (b - seg.0).dot(&dir);
                let (t_lo, t_hi) = (t_a.min(t_b), t_a.max(t_b));
                let len = (seg.1 - seg.0).norm();
                let overlap = t_hi.min(len) - t_lo.max(0.0);
                if overlap > WELD_TOL {
                    let new_lo = t_lo.min(0.0);
                    let new_hi = t_hi.max(len);
                    let o = seg.0;
                    seg.0 = o + dir * new_lo;
                    seg.1 = o + dir * new_hi;
                    continue 'next;
                }
            }
        }
        merged.push((a, b, f));
    }

    let snap = |p: Point3| -> Point3 {
        for v in &poly.vertices {
            if (p - v).norm() <= WELD_TOL {
                return *v;
            }
        }
        p
    };

    // Collect candidate node positions (all endpoints, vertex-snapped).
    let mut nodes: Vec<Point3> = Vec::new();
    let mut weld = |p: Point3, nodes: &mut Vec<Point3>| -> usize {
        for (i, q) in nodes.iter().enumerate() {
            if (p - q).norm() <= WELD_TOL {
                return i;
            }
        }
        nodes.push(p);
        nodes.len() - 1
    };
    let mut welded: Vec<(usize, usize, FacetId)> = Vec::new();
    for (a, b, f) in merged {
        let ia = weld(snap(a), &mut nodes);
        let ib = weld(snap(b), &mut nodes);
        if ia != ib {
            welded.push((ia, ib, f));
        }
    }

    // Split arcs at nodes interior to them (T- and X-junctions).
    let mut split: Vec<(usize, usize, FacetId)> = Vec::new();
    for (ia, ib, f) in welded {
        let a = nodes[ia];
        let b = nodes[ib];
        let dir = b - a;
        let len = dir.norm();
        let u = dir / len;
        let mut interior: Vec<(f64, usize)> = Vec::new();
        for (ni, np) in nodes.iter().enumerate() {
            if ni == ia || ni == ib {
                continue;
            }
            let d = np - a;
            let t = d.dot(&u);
            if t > WELD_TOL && t < len - WELD_TOL && (d - u * t).norm() <= WELD_TOL {
                interior.push((t, ni));
            }
        }
        interior.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut prev = ia;
        for (_, ni) in interior {
            split.push((prev, ni, f));
            prev = ni;
        }
        split.push((prev, ib, f));
    }

    let mut segments = Vec::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut segment_facets = Vec::new();
    for (ia, ib, f) in split {
        if ia == ib || (nodes[ia] - nodes[ib]).norm() < MIN_ARC_LEN {
            continue;
        }
        if arcs
            .iter()
            .any(|&(x, y)| (x, y) == (ia, ib) || (x, y) == (ib, ia))
        {
            continue;
        }
        segments.push((nodes[ia], nodes[ib]));
        arcs.push((ia, ib));
        segment_facets.push(f);
    }

    // Drop nodes that ended up unused (merged-away endpoints).
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut used_nodes = Vec::new();
    for (a, b) in arcs.iter_mut() {
        for id in [&mut *a, &mut *b] {
            if remap[*id] == usize::MAX {
                remap[*id] = used_nodes.len();
                used_nodes.push(nodes[*id]);
            }
            *id = remap[*id];
        }
    }

    CutLocus {
        segments,
        nodes: used_nodes,
        arcs,
        segment_facets,
    }
}
