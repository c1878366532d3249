//! Splitting a polygon by interior segments via a planar face walk.
//!
//! Nodes are the polygon corners, segment endpoints, and endpoints snapped
//! onto polygon edges. Boundary subedges exist only in boundary (CCW)
//! direction; interior segments are doubled. Faces are traversed with the
//! interior on the left by always taking, at each node, the outgoing edge
//! immediately clockwise of the reversed incoming direction.

use crate::geom::{Point2, EPS_GEOM};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubEdgeLabel {
    /// Lies on the polygon boundary edge `edge` (corner `edge` to corner
    /// `edge+1`), covering parameters `t0..t1` of that edge.
    Boundary { edge: usize, t0: f64, t1: f64 },
    /// An interior cut segment.
    Cut,
}

#[derive(Debug, Clone)]
pub struct SplitPiece {
    /// Vertex loop, counterclockwise (interior left). May contain spikes
    /// from dangling cuts; `clean_loop` removes them.
    pub loop2d: Vec<Point2>,
    /// One label per loop edge `loop2d[i] -> loop2d[i+1]`.
    pub labels: Vec<SubEdgeLabel>,
}

impl SplitPiece {
    /// Loop with zero-width spikes (`a, b, a`) removed; for area,
    /// triangulation, and centroid work.
    pub fn clean_loop(&self) -> Vec<Point2> {
        let mut pts = self.loop2d.clone();
        loop {
            let n = pts.len();
            if n < 3 {
                return pts;
            }
            let mut removed = false;
            for i in 0..n {
                let prev = pts[(i + n - 1) % n];
                let next = pts[(i + 1) % n];
                if (prev - next).norm() < EPS_GEOM {
                    let hi = (i + 1) % n;
                    let lo = i;
                    if hi > lo {
                        pts.remove(hi);
                        pts.remove(lo);
                    } else {
                        pts.remove(lo);
                        pts.remove(hi);
                    }
                    removed = true;
                    break;
                }
            }
            if !removed {
                return pts;
            }
        }
    }
}

struct HalfEdge2 {
    from: usize,
    to: usize,
    label: SubEdgeLabel,
    /// Index of the opposite half-edge for doubled (cut) edges.
    twin: Option<usize>,
}

/// Splits `polygon` (simple, CCW or CW) by interior `segments`. Segments
/// must meet each other and the boundary only at endpoints (within `tol`).
pub fn split_polygon(
    polygon: &[Point2],
    segments: &[(Point2, Point2)],
    tol: f64,
) -> Vec<SplitPiece> {
    // Normalize polygon to CCW.
    let ccw = crate::geom::polygon_area(polygon) >= 0.0;
    let poly: Vec<Point2> = if ccw {
        polygon.to_vec()
    } else {
        polygon.iter().rev().cloned().collect()
    };
    let nb = poly.len();

    // Weld nodes.
    let mut nodes: Vec<Point2> = Vec::new();
    let mut weld = |p: Point2, nodes: &mut Vec<Point2>| -> usize {
        for (i, q) in nodes.iter().enumerate() {
            if (p - q).norm() <= tol {
                return i;
            }
        }
        nodes.push(p);
        nodes.len() - 1
    };
    let corner_ids: Vec<usize> = poly.iter().map(|&p| weld(p, &mut nodes)).collect();
    let seg_ids: Vec<(usize, usize)> = segments
        .iter()
        .map(|&(a, b)| (weld(a, &mut nodes), weld(b, &mut nodes)))
        .collect();

    // Boundary subedges: split each polygon edge at nodes lying on it.
    let mut half_edges: Vec<HalfEdge2> = Vec::new();
    for e in 0..nb {
        let a = poly[e];
        let b = poly[(e + 1) % nb];
        let dir = b - a;
        let len = dir.norm();
        if len < EPS_GEOM {
            continue;
        }
        let u = dir / len;
        let mut on_edge: Vec<(f64, usize)> = Vec::new();
        for (ni, np) in nodes.iter().enumerate() {
            let d = np - a;
            let t = d.dot(&u);
            if t > tol && t < len - tol && (d - u * t).norm() <= tol {
                on_edge.push((t / len, ni));
            }
        }
        on_edge.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut prev = (0.0, corner_ids[e]);
        for &(t, ni) in on_edge.iter().chain(std::iter::once(&(1.0, corner_ids[(e + 1) % nb]))) {
            if ni != prev.1 {
                half_edges.push(HalfEdge2 {
                    from: prev.1,
                    to: ni,
                    label: SubEdgeLabel::Boundary {
                        edge: e,
                        t0: prev.0,
                        t1: t,
                    },
                    twin: None,
                });
                prev = (t, ni);
            }
        }
    }
    // Interior segments, doubled.
    for &(ia, ib) in &seg_ids {
        if ia == ib {
            continue;
        }
        let idx = half_edges.len();
        half_edges.push(HalfEdge2 {
            from: ia,
            to: ib,
            label: SubEdgeLabel::Cut,
            twin: Some(idx + 1),
        });
        half_edges.push(HalfEdge2 {
            from: ib,
            to: ia,
            label: SubEdgeLabel::Cut,
            twin: Some(idx),
        });
    }

    // Outgoing half-edges per node, sorted by angle.
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, he) in half_edges.iter().enumerate() {
        out[he.from].push(i);
    }
    let angle = |he: &HalfEdge2| -> f64 {
        let d = nodes[he.to] - nodes[he.from];
        d.y.atan2(d.x)
    };
    for list in out.iter_mut() {
        list.sort_by(|&x, &y| {
            angle(&half_edges[x])
                .partial_cmp(&angle(&half_edges[y]))
                .unwrap()
        });
    }

    // Face walk.
    let mut used = vec![false; half_edges.len()];
    let mut pieces = Vec::new();
    for start in 0..half_edges.len() {
        if used[start] {
            continue;
        }
        let mut loop_nodes = Vec::new();
        let mut labels = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            loop_nodes.push(half_edges[cur].from);
            labels.push(half_edges[cur].label);
            let head = half_edges[cur].to;
            // Direction back along the current edge.
            let rev = {
                let d = nodes[half_edges[cur].from] - nodes[head];
                d.y.atan2(d.x)
            };
            // Outgoing edge immediately clockwise of `rev`; u-turn allowed
            // only when nothing else leaves the node.
            let candidates = &out[head];
            let mut best: Option<(f64, usize)> = None;
            let mut reverse_edge: Option<usize> = None;
            for &k in candidates {
                if half_edges[k].twin == Some(cur) || Some(k) == half_edges[cur].twin {
                    reverse_edge = Some(k);
                    continue;
                }
                if half_edges[k].to == half_edges[cur].from
                    && half_edges[k].twin.is_none()
                    && half_edges[cur].twin.is_none()
                {
                    // Boundary edges are never doubled; a boundary edge back
                    // to the same node would be a degenerate sliver.
                    continue;
                }
                let a = angle(&half_edges[k]);
                let mut delta = rev - a;
                while delta <= 1e-12 {
                    delta += std::f64::consts::TAU;
                }
                while delta > std::f64::consts::TAU {
                    delta -= std::f64::consts::TAU;
                }
                if best.map(|(bd, _)| delta < bd).unwrap_or(true) {
                    best = Some((delta, k));
                }
            }
            let next = match best {
                Some((_, k)) => k,
                None => match reverse_edge {
                    Some(k) => k,
                    None => break,
                },
            };
            cur = next;
            if cur == start {
                break;
            }
        }
        if loop_nodes.len() >= 2 {
            let loop2d: Vec<Point2> = loop_nodes.iter().map(|&n| nodes[n]).collect();
            pieces.push(SplitPiece { loop2d, labels });
        }
    }
    // Drop degenerate pieces (zero area after cleaning).
    pieces.retain(|p| {
        let c = p.clean_loop();
        c.len() >= 3 && crate::geom::polygon_area(&c).abs() > tol * tol
    });
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polygon_area;

    fn square() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn no_segments_returns_the_polygon() {
        let pieces = split_polygon(&square(), &[], 1e-9);
        assert_eq!(pieces.len(), 1);
        assert!((polygon_area(&pieces[0].loop2d) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_chord_splits_in_two() {
        let seg = (Point2::new(0.5, 0.0), Point2::new(0.5, 1.0));
        let pieces = split_polygon(&square(), &[seg], 1e-9);
        assert_eq!(pieces.len(), 2);
        let total: f64 = pieces
            .iter()
            .map(|p| polygon_area(&p.loop2d).abs())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        for p in &pieces {
            assert!((polygon_area(&p.loop2d).abs() - 0.5).abs() < 1e-12);
            assert!(p.labels.iter().any(|l| matches!(l, SubEdgeLabel::Cut)));
        }
    }

    #[test]
    fn star_cuts_make_sectors() {
        // Cuts from the center to all four edge midpoints: 4 sectors.
        let c = Point2::new(0.5, 0.5);
        let segs = vec![
            (c, Point2::new(0.5, 0.0)),
            (c, Point2::new(1.0, 0.5)),
            (c, Point2::new(0.5, 1.0)),
            (c, Point2::new(0.0, 0.5)),
        ];
        let pieces = split_polygon(&square(), &segs, 1e-9);
        assert_eq!(pieces.len(), 4);
        for p in &pieces {
            assert!((polygon_area(&p.loop2d).abs() - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn dangling_cut_keeps_one_piece_with_a_slit() {
        let segs = vec![(Point2::new(0.5, 0.5), Point2::new(0.5, 0.0))];
        let pieces = split_polygon(&square(), &segs, 1e-9);
        assert_eq!(pieces.len(), 1);
        let clean = pieces[0].clean_loop();
        assert!((polygon_area(&clean).abs() - 1.0).abs() < 1e-12);
        // The walk traverses the slit's both sides.
        assert_eq!(
            pieces[0]
                .labels
                .iter()
                .filter(|l| matches!(l, SubEdgeLabel::Cut))
                .count(),
            2
        );
    }

    #[test]
    fn interior_junction_splits_to_three() {
        // Y-junction: center connected to three boundary points.
        let c = Point2::new(0.5, 0.5);
        let segs = vec![
            (c, Point2::new(0.5, 0.0)),
            (c, Point2::new(1.0, 1.0)),
            (c, Point2::new(0.0, 1.0)),
        ];
        let pieces = split_polygon(&square(), &segs, 1e-9);
        assert_eq!(pieces.len(), 3);
        let total: f64 = pieces
            .iter()
            .map(|p| polygon_area(&p.loop2d).abs())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
