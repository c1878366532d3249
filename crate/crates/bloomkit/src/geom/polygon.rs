//! Planar polygon helpers shared by developments, face extraction, and the
//! contact classifier. Polygons are vertex loops in counterclockwise order
//! unless stated otherwise; nonconvex simple polygons are supported.

use super::{Point2, Vector2, EPS_GEOM};

fn cross2(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Signed area (positive for counterclockwise loops).
pub fn polygon_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    0.5 * s
}

/// Area centroid. Falls back to the vertex mean for near-zero areas.
pub fn polygon_centroid(pts: &[Point2]) -> Point2 {
    let area = polygon_area(pts);
    if area.abs() < EPS_GEOM * EPS_GEOM {
        let mut c = Vector2::zeros();
        for p in pts {
            c += p.coords;
        }
        return Point2::from(c / pts.len() as f64);
    }
    let n = pts.len();
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let w = a.x * b.y - b.x * a.y;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    Point2::new(cx / (6.0 * area), cy / (6.0 * area))
}

/// 2D convex hull (counterclockwise, no collinear points), Andrew's chain.
pub fn convex_hull_2d(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| (*a - *b).norm() < EPS_GEOM);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= EPS_GEOM {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= EPS_GEOM
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Point-in-polygon by winding-crossings; boundary points count as inside
/// within `tol`.
pub fn point_in_polygon(p: Point2, poly: &[Point2], tol: f64) -> bool {
    let n = poly.len();
    for i in 0..n {
        if point_segment_distance_2d(p, poly[i], poly[(i + 1) % n]) <= tol {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn point_segment_distance_2d(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 < EPS_GEOM * EPS_GEOM {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Ear-clipping triangulation of a simple polygon, returning index triples.
/// Collinear vertices are tolerated; convex inputs fall through quickly.
pub fn ear_triangulate(pts: &[Point2]) -> Vec<[usize; 3]> {
    let n = pts.len();
    let mut tris = Vec::with_capacity(n.saturating_sub(2));
    if n < 3 {
        return tris;
    }
    // Work on an index list; orientation normalized to CCW.
    let ccw = polygon_area(pts) >= 0.0;
    let mut idx: Vec<usize> = if ccw {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };

    let scale: f64 = pts
        .iter()
        .map(|p| p.coords.norm())
        .fold(1.0, f64::max);
    let eps = EPS_GEOM * scale * scale * 16.0;

    let is_ear = |idx: &[usize], i: usize| -> bool {
        let m = idx.len();
        let prev = idx[(i + m - 1) % m];
        let cur = idx[i];
        let next = idx[(i + 1) % m];
        let a = pts[prev];
        let b = pts[cur];
        let c = pts[next];
        let area2 = cross2(a, b, c);
        if area2 <= eps {
            return false; // reflex or degenerate corner
        }
        // No other polygon vertex inside or on the candidate ear; vertices
        // exactly on the diagonal must block (the diagonal would cross the
        // boundary there).
        for &j in idx.iter() {
            if j == prev || j == cur || j == next {
                continue;
            }
            let p = pts[j];
            if (p - a).norm() < EPS_GEOM || (p - b).norm() < EPS_GEOM || (p - c).norm() < EPS_GEOM
            {
                continue;
            }
            let d1 = cross2(a, b, p);
            let d2 = cross2(b, c, p);
            let d3 = cross2(c, a, p);
            if d1 >= -eps && d2 >= -eps && d3 >= -eps {
                return false;
            }
        }
        true
    };

    let mut guard = 0usize;
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for i in 0..m {
            if is_ear(&idx, i) {
                let prev = idx[(i + m - 1) % m];
                let next = idx[(i + 1) % m];
                tris.push([prev, idx[i], next]);
                idx.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // Degenerate remainder (collinear chain or sliver): clip the
            // least-reflex corner to guarantee progress.
            let mut best = 0usize;
            let mut best_area = f64::NEG_INFINITY;
            for i in 0..idx.len() {
                let m = idx.len();
                let a = pts[idx[(i + m - 1) % m]];
                let b = pts[idx[i]];
                let c = pts[idx[(i + 1) % m]];
                let area2 = cross2(a, b, c);
                if area2 > best_area {
                    best_area = area2;
                    best = i;
                }
            }
            let m = idx.len();
            let prev = idx[(best + m - 1) % m];
            let next = idx[(best + 1) % m];
            if best_area > 0.0 {
                tris.push([prev, idx[best], next]);
            }
            idx.remove(best);
        }
        guard += 1;
        if guard > 4 * n + 16 {
            break;
        }
    }
    if idx.len() == 3 {
        let a = pts[idx[0]];
        let b = pts[idx[1]];
        let c = pts[idx[2]];
        if cross2(a, b, c).abs() > EPS_GEOM * EPS_GEOM {
            tris.push([idx[0], idx[1], idx[2]]);
        }
    }
    tris
}

/// Clip a convex polygon against the halfplane left of directed line a->b.
fn clip_halfplane(poly: &[Point2], a: Point2, b: Point2) -> Vec<Point2> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let sc = cross2(a, b, s);
        let ec = cross2(a, b, e);
        let s_in = sc >= 0.0;
        let e_in = ec >= 0.0;
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) | (false, true) => {
                let denom = sc - ec;
                if denom.abs() > 1e-300 {
                    let t = sc / denom;
                    out.push(s + (e - s) * t);
                }
                if e_in {
                    out.push(e);
                }
            }
            (false, false) => {}
        }
    }
    out
}

fn convex_intersection_area(a: &[Point2], b: &[Point2]) -> f64 {
    let mut poly = a.to_vec();
    let n = b.len();
    for i in 0..n {
        if poly.len() < 3 {
            return 0.0;
        }
        poly = clip_halfplane(&poly, b[i], b[(i + 1) % n]);
    }
    if poly.len() < 3 {
        0.0
    } else {
        polygon_area(&poly).abs()
    }
}

/// Area of the intersection of two simple polygons (triangulated, then
/// summed over convex triangle-pair clips).
pub fn polygon_intersection_area(a: &[Point2], b: &[Point2]) -> f64 {
    let tris_a = ear_triangulate(a);
    let tris_b = ear_triangulate(b);
    let mut total = 0.0;
    for ta in &tris_a {
        let pa = [a[ta[0]], a[ta[1]], a[ta[2]]];
        let pa_ccw = if polygon_area(&pa) >= 0.0 {
            pa
        } else {
            [pa[2], pa[1], pa[0]]
        };
        for tb in &tris_b {
            let pb = [b[tb[0]], b[tb[1]], b[tb[2]]];
            let pb_ccw = if polygon_area(&pb) >= 0.0 {
                pb
            } else {
                [pb[2], pb[1], pb[0]]
            };
            total += convex_intersection_area(&pa_ccw, &pb_ccw);
        }
    }
    total
}

/// Kernel of a simple polygon (the set seeing the whole interior), computed
/// by clipping a bounding box by every edge halfplane. Empty when the
/// polygon is not star-shaped.
pub fn polygon_kernel(pts: &[Point2]) -> Vec<Point2> {
    let ccw: Vec<Point2> = if polygon_area(pts) >= 0.0 {
        pts.to_vec()
    } else {
        pts.iter().rev().cloned().collect()
    };
    let (mut lo, mut hi) = (ccw[0], ccw[0]);
    for p in &ccw {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let pad = (hi - lo).norm().max(1.0);
    let mut kernel = vec![
        Point2::new(lo.x - pad, lo.y - pad),
        Point2::new(hi.x + pad, lo.y - pad),
        Point2::new(hi.x + pad, hi.y + pad),
        Point2::new(lo.x - pad, hi.y + pad),
    ];
    let n = ccw.len();
    for i in 0..n {
        if kernel.len() < 3 {
            return Vec::new();
        }
        kernel = clip_halfplane(&kernel, ccw[i], ccw[(i + 1) % n]);
    }
    if kernel.len() < 3 || polygon_area(&kernel).abs() < EPS_GEOM * EPS_GEOM {
        Vec::new()
    } else {
        kernel
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn area_and_centroid_of_square() {
        let sq = square();
        assert!((polygon_area(&sq) - 1.0).abs() < 1e-12);
        let c = polygon_centroid(&sq);
        assert!((c - Point2::new(0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn ear_triangulation_covers_nonconvex_polygon() {
        // L-shape
        let l = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        let tris = ear_triangulate(&l);
        assert_eq!(tris.len(), 4);
        let mut area = 0.0;
        for t in &tris {
            area += polygon_area(&[l[t[0]], l[t[1]], l[t[2]]]).abs();
        }
        assert!((area - 3.0).abs() < 1e-10);
    }

    #[test]
    fn intersection_area_of_offset_squares() {
        let a = square();
        let b: Vec<Point2> = square()
            .iter()
            .map(|p| Point2::new(p.x + 0.5, p.y + 0.5))
            .collect();
        assert!((polygon_intersection_area(&a, &b) - 0.25).abs() < 1e-10);
    }

    #[test]
    fn kernel_of_convex_polygon_is_the_polygon() {
        let k = polygon_kernel(&square());
        assert!((polygon_area(&k).abs() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn kernel_of_l_shape_is_smaller() {
        let l = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        let k = polygon_kernel(&l);
        assert!(!k.is_empty());
        let area = polygon_area(&k).abs();
        assert!(area > 0.5 && area < 3.0 - 0.5);
    }
}
