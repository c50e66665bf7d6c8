//! Delaunay triangulation (incremental Bowyer-Watson) and lattice complexes.
//!
//! Every triangle of the triangulation is registered as a 2-simplex. Holes
//! are punched by removing, for each requested center, the nearest vertex
//! together with all its incident simplices; the resulting cycle around the
//! removed star is left unfilled.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rng::CounterRng;

/// Delaunay triangulation of `points` with one hole punched per entry of
/// `hole_centers`. Vertex indices in the returned complex refer to positions
/// in `points`; removed vertices simply have no incident simplices.
pub fn delaunay_complex(
    points: &[[f64; 2]],
    hole_centers: &[[f64; 2]],
) -> Result<SimplicialComplex> {
    let triangles = triangulate(points)?;
    let facets: Vec<Vec<usize>> = triangles.iter().map(|t| t.to_vec()).collect();
    let mut complex = SimplicialComplex::from_facets(&facets, points.len())?;
    for center in hole_centers {
        let vertex = nearest_present_vertex(&complex, points, *center)
            .ok_or(Error::EmptyInput("complex has no vertices left to remove"))?;
        complex = complex.remove_vertex(vertex);
    }
    Ok(complex)
}

/// `n` uniform points in the unit square from the seeded stream, triangulated
/// with holes punched. Returns the complex together with the points, which
/// downstream code needs for waypoint routing.
pub fn random_delaunay_complex(
    n: usize,
    hole_centers: &[[f64; 2]],
    seed: u64,
) -> Result<(SimplicialComplex, Vec<[f64; 2]>)> {
    let mut rng = CounterRng::new(seed);
    let points = rng.unit_square_points(n);
    let complex = delaunay_complex(&points, hole_centers)?;
    Ok((complex, points))
}

fn nearest_present_vertex(
    complex: &SimplicialComplex,
    points: &[[f64; 2]],
    center: [f64; 2],
) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for s in complex.simplices(0) {
        let v = s[0];
        let dx = points[v][0] - center[0];
        let dy = points[v][1] - center[1];
        let d2 = dx * dx + dy * dy;
        // strict < keeps the lowest index on ties
        if best.is_none_or(|(bd, _)| d2 < bd) {
            best = Some((d2, v));
        }
    }
    best.map(|(_, v)| v)
}

/// Bowyer-Watson over the input order, super-triangle bootstrap.
pub fn triangulate(points: &[[f64; 2]]) -> Result<Vec<[usize; 3]>> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p[0]);
        min_y = min_y.min(p[1]);
        max_x = max_x.max(p[0]);
        max_y = max_y.max(p[1]);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let mid_x = 0.5 * (min_x + max_x);
    let mid_y = 0.5 * (min_y + max_y);

    let n = points.len();
    let mut coords: Vec<[f64; 2]> = points.to_vec();
    coords.push([mid_x - 20.0 * span, mid_y - 10.0 * span]);
    coords.push([mid_x + 20.0 * span, mid_y - 10.0 * span]);
    coords.push([mid_x, mid_y + 20.0 * span]);

    let mut triangles: Vec<[usize; 3]> = vec![[n, n + 1, n + 2]];
    for p in 0..n {
        let mut bad: Vec<usize> = Vec::new();
        for (ti, tri) in triangles.iter().enumerate() {
            if circumcircle_contains(&coords, *tri, p) {
                bad.push(ti);
            }
        }
        // boundary edges: appear in exactly one bad triangle
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        for &ti in &bad {
            let t = triangles[ti];
            for e in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (e.0.min(e.1), e.0.max(e.1));
                let shared = bad.iter().any(|&tj| {
                    if tj == ti {
                        return false;
                    }
                    let u = triangles[tj];
                    let has = |v: usize| u.contains(&v);
                    has(key.0) && has(key.1)
                });
                if !shared {
                    boundary.push(key);
                }
            }
        }
        bad.sort_unstable();
        for &ti in bad.iter().rev() {
            triangles.swap_remove(ti);
        }
        for (a, b) in boundary {
            triangles.push([a, b, p]);
        }
    }

    let mut out: Vec<[usize; 3]> = triangles
        .into_iter()
        .filter(|t| t.iter().all(|&v| v < n))
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::CollinearPoints);
    }
    Ok(out)
}

/// Strict in-circle test; cocircular points count as outside, so degenerate
/// configurations resolve by insertion order.
fn circumcircle_contains(coords: &[[f64; 2]], tri: [usize; 3], p: usize) -> bool {
    let [a, b, c] = tri;
    let (ax, ay) = (coords[a][0], coords[a][1]);
    let (bx, by) = (coords[b][0], coords[b][1]);
    let (cx, cy) = (coords[c][0], coords[c][1]);
    let (px, py) = (coords[p][0], coords[p][1]);

    let orient = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if orient == 0.0 {
        return false;
    }
    let (ax, ay) = (ax - px, ay - py);
    let (bx, by) = (bx - px, by - py);
    let (cx, cy) = (cx - px, cy - py);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    if orient > 0.0 {
        det > 0.0
    } else {
        det < 0.0
    }
}
