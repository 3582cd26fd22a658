use super::Point2;

#[inline]
fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

#[inline]
fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test, touching and collinear overlap included.
pub(crate) fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// True when no two non-adjacent edges of the closed polygon meet.
///
/// Edges are sorted by their left end and only pairs with overlapping
/// x-extents are tested.
pub(crate) fn is_simple(m: &[Point2]) -> bool {
    let n = m.len();
    if n < 3 {
        return false;
    }
    let seg = |i: usize| (m[i], m[(i + 1) % n]);
    let mut order: Vec<usize> = (0..n).collect();
    let lo = |i: usize| m[i].x.min(m[(i + 1) % n].x);
    order.sort_by(|&a, &b| lo(a).total_cmp(&lo(b)));
    for (k, &i) in order.iter().enumerate() {
        let (a, b) = seg(i);
        let hi = a.x.max(b.x);
        for &j in &order[k + 1..] {
            if lo(j) > hi {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                // adjacent edges share one vertex; they only fail if they fold back
                let (shared, other_i, other_j) =
                    if (i + 1) % n == j { (m[j], a, m[(j + 1) % n]) } else { (m[i], b, m[j]) };
                if orient(other_i, shared, other_j) == 0.0 && (other_j - shared).dot(other_i - shared) > 0.0 {
                    return false;
                }
                continue;
            }
            let (c, d) = seg(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}
