//! Low-level planar geometry helpers.
//!
//! Everything here works on plain `[f64; 2]` points. Sign decisions (which
//! side of a line, does a segment cross another) go through an exact
//! orientation predicate so that lattice edges touching the boundary at a
//! single point — a common configuration, since domain corners often sit on
//! dyadic coordinates — are classified deterministically rather than by
//! floating-point luck. Distances, by contrast, are only ever compared against
//! the domain's epsilon band and stay in plain double precision.

use robust::{orient2d, Coord};

/// A point in the plane.
pub type Pt = [f64; 2];

#[inline]
fn coord(p: Pt) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// Exact sign of the orientation of the triple `(a, b, c)`:
/// `1` if counter-clockwise, `-1` if clockwise, `0` if collinear.
pub fn orient_sign(a: Pt, b: Pt, c: Pt) -> i32 {
    let v = orient2d(coord(a), coord(b), coord(c));
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// True if `p` lies inside the closed axis-aligned bounding box of `a..b`.
#[inline]
fn in_box(p: Pt, a: Pt, b: Pt) -> bool {
    let (x0, x1) = (a[0].min(b[0]), a[0].max(b[0]));
    let (y0, y1) = (a[1].min(b[1]), a[1].max(b[1]));
    x0 <= p[0] && p[0] <= x1 && y0 <= p[1] && p[1] <= y1
}

/// How a closed segment `e` meets a closed segment `s`.
///
/// The classification is asymmetric: it reports where the intersection sits
/// *relative to `s`*, which is what boundary-arc attribution needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegMeet {
    /// The segments do not intersect.
    None,
    /// The intersection is exactly the start point of `s`.
    AtStart,
    /// The intersection is exactly the end point of `s`.
    AtEnd,
    /// The intersection contains a point of the relative interior of `s`.
    Interior,
}

/// Classify the intersection of closed segments `e = (e0, e1)` and
/// `s = (s0, s1)` relative to `s`. All sign decisions are exact.
pub fn segment_meet(e0: Pt, e1: Pt, s0: Pt, s1: Pt) -> SegMeet {
    let d1 = orient_sign(e0, e1, s0);
    let d2 = orient_sign(e0, e1, s1);
    let d3 = orient_sign(s0, s1, e0);
    let d4 = orient_sign(s0, s1, e1);

    // Proper crossing: each segment's endpoints strictly straddle the other.
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return SegMeet::Interior;
    }

    if d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return SegMeet::None;
    }

    // Both segments on one line: compare 1-D intervals on the dominant axis.
    if d1 == 0 && d2 == 0 {
        let axis = if (e1[0] - e0[0]).abs().max((s1[0] - s0[0]).abs())
            >= (e1[1] - e0[1]).abs().max((s1[1] - s0[1]).abs())
        {
            0
        } else {
            1
        };
        let (elo, ehi) = (e0[axis].min(e1[axis]), e0[axis].max(e1[axis]));
        let (slo, shi) = (s0[axis].min(s1[axis]), s0[axis].max(s1[axis]));
        let lo = elo.max(slo);
        let hi = ehi.min(shi);
        if lo > hi {
            return SegMeet::None;
        }
        if lo < hi {
            // Positive-length overlap: degenerate `s` aside, this meets the
            // interior of `s` unless the overlap is exactly one endpoint.
            if hi > slo && lo < shi {
                return SegMeet::Interior;
            }
        }
        // Single-point contact at `lo == hi`.
        return if lo == s0[axis] && hi == s0[axis] {
            SegMeet::AtStart
        } else if lo == s1[axis] && hi == s1[axis] {
            SegMeet::AtEnd
        } else {
            SegMeet::Interior
        };
    }

    // Non-collinear with at least one zero: the intersection, if any, is a
    // single point lying on one of the segments' endpoints.
    if d1 == 0 && in_box(s0, e0, e1) {
        return SegMeet::AtStart;
    }
    if d2 == 0 && in_box(s1, e0, e1) {
        return SegMeet::AtEnd;
    }
    if d3 == 0 && in_box(e0, s0, s1) {
        // e0 lies on s; decide where.
        return point_on_s(e0, s0, s1);
    }
    if d4 == 0 && in_box(e1, s0, s1) {
        return point_on_s(e1, s0, s1);
    }
    SegMeet::None
}

/// Locate a point known to lie on segment `s` relative to `s`'s endpoints.
fn point_on_s(p: Pt, s0: Pt, s1: Pt) -> SegMeet {
    if p == s0 {
        SegMeet::AtStart
    } else if p == s1 {
        SegMeet::AtEnd
    } else {
        SegMeet::Interior
    }
}

/// Squared Euclidean distance from `p` to the closed segment `(a, b)`.
pub fn dist_sq_point_segment(p: Pt, a: Pt, b: Pt) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len_sq = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len_sq > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len_sq).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let dx = ap[0] - t * ab[0];
    let dy = ap[1] - t * ab[1];
    dx * dx + dy * dy
}

/// Twice the signed area of the closed polyline (positive = counter-clockwise).
pub fn polygon_area2(pts: &[Pt]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        acc += a[0] * b[1] - b[0] * a[1];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        assert_eq!(orient_sign([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]), 1);
        assert_eq!(orient_sign([0.0, 0.0], [0.0, 1.0], [1.0, 0.0]), -1);
        assert_eq!(orient_sign([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]), 0);
    }

    #[test]
    fn proper_crossing_is_interior() {
        let m = segment_meet([0.0, -1.0], [0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::Interior);
    }

    #[test]
    fn disjoint_segments() {
        let m = segment_meet([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]);
        assert_eq!(m, SegMeet::None);
        // Collinear but separated.
        let m = segment_meet([0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]);
        assert_eq!(m, SegMeet::None);
    }

    #[test]
    fn touch_at_s_endpoints() {
        // e ends exactly on s's start.
        let m = segment_meet([0.5, 0.5], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::AtStart);
        // e ends exactly on s's end.
        let m = segment_meet([1.0, 1.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::AtEnd);
        // e passes through s's interior point while touching with an endpoint.
        let m = segment_meet([0.5, 0.0], [0.5, 1.0], [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::Interior);
    }

    #[test]
    fn collinear_overlaps() {
        // Overlap covering part of s's interior.
        let m = segment_meet([0.5, 0.0], [2.0, 0.0], [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::Interior);
        // Overlap touching only s's end point.
        let m = segment_meet([1.0, 0.0], [2.0, 0.0], [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::AtEnd);
        // e entirely inside s.
        let m = segment_meet([0.25, 0.0], [0.5, 0.0], [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(m, SegMeet::Interior);
    }

    #[test]
    fn distance_to_segment() {
        assert_eq!(dist_sq_point_segment([0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]), 1.0);
        assert_eq!(dist_sq_point_segment([3.0, 0.0], [-1.0, 0.0], [1.0, 0.0]), 4.0);
    }

    #[test]
    fn area_sign_convention() {
        // Counter-clockwise square has positive doubled area.
        let ccw = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(polygon_area2(&ccw), 2.0);
        let cw = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        assert_eq!(polygon_area2(&cw), -2.0);
    }
}
