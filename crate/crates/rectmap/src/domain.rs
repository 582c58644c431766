//! Jordan domains with four marked boundary points.
//!
//! A [`PlanarDomain`] is a simple closed polygon, listed clockwise, together
//! with four marked boundary points `x1, x2, x3, x4` in clockwise order. The
//! marks split the boundary into four arcs, labelled like the sides of the
//! target rectangle:
//!
//! * **Top** — from `x1` (inclusive) to `x2` (exclusive),
//! * **Right** — from `x2` to `x3`,
//! * **Bottom** — from `x3` to `x4`,
//! * **Left** — from `x4` back to `x1`.
//!
//! Each arc is half-open: it contains the mark it starts at. Accordingly, a
//! query that meets the boundary exactly at a polygon vertex is attributed to
//! the segment *leaving* that vertex.
//!
//! Marks are specified as a position on a boundary segment (`segment_index`
//! plus a parameter `t` in `[0, 1)`); marks with `t > 0` are inserted as new
//! polygon vertices, so after construction every mark is a vertex and the
//! polygon is rotated to start at `x1`.

use crate::error::{Error, Result};
use crate::geom::{
    dist_sq_point_segment, orient_sign, polygon_area2, segment_meet, Pt, SegMeet,
};
use serde::Deserialize;

/// Label of one of the four boundary arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcLabel {
    /// Arc from `x1` to `x2`; carried to the top edge of the rectangle.
    Top,
    /// Arc from `x2` to `x3`.
    Right,
    /// Arc from `x3` to `x4`; carried to the bottom edge.
    Bottom,
    /// Arc from `x4` to `x1`.
    Left,
}

impl ArcLabel {
    /// All four labels in clockwise order starting at the top.
    pub const ALL: [ArcLabel; 4] = [ArcLabel::Top, ArcLabel::Right, ArcLabel::Bottom, ArcLabel::Left];

    /// The arc on the opposite side of the rectangle.
    pub fn opposite(self) -> ArcLabel {
        match self {
            ArcLabel::Top => ArcLabel::Bottom,
            ArcLabel::Right => ArcLabel::Left,
            ArcLabel::Bottom => ArcLabel::Top,
            ArcLabel::Left => ArcLabel::Right,
        }
    }

    /// One-letter name used in diagnostics.
    pub fn letter(self) -> char {
        match self {
            ArcLabel::Top => 'T',
            ArcLabel::Right => 'R',
            ArcLabel::Bottom => 'B',
            ArcLabel::Left => 'L',
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl std::fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A small set of [`ArcLabel`]s.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcSet(u8);

impl ArcSet {
    /// The empty set.
    pub const EMPTY: ArcSet = ArcSet(0);

    /// Set containing a single label.
    pub fn single(label: ArcLabel) -> ArcSet {
        ArcSet(label.bit())
    }

    /// Insert `label`.
    pub fn insert(&mut self, label: ArcLabel) {
        self.0 |= label.bit();
    }

    /// True if `label` is in the set.
    pub fn contains(self, label: ArcLabel) -> bool {
        self.0 & label.bit() != 0
    }

    /// Union of two sets.
    pub fn union(self, other: ArcSet) -> ArcSet {
        ArcSet(self.0 | other.0)
    }

    /// True if no label is present.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of labels present.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Labels in the set, in `T, R, B, L` order.
    pub fn iter(self) -> impl Iterator<Item = ArcLabel> {
        ArcLabel::ALL.into_iter().filter(move |l| self.contains(*l))
    }

    /// If the set contains two opposite labels, return that pair.
    pub fn opposite_pair(self) -> Option<(ArcLabel, ArcLabel)> {
        if self.contains(ArcLabel::Top) && self.contains(ArcLabel::Bottom) {
            Some((ArcLabel::Top, ArcLabel::Bottom))
        } else if self.contains(ArcLabel::Left) && self.contains(ArcLabel::Right) {
            Some((ArcLabel::Left, ArcLabel::Right))
        } else {
            None
        }
    }
}

impl std::fmt::Display for ArcSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l.letter())?;
        }
        write!(f, "}}")
    }
}

impl std::fmt::Debug for ArcSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// Where a point sits relative to the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// Strictly inside, clear of the boundary tolerance band.
    Inside,
    /// Strictly outside, clear of the boundary tolerance band.
    Outside,
    /// On the boundary, or within the tolerance band around it.
    OnBoundary,
}

/// A marked point given as a parameter position on a boundary segment.
///
/// `t = 0` is the segment's start vertex; `t` must lie in `[0, 1)`, so the
/// segment's end vertex is addressed as `t = 0` of the next segment.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Mark {
    /// Index of the boundary segment the mark sits on.
    pub segment_index: usize,
    /// Position along that segment, in `[0, 1)`.
    pub t: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainFile {
    boundary: Vec<[f64; 2]>,
    marks: [Mark; 4],
    #[serde(default)]
    seed: Option<[f64; 2]>,
}

/// A clockwise simple polygon with four marked boundary points.
///
/// After construction the vertex list starts at `x1` and contains all four
/// marks as vertices.
#[derive(Debug, Clone)]
pub struct PlanarDomain {
    /// Polygon vertices, clockwise, not repeating the first; `pts[0] == x1`.
    pts: Vec<Pt>,
    /// Indices of `x1..x4` in `pts`; `mark_at[0] == 0`.
    mark_at: [usize; 4],
    /// `[xmin, ymin, xmax, ymax]`.
    bbox: [f64; 4],
    /// Half-width of the on-boundary tolerance band.
    geom_eps: f64,
    /// Optional seed point carried from the input document.
    seed_hint: Option<Pt>,
}

impl PlanarDomain {
    /// Parse and validate a domain from its JSON document.
    pub fn from_json(text: &str) -> Result<PlanarDomain> {
        let file: DomainFile =
            serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
        let pts: Vec<Pt> = file.boundary.iter().map(|p| [p[0], p[1]]).collect();
        PlanarDomain::from_points_and_marks(pts, file.marks, file.seed.map(|p| [p[0], p[1]]))
    }

    /// Build a domain from an explicit clockwise polygon and four marks.
    pub fn from_points_and_marks(
        pts: Vec<Pt>,
        marks: [Mark; 4],
        seed: Option<Pt>,
    ) -> Result<PlanarDomain> {
        for p in &pts {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::SchemaError(
                    "boundary coordinates must be finite".into(),
                ));
            }
        }
        if let Some(s) = seed {
            if !s[0].is_finite() || !s[1].is_finite() {
                return Err(Error::SchemaError("seed coordinates must be finite".into()));
            }
        }
        if pts.len() < 3 {
            return Err(Error::SchemaError(
                "boundary needs at least three vertices".into(),
            ));
        }
        if pts.first() == pts.last() {
            return Err(Error::SchemaError(
                "boundary must not repeat its first vertex at the end".into(),
            ));
        }
        // Normalise -0.0 to 0.0 so exact point comparisons are well defined.
        let pts: Vec<Pt> = pts.iter().map(|p| [p[0] + 0.0, p[1] + 0.0]).collect();
        let m = pts.len();

        for mk in &marks {
            if mk.segment_index >= m {
                return Err(Error::SchemaError(format!(
                    "mark segment_index {} out of range (have {} segments)",
                    mk.segment_index, m
                )));
            }
            if !mk.t.is_finite() || !(0.0..1.0).contains(&mk.t) {
                return Err(Error::SchemaError(format!(
                    "mark parameter t = {} must lie in [0, 1)",
                    mk.t
                )));
            }
        }
        let keys: Vec<(usize, f64)> = marks.iter().map(|mk| (mk.segment_index, mk.t)).collect();
        for i in 0..4 {
            for j in (i + 1)..4 {
                if keys[i] == keys[j] {
                    return Err(Error::MarksNotDistinct);
                }
            }
        }
        // The marks must be a cyclic rotation of their boundary-walk order.
        let in_walk_order = |a: (usize, f64), b: (usize, f64)| a.0 < b.0 || (a.0 == b.0 && a.1 < b.1);
        let cyclically_sorted = (0..4).any(|r| {
            (0..3).all(|i| in_walk_order(keys[(r + i) % 4], keys[(r + i + 1) % 4]))
        });
        if !cyclically_sorted {
            return Err(Error::MarksNotClockwise);
        }

        // Insert marks with t > 0 as fresh vertices, walking the polygon once.
        let mut full: Vec<Pt> = Vec::with_capacity(m + 4);
        let mut walk_pos = [usize::MAX; 4];
        for (j, &a) in pts.iter().enumerate() {
            for (k, mk) in marks.iter().enumerate() {
                if mk.segment_index == j && mk.t == 0.0 {
                    walk_pos[k] = full.len();
                }
            }
            full.push(a);
            let b = pts[(j + 1) % m];
            let mut on_seg: Vec<usize> = (0..4)
                .filter(|&k| marks[k].segment_index == j && marks[k].t > 0.0)
                .collect();
            on_seg.sort_by(|&p, &q| marks[p].t.partial_cmp(&marks[q].t).unwrap());
            for k in on_seg {
                let t = marks[k].t;
                let p = [a[0] + t * (b[0] - a[0]) + 0.0, a[1] + t * (b[1] - a[1]) + 0.0];
                if p == a || p == b {
                    return Err(Error::SchemaError(format!(
                        "mark on segment {} at t = {} coincides with a vertex; \
                         use t = 0 on the right segment instead",
                        j, t
                    )));
                }
                walk_pos[k] = full.len();
                full.push(p);
            }
        }

        // Rotate so x1 is vertex 0; the other marks then appear in order.
        let n = full.len();
        let r = walk_pos[0];
        let pts: Vec<Pt> = (0..n).map(|i| full[(i + r) % n]).collect();
        let mark_at = [
            0,
            (walk_pos[1] + n - r) % n,
            (walk_pos[2] + n - r) % n,
            (walk_pos[3] + n - r) % n,
        ];
        debug_assert!(mark_at[0] < mark_at[1] && mark_at[1] < mark_at[2] && mark_at[2] < mark_at[3]);

        validate_simple_clockwise(&pts)?;

        let mut bbox = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in &pts {
            bbox[0] = bbox[0].min(p[0]);
            bbox[1] = bbox[1].min(p[1]);
            bbox[2] = bbox[2].max(p[0]);
            bbox[3] = bbox[3].max(p[1]);
        }
        let diag = ((bbox[2] - bbox[0]).powi(2) + (bbox[3] - bbox[1]).powi(2)).sqrt();
        let geom_eps = diag * (2.0f64).powi(-40);

        Ok(PlanarDomain {
            pts,
            mark_at,
            bbox,
            geom_eps,
            seed_hint: seed,
        })
    }

    /// Axis-aligned rectangle `[0, w] x [0, h]` with the marks at the corners:
    /// `x1` top-left, `x2` top-right, `x3` bottom-right, `x4` bottom-left.
    pub fn rectangle(w: f64, h: f64) -> Result<PlanarDomain> {
        let pts = vec![[0.0, h], [w, h], [w, 0.0], [0.0, 0.0]];
        let marks = [
            Mark { segment_index: 0, t: 0.0 },
            Mark { segment_index: 1, t: 0.0 },
            Mark { segment_index: 2, t: 0.0 },
            Mark { segment_index: 3, t: 0.0 },
        ];
        PlanarDomain::from_points_and_marks(pts, marks, None)
    }

    /// Regular polygon with `sides` vertices on a circle of radius `radius`
    /// centred at the origin, listed clockwise starting at `start_angle`
    /// (radians). The marks sit at the given vertex indices.
    pub fn regular_polygon(
        sides: usize,
        radius: f64,
        start_angle: f64,
        mark_vertices: [usize; 4],
    ) -> Result<PlanarDomain> {
        if sides < 3 {
            return Err(Error::SchemaError("polygon needs at least three sides".into()));
        }
        let pts: Vec<Pt> = (0..sides)
            .map(|k| {
                let a = start_angle - 2.0 * std::f64::consts::PI * (k as f64) / (sides as f64);
                [radius * a.cos(), radius * a.sin()]
            })
            .collect();
        let marks = mark_vertices.map(|v| Mark { segment_index: v, t: 0.0 });
        PlanarDomain::from_points_and_marks(pts, marks, None)
    }

    /// Polygon vertices, clockwise, starting at `x1`.
    pub fn points(&self) -> &[Pt] {
        &self.pts
    }

    /// The four marked points.
    pub fn marks(&self) -> [Pt; 4] {
        self.mark_at.map(|i| self.pts[i])
    }

    /// Indices of the four marks in [`points`](Self::points).
    pub fn mark_indices(&self) -> [usize; 4] {
        self.mark_at
    }

    /// Bounding box `[xmin, ymin, xmax, ymax]`.
    pub fn bbox(&self) -> [f64; 4] {
        self.bbox
    }

    /// Half-width of the on-boundary tolerance band.
    pub fn geom_eps(&self) -> f64 {
        self.geom_eps
    }

    /// Seed point from the input document, if any.
    pub fn seed_hint(&self) -> Option<Pt> {
        self.seed_hint
    }

    /// Number of boundary segments.
    pub fn segment_count(&self) -> usize {
        self.pts.len()
    }

    /// Endpoints of boundary segment `j`.
    pub fn segment(&self, j: usize) -> (Pt, Pt) {
        (self.pts[j], self.pts[(j + 1) % self.pts.len()])
    }

    /// The arc that boundary segment `j` belongs to.
    pub fn arc_of_segment(&self, j: usize) -> ArcLabel {
        debug_assert!(j < self.pts.len());
        if j < self.mark_at[1] {
            ArcLabel::Top
        } else if j < self.mark_at[2] {
            ArcLabel::Right
        } else if j < self.mark_at[3] {
            ArcLabel::Bottom
        } else {
            ArcLabel::Left
        }
    }

    /// Area-weighted centroid of the polygon.
    pub fn centroid(&self) -> Pt {
        let n = self.pts.len();
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.pts[i];
            let q = self.pts[(i + 1) % n];
            let w = p[0] * q[1] - q[0] * p[1];
            cx += (p[0] + q[0]) * w;
            cy += (p[1] + q[1]) * w;
            a2 += w;
        }
        [cx / (3.0 * a2), cy / (3.0 * a2)]
    }

    /// Classify a point against the domain.
    ///
    /// Points within [`geom_eps`](Self::geom_eps) of the boundary are reported
    /// [`Location::OnBoundary`]; everything else is decided by an even-odd ray
    /// cast with exact orientation tests.
    pub fn locate(&self, p: Pt) -> Location {
        let eps_sq = self.geom_eps * self.geom_eps;
        let n = self.pts.len();
        for j in 0..n {
            let (a, b) = self.segment(j);
            if dist_sq_point_segment(p, a, b) <= eps_sq {
                return Location::OnBoundary;
            }
        }
        let mut inside = false;
        for j in 0..n {
            let (a, b) = self.segment(j);
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let o = orient_sign(a, b, p);
                let upward = b[1] > a[1];
                if (upward && o > 0) || (!upward && o < 0) {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Arcs met by the closed segment `a..b`, using exact intersection tests.
    ///
    /// A meeting that is exactly a polygon vertex is attributed to the segment
    /// leaving that vertex, which realises the half-open arc convention: a
    /// touch exactly at mark `x_k` belongs to the arc starting at `x_k`.
    pub fn crossing_arcs(&self, a: Pt, b: Pt) -> ArcSet {
        let mut set = ArcSet::EMPTY;
        let n = self.pts.len();
        for j in 0..n {
            let (s0, s1) = self.segment(j);
            match segment_meet(a, b, s0, s1) {
                SegMeet::None => {}
                SegMeet::Interior | SegMeet::AtStart => set.insert(self.arc_of_segment(j)),
                SegMeet::AtEnd => set.insert(self.arc_of_segment((j + 1) % n)),
            }
        }
        set
    }

    /// Arcs of all boundary segments within the tolerance band of `p`.
    ///
    /// Fallback attribution for lattice edges whose far endpoint sits in the
    /// band without exact boundary incidence.
    pub fn near_arcs(&self, p: Pt) -> ArcSet {
        let eps_sq = self.geom_eps * self.geom_eps;
        let mut set = ArcSet::EMPTY;
        for j in 0..self.pts.len() {
            let (a, b) = self.segment(j);
            if dist_sq_point_segment(p, a, b) <= eps_sq {
                set.insert(self.arc_of_segment(j));
            }
        }
        set
    }
}

/// Check that `pts` is a simple closed polygon listed clockwise.
fn validate_simple_clockwise(pts: &[Pt]) -> Result<()> {
    let n = pts.len();
    for j in 0..n {
        if pts[j] == pts[(j + 1) % n] {
            return Err(Error::NotJordan(format!("zero-length segment at vertex {j}")));
        }
    }
    for i in 0..n {
        let (a0, a1) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            let (b0, b1) = (pts[j], pts[(j + 1) % n]);
            let meet = segment_meet(a0, a1, b0, b1);
            if j == i + 1 {
                // Adjacent segments must meet exactly in their shared vertex,
                // which is segment j's start. A longer overlap is a spike.
                if meet != SegMeet::AtStart {
                    return Err(Error::NotJordan(format!(
                        "segments {i} and {j} overlap beyond their shared vertex"
                    )));
                }
            } else if i == 0 && j == n - 1 {
                // The closing segment ends at vertex 0 = segment 0's start.
                if meet != SegMeet::AtEnd {
                    return Err(Error::NotJordan(format!(
                        "segments {j} and {i} overlap beyond their shared vertex"
                    )));
                }
            } else if meet != SegMeet::None {
                return Err(Error::NotJordan(format!("segments {i} and {j} intersect")));
            }
        }
    }
    let area2 = polygon_area2(pts);
    if area2 == 0.0 {
        return Err(Error::NotJordan("polygon has zero area".into()));
    }
    if area2 > 0.0 {
        return Err(Error::SchemaError(
            "boundary must be listed clockwise".into(),
        ));
    }
    Ok(())
}
