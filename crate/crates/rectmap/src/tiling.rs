//! The square tiling of the rectangle `[0, I*] × [0, 1]`.
//!
//! Every mesh edge `e = xy` (named so that `h(x) ≥ h(y)`) contributes one
//! square: its vertical extent is `[h(y), h(x)]`, and its horizontal extent
//! is the interval between the conjugate potentials of the two faces
//! flanking the edge. Both extents have length `|w(e)|`, so the tile really
//! is a square; edges carrying no flow contribute degenerate (zero-side)
//! squares, which are retained and flagged rather than dropped. Together
//! the squares tile the rectangle of width `I*` and height 1: interiors are
//! disjoint, and the total area `Σ side²` is the energy identity for `I*`.
//!
//! The tiling is its own strongest test. [`validate_tiling`] checks
//! squareness, pairwise interior disjointness (by a sweep), the area
//! identity, and the geometric node law — at every vertex, the squares of
//! the upward edges and those of the downward edges tile the same
//! horizontal footprint. [`dual_tiling_check`] reruns the entire pipeline
//! on the dual map, whose tiling must equal the primal tiling rotated a
//! quarter turn and rescaled by `1/I*`, square by square.

use std::collections::BTreeMap;

use crate::conjugate::{conjugate_potential, ConjugateField, Traversal};
use crate::error::{Error, Result};
use crate::harmonic::{edge_flow, solve_harmonic, HarmonicField};
use crate::map::{FaceStructure, PlanarMap};

/// One tile: the square of a mesh edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Square {
    /// Edge id in the map.
    pub edge: usize,
    /// Left edge of the tile.
    pub x0: f64,
    /// Right edge of the tile.
    pub x1: f64,
    /// Bottom edge of the tile (the smaller potential of the edge's ends).
    pub y0: f64,
    /// Top edge of the tile (the larger potential).
    pub y1: f64,
    /// Side length `|w(e)|`, the potential drop across the edge.
    pub side: f64,
    /// True when the side is numerically zero and the tile has no interior.
    pub degenerate: bool,
}

/// The horizontal footprint `I_u` of a vertex: the union of the x-intervals
/// of its edges' squares, at height `h(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexInterval {
    pub x0: f64,
    pub x1: f64,
    /// The potential `h(u)`, the height at which the footprint sits.
    pub h: f64,
}

/// The tiling of `[0, width] × [0, 1]` by one square per mesh edge.
#[derive(Debug, Clone)]
pub struct SquareTiling {
    width: f64,
    squares: Vec<Square>,
    vertex_intervals: Vec<VertexInterval>,
    arc_edge: usize,
}

impl SquareTiling {
    /// Width `I*` of the tiled rectangle (its height is 1).
    pub fn width(&self) -> f64 {
        self.width
    }

    /// All squares, in edge-id order (the arc edge has none).
    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// The square of mesh edge `e`, or `None` for the arc edge.
    pub fn square(&self, e: usize) -> Option<&Square> {
        match e.cmp(&self.arc_edge) {
            std::cmp::Ordering::Less => self.squares.get(e),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => self.squares.get(e - 1),
        }
    }

    /// The footprint `I_u` of vertex `u`.
    pub fn vertex_interval(&self, u: usize) -> VertexInterval {
        self.vertex_intervals[u]
    }

    /// Number of squares with interior.
    pub fn proper_count(&self) -> usize {
        self.squares.iter().filter(|s| !s.degenerate).count()
    }

    /// Number of degenerate (zero-side) squares.
    pub fn degenerate_count(&self) -> usize {
        self.squares.iter().filter(|s| s.degenerate).count()
    }

    /// Test-only: mutable access for fault injection.
    #[cfg(test)]
    pub(crate) fn squares_mut(&mut self) -> &mut [Square] {
        &mut self.squares
    }
}

/// Sides at or below this fraction of the rectangle scale are degenerate.
const DEGENERATE_REL_EPS: f64 = 1e-12;

/// Lay out one square per mesh edge from the potential and its conjugate.
///
/// Fails with [`Error::InconsistentFields`] if the fields do not match the
/// map's vertex and face counts.
pub fn build_tiling(
    map: &PlanarMap,
    faces: &FaceStructure,
    field: &HarmonicField,
    conj: &ConjugateField,
) -> Result<SquareTiling> {
    if field.values().len() != map.vertex_count() {
        return Err(Error::InconsistentFields(format!(
            "potential has {} values for a map with {} vertices",
            field.values().len(),
            map.vertex_count()
        )));
    }
    if conj.values().len() != faces.count() || faces.face_of.len() != map.half_edge_count() {
        return Err(Error::InconsistentFields(format!(
            "conjugate has {} values for a map with {} faces",
            conj.values().len(),
            faces.count()
        )));
    }
    let width = conj.intensity();
    let deg_eps = DEGENERATE_REL_EPS * width.max(1.0);
    let arc = map.arc_edge();
    let mut squares = Vec::with_capacity(map.edge_count() - 1);
    for e in 0..map.edge_count() {
        if e == arc {
            continue;
        }
        let (h0, h1) = (2 * e, 2 * e + 1);
        let (a, b) = (field.value(map.tail(h0)), field.value(map.head(h0)));
        // Direct the edge uphill: `up` points from the smaller potential to
        // the larger, so the face on its left bounds the square on the left.
        let (up, y0, y1) = if a >= b { (h1, b, a) } else { (h0, a, b) };
        let fx = conj.value(faces.face_of[up]);
        let fy = conj.value(faces.face_of[map.twin(up)]);
        let (x0, x1) = if fx <= fy { (fx, fy) } else { (fy, fx) };
        let side = y1 - y0;
        squares.push(Square {
            edge: e,
            x0,
            x1,
            y0,
            y1,
            side,
            degenerate: side <= deg_eps,
        });
    }
    let vertex_intervals: Vec<VertexInterval> = (0..map.vertex_count())
        .map(|v| {
            let mut iv = VertexInterval {
                x0: f64::INFINITY,
                x1: f64::NEG_INFINITY,
                h: field.value(v),
            };
            for h in map.vertex_half_edges(v) {
                let e = map.edge_of(h);
                if e == arc {
                    continue;
                }
                let s = &squares[if e < arc { e } else { e - 1 }];
                iv.x0 = iv.x0.min(s.x0);
                iv.x1 = iv.x1.max(s.x1);
            }
            iv
        })
        .collect();
    Ok(SquareTiling {
        width,
        squares,
        vertex_intervals,
        arc_edge: arc,
    })
}

/// Per-check worst violations found by [`validate_tiling`].
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    /// Max `||I_e| − side|`: how far any tile is from square.
    pub squareness: f64,
    /// Max pairwise interior overlap depth found by the sweep.
    pub overlap: f64,
    /// `|Σ side² − I*|`: the area identity defect. Together with
    /// disjointness this bounds the uncovered area of the rectangle.
    pub area_defect: f64,
    /// Worst geometric node-law violation: at each vertex the upward and
    /// downward squares must each tile the footprint `I_u` without gaps,
    /// and the pole footprints must span `[0, I*]`.
    pub footprint_defect: f64,
    /// Contact tolerance used by the overlap sweep.
    pub tile_eps: f64,
}

impl ValidationReport {
    /// Largest analytic defect (everything except the sweep's overlap).
    pub fn max_defect(&self) -> f64 {
        self.squareness.max(self.area_defect).max(self.footprint_defect)
    }
}

/// Key ordering floats totally for the sweep's active set.
#[derive(PartialEq)]
struct SweepKey(f64, usize);

impl Eq for SweepKey {}

impl PartialOrd for SweepKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SweepKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Check the tiling identities; see [`ValidationReport`] for the checks.
///
/// Analytic defects beyond `tol`, or interior overlaps beyond the contact
/// tolerance `1e-9 · max(1, I*)`, fail with [`Error::ValidationFailed`]
/// naming the worst offender.
pub fn validate_tiling(
    map: &PlanarMap,
    tiling: &SquareTiling,
    tol: f64,
) -> Result<ValidationReport> {
    let width = tiling.width();
    let tile_eps = 1e-9 * width.max(1.0);
    let mut worst: Option<String> = None;

    // (a) Squareness.
    let mut squareness = 0.0f64;
    for s in tiling.squares() {
        let d = ((s.x1 - s.x0) - s.side).abs();
        if d > squareness {
            squareness = d;
            if d > tol {
                worst.get_or_insert_with(|| {
                    format!("edge {} is not square by {d:e}", s.edge)
                });
            }
        }
    }

    // (b) Pairwise interior disjointness, by a sweep in increasing y0.
    // Contacts within tile_eps along shared edges do not count.
    let mut overlap = 0.0f64;
    let mut order: Vec<&Square> = tiling
        .squares()
        .iter()
        .filter(|s| s.x1 - s.x0 > tile_eps && s.y1 - s.y0 > tile_eps)
        .collect();
    order.sort_by(|p, q| p.y0.total_cmp(&q.y0).then(p.edge.cmp(&q.edge)));
    let max_w = order
        .iter()
        .map(|s| s.x1 - s.x0)
        .fold(0.0f64, f64::max);
    let mut active: BTreeMap<SweepKey, (f64, f64, usize)> = BTreeMap::new();
    for s in &order {
        let mut expired = Vec::new();
        let lo = SweepKey(s.x0 - max_w - tile_eps, 0);
        let hi = SweepKey(s.x1 - tile_eps, usize::MAX);
        for (k, &(tx1, ty1, te)) in active.range(&lo..=&hi) {
            if ty1 <= s.y0 + tile_eps {
                expired.push(SweepKey(k.0, k.1));
                continue;
            }
            let dx = tx1.min(s.x1) - k.0.max(s.x0);
            let dy = ty1.min(s.y1) - s.y0;
            let depth = dx.min(dy);
            if depth > overlap {
                overlap = depth;
                if depth > tile_eps {
                    worst.get_or_insert_with(|| {
                        format!("edges {} and {} overlap by {depth:e}", te, s.edge)
                    });
                }
            }
        }
        for k in expired {
            active.remove(&k);
        }
        active.insert(SweepKey(s.x0, s.edge), (s.x1, s.y1, s.edge));
    }

    // (c) Area identity.
    let area: f64 = tiling.squares().iter().map(|s| s.side * s.side).sum();
    let area_defect = (area - width).abs();
    if area_defect > tol {
        worst.get_or_insert_with(|| {
            format!("tile area {area} misses the rectangle area {width} by {area_defect:e}")
        });
    }

    // (d) Geometric node law: at every vertex, the upward squares and the
    // downward squares each chain across the footprint without gaps, and
    // the two chains span the same interval (for poles: [0, I*]).
    let mut footprint_defect = 0.0f64;
    let arc = map.arc_edge();
    for v in 0..map.vertex_count() {
        let hv = tiling.vertex_interval(v).h;
        let mut up = Vec::new();
        let mut down = Vec::new();
        for h in map.vertex_half_edges(v) {
            let e = map.edge_of(h);
            if e == arc {
                continue;
            }
            let s = tiling.square(e).expect("non-arc edge has a square");
            if s.degenerate {
                continue;
            }
            if s.y0 == hv {
                up.push((s.x0, s.x1));
            } else {
                down.push((s.x0, s.x1));
            }
        }
        let mut chain = |mut iv: Vec<(f64, f64)>| -> Option<(f64, f64)> {
            if iv.is_empty() {
                return None;
            }
            iv.sort_by(|p, q| p.0.total_cmp(&q.0));
            for w in iv.windows(2) {
                footprint_defect = footprint_defect.max((w[0].1 - w[1].0).abs());
            }
            Some((iv[0].0, iv[iv.len() - 1].1))
        };
        let su = chain(up);
        let sd = chain(down);
        match (su, sd) {
            (Some(a), Some(b)) => {
                footprint_defect = footprint_defect
                    .max((a.0 - b.0).abs())
                    .max((a.1 - b.1).abs());
            }
            (Some(a), None) | (None, Some(a)) => {
                // Only the poles see one-sided flow; their chains must span
                // the full width.
                if v == map.pole_top() || v == map.pole_bottom() {
                    footprint_defect = footprint_defect.max(a.0.abs()).max((a.1 - width).abs());
                } else {
                    footprint_defect = footprint_defect.max(a.1 - a.0);
                }
            }
            (None, None) => {}
        }
    }
    if footprint_defect > tol {
        worst.get_or_insert_with(|| {
            format!("vertex footprints mismatch by {footprint_defect:e}")
        });
    }

    let report = ValidationReport {
        squareness,
        overlap,
        area_defect,
        footprint_defect,
        tile_eps,
    };
    match worst {
        Some(msg) if report.max_defect() > tol || report.overlap > tile_eps => {
            Err(Error::ValidationFailed(msg))
        }
        _ => Ok(report),
    }
}

/// Outcome of rerunning the pipeline on the dual map.
#[derive(Debug, Clone, Copy)]
pub struct DualityReport {
    /// Intensity of the dual tiling, ideally `1 / I*`.
    pub dual_intensity: f64,
    /// `|I*_dual · I*_primal − 1|`.
    pub intensity_product_defect: f64,
    /// Worst corner mismatch between a dual square and the corresponding
    /// primal square rotated a quarter turn and rescaled by `1/I*`.
    pub square_mismatch: f64,
}

/// Solve the dual map's own potential, conjugate, and tiling, and compare
/// against the primal tiling transformed by `(x, y) ↦ ((1−y)/I*, x/I*)`.
///
/// The two tilings share edge ids, so squares are matched by the edge
/// bijection. Defects beyond `tol` fail with [`Error::DualityViolated`].
pub fn dual_tiling_check(
    map: &PlanarMap,
    faces: &FaceStructure,
    primal: &SquareTiling,
    solve_tol: f64,
    tol: f64,
) -> Result<DualityReport> {
    let width = primal.width();
    let dual = map.dual(faces);
    let dual_faces = dual.faces()?;
    let dh = solve_harmonic(&dual, solve_tol)?;
    let dflow = edge_flow(&dual, &dh);
    let dconj = conjugate_potential(&dual, &dual_faces, &dflow, Traversal::BreadthFirst)?;
    let dtiling = build_tiling(&dual, &dual_faces, &dh, &dconj)?;

    let dual_intensity = dflow.intensity();
    let intensity_product_defect = (dual_intensity * width - 1.0).abs();
    let mut square_mismatch = 0.0f64;
    let mut worst_edge = 0usize;
    for s in primal.squares() {
        let d = dtiling
            .square(s.edge)
            .expect("dual shares the primal edge ids");
        let tx0 = (1.0 - s.y1) / width;
        let tx1 = (1.0 - s.y0) / width;
        let ty0 = s.x0 / width;
        let ty1 = s.x1 / width;
        let m = (d.x0 - tx0)
            .abs()
            .max((d.x1 - tx1).abs())
            .max((d.y0 - ty0).abs())
            .max((d.y1 - ty1).abs());
        if m > square_mismatch {
            square_mismatch = m;
            worst_edge = s.edge;
        }
    }
    let report = DualityReport {
        dual_intensity,
        intensity_product_defect,
        square_mismatch,
    };
    if intensity_product_defect > tol || square_mismatch > tol {
        return Err(Error::DualityViolated(format!(
            "dual tiling disagrees with the rotated primal tiling: \
             intensity product off by {intensity_product_defect:e}, \
             worst square mismatch {square_mismatch:e} at edge {worst_edge}"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{ContractedMesh, Dir};
    use crate::testutil::{notched_mesh, path_mesh, square_mesh, star_mesh};

    fn tiled(mesh: &ContractedMesh) -> (FaceStructure, HarmonicField, SquareTiling) {
        let faces = mesh.map().faces().unwrap();
        let h = solve_harmonic(mesh.map(), 1e-12).unwrap();
        let flow = edge_flow(mesh.map(), &h);
        let conj =
            conjugate_potential(mesh.map(), &faces, &flow, Traversal::BreadthFirst).unwrap();
        let t = build_tiling(mesh.map(), &faces, &h, &conj).unwrap();
        (faces, h, t)
    }

    fn lattice_square(mesh: &ContractedMesh, t: &SquareTiling, c: (i64, i64), d: Dir) -> Square {
        let h = mesh.half_edge_at(c, d).unwrap();
        *t.square(mesh.map().edge_of(h)).unwrap()
    }

    fn assert_square(s: Square, x0: f64, x1: f64, y0: f64, y1: f64) {
        for (got, want) in [(s.x0, x0), (s.x1, x1), (s.y0, y0), (s.y1, y1)] {
            assert!((got - want).abs() < 1e-13, "square {s:?}");
        }
    }

    #[test]
    fn square_level2_layout() {
        let mesh = square_mesh(2);
        let (_, _, t) = tiled(&mesh);
        assert!((t.width() - 1.5).abs() < 1e-13);
        assert_eq!(t.squares().len(), 8);
        assert_eq!((t.proper_count(), t.degenerate_count()), (6, 2));
        for (c, x0, x1, y0, y1) in [
            ((1, 1), 0.0, 0.5, 0.0, 0.5),
            ((1, 2), 0.0, 0.5, 0.5, 1.0),
            ((2, 1), 0.5, 1.0, 0.0, 0.5),
            ((2, 2), 0.5, 1.0, 0.5, 1.0),
            ((3, 1), 1.0, 1.5, 0.0, 0.5),
            ((3, 2), 1.0, 1.5, 0.5, 1.0),
        ] {
            assert_square(lattice_square(&mesh, &t, c, Dir::North), x0, x1, y0, y1);
        }
        // The zero-flow horizontal edges collapse to points.
        assert_square(lattice_square(&mesh, &t, (1, 2), Dir::East), 0.5, 0.5, 0.5, 0.5);
        assert_square(lattice_square(&mesh, &t, (2, 2), Dir::East), 1.0, 1.0, 0.5, 0.5);
        let report = validate_tiling(mesh.map(), &t, 1e-12).unwrap();
        assert!(report.max_defect() < 1e-13, "{report:?}");
        assert!(report.overlap <= report.tile_eps);
        // Pole footprints span the rectangle.
        let it = t.vertex_interval(mesh.t_vid());
        assert!((it.x0, it.h) == (0.0, 1.0) && (it.x1 - 1.5).abs() < 1e-13);
    }

    #[test]
    fn notched_level2_layout_in_nineteenths() {
        let mesh = notched_mesh(2);
        let (_, _, t) = tiled(&mesh);
        let n = 19.0;
        assert!((t.width() - 21.0 / n).abs() < 1e-13);
        assert_eq!(t.squares().len(), 7);
        assert_eq!((t.proper_count(), t.degenerate_count()), (7, 0));
        for (c, d, x0, x1, y0, y1) in [
            ((1, 1), Dir::North, 0.0, 9.0, 0.0, 9.0),
            ((1, 2), Dir::North, 0.0, 10.0, 9.0, 19.0),
            ((2, 1), Dir::North, 9.0, 17.0, 0.0, 8.0),
            ((2, 2), Dir::North, 10.0, 21.0, 8.0, 19.0),
            ((3, 1), Dir::North, 17.0, 21.0, 0.0, 4.0),
            ((1, 2), Dir::East, 9.0, 10.0, 8.0, 9.0),
            ((2, 2), Dir::East, 17.0, 21.0, 4.0, 8.0),
        ] {
            assert_square(
                lattice_square(&mesh, &t, c, d),
                x0 / n,
                x1 / n,
                y0 / n,
                y1 / n,
            );
        }
        let report = validate_tiling(mesh.map(), &t, 1e-12).unwrap();
        assert!(report.max_defect() < 1e-13, "{report:?}");
    }

    #[test]
    fn path_and_star_layouts() {
        let mesh = path_mesh();
        let (_, _, t) = tiled(&mesh);
        assert!((t.width() - 0.5).abs() < 1e-14);
        let squares = t.squares();
        assert_eq!(squares.len(), 2);
        let mut ys: Vec<(f64, f64)> = squares.iter().map(|s| (s.y0, s.y1)).collect();
        ys.sort_by(|p, q| p.0.total_cmp(&q.0));
        assert_eq!(ys, vec![(0.0, 0.5), (0.5, 1.0)]);
        for s in squares {
            assert!((s.x0, s.x1) == (0.0, 0.5), "square {s:?}");
        }
        validate_tiling(mesh.map(), &t, 1e-12).unwrap();

        let mesh = star_mesh();
        let (_, _, t) = tiled(&mesh);
        assert!((t.width() - 2.0 / 3.0).abs() < 1e-14);
        // Edge 1 joins the bottom pole to the centre; its square fills the
        // bottom-left corner. The doubled top edge splits the top strip.
        assert_square(*t.square(1).unwrap(), 0.0, 2.0 / 3.0, 0.0, 2.0 / 3.0);
        let mut tops: Vec<(f64, f64)> = [0, 2]
            .iter()
            .map(|&e| {
                let s = t.square(e).unwrap();
                assert!((s.y0, s.y1) == (2.0 / 3.0, 1.0), "square {s:?}");
                (s.x0, s.x1)
            })
            .collect();
        tops.sort_by(|p, q| p.0.total_cmp(&q.0));
        assert!((tops[0].0).abs() < 1e-14 && (tops[0].1 - 1.0 / 3.0).abs() < 1e-14);
        assert!((tops[1].0 - 1.0 / 3.0).abs() < 1e-14 && (tops[1].1 - 2.0 / 3.0).abs() < 1e-14);
        validate_tiling(mesh.map(), &t, 1e-12).unwrap();
    }

    #[test]
    fn level3_unit_square_statistics() {
        // At level 3 the potential is linear in rows, so every horizontal
        // edge is degenerate and the verticals have side 1/6.
        let mesh = square_mesh(3);
        let (_, _, t) = tiled(&mesh);
        assert!((t.width() - 7.0 / 6.0).abs() < 1e-13);
        assert_eq!(t.squares().len(), 72);
        assert_eq!((t.proper_count(), t.degenerate_count()), (42, 30));
        for s in t.squares().iter().filter(|s| !s.degenerate) {
            assert!((s.side - 1.0 / 6.0).abs() < 1e-13);
        }
        let report = validate_tiling(mesh.map(), &t, 1e-11).unwrap();
        assert!(report.max_defect() < 1e-12, "{report:?}");
        assert!(report.overlap <= report.tile_eps);
    }

    #[test]
    fn shifted_square_fails_validation() {
        let mesh = square_mesh(3);
        let (_, _, mut t) = tiled(&mesh);
        let k = t
            .squares()
            .iter()
            .position(|s| !s.degenerate)
            .unwrap();
        t.squares_mut()[k].x0 += 1e-3;
        t.squares_mut()[k].x1 += 1e-3;
        match validate_tiling(mesh.map(), &t, 1e-9) {
            Err(Error::ValidationFailed(msg)) => {
                assert!(msg.contains("overlap") || msg.contains("footprint"), "{msg}");
            }
            other => panic!("expected ValidationFailed, got {other:?}"),
        }
    }

    #[test]
    fn dual_check_on_square_and_path() {
        let mesh = square_mesh(2);
        let (faces, _, t) = tiled(&mesh);
        let report = dual_tiling_check(mesh.map(), &faces, &t, 1e-12, 1e-10).unwrap();
        assert!((report.dual_intensity - 2.0 / 3.0).abs() < 1e-13);
        assert!(report.intensity_product_defect < 1e-13);
        assert!(report.square_mismatch < 1e-13, "{report:?}");

        let mesh = path_mesh();
        let (faces, _, t) = tiled(&mesh);
        let report = dual_tiling_check(mesh.map(), &faces, &t, 1e-12, 1e-10).unwrap();
        assert!((report.dual_intensity - 2.0).abs() < 1e-13);
        assert!(report.square_mismatch < 1e-13, "{report:?}");

        let mesh = notched_mesh(3);
        let (faces, _, t) = tiled(&mesh);
        let report = dual_tiling_check(mesh.map(), &faces, &t, 1e-12, 1e-9).unwrap();
        assert!(report.intensity_product_defect < 1e-12, "{report:?}");
        assert!(report.square_mismatch < 1e-12, "{report:?}");
    }

    #[test]
    fn tampered_tiling_violates_duality() {
        let mesh = square_mesh(2);
        let (faces, _, mut t) = tiled(&mesh);
        t.squares_mut()[0].y0 += 1e-3;
        match dual_tiling_check(mesh.map(), &faces, &t, 1e-12, 1e-6) {
            Err(Error::DualityViolated(msg)) => {
                assert!(msg.contains("mismatch"), "{msg}");
            }
            other => panic!("expected DualityViolated, got {other:?}"),
        }
    }
}
