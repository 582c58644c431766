//! The interpolated discrete map into the rectangle, and its diagnostics.
//!
//! Each lattice vertex `z` is sent to the complex point whose imaginary part
//! is the potential `h(z)` and whose real part is the mean conjugate
//! potential of the faces around `z` — for vertices absorbed into a pole,
//! the faces around the contracted pole vertex. Between vertices the map is
//! extended bilinearly over lattice cells whose four corners are all mesh
//! vertices; points in other cells are reported as outside the mesh rather
//! than filled with artificial zeros.
//!
//! The module also provides the discrete derivative calculus used to state
//! the discrete Cauchy–Riemann equations: at a vertex whose four surrounding
//! cells are complete, the `x`-derivative of the conjugate across the two
//! upper cells must equal the `y`-derivative of the potential, and the
//! `y`-derivative of the conjugate across the two right cells must be minus
//! the `x`-derivative of the potential. Both identities hold exactly in
//! exact arithmetic; their floating-point residuals are the sharpest
//! per-vertex consistency measure the pipeline has.
//!
//! Finally, [`convergence_sweep`] runs the whole pipeline over a range of
//! levels and collects the quantities whose convergence the method promises:
//! the intensity `I*` (the rectangle's aspect ratio), the effective
//! resistance `1/I*`, its combinatorial lower bound, the largest square
//! side, and the residuals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use crate::conjugate::ConjugateField;
use crate::domain::PlanarDomain;
use crate::error::{Error, Result};
use crate::geom::Pt;
use crate::harmonic::HarmonicField;
use crate::map::FaceStructure;
use crate::mesh::{step, ContractedMesh, Coord, Dir};
use crate::pipeline::{run_pipeline, PipelineOutput};
use crate::tiling::SquareTiling;

/// The discrete map: vertex images plus bilinear interpolation.
#[derive(Debug, Clone)]
pub struct DiscreteConformalMap {
    level: u32,
    width: f64,
    images: BTreeMap<Coord, [f64; 2]>,
    cells: BTreeSet<Coord>,
}

impl DiscreteConformalMap {
    /// Refinement level `n`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Width `I*` of the target rectangle (its height is 1).
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Image of the lattice vertex `c`, if it is a mesh vertex.
    pub fn image(&self, c: Coord) -> Option<[f64; 2]> {
        self.images.get(&c).copied()
    }

    /// All vertex images in lattice order.
    pub fn images(&self) -> impl Iterator<Item = (Coord, [f64; 2])> + '_ {
        self.images.iter().map(|(&c, &v)| (c, v))
    }

    /// Cells (by south-west corner) on which interpolation is defined:
    /// those whose four corners are all mesh vertices.
    pub fn cells(&self) -> &BTreeSet<Coord> {
        &self.cells
    }

    /// Evaluate the interpolated map at a point of the domain.
    ///
    /// Returns `None` when no complete cell contains the point — the point
    /// is outside the meshed region (there is no zero-extension).
    pub fn evaluate(&self, p: Pt) -> Option<[f64; 2]> {
        let scale = f64::from(1u32 << self.level);
        let sx = p[0] * scale;
        let sy = p[1] * scale;
        let (ix, iy) = (sx.floor() as i64, sy.floor() as i64);
        // A point on a cell boundary lies in up to four cells; interpolation
        // agrees on shared edges, so any containing complete cell will do.
        for (cx, cy) in [
            (ix, iy),
            (ix - 1, iy),
            (ix, iy - 1),
            (ix - 1, iy - 1),
        ] {
            let (x1, y1) = (cx as f64 / scale, cy as f64 / scale);
            let (x2, y2) = ((cx + 1) as f64 / scale, (cy + 1) as f64 / scale);
            if !(x1 <= p[0] && p[0] <= x2 && y1 <= p[1] && p[1] <= y2) {
                continue;
            }
            if !self.cells.contains(&(cx, cy)) {
                continue;
            }
            let s11 = self.images[&(cx, cy)];
            let s21 = self.images[&(cx + 1, cy)];
            let s12 = self.images[&(cx, cy + 1)];
            let s22 = self.images[&(cx + 1, cy + 1)];
            let u = (p[0] - x1) * scale;
            let v = (p[1] - y1) * scale;
            let lerp = |k: usize| {
                (1.0 - u) * (1.0 - v) * s11[k]
                    + u * (1.0 - v) * s21[k]
                    + (1.0 - u) * v * s12[k]
                    + u * v * s22[k]
            };
            return Some([lerp(0), lerp(1)]);
        }
        None
    }
}

/// Build the vertex images of the discrete map.
///
/// Free vertices average the conjugate over the faces around them; vertices
/// contracted into a pole average over the faces around the pole, so every
/// top-class vertex shares one real part (and likewise the bottom class).
pub fn vertex_images(
    mesh: &ContractedMesh,
    faces: &FaceStructure,
    field: &HarmonicField,
    conj: &ConjugateField,
) -> DiscreteConformalMap {
    let map = mesh.map();
    let mean_around = |v: usize| -> f64 {
        let mut sum = 0.0;
        let mut k = 0usize;
        for h in map.vertex_half_edges(v) {
            sum += conj.value(faces.face_of[h]);
            k += 1;
        }
        sum / k as f64
    };
    let re_top = mean_around(map.pole_top());
    let re_bottom = mean_around(map.pole_bottom());
    let mut images = BTreeMap::new();
    for (c, _) in mesh.sub().vertices() {
        let vid = mesh.vid(c).expect("every mesh vertex has an id");
        let image = if vid == map.pole_top() {
            [re_top, 1.0]
        } else if vid == map.pole_bottom() {
            [re_bottom, 0.0]
        } else {
            [mean_around(vid), field.value(vid)]
        };
        images.insert(c, image);
    }
    let mut cells = BTreeSet::new();
    for (c, _) in mesh.sub().vertices() {
        if [Dir::East, Dir::North]
            .iter()
            .all(|&d| mesh.sub().contains(step(c, d)))
            && mesh.sub().contains(step(step(c, Dir::East), Dir::North))
        {
            cells.insert(c);
        }
    }
    DiscreteConformalMap {
        level: mesh.level(),
        width: conj.intensity(),
        images,
        cells,
    }
}

/// Axis of a discrete partial derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn dir(self) -> Dir {
        match self {
            Axis::X => Dir::East,
            Axis::Y => Dir::North,
        }
    }
}

/// Discrete partial derivative of a vertex-indexed field:
/// `2^n · (g(z + 2^-n·axis) − g(z))`.
///
/// Fails with [`Error::MissingNeighbor`] if either value is absent.
pub fn discrete_partial(
    values: &BTreeMap<Coord, f64>,
    level: u32,
    axis: Axis,
    z: Coord,
) -> Result<f64> {
    discrete_partial_k(values, level, &[axis], z)
}

/// Iterated discrete partial `∂_{a0} ∂_{a1} … g`, by repeated application
/// of [`discrete_partial`].
pub fn discrete_partial_k(
    values: &BTreeMap<Coord, f64>,
    level: u32,
    axes: &[Axis],
    z: Coord,
) -> Result<f64> {
    let scale = f64::from(1u32 << level);
    match axes.split_first() {
        None => values
            .get(&z)
            .copied()
            .ok_or(Error::MissingNeighbor(z.0, z.1)),
        Some((&first, rest)) => {
            let u = step(z, first.dir());
            let gu = discrete_partial_k(values, level, rest, u)?;
            let gz = discrete_partial_k(values, level, rest, z)?;
            Ok(scale * (gu - gz))
        }
    }
}

/// The two discrete Cauchy–Riemann residuals of one vertex.
pub type CrPair = (f64, f64);

/// Per-vertex discrete Cauchy–Riemann residuals, with their max norm.
#[derive(Debug, Clone)]
pub struct CrReport {
    /// Residual pair per vertex at which the identities are defined.
    pub values: BTreeMap<Coord, CrPair>,
    /// Max absolute residual over all pairs; 0 when no vertex qualifies.
    pub max: f64,
}

fn cr_at(
    cell_faces: &BTreeMap<Coord, usize>,
    mesh: &ContractedMesh,
    field: &HarmonicField,
    conj: &ConjugateField,
    z: Coord,
) -> Result<CrPair> {
    let scale = f64::from(1u32 << mesh.level());
    let cell = |c: Coord| -> Result<f64> {
        cell_faces
            .get(&c)
            .map(|&f| conj.value(f))
            .ok_or(Error::NotInterior(z.0, z.1))
    };
    // The four cells around z, named by quadrant; all must be complete for
    // z to count as interior.
    let ul = cell((z.0 - 1, z.1))?;
    let ur = cell((z.0, z.1))?;
    let dr = cell((z.0, z.1 - 1))?;
    cell((z.0 - 1, z.1 - 1))?;
    let h = |c: Coord| -> Result<f64> {
        mesh.vid(c)
            .map(|v| field.value(v))
            .ok_or(Error::NotInterior(z.0, z.1))
    };
    let hz = h(z)?;
    let res1 = scale * (ur - ul) - scale * (h(step(z, Dir::North))? - hz);
    let res2 = scale * (ur - dr) + scale * (h(step(z, Dir::East))? - hz);
    Ok((res1, res2))
}

/// Discrete Cauchy–Riemann residuals at one vertex.
///
/// The vertex must be interior: its four surrounding cells complete, so all
/// four edges at `z` and the full ring around it are present. Fails with
/// [`Error::NotInterior`] otherwise.
pub fn cr_residual_at(
    mesh: &ContractedMesh,
    faces: &FaceStructure,
    field: &HarmonicField,
    conj: &ConjugateField,
    z: Coord,
) -> Result<CrPair> {
    let cells = mesh.cell_faces(faces);
    cr_at(&cells, mesh, field, conj, z)
}

/// Discrete Cauchy–Riemann residuals at every interior vertex.
pub fn cr_residuals(
    mesh: &ContractedMesh,
    faces: &FaceStructure,
    field: &HarmonicField,
    conj: &ConjugateField,
) -> CrReport {
    let cells = mesh.cell_faces(faces);
    let mut values = BTreeMap::new();
    let mut max = 0.0f64;
    for (c, _) in mesh.sub().vertices() {
        if let Ok(pair) = cr_at(&cells, mesh, field, conj, c) {
            max = max.max(pair.0.abs()).max(pair.1.abs());
            values.insert(c, pair);
        }
    }
    CrReport { values, max }
}

/// Largest square side `W(n)`, optionally restricted to edges whose lattice
/// endpoints both lie in the closed disk `(center, radius)`.
pub fn max_square_side(
    mesh: &ContractedMesh,
    tiling: &SquareTiling,
    region: Option<(Pt, f64)>,
) -> f64 {
    let mut w = 0.0f64;
    for s in tiling.squares() {
        if let Some((center, radius)) = region {
            let inside = mesh.half_src(2 * s.edge).is_some_and(|(a, b)| {
                [a, b].iter().all(|&c| {
                    let p = mesh.sub().point_of(c);
                    let (dx, dy) = (p[0] - center[0], p[1] - center[1]);
                    dx * dx + dy * dy <= radius * radius
                })
            });
            if !inside {
                continue;
            }
        }
        w = w.max(s.side);
    }
    w
}

/// Certified lower bound on the effective resistance between the poles.
///
/// Assigning every edge the width `2^-n` makes `(shortest t–b path length)²
/// divided by the total edge weight` a valid extremal-length minorant:
/// `dist(t,b)² / |E|`, with the distance counted in edges and the arc edge
/// excluded.
pub fn duffin_lower_bound(mesh: &ContractedMesh) -> f64 {
    let map = mesh.map();
    let arc = map.arc_edge();
    let (t, b) = (map.pole_top(), map.pole_bottom());
    let mut dist = vec![usize::MAX; map.vertex_count()];
    dist[t] = 0;
    let mut queue = VecDeque::from([t]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for h in map.vertex_half_edges(v) {
            if map.edge_of(h) == arc {
                continue;
            }
            let u = map.head(h);
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let d = dist[b] as f64;
    d * d / (map.edge_count() - 1) as f64
}

/// One row of a [`ConvergenceReport`].
#[derive(Debug, Clone, Copy)]
pub struct LevelRow {
    pub level: u32,
    /// Intensity `I*_n`, the width of the tiled rectangle.
    pub intensity: f64,
    /// Effective resistance `1 / I*_n`.
    pub r_eff: f64,
    /// Combinatorial lower bound on the effective resistance.
    pub duffin_lb: f64,
    /// Largest square side `W(n)`.
    pub max_side: f64,
    /// Max discrete Cauchy–Riemann residual.
    pub cr_residual: f64,
    /// Final node-law residual of the linear solve.
    pub node_residual: f64,
    /// Cycle-law residual of the conjugate integration.
    pub cycle_residual: f64,
    /// Conjugate-gradient iterations.
    pub solve_iterations: usize,
    /// Wall-clock time for the level, in milliseconds.
    pub wall_ms: f64,
}

/// Diagnostics of [`convergence_sweep`], one row per completed level.
#[derive(Debug)]
pub struct ConvergenceReport {
    pub rows: Vec<LevelRow>,
    /// Levels that failed, with their errors; the report is still usable.
    pub failures: Vec<(u32, Error)>,
}

impl ConvergenceReport {
    /// `|I*_{n'} − I*_n|` between consecutive completed levels.
    pub fn intensity_deltas(&self) -> Vec<(u32, f64)> {
        self.rows
            .windows(2)
            .map(|w| (w[1].level, (w[1].intensity - w[0].intensity).abs()))
            .collect()
    }
}

/// Diagnostics for one already-computed pipeline output.
pub fn level_row(out: &PipelineOutput, wall_ms: f64) -> LevelRow {
    let cr = cr_residuals(&out.mesh, &out.faces, &out.field, &out.conjugate);
    let intensity = out.flow.intensity();
    LevelRow {
        level: out.mesh.level(),
        intensity,
        r_eff: 1.0 / intensity,
        duffin_lb: duffin_lower_bound(&out.mesh),
        max_side: max_square_side(&out.mesh, &out.tiling, None),
        cr_residual: cr.max,
        node_residual: out.field.stats().residual,
        cycle_residual: out.conjugate.cycle_residual(),
        solve_iterations: out.field.stats().iterations,
        wall_ms,
    }
}

/// Run the pipeline at each level and collect the convergence diagnostics.
///
/// Levels that fail are recorded in the report's `failures` instead of
/// aborting the sweep; nothing is asserted about monotonicity.
pub fn convergence_sweep(
    domain: &PlanarDomain,
    seed: Pt,
    levels: &[u32],
    tol: f64,
) -> ConvergenceReport {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &level in levels {
        let start = Instant::now();
        match run_pipeline(domain, level, seed, tol) {
            Ok(out) => rows.push(level_row(&out, start.elapsed().as_secs_f64() * 1e3)),
            Err(e) => failures.push((level, e)),
        }
    }
    ConvergenceReport { rows, failures }
}
