//! Dyadic lattice meshing of a marked Jordan domain.
//!
//! The mesh at level `n` consists of the lattice vertices `(i·2⁻ⁿ, j·2⁻ⁿ)`
//! strictly inside the domain, joined by the lattice edges that do not meet
//! the boundary, restricted to the connected component of a seed vertex.
//! Every *missing* direction of a mesh vertex corresponds to a lattice edge
//! that meets the boundary (or whose far endpoint leaves the domain); the
//! boundary arcs met by these edges classify the vertex into the classes
//! `T`, `B`, `L`, `R`, with `T`/`B` taking precedence.
//!
//! [`contract_poles`] then merges all `T` vertices into a single top pole and
//! all `B` vertices into a bottom pole, preserving the planar embedding, and
//! adds the pole–pole arc edge through the outer region. The embedding of the
//! contracted vertices is recovered from a walk around the outer boundary of
//! the lattice subgraph: the walk visits each vertex's missing directions
//! ("slots") exactly once, in the cyclic order in which the outer region sees
//! them, which is exactly the order in which the contracted pole must pick up
//! each vertex's remaining edges.

use crate::domain::{ArcLabel, ArcSet, Location, PlanarDomain};
use crate::error::{Error, Result};
use crate::geom::Pt;
use crate::map::{FaceStructure, PlanarMap};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Lattice coordinates `(i, j)` of the point `(i·2⁻ⁿ, j·2⁻ⁿ)`.
pub type Coord = (i64, i64);

/// The four lattice directions, in counter-clockwise order starting east.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Dir {
    East = 0,
    North = 1,
    West = 2,
    South = 3,
}

impl Dir {
    /// All directions in counter-clockwise order.
    pub const ALL: [Dir; 4] = [Dir::East, Dir::North, Dir::West, Dir::South];

    fn from_index(i: usize) -> Dir {
        Dir::ALL[i % 4]
    }

    /// Index in counter-clockwise order (east = 0).
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub(crate) fn bit(self) -> u8 {
        1 << self as u8
    }

    /// Coordinate offset of one lattice step.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::East => (1, 0),
            Dir::North => (0, 1),
            Dir::West => (-1, 0),
            Dir::South => (0, -1),
        }
    }

    /// The opposite direction.
    pub fn reverse(self) -> Dir {
        Dir::from_index(self.index() + 2)
    }

    /// Next direction counter-clockwise.
    pub fn ccw_next(self) -> Dir {
        Dir::from_index(self.index() + 1)
    }

    /// Next direction clockwise.
    pub fn cw_next(self) -> Dir {
        Dir::from_index(self.index() + 3)
    }

    /// `steps` clockwise turns from `self`.
    fn cw_step(self, steps: usize) -> Dir {
        Dir::from_index(self.index() + 3 * steps)
    }
}

/// One lattice step from `c` in direction `d`.
#[inline]
pub fn step(c: Coord, d: Dir) -> Coord {
    let (dx, dy) = d.delta();
    (c.0 + dx, c.1 + dy)
}

/// Per-vertex mesh record: which edges are present, and for each missing
/// direction, the boundary arcs the missing edge meets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VertexInfo {
    pub(crate) dirmask: u8,
    pub(crate) cross: [ArcSet; 4],
}

impl VertexInfo {
    /// True if the edge in direction `d` is present.
    pub fn has(&self, d: Dir) -> bool {
        self.dirmask & d.bit() != 0
    }

    /// Arcs met by the (missing) edge in direction `d`.
    pub fn cross(&self, d: Dir) -> ArcSet {
        self.cross[d.index()]
    }

    /// Union of the arcs met by all missing edges at this vertex.
    pub fn arc_union(&self) -> ArcSet {
        self.cross
            .iter()
            .fold(ArcSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// Number of present edges.
    pub fn degree(&self) -> usize {
        self.dirmask.count_ones() as usize
    }
}

/// The lattice subgraph of a domain at one refinement level.
#[derive(Debug, Clone)]
pub struct LatticeSubgraph {
    level: u32,
    verts: BTreeMap<Coord, VertexInfo>,
}

impl LatticeSubgraph {
    #[cfg(test)]
    pub(crate) fn from_parts(level: u32, verts: BTreeMap<Coord, VertexInfo>) -> LatticeSubgraph {
        LatticeSubgraph { level, verts }
    }

    /// Refinement level `n`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Lattice spacing `2⁻ⁿ`.
    pub fn spacing(&self) -> f64 {
        1.0 / (1u64 << self.level) as f64
    }

    /// Planar position of a lattice coordinate.
    pub fn point_of(&self, c: Coord) -> Pt {
        let s = self.spacing();
        [c.0 as f64 * s, c.1 as f64 * s]
    }

    /// True if `c` is a mesh vertex.
    pub fn contains(&self, c: Coord) -> bool {
        self.verts.contains_key(&c)
    }

    /// Per-vertex record, if `c` is a mesh vertex.
    pub fn info(&self, c: Coord) -> Option<&VertexInfo> {
        self.verts.get(&c)
    }

    /// True if the lattice edge from `c` in direction `d` is present.
    pub fn has_edge(&self, c: Coord, d: Dir) -> bool {
        self.verts.get(&c).is_some_and(|v| v.has(d))
    }

    /// Number of mesh vertices.
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    /// Number of mesh edges.
    pub fn edge_count(&self) -> usize {
        self.verts
            .values()
            .map(|v| (v.has(Dir::East) as usize) + (v.has(Dir::North) as usize))
            .sum()
    }

    /// Iterate vertices in coordinate order.
    pub fn vertices(&self) -> impl Iterator<Item = (Coord, &VertexInfo)> {
        self.verts.iter().map(|(c, v)| (*c, v))
    }
}

/// Round `x·2ⁿ` to the nearest integer, ties toward the smaller value.
fn nearest_index(x: f64, scale: f64) -> i64 {
    (x * scale - 0.5).ceil() as i64
}

/// Extract the lattice subgraph of `domain` at `level`, restricted to the
/// connected component of the lattice vertex nearest to `seed`.
pub fn build_lattice_subgraph(
    domain: &PlanarDomain,
    level: u32,
    seed: Pt,
) -> Result<LatticeSubgraph> {
    if level == 0 || level > 30 {
        return Err(Error::SchemaError(format!(
            "level {level} outside the supported range 1..=30"
        )));
    }
    if domain.locate(seed) != Location::Inside {
        return Err(Error::SeedOutside(seed[0], seed[1]));
    }
    let scale = (1u64 << level) as f64;
    let spacing = 1.0 / scale;
    let point_of = |c: Coord| -> Pt { [c.0 as f64 * spacing, c.1 as f64 * spacing] };
    let s0 = (nearest_index(seed[0], scale), nearest_index(seed[1], scale));
    if domain.locate(point_of(s0)) != Location::Inside {
        return Err(Error::MeshTooCoarse {
            level,
            reason: format!(
                "the lattice vertex nearest to the seed ({}, {}) is not strictly inside",
                seed[0], seed[1]
            ),
        });
    }

    // Memoised geometry queries. The maps are only ever used for point
    // lookups, never iterated, so they do not affect determinism.
    let mut loc_cache: HashMap<Coord, Location> = HashMap::new();
    let mut cross_cache: HashMap<(Coord, u8), ArcSet> = HashMap::new();
    let mut near_cache: HashMap<Coord, ArcSet> = HashMap::new();
    let mut locate = |c: Coord, domain: &PlanarDomain| -> Location {
        *loc_cache.entry(c).or_insert_with(|| domain.locate(point_of(c)))
    };
    let mut crossing = |c: Coord, d: Dir, domain: &PlanarDomain| -> ArcSet {
        let key = match d {
            Dir::East | Dir::North => (c, d as u8),
            Dir::West | Dir::South => (step(c, d), d.reverse() as u8),
        };
        *cross_cache.entry(key).or_insert_with(|| {
            domain.crossing_arcs(point_of(key.0), point_of(step(key.0, Dir::from_index(key.1 as usize))))
        })
    };

    let mut verts: BTreeMap<Coord, VertexInfo> = BTreeMap::new();
    verts.insert(s0, VertexInfo::default());
    let mut queue = VecDeque::from([s0]);
    while let Some(v) = queue.pop_front() {
        for d in Dir::ALL {
            let u = step(v, d);
            let cross = crossing(v, d, domain);
            let traversable = cross.is_empty() && locate(u, domain) == Location::Inside;
            if traversable {
                let info = verts.get_mut(&v).expect("queued vertex is recorded");
                info.dirmask |= d.bit();
                if let std::collections::btree_map::Entry::Vacant(e) = verts.entry(u) {
                    e.insert(VertexInfo::default());
                    queue.push_back(u);
                }
            } else {
                let arcs = if !cross.is_empty() {
                    cross
                } else {
                    // The far endpoint sits in the boundary tolerance band
                    // without exact incidence; attribute by proximity.
                    let near = *near_cache
                        .entry(u)
                        .or_insert_with(|| domain.near_arcs(point_of(u)));
                    if near.is_empty() {
                        return Err(Error::MeshTooCoarse {
                            level,
                            reason: format!(
                                "cannot attribute a boundary crossing for the lattice edge \
                                 from ({}, {})",
                                point_of(v)[0],
                                point_of(v)[1]
                            ),
                        });
                    }
                    near
                };
                let info = verts.get_mut(&v).expect("queued vertex is recorded");
                info.cross[d.index()] = arcs;
            }
        }
    }

    let sub = LatticeSubgraph { level, verts };
    if sub.edge_count() == 0 {
        return Err(Error::MeshTooCoarse {
            level,
            reason: "the lattice subgraph has no edges".into(),
        });
    }
    Ok(sub)
}

/// Boundary classification of the mesh vertices.
#[derive(Debug, Clone)]
pub struct BoundaryClasses {
    /// Arc class of each boundary vertex; interior vertices are absent.
    pub label_of: BTreeMap<Coord, ArcLabel>,
}

impl BoundaryClasses {
    #[cfg(test)]
    pub(crate) fn from_labels(label_of: BTreeMap<Coord, ArcLabel>) -> BoundaryClasses {
        BoundaryClasses { label_of }
    }

    /// Vertices labelled `label`, in coordinate order.
    pub fn class(&self, label: ArcLabel) -> impl Iterator<Item = Coord> + '_ {
        self.label_of
            .iter()
            .filter(move |(_, l)| **l == label)
            .map(|(c, _)| *c)
    }
}

/// Classify the boundary vertices of `sub` against the four arcs.
///
/// Rejects meshes where the missing edges around a single vertex — or around
/// a lattice point adjacent to the mesh — meet two opposite arcs, and meshes
/// where one of the four classes comes out empty.
pub fn classify_boundary(
    domain: &PlanarDomain,
    sub: &LatticeSubgraph,
) -> Result<BoundaryClasses> {
    let level = sub.level();
    let mut label_of = BTreeMap::new();
    for (c, info) in sub.vertices() {
        let u = info.arc_union();
        if u.opposite_pair().is_some() {
            let p = sub.point_of(c);
            return Err(Error::OppositeArcViolation {
                level,
                x: p[0],
                y: p[1],
                arcs: u.to_string(),
            });
        }
        let label = if u.contains(ArcLabel::Top) {
            Some(ArcLabel::Top)
        } else if u.contains(ArcLabel::Bottom) {
            Some(ArcLabel::Bottom)
        } else if u.contains(ArcLabel::Left) {
            Some(ArcLabel::Left)
        } else if u.contains(ArcLabel::Right) {
            Some(ArcLabel::Right)
        } else {
            None
        };
        if let Some(l) = label {
            label_of.insert(c, l);
        }
    }

    // Lattice points adjacent to the mesh but outside it: if the four lattice
    // edges around such a point meet opposite arcs, the domain pinches below
    // the lattice resolution even though no mesh vertex witnesses it.
    let mut done: BTreeSet<Coord> = BTreeSet::new();
    for (c, info) in sub.vertices() {
        for d in Dir::ALL {
            if info.has(d) {
                continue;
            }
            let u = step(c, d);
            if sub.contains(u) || !done.insert(u) {
                continue;
            }
            let mut arcs = ArcSet::EMPTY;
            for d2 in Dir::ALL {
                arcs = arcs.union(domain.crossing_arcs(sub.point_of(u), sub.point_of(step(u, d2))));
            }
            if arcs.opposite_pair().is_some() {
                let p = sub.point_of(u);
                return Err(Error::OppositeArcViolation {
                    level,
                    x: p[0],
                    y: p[1],
                    arcs: arcs.to_string(),
                });
            }
        }
    }

    for label in ArcLabel::ALL {
        if !label_of.values().any(|l| *l == label) {
            return Err(Error::EmptyBoundaryClass {
                level,
                class: label.letter().to_string(),
            });
        }
    }
    Ok(BoundaryClasses { label_of })
}

/// Where a contracted-graph edge comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSrc {
    /// A lattice edge; `a` is the geometric source of the even half-edge.
    Lattice { a: Coord, b: Coord },
    /// The pole–pole arc edge.
    Arc,
}

/// The contracted two-pole map of a classified lattice subgraph.
#[derive(Debug, Clone)]
pub struct ContractedMesh {
    level: u32,
    sub: LatticeSubgraph,
    labels: BTreeMap<Coord, ArcLabel>,
    map: PlanarMap,
    /// Lattice coordinates of the free (uncontracted) vertices, by vertex id.
    free_coords: Vec<Coord>,
    /// Graph vertex id of every lattice vertex (pole id for `T`/`B` members).
    vid_of: BTreeMap<Coord, usize>,
    /// Provenance of each edge id.
    edge_src: Vec<EdgeSrc>,
    /// Half-edge leaving lattice vertex `c` in direction `d`, where retained.
    he_at: BTreeMap<(Coord, u8), usize>,
}

/// Contract the `T` class into a top pole and the `B` class into a bottom
/// pole, add the pole–pole arc edge, and return the embedded map.
pub fn contract_poles(
    sub: LatticeSubgraph,
    classes: &BoundaryClasses,
) -> Result<ContractedMesh> {
    let level = sub.level();
    let t_set: BTreeSet<Coord> = classes
        .label_of
        .iter()
        .filter(|(_, l)| **l == ArcLabel::Top)
        .map(|(c, _)| *c)
        .collect();
    let b_set: BTreeSet<Coord> = classes
        .label_of
        .iter()
        .filter(|(_, l)| **l == ArcLabel::Bottom)
        .map(|(c, _)| *c)
        .collect();
    for (set, label) in [(&t_set, ArcLabel::Top), (&b_set, ArcLabel::Bottom)] {
        if set.is_empty() {
            return Err(Error::EmptyBoundaryClass {
                level,
                class: label.letter().to_string(),
            });
        }
    }

    let free_coords: Vec<Coord> = sub
        .vertices()
        .map(|(c, _)| c)
        .filter(|c| !t_set.contains(c) && !b_set.contains(c))
        .collect();
    let t_vid = free_coords.len();
    let b_vid = t_vid + 1;
    let mut vid_of: BTreeMap<Coord, usize> = BTreeMap::new();
    for (i, c) in free_coords.iter().enumerate() {
        vid_of.insert(*c, i);
    }
    for c in &t_set {
        vid_of.insert(*c, t_vid);
    }
    for c in &b_set {
        vid_of.insert(*c, b_vid);
    }

    // Create the retained edges, dropping pole self-loops.
    let mut tail: Vec<usize> = Vec::new();
    let mut edge_src: Vec<EdgeSrc> = Vec::new();
    let mut he_at: BTreeMap<(Coord, u8), usize> = BTreeMap::new();
    for (c, info) in sub.vertices() {
        for d in [Dir::East, Dir::North] {
            if !info.has(d) {
                continue;
            }
            let u = step(c, d);
            let (va, vb) = (vid_of[&c], vid_of[&u]);
            if va == vb {
                continue; // both endpoints in the same pole class
            }
            let h = tail.len();
            tail.push(va);
            tail.push(vb);
            edge_src.push(EdgeSrc::Lattice { a: c, b: u });
            he_at.insert((c, d as u8), h);
            he_at.insert((u, d.reverse() as u8), h + 1);
        }
    }
    let arc_edge = tail.len() / 2;
    tail.push(t_vid);
    tail.push(b_vid);
    edge_src.push(EdgeSrc::Arc);

    // Rotations of free vertices: present directions, counter-clockwise.
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); free_coords.len() + 2];
    for (i, c) in free_coords.iter().enumerate() {
        for d in Dir::ALL {
            if let Some(&h) = he_at.get(&(*c, d as u8)) {
                rotations[i].push(h);
            }
        }
    }

    // Pole rotations from the outer walk.
    let slots = outer_slots(&sub)?;
    let mut desig_t: BTreeMap<Coord, Dir> = BTreeMap::new();
    let mut desig_b: BTreeMap<Coord, Dir> = BTreeMap::new();
    let mut seq: Vec<(bool, Coord, Dir)> = Vec::new();
    for &(c, d) in &slots {
        let arcs = sub.info(c).expect("slot at mesh vertex").cross(d);
        if t_set.contains(&c) && arcs.contains(ArcLabel::Top) && !desig_t.contains_key(&c) {
            desig_t.insert(c, d);
            seq.push((true, c, d));
        } else if b_set.contains(&c) && arcs.contains(ArcLabel::Bottom) && !desig_b.contains_key(&c)
        {
            desig_b.insert(c, d);
            seq.push((false, c, d));
        }
    }
    if desig_t.len() != t_set.len() || desig_b.len() != b_set.len() {
        return Err(Error::NonPlanarEmbedding(
            "a contracted vertex has no boundary-crossing slot on the outer walk".into(),
        ));
    }
    let transitions = (0..seq.len())
        .filter(|&i| seq[i].0 != seq[(i + 1) % seq.len()].0)
        .count();
    if transitions > 2 {
        return Err(Error::NonPlanarEmbedding(
            "top and bottom contraction fans interleave along the outer boundary; \
             increase the level"
                .into(),
        ));
    }

    let block = |top: bool| -> Vec<(Coord, Dir)> {
        let k = (0..seq.len())
            .find(|&i| seq[i].0 == top && seq[(i + seq.len() - 1) % seq.len()].0 != top)
            .expect("both blocks are nonempty");
        (0..seq.len())
            .map(|i| &seq[(k + i) % seq.len()])
            .take_while(|s| s.0 == top)
            .map(|s| (s.1, s.2))
            .collect()
    };
    let rho_pole = |members: Vec<(Coord, Dir)>, own: &BTreeSet<Coord>, arc_half: usize| {
        let mut rho = Vec::new();
        for (c, slot_dir) in members {
            let mut d = slot_dir;
            for _ in 0..3 {
                d = d.ccw_next();
                if let Some(&h) = he_at.get(&(c, d as u8)) {
                    if !own.contains(&step(c, d)) {
                        rho.push(h);
                    }
                }
            }
        }
        rho.push(arc_half);
        rho
    };
    rotations[t_vid] = rho_pole(block(true), &t_set, 2 * arc_edge);
    rotations[b_vid] = rho_pole(block(false), &b_set, 2 * arc_edge + 1);

    let map = PlanarMap::from_rotations(tail, &rotations, arc_edge, t_vid, b_vid)?;
    Ok(ContractedMesh {
        level,
        labels: classes.label_of.clone(),
        map,
        free_coords,
        vid_of,
        edge_src,
        he_at,
        sub,
    })
}

/// Walk the outer boundary of the lattice subgraph and return every
/// (vertex, missing direction) slot in the cyclic order the walk sees them.
fn outer_slots(sub: &LatticeSubgraph) -> Result<Vec<(Coord, Dir)>> {
    // Start at the bottom-most, then left-most vertex, leaving along its
    // first present direction clockwise from south; the face on the left of
    // that half-edge is the outer face.
    let vstar = sub
        .vertices()
        .map(|(c, _)| c)
        .min_by_key(|c| (c.1, c.0))
        .expect("mesh has vertices");
    let d0 = [Dir::South, Dir::West, Dir::North, Dir::East]
        .into_iter()
        .find(|d| sub.has_edge(vstar, *d))
        .expect("mesh vertex has an edge");

    let missing_total: usize = sub.vertices().map(|(_, v)| 4 - v.degree()).sum();
    let mut slots = Vec::with_capacity(missing_total);
    let start = (vstar, d0);
    let mut cur = start;
    let cap = 4 * sub.vertex_count() + 4;
    for _ in 0..=cap {
        let (v, d) = cur;
        let u = step(v, d);
        let back = d.reverse();
        let mut dep = back;
        for s in 1..=4 {
            let cand = back.cw_step(s % 4);
            if sub.has_edge(u, cand) {
                dep = cand;
                break;
            }
        }
        for s in 1..4 {
            let m = back.cw_step(s);
            if m == dep {
                break;
            }
            slots.push((u, m));
        }
        cur = (u, dep);
        if cur == start {
            if slots.len() != missing_total {
                return Err(Error::NonPlanarEmbedding(format!(
                    "outer walk swept {} of {} boundary slots; the mesh may pinch — \
                     increase the level",
                    slots.len(),
                    missing_total
                )));
            }
            return Ok(slots);
        }
    }
    Err(Error::NonPlanarEmbedding(
        "outer boundary walk failed to close".into(),
    ))
}

impl ContractedMesh {
    /// Refinement level `n`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// The underlying lattice subgraph.
    pub fn sub(&self) -> &LatticeSubgraph {
        &self.sub
    }

    /// Boundary class of a lattice vertex, if it has one.
    pub fn label(&self, c: Coord) -> Option<ArcLabel> {
        self.labels.get(&c).copied()
    }

    /// The contracted planar map (including the arc edge).
    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    /// Vertex id of the top pole.
    pub fn t_vid(&self) -> usize {
        self.map.pole_top()
    }

    /// Vertex id of the bottom pole.
    pub fn b_vid(&self) -> usize {
        self.map.pole_bottom()
    }

    /// Lattice coordinates of the free vertices, indexed by vertex id.
    pub fn free_coords(&self) -> &[Coord] {
        &self.free_coords
    }

    /// Graph vertex id of a lattice vertex (pole id for `T`/`B` members).
    pub fn vid(&self, c: Coord) -> Option<usize> {
        self.vid_of.get(&c).copied()
    }

    /// Provenance of each edge id.
    pub fn edge_src(&self) -> &[EdgeSrc] {
        &self.edge_src
    }

    /// Geometric (source, target) lattice coordinates of half-edge `h`,
    /// or `None` for the arc halves.
    pub fn half_src(&self, h: usize) -> Option<(Coord, Coord)> {
        match self.edge_src[h / 2] {
            EdgeSrc::Lattice { a, b } => Some(if h.is_multiple_of(2) { (a, b) } else { (b, a) }),
            EdgeSrc::Arc => None,
        }
    }

    /// Retained half-edge leaving lattice vertex `c` in direction `d`.
    pub fn half_edge_at(&self, c: Coord, d: Dir) -> Option<usize> {
        self.he_at.get(&(c, d as u8)).copied()
    }

    /// Map from complete lattice cells (keyed by their south-west corner) to
    /// the face of the contracted map containing the cell's interior.
    ///
    /// A cell is complete when its four lattice edges are present; its
    /// interior then lies in a single face even where contraction has merged
    /// cell corners into a pole.
    pub fn cell_faces(&self, faces: &FaceStructure) -> BTreeMap<Coord, usize> {
        let mut out = BTreeMap::new();
        for (c, info) in self.sub.vertices() {
            if !(info.has(Dir::East) && info.has(Dir::North)) {
                continue;
            }
            let e = step(c, Dir::East);
            let n = step(c, Dir::North);
            if !(self.sub.has_edge(e, Dir::North) && self.sub.has_edge(n, Dir::East)) {
                continue;
            }
            let ne = step(e, Dir::North);
            // Any retained half-edge with this cell on its left will do.
            let candidates = [
                (c, Dir::East),
                (e, Dir::North),
                (ne, Dir::West),
                (n, Dir::South),
            ];
            if let Some(h) = candidates
                .iter()
                .find_map(|&(v, d)| self.half_edge_at(v, d))
            {
                out.insert(c, faces.face_of[h]);
            }
        }
        out
    }
}
