//! Combinatorial planar maps with two poles and a marked pole–pole edge.
//!
//! A [`PlanarMap`] stores a graph embedded on the sphere as a half-edge
//! structure: each edge `e` contributes the two oriented half-edges `2e` and
//! `2e + 1` (mutual twins), and every vertex carries its counter-clockwise
//! rotation of outgoing half-edges. Faces are the orbits of
//! `h ↦ rot_prev(twin(h))`, which traces the face on the *left* of `h`;
//! with this convention bounded faces of a plane drawing come out
//! counter-clockwise.
//!
//! Maps built by the mesher always contain a distinguished **arc edge**
//! joining the top pole to the bottom pole through what used to be the outer
//! face. The harmonic stage ignores this edge (it carries no conductance); it
//! exists so that the face structure splits the outer region into the two
//! faces `l` and `r` flanking the arc, which serve as the poles of the dual
//! map.

use crate::error::{Error, Result};

/// Half-edge representation of a two-pole planar map. See the module docs.
#[derive(Debug, Clone)]
pub struct PlanarMap {
    /// Tail vertex of each half-edge.
    tail: Vec<usize>,
    /// Next outgoing half-edge counter-clockwise around the tail.
    rot_next: Vec<usize>,
    /// Inverse of `rot_next`.
    rot_prev: Vec<usize>,
    /// One outgoing half-edge per vertex (entry point into its rotation).
    first_at: Vec<usize>,
    /// Edge id of the pole–pole arc edge.
    arc_edge: usize,
    /// Vertex id of the top pole.
    pole_top: usize,
    /// Vertex id of the bottom pole.
    pole_bottom: usize,
}

/// Faces of a [`PlanarMap`], plus the two faces flanking the arc edge.
#[derive(Debug, Clone)]
pub struct FaceStructure {
    /// Face id of the face on the left of each half-edge.
    pub face_of: Vec<usize>,
    /// Half-edge cycle of each face, in traversal order.
    pub orbits: Vec<Vec<usize>>,
    /// Face to the left of the arc half-edge directed top pole → bottom pole.
    pub l: usize,
    /// Face to the right of that half-edge.
    pub r: usize,
}

impl FaceStructure {
    /// Number of faces.
    pub fn count(&self) -> usize {
        self.orbits.len()
    }
}

impl PlanarMap {
    /// Build a map from explicit rotations.
    ///
    /// `tail[h]` is the tail vertex of half-edge `h` (twins are `2e`, `2e+1`);
    /// `rotations[v]` lists the outgoing half-edges of `v` counter-clockwise.
    /// The arc edge must join `pole_top` to `pole_bottom` with half `2*arc_edge`
    /// pointing out of `pole_top`. Validates that the rotations partition the
    /// half-edges and that the graph is connected.
    pub fn from_rotations(
        tail: Vec<usize>,
        rotations: &[Vec<usize>],
        arc_edge: usize,
        pole_top: usize,
        pole_bottom: usize,
    ) -> Result<PlanarMap> {
        let nh = tail.len();
        let nv = rotations.len();
        if !nh.is_multiple_of(2) {
            return Err(Error::NonPlanarEmbedding("odd number of half-edges".into()));
        }
        if 2 * arc_edge + 1 >= nh
            || tail[2 * arc_edge] != pole_top
            || tail[2 * arc_edge + 1] != pole_bottom
        {
            return Err(Error::NonPlanarEmbedding(
                "arc edge does not join the poles".into(),
            ));
        }
        let mut rot_next = vec![usize::MAX; nh];
        let mut rot_prev = vec![usize::MAX; nh];
        let mut first_at = vec![usize::MAX; nv];
        let mut seen = vec![false; nh];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(Error::Disconnected(format!("vertex {v} has no edges")));
            }
            first_at[v] = rot[0];
            for (i, &h) in rot.iter().enumerate() {
                if h >= nh || seen[h] {
                    return Err(Error::NonPlanarEmbedding(format!(
                        "half-edge {h} missing or repeated in rotations"
                    )));
                }
                seen[h] = true;
                if tail[h] != v {
                    return Err(Error::NonPlanarEmbedding(format!(
                        "half-edge {h} listed at vertex {v} but has tail {}",
                        tail[h]
                    )));
                }
                let g = rot[(i + 1) % rot.len()];
                rot_next[h] = g;
                rot_prev[g] = h;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NonPlanarEmbedding(
                "some half-edges appear in no rotation".into(),
            ));
        }

        let map = PlanarMap {
            tail,
            rot_next,
            rot_prev,
            first_at,
            arc_edge,
            pole_top,
            pole_bottom,
        };
        map.check_connected()?;
        Ok(map)
    }

    fn check_connected(&self) -> Result<()> {
        let nv = self.first_at.len();
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for h in self.vertex_half_edges(v) {
                let u = self.head(h);
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        if reached != nv {
            return Err(Error::Disconnected(format!(
                "{} of {} vertices reachable from vertex 0",
                reached, nv
            )));
        }
        Ok(())
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.first_at.len()
    }

    /// Number of edges (including the arc edge).
    pub fn edge_count(&self) -> usize {
        self.tail.len() / 2
    }

    /// Number of half-edges.
    pub fn half_edge_count(&self) -> usize {
        self.tail.len()
    }

    /// Edge id of the pole–pole arc edge.
    pub fn arc_edge(&self) -> usize {
        self.arc_edge
    }

    /// Vertex id of the top pole.
    pub fn pole_top(&self) -> usize {
        self.pole_top
    }

    /// Vertex id of the bottom pole.
    pub fn pole_bottom(&self) -> usize {
        self.pole_bottom
    }

    /// The oppositely-directed half of the same edge.
    #[inline]
    pub fn twin(&self, h: usize) -> usize {
        h ^ 1
    }

    /// Edge id of a half-edge.
    #[inline]
    pub fn edge_of(&self, h: usize) -> usize {
        h / 2
    }

    /// The two halves of edge `e`: `(2e, 2e + 1)`.
    #[inline]
    pub fn halves(&self, e: usize) -> (usize, usize) {
        (2 * e, 2 * e + 1)
    }

    /// Tail vertex of `h`.
    #[inline]
    pub fn tail(&self, h: usize) -> usize {
        self.tail[h]
    }

    /// Head vertex of `h`.
    #[inline]
    pub fn head(&self, h: usize) -> usize {
        self.tail[h ^ 1]
    }

    /// Next half-edge counter-clockwise around the tail of `h`.
    #[inline]
    pub fn rot_next(&self, h: usize) -> usize {
        self.rot_next[h]
    }

    /// Previous half-edge counter-clockwise around the tail of `h`.
    #[inline]
    pub fn rot_prev(&self, h: usize) -> usize {
        self.rot_prev[h]
    }

    /// Successor of `h` along the boundary of the face on its left.
    #[inline]
    pub fn face_next(&self, h: usize) -> usize {
        self.rot_prev[h ^ 1]
    }

    /// The half of the arc edge directed top pole → bottom pole.
    pub fn arc_half_down(&self) -> usize {
        let h = 2 * self.arc_edge;
        if self.tail[h] == self.pole_top {
            h
        } else {
            h ^ 1
        }
    }

    /// Outgoing half-edges of `v` in rotation order.
    pub fn vertex_half_edges(&self, v: usize) -> RotationIter<'_> {
        RotationIter {
            map: self,
            start: self.first_at[v],
            cur: Some(self.first_at[v]),
        }
    }

    /// Vertex degree (counting the arc edge and parallel edges).
    pub fn degree(&self, v: usize) -> usize {
        self.vertex_half_edges(v).count()
    }

    /// Compute the face structure. Fails with [`Error::NonPlanarEmbedding`]
    /// if the rotations do not describe a sphere embedding (Euler check).
    pub fn faces(&self) -> Result<FaceStructure> {
        let nh = self.tail.len();
        let mut face_of = vec![usize::MAX; nh];
        let mut orbits = Vec::new();
        for h0 in 0..nh {
            if face_of[h0] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut h = h0;
            loop {
                face_of[h] = id;
                orbit.push(h);
                h = self.face_next(h);
                if h == h0 {
                    break;
                }
                if face_of[h] != usize::MAX {
                    return Err(Error::NonPlanarEmbedding(
                        "face traversal re-entered a closed orbit".into(),
                    ));
                }
            }
            orbits.push(orbit);
        }
        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let f = orbits.len() as i64;
        if v - e + f != 2 {
            return Err(Error::NonPlanarEmbedding(format!(
                "Euler characteristic V - E + F = {} - {} + {} = {}, expected 2",
                v,
                e,
                f,
                v - e + f
            )));
        }
        let down = self.arc_half_down();
        Ok(FaceStructure {
            l: face_of[down],
            r: face_of[down ^ 1],
            face_of,
            orbits,
        })
    }

    /// The dual map on the faces of this map.
    ///
    /// Half-edge and edge ids are shared with the primal: dual half-edge `h`
    /// runs from the face left of primal `h` to the face right of it. The
    /// dual's arc edge is the dual of the primal arc, and the dual poles are
    /// `r` (top) and `l` (bottom), so running the tiling pipeline on the dual
    /// map lays out the squares of the rotated rectangle.
    pub fn dual(&self, faces: &FaceStructure) -> PlanarMap {
        let nh = self.tail.len();
        let mut rot_next = vec![0usize; nh];
        let mut rot_prev = vec![0usize; nh];
        for h in 0..nh {
            rot_next[h] = self.rot_prev[h ^ 1];
            rot_prev[h] = self.rot_next[h] ^ 1;
        }
        let first_at = faces.orbits.iter().map(|o| o[0]).collect();
        PlanarMap {
            tail: faces.face_of.clone(),
            rot_next,
            rot_prev,
            first_at,
            arc_edge: self.arc_edge,
            pole_top: faces.r,
            pole_bottom: faces.l,
        }
    }
}

/// Iterator over the rotation at one vertex.
pub struct RotationIter<'a> {
    map: &'a PlanarMap,
    start: usize,
    cur: Option<usize>,
}

impl Iterator for RotationIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let h = self.cur?;
        let n = self.map.rot_next[h];
        self.cur = if n == self.start { None } else { Some(n) };
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path `t – v – b` plus the arc `t – b`: a single cycle on the sphere.
    ///
    /// Edges: 0 = t–v, 1 = v–b, 2 = arc t–b. Vertices: 0 = t, 1 = v, 2 = b.
    fn path_map() -> PlanarMap {
        let tail = vec![0, 1, 1, 2, 0, 2];
        let rotations = vec![vec![0, 4], vec![1, 2], vec![3, 5]];
        PlanarMap::from_rotations(tail, &rotations, 2, 0, 2).unwrap()
    }

    #[test]
    fn path_map_shape() {
        let m = path_map();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.head(0), 1);
        assert_eq!(m.twin(0), 1);
        assert_eq!(m.degree(1), 2);
        assert_eq!(m.arc_half_down(), 4);
        let f = m.faces().unwrap();
        // A cycle on the sphere bounds exactly two faces.
        assert_eq!(f.count(), 2);
        assert_ne!(f.l, f.r);
        // Every half-edge of a 3-cycle appears in one of the two orbits.
        assert_eq!(f.orbits[0].len() + f.orbits[1].len(), 6);
    }

    #[test]
    fn path_dual_is_two_vertex_triple_edge() {
        let m = path_map();
        let f = m.faces().unwrap();
        let d = m.dual(&f);
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 3);
        assert_eq!(d.pole_top(), f.r);
        assert_eq!(d.pole_bottom(), f.l);
        assert_eq!(d.degree(f.l), 3);
        // Dual faces correspond to primal vertices.
        let df = d.faces().unwrap();
        assert_eq!(df.count(), 3);
    }

    #[test]
    fn rejects_bad_rotations() {
        // Half-edge 3 listed twice, 2 never.
        let tail = vec![0, 1, 1, 2, 0, 2];
        let rotations = vec![vec![0, 4], vec![1, 3], vec![3, 5]];
        assert!(PlanarMap::from_rotations(tail, &rotations, 2, 0, 2).is_err());
        // Disconnected: two loops.
        let tail = vec![0, 0, 1, 1];
        let rotations = vec![vec![0, 1], vec![2, 3]];
        assert!(matches!(
            PlanarMap::from_rotations(tail, &rotations, 0, 0, 0),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn nonplanar_rotation_fails_euler() {
        // K4 with one vertex's rotation flipped is not a sphere embedding.
        // Vertices 0..4; edges: 0: 0-1, 1: 0-2, 2: 0-3, 3: 1-2, 4: 1-3, 5: 2-3.
        // Rotations read off a drawing with 3 inside the triangle 0-1-2.
        let tail = vec![0, 1, 0, 2, 0, 3, 1, 2, 1, 3, 2, 3];
        let planar = vec![
            vec![0, 4, 2],
            vec![6, 8, 1],
            vec![3, 10, 7],
            vec![11, 5, 9],
        ];
        let m = PlanarMap::from_rotations(tail.clone(), &planar, 0, 0, 1).unwrap();
        assert_eq!(m.faces().unwrap().count(), 4);
        let twisted = vec![
            vec![2, 4, 0], // reversed rotation at vertex 0
            vec![6, 8, 1],
            vec![3, 10, 7],
            vec![11, 5, 9],
        ];
        let m = PlanarMap::from_rotations(tail, &twisted, 0, 0, 1).unwrap();
        assert!(matches!(m.faces(), Err(Error::NonPlanarEmbedding(_))));
    }
}
