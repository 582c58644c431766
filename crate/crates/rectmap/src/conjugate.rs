//! Harmonic-conjugate potential on the faces of the map.
//!
//! Read each half-edge `h` as a directed edge of the dual graph, from the
//! face on its left to the face on its right; give it the primal flow
//! `w′ = w(h)`. Because `w` satisfies the node law at free vertices, the
//! rotated flow `w′` satisfies the cycle law around every dual cycle, so it
//! integrates to a potential `h′` on faces — the discrete harmonic conjugate.
//!
//! The integration fixes `h′ = 0` on the face left of the downward arc
//! half-edge and sums `w′` along a spanning tree of the dual that never
//! crosses the arc edge. The face on the arc's other side is then reached
//! the long way around, and lands — up to solver error — at the intensity
//! `I*`: the two faces flanking the arc are the left and right edges of the
//! rectangle the squares tile. Every co-tree edge measures how far the
//! discrete cycle law is from exact; the maximum is the `cycle_residual`,
//! the path-independence defect of `h′`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::harmonic::EdgeFlow;
use crate::map::{FaceStructure, PlanarMap};

/// Order in which the spanning tree of the dual is grown.
///
/// The breadth-first tree is the default (shallow trees accumulate the least
/// floating-point error); the depth-first tree exists so that callers can
/// check path independence of the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// The conjugate potential `h′`, one value per face of the map.
#[derive(Debug, Clone)]
pub struct ConjugateField {
    values: Vec<f64>,
    w: Vec<f64>,
    intensity: f64,
    cycle_residual: f64,
    pole_gap: f64,
}

impl ConjugateField {
    /// Conjugate potential of face `f`.
    #[inline]
    pub fn value(&self, f: usize) -> f64 {
        self.values[f]
    }

    /// Potential of every face, indexed by face id.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Dual flow along half-edge `h`, directed from the face left of `h` to
    /// the face right of it. Equal to the primal flow `w(h)`.
    #[inline]
    pub fn dual_flow(&self, h: usize) -> f64 {
        self.w[h]
    }

    /// The intensity `I*`, copied from the edge flow.
    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    /// Maximum cycle-law violation over co-tree dual edges; the amount by
    /// which `h′` depends on the integration path. Zero in exact arithmetic.
    pub fn cycle_residual(&self) -> f64 {
        self.cycle_residual
    }

    /// `|h′(r) − I*|`: the defect of the around-the-domain integral.
    pub fn pole_gap(&self) -> f64 {
        self.pole_gap
    }

    /// Test-only: inject an error into one face value.
    #[cfg(test)]
    pub(crate) fn perturb_face(&mut self, f: usize, delta: f64) {
        self.values[f] += delta;
    }
}

/// Integrate the dual flow of `flow` into the conjugate potential.
///
/// Fails with [`Error::PoleUnreachable`] if the face right of the arc cannot
/// be reached from the face left of it without crossing the arc — which
/// cannot happen for a map built by this crate's mesher and signals a bug.
pub fn conjugate_potential(
    map: &PlanarMap,
    faces: &FaceStructure,
    flow: &EdgeFlow,
    traversal: Traversal,
) -> Result<ConjugateField> {
    let nf = faces.count();
    let arc = map.arc_edge();
    let mut values = vec![0.0f64; nf];
    let mut visited = vec![false; nf];
    visited[faces.l] = true;
    let mut frontier = VecDeque::with_capacity(nf);
    frontier.push_back(faces.l);
    while let Some(f) = match traversal {
        Traversal::BreadthFirst => frontier.pop_front(),
        Traversal::DepthFirst => frontier.pop_back(),
    } {
        for &h in &faces.orbits[f] {
            if map.edge_of(h) == arc {
                continue;
            }
            let g = faces.face_of[map.twin(h)];
            if !visited[g] {
                visited[g] = true;
                values[g] = values[f] - flow.w(h);
                frontier.push_back(g);
            }
        }
    }
    if !visited[faces.r] {
        return Err(Error::PoleUnreachable);
    }
    if let Some(f) = visited.iter().position(|&v| !v) {
        return Err(Error::Disconnected(format!(
            "face {f} is unreachable in the dual graph"
        )));
    }

    // Ohm's law on every dual edge; tree edges hold exactly, co-tree edges
    // measure the cycle-law defect.
    let mut cycle_residual = 0.0f64;
    let mut w = vec![0.0f64; map.half_edge_count()];
    for (h, slot) in w.iter_mut().enumerate() {
        if map.edge_of(h) == arc {
            continue;
        }
        *slot = flow.w(h);
        let f = faces.face_of[h];
        let g = faces.face_of[map.twin(h)];
        cycle_residual = cycle_residual.max((values[f] - values[g] - *slot).abs());
    }
    let intensity = flow.intensity();
    let pole_gap = (values[faces.r] - intensity).abs();
    Ok(ConjugateField {
        values,
        w,
        intensity,
        cycle_residual,
        pole_gap,
    })
}
