//! Shared fixtures for the crate's unit tests: small meshes whose potentials
//! and tilings were worked out by hand.

use std::collections::BTreeMap;

use crate::domain::{ArcLabel, ArcSet, Mark, PlanarDomain};
use crate::mesh::{
    build_lattice_subgraph, classify_boundary, contract_poles, BoundaryClasses, ContractedMesh,
    Dir, LatticeSubgraph, VertexInfo,
};

/// The unit square meshed at `level`, poles contracted.
pub(crate) fn square_mesh(level: u32) -> ContractedMesh {
    let d = PlanarDomain::rectangle(1.0, 1.0).unwrap();
    let sub = build_lattice_subgraph(&d, level, [0.5, 0.5]).unwrap();
    let classes = classify_boundary(&d, &sub).unwrap();
    contract_poles(sub, &classes).unwrap()
}

/// The unit square with the quadrant `[0.55, 1] × [0.55, 1]` removed;
/// marks at `(0,1)`, `(0.55,1)`, `(1,0)`, `(0,0)`.
///
/// At level 2 its potential is rational with denominator 19, which makes a
/// convenient frozen oracle for an asymmetric domain.
pub(crate) fn notched_domain() -> PlanarDomain {
    let pts = vec![
        [0.0, 1.0],
        [0.55, 1.0],
        [0.55, 0.55],
        [1.0, 0.55],
        [1.0, 0.0],
        [0.0, 0.0],
    ];
    let marks = [
        Mark {
            segment_index: 0,
            t: 0.0,
        },
        Mark {
            segment_index: 1,
            t: 0.0,
        },
        Mark {
            segment_index: 4,
            t: 0.0,
        },
        Mark {
            segment_index: 5,
            t: 0.0,
        },
    ];
    PlanarDomain::from_points_and_marks(pts, marks, None).unwrap()
}

/// The notched square meshed at `level`.
pub(crate) fn notched_mesh(level: u32) -> ContractedMesh {
    let d = notched_domain();
    let sub = build_lattice_subgraph(&d, level, [0.3, 0.3]).unwrap();
    let classes = classify_boundary(&d, &sub).unwrap();
    contract_poles(sub, &classes).unwrap()
}

/// Single lattice column `t – v – b`: two edges plus the arc, two faces.
pub(crate) fn path_mesh() -> ContractedMesh {
    let mut verts = BTreeMap::new();
    let mk = |dirmask: u8, cross: [ArcSet; 4]| VertexInfo { dirmask, cross };
    let t_arc = ArcSet::single(ArcLabel::Top);
    let b_arc = ArcSet::single(ArcLabel::Bottom);
    let e = ArcSet::EMPTY;
    verts.insert((0, 0), mk(Dir::North.bit(), [e, e, e, b_arc]));
    verts.insert((0, 1), mk(Dir::North.bit() | Dir::South.bit(), [e; 4]));
    verts.insert((0, 2), mk(Dir::South.bit(), [e, t_arc, e, e]));
    let sub = LatticeSubgraph::from_parts(1, verts);
    let mut labels = BTreeMap::new();
    labels.insert((0, 2), ArcLabel::Top);
    labels.insert((0, 0), ArcLabel::Bottom);
    let classes = BoundaryClasses::from_labels(labels);
    contract_poles(sub, &classes).unwrap()
}

/// Centre vertex with two top-class neighbours and one bottom-class
/// neighbour; contraction doubles the top edge, creating a bigon face.
pub(crate) fn star_mesh() -> ContractedMesh {
    let mut verts = BTreeMap::new();
    let mk = |dirmask: u8, cross: [ArcSet; 4]| VertexInfo { dirmask, cross };
    let t_arc = ArcSet::single(ArcLabel::Top);
    let b_arc = ArcSet::single(ArcLabel::Bottom);
    let e = ArcSet::EMPTY;
    verts.insert((0, 1), mk(Dir::East.bit(), [e, t_arc, e, e]));
    verts.insert((2, 1), mk(Dir::West.bit(), [e, t_arc, e, e]));
    verts.insert((1, 0), mk(Dir::North.bit(), [e, e, e, b_arc]));
    verts.insert(
        (1, 1),
        mk(Dir::East.bit() | Dir::West.bit() | Dir::South.bit(), [e; 4]),
    );
    let sub = LatticeSubgraph::from_parts(1, verts);
    let mut labels = BTreeMap::new();
    labels.insert((0, 1), ArcLabel::Top);
    labels.insert((2, 1), ArcLabel::Top);
    labels.insert((1, 0), ArcLabel::Bottom);
    let classes = BoundaryClasses::from_labels(labels);
    contract_poles(sub, &classes).unwrap()
}
