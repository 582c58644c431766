//! One-call orchestration of the full pipeline for a single level.

use crate::conjugate::{conjugate_potential, ConjugateField, Traversal};
use crate::domain::PlanarDomain;
use crate::error::Result;
use crate::geom::Pt;
use crate::harmonic::{edge_flow, solve_harmonic, EdgeFlow, HarmonicField};
use crate::map::FaceStructure;
use crate::mesh::{build_lattice_subgraph, classify_boundary, contract_poles, ContractedMesh};
use crate::tiling::{build_tiling, SquareTiling};

/// Everything the pipeline produces for one refinement level.
#[derive(Debug)]
pub struct PipelineOutput {
    pub mesh: ContractedMesh,
    pub faces: FaceStructure,
    pub field: HarmonicField,
    pub flow: EdgeFlow,
    pub conjugate: ConjugateField,
    pub tiling: SquareTiling,
}

/// Mesh the domain at `level` from `seed`, solve the potential to `tol`,
/// integrate its conjugate, and lay out the square tiling.
///
/// Construction only: call [`crate::tiling::validate_tiling`] and
/// [`crate::tiling::dual_tiling_check`] on the output to verify it.
pub fn run_pipeline(
    domain: &PlanarDomain,
    level: u32,
    seed: Pt,
    tol: f64,
) -> Result<PipelineOutput> {
    let sub = build_lattice_subgraph(domain, level, seed)?;
    let classes = classify_boundary(domain, &sub)?;
    let mesh = contract_poles(sub, &classes)?;
    let faces = mesh.map().faces()?;
    let field = solve_harmonic(mesh.map(), tol)?;
    let flow = edge_flow(mesh.map(), &field);
    let conjugate = conjugate_potential(mesh.map(), &faces, &flow, Traversal::BreadthFirst)?;
    let tiling = build_tiling(mesh.map(), &faces, &field, &conjugate)?;
    Ok(PipelineOutput {
        mesh,
        faces,
        field,
        flow,
        conjugate,
        tiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{dual_tiling_check, validate_tiling};

    #[test]
    fn unit_square_level3_end_to_end() {
        let d = PlanarDomain::rectangle(1.0, 1.0).unwrap();
        let out = run_pipeline(&d, 3, [0.5, 0.5], 1e-10).unwrap();
        assert!((out.flow.intensity() - 7.0 / 6.0).abs() < 1e-12);
        let report = validate_tiling(out.mesh.map(), &out.tiling, 1e-10).unwrap();
        assert!(report.max_defect() < 1e-12);
        let dual = dual_tiling_check(out.mesh.map(), &out.faces, &out.tiling, 1e-10, 1e-9).unwrap();
        assert!(dual.intensity_product_defect < 1e-12);
    }
}
