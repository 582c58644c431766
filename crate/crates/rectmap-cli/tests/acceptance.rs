//! Acceptance suite: nine end-to-end criteria.
//!
//! Each criterion is one test that prints a single `PASS criterion k` line
//! with its measured numbers (run with `-- --nocapture` to see them); a
//! failed assertion fails the corresponding test. The criteria cover, in
//! order: the hand-solved level-2 square, tiling identities, primal/dual
//! duality, electrical identities, discrete Cauchy–Riemann residuals, a
//! Monte Carlo oracle, the unit-square convergence trend, a symmetric
//! 64-gon disk, and artifact determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectmap::domain::PlanarDomain;
use rectmap::harmonic::mc_hitting_probability;
use rectmap::mapper::cr_residuals;
use rectmap::mapper::{convergence_sweep, duffin_lower_bound};
use rectmap::pipeline::run_pipeline;
use rectmap::tiling::{dual_tiling_check, validate_tiling};
use rectmap_cli::{run, Mode, RunConfig};

const TOL: f64 = 1e-10;

fn domain_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../domains")
        .join(name)
}

/// Load one of the shipped domain files along with its seed point.
fn load(name: &str) -> (PlanarDomain, [f64; 2]) {
    let text = fs::read_to_string(domain_path(name)).expect("domain file readable");
    let domain = PlanarDomain::from_json(&text).expect("domain file valid");
    let seed = domain.seed_hint().expect("domain file carries a seed");
    (domain, seed)
}

fn both_domains() -> [(&'static str, PlanarDomain, [f64; 2]); 2] {
    let (square, square_seed) = load("unit_square.json");
    let (lshape, lshape_seed) = load("lshape.json");
    [
        ("unit square", square, square_seed),
        ("L-shape", lshape, lshape_seed),
    ]
}

#[test]
fn criterion_1_hand_solved_level_2_square() {
    let (domain, seed) = load("unit_square.json");
    // Warm once so the timed run measures the pipeline, not first-touch cost.
    run_pipeline(&domain, 2, seed, TOL).unwrap();
    let start = Instant::now();
    let out = run_pipeline(&domain, 2, seed, TOL).unwrap();
    let elapsed = start.elapsed();

    let intensity = out.flow.intensity();
    assert!((intensity - 1.5).abs() <= 1e-10, "I* = {intensity}, want 3/2");
    let free = out.mesh.free_coords();
    assert_eq!(free.len(), 3, "level-2 square has three free vertices");
    for &c in free {
        let h = out.field.value(out.mesh.vid(c).unwrap());
        assert!((h - 0.5).abs() <= 1e-10, "h({c:?}) = {h}, want 1/2");
    }
    let proper: Vec<_> = out
        .tiling
        .squares()
        .iter()
        .filter(|s| !s.degenerate)
        .collect();
    assert_eq!(proper.len(), 6, "want six nondegenerate squares");
    for s in &proper {
        assert!((s.side - 0.5).abs() <= 1e-10, "square side {}, want 1/2", s.side);
        assert!(s.x0 >= -1e-10 && s.x1 <= 1.5 + 1e-10 && s.y0 >= -1e-10 && s.y1 <= 1.0 + 1e-10);
    }
    validate_tiling(out.mesh.map(), &out.tiling, 1e-10).unwrap();
    assert!(
        elapsed < Duration::from_millis(10),
        "level-2 pipeline took {elapsed:?}, want < 10 ms"
    );
    println!(
        "PASS criterion 1: level-2 unit square exact (I* = {intensity}, h = 1/2 at 3 vertices, \
         6 squares of side 1/2) in {elapsed:?}"
    );
}

#[test]
fn criterion_2_tiling_identities_levels_2_to_7() {
    let mut worst_area = 0.0f64;
    let mut worst_overlap = 0.0f64;
    let mut worst_footprint = 0.0f64;
    for (name, domain, seed) in both_domains() {
        for level in 2..=7u32 {
            let start = Instant::now();
            let out = run_pipeline(&domain, level, seed, TOL).unwrap();
            let report = validate_tiling(out.mesh.map(), &out.tiling, 1e-8).unwrap();
            let elapsed = start.elapsed();
            assert!(
                report.area_defect <= 1e-8,
                "{name} level {level}: area defect {}",
                report.area_defect
            );
            assert!(
                report.overlap <= 1e-9,
                "{name} level {level}: overlap {}",
                report.overlap
            );
            assert!(
                report.footprint_defect <= 1e-9,
                "{name} level {level}: footprint defect {}",
                report.footprint_defect
            );
            assert!(
                elapsed <= Duration::from_secs(5),
                "{name} level {level} took {elapsed:?}, want <= 5 s"
            );
            worst_area = worst_area.max(report.area_defect);
            worst_overlap = worst_overlap.max(report.overlap);
            worst_footprint = worst_footprint.max(report.footprint_defect);
        }
    }
    println!(
        "PASS criterion 2: levels 2..7 on both domains — worst area defect {worst_area:.3e}, \
         overlap {worst_overlap:.3e}, footprint gap {worst_footprint:.3e}"
    );
}

#[test]
fn criterion_3_duality_levels_2_to_6() {
    let mut worst_product = 0.0f64;
    let mut worst_mismatch = 0.0f64;
    for (name, domain, seed) in both_domains() {
        for level in 2..=6u32 {
            let out = run_pipeline(&domain, level, seed, TOL).unwrap();
            let report =
                dual_tiling_check(out.mesh.map(), &out.faces, &out.tiling, TOL, 1e-8).unwrap();
            assert!(
                report.intensity_product_defect <= 1e-8,
                "{name} level {level}: |I*_d I* - 1| = {}",
                report.intensity_product_defect
            );
            assert!(
                report.square_mismatch <= 1e-8,
                "{name} level {level}: square mismatch {}",
                report.square_mismatch
            );
            worst_product = worst_product.max(report.intensity_product_defect);
            worst_mismatch = worst_mismatch.max(report.square_mismatch);
        }
    }
    println!(
        "PASS criterion 3: dual tiling matches rotated primal on both domains, levels 2..6 — \
         worst |I*_d·I* − 1| = {worst_product:.3e}, worst square mismatch {worst_mismatch:.3e}"
    );
}

#[test]
fn criterion_4_electrical_identities() {
    let mut worst_duffin_slack = f64::INFINITY;
    for (name, domain, seed) in both_domains() {
        for level in 2..=6u32 {
            let out = run_pipeline(&domain, level, seed, TOL).unwrap();
            let intensity = out.flow.intensity();
            let r_eff = out.flow.effective_resistance();
            assert_eq!(
                r_eff.to_bits(),
                (1.0 / intensity).to_bits(),
                "{name} level {level}: R_eff must be computed as 1/I*"
            );
            assert!(
                (r_eff * intensity - 1.0).abs() <= 4.0 * f64::EPSILON,
                "{name} level {level}: R_eff·I* = {}",
                r_eff * intensity
            );
            let duffin = duffin_lower_bound(&out.mesh);
            assert!(
                duffin <= r_eff + 1e-8,
                "{name} level {level}: Duffin bound {duffin} exceeds R_eff {r_eff}"
            );
            worst_duffin_slack = worst_duffin_slack.min(r_eff - duffin);
            let map = out.mesh.map();
            let d_max = (0..map.vertex_count())
                .map(|v| map.degree(v))
                .max()
                .unwrap() as f64;
            let node_residual = out.field.stats().residual;
            assert!(
                node_residual <= d_max * TOL,
                "{name} level {level}: node residual {node_residual} > d_max·tol"
            );
        }
    }
    println!(
        "PASS criterion 4: R_eff·I* = 1 bitwise, Duffin ≤ R_eff (min slack \
         {worst_duffin_slack:.3e}), node residual ≤ d_max·tol, both domains levels 2..6"
    );
}

#[test]
fn criterion_5_discrete_cauchy_riemann() {
    let mut worst_ratio = 0.0f64;
    for (name, domain, seed) in both_domains() {
        for level in 2..=7u32 {
            let out = run_pipeline(&domain, level, seed, TOL).unwrap();
            let report = cr_residuals(&out.mesh, &out.faces, &out.field, &out.conjugate);
            let bound = (1u64 << level) as f64 * 10.0 * TOL;
            assert!(
                report.max <= bound,
                "{name} level {level}: CR residual {} > {bound}",
                report.max
            );
            if bound > 0.0 {
                worst_ratio = worst_ratio.max(report.max / bound);
            }
        }
    }
    println!(
        "PASS criterion 5: max Cauchy–Riemann residual ≤ 2^n·10·tol on both domains, \
         levels 2..7 (worst fraction of bound used: {worst_ratio:.3})"
    );
}

#[test]
fn criterion_6_monte_carlo_oracle() {
    const MC_SEED: u64 = 20260823;
    const WALKS: usize = 100_000;
    let (domain, seed) = load("unit_square.json");
    let out = run_pipeline(&domain, 4, seed, TOL).unwrap();
    let free = out.mesh.free_coords();
    let mut rng = ChaCha8Rng::seed_from_u64(MC_SEED);
    let start = Instant::now();
    let mut within = 0usize;
    let mut lines = Vec::new();
    for k in 0..5u64 {
        let c = free[rng.gen_range(0..free.len())];
        let vid = out.mesh.vid(c).unwrap();
        let h = out.field.value(vid);
        let estimate = mc_hitting_probability(out.mesh.map(), vid, WALKS, MC_SEED + 1 + k);
        let stderr = (estimate * (1.0 - estimate) / WALKS as f64).sqrt().max(1e-12);
        let ok = (h - estimate).abs() <= 3.0 * stderr;
        within += ok as usize;
        lines.push(format!(
            "({}, {}): h = {h:.5}, mc = {estimate:.5} ({:.2}σ)",
            c.0,
            c.1,
            (h - estimate).abs() / stderr
        ));
    }
    let elapsed = start.elapsed();
    assert!(
        within >= 4,
        "only {within}/5 vertices within 3·stderr: {lines:?}"
    );
    assert!(
        elapsed <= Duration::from_secs(30),
        "Monte Carlo took {elapsed:?}, want <= 30 s"
    );
    println!(
        "PASS criterion 6: {within}/5 random vertices within 3·stderr of h \
         ({WALKS} walks each, seed {MC_SEED}) in {elapsed:?} — {}",
        lines.join("; ")
    );
}

#[test]
fn criterion_7_unit_square_convergence_trend() {
    let (domain, seed) = load("unit_square.json");
    let levels: Vec<u32> = (2..=8).collect();
    let start = Instant::now();
    let report = convergence_sweep(&domain, seed, &levels, TOL);
    let elapsed = start.elapsed();
    assert!(report.failures.is_empty(), "levels failed: {:?}", report.failures);
    let dev: Vec<f64> = report
        .rows
        .iter()
        .map(|r| (r.intensity - 1.0).abs())
        .collect();
    // Analytic check: on the unit square I*_n = (2^n − 1)/(2^n − 2), so the
    // deviation from the extremal-length target 1 is exactly 1/(2^n − 2).
    for (row, d) in report.rows.iter().zip(&dev) {
        let closed_form = 1.0 / ((1u64 << row.level) as f64 - 2.0);
        assert!(
            (d - closed_form).abs() <= 1e-8,
            "level {}: |I* - 1| = {d}, closed form {closed_form}",
            row.level
        );
    }
    // Levels are 2..8, so dev[1] is level 3; decrease from level 3 onward.
    for i in 1..dev.len() - 1 {
        assert!(
            dev[i + 1] < dev[i],
            "|I* - 1| did not decrease from level {} to {}",
            levels[i],
            levels[i + 1]
        );
    }
    assert!(
        dev[6] <= dev[1] / 4.0,
        "|I*_8 - 1| = {} not <= |I*_3 - 1|/4 = {}",
        dev[6],
        dev[1] / 4.0
    );
    assert!(
        elapsed <= Duration::from_secs(60),
        "sweep took {elapsed:?}, want <= 60 s"
    );
    println!(
        "PASS criterion 7: |I*_n − 1| on the unit square decreases from level 3 on \
         ({:.4} → {:.6}), |I*_8 − 1| ≤ |I*_3 − 1|/4, in {elapsed:?}",
        dev[1],
        dev[6]
    );
}

#[test]
fn criterion_8_symmetric_disk() {
    let (domain, seed) = load("disk64.json");
    let levels: Vec<u32> = (4..=7).collect();
    let report = convergence_sweep(&domain, seed, &levels, TOL);
    assert!(report.failures.is_empty(), "levels failed: {:?}", report.failures);
    let last = report.rows.last().unwrap();
    assert_eq!(last.level, 7);
    let dev = (last.intensity - 1.0).abs();
    assert!(
        dev <= 0.05,
        "|I*_7 - 1| = {dev} on the 64-gon disk, want <= 0.05"
    );
    for pair in report.rows.windows(2) {
        assert!(
            pair[1].max_side < pair[0].max_side,
            "max side did not decrease from level {} to {}",
            pair[0].level,
            pair[1].level
        );
    }
    let sides: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("{:.4}", r.max_side))
        .collect();
    println!(
        "PASS criterion 8: 64-gon disk with 4-fold symmetric marks — |I*_7 − 1| = {dev:.4} \
         ≤ 0.05, max side decreasing over levels 4..7 ({})",
        sides.join(" → ")
    );
}

/// Report text with the final (wall-time) column removed from every line.
fn mask_wall_ms(text: &str) -> String {
    text.lines()
        .map(|line| match line.rfind(',') {
            Some(pos) => &line[..pos],
            None => line,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_9_sweep_artifacts_are_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new(
        Mode::Sweep,
        domain_path("unit_square.json"),
        vec![2, 3, 4],
    );
    cfg.out_dir = dir_a.path().to_path_buf();
    let first = run(&cfg).unwrap();
    cfg.out_dir = dir_b.path().to_path_buf();
    let second = run(&cfg).unwrap();

    let names = |summary: &rectmap_cli::RunSummary| -> Vec<String> {
        summary
            .artifacts
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect()
    };
    assert_eq!(names(&first), names(&second));
    assert_eq!(first.artifacts.len(), 16, "3 levels × 5 files + report");

    let mut compared = 0usize;
    for (a, b) in first.artifacts.iter().zip(&second.artifacts) {
        let bytes_a = fs::read(a).unwrap();
        let bytes_b = fs::read(b).unwrap();
        if a.file_name().unwrap() == "report.csv" {
            // The report's wall-time column measures real time and is the
            // one deliberately nondeterministic field; everything else in
            // the file must match byte for byte.
            let text_a = String::from_utf8(bytes_a).unwrap();
            let text_b = String::from_utf8(bytes_b).unwrap();
            assert_eq!(
                mask_wall_ms(&text_a),
                mask_wall_ms(&text_b),
                "report rows differ beyond wall time"
            );
        } else {
            assert_eq!(
                bytes_a,
                bytes_b,
                "artifact {:?} differs between identical runs",
                a.file_name().unwrap()
            );
        }
        compared += 1;
    }
    println!(
        "PASS criterion 9: two identical sweeps produced byte-identical artifacts \
         ({compared} files compared; wall-time column masked in report.csv)"
    );
}
