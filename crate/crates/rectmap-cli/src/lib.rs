//! Command-line front end for the `rectmap` library.
//!
//! This crate turns a marked-polygon domain file into artifacts on disk:
//! square-tiling figures, the color-matched pair of map figures, structured
//! tiling/map data, and a per-level convergence report. It owns everything
//! that is plumbing rather than mathematics — configuration, orchestration
//! across levels, rendering, serialization, exit codes, and machine-readable
//! error records.
//!
//! Three modes are exposed (mirrored by the binary's subcommands):
//!
//! * **Tile** — run one level and write its artifacts.
//! * **Sweep** — run a range of levels (computed concurrently, written in
//!   level order) and the combined convergence report.
//! * **Check** — validate the tiling, the primal/dual comparison, and
//!   optionally cross-check the harmonic potential against Monte Carlo
//!   random-walk hitting probabilities; nothing is written.
//!
//! Every failure path produces a single-line JSON error record on stderr and
//! a stable exit code: 0 success, 2 validation error, 3 solver error, 4 IO
//! error.

pub mod export;
pub mod render;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use rectmap::domain::{Location, PlanarDomain};
use rectmap::harmonic::mc_hitting_probability;
use rectmap::mapper::{level_row, vertex_images, LevelRow};
use rectmap::mesh::{build_lattice_subgraph, classify_boundary, contract_poles};
use rectmap::pipeline::run_pipeline;
use rectmap::tiling::{dual_tiling_check, validate_tiling};
use rectmap::{Error, ErrorClass};
use serde_json::json;

pub use render::{render_map_svg, render_tiling_svg, TilingStyle};

/// Geometric tolerance for tiling validation in the CLI pipeline: the area
/// identity must hold to 1e-8 and overlaps/footprint gaps to 1e-9·width.
pub const VALIDATION_TOL: f64 = 1e-8;

/// Tolerance for the primal/dual tiling comparison in `check` mode.
pub const DUALITY_TOL: f64 = 1e-8;

/// Highest level the coarse-mesh probe will suggest.
const MAX_SUGGESTED_LEVEL: u32 = 12;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Which artifact families a run writes.
#[derive(Debug, Clone, Copy)]
pub struct EmitSet {
    pub tiling_svg: bool,
    pub map_svg: bool,
    pub tiling_json: bool,
    pub map_csv: bool,
    pub report: bool,
}

impl EmitSet {
    pub fn all() -> EmitSet {
        EmitSet {
            tiling_svg: true,
            map_svg: true,
            tiling_json: true,
            map_csv: true,
            report: true,
        }
    }

    /// Parse a comma-separated artifact list; `all` selects everything.
    pub fn parse(list: &str) -> Result<EmitSet, CliError> {
        if list.trim() == "all" {
            return Ok(EmitSet::all());
        }
        let mut set = EmitSet {
            tiling_svg: false,
            map_svg: false,
            tiling_json: false,
            map_csv: false,
            report: false,
        };
        for item in list.split(',') {
            match item.trim() {
                "tiling_svg" => set.tiling_svg = true,
                "map_svg" => set.map_svg = true,
                "tiling_json" => set.tiling_json = true,
                "map_csv" => set.map_csv = true,
                "report" => set.report = true,
                "" => {}
                other => {
                    return Err(CliError::config(format!(
                        "unknown emit flag {other:?}; expected a comma list of \
                         tiling_svg, map_svg, tiling_json, map_csv, report, or \"all\""
                    )));
                }
            }
        }
        Ok(set)
    }

    fn needs_images(&self) -> bool {
        self.map_svg || self.map_csv
    }

    fn any(&self) -> bool {
        self.tiling_svg || self.map_svg || self.tiling_json || self.map_csv || self.report
    }
}

/// Which subcommand is being executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Tile,
    Sweep,
    Check,
}

/// Full configuration for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    /// Path to the domain JSON file.
    pub domain: PathBuf,
    /// Mesh levels to run, ascending.
    pub levels: Vec<u32>,
    /// Solver tolerance; must lie in (0, 1e-2].
    pub tol: f64,
    /// Optional interior seed point overriding the domain file and centroid.
    pub seed_point: Option<[f64; 2]>,
    /// Monte Carlo cross-check walk count (`check` mode only).
    pub mc_walks: Option<usize>,
    /// Seed for the Monte Carlo walk streams.
    pub mc_seed: u64,
    /// Directory artifacts are written into.
    pub out_dir: PathBuf,
    pub emit: EmitSet,
    /// Grid density for map renders and the map CSV.
    pub samples: usize,
}

impl RunConfig {
    /// A configuration with library defaults: tolerance 1e-10, automatic
    /// seed point, all artifacts, 96×96 sampling.
    pub fn new(mode: Mode, domain: impl Into<PathBuf>, levels: Vec<u32>) -> RunConfig {
        RunConfig {
            mode,
            domain: domain.into(),
            levels,
            tol: 1e-10,
            seed_point: None,
            mc_walks: None,
            mc_seed: 1,
            out_dir: PathBuf::from("out"),
            emit: EmitSet::all(),
            samples: 96,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.levels.is_empty() {
            return Err(CliError::config("no levels requested"));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-2) {
            return Err(CliError::config(format!(
                "tolerance {} outside (0, 1e-2]",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Parse a level range argument: `N`, `A..B`, or `A..=B` (both inclusive).
pub fn parse_levels(text: &str) -> Result<Vec<u32>, CliError> {
    let bad = |t: &str| {
        CliError::config(format!(
            "invalid level range {t:?}; expected N or A..B (inclusive)"
        ))
    };
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo: u32 = a.trim().parse().map_err(|_| bad(text))?;
        let hi: u32 = b.trim().parse().map_err(|_| bad(text))?;
        if lo > hi {
            return Err(bad(text));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![text.parse().map_err(|_| bad(text))?])
    }
}

/// Parse a seed point argument of the form `X,Y`.
pub fn parse_seed_point(text: &str) -> Result<[f64; 2], CliError> {
    let bad = || {
        CliError::config(format!(
            "invalid seed point {text:?}; expected X,Y with finite coordinates"
        ))
    };
    let (x, y) = text.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(bad());
    }
    Ok([x, y])
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// A CLI failure: a machine-readable record plus the process exit code.
///
/// The record is a single-line JSON object with fields `error` (stable
/// variant name), `module`, `level` (or null), `message`, and — when a mesh
/// was too coarse and a finer level works — `suggested_min_level`.
#[derive(Debug, Clone)]
pub struct CliError {
    record: serde_json::Value,
    code: i32,
}

impl CliError {
    fn from_lib(level: Option<u32>, err: &Error, suggested: Option<u32>) -> CliError {
        let mut record = json!({
            "error": err.name(),
            "module": err.module(),
            "level": level,
            "message": err.to_string(),
        });
        if let Some(min) = suggested {
            record["suggested_min_level"] = json!(min);
        }
        let code = match err.class() {
            ErrorClass::Validation => 2,
            ErrorClass::Solver => 3,
        };
        CliError { record, code }
    }

    fn io(context: &str, err: &std::io::Error) -> CliError {
        CliError {
            record: json!({
                "error": "Io",
                "module": "cli_io",
                "level": null,
                "message": format!("{context}: {err}"),
            }),
            code: 4,
        }
    }

    fn config(message: impl Into<String>) -> CliError {
        CliError {
            record: json!({
                "error": "InvalidConfig",
                "module": "cli_io",
                "level": null,
                "message": message.into(),
            }),
            code: 2,
        }
    }

    pub(crate) fn empty_render() -> CliError {
        CliError {
            record: json!({
                "error": "EmptyRender",
                "module": "cli_io",
                "level": null,
                "message": "sample density 0 renders nothing",
            }),
            code: 2,
        }
    }

    /// Process exit code: 2 validation, 3 solver, 4 IO.
    pub fn code(&self) -> i32 {
        self.code
    }

    /// Stable name of the underlying error variant.
    pub fn name(&self) -> &str {
        self.record["error"].as_str().unwrap_or("")
    }

    /// Suggested minimum level attached to coarse-mesh errors, if any.
    pub fn suggested_min_level(&self) -> Option<u32> {
        self.record["suggested_min_level"].as_u64().map(|v| v as u32)
    }

    /// The single-line JSON error record.
    pub fn record_line(&self) -> String {
        self.record.to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.record)
    }
}

impl std::error::Error for CliError {}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

/// What a successful run produced.
#[derive(Debug, Default)]
pub struct RunSummary {
    /// Convergence diagnostics, one row per completed level.
    pub rows: Vec<LevelRow>,
    /// Paths of every artifact written, in write order.
    pub artifacts: Vec<PathBuf>,
    /// Human-readable progress/check lines for stdout.
    pub notes: Vec<String>,
}

/// Load and validate the domain file named by the configuration.
pub fn load_domain(cfg: &RunConfig) -> Result<PlanarDomain, CliError> {
    let text = fs::read_to_string(&cfg.domain)
        .map_err(|e| CliError::io(&format!("reading {}", cfg.domain.display()), &e))?;
    PlanarDomain::from_json(&text).map_err(|e| CliError::from_lib(None, &e, None))
}

/// Pick the interior seed point: explicit override, then the domain file's
/// seed, then the centroid, then a deterministic coarse grid scan.
pub fn resolve_seed(domain: &PlanarDomain, cfg: &RunConfig) -> Result<[f64; 2], CliError> {
    if let Some(p) = cfg.seed_point {
        if domain.locate(p) != Location::Inside {
            let err = Error::SeedOutside(p[0], p[1]);
            return Err(CliError::from_lib(None, &err, None));
        }
        return Ok(p);
    }
    if let Some(p) = domain.seed_hint() {
        return Ok(p);
    }
    let c = domain.centroid();
    if domain.locate(c) == Location::Inside {
        return Ok(c);
    }
    let [xmin, ymin, xmax, ymax] = domain.bbox();
    let n = 64;
    for j in 0..n {
        for i in 0..n {
            let p = [
                xmin + (xmax - xmin) * (i as f64 + 0.5) / n as f64,
                ymin + (ymax - ymin) * (j as f64 + 0.5) / n as f64,
            ];
            if domain.locate(p) == Location::Inside {
                return Ok(p);
            }
        }
    }
    Err(CliError::config(
        "no interior seed point found by centroid or grid scan; pass --seed-point",
    ))
}

/// Wrap a pipeline error with level context; for coarse-mesh failures, probe
/// the next few levels and attach the first one whose mesh builds.
fn lib_error(domain: &PlanarDomain, seed: [f64; 2], level: u32, err: &Error) -> CliError {
    let coarse = matches!(
        err,
        Error::MeshTooCoarse { .. }
            | Error::EmptyBoundaryClass { .. }
            | Error::OppositeArcViolation { .. }
    );
    let suggested = if coarse {
        ((level + 1)..=MAX_SUGGESTED_LEVEL.min(level + 8)).find(|&lv| {
            build_lattice_subgraph(domain, lv, seed)
                .and_then(|sub| {
                    let classes = classify_boundary(domain, &sub)?;
                    contract_poles(sub, &classes)
                })
                .is_ok()
        })
    } else {
        None
    };
    CliError::from_lib(Some(level), err, suggested)
}

/// Artifacts computed for one level, not yet written.
struct LevelBundle {
    row: LevelRow,
    files: Vec<(String, String)>,
}

fn compute_level(
    domain: &PlanarDomain,
    seed: [f64; 2],
    cfg: &RunConfig,
    level: u32,
) -> Result<LevelBundle, CliError> {
    let start = Instant::now();
    let out = run_pipeline(domain, level, seed, cfg.tol)
        .map_err(|e| lib_error(domain, seed, level, &e))?;
    validate_tiling(out.mesh.map(), &out.tiling, VALIDATION_TOL)
        .map_err(|e| CliError::from_lib(Some(level), &e, None))?;
    let row = level_row(&out, start.elapsed().as_secs_f64() * 1e3);

    let mut files = Vec::new();
    if cfg.emit.tiling_svg {
        files.push((
            format!("tiling_n{level}.svg"),
            render_tiling_svg(&out.tiling, TilingStyle::default()),
        ));
    }
    if cfg.emit.needs_images() {
        let map = vertex_images(&out.mesh, &out.faces, &out.field, &out.conjugate);
        if cfg.emit.map_svg {
            let (dom_svg, rect_svg) = render_map_svg(&map, domain, cfg.samples)?;
            files.push((format!("map_domain_n{level}.svg"), dom_svg));
            files.push((format!("map_rect_n{level}.svg"), rect_svg));
        }
        if cfg.emit.map_csv {
            files.push((
                format!("map_n{level}.csv"),
                export::map_csv(&map, domain, cfg.samples),
            ));
        }
    }
    if cfg.emit.tiling_json {
        files.push((format!("tiling_n{level}.json"), export::tiling_json(&out.tiling)));
    }
    Ok(LevelBundle { row, files })
}

fn run_check(
    domain: &PlanarDomain,
    seed: [f64; 2],
    cfg: &RunConfig,
) -> Result<RunSummary, CliError> {
    let mut summary = RunSummary::default();
    for &level in &cfg.levels {
        let start = Instant::now();
        let out = run_pipeline(domain, level, seed, cfg.tol)
            .map_err(|e| lib_error(domain, seed, level, &e))?;
        let report = validate_tiling(out.mesh.map(), &out.tiling, VALIDATION_TOL)
            .map_err(|e| CliError::from_lib(Some(level), &e, None))?;
        summary.notes.push(format!(
            "level {level}: tiling valid (squareness {:.3e}, overlap {:.3e}, \
             area defect {:.3e}, footprint {:.3e})",
            report.squareness, report.overlap, report.area_defect, report.footprint_defect,
        ));
        let duality = dual_tiling_check(out.mesh.map(), &out.faces, &out.tiling, cfg.tol, DUALITY_TOL)
            .map_err(|e| CliError::from_lib(Some(level), &e, None))?;
        summary.notes.push(format!(
            "level {level}: duality valid (intensity product defect {:.3e}, \
             square mismatch {:.3e})",
            duality.intensity_product_defect, duality.square_mismatch,
        ));
        if let Some(walks) = cfg.mc_walks {
            let free = out.mesh.free_coords();
            let picks = free.len().min(5);
            let mut passed = 0usize;
            for k in 0..picks {
                // Evenly spread sample vertices; the seed drives the walks.
                let idx = if picks == 1 { 0 } else { k * (free.len() - 1) / (picks - 1) };
                let vid = out.mesh.vid(free[idx]).expect("free coord has a vid");
                let h = out.field.value(vid);
                let est = mc_hitting_probability(
                    out.mesh.map(),
                    vid,
                    walks,
                    cfg.mc_seed.wrapping_add(k as u64),
                );
                let stderr = (est * (1.0 - est) / walks as f64).sqrt().max(1e-12);
                let ok = (h - est).abs() <= 3.0 * stderr;
                passed += ok as usize;
                summary.notes.push(format!(
                    "level {level}: mc vertex ({}, {}) h = {h:.6} estimate = {est:.6} \
                     ({}σ) {}",
                    free[idx].0,
                    free[idx].1,
                    ((h - est).abs() / stderr).round(),
                    if ok { "ok" } else { "OUTSIDE 3σ" },
                ));
            }
            summary.notes.push(format!(
                "level {level}: monte carlo {passed}/{picks} vertices within 3σ \
                 ({walks} walks, seed {})",
                cfg.mc_seed,
            ));
        }
        summary
            .rows
            .push(level_row(&out, start.elapsed().as_secs_f64() * 1e3));
    }
    Ok(summary)
}

/// Execute the configured run and report what was produced.
///
/// Levels of a `sweep` are computed concurrently; artifact writes happen
/// afterwards, serialized in level order, so outputs and error choice are
/// deterministic. The first failing level (in level order) aborts the run
/// before anything is written.
pub fn run(cfg: &RunConfig) -> Result<RunSummary, CliError> {
    cfg.validate()?;
    let domain = load_domain(cfg)?;
    let seed = resolve_seed(&domain, cfg)?;

    if cfg.mode == Mode::Check {
        return run_check(&domain, seed, cfg);
    }

    let results: Vec<(u32, Result<LevelBundle, CliError>)> = if cfg.mode == Mode::Sweep {
        cfg.levels
            .par_iter()
            .map(|&lv| (lv, compute_level(&domain, seed, cfg, lv)))
            .collect()
    } else {
        cfg.levels
            .iter()
            .map(|&lv| (lv, compute_level(&domain, seed, cfg, lv)))
            .collect()
    };

    let mut bundles = Vec::new();
    for (_, result) in results {
        bundles.push(result?);
    }

    let mut summary = RunSummary::default();
    if cfg.emit.any() {
        fs::create_dir_all(&cfg.out_dir)
            .map_err(|e| CliError::io(&format!("creating {}", cfg.out_dir.display()), &e))?;
    }
    for bundle in bundles {
        for (name, body) in bundle.files {
            let path = cfg.out_dir.join(&name);
            fs::write(&path, body)
                .map_err(|e| CliError::io(&format!("writing {}", path.display()), &e))?;
            summary.artifacts.push(path);
        }
        summary.notes.push(format!(
            "level {}: intensity {} ({} solver iterations, {:.1} ms)",
            bundle.row.level,
            bundle.row.intensity,
            bundle.row.solve_iterations,
            bundle.row.wall_ms,
        ));
        summary.rows.push(bundle.row);
    }
    if cfg.emit.report {
        let path = cfg.out_dir.join("report.csv");
        fs::write(&path, export::report_csv(&summary.rows))
            .map_err(|e| CliError::io(&format!("writing {}", path.display()), &e))?;
        summary.artifacts.push(path);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_range_parsing() {
        assert_eq!(parse_levels("4").unwrap(), vec![4]);
        assert_eq!(parse_levels("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_levels("2..=5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_levels(" 3..3 ").unwrap(), vec![3]);
        assert!(parse_levels("5..2").is_err());
        assert!(parse_levels("x..2").is_err());
        assert!(parse_levels("").is_err());
    }

    #[test]
    fn seed_point_parsing() {
        assert_eq!(parse_seed_point("0.25,0.75").unwrap(), [0.25, 0.75]);
        assert_eq!(parse_seed_point(" -1 , 2e-3 ").unwrap(), [-1.0, 2e-3]);
        assert!(parse_seed_point("0.25").is_err());
        assert!(parse_seed_point("a,b").is_err());
        assert!(parse_seed_point("nan,0").is_err());
    }

    #[test]
    fn emit_list_parsing() {
        let all = EmitSet::parse("all").unwrap();
        assert!(all.tiling_svg && all.map_svg && all.tiling_json && all.map_csv && all.report);
        let some = EmitSet::parse("tiling_svg,report").unwrap();
        assert!(some.tiling_svg && some.report);
        assert!(!some.map_svg && !some.tiling_json && !some.map_csv);
        assert!(EmitSet::parse("tiling_svg,bogus").is_err());
    }

    #[test]
    fn config_validation_rejects_bad_tolerance_and_empty_levels() {
        let mut cfg = RunConfig::new(Mode::Tile, "unused.json", vec![3]);
        cfg.tol = 0.5;
        assert_eq!(cfg.validate().unwrap_err().code(), 2);
        cfg.tol = 1e-10;
        cfg.levels.clear();
        assert_eq!(cfg.validate().unwrap_err().code(), 2);
    }

    #[test]
    fn missing_domain_file_is_an_io_error() {
        let cfg = RunConfig::new(Mode::Tile, "/nonexistent/rectmap-domain.json", vec![3]);
        let err = run(&cfg).unwrap_err();
        assert_eq!(err.code(), 4);
        assert_eq!(err.name(), "Io");
        let line = err.record_line();
        assert!(line.starts_with('{') && !line.contains('\n'));
    }
}
