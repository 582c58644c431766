//! Structured data exporters: tiling JSON, sampled map CSV, and the
//! per-level convergence report CSV.
//!
//! All numbers are written with Rust's shortest round-trip formatting (via
//! `Display` and `serde_json`), so repeated runs with identical inputs
//! produce byte-identical files. The one exception is the report's
//! `wall_ms` column, which records measured wall time and necessarily
//! varies between runs; consumers comparing reports should mask it.

use std::fmt::Write as _;

use rectmap::domain::PlanarDomain;
use rectmap::mapper::{DiscreteConformalMap, LevelRow};
use rectmap::tiling::SquareTiling;
use serde::Serialize;

/// One tiling square as exported to JSON. Field order is the record order.
#[derive(Serialize)]
struct SquareRecord {
    edge: usize,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

/// Serialize every square (degenerate ones included) as a JSON array of
/// `{edge, x0, x1, y0, y1}` records, ordered by edge id.
pub fn tiling_json(tiling: &SquareTiling) -> String {
    let records: Vec<SquareRecord> = tiling
        .squares()
        .iter()
        .map(|s| SquareRecord {
            edge: s.edge,
            x0: s.x0,
            x1: s.x1,
            y0: s.y0,
            y1: s.y1,
        })
        .collect();
    let mut text = serde_json::to_string(&records).expect("plain floats serialize");
    text.push('\n');
    text
}

/// Sample the map on a `samples × samples` grid of bbox cell centers and
/// emit `x,y,re,im,cell_flag` records.
///
/// Points with no image (outside the domain or in a boundary cell with a
/// missing corner) get `cell_flag` 0 and empty `re`/`im` fields.
pub fn map_csv(map: &DiscreteConformalMap, domain: &PlanarDomain, samples: usize) -> String {
    let [xmin, ymin, xmax, ymax] = domain.bbox();
    let (dx, dy) = (
        (xmax - xmin) / samples as f64,
        (ymax - ymin) / samples as f64,
    );
    let mut out = String::from("x,y,re,im,cell_flag\n");
    for j in 0..samples {
        for i in 0..samples {
            let p = [
                xmin + (i as f64 + 0.5) * dx,
                ymin + (j as f64 + 0.5) * dy,
            ];
            match map.evaluate(p) {
                Some(img) => {
                    let _ = writeln!(out, "{},{},{},{},1", p[0], p[1], img[0], img[1]);
                }
                None => {
                    let _ = writeln!(out, "{},{},,,0", p[0], p[1]);
                }
            }
        }
    }
    out
}

/// Round-trip float formatting that switches to scientific notation for
/// very small or very large magnitudes (pure function of the value, so
/// still byte-stable).
fn fmt_f64(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e16) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Assemble the convergence report with one row per level.
pub fn report_csv(rows: &[LevelRow]) -> String {
    let mut out = String::from(
        "level,intensity,r_eff,duffin_lb,max_side,cr_residual,node_residual,solve_iters,wall_ms\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.3}",
            r.level,
            fmt_f64(r.intensity),
            fmt_f64(r.r_eff),
            fmt_f64(r.duffin_lb),
            fmt_f64(r.max_side),
            fmt_f64(r.cr_residual),
            fmt_f64(r.node_residual),
            r.solve_iterations,
            r.wall_ms,
        );
    }
    out
}
