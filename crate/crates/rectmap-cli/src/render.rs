//! SVG renderers for tilings and colored map figures.
//!
//! Both figures use one fixed two-parameter color ramp
//! `ramp(u, v) = hsv(300·u, 0.85, 0.30 + 0.65·v)` evaluated on normalized
//! rectangle coordinates `(u, v) = (Re/I*, Im)`. The domain picture colors
//! each sample point by the ramp at its *image*, the rectangle picture colors
//! each point by the ramp at its own *position*, and each tiling square is
//! colored by the ramp at its center (the image-plane footprint of its source
//! vertex). A point and its image therefore carry the same color, so visually
//! matching colors across figures identifies preimages.
//!
//! Conventions: y axis points up (the top arc of the rectangle is drawn on
//! top), the rectangle frame is stroked at 0.5% of the rectangle width, and
//! every number is written with Rust's shortest round-trip float formatting,
//! which keeps the documents byte-stable across runs.

use std::fmt::Write as _;

use rectmap::domain::PlanarDomain;
use rectmap::mapper::DiscreteConformalMap;
use rectmap::tiling::SquareTiling;

use crate::CliError;

/// Styling knobs for [`render_tiling_svg`].
#[derive(Debug, Clone, Copy)]
pub struct TilingStyle {
    /// Pixel height of the unit rectangle side (width scales by `I*`).
    pub scale: f64,
    /// Frame stroke width as a fraction of the rectangle width.
    pub stroke_frac: f64,
}

impl Default for TilingStyle {
    fn default() -> Self {
        TilingStyle {
            scale: 512.0,
            stroke_frac: 0.005,
        }
    }
}

/// The fixed two-parameter color ramp shared by all figures.
///
/// `u` drives the hue (0..300 degrees, avoiding the red-on-red wraparound)
/// and `v` the brightness, so both coordinates of a point are legible from
/// its color alone.
pub fn ramp(u: f64, v: f64) -> String {
    let u = u.clamp(0.0, 1.0);
    let v = v.clamp(0.0, 1.0);
    hsv_hex(300.0 * u, 0.85, 0.30 + 0.65 * v)
}

/// Convert HSV (`h` in degrees, `s`, `v` in `[0,1]`) to an `#rrggbb` string.
fn hsv_hex(h: f64, s: f64, v: f64) -> String {
    let h = h.rem_euclid(360.0) / 60.0;
    let i = h.floor() as i32 % 6;
    let f = h - h.floor();
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    let (r, g, b) = match i {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    let byte = |x: f64| (x * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

fn svg_open(doc: &mut String, view: [f64; 4]) {
    let _ = writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        view[0], view[1], view[2], view[3]
    );
}

/// Render one `<rect>` per nondegenerate square of a validated tiling.
///
/// The rectangle `[0, I*]×[0, 1]` is drawn y-up with the top arc on top;
/// degenerate (zero-side) squares are omitted; a frame is stroked at
/// `stroke_frac` of the width.
pub fn render_tiling_svg(tiling: &SquareTiling, style: TilingStyle) -> String {
    let w = tiling.width();
    let s = style.scale;
    let stroke = style.stroke_frac * w * s;
    let margin = stroke.max(0.01 * s);
    let mut doc = String::new();
    svg_open(
        &mut doc,
        [-margin, -margin, w * s + 2.0 * margin, s + 2.0 * margin],
    );
    for sq in tiling.squares() {
        if sq.degenerate {
            continue;
        }
        let cu = 0.5 * (sq.x0 + sq.x1) / w;
        let cv = 0.5 * (sq.y0 + sq.y1);
        // y-up: a square spanning [y0, y1] starts at SVG y = (1 − y1)·s.
        let _ = writeln!(
            doc,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
            sq.x0 * s,
            (1.0 - sq.y1) * s,
            (sq.x1 - sq.x0) * s,
            (sq.y1 - sq.y0) * s,
            ramp(cu, cv),
        );
    }
    let _ = writeln!(
        doc,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"{}\"/>",
        w * s, s, stroke,
    );
    doc.push_str("</svg>\n");
    doc
}

/// Render the color-matched pair of figures: the domain colored by the ramp
/// at each point's image, and the rectangle colored by the ramp at position.
///
/// Both figures sample a `samples × samples` grid of cell centers. Domain
/// cells whose center has no image (outside the mesh) are left transparent.
/// A zero sample density renders nothing and is rejected.
pub fn render_map_svg(
    map: &DiscreteConformalMap,
    domain: &PlanarDomain,
    samples: usize,
) -> Result<(String, String), CliError> {
    if samples == 0 {
        return Err(CliError::empty_render());
    }
    let width = map.width();
    let [xmin, ymin, xmax, ymax] = domain.bbox();
    let (bw, bh) = (xmax - xmin, ymax - ymin);
    let s = 512.0 / bw.max(bh);
    let cell = (bw.max(bh) / samples as f64) * s;

    // Domain picture: bbox grid, each covered cell colored by its image.
    let mut dom = String::new();
    let stroke = 0.005 * bw.max(bh) * s;
    svg_open(
        &mut dom,
        [
            -stroke,
            -stroke,
            bw * s + 2.0 * stroke,
            bh * s + 2.0 * stroke,
        ],
    );
    let nx = ((bw / bw.max(bh)) * samples as f64).ceil() as usize;
    let ny = ((bh / bw.max(bh)) * samples as f64).ceil() as usize;
    let (dx, dy) = (bw / nx as f64, bh / ny as f64);
    for j in 0..ny {
        for i in 0..nx {
            let p = [
                xmin + (i as f64 + 0.5) * dx,
                ymin + (j as f64 + 0.5) * dy,
            ];
            let Some(img) = map.evaluate(p) else { continue };
            let _ = writeln!(
                dom,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                (p[0] - xmin) * s - 0.5 * cell,
                (ymax - p[1]) * s - 0.5 * cell,
                cell,
                cell,
                ramp(img[0] / width, img[1]),
            );
        }
    }
    let outline: Vec<String> = domain
        .points()
        .iter()
        .map(|p| format!("{},{}", (p[0] - xmin) * s, (ymax - p[1]) * s))
        .collect();
    let _ = writeln!(
        dom,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
        outline.join(" "),
        stroke,
    );
    dom.push_str("</svg>\n");

    // Rectangle picture: pure position ramp over [0, I*]×[0, 1].
    let mut rect = String::new();
    let rs = 512.0;
    let rstroke = 0.005 * width * rs;
    svg_open(
        &mut rect,
        [
            -rstroke,
            -rstroke,
            width * rs + 2.0 * rstroke,
            rs + 2.0 * rstroke,
        ],
    );
    let rnx = (samples as f64 * width).ceil().max(1.0) as usize;
    let (rdx, rdy) = (width / rnx as f64, 1.0 / samples as f64);
    for j in 0..samples {
        for i in 0..rnx {
            let (u, v) = ((i as f64 + 0.5) * rdx / width, (j as f64 + 0.5) * rdy);
            let _ = writeln!(
                rect,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                i as f64 * rdx * rs,
                (1.0 - (j as f64 + 1.0) * rdy) * rs,
                rdx * rs,
                rdy * rs,
                ramp(u, v),
            );
        }
    }
    let _ = writeln!(
        rect,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"{}\"/>",
        width * rs,
        rs,
        rstroke,
    );
    rect.push_str("</svg>\n");

    Ok((dom, rect))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_is_deterministic_and_clamped() {
        assert_eq!(ramp(0.0, 0.0), ramp(-1.0, -0.5));
        assert_eq!(ramp(1.0, 1.0), ramp(2.0, 7.0));
        assert_eq!(hsv_hex(0.0, 0.0, 1.0), "#ffffff");
        assert_eq!(hsv_hex(0.0, 1.0, 1.0), "#ff0000");
        assert_eq!(hsv_hex(120.0, 1.0, 1.0), "#00ff00");
        assert_eq!(hsv_hex(240.0, 1.0, 1.0), "#0000ff");
    }
}
