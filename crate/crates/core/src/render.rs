//! SVG rendering of projected roots.
//!
//! Output is plain SVG 1.1 text with every number printed to six decimal
//! places and elements emitted in input order, so identical inputs give
//! byte-identical documents.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::project::{radius_values, ProjectionPoint};
use crate::roots::Family;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorScheme {
    ByFamily,
    ByRadius,
    Monochrome,
}

/// Eight colors, one per family `A … H` (or per radius class).
pub const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderStyle {
    pub canvas_size: u32,
    pub point_radius: f64,
    /// Fraction of the canvas left empty on each side.
    pub margin: f64,
    pub color_scheme: ColorScheme,
    pub background: String,
    pub draw_guide_circles: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            canvas_size: 800,
            point_radius: 4.0,
            margin: 0.05,
            color_scheme: ColorScheme::ByFamily,
            background: "#ffffff".into(),
            draw_guide_circles: false,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.canvas_size == 0 {
            return Err(RenderError::InvalidStyle("canvas_size must be positive".into()));
        }
        if !(0.0..0.5).contains(&self.margin) {
            return Err(RenderError::InvalidStyle(format!("margin {} outside [0, 0.5)", self.margin)));
        }
        if !(self.point_radius.is_finite() && self.point_radius > 0.0) {
            return Err(RenderError::InvalidStyle(format!("point_radius {} must be positive", self.point_radius)));
        }
        if self.background.is_empty() || self.background.contains(['"', '<', '>', '&']) {
            return Err(RenderError::InvalidStyle(format!("unusable background color {:?}", self.background)));
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("nothing to render")]
    Empty,
    #[error("invalid style: {0}")]
    InvalidStyle(String),
}

/// Six decimals, with negative zero printed as zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000".into()
    } else {
        s
    }
}

fn family_color(f: Family) -> &'static str {
    PALETTE[f.index()]
}

/// Renders points as one `<circle class="point">` each; the largest radius
/// lands at `(1 − 2·margin)·canvas_size/2` from the center.
pub fn render_svg(points: &[ProjectionPoint], style: &RenderStyle) -> Result<String, RenderError> {
    style.validate()?;
    if points.is_empty() {
        return Err(RenderError::Empty);
    }
    let size = style.canvas_size as f64;
    let center = size / 2.0;
    let max_radius = points.iter().map(|p| p.radius).fold(0.0, f64::max);
    let extent = (1.0 - 2.0 * style.margin) * size / 2.0;
    let scale = if max_radius > 0.0 { extent / max_radius } else { 0.0 };
    let radii = radius_values(points, tolerance::PROJECTION);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        style.canvas_size
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{0}" height="{0}" fill="{1}"/>"#, style.canvas_size, style.background);
    if style.draw_guide_circles {
        let _ = writeln!(out, r##"<g fill="none" stroke="#c8c8c8" stroke-width="0.500000">"##);
        for r in &radii {
            let _ = writeln!(out, r#"<circle class="guide" cx="{0}" cy="{0}" r="{1}"/>"#, num(center), num(r * scale));
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "<g stroke=\"none\">");
    for p in points {
        let fill = match style.color_scheme {
            ColorScheme::ByFamily => family_color(p.family),
            ColorScheme::ByRadius => {
                let k = radii.iter().position(|r| (r - p.radius).abs() <= tolerance::PROJECTION).unwrap_or(0);
                PALETTE[k % PALETTE.len()]
            }
            ColorScheme::Monochrome => "#000000",
        };
        let _ = writeln!(
            out,
            r#"<circle class="point" data-family="{}" data-n="{}" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            p.family,
            p.index,
            num(center + p.re * scale),
            num(center - p.im * scale),
            num(style.point_radius),
            fill
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
