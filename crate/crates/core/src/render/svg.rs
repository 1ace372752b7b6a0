use std::fmt::Write;

use super::{PhasePortraitTrace, Point, StaircaseTrace};
use crate::dynamics::Stability;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const TICKS: usize = 5;

/// Canvas size and plot margin, in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 640,
            height: 480,
            margin: 48,
        }
    }
}

/// Data range in plot coordinates.
#[derive(Debug, Clone, Copy)]
struct Bounds {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Bounds {
    fn from_points<I: IntoIterator<Item = (f64, f64)>>(points: I) -> Bounds {
        let mut b = Bounds {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        for (x, y) in points {
            if x.is_finite() && y.is_finite() {
                b.x_min = b.x_min.min(x);
                b.x_max = b.x_max.max(x);
                b.y_min = b.y_min.min(y);
                b.y_max = b.y_max.max(y);
            }
        }
        if b.x_min > b.x_max {
            b.x_min = 0.0;
            b.x_max = 0.0;
        }
        if b.y_min > b.y_max {
            b.y_min = 0.0;
            b.y_max = 0.0;
        }
        // degenerate ranges are padded by one unit each way
        if b.x_min == b.x_max {
            b.x_min -= 1.0;
            b.x_max += 1.0;
        }
        if b.y_min == b.y_max {
            b.y_min -= 1.0;
            b.y_max += 1.0;
        }
        b
    }
}

/// Maps data coordinates to pixels.
pub struct Frame {
    bounds: Bounds,
    opts: SvgOptions,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let m = self.opts.margin as f64;
        let w = self.opts.width as f64 - 2.0 * m;
        m + (x - self.bounds.x_min) / (self.bounds.x_max - self.bounds.x_min) * w
    }

    fn py(&self, y: f64) -> f64 {
        let m = self.opts.margin as f64;
        let h = self.opts.height as f64 - 2.0 * m;
        self.opts.height as f64
            - m
            - (y - self.bounds.y_min) / (self.bounds.y_max - self.bounds.y_min) * h
    }

    fn visible(x: f64, y: f64) -> bool {
        x.is_finite() && y.is_finite()
    }
}

/// Something [`to_svg`] can draw.
pub trait SvgTrace {
    /// Every data point that should fit in the plot.
    fn extent(&self) -> Vec<(f64, f64)>;
    fn draw(&self, frame: &Frame, out: &mut String);
}

fn polyline<T: Scalar>(
    frame: &Frame,
    class: &str,
    stroke: &str,
    points: &[Point<T>],
    out: &mut String,
) {
    let mut coords = String::new();
    for p in points {
        let (x, y) = (p.x.as_f64(), p.y.as_f64());
        if Frame::visible(x, y) {
            if !coords.is_empty() {
                coords.push(' ');
            }
            let _ = write!(coords, "{:.2},{:.2}", frame.px(x), frame.py(y));
        }
    }
    if coords.is_empty() {
        return;
    }
    let _ = writeln!(
        out,
        r#"<polyline class="{class}" points="{coords}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#
    );
}

fn stability_fill(s: Stability) -> &'static str {
    match s {
        Stability::Attracting => "#000000",
        Stability::Repelling => "#ffffff",
        Stability::Marginal => "#999999",
    }
}

impl<T: Scalar> SvgTrace for StaircaseTrace<T> {
    fn extent(&self) -> Vec<(f64, f64)> {
        let seg = self
            .segments
            .iter()
            .flat_map(|s| [s.from, s.to])
            .chain(self.curve_f.iter().copied())
            .chain(self.curve_phi.iter().copied())
            .chain(self.fixed_points.iter().map(|m| m.at));
        seg.map(|p| (p.x.as_f64(), p.y.as_f64())).collect()
    }

    fn draw(&self, frame: &Frame, out: &mut String) {
        polyline(frame, "curve-f", "#1f77b4", &self.curve_f, out);
        polyline(frame, "curve-phi", "#d62728", &self.curve_phi, out);
        for s in &self.segments {
            let (x1, y1, x2, y2) = (
                s.from.x.as_f64(),
                s.from.y.as_f64(),
                s.to.x.as_f64(),
                s.to.y.as_f64(),
            );
            if !(Frame::visible(x1, y1) && Frame::visible(x2, y2)) {
                continue;
            }
            let _ = writeln!(
                out,
                r##"<line class="segment" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444444" stroke-width="1"/>"##,
                frame.px(x1),
                frame.py(y1),
                frame.px(x2),
                frame.py(y2)
            );
        }
        for m in &self.fixed_points {
            let _ = writeln!(
                out,
                r##"<circle class="fixed-point {}" cx="{:.2}" cy="{:.2}" r="4" fill="{}" stroke="#000000"/>"##,
                m.stability,
                frame.px(m.at.x.as_f64()),
                frame.py(m.at.y.as_f64()),
                stability_fill(m.stability)
            );
        }
    }
}

impl<T: Scalar> SvgTrace for PhasePortraitTrace<T> {
    fn extent(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|p| (p.x.as_f64(), p.y.as_f64()))
            .collect()
    }

    fn draw(&self, frame: &Frame, out: &mut String) {
        if self.connect {
            polyline(frame, "orbit-path", "#2ca02c", &self.points, out);
        }
        for p in &self.points {
            let (x, y) = (p.x.as_f64(), p.y.as_f64());
            if Frame::visible(x, y) {
                let _ = writeln!(
                    out,
                    r##"<circle class="state" cx="{:.2}" cy="{:.2}" r="2.5" fill="#2ca02c"/>"##,
                    frame.px(x),
                    frame.py(y)
                );
            }
        }
    }
}

fn tick_label(v: f64, span: f64) -> String {
    let decimals = (2 - span.log10().floor() as i32).clamp(0, 12) as usize;
    let s = format!("{v:.decimals$}");
    // avoid "-0.00"
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn draw_axes(frame: &Frame, out: &mut String) {
    let b = frame.bounds;
    let o = frame.opts;
    let (left, right) = (o.margin as f64, (o.width - o.margin) as f64);
    let (top, bottom) = (o.margin as f64, (o.height - o.margin) as f64);
    out.push_str(
        "<g class=\"axes\" stroke=\"#000000\" font-family=\"sans-serif\" font-size=\"11\">\n",
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{left:.2}" y1="{bottom:.2}" x2="{right:.2}" y2="{bottom:.2}"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{left:.2}" y1="{top:.2}" x2="{left:.2}" y2="{bottom:.2}"/>"#
    );
    for k in 0..=TICKS {
        let t = k as f64 / TICKS as f64;
        let xv = b.x_min + t * (b.x_max - b.x_min);
        let px = frame.px(xv);
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}"/>"#,
            bottom + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text class="tick-label" x="{px:.2}" y="{:.2}" text-anchor="middle" stroke="none">{}</text>"#,
            bottom + 18.0,
            tick_label(xv, b.x_max - b.x_min)
        );
        let yv = b.y_min + t * (b.y_max - b.y_min);
        let py = frame.py(yv);
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{:.2}" y1="{py:.2}" x2="{left:.2}" y2="{py:.2}"/>"#,
            left - 5.0
        );
        let _ = writeln!(
            out,
            r#"<text class="tick-label" x="{:.2}" y="{:.2}" text-anchor="end" stroke="none">{}</text>"#,
            left - 8.0,
            py + 4.0,
            tick_label(yv, b.y_max - b.y_min)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle" stroke="none">x</text>"#,
        (left + right) / 2.0,
        o.height as f64 - 8.0
    );
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="14" y="{:.2}" text-anchor="middle" stroke="none">y</text>"#,
        (top + bottom) / 2.0
    );
    out.push_str("</g>\n");
}

/// Renders a trace as a standalone SVG 1.1 document.
///
/// Output depends only on the trace and options, so identical inputs give
/// byte-identical documents.
pub fn to_svg<S: SvgTrace>(trace: &S, opts: &SvgOptions) -> Result<String> {
    if opts.width == 0 || opts.height == 0 {
        return Err(Error::InvalidArgument(
            "SVG dimensions must be positive".into(),
        ));
    }
    if 2 * opts.margin >= opts.width || 2 * opts.margin >= opts.height {
        return Err(Error::InvalidArgument(
            "SVG margins leave no room for the plot".into(),
        ));
    }
    let frame = Frame {
        bounds: Bounds::from_points(trace.extent()),
        opts: *opts,
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        opts.width, opts.height
    );
    draw_axes(&frame, &mut out);
    trace.draw(&frame, &mut out);
    out.push_str("</svg>\n");
    Ok(out)
}
