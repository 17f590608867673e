//! Static semilog-y SVG plots of convergence traces.

use std::fmt::Write as _;

use crate::solver::TraceRow;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
/// Values below this (including exact zeros) are drawn at the floor.
pub const LOG_FLOOR: f64 = 1e-16;

const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Series {
    /// Thompson distance between consecutive iterates.
    Gap,
    /// Larger of the two relative residuals.
    Residual,
    /// A-priori error bound.
    Bound,
}

impl Series {
    pub fn name(self) -> &'static str {
        match self {
            Self::Gap => "gap",
            Self::Residual => "residual",
            Self::Bound => "bound",
        }
    }

    fn value(self, row: &TraceRow) -> f64 {
        match self {
            Self::Gap => row.thompson_gap,
            Self::Residual => row.residual1.max(row.residual2),
            Self::Bound => row.error_bound,
        }
    }

    fn dash(self) -> &'static str {
        match self {
            Self::Gap => "",
            Self::Residual => " stroke-dasharray=\"6 3\"",
            Self::Bound => " stroke-dasharray=\"2 3\"",
        }
    }
}

/// One trace to draw, with its legend label.
#[derive(Debug, Clone)]
pub struct PlotTrace {
    pub label: String,
    pub rows: Vec<TraceRow>,
}

fn clamp(v: f64) -> Option<f64> {
    if v.is_nan() {
        None
    } else {
        Some(v.max(LOG_FLOOR))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the requested series of every trace into one SVG document.
/// Output depends only on the inputs.
pub fn render_svg(traces: &[PlotTrace], series: &[Series]) -> String {
    let mut k_max = 1usize;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for t in traces {
        for row in &t.rows {
            k_max = k_max.max(row.k);
            for s in series {
                if let Some(v) = clamp(s.value(row)).filter(|v| v.is_finite()) {
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
    }
    if !lo.is_finite() {
        lo = LOG_FLOOR;
        hi = 1.0;
    }
    let d_lo = lo.log10().floor() as i32;
    let mut d_hi = hi.log10().ceil() as i32;
    if d_hi <= d_lo {
        d_hi = d_lo + 1;
    }

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |k: usize| LEFT + plot_w * k as f64 / k_max as f64;
    let y_of = |v: f64| {
        let t = (v.log10() - d_lo as f64) / (d_hi - d_lo) as f64;
        TOP + plot_h * (1.0 - t.clamp(0.0, 1.0))
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" width=\"{WIDTH}\" height=\"{HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "<rect x=\"{LEFT:.2}\" y=\"{TOP:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"black\"/>"
    );

    // decade ticks and grid
    for d in d_lo..=d_hi {
        let y = y_of(10f64.powi(d));
        let _ = writeln!(
            out,
            "<line x1=\"{LEFT:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>",
            LEFT + plot_w
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">1e{d}</text>",
            LEFT - 6.0,
            y + 4.0
        );
    }
    let x_step = (k_max as f64 / 10.0).ceil().max(1.0) as usize;
    let mut k = 0;
    while k <= k_max {
        let x = x_of(k);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            TOP + plot_h,
            TOP + plot_h + 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{k}</text>",
            TOP + plot_h + 18.0
        );
        k += x_step;
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">iteration k</text>",
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );

    let mut legend = 0usize;
    for (ti, t) in traces.iter().enumerate() {
        let color = PALETTE[ti % PALETTE.len()];
        for s in series {
            let pts: Vec<(f64, f64)> = t
                .rows
                .iter()
                .filter_map(|r| {
                    clamp(s.value(r))
                        .filter(|v| v.is_finite())
                        .map(|v| (x_of(r.k), y_of(v)))
                })
                .collect();
            if pts.is_empty() {
                continue;
            }
            if pts.len() == 1 {
                let (x, y) = pts[0];
                let _ = writeln!(
                    out,
                    "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{color}\"/>"
                );
            } else {
                let coords: Vec<String> =
                    pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    out,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{} points=\"{}\"/>",
                    s.dash(),
                    coords.join(" ")
                );
            }
            let ly = TOP + 16.0 + 16.0 * legend as f64;
            let lx = WIDTH - RIGHT - 200.0;
            let _ = writeln!(
                out,
                "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"1.5\"{}/>",
                lx + 24.0,
                s.dash()
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\">{} ({})</text>",
                lx + 30.0,
                ly + 4.0,
                escape(&t.label),
                s.name()
            );
            legend += 1;
        }
    }
    out.push_str("</svg>\n");
    out
}
