//! Static band diagram: both numerical branches, the perturbative pair as
//! dashed lines, the mass shell, and the forbidden interval shaded.

use std::fmt::Write;

use crate::brillouin::EdgeAxis;
use crate::solver::scan::BandTable;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

fn fmt(x: f64) -> String {
    format!("{:.2}", x)
}

fn tick_label(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if (1e-2..1e4).contains(&x.abs()) {
        format!("{x:.4}")
    } else {
        format!("{x:.3e}")
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, from: f64, to: f64) -> Self {
        let (lo, hi) = if hi > lo {
            (lo, hi)
        } else {
            let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 1e-6 };
            (lo - pad, hi + pad)
        };
        Self { lo, hi, from, to }
    }

    fn map(&self, x: f64) -> f64 {
        self.from + (x - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }
}

/// Coordinate intervals where the shell value lies strictly between the branches.
pub fn forbidden_intervals(table: &BandTable, shell: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for r in &table.rows {
        let inside = r.s_lower < shell && shell < r.s_upper;
        match (inside, start) {
            (true, None) => start = Some(r.coordinate),
            (false, Some(s)) => {
                out.push((s, last));
                start = None;
            }
            _ => {}
        }
        last = r.coordinate;
    }
    if let Some(s) = start {
        out.push((s, last));
    }
    out
}

/// Renders the scan. Values are plotted relative to the particle's shell value
/// `Mc²/2` on momentum edges and relative to zero on energy edges.
pub fn render_band_svg(table: &BandTable, rest_energy: f64) -> String {
    let shell = 0.5 * rest_energy;
    let origin = match table.line.axis {
        EdgeAxis::Momentum => shell,
        EdgeAxis::Energy => 0.0,
    };
    let rows = &table.rows;
    let finite = |v: f64| v.is_finite();
    let xs: Vec<f64> = rows.iter().map(|r| r.coordinate).collect();
    let ys: Vec<f64> = rows
        .iter()
        .flat_map(|r| [r.s_lower, r.s_upper, r.pt_lower, r.pt_upper])
        .filter(|v| finite(*v))
        .map(|v| v - origin)
        .collect();
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let x_axis = Axis::new(
        fold(&xs, f64::min, f64::INFINITY),
        fold(&xs, f64::max, f64::NEG_INFINITY),
        LEFT,
        WIDTH - RIGHT,
    );
    let (ylo, yhi) = (fold(&ys, f64::min, f64::INFINITY), fold(&ys, f64::max, f64::NEG_INFINITY));
    let (ylo, yhi) = if ys.is_empty() { (-1.0, 1.0) } else { (ylo, yhi) };
    let pad = 0.05 * (yhi - ylo);
    let y_axis = Axis::new(ylo - pad, yhi + pad, HEIGHT - BOTTOM, TOP);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    if table.line.axis == EdgeAxis::Momentum {
        for (a, b) in forbidden_intervals(table, shell) {
            let (x0, x1) = (x_axis.map(a), x_axis.map(b));
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#f4c7c3" fill-opacity="0.6"/>"##,
                fmt(x0.min(x1)),
                fmt(TOP),
                fmt((x1 - x0).abs().max(1.0)),
                fmt(HEIGHT - BOTTOM - TOP)
            );
        }
        let y = y_axis.map(0.0);
        if (TOP..=HEIGHT - BOTTOM).contains(&y) {
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#888" stroke-dasharray="2,3"/>"##,
                fmt(LEFT),
                fmt(WIDTH - RIGHT),
                y = fmt(y)
            );
        }
    }

    // axes and ticks
    let _ = writeln!(
        s,
        r#"<path d="M{l},{t} L{l},{b} L{r},{b}" fill="none" stroke="black"/>"#,
        l = fmt(LEFT),
        t = fmt(TOP),
        b = fmt(HEIGHT - BOTTOM),
        r = fmt(WIDTH - RIGHT)
    );
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let xv = x_axis.lo + f * (x_axis.hi - x_axis.lo);
        let x = x_axis.map(xv);
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{b}" x2="{x}" y2="{b2}" stroke="black"/><text x="{x}" y="{ty}" text-anchor="middle">{label}</text>"#,
            x = fmt(x),
            b = fmt(HEIGHT - BOTTOM),
            b2 = fmt(HEIGHT - BOTTOM + 5.0),
            ty = fmt(HEIGHT - BOTTOM + 20.0),
            label = tick_label(xv)
        );
        let yv = y_axis.lo + f * (y_axis.hi - y_axis.lo);
        let y = y_axis.map(yv);
        let _ = writeln!(
            s,
            r#"<line x1="{l2}" y1="{y}" x2="{l}" y2="{y}" stroke="black"/><text x="{tx}" y="{y}" text-anchor="end" dominant-baseline="middle">{label}</text>"#,
            l = fmt(LEFT),
            l2 = fmt(LEFT - 5.0),
            tx = fmt(LEFT - 8.0),
            y = fmt(y),
            label = tick_label(yv)
        );
    }
    let (xlabel, ylabel) = match table.line.axis {
        EdgeAxis::Momentum => ("E (eV)", "s - Mc²/2 (eV)"),
        EdgeAxis::Energy => ("cp_z (eV)", "s (eV)"),
    };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#,
        fmt(0.5 * (LEFT + WIDTH - RIGHT)),
        fmt(HEIGHT - 15.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{y}" text-anchor="middle" transform="rotate(-90 20 {y})">{ylabel}</text>"#,
        y = fmt(0.5 * (TOP + HEIGHT - BOTTOM))
    );

    type Pick = fn(&crate::solver::scan::BandRow) -> f64;
    let series: [(Pick, &str, &str); 4] = [
        (|r| r.s_lower, "#1f4e9c", ""),
        (|r| r.s_upper, "#b8321e", ""),
        (|r| r.pt_lower, "#1f4e9c", r#" stroke-dasharray="6,4""#),
        (|r| r.pt_upper, "#b8321e", r#" stroke-dasharray="6,4""#),
    ];
    for (pick, colour, dash) in series {
        let pts: Vec<String> = rows
            .iter()
            .filter(|r| finite(pick(r)))
            .map(|r| format!("{},{}", fmt(x_axis.map(r.coordinate)), fmt(y_axis.map(pick(r) - origin))))
            .collect();
        if !pts.is_empty() {
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"{dash}/>"#,
                pts.join(" ")
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
