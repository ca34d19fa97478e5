//! Minimal SVG line charts for sweep curves.

use std::fmt::Write as _;

use crate::experiments::{ComparisonResult, SweepResult};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

#[derive(Debug, Clone)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Plot x on a base-10 log axis; non-positive x values are dropped.
    pub log_x: bool,
    pub series: Vec<Series>,
}

impl LinePlot {
    pub fn render(&self) -> String {
        let tx = |x: f64| if self.log_x { x.log10() } else { x };
        let finite: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter())
            .filter(|(x, y)| y.is_finite() && (!self.log_x || *x > 0.0))
            .map(|&(x, y)| (tx(x), y))
            .collect();
        let (mut x0, mut x1, mut y0, mut y1) = finite.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, 0.0f64, f64::NEG_INFINITY),
            |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
        );
        if finite.is_empty() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        y1 = if y1 <= y0 { y0 + 1.0 } else { y1.ceil() };
        let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
        let _ = writeln!(
            svg,
            r#"<path d="M{left},{top} L{left},{bottom} L{right},{bottom}" fill="none" stroke="black"/>"#
        );
        for i in 0..=4 {
            let y = y0 + (y1 - y0) * i as f64 / 4.0;
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
                left - 6.0,
                py(y) + 4.0,
                trim(y)
            );
        }
        let ticks: Vec<f64> = if self.log_x {
            (x0.floor() as i32..=x1.ceil() as i32)
                .map(f64::from)
                .filter(|t| *t >= x0 - 1e-9 && *t <= x1 + 1e-9)
                .collect()
        } else {
            (0..=4).map(|i| x0 + (x1 - x0) * i as f64 / 4.0).collect()
        };
        for t in ticks {
            let label = if self.log_x { trim(10f64.powf(t)) } else { trim(t) };
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{}" text-anchor="middle">{label}</text>"#,
                px(t),
                bottom + 18.0
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 16.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );

        for (i, s) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|(x, y)| y.is_finite() && (!self.log_x || *x > 0.0))
                .map(|&(x, y)| format!("{:.1},{:.1}", px(tx(x)), py(y)))
                .collect();
            let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
                pts.join(" ")
            );
            let ly = top + 16.0 * i as f64;
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/><text x="{}" y="{}">{}</text>"#,
                right - 150.0,
                right - 126.0,
                right - 120.0,
                ly + 4.0,
                escape(&s.name)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn trim(v: f64) -> String {
    let s = format!("{v:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Empirical against analytic mean `d*`.
pub fn sweep_plot(result: &SweepResult) -> LinePlot {
    let empirical = result.rows.iter().map(|r| (r.x as f64, r.mean_dstar)).collect();
    let analytic = result
        .rows
        .iter()
        .map(|r| (r.x as f64, r.analytic_dstar.unwrap_or(f64::NAN)))
        .collect();
    LinePlot {
        title: "Mean social distance against bridge count".into(),
        x_label: "bridges x".into(),
        y_label: "mean d*".into(),
        log_x: true,
        series: vec![
            Series {
                name: "empirical".into(),
                points: empirical,
                dashed: false,
            },
            Series {
                name: "analytic d0 + 1".into(),
                points: analytic,
                dashed: true,
            },
        ],
    }
}

pub fn comparison_plot(result: &ComparisonResult) -> LinePlot {
    let mut plot = sweep_plot(&result.er);
    plot.title = "ER against scale-free blocks".into();
    plot.series[0].name = "ER".into();
    plot.series.insert(
        1,
        Series {
            name: "scale-free".into(),
            points: result
                .scale_free
                .rows
                .iter()
                .map(|r| (r.x as f64, r.mean_dstar))
                .collect(),
            dashed: false,
        },
    );
    plot
}
