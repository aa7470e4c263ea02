//! Static SVG line charts of cost ratios over the update sequence.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::experiment::read_csv;
use super::HarnessError;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const SDD_COLOR: &str = "#1f77b4";
const PIVOT_COLOR: &str = "#d62728";

struct Series {
    points: Vec<(f64, f64)>,
    color: &'static str,
    width: f64,
    opacity: f64,
}

fn polyline(s: &Series, sx: &impl Fn(f64) -> f64, sy: &impl Fn(f64) -> f64) -> String {
    let pts: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    format!(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"{}\" points=\"{}\"/>\n",
        s.color,
        s.width,
        s.opacity,
        pts.join(" ")
    )
}

fn mean_series(runs: &[Vec<(f64, f64, f64)>], pick: impl Fn(&(f64, f64, f64)) -> f64) -> Vec<(f64, f64)> {
    let len = runs.iter().map(Vec::len).min().unwrap_or(0);
    (0..len)
        .map(|i| {
            let x = runs[0][i].0;
            let y = runs.iter().map(|r| pick(&r[i])).sum::<f64>() / runs.len() as f64;
            (x, y)
        })
        .collect()
}

/// Renders `sdd_ratio` and `pivot_ratio` against `update_index`. With a single
/// CSV the chart has two lines; with several, each file contributes two faint
/// lines and two bold lines show the per-checkpoint means.
pub fn emit_plot(inputs: &[PathBuf], out: &Path) -> Result<(), HarnessError> {
    if inputs.is_empty() {
        return Err(HarnessError::Config("plot needs at least one CSV".into()));
    }
    let mut runs: Vec<Vec<(f64, f64, f64)>> = Vec::new();
    for path in inputs {
        let rows = read_csv(path)?;
        if rows.is_empty() {
            return Err(HarnessError::EmptyInput(path.clone()));
        }
        runs.push(rows.iter().map(|r| (r.update_index as f64, r.sdd_ratio, r.pivot_ratio)).collect());
    }

    let mut series = Vec::new();
    let single = runs.len() == 1;
    let (w, op) = if single { (2.0, 1.0) } else { (1.0, 0.35) };
    for run in &runs {
        series.push(Series { points: run.iter().map(|p| (p.0, p.1)).collect(), color: SDD_COLOR, width: w, opacity: op });
        series.push(Series { points: run.iter().map(|p| (p.0, p.2)).collect(), color: PIVOT_COLOR, width: w, opacity: op });
    }
    if !single {
        series.push(Series { points: mean_series(&runs, |p| p.1), color: SDD_COLOR, width: 2.5, opacity: 1.0 });
        series.push(Series { points: mean_series(&runs, |p| p.2), color: PIVOT_COLOR, width: 2.5, opacity: 1.0 });
    }

    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    let y1 = if y1 > 0.0 { y1 * 1.05 } else { 1.0 };
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - y / y1 * ph;

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    )
    .unwrap();
    writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>").unwrap();
    // axes
    writeln!(
        svg,
        "<path d=\"M{LEFT},{TOP} V{} H{}\" fill=\"none\" stroke=\"black\"/>",
        TOP + ph,
        LEFT + pw
    )
    .unwrap();
    for i in 0..=5 {
        let fx = x0 + (x1 - x0) * i as f64 / 5.0;
        let fy = y1 * i as f64 / 5.0;
        let (px, py) = (sx(fx), sy(fy));
        writeln!(
            svg,
            "<line x1=\"{px:.2}\" y1=\"{}\" x2=\"{px:.2}\" y2=\"{}\" stroke=\"black\"/><text x=\"{px:.2}\" y=\"{}\" text-anchor=\"middle\">{:.0}</text>",
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 18.0,
            fx
        )
        .unwrap();
        writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{py:.2}\" x2=\"{LEFT}\" y2=\"{py:.2}\" stroke=\"black\"/><text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{:.2}</text>",
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            fy
        )
        .unwrap();
    }
    writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">updates</text>",
        LEFT + pw / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        svg,
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">cost / singleton cost</text>",
        TOP + ph / 2.0,
        TOP + ph / 2.0
    )
    .unwrap();
    for s in &series {
        svg.push_str(&polyline(s, &sx, &sy));
    }
    // legend
    for (i, (label, color)) in [("SDD", SDD_COLOR), ("pivot", PIVOT_COLOR)].iter().enumerate() {
        let y = TOP - 20.0 + 14.0 * i as f64;
        let x = LEFT + pw - 90.0;
        writeln!(
            svg,
            "<line x1=\"{x}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"2\"/><text x=\"{}\" y=\"{}\">{label}</text>",
            x + 24.0,
            x + 30.0,
            y + 4.0
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    fs::write(out, svg)?;
    Ok(())
}
