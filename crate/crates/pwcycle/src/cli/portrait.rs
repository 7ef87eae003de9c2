//! Phase-portrait sampling: level arcs of each zone's first integral, the
//! saddle separatrices and the verified cycles, as polylines.
//!
//! CSV columns: `curve` (`zone{i}-level{k}`, `zone{i}-separatrix{k}` or
//! `cycle{k}`), `t` (time along level arcs and cycles, arclength along
//! separatrices), `x`, `y`.

use std::fmt::Write as _;

use crate::algebra::rat::to_f64;
use crate::dynamics::{self, Flow, IntegratorConfig};
use crate::solver::{self, SolveOptions};
use crate::systems::PiecewiseSystem;

#[derive(Clone, Debug)]
pub struct Curve {
    pub id: String,
    pub points: Vec<(f64, f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct PortraitOptions {
    /// Level arcs per zone.
    pub levels: usize,
    /// Plot range, used for both axes.
    pub window: (f64, f64),
    pub cycles: bool,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        PortraitOptions { levels: 12, window: (-5.0, 5.0), cycles: true }
    }
}

fn reversed(ps: &PiecewiseSystem) -> PiecewiseSystem {
    let mut r = ps.clone();
    for z in &mut r.zones {
        z.time_scale = -z.time_scale.clone();
    }
    r
}

/// The zone's strip intersected with the window, if non-empty.
fn visible(ps: &PiecewiseSystem, zone: usize, w: (f64, f64)) -> Option<(f64, f64)> {
    let (lo, hi) = ps.strip(zone);
    let (a, b) = (lo.max(w.0), hi.min(w.1));
    (a < b).then_some((a, b))
}

pub fn sample(ps: &PiecewiseSystem, opts: &PortraitOptions) -> Vec<Curve> {
    let w = opts.window;
    let span = w.1 - w.0;
    let cfg = IntegratorConfig {
        record: true,
        max_time: 40.0,
        max_step: span / 200.0,
        window: 2.0 * w.0.abs().max(w.1.abs()),
        ..Default::default()
    };
    let fwd = Flow::new(ps);
    let back = Flow::new(&reversed(ps));
    let mut curves = vec![];
    for z in 0..ps.zones.len() {
        let Some((a, b)) = visible(ps, z, w) else { continue };
        let xm = 0.5 * (a + b);
        for k in 0..opts.levels {
            let y = w.0 + span * (k as f64 + 0.5) / opts.levels as f64;
            let mut pts: Vec<(f64, f64, f64)> = vec![];
            if let Ok(tr) = back.integrate_arc(z, (xm, y), &cfg) {
                pts.extend(tr.samples.iter().rev().map(|&(t, x, y)| (-t, x, y)));
                pts.pop();
            }
            if let Ok(tr) = fwd.integrate_arc(z, (xm, y), &cfg) {
                pts.extend(tr.samples);
            }
            if pts.len() > 1 {
                curves.push(Curve { id: format!("zone{z}-level{k}"), points: pts });
            }
        }
        let zone = &ps.zones[z];
        let Some(s) = zone.saddle() else { continue };
        let Ok(seps) = s.separatrices() else { continue };
        let off = to_f64(&zone.offset);
        for (k, ((px, py), m)) in seps.into_iter().enumerate() {
            let px = px - off;
            // clip the line to the visible strip and the window's y range
            let (mut x0, mut x1) = (a, b);
            if m != 0.0 {
                let ya = (w.0 - py) / m + px;
                let yb = (w.1 - py) / m + px;
                x0 = x0.max(ya.min(yb));
                x1 = x1.min(ya.max(yb));
            } else if py < w.0 || py > w.1 {
                continue;
            }
            if x0 >= x1 {
                continue;
            }
            let n = 64;
            let arc = (1.0 + m * m).sqrt();
            let points = (0..=n)
                .map(|i| {
                    let x = x0 + (x1 - x0) * i as f64 / n as f64;
                    ((x - x0) * arc, x, py + m * (x - px))
                })
                .collect();
            curves.push(Curve { id: format!("zone{z}-separatrix{k}"), points });
        }
    }
    if opts.cycles && (2..=3).contains(&ps.zones.len()) {
        if let Ok(report) = solver::solve(ps, &SolveOptions::default()) {
            for (k, c) in report.verified_cycles().enumerate() {
                let (_, check) = dynamics::verify_candidate(ps, &c.ordinates, &IntegratorConfig::default());
                curves.push(Curve { id: format!("cycle{k}"), points: check.samples });
            }
        }
    }
    curves
}

pub fn to_csv(curves: &[Curve]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(["curve", "t", "x", "y"]).unwrap();
    for c in curves {
        for &(t, x, y) in &c.points {
            w.write_record([c.id.clone(), format!("{t}"), format!("{x}"), format!("{y}")]).unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Plain SVG: one polyline per curve plus the switching lines.
pub fn to_svg(ps: &PiecewiseSystem, curves: &[Curve], window: (f64, f64)) -> String {
    let size = 640.0;
    let k = size / (window.1 - window.0);
    let px = |x: f64| (x - window.0) * k;
    let py = |y: f64| (window.1 - y) * k;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for i in 0..ps.boundaries.len() {
        let x = px(ps.boundary_f64(i));
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"0\" x2=\"{x:.2}\" y2=\"{size}\" stroke=\"black\" stroke-dasharray=\"6 4\"/>"
        );
    }
    for c in curves {
        let (colour, width) = if c.id.starts_with("cycle") {
            ("#c0392b", 2.0)
        } else if c.id.contains("separatrix") {
            ("#2e6fbf", 1.2)
        } else {
            ("#9a9a9a", 0.8)
        };
        let pts: Vec<String> = c
            .points
            .iter()
            .filter(|p| p.1.is_finite() && p.2.is_finite())
            .map(|&(_, x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline id=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"{width}\" points=\"{}\"/>",
            c.id,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
