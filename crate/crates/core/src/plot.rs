//! Static figure data: polar SVG plots of `(θ_k, ω_k)` and the gridded
//! cobweb dataset.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::invariant::InvariantModel;
use crate::map::{next_omega, Branch};
use crate::orbit::Trajectory;
use crate::params::MapParams;

const SIZE: f64 = 600.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 260.0;
const CURVE_SAMPLES: usize = 360;

fn polar_xy(theta: f64, r: f64) -> (f64, f64) {
    (CENTER + r * theta.cos(), CENTER - r * theta.sin())
}

/// Render a polar plot: exact states in black, the invariant prediction as
/// a closed red curve. The radial coordinate is `ω`.
///
/// When `period` is given the first period is also drawn as a closed black
/// polygon. If the prediction has no real value somewhere on the circle the
/// red curve is left out and a note says so.
pub fn polar_svg(trajectory: &Trajectory, model: &InvariantModel, period: Option<usize>) -> String {
    let curve: Option<Vec<(f64, f64)>> = (0..CURVE_SAMPLES)
        .map(|i| {
            let t = TAU * i as f64 / CURVE_SAMPLES as f64;
            model.omega_pred(t).ok().map(|w| (t, w))
        })
        .collect();

    let max_w = trajectory
        .omegas()
        .chain(curve.iter().flatten().map(|&(_, w)| w))
        .fold(0.0f64, f64::max);
    let scale = if max_w > 0.0 { RADIUS / max_w } else { 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Radial grid.
    for i in 1..=4 {
        let r = RADIUS * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r##"<circle cx="{CENTER}" cy="{CENTER}" r="{r:.3}" fill="none" stroke="#cccccc"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.3}" y="{:.3}" font-size="10" fill="#777777">{:.3}</text>"##,
            CENTER + r + 2.0,
            CENTER - 2.0,
            r / scale
        );
    }
    for (label, t) in [
        ("0", 0.0),
        ("π/2", TAU / 4.0),
        ("π", TAU / 2.0),
        ("3π/2", 0.75 * TAU),
    ] {
        let (x, y) = polar_xy(t, RADIUS);
        let _ = writeln!(
            s,
            r##"<line x1="{CENTER}" y1="{CENTER}" x2="{x:.3}" y2="{y:.3}" stroke="#cccccc"/>"##
        );
        let (lx, ly) = polar_xy(t, RADIUS + 18.0);
        let _ = writeln!(
            s,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-size="12" text-anchor="middle">{label}</text>"#
        );
    }

    match &curve {
        Some(points) => {
            s.push_str(r#"<polygon class="prediction" fill="none" stroke="red" stroke-width="1.5" points=""#);
            for (i, &(t, w)) in points.iter().enumerate() {
                let (x, y) = polar_xy(t, w * scale);
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{x:.3},{y:.3}");
            }
            s.push_str("\"/>\n");
        }
        None => {
            s.push_str(
                "<!-- prediction unavailable: negative radicand on part of the circle -->\n",
            );
            s.push_str(
                r#"<text class="note" x="10" y="20" font-size="12">prediction curve omitted (no real value on part of the circle)</text>"#,
            );
            s.push('\n');
        }
    }

    if let Some(n) = period.filter(|&n| n <= trajectory.completed_steps()) {
        s.push_str(
            r#"<polygon class="orbit" fill="none" stroke="black" stroke-width="1" points=""#,
        );
        for (i, st) in trajectory.states[..n].iter().enumerate() {
            let (x, y) = polar_xy(st.theta, st.omega * scale);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.3},{y:.3}");
        }
        s.push_str("\"/>\n");
    }

    s.push_str("<g class=\"states\" fill=\"black\">\n");
    for st in &trajectory.states {
        let (x, y) = polar_xy(st.theta, st.omega * scale);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2"/>"#);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    /// From the identity surface up or down to the map surface.
    Vertical,
    /// Along the angle axis by one rotation step.
    AlongTheta,
    /// Along the velocity axis back to the identity surface.
    AlongOmega,
}

/// A segment between two points `(θ, ω_k, ω_{k+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub k: usize,
    pub from: [f64; 3],
    pub to: [f64; 3],
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.from
            .iter()
            .zip(&self.to)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Surfaces and orbit path for a cobweb-style figure.
///
/// `surface[i][j]` is the positive-branch `ω'` at `(theta_grid[j],
/// omega_grid[i])`, `None` where the step has no positive real solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CobwebData {
    pub theta_grid: Vec<f64>,
    pub omega_grid: Vec<f64>,
    pub surface: Vec<Vec<Option<f64>>>,
    /// The identity surface `ω' = ω`, one value per `omega_grid` row.
    pub identity: Vec<f64>,
    pub path: Vec<Segment>,
}

pub fn cobweb_data(
    params: &MapParams,
    trajectory: &Trajectory,
    theta_grid: &[f64],
    omega_grid: &[f64],
) -> CobwebData {
    let p = params.p_value();
    let surface = omega_grid
        .iter()
        .map(|&w| {
            theta_grid
                .iter()
                .map(|&t| next_omega(t, w, p, Branch::Positive).0.ok())
                .collect()
        })
        .collect();

    let dt = params.delta_theta();
    let mut path = Vec::with_capacity(3 * trajectory.completed_steps());
    for pair in trajectory.states.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        path.push(Segment {
            kind: SegmentKind::Vertical,
            k: a.k,
            from: [a.theta, a.omega, a.omega],
            to: [a.theta, a.omega, b.omega],
        });
        path.push(Segment {
            kind: SegmentKind::AlongTheta,
            k: a.k,
            from: [a.theta, a.omega, b.omega],
            to: [a.theta + dt, a.omega, b.omega],
        });
        path.push(Segment {
            kind: SegmentKind::AlongOmega,
            k: a.k,
            from: [a.theta + dt, a.omega, b.omega],
            to: [a.theta + dt, b.omega, b.omega],
        });
    }

    CobwebData {
        theta_grid: theta_grid.to_vec(),
        omega_grid: omega_grid.to_vec(),
        surface,
        identity: omega_grid.to_vec(),
        path,
    }
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
