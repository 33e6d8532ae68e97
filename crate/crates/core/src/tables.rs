//! Regenerates the reference simulation tables and spot checks, side by
//! side with the reference values.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiment::{run_config, BranchSpec, DeltaThetaSpec, ExperimentConfig, Theta1Spec};
use crate::invariant::pendulum_omega;
use crate::invariant::PendulumModel;
use crate::map::Branch;
use crate::orbit::{max_error_against, omega_extrema, simulate, BranchOverride, BranchPolicy};
use crate::params::{MapParams, PSign, Rotation};
use crate::stability::monodromy;

/// `√2/5` as a turn fraction.
pub const IRRATIONAL_SCALE: f64 = 0.282_842_712_474_619;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    Abs(f64),
    Rel(f64),
    /// Reference is negligible; accept `|actual| < bound`.
    Below(f64),
}

impl Tolerance {
    /// Default rule for table cells: ±0.01 for `|v| ≥ 0.1`, ±10 % below
    /// that, and `|actual| < 1e-6` when the reference is below `1e-7`.
    pub fn for_value(expected: f64) -> Self {
        let a = expected.abs();
        if a < 1e-7 {
            Tolerance::Below(1e-6)
        } else if a < 0.1 {
            Tolerance::Rel(0.10)
        } else {
            Tolerance::Abs(0.01)
        }
    }

    pub fn accepts(&self, expected: f64, actual: f64) -> bool {
        if !actual.is_finite() {
            return false;
        }
        match *self {
            Tolerance::Abs(t) => (actual - expected).abs() <= t,
            Tolerance::Rel(r) => (actual - expected).abs() <= r * expected.abs(),
            Tolerance::Below(b) => actual.abs() < b,
        }
    }

    fn describe(&self) -> String {
        match *self {
            Tolerance::Abs(t) => format!("±{t:e}"),
            Tolerance::Rel(r) => format!("±{}% rel", r * 100.0),
            Tolerance::Below(b) => format!("|x|<{b:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub section: String,
    pub case: String,
    pub quantity: String,
    pub expected: f64,
    pub actual: Option<f64>,
    pub tolerance: Tolerance,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TablesReport {
    pub cells: Vec<Cell>,
}

impl TablesReport {
    fn push(
        &mut self,
        section: &str,
        case: &str,
        quantity: &str,
        expected: f64,
        actual: Option<f64>,
        tolerance: Tolerance,
    ) {
        let pass = actual.is_some_and(|a| tolerance.accepts(expected, a));
        self.cells.push(Cell {
            section: section.into(),
            case: case.into(),
            quantity: quantity.into(),
            expected,
            actual,
            tolerance,
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }

    /// Plain-text side-by-side document.
    pub fn to_markdown(&self) -> String {
        let mut s = String::from(
            "| section | case | quantity | expected | actual | tolerance | result |\n|---|---|---|---|---|---|---|\n",
        );
        for c in &self.cells {
            let actual = c
                .actual
                .map_or_else(|| "n/a".to_string(), |a| format!("{a:.6e}"));
            let _ = writeln!(
                s,
                "| {} | {} | {} | {:.6e} | {} | {} | {} |",
                c.section,
                c.case,
                c.quantity,
                c.expected,
                actual,
                c.tolerance.describe(),
                if c.pass { "pass" } else { "FAIL" }
            );
        }
        let passed = self.cells.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "\n{passed}/{} cells pass", self.cells.len());
        s
    }
}

#[derive(Debug, Clone, Copy)]
enum Start {
    Zero,
    HalfStep,
    At(f64),
}

impl Start {
    fn spec(self) -> Theta1Spec {
        match self {
            Start::Zero => Theta1Spec::Radians(0.0),
            Start::HalfStep => Theta1Spec::HalfSteps { half_steps: 1 },
            Start::At(t) => Theta1Spec::Radians(t),
        }
    }

    fn label(self) -> String {
        match self {
            Start::Zero => "0".into(),
            Start::HalfStep => "dθ/2".into(),
            Start::At(t) => format!("{t}"),
        }
    }
}

/// One reference row: `(p/q, θ₁, ω₁)`, its window and reference values.
#[derive(Debug, Clone, Copy)]
struct Row {
    table: &'static str,
    p: u32,
    q: u32,
    sign: PSign,
    start: Start,
    omega1: f64,
    window: usize,
    max_err: f64,
    /// `None` marks a periodic row with no drift column.
    drift: Option<f64>,
    /// Reported truncation point, when the run ends early.
    steps: Option<usize>,
}

impl Row {
    #[allow(clippy::too_many_arguments)]
    const fn new(
        table: &'static str,
        p: u32,
        q: u32,
        sign: PSign,
        start: Start,
        omega1: f64,
        max_err: f64,
        drift: Option<f64>,
    ) -> Self {
        Row {
            table,
            p,
            q,
            sign,
            start,
            omega1,
            window: 1200,
            max_err,
            drift,
            steps: None,
        }
    }

    const fn truncated(mut self, steps: usize) -> Self {
        self.steps = Some(steps);
        self
    }

    const fn window(mut self, window: usize) -> Self {
        self.window = window;
        self.steps = Some(window);
        self
    }

    fn config(&self) -> ExperimentConfig {
        ExperimentConfig::new(
            DeltaThetaSpec::TwoPiFraction {
                p: self.p,
                q: self.q,
            },
            self.sign,
            self.start.spec(),
            self.omega1,
        )
        .with_steps(self.window)
    }

    fn case(&self) -> String {
        let sign = match self.sign {
            PSign::Positive => "+",
            PSign::Negative => "-",
        };
        format!(
            "p/q={}/{} P{} θ1={} ω1={}",
            self.p,
            self.q,
            sign,
            self.start.label(),
            self.omega1
        )
    }
}

use PSign::{Negative as NEG, Positive as POS};
use Start::{At, HalfStep as HALF, Zero as ZERO};

#[allow(clippy::approx_constant)]
const ROWS: &[Row] = &[
    // Δθ = 2π/N, P < 0.
    Row::new("submultiple", 1, 3, NEG, ZERO, 12.0, 5.2507, None),
    Row::new("submultiple", 1, 3, NEG, ZERO, 30.0, 3.3435e-3, None),
    Row::new("submultiple", 1, 3, NEG, HALF, 12.0, 5.2507, None),
    Row::new("submultiple", 1, 3, NEG, HALF, 30.0, 3.3435e-3, None),
    Row::new(
        "submultiple",
        1,
        3,
        NEG,
        At(0.1),
        12.0,
        -49.7107,
        Some(44.9383),
    ),
    Row::new(
        "submultiple",
        1,
        3,
        NEG,
        At(0.1),
        30.0,
        -0.4389,
        Some(0.4000),
    ),
    Row::new("submultiple", 1, 4, NEG, ZERO, 10.0, 1.4427, None),
    Row::new("submultiple", 1, 4, NEG, ZERO, 30.0, 5.4332e-4, None),
    Row::new("submultiple", 1, 4, NEG, HALF, 10.0, 2.8509, None),
    Row::new("submultiple", 1, 4, NEG, HALF, 30.0, 4.0290e-4, None),
    Row::new(
        "submultiple",
        1,
        4,
        NEG,
        At(0.1),
        10.0,
        65.6032,
        Some(-13.5048),
    )
    .truncated(212),
    Row::new(
        "submultiple",
        1,
        4,
        NEG,
        At(0.1),
        30.0,
        2.3182e-3,
        Some(-1.6747e-3),
    ),
    Row::new("submultiple", 1, 6, NEG, ZERO, 8.0, 2.4646, None),
    Row::new("submultiple", 1, 6, NEG, ZERO, 30.0, 9.4188e-5, None),
    Row::new("submultiple", 1, 6, NEG, HALF, 8.0, 4.2155, None),
    Row::new("submultiple", 1, 6, NEG, HALF, 30.0, 9.2024e-5, None),
    Row::new(
        "submultiple",
        1,
        6,
        NEG,
        At(0.1),
        8.0,
        68.2575,
        Some(-7.4799),
    )
    .truncated(516),
    Row::new(
        "submultiple",
        1,
        6,
        NEG,
        At(0.1),
        30.0,
        9.4333e-5,
        Some(-5.0463e-8),
    ),
    // Δθ = 2π·p/q, P < 0.
    Row::new("fraction", 3, 7, NEG, ZERO, 19.0, 10.9992, Some(-7.1019e-9)),
    Row::new("fraction", 3, 7, NEG, ZERO, 30.0, 0.1312, Some(-7.7179e-10)),
    Row::new("fraction", 3, 7, NEG, HALF, 22.0, 13.5781, Some(8.2037e-9)),
    Row::new("fraction", 3, 7, NEG, HALF, 30.0, 0.3451, Some(5.9093e-12)),
    Row::new("fraction", 3, 7, NEG, At(0.1), 19.0, 18.1939, Some(8.4108)),
    Row::new(
        "fraction",
        3,
        7,
        NEG,
        At(0.1),
        30.0,
        0.1383,
        Some(4.5355e-3),
    ),
    Row::new("fraction", 2, 9, NEG, ZERO, 8.0, 16.1407, Some(7.1658e-9)),
    Row::new(
        "fraction",
        2,
        9,
        NEG,
        ZERO,
        30.0,
        2.7761e-4,
        Some(-2.1790e-11),
    ),
    Row::new("fraction", 2, 9, NEG, HALF, 9.0, 6.1096, Some(2.9724e-11)),
    Row::new(
        "fraction",
        2,
        9,
        NEG,
        HALF,
        30.0,
        2.6540e-4,
        Some(7.1054e-14),
    ),
    Row::new("fraction", 2, 9, NEG, At(0.1), 9.0, 2.8702, Some(-0.1268)),
    Row::new(
        "fraction",
        2,
        9,
        NEG,
        At(0.1),
        30.0,
        2.8351e-4,
        Some(-1.9457e-11),
    ),
    Row::new("fraction", 4, 21, NEG, ZERO, 8.0, 7.4877, Some(3.3809e-10)),
    Row::new(
        "fraction",
        4,
        21,
        NEG,
        ZERO,
        30.0,
        1.5035e-4,
        Some(2.3791e-11),
    ),
    Row::new(
        "fraction",
        4,
        21,
        NEG,
        HALF,
        8.0,
        11.7000,
        Some(-1.2212e-12),
    ),
    Row::new(
        "fraction",
        4,
        21,
        NEG,
        HALF,
        30.0,
        1.4776e-4,
        Some(-3.7896e-13),
    ),
    Row::new(
        "fraction",
        4,
        21,
        NEG,
        At(0.1),
        8.0,
        9.4883,
        Some(-6.8383e-4),
    ),
    Row::new(
        "fraction",
        4,
        21,
        NEG,
        At(0.1),
        30.0,
        1.5133e-4,
        Some(2.0416e-11),
    ),
    // Δθ = 2π/3, P > 0.
    Row::new("positive-p", 1, 3, POS, ZERO, 12.0, -0.2626, None),
    Row::new("positive-p", 1, 3, POS, ZERO, 30.0, -2.2774e-3, None),
    Row::new("positive-p", 1, 3, POS, HALF, 12.0, -0.2626, None),
    Row::new("positive-p", 1, 3, POS, HALF, 30.0, -2.2774e-3, None),
    Row::new(
        "positive-p",
        1,
        3,
        POS,
        At(0.1),
        12.0,
        57.5809,
        Some(-36.5406),
    )
    .window(300),
    Row::new(
        "positive-p",
        1,
        3,
        POS,
        At(0.1),
        30.0,
        0.3522,
        Some(-0.3509),
    ),
];

/// Tolerances that the acceptance criteria pin more loosely than the
/// default rule.
fn override_tolerance(row: &Row, quantity: &str) -> Option<Tolerance> {
    let key = (row.table, row.p, row.q, row.omega1 as u32, quantity);
    match key {
        ("submultiple", 1, 3, 12, "drift_pct") => Some(Tolerance::Abs(0.05)),
        ("submultiple", 1, 3, 30, "drift_pct") => Some(Tolerance::Abs(0.005)),
        ("fraction", 3, 7, 19, _) => Some(Tolerance::Abs(0.02)),
        ("fraction", 2, 9, 8, "max_err_pct") => Some(Tolerance::Abs(0.05)),
        ("fraction", 2, 9, 9, "drift_pct") => Some(Tolerance::Abs(0.005)),
        ("fraction", 4, 21, 8, "max_err_pct") if matches!(row.start, Start::HalfStep) => {
            Some(Tolerance::Abs(0.02))
        }
        ("positive-p", 1, 3, 12, "max_err_pct")
            if matches!(row.start, Start::Zero | Start::HalfStep) =>
        {
            Some(Tolerance::Abs(0.005))
        }
        ("positive-p", 1, 3, 12, "drift_pct") => Some(Tolerance::Abs(0.05)),
        ("positive-p", 1, 3, 30, "drift_pct") => Some(Tolerance::Abs(0.005)),
        _ => None,
    }
}

fn table_rows(report: &mut TablesReport) -> Result<()> {
    for row in ROWS {
        let run = run_config(&row.config())?;
        let r = &run.report;
        let case = row.case();
        let tol = |q: &str, v: f64| override_tolerance(row, q).unwrap_or(Tolerance::for_value(v));

        report.push(
            row.table,
            &case,
            "max_err_pct",
            row.max_err,
            r.max_err_pct,
            tol("max_err_pct", row.max_err),
        );
        match row.drift {
            Some(d) => report.push(
                row.table,
                &case,
                "drift_pct",
                d,
                r.drift_pct,
                tol("drift_pct", d),
            ),
            None => {
                report.push(
                    row.table,
                    &case,
                    "drift_pct (periodic)",
                    0.0,
                    r.drift_pct,
                    Tolerance::Below(1e-6),
                );
                let periodic = if r.periodic { 1.0 } else { 0.0 };
                report.push(
                    row.table,
                    &case,
                    "periodic",
                    1.0,
                    Some(periodic),
                    Tolerance::Abs(0.0),
                );
            }
        }
        let steps = row.steps.unwrap_or(row.window);
        report.push(
            row.table,
            &case,
            "steps",
            steps as f64,
            Some(r.steps as f64),
            Tolerance::Abs(2.0),
        );
    }
    Ok(())
}

fn monodromy_case(report: &mut TablesReport) -> Result<()> {
    const JACOBIANS: [[f64; 2]; 6] = [
        [-1.5528, 1.0000],
        [-0.9923, 1.2422],
        [1.6049, 1.5428],
        [2.7796, 1.0000],
        [1.0402, 0.6482],
        [-0.7988, 0.8050],
    ];
    let section = "monodromy";
    let case = "N=6 θ1=0 ω1=8";
    let params = MapParams::standard(Rotation::submultiple(6)?, PSign::Negative)?;
    let traj = simulate(&params, 0.0, 8.0, 1200, &BranchPolicy::default())?;
    let mono = monodromy(&traj, &params).ok();
    let tol = Tolerance::Abs(5e-4);
    for (i, expected) in JACOBIANS.iter().enumerate() {
        let j = mono.as_ref().map(|m| m.jacobians[i].0[1]);
        report.push(
            section,
            case,
            &format!("J{} dω'/dθ", i + 1),
            expected[0],
            j.map(|r| r[0]),
            tol,
        );
        report.push(
            section,
            case,
            &format!("J{} dω'/dω", i + 1),
            expected[1],
            j.map(|r| r[1]),
            tol,
        );
    }
    let m = mono.as_ref().map(|m| m.matrix.0);
    report.push(section, case, "M[0][0]", 1.0, m.map(|m| m[0][0]), tol);
    report.push(section, case, "M[0][1]", 0.0, m.map(|m| m[0][1]), tol);
    report.push(section, case, "M[1][0]", -0.0252, m.map(|m| m[1][0]), tol);
    report.push(section, case, "M[1][1]", 1.0, m.map(|m| m[1][1]), tol);
    for i in 0..2 {
        let mag = mono.as_ref().map(|m| m.eigenvalue_magnitudes()[i]);
        report.push(
            section,
            case,
            &format!("|λ{}|", i + 1),
            1.0,
            mag,
            Tolerance::Abs(1e-6),
        );
    }
    Ok(())
}

fn irrational_case(report: &mut TablesReport) -> Result<()> {
    let section = "irrational";
    let rotation = Rotation::turn_fraction(IRRATIONAL_SCALE)?;
    let dt = rotation.radians();
    let theta_tol = Tolerance::Abs(dt);
    let omega_tol = Tolerance::Abs(0.005);
    let base = |sign, omega1| {
        ExperimentConfig::new(
            DeltaThetaSpec::TwoPiScale(IRRATIONAL_SCALE),
            sign,
            Theta1Spec::Radians(0.0),
            omega1,
        )
    };

    for (omega1, expected, tol) in [
        (10.0, 8.1788, Tolerance::Abs(0.02)),
        (20.0, 1.7975e-2, Tolerance::Rel(0.10)),
        (30.0, 1.3405e-3, Tolerance::Rel(0.10)),
    ] {
        let run = run_config(&base(PSign::Negative, omega1))?;
        let case = format!("P- θ1=0 ω1={omega1}");
        report.push(
            section,
            &case,
            "max_err_pct",
            expected,
            run.report.max_err_pct,
            tol,
        );
        if omega1 == 10.0 {
            let (lo, hi) = omega_extrema(&run.trajectory);
            report.push(section, &case, "max ω", 10.5850, Some(hi.omega), omega_tol);
            report.push(
                section,
                &case,
                "θ at max ω",
                0.8883,
                Some(hi.theta),
                theta_tol,
            );
            report.push(section, &case, "min ω", 5.3506, Some(lo.omega), omega_tol);
            report.push(
                section,
                &case,
                "θ at min ω",
                4.0319,
                Some(lo.theta),
                theta_tol,
            );
        }
    }

    let run = run_config(&base(PSign::Positive, 10.0))?;
    let case = "P+ θ1=0 ω1=10";
    report.push(
        section,
        case,
        "max_err_pct",
        -0.3894,
        run.report.max_err_pct,
        Tolerance::Abs(0.005),
    );
    let (lo, hi) = omega_extrema(&run.trajectory);
    report.push(section, case, "min ω", 9.2234, Some(lo.omega), omega_tol);
    report.push(
        section,
        case,
        "θ at min ω",
        0.8883,
        Some(lo.theta),
        theta_tol,
    );
    report.push(section, case, "max ω", 12.9270, Some(hi.omega), omega_tol);
    report.push(
        section,
        case,
        "θ at max ω",
        4.0319,
        Some(hi.theta),
        theta_tol,
    );
    Ok(())
}

fn limit_case(report: &mut TablesReport) -> Result<()> {
    let section = "small-step";
    for (n, invariant, pendulum, tol_inv, tol_pend) in [
        (
            120u32,
            0.2882,
            3.5168,
            Tolerance::Abs(0.005),
            Tolerance::Abs(0.02),
        ),
        (
            1200,
            2.8311e-3,
            0.3100,
            Tolerance::Rel(0.10),
            Tolerance::Rel(0.10),
        ),
    ] {
        let config = ExperimentConfig::new(
            DeltaThetaSpec::TwoPiFraction { p: 1, q: n },
            PSign::Negative,
            Theta1Spec::Radians(0.0),
            6.4,
        );
        let run = run_config(&config)?;
        let params = run.experiment.params;
        let pend = PendulumModel::from_params(&params, 0.0, 6.4);
        let vs_pend = max_error_against(&run.trajectory, |t| {
            pendulum_omega(t, &pend, params.g(), params.ell())
        });
        let case = format!("N={n} θ1=0 ω1=6.4");
        report.push(
            section,
            &case,
            "max_err_pct vs invariant",
            invariant,
            run.report.max_err_pct,
            tol_inv,
        );
        report.push(
            section,
            &case,
            "max_err_pct vs pendulum",
            pendulum,
            vs_pend.map(|e| e.pct),
            tol_pend,
        );
    }
    Ok(())
}

fn positive_p_case(report: &mut TablesReport) -> Result<()> {
    let section = "mixed-branch";
    let mk = |branch: BranchSpec| {
        ExperimentConfig::new(
            DeltaThetaSpec::TwoPiFraction { p: 1, q: 3 },
            PSign::Positive,
            Theta1Spec::Radians(0.0),
            4.0,
        )
        .with_steps(3)
        .with_branch(branch)
    };
    let plain = run_config(&mk(BranchSpec::Uniform(Branch::Positive)))?;
    let w4 = plain.trajectory.state(4).map(|s| s.omega);
    report.push(
        section,
        "θ1=0 ω1=4 all positive",
        "ω4",
        5.3789,
        w4,
        Tolerance::Abs(5e-4),
    );
    report.push(
        section,
        "θ1=0 ω1=4 all positive",
        "assumption satisfied",
        0.0,
        Some(if plain.report.assumption_satisfied {
            1.0
        } else {
            0.0
        }),
        Tolerance::Abs(0.0),
    );

    let mixed = run_config(&mk(BranchSpec::Policy(
        BranchPolicy::default().with_override(BranchOverride {
            k: 3,
            branch: Branch::Negative,
            every: None,
        }),
    )))?;
    let closure = mixed
        .trajectory
        .state(4)
        .map(|s| (s.omega - 4.0).abs() / 4.0);
    report.push(
        section,
        "θ1=0 ω1=4 negative root at θ=4π/3",
        "|ω4−ω1|/ω1",
        0.0,
        closure,
        Tolerance::Below(1e-9),
    );
    Ok(())
}

/// Run every table row and spot check.
pub fn reproduce_tables() -> Result<TablesReport> {
    let mut report = TablesReport::default();
    table_rows(&mut report)?;
    monodromy_case(&mut report)?;
    irrational_case(&mut report)?;
    limit_case(&mut report)?;
    positive_p_case(&mut report)?;
    Ok(report)
}
