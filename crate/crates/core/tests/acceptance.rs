//! Acceptance criteria, one PASS/FAIL line each.

// Reference values and index formulas are kept in their original form.
#![allow(clippy::approx_constant, clippy::manual_div_ceil)]

use std::f64::consts::{FRAC_PI_2, TAU};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotormap::experiment::{
    run_config, BranchSpec, DeltaThetaSpec, ExperimentConfig, RunOutput, Theta1Spec,
};
use rotormap::invariant::{invariant_step, pendulum_omega};
use rotormap::map::{next_omega, residual};
use rotormap::orbit::{
    check_assumption, detect_period, max_error_against, omega_extrema, simulate,
};
use rotormap::series::one_step_deviation;
use rotormap::stability::step_jacobian;
use rotormap::tables::IRRATIONAL_SCALE;
use rotormap::{
    Branch, BranchOverride, BranchPolicy, InvariantModel, MapParams, PSign, PendulumModel,
    Rotation, State,
};

/// Collects sub-check failures for one criterion.
#[derive(Default)]
struct Criterion {
    checks: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn abs(&mut self, label: &str, actual: Option<f64>, expected: f64, tol: f64) {
        let ok = actual.is_some_and(|a| (a - expected).abs() <= tol);
        self.check(ok, || {
            format!("{label}: got {actual:?}, want {expected} ± {tol}")
        });
    }

    fn rel(&mut self, label: &str, actual: Option<f64>, expected: f64, tol: f64) {
        let ok = actual.is_some_and(|a| (a - expected).abs() <= tol * expected.abs());
        self.check(ok, || {
            format!(
                "{label}: got {actual:?}, want {expected} ± {}% rel",
                tol * 100.0
            )
        });
    }

    fn below(&mut self, label: &str, actual: Option<f64>, bound: f64) {
        let ok = actual.is_some_and(|a| a.abs() < bound);
        self.check(ok, || {
            format!("{label}: got {actual:?}, want |x| < {bound}")
        });
    }
}

fn config(dt: DeltaThetaSpec, sign: PSign, theta1: Theta1Spec, omega1: f64) -> ExperimentConfig {
    ExperimentConfig::new(dt, sign, theta1, omega1)
}

fn frac(p: u32, q: u32) -> DeltaThetaSpec {
    DeltaThetaSpec::TwoPiFraction { p, q }
}

const ZERO: Theta1Spec = Theta1Spec::Radians(0.0);
const HALF: Theta1Spec = Theta1Spec::HalfSteps { half_steps: 1 };
const TENTH: Theta1Spec = Theta1Spec::Radians(0.1);

fn run(c: &ExperimentConfig) -> RunOutput {
    run_config(c).expect("valid config")
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    let neg = PSign::Negative;
    for (n, t1, w1, expected) in [
        (3, ZERO, 12.0, 5.2507),
        (4, ZERO, 10.0, 1.4427),
        (4, HALF, 10.0, 2.8509),
        (6, ZERO, 8.0, 2.4646),
        (6, HALF, 8.0, 4.2155),
    ] {
        let r = run(&config(frac(1, n), neg, t1, w1)).report;
        c.abs(
            &format!("N={n} {t1:?} ω1={w1} max err"),
            r.max_err_pct,
            expected,
            0.01,
        );
    }
    let r = run(&config(frac(1, 3), neg, ZERO, 30.0)).report;
    c.rel("N=3 θ1=0 ω1=30 max err", r.max_err_pct, 3.3435e-3, 0.10);

    let r = run(&config(frac(1, 3), neg, TENTH, 12.0)).report;
    c.abs("N=3 θ1=0.1 ω1=12 drift", r.drift_pct, 44.9383, 0.05);
    let r = run(&config(frac(1, 3), neg, TENTH, 30.0)).report;
    c.abs("N=3 θ1=0.1 ω1=30 drift", r.drift_pct, 0.4000, 0.005);
    let r = run(&config(frac(1, 4), neg, TENTH, 30.0)).report;
    c.rel("N=4 θ1=0.1 ω1=30 drift", r.drift_pct, -1.6747e-3, 0.10);

    let r = run(&config(frac(1, 4), neg, TENTH, 10.0)).report;
    c.abs("N=4 θ1=0.1 ω1=10 steps", Some(r.steps as f64), 212.0, 2.0);
    let r = run(&config(frac(1, 6), neg, TENTH, 8.0)).report;
    c.abs("N=6 θ1=0.1 ω1=8 steps", Some(r.steps as f64), 516.0, 2.0);
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    let neg = PSign::Negative;
    let r = run(&config(frac(3, 7), neg, ZERO, 19.0)).report;
    c.abs("3/7 θ1=0 ω1=19 max err", r.max_err_pct, 10.9992, 0.02);
    let r = run(&config(frac(3, 7), neg, TENTH, 19.0)).report;
    c.abs("3/7 θ1=0.1 ω1=19 drift", r.drift_pct, 8.4108, 0.02);
    let r = run(&config(frac(2, 9), neg, ZERO, 8.0)).report;
    c.abs("2/9 θ1=0 ω1=8 max err", r.max_err_pct, 16.1407, 0.05);
    let r = run(&config(frac(2, 9), neg, TENTH, 9.0)).report;
    c.abs("2/9 θ1=0.1 ω1=9 drift", r.drift_pct, -0.1268, 0.005);
    let r = run(&config(frac(4, 21), neg, HALF, 8.0)).report;
    c.abs("4/21 θ1=dθ/2 ω1=8 max err", r.max_err_pct, 11.7000, 0.02);

    // Reference drifts below 1e-7 in magnitude.
    for (p, q, t1, w1) in [
        (3, 7, ZERO, 19.0),
        (3, 7, ZERO, 30.0),
        (3, 7, HALF, 22.0),
        (3, 7, HALF, 30.0),
        (2, 9, ZERO, 8.0),
        (2, 9, ZERO, 30.0),
        (2, 9, HALF, 9.0),
        (2, 9, HALF, 30.0),
        (2, 9, TENTH, 30.0),
        (4, 21, ZERO, 8.0),
        (4, 21, ZERO, 30.0),
        (4, 21, HALF, 8.0),
        (4, 21, HALF, 30.0),
        (4, 21, TENTH, 30.0),
    ] {
        let r = run(&config(frac(p, q), neg, t1, w1)).report;
        c.below(
            &format!("{p}/{q} {t1:?} ω1={w1} tiny drift"),
            r.drift_pct,
            1e-6,
        );
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    let pos = PSign::Positive;
    let r = run(&config(frac(1, 3), pos, ZERO, 12.0)).report;
    c.abs("P+ θ1=0 ω1=12 max err", r.max_err_pct, -0.2626, 0.005);
    let r = run(&config(frac(1, 3), pos, TENTH, 12.0).with_steps(300)).report;
    c.abs("P+ θ1=0.1 ω1=12 steps", Some(r.steps as f64), 300.0, 2.0);
    c.abs("P+ θ1=0.1 ω1=12 drift", r.drift_pct, -36.5406, 0.05);
    // The reference row uses a 300-step window; left to run, the orbit
    // loses its real root after 323 transitions.
    let free = run(&config(frac(1, 3), pos, TENTH, 12.0)).report;
    c.abs(
        "P+ θ1=0.1 ω1=12 free-run truncation",
        Some(free.steps as f64),
        323.0,
        0.0,
    );
    let r = run(&config(frac(1, 3), pos, TENTH, 30.0)).report;
    c.abs("P+ θ1=0.1 ω1=30 drift", r.drift_pct, -0.3509, 0.005);

    let base = config(frac(1, 3), pos, ZERO, 4.0).with_steps(3);
    let plain = run(&base
        .clone()
        .with_branch(BranchSpec::Uniform(Branch::Positive)));
    c.abs(
        "all-positive ω4",
        plain.trajectory.state(4).map(|s| s.omega),
        5.3789,
        5e-4,
    );
    let mixed = run(
        &base.with_branch(BranchSpec::Policy(BranchPolicy::default().with_override(
            BranchOverride {
                k: 3,
                branch: Branch::Negative,
                every: None,
            },
        ))),
    );
    let closure = mixed
        .trajectory
        .state(4)
        .map(|s| ((s.omega - 4.0) / 4.0).abs());
    c.check(closure.is_some_and(|x| x <= 1e-9), || {
        format!("mixed-branch closure {closure:?} > 1e-9")
    });
    c
}

fn criterion_4() -> Criterion {
    const JACOBIANS: [[f64; 2]; 6] = [
        [-1.5528, 1.0000],
        [-0.9923, 1.2422],
        [1.6049, 1.5428],
        [2.7796, 1.0000],
        [1.0402, 0.6482],
        [-0.7988, 0.8050],
    ];
    let mut c = Criterion::default();
    let out = run(&config(frac(1, 6), PSign::Negative, ZERO, 8.0));
    let params = out.experiment.params;
    let mono = rotormap::stability::monodromy(&out.trajectory, &params);
    c.check(mono.is_ok(), || format!("monodromy: {mono:?}"));
    let Ok(mono) = mono else { return c };
    for (i, want) in JACOBIANS.iter().enumerate() {
        let row = mono.jacobians[i].0[1];
        c.abs(&format!("J{} dθ", i + 1), Some(row[0]), want[0], 5e-4);
        c.abs(&format!("J{} dω", i + 1), Some(row[1]), want[1], 5e-4);
        c.abs(
            &format!("J{} top row", i + 1),
            Some(mono.jacobians[i].0[0][0]),
            1.0,
            0.0,
        );
    }
    let m = mono.matrix.0;
    for (label, got, want) in [
        ("M00", m[0][0], 1.0),
        ("M01", m[0][1], 0.0),
        ("M10", m[1][0], -0.0252),
        ("M11", m[1][1], 1.0),
    ] {
        c.abs(label, Some(got), want, 5e-4);
    }
    for (i, mag) in mono.eigenvalue_magnitudes().into_iter().enumerate() {
        c.abs(&format!("|λ{}|", i + 1), Some(mag), 1.0, 1e-6);
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    let dt_spec = DeltaThetaSpec::TwoPiScale(IRRATIONAL_SCALE);
    let dt = TAU * IRRATIONAL_SCALE;

    let r = run(&config(dt_spec, PSign::Negative, ZERO, 10.0));
    c.abs("ω1=10 max err", r.report.max_err_pct, 8.1788, 0.02);
    let (lo, hi) = omega_extrema(&r.trajectory);
    c.abs("ω1=10 max ω", Some(hi.omega), 10.5850, 0.005);
    c.abs("ω1=10 θ at max", Some(hi.theta), 0.8883, dt);
    c.abs("ω1=10 min ω", Some(lo.omega), 5.3506, 0.005);
    c.abs("ω1=10 θ at min", Some(lo.theta), 4.0319, dt);
    let r = run(&config(dt_spec, PSign::Negative, ZERO, 20.0)).report;
    c.rel("ω1=20 max err", r.max_err_pct, 1.7975e-2, 0.10);
    let r = run(&config(dt_spec, PSign::Negative, ZERO, 30.0)).report;
    c.rel("ω1=30 max err", r.max_err_pct, 1.3405e-3, 0.10);

    let r = run(&config(dt_spec, PSign::Positive, ZERO, 10.0));
    c.abs("P+ ω1=10 max err", r.report.max_err_pct, -0.3894, 0.005);
    let (lo, hi) = omega_extrema(&r.trajectory);
    c.abs("P+ ω1=10 min ω", Some(lo.omega), 9.2234, 0.005);
    c.abs("P+ ω1=10 max ω", Some(hi.omega), 12.9270, 0.005);
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    for (n, inv, pend, rel) in [
        (120, 0.2882, 3.5168, false),
        (1200, 2.8311e-3, 0.3100, true),
    ] {
        let out = run(&config(frac(1, n), PSign::Negative, ZERO, 6.4));
        let params = out.experiment.params;
        let model = PendulumModel::from_params(&params, 0.0, 6.4);
        let vs_pend = max_error_against(&out.trajectory, |t| {
            pendulum_omega(t, &model, params.g(), params.ell())
        })
        .map(|e| e.pct);
        if rel {
            c.rel(
                &format!("N={n} vs invariant"),
                out.report.max_err_pct,
                inv,
                0.10,
            );
            c.rel(&format!("N={n} vs pendulum"), vs_pend, pend, 0.10);
        } else {
            c.abs(
                &format!("N={n} vs invariant"),
                out.report.max_err_pct,
                inv,
                0.005,
            );
            c.abs(&format!("N={n} vs pendulum"), vs_pend, pend, 0.02);
        }
    }
    c
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// ω₁ above the velocity at which the positive-branch step stays feasible
/// with margin, for either sign of `P`.
fn random_omega(rng: &mut ChaCha8Rng, p: f64) -> f64 {
    let floor = 4.0 * p.abs().sqrt();
    rng.gen_range(floor..floor + 40.0)
}

fn periodicity(c: &mut Criterion, rng: &mut ChaCha8Rng) {
    for n in 3..=12u32 {
        for sign in [PSign::Negative, PSign::Positive] {
            let params = MapParams::standard(Rotation::submultiple(n).unwrap(), sign).unwrap();
            let dt = params.delta_theta();
            for m in 0..2 * n {
                let theta1 = m as f64 * dt / 2.0;
                let mut accepted = 0;
                while accepted < 20 {
                    let w1 = random_omega(rng, params.p_value());
                    let traj = simulate(
                        &params,
                        theta1,
                        w1,
                        4 * n as usize,
                        &BranchPolicy::default(),
                    )
                    .unwrap();
                    if traj.completed_steps() < 4 * n as usize
                        || !check_assumption(&traj, &params).satisfied
                    {
                        continue;
                    }
                    accepted += 1;
                    let period = detect_period(&traj, &params);
                    let closure = rel_diff(traj.state(n as usize + 1).unwrap().omega, w1);
                    c.check(period == Some(n as usize) && closure <= 1e-10, || {
                        format!(
                            "N={n} {sign:?} m={m} ω1={w1}: period {period:?}, closure {closure:e}"
                        )
                    });
                }
            }
        }
    }
}

/// Pairs `(a, b)` with `ω_a = ω_b` for `θ₁ = 0` (`half = false`) or
/// `θ₁ = Δθ/2` (`half = true`).
fn pairing_indices(n: usize, half: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        let pair = match (half, n.is_multiple_of(2)) {
            (false, true) => (n / 2 + i + 2, (n / 2 + 1).checked_sub(i)),
            (false, false) => ((n + 3) / 2 + i + 1, ((n + 1) / 2).checked_sub(i)),
            (true, true) => (n / 2 + i + 2, (n / 2).checked_sub(i)),
            (true, false) => ((n + 1) / 2 + i + 1, ((n + 1) / 2).checked_sub(i)),
        };
        if let (a, Some(b)) = pair {
            if b >= 1 && a <= n + 1 {
                out.push((a, b));
            }
        }
    }
    out
}

fn pairing(c: &mut Criterion, rng: &mut ChaCha8Rng) {
    for n in 3..=12u32 {
        let params =
            MapParams::standard(Rotation::submultiple(n).unwrap(), PSign::Negative).unwrap();
        for half in [false, true] {
            let pairs = pairing_indices(n as usize, half);
            c.check(!pairs.is_empty(), || format!("N={n}: no pairs"));
            let theta1 = if half {
                params.delta_theta() / 2.0
            } else {
                0.0
            };
            for _ in 0..5 {
                let w1 = random_omega(rng, params.p_value());
                let traj =
                    simulate(&params, theta1, w1, n as usize, &BranchPolicy::default()).unwrap();
                for &(a, b) in &pairs {
                    let (wa, wb) = (traj.state(a).unwrap().omega, traj.state(b).unwrap().omega);
                    c.check(rel_diff(wa, wb) <= 1e-10, || {
                        format!("N={n} half={half} ω1={w1}: ω_{a}={wa} vs ω_{b}={wb}")
                    });
                }
            }
        }
    }
}

fn invariant_conservation(c: &mut Criterion, rng: &mut ChaCha8Rng) {
    for _ in 0..20 {
        let n = rng.gen_range(3..=40);
        let sign = if rng.gen_bool(0.5) {
            PSign::Negative
        } else {
            PSign::Positive
        };
        let params = MapParams::standard(Rotation::submultiple(n).unwrap(), sign).unwrap();
        let theta1 = rng.gen_range(0.0..TAU);
        let w1 = random_omega(rng, params.p_value());
        let model = InvariantModel::new(&params, theta1, w1);
        let mut w = w1;
        let mut worst = 0.0f64;
        for k in 1..=1200 {
            let theta = params.rotation().angle_at(theta1, k);
            w = invariant_step(theta, w, params.p_value()).unwrap();
            let next_theta = params.rotation().angle_at(theta1, k + 1);
            worst = worst.max(rel_diff(model.energy(next_theta, w), model.e_bar));
        }
        c.check(worst <= 1e-10, || {
            format!("N={n} {sign:?} ω1={w1}: Ē drift {worst:e}")
        });
    }
}

fn residual_bound(c: &mut Criterion, rng: &mut ChaCha8Rng) {
    for _ in 0..50 {
        let scale = rng.gen_range(0.01..0.49);
        let sign = if rng.gen_bool(0.5) {
            PSign::Negative
        } else {
            PSign::Positive
        };
        let params = MapParams::standard(Rotation::turn_fraction(scale).unwrap(), sign).unwrap();
        let theta1 = rng.gen_range(0.0..TAU);
        let w1 = rng.gen_range(1.0..40.0);
        let traj = simulate(&params, theta1, w1, 1200, &BranchPolicy::default()).unwrap();
        for pair in traj.states.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let r = residual(a.theta, a.omega, b.omega, params.p_value());
            c.check(r.abs() <= 1e-9 * a.omega.powi(3), || {
                format!("k={}: residual {r:e}", a.k)
            });
        }
    }
}

fn jacobian_fd(c: &mut Criterion, rng: &mut ChaCha8Rng) {
    let mut tested = 0;
    while tested < 100 {
        let n = rng.gen_range(3..=24);
        let sign = if rng.gen_bool(0.5) {
            PSign::Negative
        } else {
            PSign::Positive
        };
        let params = MapParams::standard(Rotation::submultiple(n).unwrap(), sign).unwrap();
        let p = params.p_value();
        let theta = rng.gen_range(0.0..TAU);
        let omega = rng.gen_range(1.0..40.0);
        let f = |t: f64, w: f64| next_omega(t, w, p, Branch::Positive).0.ok();
        let (ht, hw) = (1e-6, 1e-6 * omega);
        let fd = (|| {
            let dt = (f(theta + ht, omega)? - f(theta - ht, omega)?) / (2.0 * ht);
            let dw = (f(theta, omega + hw)? - f(theta, omega - hw)?) / (2.0 * hw);
            Some([dt, dw])
        })();
        let Some(fd) = fd else { continue };
        if rotormap::map::discriminant(theta, omega, p) < 1e-3 {
            continue;
        }
        tested += 1;
        let j = step_jacobian(&State::new(1, theta, omega), &params)
            .unwrap()
            .0[1];
        let scale = j[0].abs().max(j[1].abs());
        let err = (j[0] - fd[0]).abs().max((j[1] - fd[1]).abs()) / scale;
        c.check(err <= 1e-5, || {
            format!("θ={theta} ω={omega} P={p}: {j:?} vs {fd:?}")
        });
    }
}

fn deviation_scaling(c: &mut Criterion) {
    for sign in [PSign::Negative, PSign::Positive] {
        let params = MapParams::standard(Rotation::submultiple(3).unwrap(), sign).unwrap();
        for w in [30.0, 40.0, 60.0, 100.0] {
            let a = one_step_deviation(FRAC_PI_2, w, params.p_value()).unwrap();
            let b = one_step_deviation(FRAC_PI_2, 2.0 * w, params.p_value()).unwrap();
            let ratio = a / b;
            c.check((ratio - 32.0).abs() <= 0.2 * 32.0, || {
                format!("{sign:?} ω={w}: ratio {ratio}")
            });
        }
    }
}

fn non_attraction(c: &mut Criterion) {
    let eps = 1e-3;
    let orbits = [
        (3, PSign::Negative, false, 12.0),
        (3, PSign::Negative, false, 30.0),
        (4, PSign::Negative, false, 10.0),
        (4, PSign::Negative, true, 10.0),
        (6, PSign::Negative, false, 8.0),
        (6, PSign::Negative, true, 8.0),
        (3, PSign::Positive, false, 12.0),
        (3, PSign::Positive, true, 30.0),
    ];
    for (n, sign, half, w1) in orbits {
        let params = MapParams::standard(Rotation::submultiple(n).unwrap(), sign).unwrap();
        let theta1 = if half {
            params.delta_theta() / 2.0
        } else {
            0.0
        };
        let steps = 10 * n as usize;
        let base = simulate(&params, theta1, w1, steps, &BranchPolicy::default()).unwrap();
        let pert = simulate(&params, theta1, w1 + eps, steps, &BranchPolicy::default()).unwrap();
        let period = detect_period(&pert, &params);
        let n = n as usize;
        let max_diff = (1..=n)
            .map(|k| (pert.state(k).unwrap().omega - base.state(k).unwrap().omega).abs())
            .fold(0.0, f64::max);
        let offset = pert.state(n + 1).unwrap().omega - w1;
        c.check(period == Some(n), || {
            format!("N={n} ω1={w1}: perturbed period {period:?}")
        });
        c.check(max_diff <= 10.0 * eps, || {
            format!("N={n} ω1={w1}: max diff {max_diff}")
        });
        c.check((offset.abs() - eps).abs() <= 1e-12, || {
            format!("N={n} ω1={w1}: offset {offset:e}")
        });
    }
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    periodicity(&mut c, &mut rng);
    pairing(&mut c, &mut rng);
    invariant_conservation(&mut c, &mut rng);
    residual_bound(&mut c, &mut rng);
    jacobian_fd(&mut c, &mut rng);
    deviation_scaling(&mut c);
    non_attraction(&mut c);
    c
}

fn main() -> ExitCode {
    type Run = fn() -> Criterion;
    let criteria: [(&str, Run); 7] = [
        ("1 rows with Δθ=2π/N, P<0", criterion_1),
        ("2 rows with Δθ=2πp/q, P<0", criterion_2),
        (
            "3 rows with Δθ=2π/3, P>0, and the mixed-branch orbit",
            criterion_3,
        ),
        ("4 monodromy of the N=6 orbit", criterion_4),
        ("5 irrational rotation", criterion_5),
        ("6 small-step limit", criterion_6),
        ("7 property suites", criterion_7),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let c = f();
        let verdict = if c.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!("{verdict} criterion {name} ({} checks)", c.checks);
        for msg in c.failures.iter().take(20) {
            println!("    {msg}");
        }
        if !c.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
