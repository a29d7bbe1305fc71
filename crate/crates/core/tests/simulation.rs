//! Behaviour of the floating point layer against closed forms and exact verdicts.

mod common;

use common::{load, rng};
use funcobs::error::Error;
use funcobs::format::{parse_observer_file, parse_rational_function};
use funcobs::polymat::Polynomial;
use funcobs::sim::{
    convergence_metric, realize, simulate, suggest_horizon, to_csv_string, InputSignal, Scenario, SinusoidTerm,
    StateSpaceRealization, DEFAULT_THRESHOLD,
};
use funcobs::witness::{RationalFunction, RationalFunctionMatrix};
use funcobs::{Matrix, SystemSextuple};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

fn rf(text: &str) -> RationalFunction {
    parse_rational_function(text).unwrap()
}

/// Proper stable entry with denominator `(s + a)(s + b)` and a random numerator.
fn random_stable_entry(r: &mut impl Rng) -> RationalFunction {
    let a = r.random_range(1..=5i64);
    let b = r.random_range(1..=5i64);
    let den = Polynomial::from_ints(&[a * b, a + b, 1]);
    let num = Polynomial::from_ints(&[r.random_range(-3..=3), r.random_range(-3..=3), r.random_range(-2..=2)]);
    RationalFunction::new(num, den).unwrap()
}

#[test]
fn realization_matches_transfer_matrix() {
    let mut r = rng(7);
    for _ in 0..10 {
        let n = RationalFunctionMatrix::from_fn(2, 2, |_, _| random_stable_entry(&mut r));
        let real = realize(&n).unwrap();
        assert!(real.spectral_abscissa() < 0.0);
        for _ in 0..20 {
            let s = Complex64::new(r.random_range(-0.5..3.0), r.random_range(-4.0..4.0));
            let want = n.eval_complex(s);
            let got = real.transfer_at(s);
            for i in 0..2 {
                for j in 0..2 {
                    let err = (got[(i, j)] - want[i][j]).norm();
                    assert!(err <= 1e-9 * want[i][j].norm().max(1.0), "{} at {s}", n.get(i, j));
                }
            }
        }
    }
}

#[test]
fn first_order_lag_realization() {
    let n = RationalFunctionMatrix::from_fn(1, 1, |_, _| rf("1/(s+1)"));
    let r = realize(&n).unwrap();
    assert_eq!((r.g[(0, 0)], r.h[(0, 0)], r.q[(0, 0)], r.r[(0, 0)]), (-1.0, 1.0, 1.0, 0.0));
}

#[test]
fn static_observer_is_exact_on_sec6c() {
    let s = load("sec6c").system;
    let obs = StateSpaceRealization::static_gain(DMatrix::from_row_slice(1, 2, &[1.0, 0.0]));
    let sc = Scenario {
        x0: vec![1.0, -2.0],
        xi0: vec![],
        input: InputSignal::Zero,
        horizon: 5.0,
        step: 0.01,
    };
    let traj = simulate(&s, &obs, &sc).unwrap();
    assert!(traj.e.iter().all(|e| e[0] == 0.0));
    let m = convergence_metric(&traj, DEFAULT_THRESHOLD).unwrap();
    assert!(m.decayed);
    assert_eq!(m.final_sup, 0.0);
    let csv = to_csv_string(&traj);
    assert!(csv.starts_with("t,x_1,x_2,z_1,zhat_1,e_1\n"));
    assert_eq!(csv.lines().count(), traj.len() + 1);
}

#[test]
fn zero_input_stable_cascade_decays_below_modal_bound() {
    let s = SystemSextuple::without_input(
        Matrix::from_ints(&[[-1, 1], [0, -2]]),
        Matrix::from_ints(&[[1, 0]]),
        Matrix::from_ints(&[[0, 1]]),
    )
    .unwrap();
    let obs = realize(&RationalFunctionMatrix::from_fn(1, 1, |_, _| rf("(s+3)/(s^2+3s+2)"))).unwrap();
    let horizon = 2.0 * suggest_horizon(&s, &obs).unwrap();
    let sc = Scenario {
        x0: vec![1.0, -1.0],
        xi0: vec![0.3, -0.2],
        input: InputSignal::Zero,
        horizon,
        step: 0.01,
    };
    let traj = simulate(&s, &obs, &sc).unwrap();
    let m = convergence_metric(&traj, 1e-6).unwrap();
    assert!(m.decayed, "final_sup {}", m.final_sup);
}

#[test]
fn exact_observers_decay_for_random_initial_conditions() {
    let mut r = rng(11);
    let cases = [
        ("sec6c", r#"{"R": [[1, 0]]}"#),
        ("demo_lag", r#"{"N": [["1/(s+1)"]]}"#),
        ("demo_output_copy", r#"{"N": [["1"]]}"#),
    ];
    for (name, observer) in cases {
        let s = load(name).system;
        let obs = parse_observer_file(observer).unwrap().realization().unwrap();
        for trial in 0..20 {
            let input = match (s.m(), trial % 3) {
                (0, _) => InputSignal::Zero,
                (m, 0) => InputSignal::Constant { value: vec![r.random_range(-1.0..1.0); m] },
                (m, 1) => InputSignal::Sinusoids {
                    channels: m,
                    terms: vec![SinusoidTerm {
                        channel: 0,
                        amplitude: r.random_range(0.5..2.0),
                        frequency: r.random_range(0.5..5.0),
                        phase: 0.0,
                    }],
                },
                (m, _) => InputSignal::Polynomial { coefficients: vec![vec![1.0, -0.5, 0.1]; m] },
            };
            let sc = Scenario {
                x0: (0..s.n()).map(|_| r.random_range(-3.0..3.0)).collect(),
                xi0: (0..obs.order()).map(|_| r.random_range(-3.0..3.0)).collect(),
                input,
                horizon: 30.0,
                step: 0.01,
            };
            let traj = simulate(&s, &obs, &sc).unwrap();
            let m = convergence_metric(&traj, DEFAULT_THRESHOLD).unwrap();
            assert!(m.decayed, "{name} trial {trial}: final_sup {}", m.final_sup);
        }
    }
}

#[test]
fn step_halving_is_consistent_on_smooth_scenario() {
    let s = load("demo_lag").system;
    let obs = realize(&RationalFunctionMatrix::from_fn(1, 1, |_, _| rf("1/(s+1)"))).unwrap();
    let run = |step: f64| {
        let sc = Scenario {
            x0: vec![1.0],
            xi0: vec![0.5],
            input: InputSignal::Zero,
            horizon: 10.0,
            step,
        };
        convergence_metric(&simulate(&s, &obs, &sc).unwrap(), DEFAULT_THRESHOLD).unwrap().final_sup
    };
    let (a, b) = (run(0.02), run(0.01));
    assert!(((a - b) / b).abs() < 0.01, "{a} vs {b}");
}

#[test]
fn divergence_is_reported() {
    let s = SystemSextuple::without_input(Matrix::from_ints(&[[5]]), Matrix::from_ints(&[[1]]), Matrix::from_ints(&[[1]]))
        .unwrap();
    let obs = StateSpaceRealization::static_gain(DMatrix::zeros(1, 1));
    let sc = Scenario {
        x0: vec![1.0],
        xi0: vec![],
        input: InputSignal::Zero,
        horizon: 200.0,
        step: 0.01,
    };
    assert!(matches!(simulate(&s, &obs, &sc), Err(Error::Diverged { .. })));
}

#[test]
fn scenario_validation() {
    let s = load("demo_lag").system;
    let obs = StateSpaceRealization::static_gain(DMatrix::zeros(1, 1));
    let base = Scenario {
        x0: vec![1.0],
        xi0: vec![],
        input: InputSignal::Zero,
        horizon: 1.0,
        step: 0.1,
    };
    assert!(simulate(&s, &obs, &base).is_ok());
    let bad_step = Scenario { step: 0.0, ..base.clone() };
    assert!(simulate(&s, &obs, &bad_step).is_err());
    let short = Scenario { horizon: 0.05, ..base.clone() };
    assert!(simulate(&s, &obs, &short).is_err());
    let wrong_x0 = Scenario { x0: vec![1.0, 2.0], ..base.clone() };
    assert!(simulate(&s, &obs, &wrong_x0).is_err());
    let wrong_input = Scenario {
        input: InputSignal::Constant { value: vec![1.0] },
        ..base
    };
    assert!(simulate(&s, &obs, &wrong_input).is_err());
}

#[test]
fn simulation_is_deterministic() {
    let s = load("demo_output_copy").system;
    let obs = parse_observer_file(r#"{"N": [["1"]]}"#).unwrap().realization().unwrap();
    let sc = Scenario {
        x0: vec![0.3, 0.1],
        xi0: vec![],
        input: InputSignal::Sinusoids {
            channels: 1,
            terms: vec![SinusoidTerm { channel: 0, amplitude: 1.0, frequency: 2.0, phase: 0.1 }],
        },
        horizon: 3.0,
        step: 0.01,
    };
    assert_eq!(simulate(&s, &obs, &sc).unwrap(), simulate(&s, &obs, &sc).unwrap());
    let text = serde_json::to_string(&sc).unwrap();
    assert_eq!(serde_json::from_str::<Scenario>(&text).unwrap(), sc);
}
