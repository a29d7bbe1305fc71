//! Ready-made scenarios used by the tests and the command line.

use super::simulate::{InputSignal, Scenario};

/// `y(t) = sin(t²)/t` continued by `y(0) = 0`.
pub fn chirp_output(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        (t * t).sin() / t
    }
}

/// Second derivative of [`chirp_output`]. Near the origin the closed form
/// cancels badly, so the Taylor series is summed instead.
pub fn chirp_output_dd(t: f64) -> f64 {
    if t.abs() < 0.5 {
        // y = Σ (-1)^k t^{4k+1} / (2k+1)!
        let mut sum = 0.0;
        let mut fact = 1.0; // (2k+1)!
        for k in 1..12 {
            let kk = k as f64;
            fact *= (2.0 * kk) * (2.0 * kk + 1.0);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (4.0 * kk + 1.0) * (4.0 * kk) * t.powi(4 * k - 1) / fact;
        }
        sum
    } else {
        let s = (t * t).sin();
        let c = (t * t).cos();
        -4.0 * t * s - 2.0 * c / t + 2.0 * s / (t * t * t)
    }
}

/// Input that makes the double-integrator plant
/// `x1' = u, x2' = x1, y = x1 + x2` emit `y = sin(t²)/t`.
///
/// Since `ÿ = u' + u`, the input is obtained by integrating
/// `u' = -u + ÿ` from `u(0) = 0` with RK4 at `table_step`. The plant then
/// starts at `x0 = (1, -1)` so that `y(0) = 0` and `y'(0) = 1`.
pub fn chirp_input_table(horizon: f64, table_step: f64) -> InputSignal {
    let n = (horizon / table_step).ceil() as usize;
    let f = |t: f64, u: f64| -u + chirp_output_dd(t);
    let mut times = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    let mut u = 0.0;
    times.push(0.0);
    values.push(vec![u]);
    let h = table_step;
    for k in 0..n {
        let t = k as f64 * h;
        let k1 = f(t, u);
        let k2 = f(t + h / 2.0, u + h / 2.0 * k1);
        let k3 = f(t + h / 2.0, u + h / 2.0 * k2);
        let k4 = f(t + h, u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        times.push((k + 1) as f64 * h);
        values.push(vec![u]);
    }
    InputSignal::Table { times, values }
}

/// Counterexample scenario for the double integrator with `z = u`:
/// the output decays like `1/t` while `u` keeps oscillating.
pub fn chirp_counterexample(horizon: f64, table_step: f64, step: f64, observer_order: usize) -> Scenario {
    Scenario {
        x0: vec![1.0, -1.0],
        xi0: vec![0.0; observer_order],
        input: chirp_input_table(horizon, table_step),
        horizon,
        step,
    }
}
