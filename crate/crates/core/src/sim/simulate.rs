use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::realize::{spectral_abscissa, StateSpaceRealization};
use crate::error::{mismatch, Error, Result};
use crate::system::SystemSextuple;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SinusoidTerm {
    pub channel: usize,
    pub amplitude: f64,
    /// rad/s
    pub frequency: f64,
    #[serde(default)]
    pub phase: f64,
}

/// Symbolic input descriptor; evaluation is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawInput")]
pub enum InputSignal {
    Zero,
    Constant { value: Vec<f64> },
    /// `coefficients[i]` are the ascending coefficients in `t` of channel `i`.
    Polynomial { coefficients: Vec<Vec<f64>> },
    Sinusoids { channels: usize, terms: Vec<SinusoidTerm> },
    /// Linear interpolation between samples; held constant outside the range.
    Table { times: Vec<f64>, values: Vec<Vec<f64>> },
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum InputKind {
    Zero,
    Constant,
    Polynomial,
    Sinusoids,
    Table,
}

/// Flat form used for reading. Internally tagged enums buffer their content,
/// which loses numbers under serde_json's arbitrary precision mode.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    kind: InputKind,
    value: Option<Vec<f64>>,
    coefficients: Option<Vec<Vec<f64>>>,
    channels: Option<usize>,
    terms: Option<Vec<SinusoidTerm>>,
    times: Option<Vec<f64>>,
    values: Option<Vec<Vec<f64>>>,
}

impl TryFrom<RawInput> for InputSignal {
    type Error = String;

    fn try_from(r: RawInput) -> std::result::Result<Self, String> {
        fn need<T>(v: Option<T>, field: &str) -> std::result::Result<T, String> {
            v.ok_or_else(|| format!("input is missing field `{field}`"))
        }
        Ok(match r.kind {
            InputKind::Zero => InputSignal::Zero,
            InputKind::Constant => InputSignal::Constant {
                value: need(r.value, "value")?,
            },
            InputKind::Polynomial => InputSignal::Polynomial {
                coefficients: need(r.coefficients, "coefficients")?,
            },
            InputKind::Sinusoids => InputSignal::Sinusoids {
                channels: need(r.channels, "channels")?,
                terms: need(r.terms, "terms")?,
            },
            InputKind::Table => InputSignal::Table {
                times: need(r.times, "times")?,
                values: need(r.values, "values")?,
            },
        })
    }
}

impl InputSignal {
    fn channels(&self) -> Option<usize> {
        match self {
            InputSignal::Zero => None,
            InputSignal::Constant { value } => Some(value.len()),
            InputSignal::Polynomial { coefficients } => Some(coefficients.len()),
            InputSignal::Sinusoids { channels, .. } => Some(*channels),
            InputSignal::Table { values, .. } => values.first().map(Vec::len),
        }
    }

    fn validate(&self, m: usize) -> Result<()> {
        if let Some(c) = self.channels() {
            if c != m {
                return Err(mismatch("input channels", m, c));
            }
        }
        match self {
            InputSignal::Sinusoids { terms, .. } if terms.iter().any(|t| t.channel >= m) => {
                Err(Error::InvalidScenario("sinusoid channel out of range".into()))
            }
            InputSignal::Table { times, values } => {
                if times.is_empty() || times.len() != values.len() {
                    return Err(Error::InvalidScenario("table needs one value row per time".into()));
                }
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidScenario("table times must increase".into()));
                }
                if values.iter().any(|v| v.len() != m) {
                    return Err(Error::InvalidScenario("ragged table rows".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, t: f64, m: usize) -> DVector<f64> {
        match self {
            InputSignal::Zero => DVector::zeros(m),
            InputSignal::Constant { value } => DVector::from_column_slice(value),
            InputSignal::Polynomial { coefficients } => DVector::from_iterator(
                m,
                coefficients.iter().map(|c| c.iter().rev().fold(0.0, |acc, a| acc * t + a)),
            ),
            InputSignal::Sinusoids { terms, .. } => {
                let mut u = DVector::zeros(m);
                for term in terms {
                    u[term.channel] += term.amplitude * (term.frequency * t + term.phase).sin();
                }
                u
            }
            InputSignal::Table { times, values } => {
                let last = times.len() - 1;
                if t <= times[0] {
                    return DVector::from_column_slice(&values[0]);
                }
                if t >= times[last] {
                    return DVector::from_column_slice(&values[last]);
                }
                let k = times.partition_point(|&x| x <= t) - 1;
                let w = (t - times[k]) / (times[k + 1] - times[k]);
                DVector::from_iterator(
                    m,
                    values[k].iter().zip(&values[k + 1]).map(|(a, b)| a + w * (b - a)),
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub x0: Vec<f64>,
    #[serde(default)]
    pub xi0: Vec<f64>,
    pub input: InputSignal,
    pub horizon: f64,
    pub step: f64,
}

impl Scenario {
    pub fn validate(&self, sys: &SystemSextuple, obs: &StateSpaceRealization) -> Result<()> {
        if !self.step.is_finite() || self.step <= 0.0 {
            return Err(Error::InvalidScenario("step must be positive".into()));
        }
        if !self.horizon.is_finite() || self.horizon < self.step {
            return Err(Error::InvalidScenario("horizon must be at least one step".into()));
        }
        if self.x0.len() != sys.n() {
            return Err(mismatch("x0", sys.n(), self.x0.len()));
        }
        if self.xi0.len() != obs.order() {
            return Err(mismatch("xi0", obs.order(), self.xi0.len()));
        }
        if obs.input_dim() != sys.p() || obs.output_dim() != sys.q() {
            return Err(mismatch(
                "observer shape",
                format!("{} outputs from {} measurements", sys.q(), sys.p()),
                format!("{} outputs from {} measurements", obs.output_dim(), obs.input_dim()),
            ));
        }
        self.input.validate(sys.m())
    }
}

/// Sampled joint trajectory of plant and observer.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    pub xi: Vec<Vec<f64>>,
    pub u: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
    pub z: Vec<Vec<f64>>,
    pub zhat: Vec<Vec<f64>>,
    pub e: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn error_norms(&self) -> Vec<f64> {
        self.e.iter().map(|e| norm(e)).collect()
    }

    pub fn output_norms(&self) -> Vec<f64> {
        self.y.iter().map(|y| norm(y)).collect()
    }

    /// Largest of `values` over samples with `t` in `[from, to]`.
    pub fn window_sup(&self, values: &[f64], from: f64, to: f64) -> f64 {
        self.t
            .iter()
            .zip(values)
            .filter(|(t, _)| **t >= from && **t <= to)
            .map(|(_, v)| *v)
            .fold(0.0, f64::max)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

struct FloatPlant {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    d: DMatrix<f64>,
    e: DMatrix<f64>,
    f: DMatrix<f64>,
}

impl FloatPlant {
    fn new(sys: &SystemSextuple) -> Self {
        Self {
            a: sys.a().to_dmatrix(),
            b: sys.b().to_dmatrix(),
            c: sys.c().to_dmatrix(),
            d: sys.d().to_dmatrix(),
            e: sys.e().to_dmatrix(),
            f: sys.f().to_dmatrix(),
        }
    }
}

const DIVERGENCE_LIMIT: f64 = 1e150;

/// Classical fixed-step RK4 on the cascade `x' = Ax + Bu`,
/// `ξ' = Gξ + H(Cx + Du)`. Samples are taken at every step.
pub fn simulate(sys: &SystemSextuple, obs: &StateSpaceRealization, sc: &Scenario) -> Result<Trajectory> {
    sc.validate(sys, obs)?;
    let plant = FloatPlant::new(sys);
    let (n, m, nu) = (sys.n(), sys.m(), obs.order());
    let deriv = |t: f64, state: &DVector<f64>| -> DVector<f64> {
        let x = state.rows(0, n);
        let xi = state.rows(n, nu);
        let u = sc.input.eval(t, m);
        let y = &plant.c * x + &plant.d * &u;
        let dx = &plant.a * x + &plant.b * &u;
        let dxi = &obs.g * xi + &obs.h * y;
        let mut out = DVector::zeros(n + nu);
        out.rows_mut(0, n).copy_from(&dx);
        out.rows_mut(n, nu).copy_from(&dxi);
        out
    };

    let steps = (sc.horizon / sc.step).round() as usize;
    let mut state = DVector::from_iterator(n + nu, sc.x0.iter().chain(&sc.xi0).copied());
    let mut traj = Trajectory::default();
    let record = |t: f64, state: &DVector<f64>, traj: &mut Trajectory| -> Result<()> {
        let x = state.rows(0, n).into_owned();
        let xi = state.rows(n, nu).into_owned();
        let u = sc.input.eval(t, m);
        let y = &plant.c * &x + &plant.d * &u;
        let z = &plant.e * &x + &plant.f * &u;
        let zhat = &obs.q * &xi + &obs.r * &y;
        let e = &z - &zhat;
        let en = e.norm();
        if !en.is_finite() || en > DIVERGENCE_LIMIT || !state.norm().is_finite() {
            return Err(Error::Diverged { t, norm: en });
        }
        traj.t.push(t);
        traj.x.push(x.as_slice().to_vec());
        traj.xi.push(xi.as_slice().to_vec());
        traj.u.push(u.as_slice().to_vec());
        traj.y.push(y.as_slice().to_vec());
        traj.z.push(z.as_slice().to_vec());
        traj.zhat.push(zhat.as_slice().to_vec());
        traj.e.push(e.as_slice().to_vec());
        Ok(())
    };
    record(0.0, &state, &mut traj)?;
    let h = sc.step;
    for k in 0..steps {
        let t = k as f64 * h;
        let k1 = deriv(t, &state);
        let k2 = deriv(t + h / 2.0, &(&state + &k1 * (h / 2.0)));
        let k3 = deriv(t + h / 2.0, &(&state + &k2 * (h / 2.0)));
        let k4 = deriv(t + h, &(&state + &k3 * h));
        state += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        record((k + 1) as f64 * h, &state, &mut traj)?;
    }
    Ok(traj)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSummary {
    pub decayed: bool,
    /// Supremum of `‖e‖` over the last 10% of the horizon.
    pub final_sup: f64,
    pub threshold: f64,
    pub window_start: f64,
}

pub const DEFAULT_THRESHOLD: f64 = 1e-4;

pub fn convergence_metric(traj: &Trajectory, threshold: f64) -> Result<ConvergenceSummary> {
    let (Some(&t0), Some(&t1)) = (traj.t.first(), traj.t.last()) else {
        return Err(Error::InvalidScenario("empty trajectory".into()));
    };
    let window_start = t1 - 0.1 * (t1 - t0);
    let final_sup = traj.window_sup(&traj.error_norms(), window_start, t1);
    Ok(ConvergenceSummary {
        decayed: final_sup < threshold,
        final_sup,
        threshold,
        window_start,
    })
}

/// `10 / |α|` for the spectral abscissa `α` of the cascade; `None` when the
/// cascade is not asymptotically stable.
pub fn suggest_horizon(sys: &SystemSextuple, obs: &StateSpaceRealization) -> Option<f64> {
    let (n, nu) = (sys.n(), obs.order());
    let mut cascade = DMatrix::zeros(n + nu, n + nu);
    cascade.view_mut((0, 0), (n, n)).copy_from(&sys.a().to_dmatrix());
    cascade.view_mut((n, 0), (nu, n)).copy_from(&(&obs.h * sys.c().to_dmatrix()));
    cascade.view_mut((n, n), (nu, nu)).copy_from(&obs.g);
    let alpha = spectral_abscissa(&cascade);
    if alpha == f64::NEG_INFINITY {
        return Some(10.0);
    }
    (alpha < 0.0).then(|| 10.0 / alpha.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_interpolates_linearly() {
        let s = InputSignal::Table {
            times: vec![0.0, 1.0, 3.0],
            values: vec![vec![0.0], vec![2.0], vec![-2.0]],
        };
        assert!(s.validate(1).is_ok());
        assert_eq!(s.eval(0.5, 1)[0], 1.0);
        assert_eq!(s.eval(2.0, 1)[0], 0.0);
        assert_eq!(s.eval(10.0, 1)[0], -2.0);
        assert_eq!(s.eval(-1.0, 1)[0], 0.0);
    }

    #[test]
    fn polynomial_and_sinusoid_inputs() {
        let p = InputSignal::Polynomial {
            coefficients: vec![vec![1.0, 0.0, 2.0]],
        };
        assert_eq!(p.eval(3.0, 1)[0], 19.0);
        let s = InputSignal::Sinusoids {
            channels: 2,
            terms: vec![SinusoidTerm {
                channel: 1,
                amplitude: 2.0,
                frequency: 1.0,
                phase: std::f64::consts::FRAC_PI_2,
            }],
        };
        let u = s.eval(0.0, 2);
        assert_eq!(u[0], 0.0);
        assert!((u[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn input_files_read_numbers() {
        let s: InputSignal =
            serde_json::from_str(r#"{"kind": "constant", "value": [1.5, -2]}"#).unwrap();
        assert_eq!(s, InputSignal::Constant { value: vec![1.5, -2.0] });
        let t: InputSignal = serde_json::from_str(
            r#"{"kind": "sinusoids", "channels": 1, "terms": [{"channel": 0, "amplitude": 1, "frequency": 2}]}"#,
        )
        .unwrap();
        assert_eq!(serde_json::from_str::<InputSignal>(&serde_json::to_string(&t).unwrap()).unwrap(), t);
        assert!(serde_json::from_str::<InputSignal>(r#"{"kind": "constant"}"#).is_err());
        assert!(serde_json::from_str::<InputSignal>(r#"{"kind": "zero", "bogus": 1}"#).is_err());
    }

    #[test]
    fn metric_on_constant_and_zero_errors() {
        let mut traj = Trajectory::default();
        for k in 0..=100 {
            traj.t.push(k as f64 * 0.1);
            traj.e.push(vec![0.0]);
        }
        let s = convergence_metric(&traj, DEFAULT_THRESHOLD).unwrap();
        assert!(s.decayed);
        assert_eq!(s.final_sup, 0.0);
        traj.e.iter_mut().for_each(|e| e[0] = 1.0);
        let s = convergence_metric(&traj, DEFAULT_THRESHOLD).unwrap();
        assert!(!s.decayed);
        assert_eq!(s.final_sup, 1.0);
        assert!(convergence_metric(&Trajectory::default(), 1.0).is_err());
    }

    #[test]
    fn exponential_decay_final_window() {
        let mut traj = Trajectory::default();
        for k in 0..=2000 {
            let t = k as f64 * 0.01;
            traj.t.push(t);
            traj.e.push(vec![(-t).exp()]);
        }
        let s = convergence_metric(&traj, DEFAULT_THRESHOLD).unwrap();
        // sup over [18, 20] is e^{-18}
        assert!(s.final_sup < 2e-8);
        assert!((s.final_sup - (-18.0f64).exp()).abs() < 1e-12);
    }
}
