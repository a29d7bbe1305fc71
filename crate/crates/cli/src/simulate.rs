use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use funcobs::exactlin::parse_rational;
use funcobs::format::{parse_observer_file, parse_transfer_matrix, ObserverSpec};
use funcobs::sim::scenarios::chirp_counterexample;
use funcobs::sim::{
    convergence_metric, simulate, suggest_horizon, write_csv, Scenario, StateSpaceRealization,
};
use funcobs::witness::{properize, solve_over_field};
use funcobs::{RationalFunctionMatrix, SystemFile};
use serde_json::Value;

use crate::load_system;

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    system: PathBuf,
    /// Observer file: {"N": [[..]]} or {"G", "H", "Q", "R"}
    #[arg(long, group = "observer_source")]
    observer: Option<PathBuf>,
    /// Inline transfer matrix, rows separated by ';' and entries by ','
    #[arg(long = "n", group = "observer_source")]
    inline_n: Option<String>,
    /// Use the N block of the canonical field witness
    #[arg(long, group = "observer_source")]
    witness: bool,
    /// Multiply a transfer-matrix observer by 1/(tau s + 1)^k, k its properness defect
    #[arg(long, value_name = "TAU")]
    properize: Option<String>,
    /// Scenario file (x0, xi0, input, horizon, step)
    #[arg(long, group = "scenario_source")]
    scenario: Option<PathBuf>,
    /// Built-in input driving the double integrator to y = sin(t^2)/t
    #[arg(long, group = "scenario_source")]
    chirp: bool,
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long, default_value_t = funcobs::sim::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Write the trajectory here instead of standard output
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn transfer_observer(args: &SimulateArgs, file: &SystemFile) -> anyhow::Result<Option<RationalFunctionMatrix>> {
    if let Some(text) = &args.inline_n {
        return Ok(Some(parse_transfer_matrix(text).context("reading --n")?));
    }
    if args.witness {
        let w = solve_over_field(&file.system)?;
        return w
            .n_part()
            .map(Some)
            .ok_or_else(|| anyhow!("no witness: [E F] is not in the row space of P over the rational functions"));
    }
    Ok(None)
}

fn observer(args: &SimulateArgs, file: &SystemFile) -> anyhow::Result<StateSpaceRealization> {
    let spec = match transfer_observer(args, file)? {
        Some(n) => ObserverSpec::Transfer(n),
        None => {
            let path = args
                .observer
                .as_ref()
                .ok_or_else(|| anyhow!("give one of --observer, --n or --witness"))?;
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_observer_file(&text).with_context(|| format!("parsing {}", path.display()))?
        }
    };
    let spec = match (spec, &args.properize) {
        (ObserverSpec::Transfer(n), Some(tau)) => {
            let tau = parse_rational(tau).context("reading --properize")?;
            let (filtered, k) = properize(&n, &tau)?;
            if k > 0 {
                eprintln!("observer filtered by 1/({} s + 1)^{k}", funcobs::exactlin::format_rational(&tau));
            }
            ObserverSpec::Transfer(filtered)
        }
        (ObserverSpec::Realization(_), Some(_)) => bail!("--properize applies to transfer-matrix observers only"),
        (spec, None) => spec,
    };
    spec.realization().context("observer rejected")
}

fn load_scenario(path: &Path, file: &SystemFile, obs: &StateSpaceRealization) -> anyhow::Result<Scenario> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| anyhow!("{}: top level must be an object", path.display()))?;
    if !obj.contains_key("xi0") {
        obj.insert("xi0".into(), Value::Array(vec![Value::from(0.0); obs.order()]));
    }
    if !obj.contains_key("horizon") {
        let h = suggest_horizon(&file.system, obs)
            .ok_or_else(|| anyhow!("no horizon given and the cascade is not asymptotically stable"))?;
        obj.insert("horizon".into(), Value::from(h));
    }
    serde_json::from_value(value).with_context(|| format!("reading scenario {}", path.display()))
}

pub fn run(args: &SimulateArgs) -> anyhow::Result<bool> {
    let file = load_system(&args.system)?;
    let obs = observer(args, &file)?;
    let mut sc = if args.chirp {
        let horizon = args.horizon.unwrap_or(100.0);
        let step = args.step.unwrap_or(1e-3);
        if file.system.n() != 2 || file.system.m() != 1 {
            bail!("--chirp needs a plant with two states and one input");
        }
        chirp_counterexample(horizon, 1e-4, step, obs.order())
    } else {
        let path = args
            .scenario
            .as_ref()
            .ok_or_else(|| anyhow!("give --scenario or --chirp"))?;
        load_scenario(path, &file, &obs)?
    };
    if let Some(h) = args.horizon {
        sc.horizon = h;
    }
    if let Some(s) = args.step {
        sc.step = s;
    }
    let traj = simulate(&file.system, &obs, &sc)?;
    let summary = convergence_metric(&traj, args.threshold)?;
    let text = format!(
        "decayed: {}\nfinal_sup: {:e}\nthreshold: {:e}\nwindow: [{}, {}]\n",
        if summary.decayed { "yes" } else { "no" },
        summary.final_sup,
        summary.threshold,
        summary.window_start,
        sc.horizon
    );
    match &args.csv {
        Some(path) => {
            let f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&traj, std::io::BufWriter::new(f))?;
            print!("{text}");
        }
        None => {
            let stdout = std::io::stdout();
            write_csv(&traj, std::io::BufWriter::new(stdout.lock()))?;
            std::io::stderr().write_all(text.as_bytes())?;
        }
    }
    Ok(summary.decayed)
}
