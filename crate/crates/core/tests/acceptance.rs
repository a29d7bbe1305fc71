//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::{load, random_hurwitz_candidate, random_poly_matrix, random_system, rng, root_real_parts};
use funcobs::decide::{self, check_all};
use funcobs::geometry::strong_star_inclusion;
use funcobs::markov::{default_kmax, kernel_inclusion_upto};
use funcobs::polymat::{build_system_matrices, smith_form, zero_polynomial, Polynomial};
use funcobs::sim::scenarios::chirp_counterexample;
use funcobs::sim::{convergence_metric, realize, simulate, InputSignal, Scenario, StateSpaceRealization, Trajectory};
use funcobs::stability::is_hurwitz;
use funcobs::witness::{properize, solve_over_field, RationalFunctionMatrix};
use funcobs::SystemSextuple;
use nalgebra::DMatrix;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const BATCH: usize = 500;
const BATCH_SEED: u64 = 0x00AC_CE97;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn holds(v: funcobs::Result<funcobs::Verdict>) -> Result<bool, String> {
    v.map(|v| v.holds).map_err(|e| e.to_string())
}

fn batch() -> Vec<SystemSextuple> {
    let mut r = rng(BATCH_SEED);
    (0..BATCH).map(|_| random_system(&mut r)).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = load("example1").system;
    ensure(holds(decide::functional_detectable(&s))?, "functional detectability should hold")?;
    let strong = decide::strongly_functional_detectable(&s).map_err(|e| e.to_string())?;
    ensure(!strong.holds, "strong functional detectability should fail")?;
    let (p, pe) = (strong.certificate.normal_rank_p, strong.certificate.normal_rank_pe);
    ensure(p == Some(2) && pe == Some(3), format!("normal ranks {p:?} / {pe:?}"))?;
    within(Duration::from_secs(1), start)?;
    Ok("functional yes, strong no, normrank P = 2 < normrank P_e = 3".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let s = load("example2").system;
    let (p, pe) = build_system_matrices(&s);
    let (zp, zpe) = (zero_polynomial(&p), zero_polynomial(&pe));
    ensure(zp == Polynomial::from_ints(&[1, 1]), format!("zero polynomial of P is {zp}"))?;
    ensure(zpe == Polynomial::one(), format!("zero polynomial of P_e is {zpe}"))?;
    ensure(holds(decide::strongly_functional_detectable(&s))?, "strong should hold")?;
    ensure(!holds(decide::strong_star_functional_detectable(&s))?, "strong-star should fail")?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("z(P) = {zp}, z(P_e) = {zpe}, strong yes, strong-star no"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let s = load("sec6c").system;
    ensure(holds(decide::strongly_functional_detectable(&s))?, "strong should hold")?;
    let star = decide::strong_star_functional_detectable(&s).map_err(|e| e.to_string())?;
    ensure(star.holds, "strong-star should hold")?;
    let cert = star.certificate.strong_star.ok_or("missing subspace certificate")?;
    ensure(cert.vstar_cd_cap_im_be.is_zero(), "V*(C,D) meets Im B_e")?;
    let obs = StateSpaceRealization::static_gain(DMatrix::from_row_slice(1, 2, &[1.0, 0.0]));
    let sc = Scenario {
        x0: vec![1.0, -2.0],
        xi0: vec![],
        input: InputSignal::Zero,
        horizon: 10.0,
        step: 0.01,
    };
    let traj = simulate(&s, &obs, &sc).map_err(|e| e.to_string())?;
    let m = convergence_metric(&traj, 1e-4).map_err(|e| e.to_string())?;
    ensure(m.final_sup <= f64::EPSILON, format!("final_sup {}", m.final_sup))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("strong yes, strong-star yes, V* cap Im B_e = 0, static observer final_sup = {}", m.final_sup))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let s = load("sec6d_plant1").system;
    ensure(!holds(decide::darouach_fixed_order(&s))?, "fixed-order conditions should fail")?;
    let k = default_kmax(&s);
    let t = kernel_inclusion_upto(&s, k).map_err(|e| e.to_string())?;
    ensure(t.holds, format!("Toeplitz inclusion fails at k = {:?}", t.failing_k))?;
    let w = solve_over_field(&s).map_err(|e| e.to_string())?;
    ensure(w.solvable_over_field && w.residual_zero, "no exact witness")?;
    ensure(w.is_proper(), "witness should be proper")?;
    ensure(!w.is_stable(), "witness should not be stable")?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("fixed-order no, Toeplitz inclusion up to k = {k}, witness proper and not stable"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let s = load("sec6d_plant2").system;
    let fixed = decide::darouach_fixed_order(&s).map_err(|e| e.to_string())?;
    ensure(!fixed.holds, "fixed-order conditions should fail")?;
    let rank_cond = fixed
        .certificate
        .conditions
        .iter()
        .find(|c| c.name != "kernel_inclusion_fixed_order")
        .ok_or("no rank condition recorded")?;
    ensure(!rank_cond.holds, format!("{} unexpectedly holds", rank_cond.name))?;
    ensure(holds(decide::strong_star_functional_detectable(&s))?, "strong-star should hold")?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("{} fails, strong-star yes", rank_cond.name))
}

fn criterion_6(systems: &[SystemSextuple]) -> Outcome {
    let start = Instant::now();
    let mut disagreements = 0;
    let mut holding = 0;
    for s in systems {
        let geo = strong_star_inclusion(s).map_err(|e| e.to_string())?.holds;
        let toe = kernel_inclusion_upto(s, default_kmax(s)).map_err(|e| e.to_string())?.holds;
        disagreements += usize::from(geo != toe);
        holding += usize::from(geo);
    }
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{} systems, 0 disagreements ({holding} hold, {} fail), {:.2?}",
        systems.len(),
        systems.len() - holding,
        start.elapsed()
    ))
}

fn criterion_7(systems: &[SystemSextuple]) -> Outcome {
    let mut bad = Vec::new();
    let mut counts = [0usize; 4];
    for (i, s) in systems.iter().enumerate() {
        let st = s.with_state_output();
        let inp = s.with_input_output();
        let pairs = [
            (holds(decide::hautus_strong_detectable(&st))?, holds(decide::strongly_functional_detectable(&st))?),
            (holds(decide::hautus_strong_star_detectable(&st))?, holds(decide::strong_star_functional_detectable(&st))?),
            (holds(decide::asympt_strong_left_invertible(&inp))?, holds(decide::strongly_functional_detectable(&inp))?),
            (holds(decide::asympt_strong_star_left_invertible(&inp))?, holds(decide::strong_star_functional_detectable(&inp))?),
        ];
        for (k, (special, general)) in pairs.iter().enumerate() {
            counts[k] += usize::from(*special);
            if special != general {
                bad.push(format!("system {i} check {k}"));
            }
        }
    }
    ensure(bad.is_empty(), format!("disagreements: {}", bad.join(", ")))?;
    Ok(format!(
        "0 disagreements; holds: hautus {}/{}, left-invertible {}/{} (strong/star)",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(0x5317);
    let mut failures = 0;
    let n = 500;
    for _ in 0..n {
        let p = random_poly_matrix(&mut r, 4, 5, 2);
        let sm = smith_form(&p);
        failures += usize::from(!sm.verify(&p));
    }
    ensure(failures == 0, format!("{failures} failed verification"))?;
    Ok(format!("{n} instances, UPV = S, unimodular U and V, divisibility chain"))
}

fn criterion_9() -> Outcome {
    let mut r = rng(0x4077);
    let (mut kept, mut drawn, mut stable, mut disagreements) = (0usize, 0usize, 0usize, 0usize);
    while kept < 1000 {
        drawn += 1;
        let p = random_hurwitz_candidate(&mut r);
        let re = root_real_parts(&p);
        if re.iter().any(|x| x.abs() <= 1e-6) {
            continue;
        }
        kept += 1;
        let numeric = re.iter().all(|&x| x < 0.0);
        stable += usize::from(numeric);
        let exact = is_hurwitz(&p).map_err(|e| e.to_string())?.is_hurwitz;
        disagreements += usize::from(exact != numeric);
    }
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    Ok(format!("{kept} polynomials ({stable} Hurwitz) from {drawn} draws, 0 disagreements"))
}

fn criterion_10(systems: &[SystemSextuple]) -> Outcome {
    let mut solvable = 0;
    for (i, s) in systems.iter().enumerate() {
        let w = solve_over_field(s).map_err(|e| e.to_string())?;
        let Some(mn) = &w.mn else { continue };
        solvable += 1;
        let (p, _) = build_system_matrices(s);
        let residual = mn
            .checked_mul(&RationalFunctionMatrix::from_poly_matrix(&p))
            .and_then(|lhs| lhs.checked_sub(&RationalFunctionMatrix::from_constant(&s.ef())))
            .map_err(|e| e.to_string())?;
        ensure(residual.is_zero() && w.residual_zero, format!("system {i}: nonzero residual"))?;
    }
    Ok(format!("{solvable} solvable systems, every residual exactly zero"))
}

fn criterion_11(systems: &[SystemSextuple]) -> Outcome {
    let mut tally = [0usize; 3];
    for (i, s) in systems.iter().enumerate() {
        let v: Vec<bool> = check_all(s).map_err(|e| e.to_string())?.iter().map(|v| v.holds).collect();
        ensure(!v[2] || v[1], format!("system {i}: strong-star without strong"))?;
        ensure(!v[1] || v[0], format!("system {i}: strong without functional"))?;
        for k in 0..3 {
            tally[k] += usize::from(v[k]);
        }
    }
    let e1: Vec<bool> = check_all(&load("example1").system).map_err(|e| e.to_string())?.iter().map(|v| v.holds).collect();
    ensure(e1[0] && !e1[1], "example 1 should separate functional from strong")?;
    let e2: Vec<bool> = check_all(&load("example2").system).map_err(|e| e.to_string())?.iter().map(|v| v.holds).collect();
    ensure(e2[1] && !e2[2], "example 2 should separate strong from strong-star")?;
    Ok(format!(
        "chain holds on {} systems (functional {}, strong {}, strong-star {}); both strict gaps reproduced",
        systems.len(),
        tally[0],
        tally[1],
        tally[2]
    ))
}

fn output_sup(traj: &Trajectory, from: f64, to: f64) -> f64 {
    traj.window_sup(&traj.output_norms(), from, to)
}

fn criterion_12() -> Outcome {
    let s = load("example2").system;
    let w = solve_over_field(&s).map_err(|e| e.to_string())?;
    let n = w.n_part().ok_or("example 2 has no witness")?;
    let (filtered, _) = properize(&n, &funcobs::exactlin::rational::frac(1, 10)).map_err(|e| e.to_string())?;
    let obs = realize(&filtered).map_err(|e| e.to_string())?;
    let run = |step: f64| -> Result<(f64, Trajectory), String> {
        let sc = chirp_counterexample(100.0, 1e-4, step, obs.order());
        let traj = simulate(&s, &obs, &sc).map_err(|e| e.to_string())?;
        let m = convergence_metric(&traj, 1e-4).map_err(|e| e.to_string())?;
        Ok((m.final_sup, traj))
    };
    let (coarse, traj) = run(1e-3)?;
    let (fine, _) = run(5e-4)?;
    let early = output_sup(&traj, 0.0, 10.0);
    let late = output_sup(&traj, 90.0, 100.0);
    ensure(late < 0.02 && late < early / 10.0, format!("y does not decay: {early} then {late}"))?;
    ensure(coarse > 0.1, format!("final_sup {coarse} too small"))?;
    let change = ((coarse - fine) / fine).abs();
    ensure(change < 0.01, format!("step halving changed final_sup by {:.3}%", 100.0 * change))?;
    Ok(format!(
        "sup|y| {early:.3} on [0,10] vs {late:.4} on [90,100]; final_sup {coarse:.4}; halving changes it by {:.2e}",
        change
    ))
}

fn main() {
    let systems = batch();
    let criteria: Vec<Criterion> = vec![
        ("Example 1 verdicts and rank gap", Box::new(criterion_1)),
        ("Example 2 zero polynomials and verdicts", Box::new(criterion_2)),
        ("known-input example with static observer", Box::new(criterion_3)),
        ("plant 1: fixed-order fails, Toeplitz holds, proper unstable witness", Box::new(criterion_4)),
        ("plant 2: rank condition fails, strong-star holds", Box::new(criterion_5)),
        ("geometric test equals Toeplitz test", Box::new(|| criterion_6(&systems))),
        ("specializations equal general verdicts", Box::new(|| criterion_7(&systems))),
        ("Smith self-verification", Box::new(criterion_8)),
        ("Hurwitz test equals root oracle", Box::new(criterion_9)),
        ("witness residual exactly zero", Box::new(|| criterion_10(&systems))),
        ("implication chain and strict gaps", Box::new(|| criterion_11(&systems))),
        ("chirp counterexample simulation", Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
