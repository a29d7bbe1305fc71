use std::path::{Path, PathBuf};

use anyhow::Context;
use funcobs::format::Report;
use funcobs::{Property, SystemFile};
use rayon::prelude::*;

use crate::check::evaluate;
use crate::{load_system, render, write_file};

type Outcome = Result<(SystemFile, Report), String>;

fn collect(paths: &[PathBuf]) -> anyhow::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
                .collect();
            entries.sort();
            out.extend(entries);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// The three general properties plus every property named in the file's expectations.
fn requested(file: &SystemFile) -> Vec<Property> {
    let mut props = vec![
        Property::FunctionalDetectable,
        Property::StronglyFunctionalDetectable,
        Property::StrongStarFunctionalDetectable,
    ];
    props.extend(file.expected.keys().filter(|p| !props.contains(p)).copied().collect::<Vec<_>>());
    props
}

fn process(path: &Path) -> Outcome {
    let run = || -> anyhow::Result<(SystemFile, Report)> {
        let file = load_system(path)?;
        let report = evaluate(&file, &requested(&file))?;
        Ok((file, report))
    };
    run().map_err(|e| format!("{e:#}"))
}

/// Exit 0 when every file parses and matches its expectations, 1 on any
/// mismatch, 2 (via `Err`) when some file could not be read.
pub fn run(paths: &[PathBuf], jobs: usize, out_dir: Option<&Path>) -> anyhow::Result<bool> {
    let files = collect(paths)?;
    if files.is_empty() {
        anyhow::bail!("no system files given");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let outcomes: Vec<Outcome> = pool.install(|| files.par_iter().map(|p| process(p)).collect());

    let (mut mismatches, mut failures) = (0usize, 0usize);
    for (path, outcome) in files.iter().zip(&outcomes) {
        match outcome {
            Ok((file, report)) => {
                println!("{}", path.display());
                for v in &report.verdicts {
                    println!("{}", render::verdict_line(file, v));
                    if file.expected.get(&v.property).is_some_and(|&want| want != v.holds) {
                        mismatches += 1;
                    }
                }
                if let Some(dir) = out_dir {
                    std::fs::create_dir_all(dir)?;
                    write_file(&dir.join(format!("{}.report.json", file.name)), &report.to_json_pretty())?;
                }
            }
            Err(msg) => {
                failures += 1;
                println!("{}\n  error: {msg}", path.display());
            }
        }
    }
    println!(
        "{} files, {} unreadable, {} expectation mismatches",
        files.len(),
        failures,
        mismatches
    );
    if failures > 0 {
        anyhow::bail!("{failures} file(s) could not be checked");
    }
    Ok(mismatches == 0)
}
