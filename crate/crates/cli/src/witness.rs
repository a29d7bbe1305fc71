use std::path::Path;

use funcobs::format::Report;
use funcobs::witness::solve_over_field;

use crate::{load_system, render, write_file};

/// Exit status reports solvability over the field.
pub fn run(path: &Path, out: Option<&Path>) -> anyhow::Result<bool> {
    let file = load_system(path)?;
    let mut report = Report::new(file.name.clone());
    let w = report.timed("witness", || solve_over_field(&file.system))?;
    print!("{}", render::witness_text(&file, &w));
    let solvable = w.solvable_over_field;
    report.witness = Some(w);
    if let Some(out) = out {
        write_file(out, &report.to_json_pretty())?;
    }
    Ok(solvable)
}
