use std::path::Path;

use funcobs::format::Report;
use funcobs::{decide, Property, SystemFile, Verdict};

use crate::render;
use crate::{load_system, write_file, Selection, Specialization};

pub fn properties(sel: &Selection) -> Vec<Property> {
    let none = !(sel.functional || sel.strong || sel.strong_star || sel.all) && sel.specialize.is_empty();
    let mut out = Vec::new();
    if sel.all || none || sel.functional {
        out.push(Property::FunctionalDetectable);
    }
    if sel.all || none || sel.strong {
        out.push(Property::StronglyFunctionalDetectable);
    }
    if sel.all || none || sel.strong_star {
        out.push(Property::StrongStarFunctionalDetectable);
    }
    for s in &sel.specialize {
        match s {
            Specialization::Hautus => {
                out.extend([Property::HautusStrongDetectable, Property::HautusStrongStarDetectable])
            }
            Specialization::Leftinv => out.extend([
                Property::AsymptStrongLeftInvertible,
                Property::AsymptStrongStarLeftInvertible,
            ]),
            Specialization::Darouach => out.push(Property::DarouachFixedOrder),
        }
    }
    out.dedup();
    out
}

pub fn evaluate(file: &SystemFile, props: &[Property]) -> anyhow::Result<Report> {
    let mut report = Report::new(file.name.clone());
    for &p in props {
        let v: Verdict = report.timed(p.short(), || decide(p, &file.system))?;
        report.verdicts.push(v);
    }
    Ok(report)
}

pub fn run(path: &Path, sel: &Selection, out: Option<&Path>, verbose: bool) -> anyhow::Result<bool> {
    let file = load_system(path)?;
    let report = evaluate(&file, &properties(sel))?;
    print!("{}", render::check_text(&file, &report, verbose));
    if let Some(out) = out {
        write_file(out, &report.to_json_pretty())?;
    }
    Ok(report.verdicts.iter().all(|v| v.holds))
}
