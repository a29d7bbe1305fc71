use std::fmt::Write;

use funcobs::exactlin::format_rational;
use funcobs::format::Report;
use funcobs::{SystemFile, Verdict, WitnessReport};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(file: &SystemFile) -> String {
    let s = &file.system;
    format!(
        "system: {} (n={}, m={}, p={}, q={})\n",
        file.name,
        s.n(),
        s.m(),
        s.p(),
        s.q()
    )
}

fn certificate_summary(v: &Verdict, out: &mut String) {
    let c = &v.certificate;
    if let (Some(p), Some(pe)) = (c.normal_rank_p, c.normal_rank_pe) {
        let _ = writeln!(out, "    normal rank P = {p}, P_e = {pe}");
    }
    if let (Some(zp), Some(zpe)) = (&c.zero_polynomial_p, &c.zero_polynomial_pe) {
        let _ = writeln!(out, "    zero polynomial P: {zp}; P_e: {zpe}");
    }
    if let Some(t) = &c.toeplitz {
        match (t.failing_k, &t.input_direction) {
            (Some(k), Some(dir)) => {
                let dir: Vec<String> = dir
                    .iter()
                    .map(|q| format!("[{}]", q.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
                    .collect();
                let _ = writeln!(out, "    Toeplitz kernel inclusion fails at k = {k}; input direction {}", dir.join(" "));
            }
            _ => {
                let _ = writeln!(out, "    Toeplitz kernel inclusion holds up to k = {}", t.kmax);
            }
        }
    }
    if let Some(f) = &c.failing_condition {
        let _ = writeln!(out, "    failing condition: {f}");
    }
    for n in &c.notes {
        let _ = writeln!(out, "    note: {n}");
    }
}

pub fn verdict_line(file: &SystemFile, v: &Verdict) -> String {
    let mut line = format!("  {}: {}", v.property.short(), yes_no(v.holds));
    if let Some(&want) = file.expected.get(&v.property) {
        if want == v.holds {
            line.push_str("  (as expected)");
        } else {
            let _ = write!(line, "  MISMATCH: expected {}", yes_no(want));
        }
    }
    line
}

pub fn check_text(file: &SystemFile, report: &Report, verbose: bool) -> String {
    let mut out = header(file);
    for v in &report.verdicts {
        out.push_str(&verdict_line(file, v));
        out.push('\n');
        certificate_summary(v, &mut out);
        if verbose {
            let json = serde_json::to_string_pretty(&v.certificate).expect("certificate serializes");
            for l in json.lines() {
                let _ = writeln!(out, "      {l}");
            }
        }
    }
    out
}

pub fn witness_text(file: &SystemFile, w: &WitnessReport) -> String {
    let mut out = header(file);
    let _ = writeln!(out, "  normal rank P = {}, left kernel dimension = {}", w.normal_rank_p, w.left_kernel_dim);
    let Some(mn) = &w.mn else {
        out.push_str("  unsolvable over the rational-function field: [E F] is not in the row space of P\n");
        return out;
    };
    let n = w.n;
    let _ = writeln!(out, "  [M N] (M has {n} columns):");
    for i in 0..mn.rows() {
        let cells: Vec<String> = (0..mn.cols()).map(|j| mn.get(i, j).to_string()).collect();
        let _ = writeln!(out, "    [{}]", cells.join(", "));
    }
    let constant = mn.entries().iter().all(|f| f.num().is_constant() && f.den().is_constant());
    if constant {
        out.push_str("  constant solution\n");
    }
    let _ = writeln!(out, "  residual [M N] P - [E F] = 0: {}", yes_no(w.residual_zero));
    if let Some(c) = &w.classification {
        let _ = writeln!(out, "  proper: {}", yes_no(c.proper));
        let _ = writeln!(
            out,
            "  stable: {} (pole polynomial {})",
            yes_no(c.stable),
            c.pole_polynomial
        );
    }
    out
}
