use std::io::{self, Write};

use super::simulate::Trajectory;

fn header(prefix: &str, count: usize, out: &mut Vec<String>) {
    out.extend((1..=count).map(|i| format!("{prefix}_{i}")));
}

/// Writes `t, x_*, xi_*, z_*, zhat_*, e_*` rows, comma separated with LF endings.
pub fn write_csv<W: Write>(traj: &Trajectory, mut w: W) -> io::Result<()> {
    let width = |v: &[Vec<f64>]| v.first().map_or(0, Vec::len);
    let mut cols = vec!["t".to_string()];
    header("x", width(&traj.x), &mut cols);
    header("xi", width(&traj.xi), &mut cols);
    header("z", width(&traj.z), &mut cols);
    header("zhat", width(&traj.zhat), &mut cols);
    header("e", width(&traj.e), &mut cols);
    w.write_all(cols.join(",").as_bytes())?;
    w.write_all(b"\n")?;
    let mut line = String::new();
    for k in 0..traj.len() {
        line.clear();
        line.push_str(&traj.t[k].to_string());
        for block in [&traj.x, &traj.xi, &traj.z, &traj.zhat, &traj.e] {
            for v in &block[k] {
                line.push(',');
                line.push_str(&v.to_string());
            }
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    w.flush()
}

pub fn to_csv_string(traj: &Trajectory) -> String {
    let mut buf = Vec::new();
    write_csv(traj, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv output is ascii")
}
