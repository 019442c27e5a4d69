use std::fmt::Write as _;

use crate::analysis::ComplexityReport;

use super::fmt_f64;

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), fmt_f64)
}

/// Plain-text complexity report. Unbounded conflict windows print
/// `unbounded` in the exit and duration columns.
pub fn render_report(report: &ComplexityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# tdgen report");
    let _ = writeln!(s, "n: {}", report.n);
    let _ = writeln!(s, "conflicts: {}", report.n_conflicts);
    let _ = writeln!(s, "density: {}", fmt_f64(report.density));
    let _ = writeln!(s, "mean_min_separation_nm: {}", opt(report.mean_min_separation));
    let _ = writeln!(s, "mean_duration_min: {}", opt(report.mean_duration));
    let _ = writeln!(s, "unbounded_conflicts: {}", report.unbounded_conflicts);
    let _ = writeln!(
        s,
        "requested_conflicts: {}",
        report.requested_n_c.map_or_else(|| "none".to_string(), |r| r.to_string())
    );
    let _ = writeln!(s, "relative_difference: {}", opt(report.relative_difference));
    let _ = writeln!(s, "---");
    let _ = writeln!(s, "# i j t_cpa_h d_min_nm t_enter_h t_exit_h duration_min");
    for c in &report.conflicts {
        let exit = c.t_exit.map_or_else(|| "unbounded".to_string(), fmt_f64);
        let dur = c.duration().map_or_else(|| "unbounded".to_string(), fmt_f64);
        let _ = writeln!(
            s,
            "{} {} {} {} {} {exit} {dur}",
            c.i,
            c.j,
            fmt_f64(c.t_cpa),
            fmt_f64(c.d_min),
            fmt_f64(c.t_enter)
        );
    }
    s
}
