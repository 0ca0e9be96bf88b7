//! Single-point report.

use std::fmt::Write;

use dicke_core::squeezed::{closed_form_report, oracle_report};
use dicke_core::{EntanglementReport, SqueezedVacuumParams};

use crate::grid::format_m;
use crate::sweep::{path_discrepancy, SweepRow, CSV_HEADER};

pub fn human(label: &str, r: &EntanglementReport) -> String {
    let mut out = String::new();
    let n4 = f64::from(r.n_atoms) / 4.0;
    let _ = writeln!(out, "[{label}]");
    let _ = writeln!(
        out,
        "  var_xp        {:.10e}  ({} N/4)",
        r.var_xp,
        cmp(r.var_xp, n4)
    );
    let _ = writeln!(
        out,
        "  var_yp        {:.10e}  ({} N/4)",
        r.var_yp,
        cmp(r.var_yp, n4)
    );
    let _ = writeln!(out, "  corr_x        {:.10e}", r.corr_x);
    let _ = writeln!(out, "  corr_y        {:.10e}", r.corr_y);
    let _ = writeln!(out, "  E             {:.10e}", r.e_param);
    let _ = writeln!(out, "  xi_rx, xi_ry  {:.10e}, {:.10e}", r.xi_rx, r.xi_ry);
    let _ = writeln!(out, "  |<J>|         {:.10e}", r.mean_spin_mag);
    let _ = writeln!(
        out,
        "  theta, phi    {:.10}, {:.10}",
        r.angles.theta, r.angles.phi
    );
    let _ = writeln!(
        out,
        "  spin squeezed {}",
        if r.is_spin_squeezed() { "yes" } else { "no" }
    );
    out
}

fn cmp(v: f64, reference: f64) -> &'static str {
    if v > reference {
        ">"
    } else if v < reference {
        "<"
    } else {
        "="
    }
}

/// `key=value` pairs on one line, in CSV column order.
pub fn machine(params: &SqueezedVacuumParams, r: &EntanglementReport) -> String {
    let record = SweepRow::new(params, r).to_record();
    CSV_HEADER
        .iter()
        .zip(record)
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub struct PointReport {
    pub text: String,
    pub discrepancy: Option<f64>,
}

pub fn build(params: &SqueezedVacuumParams, with_oracle: bool) -> dicke_core::Result<PointReport> {
    let closed = closed_form_report(params)?;
    let mut text = format!(
        "N = {}, m = {}, xi = {}\n",
        params.n_atoms(),
        format_m(params.two_m()),
        params.xi()
    );
    text.push_str(&human("closed form", &closed));
    let mut discrepancy = None;
    if with_oracle {
        let dense = oracle_report(params)?;
        text.push_str(&human("dense oracle", &dense));
        let d = path_discrepancy(&closed, &dense);
        let _ = writeln!(text, "max relative discrepancy {d:.3e}");
        discrepancy = Some(d);
    }
    text.push_str(&machine(params, &closed));
    text.push('\n');
    Ok(PointReport { text, discrepancy })
}
