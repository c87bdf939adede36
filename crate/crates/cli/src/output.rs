//! CSV emission with 17 significant digits.

use std::io::Write;

use rhqr_core::la::MetricRow;

use crate::factor::FactorReport;
use crate::gmres::GmresRow;

/// `v` with 17 significant digits; enough to round-trip any double.
pub fn fmt_sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn write_preamble<W: Write>(out: &mut W, deterministic: bool, notes: &[String]) -> std::io::Result<()> {
    if !deterministic {
        writeln!(out, "# generated {}", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))?;
    }
    for n in notes {
        writeln!(out, "# {n}")?;
    }
    Ok(())
}

/// Factorization sweep as CSV: optional comment lines, header, one row per sampled `j`.
pub fn write_factor_csv<W: Write>(out: W, report: &FactorReport, deterministic: bool, notes: &[String]) -> csv::Result<()> {
    let mut out = out;
    let mut notes = notes.to_vec();
    if let Some(eps) = report.epsilon {
        notes.push(format!("epsilon {}", fmt_sig17(eps)));
    }
    write_preamble(&mut out, deterministic, &notes)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = MetricRow::FIELDS.to_vec();
    header.push("status");
    w.write_record(&header)?;
    for row in &report.rows {
        let m = &row.metrics;
        w.write_record([
            m.j.to_string(),
            fmt_sig17(m.cond_q),
            fmt_sig17(m.cond_sketch_q),
            fmt_sig17(m.fro_rel_err),
            fmt_sig17(m.max_col_rel_err),
            fmt_sig17(m.orth_err),
            row.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_gmres_csv<W: Write>(out: W, rows: &[GmresRow], deterministic: bool, notes: &[String]) -> csv::Result<()> {
    let mut out = out;
    write_preamble(&mut out, deterministic, notes)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(GmresRow::FIELDS)?;
    for r in rows {
        w.write_record([
            r.j.to_string(),
            fmt_sig17(r.sketched_resid),
            fmt_sig17(r.true_resid),
            fmt_sig17(r.arnoldi_rel_err),
            fmt_sig17(r.cond_basis),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
