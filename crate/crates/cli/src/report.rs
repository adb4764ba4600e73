//! Report rows and the CSV/JSON writers.
//!
//! CSV schema is fixed: `experiment,N,truth,formula,residual,envelope,
//! constant,pass`, floats with 17 significant digits so every value
//! round-trips. Leading `#` comment lines carry provenance; the timestamp
//! line is suppressed by `--no-timestamp` so reports are byte-identical
//! across reruns.

use std::io::Write;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    /// Experiment id with inline provenance, e.g. `fujii[T=7.4e4]`.
    pub experiment: String,
    pub n: f64,
    pub truth: f64,
    pub formula: f64,
    pub residual: f64,
    pub envelope: f64,
    /// Fitted or measured constant the pass decision is based on.
    pub constant: f64,
    pub pass: bool,
}

impl ReportRow {
    /// Row for a residual measured against an envelope and a tolerance on
    /// the fitted constant.
    pub fn residual_row(
        experiment: String,
        n: f64,
        truth: f64,
        formula: f64,
        envelope: f64,
        tolerance: f64,
    ) -> Self {
        let residual = truth - formula;
        let constant = residual.abs() / envelope;
        ReportRow {
            experiment,
            n,
            truth,
            formula,
            residual,
            envelope,
            constant,
            pass: constant <= tolerance,
        }
    }

    /// Informational row: reported, never failing.
    pub fn info_row(experiment: String, n: f64, value: f64, scale: f64) -> Self {
        ReportRow {
            experiment,
            n,
            truth: value,
            formula: 0.0,
            residual: value,
            envelope: scale,
            constant: if scale != 0.0 { value.abs() / scale } else { value.abs() },
            pass: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Deterministic run description (command, inputs, parameters).
    pub provenance: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(provenance: Vec<String>, timestamp: bool) -> Self {
        let generated_at =
            timestamp.then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        Report { provenance, generated_at, rows: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        if let Some(ts) = &self.generated_at {
            writeln!(w, "# generated-at: {ts}")?;
        }
        for line in &self.provenance {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "experiment,N,truth,formula,residual,envelope,constant,pass")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.experiment,
                fmt17(r.n),
                fmt17(r.truth),
                fmt17(r.formula),
                fmt17(r.residual),
                fmt17(r.envelope),
                fmt17(r.constant),
                r.pass
            )?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)
    }
}

/// 17 significant digits: enough for f64 round-trip fidelity.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_roundtrip() {
        for v in [std::f64::consts::PI, -1.0 / 3.0, 2.0f64.powi(-40), 0.0, 1e300] {
            let s = fmt17(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_deterministic_without_timestamp() {
        let mut rep = Report::new(vec!["cmd: test".into()], false);
        rep.rows.push(ReportRow::residual_row("demo".into(), 4.0, 1.5, 1.0, 2.0, 1.0));
        let mut a = Vec::new();
        rep.write_csv(&mut a).unwrap();
        let mut b = Vec::new();
        rep.write_csv(&mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("# cmd: test\nexperiment,N,"));
        assert!(text.contains("demo,"));
    }

    #[test]
    fn pass_flag_tracks_tolerance() {
        let row = ReportRow::residual_row("t".into(), 1.0, 10.0, 9.0, 1.0, 0.5);
        assert!(!row.pass); // |residual| = 1 > 0.5 * envelope
        let row = ReportRow::residual_row("t".into(), 1.0, 10.0, 9.6, 1.0, 0.5);
        assert!(row.pass);
    }
}
