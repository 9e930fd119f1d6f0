//! Campaign reports: fixed-schema CSV rows plus a worst-case summary.
//! Identical configurations must serialize to identical bytes, so floats
//! are written with Rust's shortest round-trip formatting and rows are
//! emitted in instance order.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// Worst cases and counters aggregated over one campaign.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub instances: usize,
    pub violations: usize,
    /// Named worst-case quantities in a fixed order.
    pub worst: Vec<(String, f64)>,
    /// Largest smallness constant with no conditional-bound violation;
    /// `None` when nothing constrains it.
    pub max_feasible_c0: Option<f64>,
    /// Free-form remarks appended to the CSV as comment lines.
    pub notes: Vec<String>,
}

/// One campaign's rows and summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Which check produced this report (subcommand name).
    pub check: String,
    /// CSV header, fixed per check.
    pub header: &'static str,
    /// Data rows, one per instance event, in instance order.
    pub rows: Vec<String>,
    pub summary: Summary,
}

/// Shortest round-trip decimal form; infinities and NaN keep their Rust
/// spellings.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.violations == 0
    }

    /// Full CSV: header, rows, then `#`-prefixed summary lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        let _ = write!(
            out,
            "# summary check={} instances={} violations={}",
            self.check, self.summary.instances, self.summary.violations
        );
        for (name, value) in &self.summary.worst {
            let _ = write!(out, " {name}={}", fmt_f64(*value));
        }
        if let Some(c0) = self.summary.max_feasible_c0 {
            let _ = write!(out, " max_feasible_c0={}", fmt_f64(c0));
        }
        out.push('\n');
        for note in &self.summary.notes {
            let _ = writeln!(out, "# note {note}");
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())
    }

    /// Short human-readable outcome for standard output.
    pub fn human_summary(&self) -> String {
        let mut out = format!(
            "{}: {} instances, {} violations",
            self.check, self.summary.instances, self.summary.violations
        );
        for (name, value) in &self.summary.worst {
            let _ = write!(out, ", {name}={value:.6e}");
        }
        if let Some(c0) = self.summary.max_feasible_c0 {
            let _ = write!(out, ", max feasible c0={c0:.6e}");
        }
        for note in &self.summary.notes {
            let _ = write!(out, "\n  note: {note}");
        }
        out
    }
}
