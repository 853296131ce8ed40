//! Human, JSON-lines and CSV emission.

use std::io::{self, Write};

use quizzy::report::{OrbitalReport, SuiteOutcome, CSV_HEADER};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

pub struct Output {
    format: Format,
    csv_rows: Vec<OrbitalReport>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output {
            format,
            csv_rows: Vec::new(),
        }
    }

    fn line(&self, s: &str) {
        let mut out = io::stdout().lock();
        let _ = writeln!(out, "{s}");
    }

    pub fn report(&mut self, r: OrbitalReport) {
        match self.format {
            Format::Human => self.line(&r.to_string()),
            Format::Json => self.line(&serde_json::to_string(&r).unwrap()),
            Format::Csv => self.csv_rows.push(r),
        }
    }

    /// A report that only has a row in CSV; other formats carry it in an object.
    pub fn csv_only(&mut self, r: OrbitalReport) {
        if self.format == Format::Csv {
            self.csv_rows.push(r);
        }
    }

    /// Structured output without a single value (lists, matrices, breakdowns).
    pub fn object(&mut self, v: Value, human: impl FnOnce() -> String) {
        match self.format {
            Format::Human => self.line(&human()),
            Format::Json => self.line(&v.to_string()),
            Format::Csv => {}
        }
    }

    pub fn note(&mut self, msg: &str) {
        eprintln!("note: {msg}");
    }

    pub fn suite(&mut self, o: &SuiteOutcome) {
        match self.format {
            Format::Json => self.line(&serde_json::to_string(o).unwrap()),
            Format::Csv => self
                .csv_rows
                .extend(o.checks.iter().flat_map(|c| c.reports.iter().cloned())),
            Format::Human => {
                for c in &o.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    self.line(&format!("[{tag}] {}/{}: {}", o.suite, c.name, c.detail));
                    for r in &c.reports {
                        self.line(&format!("    {r}"));
                    }
                    if let Some(d) = &c.discrepancy {
                        for l in d.to_string().lines() {
                            self.line(&format!("    {l}"));
                        }
                    }
                }
                let failed = o.checks.iter().filter(|c| !c.passed).count();
                self.line(&format!(
                    "{}: {}/{} checks passed",
                    o.suite,
                    o.checks.len() - failed,
                    o.checks.len()
                ));
            }
        }
    }

    /// Flushes CSV rows, sorted by computation key.
    pub fn finish(&mut self) {
        if self.format != Format::Csv {
            return;
        }
        self.csv_rows.sort_by(|a, b| a.key().cmp(&b.key()));
        self.line(CSV_HEADER);
        for r in &self.csv_rows {
            self.line(&r.csv_row());
        }
    }
}
