//! Experiment report envelope and emission (human lines, JSON, CSV).
//!
//! The serialized reports contain no timing, so repeated runs with the same
//! parameters are byte-identical; wall time is printed on the human lines
//! only.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use intcomb_core::report::Status;

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: serde_json::Value,
    pub status: Status,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub wall: Duration,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl ExperimentReport {
    pub fn new(
        experiment: &str,
        params: serde_json::Value,
        status: Status,
        details: impl Serialize,
    ) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            params,
            status,
            details: serde_json::to_value(details).expect("details serialize"),
            wall: Duration::ZERO,
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn human_line(&self) -> String {
        format!(
            "{:<24} {}  [{:.2?}]",
            self.experiment, self.status, self.wall
        )
    }
}

pub fn emit(
    reports: &[ExperimentReport],
    json_path: Option<&Path>,
    csv_path: Option<&Path>,
) -> anyhow::Result<()> {
    let json_to_stdout = json_path.is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout {
        for r in reports {
            println!("{}", r.human_line());
            if r.status != Status::Pass {
                // surface the failure details on the human channel too
                println!("  details: {}", r.details);
            }
        }
    }
    if let Some(path) = json_path {
        let body = serde_json::to_string_pretty(reports)?;
        if json_to_stdout {
            println!("{body}");
        } else {
            std::fs::write(path, body.as_bytes())?;
        }
    }
    if let Some(path) = csv_path {
        let mut tables: Vec<&str> = Vec::new();
        for r in reports {
            if let Some(csv) = &r.csv {
                tables.push(csv);
            }
        }
        if tables.is_empty() {
            eprintln!("note: no experiment in this run produces a CSV table");
        } else {
            let mut f = std::fs::File::create(path)?;
            for t in tables {
                f.write_all(t.as_bytes())?;
            }
        }
    }
    Ok(())
}
