//! JSON report envelope shared by all subcommands (schema `report.v1`).
//! Reports go to stdout as the only stdout output; human diagnostics belong
//! on stderr.

use serde_json::{json, Value};
use std::time::Instant;

pub struct Report {
    command: String,
    inputs: Value,
    seed: Option<u64>,
    provenance: Vec<String>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            seed: None,
            provenance: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.provenance.push(text.into());
        self
    }

    pub fn finish(self, results: Value) -> Value {
        json!({
            "schema": "report.v1",
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "results": results,
            "provenance": self.provenance,
            "timings_ms": { "total": self.started.elapsed().as_secs_f64() * 1e3 },
        })
    }
}

pub fn print_report(report: Value) {
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
}
