//! Run configuration, report assembly and exit status.

use serde::Serialize;
use serde_json::{json, Value};

use cylkit::lifting::{Certificate, LiftingProblem, Status, Verdict, Witness};

use crate::formats::map_to_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub max_dim: usize,
    pub stage_budget: usize,
    pub seed: u64,
    pub format: Format,
    #[serde(rename = "truncation_J")]
    pub truncation_j: usize,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [("max-dim", self.max_dim), ("stage-budget", self.stage_budget), ("truncation-j", self.truncation_j)] {
            if v == 0 {
                return Err(format!("--{name} must be positive"));
            }
        }
        Ok(())
    }
}

/// One checked statement.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Entry {
    pub fn plain(check: impl Into<String>, status: Status) -> Entry {
        Entry {
            check: check.into(),
            status,
            cutoff: None,
            certificate: None,
            witness: None,
            notes: Vec::new(),
            budget: None,
            data: None,
        }
    }

    pub fn fact(check: impl Into<String>, holds: bool) -> Entry {
        Entry::plain(check, if holds { Status::YesCertified } else { Status::No })
    }

    pub fn from_verdict(check: impl Into<String>, v: &Verdict) -> Entry {
        let mut e = Entry::plain(check, v.status);
        e.cutoff = v.cutoff;
        e.notes = v.notes.clone();
        match &v.witness {
            Some(Witness::Certificate(c)) => e.certificate = Some(certificate_json(c)),
            Some(w) => e.witness = Some(witness_json(w)),
            None => {}
        }
        e.budget = Some(serde_json::to_value(&v.budget).expect("budget serializes"));
        e
    }

    pub fn with_data(mut self, data: Value) -> Entry {
        self.data = Some(data);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Entry {
        self.notes.push(note.into());
        self
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::NerveOfFunctor { source, target } => {
            json!({"kind": c.kind(), "source": source.name(), "target": target.name()})
        }
        Certificate::Retract(r) => json!({
            "kind": c.kind(),
            "replayed": r.check(),
            "cell_complex": map_to_json(&r.cell),
            "section": map_to_json(&r.section),
            "retraction": map_to_json(&r.retraction),
        }),
        _ => json!({"kind": c.kind()}),
    }
}

pub fn square_json(p: &LiftingProblem) -> Value {
    json!({
        "left": map_to_json(&p.left),
        "right": map_to_json(&p.right),
        "top": map_to_json(&p.top),
        "bottom": map_to_json(&p.bottom),
    })
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Diagonal(d) => json!({"kind": "diagonal", "map": map_to_json(d)}),
        Witness::Counterexample(sq) => json!({"kind": "unfillable_square", "square": square_json(sq)}),
        Witness::Refutation { fibration, square, label } => json!({
            "kind": "refutation",
            "label": label,
            "fibration": map_to_json(fibration),
            "square": square_json(square),
        }),
        Witness::Certificate(c) => certificate_json(c),
        Witness::Note(n) => json!({"kind": "note", "text": n}),
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub report_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub results: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<Value>,
    pub exit_status: i32,
}

/// 0 when every verdict is a YES, 1 on any NO, 2 on EXHAUSTED without NO.
pub fn exit_status(entries: &[Entry]) -> i32 {
    if entries.iter().any(|e| e.status == Status::No) {
        1
    } else if entries.iter().any(|e| e.status == Status::Exhausted) {
        2
    } else {
        0
    }
}

impl Report {
    pub fn new(command: String, config: RunConfig, results: Vec<Entry>) -> Report {
        let exit_status = exit_status(&results);
        Report {
            tool: "cylkit",
            report_version: 1,
            command,
            config,
            results,
            object: None,
            exit_status,
        }
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "cylkit {}  [max_dim={} stage_budget={} seed={} truncation_J={}]\n",
            self.command, c.max_dim, c.stage_budget, c.seed, c.truncation_j
        );
        for e in &self.results {
            out.push_str(&format!("{:<14} {}", e.status.as_str(), e.check));
            if let Some(d) = e.cutoff {
                out.push_str(&format!(" (up to dimension {d})"));
            }
            out.push('\n');
            if let Some(cert) = &e.certificate {
                out.push_str(&format!("    certificate: {}\n", cert["kind"].as_str().unwrap_or("?")));
            }
            if let Some(w) = &e.witness {
                out.push_str(&format!("    witness: {}\n", w["kind"].as_str().unwrap_or("?")));
            }
            for n in &e.notes {
                out.push_str(&format!("    note: {n}\n"));
            }
            if let Some(d) = &e.data {
                out.push_str(&format!("    data: {}\n", compact(d)));
            }
        }
        out.push_str(&format!("exit status {}\n", self.exit_status));
        out
    }
}

/// Short one-line rendering for the text format; big payloads are elided.
fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 200 {
        format!("{}…", &s[..s.char_indices().take_while(|(i, _)| *i < 200).last().map(|(i, _)| i).unwrap_or(0)])
    } else {
        s
    }
}
