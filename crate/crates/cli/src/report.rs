//! Reports and their text and JSON renderings. The text form is derived
//! from the same [`Report`] value that is serialized, so both carry the
//! same data.

use std::fmt::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::workspace::TaskKind;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub assumptions: Vec<String>,
    pub tasks: Vec<TaskReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub name: String,
    pub kind: String,
    /// What the task was run on, e.g. `f: Y -> X`.
    pub subject: String,
    /// Keyed by degree, in the order the task produced them.
    pub tables: IndexMap<String, Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refused: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub dims: IndexMap<String, usize>,
    pub exact: bool,
    /// `"<label>: <witness>"`.
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_exact: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unaudited: Vec<String>,
}

impl Row {
    pub fn new() -> Self {
        Row {
            exact: true,
            ..Row::default()
        }
    }

    pub fn dim(&mut self, label: impl Into<String>, dim: usize) -> &mut Self {
        self.dims.insert(label.into(), dim);
        self
    }

    pub fn witness(&mut self, label: &str, w: impl AsRef<str>) -> &mut Self {
        self.witnesses.push(format!("{label}: {}", w.as_ref()));
        self
    }

    fn witnesses_of<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.witnesses.iter().filter_map(move |w| {
            w.strip_prefix(label).and_then(|rest| rest.strip_prefix(": "))
        })
    }
}

impl TaskReport {
    pub fn new(name: &str, kind: TaskKind, subject: String) -> Self {
        TaskReport {
            name: name.to_string(),
            kind: kind.name().to_string(),
            subject,
            tables: IndexMap::new(),
            notes: Vec::new(),
            refused: None,
            elapsed_ms: None,
        }
    }

    pub fn row(&mut self, degree: usize) -> &mut Row {
        self.tables.entry(degree.to_string()).or_insert_with(Row::new)
    }

    fn sequence_like(&self) -> bool {
        matches!(self.kind.as_str(), "g-sequence" | "exactness" | "les")
    }

    fn check_like(&self) -> bool {
        matches!(self.kind.as_str(), "thom" | "grivel" | "splitting" | "tncz")
    }
}

pub fn render_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gseq {}", r.tool_version);
    if !r.assumptions.is_empty() {
        out.push_str("assumptions:\n");
        for a in &r.assumptions {
            let _ = writeln!(out, "  - {a}");
        }
    }
    for t in &r.tasks {
        let _ = writeln!(out, "\ntask {} ({}) on {}", t.name, t.kind, t.subject);
        if let Some(ms) = t.elapsed_ms {
            let _ = writeln!(out, "  elapsed {ms} ms");
        }
        if let Some(reason) = &t.refused {
            let _ = writeln!(out, "  refused: {reason}");
        }
        for (degree, row) in &t.tables {
            if t.check_like() {
                let verdict = match (t.kind.as_str(), row.exact) {
                    ("tncz", true) => "trivializes",
                    ("tncz", false) => "no ψ",
                    (_, true) => "ok",
                    (_, false) => "fails",
                };
                let _ = writeln!(out, "  degree {degree}: {verdict}");
            } else {
                let _ = writeln!(out, "  degree {degree}");
            }
            for (label, dim) in &row.dims {
                let mut line = format!("    {label} dim {dim}");
                if t.sequence_like() {
                    let status = if row.unaudited.contains(label) {
                        "not audited"
                    } else if row.non_exact.contains(label) {
                        "non-exact"
                    } else {
                        "exact"
                    };
                    let _ = write!(line, ", {status}");
                }
                let ws: Vec<&str> = row.witnesses_of(label).collect();
                match ws.len() {
                    0 => {}
                    1 => {
                        let _ = write!(line, ", witness {}", ws[0]);
                    }
                    _ => {
                        let _ = write!(line, ", witnesses {}", ws.join(", "));
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            for w in &row.witnesses {
                if !row.dims.keys().any(|l| w.starts_with(&format!("{l}: "))) {
                    let _ = writeln!(out, "    {w}");
                }
            }
        }
        for n in &t.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    out
}
