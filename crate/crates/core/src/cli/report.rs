use std::fmt::Write as _;

use serde::Serialize;

use crate::ValidationReport;

/// Products, brackets or coproducts on block generators.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorTable {
    pub operation: String,
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectSummary {
    pub name: String,
    pub kind: String,
    pub semiring: String,
    pub size: u128,
    pub blocks: usize,
    pub generators: Vec<String>,
    pub tables: Vec<GeneratorTable>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

/// Everything one command run produces. Field order and list order are
/// fixed, so identical inputs give identical bytes.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub objects: Vec<ObjectSummary>,
    pub facts: Vec<Fact>,
    pub checks: Vec<ValidationReport>,
    pub outcome: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock milliseconds; only filled in on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(ValidationReport::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for o in &self.objects {
            let blocks = if o.blocks == 1 { "block" } else { "blocks" };
            writeln!(
                out,
                "object {} ({} over {}): {} elements, {} {blocks}",
                o.name, o.kind, o.semiring, o.size, o.blocks
            )
            .unwrap();
            if !o.generators.is_empty() {
                writeln!(out, "  generators: {}", o.generators.join(", ")).unwrap();
            }
            for t in &o.tables {
                writeln!(out, "  {}:", t.operation).unwrap();
                for e in &t.entries {
                    writeln!(out, "    {e}").unwrap();
                }
            }
        }
        for f in &self.facts {
            if f.value.contains('\n') {
                writeln!(out, "{}:", f.key).unwrap();
                for line in f.value.lines() {
                    writeln!(out, "  {line}").unwrap();
                }
            } else {
                writeln!(out, "{} = {}", f.key, f.value).unwrap();
            }
        }
        for r in &self.checks {
            let cases: u64 = r.checks.iter().map(|c| c.cases).sum();
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            writeln!(out, "{} laws: {verdict} ({} laws, {cases} cases)", r.subject, r.checks.len()).unwrap();
            for c in r.violations() {
                writeln!(out, "  FAIL {}: {}", c.law, c.witness.as_deref().unwrap_or_default()).unwrap();
            }
        }
        if let Some(e) = &self.error {
            writeln!(out, "error: {e}").unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(out, "time: {t} ms").unwrap();
        }
        writeln!(out, "result: {} (exit {})", self.outcome, self.exit_code).unwrap();
        out
    }
}
