//! Summary report data: computed verdicts, genus-derived verdicts, and
//! agreement flags, renderable as a stable text table or JSON.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Never,
    Unsupported,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Never => "never",
            Verdict::Unsupported => "unsupported",
            Verdict::Skipped => "skipped",
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Pass => Some(true),
            Verdict::Fail => Some(false),
            _ => None,
        }
    }
}

/// One row of the summary: `computed` distinguishes measured verdicts from
/// ones filled in by the genus-appropriate equivalence theorems.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub verdict: Verdict,
    pub computed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryReport {
    pub model: String,
    pub note: Option<String>,
    pub vertices: usize,
    pub arrows: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub genus: i64,
    pub checks: Vec<CheckRow>,
    pub agreement: String,
    pub exit_code: i32,
}

impl SummaryReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("model: {}\n", self.model));
        if let Some(note) = &self.note {
            out.push_str(&format!("note: {note}\n"));
        }
        out.push_str(&format!(
            "vertices {}  arrows {}  faces {}  chi {}  genus {}\n",
            self.vertices, self.arrows, self.faces, self.euler_characteristic, self.genus
        ));
        out.push('\n');
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
        out.push_str(&format!("{:name_w$}  {:11}  {:8}  detail\n", "check", "verdict", "source"));
        for row in &self.checks {
            out.push_str(&format!(
                "{:name_w$}  {:11}  {:8}  {}\n",
                row.name,
                row.verdict.as_str(),
                if row.computed { "computed" } else { "derived" },
                row.detail
            ));
        }
        out.push('\n');
        out.push_str(&format!("agreement: {}\n", self.agreement));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
