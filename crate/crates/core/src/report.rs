//! Structured outcomes of identity checks, serializable for the CLI.

use serde::Serialize;

/// Outcome of one verification instance. Wall time is kept out of the JSON
/// form so reports stay byte-deterministic; the CSV form carries it.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub family: String,
    pub params: String,
    /// named exact counts computed for the instance, as decimal strings
    pub counts: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub cells: usize,
    #[serde(skip)]
    pub millis: u128,
}

impl VerificationReport {
    pub fn new(
        id: impl Into<String>,
        family: impl Into<String>,
        params: impl Into<String>,
    ) -> Self {
        VerificationReport {
            id: id.into(),
            family: family.into(),
            params: params.into(),
            counts: Vec::new(),
            lhs: String::new(),
            rhs: String::new(),
            pass: false,
            skipped: None,
            detail: None,
            cells: 0,
            millis: 0,
        }
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.skipped = Some(reason.into());
        self
    }

    pub fn csv_row(&self) -> String {
        let esc = |s: &str| {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            esc(&self.id),
            esc(&self.family),
            esc(&self.params),
            esc(&self.lhs),
            esc(&self.rhs),
            self.pass,
            self.cells,
            self.millis
        )
    }

    pub const CSV_HEADER: &'static str = "instance_id,family,params,lhs,rhs,equal,cells,millis";
}
