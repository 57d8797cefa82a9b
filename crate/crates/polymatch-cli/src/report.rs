//! JSON output for the `count` subcommand. Counts are decimal strings:
//! they routinely exceed both `u64` and exact `f64` range.

use serde::Serialize;

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub mode: &'a str,
    pub input: &'a str,
    pub method: &'a str,
    pub result: String,
    pub elapsed_s: f64,
    pub agreement: Option<bool>,
}

impl RunReport<'_> {
    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}
