use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use trollconf::conflict::ConflictBreakdown;
use trollconf::pipeline::Message;
use trollconf::Report;

pub const TOOL: &str = "trollconf";

/// Machine-readable detection output.
///
/// `meta` holds the only run-dependent fields; everything else is a pure
/// function of the input file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: String,
    pub report: Report,
    pub meta: RunMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub generated_unix_ms: u128,
    pub elapsed_us: u128,
}

impl ReportDocument {
    pub fn new(input: &str, report: Report, meta: RunMeta) -> Self {
        ReportDocument {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input: input.to_string(),
            report,
            meta,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let width = report
        .per_user
        .iter()
        .map(|u| u.user.as_str().len())
        .max()
        .unwrap_or(4)
        .max(4);
    writeln!(out, "{:<width$}  {:>8}  {:>10}  cluster", "user", "messages", "conf_user").unwrap();
    for u in &report.per_user {
        let cluster = if report.is_troll(&u.user) { "troll" } else { "other" };
        writeln!(out, "{:<width$}  {:>8}  {:>10.6}  {cluster}", u.user.as_str(), u.messages, u.conf_user).unwrap();
    }
    let join = |ids: &[trollconf::pipeline::UserId]| ids.iter().map(|u| u.as_str()).collect::<Vec<_>>().join(", ");
    writeln!(out).unwrap();
    writeln!(out, "trolls: {{{}}}", join(&report.partition.trolls)).unwrap();
    writeln!(out, "others: {{{}}}", join(&report.partition.others)).unwrap();
    writeln!(
        out,
        "centers: trolls {:.6}, others {:.6}",
        report.centers.trolls, report.centers.others
    )
    .unwrap();
    out
}

pub fn render_breakdown(a: &Message<f64>, b: &Message<f64>, breakdown: &ConflictBreakdown<f64>) -> String {
    let mut out = String::new();
    writeln!(out, "a: rank {} by {}", a.rank, a.author).unwrap();
    writeln!(out, "b: rank {} by {}", b.rank, b.author).unwrap();
    for (name, value) in [
        ("d_inc(a,b)", breakdown.inclusion_ab),
        ("d_inc(b,a)", breakdown.inclusion_ba),
        ("sigma_inc", breakdown.sigma_inc),
        ("jousselme", breakdown.distance),
        ("conflict", breakdown.conflict),
    ] {
        writeln!(out, "{name:<11} {value:.15}").unwrap();
    }
    out
}
