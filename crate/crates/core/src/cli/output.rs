//! Report envelope, adjudication list and the text renderers shared by the
//! subcommands.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::verify::{CheckReport, Status};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "plab";

/// A place where the computed form of a relation replaces the printed one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Adjudication {
    pub id: String,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

impl Adjudication {
    fn new(id: &str, printed: &str, computed: &str, note: &str) -> Self {
        Self { id: id.into(), printed: printed.into(), computed: computed.into(), note: note.into() }
    }
}

/// Convention fixes made when the catalog is built, independent of any suite run.
pub fn standing_adjudications() -> Vec<Adjudication> {
    vec![
        Adjudication::new(
            "orbital angular momentum",
            "J_k = i(p_l d_j - p_j d_l)",
            "J_k = i(p_j d_l - p_l d_j), (k, l, j) cyclic",
            "the printed order gives [J1,P2] = -i P3",
        ),
        Adjudication::new(
            "time reversal of U5/U6",
            "T = tau K Upsilon rho1",
            "T = (I x tau) K Upsilon",
            "the printed form anticommutes with P0",
        ),
        Adjudication::new(
            "Pauli-Lubanski vector",
            "W_j = P0 J_j - (P x K)_j",
            "W_j = P0 J_j + (P x K)_j",
            "the printed square is not a multiple of Id",
        ),
        Adjudication::new(
            "Pauli-Lubanski constant",
            "varpi = mu s(s+1)",
            "varpi = -mu^2 s(s+1)",
            "signature (+,-,-,-); the printed value has the wrong sign and dimension",
        ),
        Adjudication::new(
            "Klein-Gordon continuity",
            "d_t rho - div j = 0",
            "d_t rho + div j = 0",
            "direct consequence of the wave equation",
        ),
        Adjudication::new(
            "Feshbach-Villars factor",
            "phi, chi = (psi +- psi_t / m) / sqrt 2",
            "phi, chi = (psi +- i psi_t / m) / sqrt 2",
            "only the i/m split gives |phi|^2 - |chi|^2 proportional to the Klein-Gordon density",
        ),
        Adjudication::new(
            "position-space energy operator",
            "P0 = sqrt(mu^2 + nabla^2) and sqrt(mu^2 - nabla^2), both printed",
            "momentum multiplier +sqrt(mu^2 + p^2)",
            "the only reading consistent with P0 = p0 on the shell",
        ),
    ]
}

/// Adjudicated relations found in `reports`, one entry per distinct id and printed form.
pub fn collect_adjudications<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Vec<Adjudication> {
    let mut seen = BTreeSet::new();
    for report in reports {
        for r in &report.relations {
            if r.status == Status::Adjudicated {
                seen.insert(Adjudication {
                    id: r.id.clone(),
                    printed: r.printed.clone().unwrap_or_default(),
                    computed: r.computed.clone().unwrap_or_default(),
                    note: r.note.clone().unwrap_or_default(),
                });
            }
        }
    }
    let mut out = standing_adjudications();
    out.extend(seen);
    out
}

/// The JSON document every subcommand emits.
pub fn envelope(command: &str, ok: bool, result: Value, adjudications: &[Adjudication]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "ok": ok,
        "result": result,
        "adjudications": adjudications,
    })
}

pub fn adjudications_markdown(adj: &[Adjudication]) -> String {
    let mut out = String::from("## Adjudications\n\n| relation | printed | computed | note |\n|---|---|---|---|\n");
    for a in adj {
        out.push_str(&format!("| {} | `{}` | `{}` | {} |\n", a.id, a.printed, a.computed, a.note));
    }
    out
}

/// RFC 4180 field quoting.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(fields: &[&str]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

pub const RELATION_CSV_HEADER: &str = "rep,suite,id,status,expected_violation,printed,computed,witness,note\n";

pub fn relations_csv(reports: &[&CheckReport]) -> String {
    let mut out = String::from(RELATION_CSV_HEADER);
    for rep in reports {
        for r in &rep.relations {
            out.push_str(&csv_row(&[
                &rep.rep,
                &rep.suite,
                &r.id,
                r.status.as_str(),
                if r.expected_violation { "true" } else { "false" },
                r.printed.as_deref().unwrap_or(""),
                r.computed.as_deref().unwrap_or(""),
                r.witness.as_deref().unwrap_or(""),
                r.note.as_deref().unwrap_or(""),
            ]));
        }
    }
    out
}
