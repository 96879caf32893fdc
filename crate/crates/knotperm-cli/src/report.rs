//! Machine-readable classification reports. Field order is fixed
//! (alphabetical) so serialized output is stable enough for golden files,
//! and parsing then re-serializing a report is byte-identical.

use serde::{Deserialize, Serialize};

use knotperm::decide::{CycleVerdict, LinkVerdict, LinkedWitness};
use knotperm::diagram::{thurston_bennequin, ur_indices};
use knotperm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    pub crossings: usize,
    pub input: String,
    pub n: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tb: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    pub ur_indices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub writhe: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_a: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_b: Option<Vec<usize>>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
}

fn base_report(input: &str, p: &Permutation) -> ClassifyReport {
    let crossings = knotperm::diagram::crossings(p).len();
    ClassifyReport {
        components: None,
        crossings,
        input: input.to_string(),
        n: p.n(),
        status: String::new(),
        tb: if p.is_derangement() {
            Some(thurston_bennequin(p).expect("derangement"))
        } else {
            None
        },
        tree: None,
        ur_indices: ur_indices(p),
        witness: None,
        writhe: -(crossings as i64),
    }
}

pub fn cycle_report(input: &str, p: &Permutation, verdict: &CycleVerdict) -> ClassifyReport {
    let mut report = base_report(input, p);
    match verdict {
        CycleVerdict::Unknot { tree } => {
            report.status = "unknot".to_string();
            report.tree = Some(tree.to_string());
        }
        CycleVerdict::Knotted => report.status = "knotted".to_string(),
    }
    report
}

pub fn link_report(input: &str, p: &Permutation, verdict: &LinkVerdict) -> ClassifyReport {
    let mut report = base_report(input, p);
    match verdict {
        LinkVerdict::Unlink { components } => {
            report.status = "unlink".to_string();
            report.components = Some(*components);
        }
        LinkVerdict::Linked { witness } => {
            report.status = "linked".to_string();
            report.components = Some(p.cycle_count());
            report.witness = Some(match witness {
                LinkedWitness::CrossingPair {
                    cycle_a,
                    cycle_b,
                    pair,
                } => WitnessReport {
                    component: None,
                    cycle_a: Some(cycle_a.clone()),
                    cycle_b: Some(cycle_b.clone()),
                    kind: "crossing-pair".to_string(),
                    pair: Some(*pair),
                },
                LinkedWitness::KnottedComponent { cycle } => WitnessReport {
                    component: Some(cycle.clone()),
                    cycle_a: None,
                    cycle_b: None,
                    kind: "knotted-component".to_string(),
                    pair: None,
                },
            });
        }
    }
    report
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The human-readable form: the bare status on the first line, then one
/// `key: value` line per known quantity.
pub fn render_text(report: &ClassifyReport) -> String {
    let mut out = String::new();
    let status_line = match (report.status.as_str(), report.components) {
        ("unlink", Some(k)) => format!("unlink({k})"),
        (s, _) => s.to_string(),
    };
    out.push_str(&status_line);
    out.push('\n');
    out.push_str(&format!("input: {}\n", report.input));
    out.push_str(&format!("n: {}\n", report.n));
    if let Some(k) = report.components {
        out.push_str(&format!("components: {k}\n"));
    }
    out.push_str(&format!("crossings: {}\n", report.crossings));
    if report.ur_indices.is_empty() {
        out.push_str("ur-indices:\n");
    } else {
        out.push_str(&format!("ur-indices: {}\n", join(&report.ur_indices)));
    }
    out.push_str(&format!("writhe: {}\n", report.writhe));
    if let Some(tb) = report.tb {
        out.push_str(&format!("tb: {tb}\n"));
    }
    if let Some(tree) = &report.tree {
        out.push_str(&format!("tree: {tree}\n"));
    }
    if let Some(w) = &report.witness {
        match w.kind.as_str() {
            "crossing-pair" => {
                let a = w.cycle_a.as_deref().unwrap_or(&[]);
                let b = w.cycle_b.as_deref().unwrap_or(&[]);
                let (h, v) = w.pair.unwrap_or((0, 0));
                out.push_str(&format!(
                    "witness: cycles ({}) and ({}) cross at ({h}, {v})\n",
                    join(a),
                    join(b)
                ));
            }
            _ => {
                let c = w.component.as_deref().unwrap_or(&[]);
                out.push_str(&format!("witness: knotted component ({})\n", join(c)));
            }
        }
    }
    out
}
