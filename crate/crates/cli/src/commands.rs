//! The commands, each driven by a serializable configuration so that a
//! report can be re-run from its embedded manifest.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use polyvar::io::Input;
use polyvar::search::{local_max_probe, local_search, named_instances, SearchConfig, SimplexParams};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analyze::analyze;
use crate::checks::run_suite;
use crate::manifest::{InputDescriptor, RunManifest};
use crate::output::{csv_table, flatten, Emitted};
use crate::params::{p_label, parse_p, Tolerances};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    pub p: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Empty for every applicable check.
    pub checks: Vec<String>,
    pub p: Vec<String>,
    pub tolerances: Tolerances,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    Multistart {
        degree: usize,
        p: Vec<String>,
        starts: usize,
        seed: u64,
        max_evaluations: usize,
        max_restarts: usize,
    },
    Probe {
        p: Vec<String>,
        trials: usize,
        radius: f64,
        seed: u64,
    },
}

fn exponents(labels: &[String]) -> Result<Vec<f64>> {
    labels.iter().map(|s| parse_p(s)).collect()
}

fn package(command: &str, manifest: RunManifest, report: Value, summary: Value, csv: String, exit_code: u8) -> Emitted {
    Emitted {
        command: command.to_string(),
        json: json!({ "manifest": manifest, "report": report, "summary": summary }),
        csv,
        exit_code,
    }
}

pub fn run_analyze(input: InputDescriptor, cfg: AnalyzeConfig) -> Result<Emitted> {
    let report = analyze(&input.input()?, &exponents(&cfg.p)?)?;
    let summary = json!({ "instance": input.label() });
    let csv = flatten(&report)?;
    let manifest = RunManifest::new("analyze", Some(input), serde_json::to_value(&cfg)?, None);
    Ok(package("analyze", manifest, report, summary, csv, 0))
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    instance: &'a str,
    check: &'a str,
    target: &'a str,
    kind: String,
    status: String,
    margin: f64,
    boundary: bool,
    reverified: String,
}

fn enum_label(v: &impl Serialize) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn run_verify(input: InputDescriptor, cfg: VerifyConfig) -> Result<Emitted> {
    let outcome = run_suite(&input.input()?, &cfg.checks, &exponents(&cfg.p)?, &cfg.tolerances)?;
    let label = input.label();
    let rows: Vec<VerifyRow> = outcome
        .checks
        .iter()
        .map(|c| VerifyRow {
            instance: &label,
            check: &c.verdict.check,
            target: c.target.as_deref().unwrap_or(""),
            kind: enum_label(&c.verdict.kind),
            status: enum_label(&c.verdict.status),
            margin: c.verdict.margin,
            boundary: c.verdict.boundary,
            reverified: c.reverified.map(|b| b.to_string()).unwrap_or_default(),
        })
        .collect();
    let csv = csv_table(&rows)?;
    let summary = json!({
        "instance": label,
        "counts": outcome.counts,
        "theorem_violations": outcome.theorem_violations,
        "confirmed_discoveries": outcome.confirmed_discoveries,
        "unconfirmed_violations": outcome.unconfirmed_violations,
        "exit_code": outcome.exit_code,
    });
    let exit = outcome.exit_code as u8;
    let report = serde_json::to_value(&outcome.checks)?;
    let manifest = RunManifest::new("verify", Some(input), serde_json::to_value(&cfg)?, None);
    Ok(package("verify", manifest, report, summary, csv, exit))
}

#[derive(Serialize)]
struct StartRow {
    seed: u64,
    n: usize,
    p: String,
    start: usize,
    initial_ratio: f64,
    final_ratio: f64,
    evaluations: usize,
    converged: bool,
    roots: String,
}

#[derive(Serialize)]
struct ProbeRow {
    instance: String,
    p: String,
    trials: usize,
    radius: f64,
    base_ratio: f64,
    increases: usize,
    fraction: f64,
    max_change: f64,
}

fn roots_field(roots: &[polyvar::Complex64]) -> String {
    roots.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect::<Vec<_>>().join(" ")
}

pub fn run_search(input: Option<InputDescriptor>, mode: SearchMode) -> Result<Emitted> {
    let config = serde_json::to_value(&mode)?;
    match &mode {
        SearchMode::Multistart {
            degree,
            p,
            starts,
            seed,
            max_evaluations,
            max_restarts,
        } => {
            let mut records = vec![];
            let mut rows = vec![];
            for p in exponents(p)? {
                let cfg = SearchConfig {
                    degree: *degree,
                    p,
                    starts: *starts,
                    seed: *seed,
                    max_evaluations: *max_evaluations,
                    max_restarts: *max_restarts,
                    simplex: SimplexParams::default(),
                };
                let rec = local_search(&cfg)?;
                rows.extend(rec.starts.iter().map(|s| StartRow {
                    seed: *seed,
                    n: *degree,
                    p: p_label(p),
                    start: s.index,
                    initial_ratio: s.initial_ratio,
                    final_ratio: s.final_ratio,
                    evaluations: s.evaluations,
                    converged: s.converged,
                    roots: roots_field(&s.roots),
                }));
                records.push((p, rec));
            }
            let candidates = records.iter().filter(|(_, r)| r.candidate).count();
            let summary = json!({
                "best_ratio": records.iter().map(|(p, r)| (p_label(*p), r.best_ratio)).collect::<BTreeMap<_, _>>(),
                "verified_ratio": records.iter().map(|(p, r)| (p_label(*p), r.verified_ratio)).collect::<BTreeMap<_, _>>(),
                "candidates": candidates,
            });
            let report = serde_json::to_value(records.iter().map(|(_, r)| r).collect::<Vec<_>>())?;
            let exit = if candidates > 0 { 2 } else { 0 };
            let manifest = RunManifest::new("search", None, config, Some(*seed));
            Ok(package("search", manifest, report, summary, csv_table(&rows)?, exit))
        }
        SearchMode::Probe { p, trials, radius, seed } => {
            let input = input.context("a probe needs --repro or --input")?;
            let Input::Polynomial { polynomial } = input.input()? else {
                bail!("a probe needs a polynomial input");
            };
            let mut reports = vec![];
            let mut rows = vec![];
            for p in exponents(p)? {
                let r = local_max_probe(&polynomial, p, *trials, *radius, *seed)?;
                rows.push(ProbeRow {
                    instance: input.label(),
                    p: p_label(p),
                    trials: r.trials,
                    radius: r.radius,
                    base_ratio: r.base_ratio,
                    increases: r.increases,
                    fraction: r.fraction,
                    max_change: r.max_change,
                });
                reports.push(json!({ "p": p_label(p), "probe": r }));
            }
            let summary = json!({
                "instance": input.label(),
                "fraction": rows.iter().map(|r| (r.p.clone(), r.fraction)).collect::<BTreeMap<_, _>>(),
            });
            let manifest = RunManifest::new("search", Some(input), config, Some(*seed));
            Ok(package("search", manifest, Value::Array(reports), summary, csv_table(&rows)?, 0))
        }
    }
}

#[derive(Serialize)]
struct ListRow {
    name: String,
    kind: String,
    description: String,
}

pub fn run_list() -> Result<Emitted> {
    let all = named_instances();
    let rows: Vec<ListRow> = all
        .iter()
        .map(|i| ListRow {
            name: i.name.clone(),
            kind: serde_json::to_value(&i.instance).ok().and_then(|v| v["kind"].as_str().map(str::to_string)).unwrap_or_default(),
            description: i.description.clone(),
        })
        .collect();
    let manifest = RunManifest::new("list", None, Value::Null, None);
    let report = serde_json::to_value(&all)?;
    let summary = json!({ "count": all.len() });
    Ok(package("list", manifest, report, summary, csv_table(&rows)?, 0))
}

/// Re-runs the command recorded in a report's manifest.
pub fn replay(report: &Value) -> Result<Emitted> {
    let manifest: RunManifest =
        serde_json::from_value(report.get("manifest").cloned().context("report has no manifest")?)?;
    let input = manifest.input.clone();
    let need_input = || input.clone().context("manifest has no input");
    match manifest.command.as_str() {
        "analyze" => run_analyze(need_input()?, serde_json::from_value(manifest.config)?),
        "verify" => run_verify(need_input()?, serde_json::from_value(manifest.config)?),
        "search" => run_search(input, serde_json::from_value(manifest.config)?),
        "list" => run_list(),
        other => bail!("unknown command `{other}` in manifest"),
    }
}
