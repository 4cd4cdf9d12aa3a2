//! JSON-in, JSON-out operations behind the browser bindings. Kept free of
//! `wasm-bindgen` types so they run and test natively.

use guilbaud_core::aggregate::{tournament, window, PAIRS};
use guilbaud_core::prelude::*;
use guilbaud_core::restrictions::verdict;
use guilbaud_core::systems::{weighted_family, Violation};
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Same shape as the CLI's system documents.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SystemKind {
    MinimalCoalitions { coalitions: Vec<Vec<usize>> },
    MajorityChair { chair: usize },
    Dictatorship { dictator: usize },
    Weighted { weights: Vec<u64>, quota: u64 },
}

#[derive(Debug, Deserialize)]
struct SystemSpec {
    n: usize,
    #[serde(flatten)]
    kind: SystemKind,
}

fn parse_system(json: &str) -> Result<VotingSystem, String> {
    let spec: SystemSpec = serde_json::from_str(json).map_err(|e| e.to_string())?;
    let sys = match spec.kind {
        SystemKind::MinimalCoalitions { coalitions } => {
            VotingSystem::from_member_lists(spec.n, coalitions)
        }
        SystemKind::MajorityChair { chair } => majority_with_chair(spec.n, chair),
        SystemKind::Dictatorship { dictator } => dictatorship(spec.n, dictator),
        SystemKind::Weighted { weights, quota } => {
            if weights.len() != spec.n {
                return Err(format!("{} weights for {} members", weights.len(), spec.n));
            }
            weighted_family(&weights, quota)
        }
    }
    .map_err(|e| e.to_string())?;
    match sys.validate().violation {
        None => Ok(sys),
        Some(v) => Err(format!("not a Guilbaud system: {v}")),
    }
}

fn members(k: &Coalition) -> Vec<usize> {
    k.members().collect()
}

#[derive(Serialize)]
struct Pair {
    x: Candidate,
    y: Candidate,
    winner: Candidate,
    supporters: Vec<usize>,
    efficient: bool,
}

#[derive(Serialize)]
struct Window {
    start: u8,
    members: Vec<usize>,
    efficient: bool,
}

pub fn decide(system_json: &str, profiles: &[u8]) -> Result<String, String> {
    let sys = parse_system(system_json)?;
    let asg = Assignment::from_labels(profiles).map_err(|e| e.to_string())?;
    if asg.assembly() != sys.assembly() {
        return Err(format!(
            "{} profiles for {} members",
            profiles.len(),
            sys.n()
        ));
    }
    let t = tournament(&sys, &asg).map_err(|e| e.to_string())?;
    let outcome = t.decode();
    let mut pairs = Vec::new();
    for (x, y) in PAIRS {
        let pros = supporters(&asg, x, y).map_err(|e| e.to_string())?;
        pairs.push(Pair {
            x,
            y,
            winner: t.winner(x, y).map_err(|e| e.to_string())?,
            efficient: sys.is_efficient(&pros).map_err(|e| e.to_string())?,
            supporters: members(&pros),
        });
    }
    let windows: Vec<Window> = ProfileId::ALL
        .into_iter()
        .map(|p| {
            let k = window(&asg, p);
            Window {
                start: p.get(),
                efficient: sys.is_efficient(&k).expect("same assembly"),
                members: members(&k),
            }
        })
        .collect();
    let c = condition_c(&sys, &asg).map_err(|e| e.to_string())?;
    let restriction = verdict(&asg);
    let out = json!({
        "pairwise": pairs,
        "outcome": outcome.to_string(),
        "linear": outcome.is_linear(),
        "ranking": outcome.ranking().map(|r| r.get()),
        "windows": windows,
        "witnesses": c.witnesses.iter().map(|p| p.get()).collect::<Vec<_>>(),
        "condition_c": c.holds(),
        "value_restriction": restriction.value_restricted.map(|v| v.to_string()),
        "single_peaked_axis": restriction.single_peaked.map(|a| a.to_string()),
    });
    Ok(out.to_string())
}

pub fn validate_weighted(weights: &[u32], quota: u32) -> Result<String, String> {
    let weights: Vec<u64> = weights.iter().map(|&w| w as u64).collect();
    let sys = weighted_family(&weights, quota as u64).map_err(|e| e.to_string())?;
    let report = sys.validate();
    let violation = report.violation.as_ref().map(|v| match v {
        Violation::C1 {
            coalition,
            both_efficient,
        } => json!({
            "kind": "c1",
            "coalition": members(coalition),
            "complement": members(&coalition.complement()),
            "both_efficient": both_efficient,
            "message": v.to_string(),
        }),
        Violation::Antichain { .. } => json!({ "kind": "antichain", "message": v.to_string() }),
    });
    let out = json!({
        "valid": report.valid(),
        "minimal": sys.minimal().iter().map(members).collect::<Vec<_>>(),
        "violation": violation,
    });
    Ok(out.to_string())
}

/// Census of every assignment; refused above 7 members to keep the page
/// responsive.
pub fn census(system_json: &str) -> Result<String, String> {
    let sys = parse_system(system_json)?;
    if sys.n() > 7 {
        return Err("census in the browser is limited to 7 members".into());
    }
    let r = gap_census(&sys).map_err(|e| e.to_string())?;
    let mut out = serde_json::to_value(&r).map_err(|e| e.to_string())?;
    out["sen_check"] = json!(r.sen_check());
    Ok(out.to_string())
}
