//! Command-line front end: `validate`, `decide`, `scan` and `census`.
//!
//! Exit status is 0 on success, 1 on a domain failure (invalid system,
//! theorem violation) and 2 on usage or parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use guilbaud_core::aggregate::{tournament, window, PAIRS};
use guilbaud_core::prelude::*;
use guilbaud_core::restrictions::{gap_census_with, verdict};
use guilbaud_core::systems::{DEFAULT_ENUMERATION_MAX, OPT_IN_ENUMERATION_MAX};
use serde::Serialize;

pub mod documents;

use documents::{read_json, AssignmentDocument, SystemDocument};

#[derive(Debug, Parser)]
#[command(
    name = "guilbaud",
    version,
    about = "Guilbaud voting systems over three candidates"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for scans and censuses.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Raise the scan bound; 7 enables the opt-in size.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_MAX)]
    pub max_n: usize,

    /// Reserved; every operation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a system document against C1 and the antichain property.
    Validate { system: PathBuf },
    /// Aggregate one assignment and evaluate the window condition on it.
    Decide {
        system: PathBuf,
        assignment: PathBuf,
    },
    /// Verify the linearity condition over every system on n members.
    Scan {
        n: usize,
        /// Include per-system counts of assignments failing the condition.
        #[arg(long)]
        per_system: bool,
    },
    /// Compare value restriction with the window condition over all assignments.
    #[command(group(ArgGroup::new("source").required(true).args(["system", "majority", "dictatorship"])))]
    Census {
        /// System document to census.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Built-in simple majority on N members (chair 0 breaks ties).
        #[arg(long, value_name = "N")]
        majority: Option<usize>,
        /// Built-in dictatorship of member 0 on N members.
        #[arg(long, value_name = "N")]
        dictatorship: Option<usize>,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Usage or parse error, exit status 2.
    Usage(String),
    /// Domain failure, exit status 1.
    Domain(String),
}

impl From<guilbaud_core::Error> for CliError {
    fn from(e: guilbaud_core::Error) -> Self {
        match e {
            guilbaud_core::Error::NotGuilbaud(_) => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Output of a command: its text or JSON rendering and whether it found a
/// domain failure.
pub struct Rendered {
    pub body: String,
    pub failed: bool,
}

pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Validate { system } => cmd_validate(cli, system),
        Command::Decide { system, assignment } => cmd_decide(cli, system, assignment),
        Command::Scan { n, per_system } => cmd_scan(cli, *n, *per_system),
        Command::Census {
            system,
            majority,
            dictatorship: dictator_n,
        } => {
            let (label, sys) = match (system, majority, dictator_n) {
                (Some(path), _, _) => {
                    let doc: SystemDocument = read_json(path)?;
                    (path.display().to_string(), doc.to_system()?)
                }
                (_, Some(n), _) => (format!("majority (n={n})"), majority_with_chair(*n, 0)?),
                (_, _, Some(n)) => (format!("dictatorship (n={n})"), dictatorship(*n, 0)?),
                _ => unreachable!("clap requires a source"),
            };
            cmd_census(cli, &label, &sys)
        }
    }
}

fn finish<T: Serialize>(cli: &Cli, value: &T, text: String, failed: bool) -> Rendered {
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        s
    } else {
        text
    };
    Rendered { body, failed }
}

fn members(k: &Coalition) -> Vec<usize> {
    k.members().collect()
}

#[derive(Serialize)]
struct ViolationOutput {
    kind: &'static str,
    coalition: Vec<usize>,
    other: Vec<usize>,
    both_efficient: Option<bool>,
    message: String,
}

#[derive(Serialize)]
struct ValidateOutput {
    n: usize,
    minimal: Vec<Vec<usize>>,
    valid: bool,
    violation: Option<ViolationOutput>,
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<Rendered, CliError> {
    let doc: SystemDocument = read_json(path)?;
    let sys = doc.to_family()?;
    let report = sys.validate();
    let out = ValidateOutput {
        n: sys.n(),
        minimal: sys.minimal().iter().map(members).collect(),
        valid: report.valid(),
        violation: report.violation.as_ref().map(|v| match v {
            Violation::C1 {
                coalition,
                both_efficient,
            } => ViolationOutput {
                kind: "c1",
                coalition: members(coalition),
                other: members(&coalition.complement()),
                both_efficient: Some(*both_efficient),
                message: v.to_string(),
            },
            Violation::Antichain { smaller, larger } => ViolationOutput {
                kind: "antichain",
                coalition: members(smaller),
                other: members(larger),
                both_efficient: None,
                message: v.to_string(),
            },
        }),
    };

    let mut text = String::new();
    writeln!(text, "n: {}", out.n).unwrap();
    let listed: Vec<String> = sys.minimal().iter().map(|m| m.to_string()).collect();
    writeln!(text, "minimal coalitions: {}", listed.join(" ")).unwrap();
    writeln!(text, "valid: {}", if out.valid { "yes" } else { "no" }).unwrap();
    if let Some(v) = &report.violation {
        writeln!(text, "violation: {v}").unwrap();
        if let Violation::C1 { coalition, .. } = v {
            writeln!(text, "witness: {coalition}").unwrap();
            writeln!(text, "complement: {}", coalition.complement()).unwrap();
        }
    }
    let failed = !out.valid;
    Ok(finish(cli, &out, text, failed))
}

#[derive(Serialize)]
struct PairOutput {
    pair: String,
    winner: Candidate,
    supporters: Vec<usize>,
    supporters_efficient: bool,
}

#[derive(Serialize)]
struct WindowOutput {
    start: u8,
    coalition: Vec<usize>,
    efficient: bool,
}

#[derive(Serialize)]
struct DecideOutput {
    n: usize,
    profiles: Vec<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    pairwise: Vec<PairOutput>,
    outcome: String,
    linear: bool,
    ranking: Option<u8>,
    windows: Vec<WindowOutput>,
    condition_c: bool,
    witnesses: Vec<u8>,
    value_restriction: Option<String>,
    single_peaked_axis: Option<String>,
    consistent: bool,
}

fn cmd_decide(cli: &Cli, system: &Path, assignment: &Path) -> Result<Rendered, CliError> {
    let sys_doc: SystemDocument = read_json(system)?;
    let asg_doc: AssignmentDocument = read_json(assignment)?;
    let sys = sys_doc.to_system()?;
    let asg = asg_doc.to_assignment()?;
    if asg.assembly() != sys.assembly() {
        return Err(CliError::Usage(format!(
            "assignment has {} members but the system has {}",
            asg.assembly().size(),
            sys.n()
        )));
    }
    let name_list = |k: &Coalition| -> String {
        let names: Vec<String> = k.members().map(|m| asg_doc.member_name(m)).collect();
        format!("[{}]", names.join(", "))
    };

    let t = tournament(&sys, &asg)?;
    let outcome = t.decode();
    let report = condition_c(&sys, &asg)?;
    let restriction = verdict(&asg);

    let mut text = String::new();
    let mut pairs = Vec::new();
    for (x, y) in PAIRS {
        let pros = supporters(&asg, x, y)?;
        let efficient = sys.is_efficient(&pros)?;
        let winner = t.winner(x, y)?;
        writeln!(
            text,
            "{x} vs {y}: {winner} (supporters of {x}>{y}: {}, {})",
            name_list(&pros),
            if efficient {
                "efficient"
            } else {
                "not efficient"
            }
        )
        .unwrap();
        pairs.push(PairOutput {
            pair: format!("{x}{y}"),
            winner,
            supporters: members(&pros),
            supporters_efficient: efficient,
        });
    }
    match outcome {
        Outcome::Linear(r) => {
            writeln!(text, "outcome: linear: {} (profile {r})", r.order()).unwrap()
        }
        Outcome::Cycle(o) => writeln!(text, "outcome: cyclic: {o}").unwrap(),
    }

    let mut windows = Vec::new();
    for p in ProfileId::ALL {
        let k = window(&asg, p);
        let efficient = sys.is_efficient(&k)?;
        writeln!(
            text,
            "window K({},{},{}): {} {}",
            p,
            p.succ(),
            p.offset(2),
            name_list(&k),
            if efficient {
                "efficient"
            } else {
                "not efficient"
            }
        )
        .unwrap();
        windows.push(WindowOutput {
            start: p.get(),
            coalition: members(&k),
            efficient,
        });
    }
    let witnesses: Vec<u8> = report.witnesses.iter().map(|p| p.get()).collect();
    writeln!(
        text,
        "condition C: {}",
        if report.holds() { "holds" } else { "fails" }
    )
    .unwrap();
    let listed: Vec<String> = witnesses.iter().map(|w| w.to_string()).collect();
    writeln!(
        text,
        "witnesses: {}",
        if listed.is_empty() {
            "none".to_string()
        } else {
            listed.join(", ")
        }
    )
    .unwrap();
    writeln!(
        text,
        "value restriction: {}",
        restriction
            .value_restricted
            .map_or("none".to_string(), |v| v.to_string())
    )
    .unwrap();
    writeln!(
        text,
        "single-peaked: {}",
        restriction
            .single_peaked
            .map_or("none".to_string(), |a| format!("axis {a}"))
    )
    .unwrap();
    let consistent = report.holds() == outcome.is_linear();
    writeln!(
        text,
        "consistency: {}",
        if consistent {
            "condition C and linearity agree"
        } else {
            "VIOLATION: condition C and linearity disagree"
        }
    )
    .unwrap();

    let out = DecideOutput {
        n: sys.n(),
        profiles: asg_doc.profiles.clone(),
        names: asg_doc.names.clone(),
        pairwise: pairs,
        outcome: outcome.to_string(),
        linear: outcome.is_linear(),
        ranking: outcome.ranking().map(|r| r.get()),
        windows,
        condition_c: report.holds(),
        witnesses,
        value_restriction: restriction.value_restricted.map(|v| v.to_string()),
        single_peaked_axis: restriction.single_peaked.map(|a| a.to_string()),
        consistent,
    };
    Ok(finish(cli, &out, text, !consistent))
}

#[derive(Serialize)]
struct ScanOutput<'a> {
    #[serde(flatten)]
    report: &'a ScanReport,
    violations: u64,
}

fn cmd_scan(cli: &Cli, n: usize, per_system: bool) -> Result<Rendered, CliError> {
    if cli.max_n > OPT_IN_ENUMERATION_MAX {
        return Err(CliError::Usage(format!(
            "--max-n may be at most {OPT_IN_ENUMERATION_MAX}"
        )));
    }
    let options = ScanOptions {
        max_n: cli.max_n,
        jobs: cli.jobs as usize,
    };
    let mut report = exhaustive_scan_with(n, options)?;
    if !per_system {
        report.condition_c_failures_per_system.clear();
    }
    let violations = report.violations();

    let mut text = String::new();
    writeln!(
        text,
        "n={}: {} system{}, {} checks, {} violations",
        n,
        report.systems,
        if report.systems == 1 { "" } else { "s" },
        report.checks,
        violations
    )
    .unwrap();
    writeln!(
        text,
        "assignments per system: {}",
        report.assignments_per_system
    )
    .unwrap();
    writeln!(text, "linear outcomes: {}", report.linear).unwrap();
    writeln!(text, "cyclic outcomes: {}", report.cyclic).unwrap();
    writeln!(
        text,
        "equivalence violations: {}",
        report.equivalence_violations
    )
    .unwrap();
    writeln!(
        text,
        "witness-ranking violations: {}",
        report.witness_ranking_violations
    )
    .unwrap();
    writeln!(
        text,
        "converse-witness violations: {}",
        report.converse_witness_violations
    )
    .unwrap();
    writeln!(text, "cycle-proof systems: {}", report.cycle_proof_systems).unwrap();
    match &report.first_counterexample {
        Some(c) => writeln!(
            text,
            "first counterexample: system {} assignment {} ({})",
            c.system_index, c.assignment_index, c.check
        )
        .unwrap(),
        None => writeln!(text, "first counterexample: none").unwrap(),
    }
    if per_system {
        let counts: Vec<String> = report
            .condition_c_failures_per_system
            .iter()
            .map(|c| c.to_string())
            .collect();
        writeln!(
            text,
            "condition C failures per system: {}",
            counts.join(" ")
        )
        .unwrap();
    }
    let out = ScanOutput {
        report: &report,
        violations,
    };
    Ok(finish(cli, &out, text, violations > 0))
}

#[derive(Serialize)]
struct CensusOutput<'a> {
    system: &'a str,
    #[serde(flatten)]
    report: &'a CensusReport,
    sen_check: Option<bool>,
}

fn cmd_census(cli: &Cli, label: &str, sys: &VotingSystem) -> Result<Rendered, CliError> {
    let report = gap_census_with(sys, cli.jobs as usize)?;
    let mut text = String::new();
    writeln!(text, "system: {label}").unwrap();
    writeln!(text, "assignments: {}", report.assignments).unwrap();
    writeln!(text, "(i) value-restricted: {}", report.value_restricted).unwrap();
    writeln!(text, "(ii) condition C: {}", report.condition_c).unwrap();
    writeln!(text, "(iii) linear: {}", report.linear).unwrap();
    writeln!(
        text,
        "(iv) value-restricted, condition C fails: {}",
        report.value_restricted_not_c
    )
    .unwrap();
    writeln!(
        text,
        "(v) condition C, not value-restricted: {}",
        report.c_not_value_restricted
    )
    .unwrap();
    let sen = report.sen_check();
    match sen {
        Some(true) => writeln!(text, "sen check: pass (no cycle under value restriction)").unwrap(),
        Some(false) => writeln!(
            text,
            "sen check: FAIL ({} value-restricted assignments cycle)",
            report.value_restricted_cycles
        )
        .unwrap(),
        None => writeln!(
            text,
            "sen check: not applicable (not an odd simple majority)"
        )
        .unwrap(),
    }
    let out = CensusOutput {
        system: label,
        report: &report,
        sen_check: sen,
    };
    Ok(finish(cli, &out, text, sen == Some(false)))
}
