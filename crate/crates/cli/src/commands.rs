use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nanotop_core::verifier::{
    check_compositions, check_conditional_theorems, check_equivalences, check_hierarchy,
    find_witness, implication_matrix, repro_worked_examples, ImplicationMatrix, InstanceBounds,
    ReproStatus, SpaceMode, VerificationReport,
};
use nanotop_core::{approximations, classify, ContinuityClass, FamilyKind, NanoError};

use crate::error::CliError;
use crate::format::{load_map, load_space};
use crate::report::{to_value, FamilyReport, JsonReport};

/// Finite nano topology: open-set families, continuity classes and bounded verification.
#[derive(Debug, Parser)]
#[command(name = "nanotop", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect a space file.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Inspect a map file.
    Map {
        #[command(subcommand)]
        action: MapAction,
    },
    /// Check class relationships over every instance within bounds.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Find the first instance where one class holds and another fails.
    Search {
        #[arg(long)]
        holds: ContinuityClass,
        #[arg(long)]
        fails: ContinuityClass,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Rebuild the bundled worked examples and check their stated classifications.
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
    },
}

#[derive(Debug, Subcommand)]
enum SpaceAction {
    /// Print the N-open, Nα-open and NSα-open families.
    Families { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum MapAction {
    /// Print the seven-class profile and whether the map is N-open.
    Classify { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Implications,
    Equivalences,
    Theorems,
    Compositions,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReproTarget {
    Paper,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Largest universe size on either side.
    #[arg(long)]
    max_size: usize,
    /// Seed for the sampled instances beyond the exhaustive size.
    #[arg(long, default_value_t = InstanceBounds::DEFAULT_SEED)]
    seed: u64,
    /// Number of sampled instances beyond the exhaustive size.
    #[arg(long, default_value_t = InstanceBounds::DEFAULT_SAMPLES)]
    samples: usize,
    /// Enumerate everything up to this size (default: min(max size, 4)).
    #[arg(long)]
    exhaustive: Option<usize>,
    #[arg(long, default_value = "nano")]
    mode: SpaceMode,
}

impl BoundsArgs {
    fn bounds(&self) -> InstanceBounds {
        let mut b = InstanceBounds::new(self.max_size, self.mode)
            .with_seed(self.seed)
            .with_samples(self.samples);
        if let Some(e) = self.exhaustive {
            b = b.with_exhaustive_size(e);
        }
        b
    }
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0: success; 1: a check failed or no witness was found; 2: bad input.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn status(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::input_error(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::input_error(format!("error: {e}\n")),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Space {
            action: SpaceAction::Families { file },
        } => space_families(file, cli.json),
        Command::Map {
            action: MapAction::Classify { file },
        } => map_classify(file, cli.json),
        Command::Verify { target, bounds } => verify(*target, &bounds.bounds(), cli.json),
        Command::Search {
            holds,
            fails,
            bounds,
        } => search(*holds, *fails, &bounds.bounds(), cli.json),
        Command::Repro {
            target: ReproTarget::Paper,
        } => repro(cli.json),
    }
}

const OPEN_KINDS: [FamilyKind; 3] = [
    FamilyKind::NOpen,
    FamilyKind::NalphaOpen,
    FamilyKind::NsalphaOpen,
];

fn space_families(file: &Path, json: bool) -> Result<Outcome, CliError> {
    let space = load_space(file)?;
    if json {
        let mut report = JsonReport::new("space families");
        report.spaces.push(space.spec());
        report.families = OPEN_KINDS
            .iter()
            .map(|&k| FamilyReport::of(0, &space, k))
            .collect();
        return Ok(Outcome::ok(report.render()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "points: {}", space.universe().labels().join(" "));
    match space.provenance() {
        Some(p) => {
            let classes: Vec<_> = p.partition.blocks().map(|b| b.to_string()).collect();
            let _ = writeln!(out, "classes: {}; subset: {}", classes.join(" "), p.subset);
            let ap = approximations(&p.partition, &p.subset)?;
            let _ = writeln!(
                out,
                "lower: {}; upper: {}; boundary: {}",
                ap.lower, ap.upper, ap.boundary
            );
        }
        None => {
            let _ = writeln!(out, "explicit topology");
        }
    }
    for kind in OPEN_KINDS {
        let family = nanotop_core::enumerate_family(&space, kind);
        let _ = writeln!(out, "{kind} ({}): {family}", family.len());
    }
    Ok(Outcome::ok(out))
}

fn map_classify(file: &Path, json: bool) -> Result<Outcome, CliError> {
    let loaded = load_map(file)?;
    let profile = classify(&loaded.map, &loaded.domain, &loaded.codomain)?;
    if json {
        let mut report = JsonReport::new("map classify");
        report.spaces = vec![loaded.domain.spec(), loaded.codomain.spec()];
        report.profile = Some(profile);
        let arrows: Vec<String> = loaded
            .map
            .arrows()
            .into_iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        report.insert("map", arrows);
        return Ok(Outcome::ok(report.render()));
    }
    let mut out = String::new();
    let arrows: Vec<String> = loaded
        .map
        .arrows()
        .into_iter()
        .map(|(a, b)| format!("{a}->{b}"))
        .collect();
    let _ = writeln!(out, "map: {}", arrows.join(" "));
    for class in ContinuityClass::ALL {
        let _ = writeln!(
            out,
            "  {:<6} {}",
            class.token(),
            if profile.get(class) { "yes" } else { "no" }
        );
    }
    let _ = writeln!(
        out,
        "  N-open map: {}",
        if profile.n_open_map { "yes" } else { "no" }
    );
    Ok(Outcome::ok(out))
}

fn matrix_passed(m: &ImplicationMatrix) -> bool {
    m.claim_contradictions().is_empty() && m.transitivity_failures().is_empty()
}

/// Adds a matrix to `report`, with witnesses at the top level rather than per cell.
fn add_matrix(report: &mut JsonReport, m: &ImplicationMatrix) {
    let cells: Vec<_> = m
        .cells
        .iter()
        .map(|c| json!({ "from": c.from, "to": c.to, "status": c.status, "claim": c.claim, "support": c.support }))
        .collect();
    report
        .witnesses
        .extend(m.cells.iter().filter_map(|c| c.witness.clone()));
    let contradictions: Vec<_> = m
        .claim_contradictions()
        .iter()
        .map(|c| json!({ "from": c.from, "to": c.to }))
        .collect();
    report.discrepancies.extend(contradictions);
    let derived: Vec<_> = m
        .unclaimed_arrows()
        .into_iter()
        .map(|(a, b)| json!({ "from": a, "to": b }))
        .collect();
    report.insert(
        "matrix",
        json!({ "bounds": m.bounds, "instances": m.instances, "cells": cells, "derived_not_claimed": derived }),
    );
}

fn add_checks(report: &mut JsonReport, r: &VerificationReport) {
    report.witnesses.extend(r.witnesses.iter().cloned());
    report
        .discrepancies
        .extend(r.discrepancies.iter().map(to_value));
    let entry =
        json!({ "title": r.title, "bounds": r.bounds, "passed": r.passed(), "checks": r.checks });
    match report.extra.get_mut("reports") {
        Some(serde_json::Value::Array(list)) => list.push(entry),
        _ => report.insert("reports", vec![entry]),
    }
}

type Check = fn(&InstanceBounds) -> Result<VerificationReport, NanoError>;

fn verify(target: VerifyTarget, bounds: &InstanceBounds, json: bool) -> Result<Outcome, CliError> {
    bounds.validate()?;
    let mut report = JsonReport::new(format!("verify {}", format!("{target:?}").to_lowercase()));
    report.insert("bounds", bounds);
    let mut text = String::new();
    let mut passed = true;

    if matches!(target, VerifyTarget::Implications | VerifyTarget::All) {
        let m = implication_matrix(bounds)?;
        passed &= matrix_passed(&m);
        let _ = write!(text, "{m}");
        add_matrix(&mut report, &m);
    }
    let checks: &[Check] = match target {
        VerifyTarget::Implications => &[],
        VerifyTarget::Equivalences => &[check_equivalences],
        VerifyTarget::Theorems => &[check_conditional_theorems],
        VerifyTarget::Compositions => &[check_compositions],
        VerifyTarget::All => &[
            check_hierarchy,
            check_equivalences,
            check_conditional_theorems,
            check_compositions,
        ],
    };
    for check in checks {
        let r = check(bounds)?;
        passed &= r.passed();
        let _ = write!(text, "{r}");
        add_checks(&mut report, &r);
    }
    report.insert("passed", passed);
    let _ = writeln!(
        text,
        "{}",
        if passed {
            "all checks passed"
        } else {
            "SOME CHECKS FAILED"
        }
    );
    Ok(Outcome::status(
        passed,
        if json { report.render() } else { text },
    ))
}

fn search(
    holds: ContinuityClass,
    fails: ContinuityClass,
    bounds: &InstanceBounds,
    json: bool,
) -> Result<Outcome, CliError> {
    bounds.validate()?;
    let found = find_witness(holds, fails, bounds)?;
    let mut report = JsonReport::new("search");
    report.insert("bounds", bounds);
    report.insert("holds", holds);
    report.insert("fails", fails);
    let text = match &found {
        Some(w) => {
            report.witnesses.push(w.clone());
            w.to_string()
        }
        None if holds == fails => {
            "no witness (vacuous: a class cannot both hold and fail)\n".to_string()
        }
        None => format!("no witness within max size {}\n", bounds.max_size),
    };
    Ok(Outcome::status(
        found.is_some(),
        if json { report.render() } else { text },
    ))
}

fn repro(json: bool) -> Result<Outcome, CliError> {
    let r = repro_worked_examples()?;
    if !json {
        return Ok(Outcome::status(r.passed(), r.to_string()));
    }
    let mut report = JsonReport::new("repro paper");
    report.discrepancies = r
        .entries
        .iter()
        .filter(|e| e.status != ReproStatus::Pass)
        .map(to_value)
        .collect();
    report.insert("entries", &r.entries);
    report.insert("passed", r.passed());
    Ok(Outcome::status(r.passed(), report.render()))
}
