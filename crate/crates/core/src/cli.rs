//! Command line front end. Construction subcommands print bare matroid or
//! arrangement JSON so their output feeds straight back into the file
//! arguments of the others; analysis subcommands print a JSON report.
//!
//! Exit codes: 0 = a verdict was computed (including negative ones),
//! 1 = inconclusive under the node budget, 2 = usage or validation error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::embed;
use crate::error::{Error, Result};
use crate::families::{
    build_group_matroid, build_m_prime, build_m_sigma, derangements, realize_f,
    realize_four_cycles, sigma_graph, Arrangement, GroupSpec, Permutation,
};
use crate::matroid::LineMatroid;
use crate::orientability::{
    certify_minimal_nonorientable, chirotope_of_arrangement, criterion_group, find_chirotope,
    MinimalityVerdict, SearchConfig, SearchOutcome, DEFAULT_BUDGET,
};

pub const EXIT_VERDICT: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "orimat",
    version,
    about = "Families of rank-3 matroids: orientability, minimality, embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a family member and print its matroid JSON
    Build {
        #[command(subcommand)]
        family: BuildCmd,
    },
    /// Decide orientability
    Orient {
        #[command(subcommand)]
        mode: OrientCmd,
    },
    /// Certify minimal non-orientability via all single-element deletions
    Minimal(MinimalArgs),
    /// Verify embeddings into projective planes over finite fields
    Embed {
        #[command(subcommand)]
        what: EmbedCmd,
    },
    /// Compare the cycle criterion with brute force over all derangements
    Sweep(SweepArgs),
    /// Emit an exact straight-line realization
    Realize(RealizeArgs),
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Doubling of a fixed-point-free permutation
    Sigma(SigmaArgs),
    /// Doubling of a finite abelian group with two anchor elements
    Group(GroupArgs),
}

#[derive(Args)]
struct SigmaArgs {
    #[arg(long)]
    n: usize,
    /// Cycle notation, e.g. "(1 2)(3 4)"
    #[arg(long)]
    perm: String,
}

#[derive(Args)]
struct GroupArgs {
    /// Product of cyclic factors, e.g. "Z3" or "Z2xZ4"
    #[arg(long)]
    group: String,
    /// Anchor element, e.g. "0" or "(0,1)"
    #[arg(long)]
    g0: String,
    #[arg(long)]
    g1: String,
}

#[derive(Subcommand)]
enum OrientCmd {
    /// Fast structural criterion (cycle lengths / order of g0 - g1)
    Criterion(CriterionArgs),
    /// Exhaustive chirotope search over a matroid file
    Brute(BruteArgs),
}

#[derive(Args)]
struct CriterionArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Fixed-point-free permutation in cycle notation (with --n)
    #[arg(long)]
    perm: Option<String>,
    /// Group string (with --g0 and --g1)
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    g0: Option<String>,
    #[arg(long)]
    g1: Option<String>,
}

#[derive(Args)]
struct BruteArgs {
    /// Matroid JSON file
    #[arg(long)]
    matroid: std::path::PathBuf,
    /// Decision-node budget for the search
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; 1 is fully deterministic
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct MinimalArgs {
    /// Matroid JSON file
    #[arg(long)]
    matroid: std::path::PathBuf,
    /// Decision-node budget, applied to each search separately
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Verify one of the built-in maps
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Prime p >= 3: map the doubled cyclic group of order p into the
    /// plane of order p
    #[arg(long, conflicts_with = "subgroup")]
    prime: Option<u64>,
    /// "m,p,t": map the doubled cyclic group of order m through the
    /// order-m subgroup of the multiplicative group of GF(p^t)
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long = "max-n")]
    max_n: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct RealizeArgs {
    /// Realize the doubling of an involution (requires --perm)
    #[arg(long = "four-cycles", conflicts_with = "f")]
    four_cycles: bool,
    /// Realize the pencil-plus-parallels family (requires --tau)
    #[arg(long = "F")]
    f: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    perm: Option<String>,
    /// Relabeling permutation; "id" for the identity
    #[arg(long)]
    tau: Option<String>,
}

pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_VERDICT;
            }
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Cmd, out: &mut dyn Write) -> Result<i32> {
    match command {
        Cmd::Build { family } => cmd_build(family, out),
        Cmd::Orient { mode } => match mode {
            OrientCmd::Criterion(a) => cmd_criterion(a, out),
            OrientCmd::Brute(a) => cmd_brute(a, out),
        },
        Cmd::Minimal(a) => cmd_minimal(a, out),
        Cmd::Embed { what } => match what {
            EmbedCmd::Verify(a) => cmd_embed_verify(a, out),
        },
        Cmd::Sweep(a) => cmd_sweep(a, out),
        Cmd::Realize(a) => cmd_realize(a, out),
    }
}

fn print(out: &mut dyn Write, text: &str) -> Result<()> {
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // The reader hung up (e.g. piped into head); not our error.
            std::process::exit(EXIT_VERDICT);
        }
        return Err(Error::Io(e.to_string()));
    }
    Ok(())
}

fn emit(out: &mut dyn Write, mut report: Value, started: Instant) -> Result<()> {
    report["wall_time_ms"] = Value::from(started.elapsed().as_millis() as u64);
    print(
        out,
        &serde_json::to_string_pretty(&report).expect("reports are plain data"),
    )
}

fn usage(msg: &str) -> Error {
    Error::Parse(msg.into())
}

fn load_matroid(path: &std::path::Path) -> Result<LineMatroid> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    LineMatroid::from_json(&text)
}

fn matroid_value(m: &LineMatroid) -> Value {
    serde_json::from_str(&m.to_json()).expect("matroid JSON is well formed")
}

fn outcome_value(outcome: &SearchOutcome) -> Value {
    json!({
        "outcome": outcome.label(),
        "nodes": outcome.nodes(),
        "chirotope": outcome.found().map(|c| c.json_value()),
    })
}

fn orientable_value(outcome: &SearchOutcome) -> Value {
    match outcome {
        SearchOutcome::Found { .. } => Value::Bool(true),
        SearchOutcome::NoChirotope { .. } => Value::Bool(false),
        SearchOutcome::BudgetExhausted { .. } => Value::Null,
    }
}

fn cmd_build(family: BuildCmd, out: &mut dyn Write) -> Result<i32> {
    let m = match family {
        BuildCmd::Sigma(a) => {
            let sigma = Permutation::from_cycles(a.n, &a.perm)?;
            build_m_sigma(a.n, &sigma)?
        }
        BuildCmd::Group(a) => {
            let group = GroupSpec::parse(&a.group)?;
            let g0 = group.parse_element(&a.g0)?;
            let g1 = group.parse_element(&a.g1)?;
            build_group_matroid(&group, &g0, &g1)?
        }
    };
    print(out, &m.to_json())?;
    Ok(EXIT_VERDICT)
}

fn cmd_criterion(a: CriterionArgs, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let report = match (&a.perm, &a.group) {
        (Some(perm), None) => {
            let n = a.n.ok_or_else(|| usage("--perm requires --n"))?;
            let sigma = Permutation::from_cycles(n, perm)?;
            let lengths = sigma_graph(&sigma)?.cycle_lengths();
            let orientable = lengths.iter().all(|&len| len <= 4);
            json!({
                "command": "orient criterion",
                "n": n,
                "sigma": sigma.cycle_string(),
                "cycle_lengths": lengths,
                "orientable": orientable,
            })
        }
        (None, Some(group)) => {
            let group = GroupSpec::parse(group)?;
            let g0 = group.parse_element(
                a.g0.as_deref()
                    .ok_or_else(|| usage("--group requires --g0"))?,
            )?;
            let g1 = group.parse_element(
                a.g1.as_deref()
                    .ok_or_else(|| usage("--group requires --g1"))?,
            )?;
            let (r, orientable) = criterion_group(&group, &g0, &g1)?;
            json!({
                "command": "orient criterion",
                "group": group.to_string(),
                "g0": group.render_element(&g0),
                "g1": group.render_element(&g1),
                "r": r,
                "orientable": orientable,
            })
        }
        _ => return Err(usage("exactly one of --perm or --group")),
    };
    emit(out, report, started)?;
    Ok(EXIT_VERDICT)
}

fn cmd_brute(a: BruteArgs, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let m = load_matroid(&a.matroid)?;
    let config = SearchConfig {
        budget: a.budget,
        workers: a.workers,
    };
    let outcome = find_chirotope(&m, &config)?;
    let mut report = json!({
        "command": "orient brute",
        "matroid_file": a.matroid.display().to_string(),
        "elements": m.elements().len(),
        "budget": a.budget,
        "workers": a.workers,
        "orientable": orientable_value(&outcome),
    });
    merge(&mut report, outcome_value(&outcome));
    emit(out, report, started)?;
    Ok(match outcome {
        SearchOutcome::BudgetExhausted { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_VERDICT,
    })
}

fn merge(into: &mut Value, from: Value) {
    let (Value::Object(into), Value::Object(from)) = (into, from) else {
        unreachable!("reports are objects");
    };
    into.extend(from);
}

fn cmd_minimal(a: MinimalArgs, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let m = load_matroid(&a.matroid)?;
    let config = SearchConfig {
        budget: a.budget,
        workers: a.workers,
    };
    let report = certify_minimal_nonorientable(&m, &config)?;
    let deletions: Vec<Value> = report
        .deletions
        .iter()
        .map(|(element, outcome)| {
            let mut row = json!({ "element": element });
            merge(&mut row, outcome_value(outcome));
            row
        })
        .collect();
    let value = json!({
        "command": "minimal",
        "matroid_file": a.matroid.display().to_string(),
        "elements": m.elements().len(),
        "budget": a.budget,
        "workers": a.workers,
        "verdict": report.verdict.label(),
        "full": outcome_value(&report.full),
        "deletions": deletions,
    });
    emit(out, value, started)?;
    Ok(match report.verdict {
        MinimalityVerdict::Inconclusive => EXIT_INCONCLUSIVE,
        _ => EXIT_VERDICT,
    })
}

fn cmd_embed_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let (emb, inputs) = match (&a.prime, &a.subgroup) {
        (Some(p), None) => (embed::psi_prime(*p)?, json!({ "prime": p })),
        (None, Some(text)) => {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(usage("--subgroup expects \"m,p,t\""));
            }
            let nums: Vec<u64> = parts
                .iter()
                .map(|s| s.parse().map_err(|_| usage("--subgroup expects integers")))
                .collect::<Result<_>>()?;
            (
                embed::psi_subgroup(nums[0], nums[1], nums[2] as usize)?,
                json!({ "m": nums[0], "p": nums[1], "t": nums[2] }),
            )
        }
        _ => return Err(usage("exactly one of --prime or --subgroup")),
    };
    let check = embed::verify_embedding(&emb.matroid, &emb.map)?;
    let map: serde_json::Map<String, Value> = emb
        .map
        .iter()
        .map(|(name, point)| (name.clone(), Value::from(point.to_string())))
        .collect();
    let value = json!({
        "command": "embed verify",
        "inputs": inputs,
        "field": {
            "p": emb.field.p(),
            "t": emb.field.t(),
            "order": emb.field.order(),
        },
        "matroid": matroid_value(&emb.matroid),
        "map": map,
        "ok": check.ok,
        "diagnostic": check.diagnostic,
    });
    emit(out, value, started)?;
    Ok(EXIT_VERDICT)
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    if a.max_n < 2 {
        return Err(Error::NTooSmall(a.max_n));
    }
    if 2 * a.max_n + 2 > crate::orientability::MAX_SEARCH_ELEMENTS {
        return Err(Error::BeyondDeskScale(2 * a.max_n + 2));
    }
    let config = SearchConfig {
        budget: a.budget,
        workers: a.workers,
    };
    let mut rows = Vec::new();
    let mut disagreements = 0u32;
    let mut exhausted = 0u32;
    for n in 2..=a.max_n {
        for sigma in derangements(n) {
            let lengths = sigma_graph(&sigma)?.cycle_lengths();
            let criterion = lengths.iter().all(|&len| len <= 4);
            let m = build_m_sigma(n, &sigma)?;
            let outcome = find_chirotope(&m, &config)?;
            let agree = match &outcome {
                SearchOutcome::Found { .. } => Value::Bool(criterion),
                SearchOutcome::NoChirotope { .. } => Value::Bool(!criterion),
                SearchOutcome::BudgetExhausted { .. } => Value::Null,
            };
            match &agree {
                Value::Bool(false) => disagreements += 1,
                Value::Null => exhausted += 1,
                _ => {}
            }
            rows.push(json!({
                "n": n,
                "sigma": sigma.cycle_string(),
                "cycle_lengths": lengths,
                "criterion": criterion,
                "brute": outcome.label(),
                "nodes": outcome.nodes(),
                "agree": agree,
            }));
        }
    }
    let value = json!({
        "command": "sweep",
        "max_n": a.max_n,
        "budget": a.budget,
        "workers": a.workers,
        "rows": rows,
        "disagreements": disagreements,
        "exhausted": exhausted,
    });
    emit(out, value, started)?;
    Ok(if exhausted > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_VERDICT
    })
}

fn cmd_realize(a: RealizeArgs, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let n = a.n.ok_or_else(|| usage("realize requires --n"))?;
    let (kind, arr, expected, inputs): (&str, Arrangement, LineMatroid, Value) =
        match (a.four_cycles, a.f) {
            (true, false) => {
                let text = a
                    .perm
                    .ok_or_else(|| usage("--four-cycles requires --perm"))?;
                let sigma = Permutation::from_cycles(n, &text)?;
                let arr = realize_four_cycles(n, &sigma)?;
                let m = build_m_sigma(n, &sigma)?;
                let inputs = json!({ "sigma": sigma.cycle_string() });
                ("four-cycles", arr, m, inputs)
            }
            (false, true) => {
                let text = a.tau.ok_or_else(|| usage("--F requires --tau"))?;
                let tau = Permutation::from_cycles(n, &text)?;
                let arr = realize_f(n, &tau)?;
                let m = build_m_prime(n)?;
                let inputs = json!({ "tau": tau.cycle_string() });
                ("F", arr, m, inputs)
            }
            _ => return Err(usage("exactly one of --four-cycles or --F")),
        };
    let chi = chirotope_of_arrangement(&arr)?;
    let names_match = arr
        .lines()
        .iter()
        .map(|l| l.name.as_str())
        .eq(expected.elements().iter().map(String::as_str));
    let exact = names_match && chi.zero_set() == expected.dependent_index_triples();
    let value = json!({
        "command": "realize",
        "kind": kind,
        "n": n,
        "inputs": inputs,
        "arrangement": serde_json::to_value(arr.lines()).expect("plain data"),
        "exact": exact,
    });
    emit(out, value, started)?;
    Ok(EXIT_VERDICT)
}
