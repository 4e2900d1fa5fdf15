//! `privarg` command-line entry point.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use privarg_core::argumentation::Side;
use privarg_core::config::{RunConfig, ScalePreset};
use privarg_core::dataset::{self, content_hash, generate_dataset, Dataset};
use privarg_core::dispute::{run_dispute, AgentId, EngineOptions, Team, Teams};
use privarg_core::error::{Error, Result};
use privarg_core::experiment::{
    experiment1, experiment2, results_csv, MetricsRow, RunManifest, EXPERIMENT1, EXPERIMENT2,
};
use privarg_core::explain::{
    advice_report, advice_text, export_graph, summary_report, DisputeHistory,
};

#[derive(Parser)]
#[command(
    name = "privarg",
    version,
    about = "Privacy-aware argumentation disputes and experiments"
)]
struct Cli {
    /// Config file; defaults to $PRIVARG_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (0 = available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dispute dataset and print its content hash.
    Generate(GenerateArgs),
    /// Run one dispute from a dataset.
    Dispute(DisputeArgs),
    /// Run experiment 1 (behavior grid) or 2 (model population).
    Experiment(ExperimentArgs),
    /// Summarize a saved dispute history.
    Explain(ExplainArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    amount: Option<usize>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long = "max-arg")]
    max_arg: Option<usize>,
    #[arg(long)]
    branches: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DisputeArgs {
    #[arg(long)]
    dataset: PathBuf,
    /// Case id, e.g. case-0003.
    #[arg(long)]
    case: String,
    /// Comma-separated proponent team members.
    #[arg(long = "team-p", default_value = "indifferent")]
    team_p: String,
    /// Comma-separated opponent team members.
    #[arg(long = "team-o", default_value = "indifferent")]
    team_o: String,
    /// Dispute seed; defaults to the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Print the move log.
    #[arg(long)]
    trace: bool,
    /// Write the final graph in DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Append the outcome to this history file (created when missing).
    #[arg(long)]
    history: Option<PathBuf>,
    /// Member whose history is recorded; defaults to the first proponent.
    #[arg(long = "history-agent")]
    history_agent: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// 1 or 2.
    which: u64,
    /// Dataset file; generated from the config when absent.
    #[arg(long)]
    dataset: Option<PathBuf>,
    #[arg(long)]
    scale: Option<ScalePreset>,
    /// Cases used by a custom scale.
    #[arg(long)]
    cases: Option<usize>,
    /// Grid subsampling step for a custom scale.
    #[arg(long = "grid-stride")]
    grid_stride: Option<usize>,
    #[arg(long = "no-self-play")]
    no_self_play: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for table, manifest and generated dataset.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExplainArgs {
    #[arg(long)]
    history: PathBuf,
    /// Print the summary (default when no report is selected).
    #[arg(long)]
    summary: bool,
    /// Print advice on weak content.
    #[arg(long)]
    advice: bool,
    /// Write one DOT file per recorded dispute into this directory.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the text reports to this file instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = RunConfig::resolve(cli.config.as_deref())?;
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    if cfg.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build_global()
            .map_err(|e| Error::EngineInvariant(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Generate(a) => cmd_generate(cfg, a),
        Command::Dispute(a) => cmd_dispute(cfg, a),
        Command::Experiment(a) => cmd_experiment(cfg, a),
        Command::Explain(a) => cmd_explain(a),
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn load_dataset(path: &Path) -> Result<Dataset> {
    let text = read_input(path)?;
    dataset::parse(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        e => e,
    })
}

fn cmd_generate(mut cfg: RunConfig, a: GenerateArgs) -> Result<()> {
    let g = &mut cfg.generator;
    if let Some(v) = a.amount {
        g.dispute_amount = v;
    }
    if let Some(v) = a.size {
        g.dispute_size = v;
    }
    if let Some(v) = a.max_arg {
        g.max_argument_size = v;
    }
    if let Some(v) = a.branches {
        g.max_branches = v;
    }
    if let Some(v) = a.seed {
        g.seed = Some(v);
    }
    let ds = generate_dataset(&cfg.gen_params())?;
    let text = dataset::serialize(&ds);
    let out = a.out.unwrap_or(cfg.output.dataset);
    write_output(&out, &text)?;
    println!(
        "{}  {} ({} cases)",
        content_hash(&text),
        out.display(),
        ds.cases.len()
    );
    Ok(())
}

fn team(cfg: &RunConfig, side: Side, roster: &str) -> Result<Team> {
    let members = roster
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| cfg.agent(name))
        .collect::<Result<Vec<_>>>()?;
    Team::new(side, members)
}

fn cmd_dispute(cfg: RunConfig, a: DisputeArgs) -> Result<()> {
    let ds = load_dataset(&a.dataset)?;
    let case = ds
        .cases
        .into_iter()
        .find(|c| c.id == a.case)
        .ok_or_else(|| {
            Error::invalid(format!("no case `{}` in {}", a.case, a.dataset.display()))
        })?;
    let case = Arc::new(case.prepare()?);
    let teams = Teams::new(
        team(&cfg, Side::Proponent, &a.team_p)?,
        team(&cfg, Side::Opponent, &a.team_o)?,
    )?;
    let seed = a.seed.unwrap_or(cfg.master_seed);
    let outcome = run_dispute(&case, &teams, seed, EngineOptions::default())?;

    println!(
        "case {}: {} wins ({} forfeited)",
        case.id(),
        outcome.winner,
        outcome.forfeited_by
    );
    for (p, c) in outcome.participants().iter().zip(&outcome.concealment) {
        println!("  {} ({}): concealment {c:.4}", p.name, p.side);
    }
    if a.trace {
        print!("{}", outcome.state.trace());
    }
    if let Some(path) = &a.dot {
        write_output(path, &export_graph(&outcome))?;
    }
    if let Some(path) = &a.history {
        let agent = match &a.history_agent {
            None => AgentId(0),
            Some(name) => outcome
                .participants()
                .iter()
                .position(|p| &p.name == name)
                .map(|i| AgentId(i as u32))
                .ok_or_else(|| Error::invalid(format!("`{name}` is not in this dispute")))?,
        };
        let mut history = if path.exists() {
            DisputeHistory::parse(&read_input(path)?)?
        } else {
            DisputeHistory::new()
        };
        history.push(outcome, agent)?;
        write_output(path, &history.to_toml())?;
    }
    Ok(())
}

fn cmd_experiment(mut cfg: RunConfig, a: ExperimentArgs) -> Result<()> {
    if a.which != EXPERIMENT1 && a.which != EXPERIMENT2 {
        return Err(Error::invalid(format!(
            "unknown experiment {} (1 or 2)",
            a.which
        )));
    }
    if let Some(s) = a.scale {
        cfg.scale.preset = s;
    }
    if a.cases.is_some() {
        cfg.scale.cases = a.cases;
    }
    if let Some(s) = a.grid_stride {
        cfg.scale.grid_stride = s;
    }
    if a.no_self_play {
        cfg.scale.include_self_play = false;
    }
    if let Some(s) = a.seed {
        cfg.master_seed = s;
    }
    let out_dir = a.out.unwrap_or_else(|| cfg.output.results_dir.clone());
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    let scale = cfg.scale_for(a.which);
    scale.validate()?;

    let (ds, ds_text) = match &a.dataset {
        Some(path) => {
            let text = read_input(path)?;
            (load_dataset(path)?, text)
        }
        None => {
            let ds = generate_dataset(&cfg.gen_params())?;
            let text = dataset::serialize(&ds);
            write_output(&out_dir.join("dataset.toml"), &text)?;
            (ds, text)
        }
    };
    let rows = if a.which == EXPERIMENT1 {
        experiment1(&ds, &scale, cfg.master_seed)?
    } else {
        experiment2(&ds, &scale, cfg.master_seed)?
    };
    let table = out_dir.join(format!("experiment{}.csv", a.which));
    write_output(&table, &results_csv(&rows))?;
    let manifest = RunManifest::new(a.which, cfg.master_seed, scale, content_hash(&ds_text));
    write_output(
        &out_dir.join(format!("experiment{}.manifest.toml", a.which)),
        &manifest.to_toml(),
    )?;

    if a.which == EXPERIMENT1 {
        for scope in privarg_core::agent::Scope::ALL {
            let group: Vec<&MetricsRow> =
                rows.iter().filter(|r| r.behavior.scope == scope).collect();
            print_group(scope.as_str(), &group);
        }
    } else {
        for r in &rows {
            print_group(&r.label, &[r]);
        }
    }
    println!("wrote {} rows to {}", rows.len(), table.display());
    Ok(())
}

fn print_group(name: &str, rows: &[&MetricsRow]) {
    if rows.is_empty() {
        return;
    }
    let n = rows.len() as f64;
    let w = rows.iter().map(|r| r.w_avg).sum::<f64>() / n;
    let c = rows.iter().map(|r| r.c_avg).sum::<f64>() / n;
    println!(
        "{name:<22} w_avg {w:.4}  c_avg {c:.4}  combined {:.4}",
        (w + c) / 2.0
    );
}

fn cmd_explain(a: ExplainArgs) -> Result<()> {
    let history = DisputeHistory::parse(&read_input(&a.history)?)?;
    let mut text = String::new();
    let summary = a.summary || (!a.advice && a.dot.is_none());
    if summary {
        text.push_str(&summary_report(&history));
    }
    if a.advice {
        text.push_str(&advice_text(&advice_report(&history)));
    }
    if let Some(dir) = &a.dot {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (i, e) in history.entries().iter().enumerate() {
            let name = format!("{i:03}-{}.dot", e.outcome.case_id());
            write_output(&dir.join(name), &export_graph(&e.outcome))?;
        }
    }
    match &a.out {
        Some(path) => write_output(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}
