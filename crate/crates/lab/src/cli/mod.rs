//! Command-line interface.
//!
//! Every command resolves a [`RunConfig`] from the optional `--config` file
//! and then applies its flags on top, so a flag always wins over the file.

mod commands;
mod gen;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{Population, RunConfig};
use crate::error::{LabError, LabResult};

#[derive(Debug, Parser)]
#[command(
    name = "syndromelab",
    version,
    about = "Low-weight syndrome analysis and decoding experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shared-column counts of check pairs.
    Pairs(PairsArgs),
    /// Weight-four errors from maximal check pairs, with the hard-error filter.
    Enumerate(EnumerateArgs),
    /// Repeated seeded decoding of weight-four errors.
    Dynamics(DynamicsArgs),
    /// Sweep over the fraction of errors added as model columns.
    Amend(AmendArgs),
    /// Hard-decision history of one decode.
    Trace(TraceArgs),
    /// Write a synthetic model file.
    GenModel(gen::GenModelArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Model file.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScopeArgs {
    /// Check groups forming the scope, e.g. `0,1`.
    #[arg(long, value_delimiter = ',')]
    pub groups: Option<Vec<usize>>,
    /// Use every check of the model.
    #[arg(long)]
    pub all_rows: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FilterArgs {
    /// Accepted canceled-check counts of each column pair.
    #[arg(long, value_delimiter = ',')]
    pub pair_nc: Option<Vec<usize>>,
    /// Accepted canceled-check counts of the whole error.
    #[arg(long, value_delimiter = ',')]
    pub total_nc: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RelayArgs {
    #[arg(long)]
    pub max_legs: Option<usize>,
    #[arg(long)]
    pub iters_per_leg: Option<usize>,
    #[arg(long)]
    pub warmup_iters: Option<usize>,
    /// Total BP iterations across all legs.
    #[arg(long)]
    pub iteration_cap: Option<usize>,
    /// Keep running legs after the first valid solution and return the
    /// most likely one found.
    #[arg(long)]
    pub best_of_legs: bool,
}

#[derive(Debug, Args)]
pub struct PairsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub scope: ScopeArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub relay: RelayArgs,
    /// Decodes per error.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub bin_width: Option<usize>,
    #[arg(long, value_parser = parse_population)]
    pub population: Option<Population>,
    /// `relay` or `bp_osd`.
    #[arg(long)]
    pub decoder: Option<String>,
    /// Combos CSV from `enumerate`, used instead of enumerating.
    #[arg(long)]
    pub combos: Option<PathBuf>,
    /// Decode weight-five extensions of the first N errors.
    #[arg(long)]
    pub weight5_combos: Option<usize>,
    /// Extensions per error.
    #[arg(long)]
    pub weight5_limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AmendArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub relay: RelayArgs,
    #[arg(long, value_delimiter = ',')]
    pub fractions: Option<Vec<f64>>,
    /// Decoder arms, e.g. `relay,bp_osd`.
    #[arg(long, value_delimiter = ',')]
    pub decoders: Option<Vec<String>>,
    /// Constant prior of added columns instead of the product of sources.
    #[arg(long)]
    pub prior: Option<f64>,
    #[arg(long)]
    pub selection_seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_parser = parse_population)]
    pub population: Option<Population>,
    #[arg(long)]
    pub combos: Option<PathBuf>,
    /// Add decomposition column pairs instead of whole errors.
    #[arg(long)]
    pub column_pairs: bool,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub relay: RelayArgs,
    /// Fault columns of the decoded error, e.g. `3,17,40,52`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub faults: Vec<usize>,
    /// Rows kept, brightest first.
    #[arg(long)]
    pub top_k: Option<usize>,
}

fn parse_population(s: &str) -> Result<Population, String> {
    match s {
        "all" => Ok(Population::All),
        "filtered" => Ok(Population::Filtered),
        _ => Err(format!("expected all or filtered, got {s:?}")),
    }
}

fn base_config(common: &CommonArgs) -> LabResult<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(m) = &common.model {
        cfg.run.model = Some(m.clone());
    }
    if let Some(o) = &common.out {
        cfg.run.out = Some(o.clone());
    }
    if let Some(s) = common.seed {
        cfg.run.seed = Some(s);
    }
    if let Some(t) = common.threads {
        cfg.run.threads = Some(t);
    }
    Ok(cfg)
}

fn apply_scope(cfg: &mut RunConfig, a: &ScopeArgs) {
    if let Some(g) = &a.groups {
        cfg.scope.groups = g.clone();
    }
    if a.all_rows {
        cfg.scope.all_rows = true;
    }
}

fn apply_filter(cfg: &mut RunConfig, a: &FilterArgs) {
    if let Some(v) = &a.pair_nc {
        cfg.filter.pair_nc = v.clone();
    }
    if let Some(v) = &a.total_nc {
        cfg.filter.total_nc = v.clone();
    }
}

fn apply_relay(cfg: &mut RunConfig, a: &RelayArgs) {
    let r = &mut cfg.relay;
    if let Some(v) = a.max_legs {
        r.max_legs = v;
    }
    if let Some(v) = a.iters_per_leg {
        r.iters_per_leg = v;
    }
    if let Some(v) = a.warmup_iters {
        r.warmup_iters = v;
    }
    if let Some(v) = a.iteration_cap {
        r.iteration_cap = v;
    }
    if a.best_of_legs {
        r.stop_on_first_valid = false;
    }
}

fn resolve(command: &Command) -> LabResult<RunConfig> {
    let cfg = match command {
        Command::Pairs(a) => {
            let mut c = base_config(&a.common)?;
            apply_scope(&mut c, &a.scope);
            c
        }
        Command::Enumerate(a) => {
            let mut c = base_config(&a.common)?;
            apply_scope(&mut c, &a.scope);
            apply_filter(&mut c, &a.filter);
            c
        }
        Command::Dynamics(a) => {
            let mut c = base_config(&a.common)?;
            apply_scope(&mut c, &a.scope);
            apply_filter(&mut c, &a.filter);
            apply_relay(&mut c, &a.relay);
            let d = &mut c.dynamics;
            if let Some(v) = a.trials {
                d.trials = v;
            }
            if let Some(v) = a.bin_width {
                d.bin_width = v;
            }
            if let Some(v) = a.population {
                d.population = v;
            }
            if let Some(v) = &a.decoder {
                d.decoder = v.clone();
            }
            if let Some(v) = &a.combos {
                d.combos = Some(v.clone());
            }
            if let Some(v) = a.weight5_combos {
                d.weight5_combos = v;
            }
            if let Some(v) = a.weight5_limit {
                d.weight5_limit = v;
            }
            c
        }
        Command::Amend(a) => {
            let mut c = base_config(&a.common)?;
            apply_scope(&mut c, &a.scope);
            apply_filter(&mut c, &a.filter);
            apply_relay(&mut c, &a.relay);
            let m = &mut c.amend;
            if let Some(v) = &a.fractions {
                m.fractions = v.clone();
            }
            if let Some(v) = &a.decoders {
                m.decoders = v.clone();
            }
            if let Some(v) = a.prior {
                m.prior = Some(v);
            }
            if let Some(v) = a.selection_seed {
                m.selection_seed = v;
            }
            if let Some(v) = a.trials {
                m.trials = v;
            }
            if let Some(v) = a.population {
                m.population = v;
            }
            if let Some(v) = &a.combos {
                m.combos = Some(v.clone());
            }
            if a.column_pairs {
                m.column_pairs = true;
            }
            c
        }
        Command::Trace(a) => {
            let mut c = base_config(&a.common)?;
            apply_relay(&mut c, &a.relay);
            c.trace.faults = a.faults.clone();
            if let Some(k) = a.top_k {
                c.trace.top_k = k;
            }
            c
        }
        Command::GenModel(_) => RunConfig::default(),
    };
    Ok(cfg)
}

fn execute(cli: Cli) -> LabResult<()> {
    if let Command::GenModel(a) = &cli.command {
        return gen::run(a);
    }
    let cfg = resolve(&cli.command)?;
    let threads = cfg.run.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(LabError::internal)?;
    pool.install(|| match &cli.command {
        Command::Pairs(_) => commands::pairs(&cfg),
        Command::Enumerate(_) => commands::enumerate(&cfg),
        Command::Dynamics(_) => commands::dynamics(&cfg),
        Command::Amend(_) => commands::amend(&cfg),
        Command::Trace(_) => commands::trace(&cfg),
        Command::GenModel(_) => unreachable!("handled above"),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("syndromelab: {e}");
            e.into()
        }
    }
}
