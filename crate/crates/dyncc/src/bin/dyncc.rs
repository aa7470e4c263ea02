use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dyncc::harness::{emit_plot, epsilon_sweep, run_experiment, verify_runs, ExperimentConfig, HarnessError};

#[derive(Parser)]
#[command(name = "dyncc", version, about = "Dynamic correlation clustering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every (eps, seed) pair and write one CSV per run.
    Run(ConfigArgs),
    /// Short runs over an eps grid; writes sweep.csv and reports the best eps.
    Sweep(ConfigArgs),
    /// Render one or more run CSVs as an SVG line chart.
    Plot {
        #[arg(required = true)]
        csv: Vec<PathBuf>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Check the decomposition invariants at every checkpoint.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Exit with status 3 if any violation is found.
        #[arg(long)]
        strict: bool,
    },
}

/// Flags mirror the config-file keys; command-line values override the file.
#[derive(Args)]
struct ConfigArgs {
    /// key = value file
    #[arg(long)]
    config: Option<PathBuf>,
    /// sbm or snap
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    snap_path: Option<String>,
    #[arg(long)]
    sbm_n: Option<String>,
    #[arg(long)]
    sbm_k: Option<String>,
    #[arg(long)]
    sbm_p: Option<String>,
    #[arg(long)]
    sbm_q: Option<String>,
    /// random or targeted
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    p_del: Option<String>,
    /// Number of updates, or "auto"
    #[arg(long)]
    total_updates: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    eps_lo: Option<String>,
    #[arg(long)]
    eps_hi: Option<String>,
    #[arg(long)]
    eps_step: Option<String>,
    #[arg(long)]
    checkpoint_every: Option<String>,
    /// Comma-separated list
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    output_dir: Option<String>,
    #[arg(long)]
    sweep_horizon: Option<String>,
    /// exact or sampled
    #[arg(long)]
    sdd_mode: Option<String>,
    #[arg(long)]
    merge_floor: Option<String>,
    #[arg(long)]
    wall_time: Option<String>,
}

impl ConfigArgs {
    fn build(&self) -> Result<ExperimentConfig, HarnessError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        let pairs = [
            ("input", &self.input),
            ("snap_path", &self.snap_path),
            ("sbm_n", &self.sbm_n),
            ("sbm_k", &self.sbm_k),
            ("sbm_p", &self.sbm_p),
            ("sbm_q", &self.sbm_q),
            ("mode", &self.mode),
            ("p_del", &self.p_del),
            ("total_updates", &self.total_updates),
            ("eps", &self.eps),
            ("eps_lo", &self.eps_lo),
            ("eps_hi", &self.eps_hi),
            ("eps_step", &self.eps_step),
            ("checkpoint_every", &self.checkpoint_every),
            ("seeds", &self.seeds),
            ("output_dir", &self.output_dir),
            ("sweep_horizon", &self.sweep_horizon),
            ("sdd_mode", &self.sdd_mode),
            ("merge_floor", &self.merge_floor),
            ("wall_time", &self.wall_time),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
    Violation(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run(args) => {
            let cfg = args.build()?;
            for s in run_experiment(&cfg)? {
                let fmt = |x: Option<f64>| x.map_or("-".to_string(), |r| format!("{r:.4}"));
                println!(
                    "eps {:.3} seed {}: {} updates, {} rows, final sdd {} pivot {}, {:.1} ops/update -> {}",
                    s.eps,
                    s.seed,
                    s.updates,
                    s.rows,
                    fmt(s.final_sdd_ratio),
                    fmt(s.final_pivot_ratio),
                    s.ops_per_update,
                    s.csv.display()
                );
            }
        }
        Command::Sweep(args) => {
            let cfg = args.build()?;
            let result = epsilon_sweep(&cfg)?;
            for p in &result.points {
                println!("eps {:.3}: mean sdd {:.4} pivot {:.4} ({} checkpoints)", p.eps, p.mean_sdd_ratio, p.mean_pivot_ratio, p.checkpoints);
            }
            println!("best eps {:.3} -> {}", result.best_eps, result.csv.display());
        }
        Command::Plot { csv, out } => {
            emit_plot(&csv, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Verify { config, strict } => {
            let cfg = config.build()?;
            let s = verify_runs(&cfg)?;
            println!(
                "{} runs, {} checkpoints, {} with violations ({} sparse, {} clique)",
                s.runs, s.checkpoints, s.failing_checkpoints, s.sparse_violations, s.clique_violations
            );
            if strict && s.failing_checkpoints > 0 {
                return Err(Failure::Violation(format!("{} checkpoints violate the invariants", s.failing_checkpoints)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
    }
}
