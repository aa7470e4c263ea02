use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{EpsSpec, ExperimentConfig, InputSpec};
use super::HarnessError;
use crate::baselines::{cc_cost, pivot_clustering, singleton_clustering};
use crate::dyngraph::{DynGraph, EdgeUpdate, Vertex};
use crate::maintainer::{CumulativeStats, MaintainerState};
use crate::sdd::SddParams;
use crate::streams::{
    desk_length, load_snap_edgelist, full_random_length, full_targeted_length, sbm_generate,
    RandomStream, SbmSpec, StreamMode, StreamSpec, TargetedStream,
};

pub const CSV_HEADER: [&str; 8] = [
    "update_index",
    "sdd_cost",
    "pivot_cost",
    "singleton_cost",
    "sdd_ratio",
    "pivot_ratio",
    "oracle_ops",
    "wall_time_ns",
];

/// Independent random streams derived from one run seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPurpose {
    Graph = 1,
    Stream = 2,
    Maintainer = 3,
    Pivot = 4,
    Adversary = 5,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn derive_seed(seed: u64, purpose: SeedPurpose) -> u64 {
    splitmix64(splitmix64(seed) ^ purpose as u64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckpointRow {
    pub update_index: u64,
    pub sdd_cost: u64,
    pub pivot_cost: u64,
    pub singleton_cost: u64,
    pub sdd_ratio: f64,
    pub pivot_ratio: f64,
    /// Cumulative maintainer oracle operations.
    pub oracle_ops: u64,
    pub wall_time_ns: u64,
}

/// `num / den`, with `0/0 = 0`.
pub fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub eps: f64,
    pub seed: u64,
    pub n: usize,
    /// Edge count of the input graph.
    pub m: usize,
    pub updates: usize,
    pub rows: Vec<CheckpointRow>,
    pub stats: CumulativeStats,
}

/// Vertex count and edge list of the configured input for one run seed.
pub fn load_input(config: &ExperimentConfig, seed: u64) -> Result<(usize, Vec<(Vertex, Vertex)>), HarnessError> {
    match &config.input {
        InputSpec::Sbm(spec) => {
            let spec = SbmSpec { seed: derive_seed(seed, SeedPurpose::Graph), ..*spec };
            Ok((spec.n, sbm_generate(&spec)?))
        }
        InputSpec::Snap(path) => {
            let g = load_snap_edgelist(path)
                .map_err(|e| HarnessError::Parse { path: path.clone(), msg: e.to_string() })?;
            Ok((g.n, g.edges))
        }
    }
}

/// Stream length: the configured value, or the desk-scale default for `m`.
pub fn stream_length(config: &ExperimentConfig, m: usize) -> usize {
    config.total_updates.unwrap_or_else(|| {
        desk_length(match config.mode {
            StreamMode::Random => full_random_length(m),
            StreamMode::Targeted => full_targeted_length(m),
        })
    })
}

/// Runs one (ε, seed) experiment. `total` overrides the stream length.
/// `observer` sees the maintainer at every recorded checkpoint.
pub fn run_single(
    config: &ExperimentConfig,
    eps: f64,
    seed: u64,
    total: Option<usize>,
    observer: &mut dyn FnMut(&MaintainerState, &CheckpointRow) -> Result<(), HarnessError>,
) -> Result<RunOutput, HarnessError> {
    config.validate()?;
    let (n, edges) = load_input(config, seed)?;
    let m = edges.len();
    let total = total.unwrap_or_else(|| stream_length(config, m));
    let spec = StreamSpec {
        mode: config.mode,
        p_del: config.p_del,
        total_updates: total,
        seed: derive_seed(seed, SeedPurpose::Stream),
    };
    let stream: Box<dyn Iterator<Item = EdgeUpdate>> = match config.mode {
        StreamMode::Random => Box::new(RandomStream::new(n, &edges, &spec)?),
        StreamMode::Targeted => {
            let mut adversary = ChaCha8Rng::seed_from_u64(derive_seed(seed, SeedPurpose::Adversary));
            Box::new(TargetedStream::new(n, &edges, &spec, move |g: &DynGraph| {
                pivot_clustering(g, &mut adversary)
            })?)
        }
    };
    let quiet_until = match config.mode {
        StreamMode::Random => 0,
        StreamMode::Targeted => m / 2,
    };

    let mut params = SddParams::new(eps)?.with_mode(config.sdd_mode);
    params.merge_floor = config.merge_floor;
    let mut state = MaintainerState::new(n, params, derive_seed(seed, SeedPurpose::Maintainer))?;
    let mut pivot_rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, SeedPurpose::Pivot));
    let mut rows = Vec::new();
    let mut wall = 0u64;
    let mut updates = 0usize;
    for upd in stream {
        let start = config.wall_time.then(Instant::now);
        state.apply_update(upd)?;
        if let Some(s) = start {
            wall += s.elapsed().as_nanos() as u64;
        }
        updates += 1;
        if updates % config.checkpoint_every != 0 || updates < quiet_until {
            continue;
        }
        let g = state.graph();
        let singleton_cost = cc_cost(g, &singleton_clustering(n))?;
        let sdd_cost = cc_cost(g, &state.to_clustering())?;
        let pivot_cost = cc_cost(g, &pivot_clustering(g, &mut pivot_rng))?;
        let row = CheckpointRow {
            update_index: updates as u64,
            sdd_cost,
            pivot_cost,
            singleton_cost,
            sdd_ratio: ratio(sdd_cost, singleton_cost),
            pivot_ratio: ratio(pivot_cost, singleton_cost),
            oracle_ops: state.stats().oracle_ops,
            wall_time_ns: wall,
        };
        observer(&state, &row)?;
        rows.push(row);
    }
    Ok(RunOutput { eps, seed, n, m, updates, rows, stats: state.stats() })
}

pub fn write_csv(path: &Path, rows: &[CheckpointRow]) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.update_index.to_string(),
            r.sdd_cost.to_string(),
            r.pivot_cost.to_string(),
            r.singleton_cost.to_string(),
            format!("{:.6}", r.sdd_ratio),
            format!("{:.6}", r.pivot_ratio),
            r.oracle_ops.to_string(),
            r.wall_time_ns.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<CheckpointRow>, HarnessError> {
    let mut rdr = csv::Reader::from_path(path)?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| -> Result<usize, HarnessError> {
        headers.iter().position(|h| h == name).ok_or_else(|| HarnessError::Parse {
            path: path.to_path_buf(),
            msg: format!("missing column '{name}'"),
        })
    };
    let idx: Vec<usize> = CSV_HEADER.iter().map(|h| col(h)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| -> Result<&str, HarnessError> {
            rec.get(idx[i]).ok_or_else(|| HarnessError::Parse {
                path: path.to_path_buf(),
                msg: format!("row {}: missing field", line + 2),
            })
        };
        let parse_err = |i: usize| HarnessError::Parse {
            path: path.to_path_buf(),
            msg: format!("row {}: bad {}", line + 2, CSV_HEADER[i]),
        };
        let int = |i: usize| -> Result<u64, HarnessError> { field(i)?.parse().map_err(|_| parse_err(i)) };
        let float = |i: usize| -> Result<f64, HarnessError> { field(i)?.parse().map_err(|_| parse_err(i)) };
        rows.push(CheckpointRow {
            update_index: int(0)?,
            sdd_cost: int(1)?,
            pivot_cost: int(2)?,
            singleton_cost: int(3)?,
            sdd_ratio: float(4)?,
            pivot_ratio: float(5)?,
            oracle_ops: int(6)?,
            wall_time_ns: int(7)?,
        });
    }
    Ok(rows)
}

fn run_stem(config: &ExperimentConfig) -> String {
    let input = match &config.input {
        InputSpec::Sbm(s) => format!("sbm_n{}_k{}", s.n, s.k),
        InputSpec::Snap(p) => format!(
            "snap_{}",
            p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "graph".into())
        ),
    };
    format!("{input}_{}", config.mode)
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub eps: f64,
    pub seed: u64,
    pub csv: PathBuf,
    pub rows: usize,
    pub updates: usize,
    pub final_sdd_ratio: Option<f64>,
    pub final_pivot_ratio: Option<f64>,
    pub ops_per_update: f64,
}

/// Runs every (ε, seed) pair of the configuration and writes one CSV each
/// into the output directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunSummary>, HarnessError> {
    config.validate()?;
    fs::create_dir_all(&config.output_dir)?;
    let stem = run_stem(config);
    let mut out = Vec::new();
    for eps in config.eps.grid() {
        for &seed in &config.seeds {
            let run = run_single(config, eps, seed, None, &mut |_, _| Ok(()))?;
            let csv = config.output_dir.join(format!("{stem}_eps{eps:.3}_seed{seed}.csv"));
            write_csv(&csv, &run.rows)?;
            out.push(RunSummary {
                eps,
                seed,
                csv,
                rows: run.rows.len(),
                updates: run.updates,
                final_sdd_ratio: run.rows.last().map(|r| r.sdd_ratio),
                final_pivot_ratio: run.rows.last().map(|r| r.pivot_ratio),
                ops_per_update: ratio(run.stats.oracle_ops, run.updates as u64),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub eps: f64,
    pub mean_sdd_ratio: f64,
    pub mean_pivot_ratio: f64,
    pub checkpoints: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub best_eps: f64,
    pub csv: PathBuf,
}

/// Runs a truncated experiment (`sweep_horizon` updates) for every ε of the
/// grid and picks the ε with the lowest mean `sdd_ratio` over all checkpoints
/// and seeds; ties go to the smaller ε. Writes `sweep.csv`.
pub fn epsilon_sweep(config: &ExperimentConfig) -> Result<SweepResult, HarnessError> {
    config.validate()?;
    fs::create_dir_all(&config.output_dir)?;
    let grid = match config.eps {
        EpsSpec::Fixed(e) => vec![e],
        sweep => sweep.grid(),
    };
    let mut points = Vec::new();
    for eps in grid {
        let (mut sdd, mut pivot, mut count) = (0.0, 0.0, 0usize);
        for &seed in &config.seeds {
            let run = run_single(config, eps, seed, Some(config.sweep_horizon), &mut |_, _| Ok(()))?;
            for r in &run.rows {
                sdd += r.sdd_ratio;
                pivot += r.pivot_ratio;
                count += 1;
            }
        }
        if count == 0 {
            return Err(HarnessError::Config(format!(
                "sweep horizon of {} updates records no checkpoints",
                config.sweep_horizon
            )));
        }
        points.push(SweepPoint {
            eps,
            mean_sdd_ratio: sdd / count as f64,
            mean_pivot_ratio: pivot / count as f64,
            checkpoints: count,
        });
    }
    let mut best = &points[0];
    for p in &points[1..] {
        if p.mean_sdd_ratio < best.mean_sdd_ratio {
            best = p;
        }
    }
    let best_eps = best.eps;

    let csv = config.output_dir.join("sweep.csv");
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(&csv)?;
    w.write_record(["eps", "mean_sdd_ratio", "mean_pivot_ratio", "checkpoints"])?;
    for p in &points {
        w.write_record([
            format!("{:.3}", p.eps),
            format!("{:.6}", p.mean_sdd_ratio),
            format!("{:.6}", p.mean_pivot_ratio),
            p.checkpoints.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(SweepResult { points, best_eps, csv })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub runs: usize,
    pub checkpoints: usize,
    /// Checkpoints with at least one violation.
    pub failing_checkpoints: usize,
    pub sparse_violations: usize,
    pub clique_violations: usize,
}

/// Runs the configured experiments and checks the maintainer invariants at
/// every checkpoint. Nothing is written to disk.
pub fn verify_runs(config: &ExperimentConfig) -> Result<VerifySummary, HarnessError> {
    config.validate()?;
    let mut summary = VerifySummary::default();
    for eps in config.eps.grid() {
        for &seed in &config.seeds {
            run_single(config, eps, seed, None, &mut |state, _| {
                let report = state.verify_invariants(false)?;
                summary.checkpoints += 1;
                if !report.is_clean() {
                    summary.failing_checkpoints += 1;
                }
                summary.sparse_violations += report.sparse_violations.len();
                summary.clique_violations += report.clique_violations.len();
                Ok(())
            })?;
            summary.runs += 1;
        }
    }
    Ok(summary)
}
