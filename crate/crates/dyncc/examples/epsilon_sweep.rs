//! Short runs over an ε grid, then a full run at the chosen value and an SVG
//! of its cost curves. Output goes to a temporary directory unless a path is
//! given.

use std::path::PathBuf;

use dyncc::harness::{emit_plot, epsilon_sweep, run_experiment, EpsSpec, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("dyncc_sweep"));
    let mut config = ExperimentConfig::default();
    config.output_dir = out.clone();
    config.eps = EpsSpec::Sweep { lo: 0.3, hi: 0.6, step: 0.05 };
    config.sweep_horizon = 16_000;

    let sweep = epsilon_sweep(&config)?;
    for p in &sweep.points {
        println!("eps {:.3}: mean sdd ratio {:.4} (pivot {:.4})", p.eps, p.mean_sdd_ratio, p.mean_pivot_ratio);
    }
    println!("best eps {:.3}", sweep.best_eps);

    config.eps = EpsSpec::Fixed(sweep.best_eps);
    config.total_updates = Some(20_000);
    let runs = run_experiment(&config)?;
    let csvs: Vec<PathBuf> = runs.iter().map(|r| r.csv.clone()).collect();
    let svg = out.join("best.svg");
    emit_plot(&csvs, &svg)?;
    println!("wrote {} and {}", csvs[0].display(), svg.display());
    Ok(())
}
