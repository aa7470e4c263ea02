//! Random insert/delete stream over an SBM graph, comparing the maintained
//! clustering with a fresh pivot run at a few checkpoints.

use dyncc::baselines::{cc_cost, pivot_clustering};
use dyncc::maintainer::MaintainerState;
use dyncc::sdd::SddParams;
use dyncc::streams::{sbm_generate, RandomStream, SbmSpec, StreamMode, StreamSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sbm = SbmSpec { n: 250, k: 4, p: 0.95, q: 0.05, seed: 1 };
    let edges = sbm_generate(&sbm)?;
    let spec = StreamSpec::new(StreamMode::Random, 16_000, 2);

    let mut state = MaintainerState::new(sbm.n, SddParams::new(0.45)?, 3)?;
    let mut pivot_rng = ChaCha8Rng::seed_from_u64(4);
    for (t, upd) in RandomStream::new(sbm.n, &edges, &spec)?.enumerate() {
        state.apply_update(upd)?;
        if (t + 1) % 2000 == 0 {
            let g = state.graph();
            let m = g.edge_count() as f64;
            let sdd = cc_cost(g, &state.to_clustering())? as f64;
            let pivot = cc_cost(g, &pivot_clustering(g, &mut pivot_rng))? as f64;
            println!(
                "t={:>5} m={:>4} cliques={} sdd/singleton={:.3} pivot/singleton={:.3}",
                t + 1,
                m,
                state.partition().clique_count(),
                sdd / m,
                pivot / m
            );
        }
    }
    let s = state.stats();
    println!("{} updates, {:.1} oracle ops per update", s.updates, s.oracle_ops as f64 / s.updates as f64);
    Ok(())
}
