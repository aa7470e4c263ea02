//! Pivot against the exact optimum on a small random graph.

use dyncc::baselines::{brute_force_opt, cc_cost, pivot_clustering, singleton_clustering};
use dyncc::dyngraph::DynGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 10;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    let g = DynGraph::from_edges(n, &edges)?;

    let (opt, best) = brute_force_opt(&g)?;
    println!("m = {}, singleton cost {}", g.edge_count(), cc_cost(&g, &singleton_clustering(n))?);
    println!("optimum {opt}: {:?}", best.clusters());

    let runs = 2000;
    let total: u64 = (0..runs).map(|_| cc_cost(&g, &pivot_clustering(&g, &mut rng)).unwrap()).sum();
    println!("pivot mean over {runs} runs: {:.3}", total as f64 / runs as f64);
    Ok(())
}
