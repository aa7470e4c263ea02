//! Decompose a fixed graph once and check the result with the exact
//! checkers, then look at one vertex's local decomposition.

use dyncc::dyngraph::{DynGraph, Oracle};
use dyncc::sdd::{exact_dense_check, exact_sparse_check, local_sdd, static_sdd, SddParams};
use dyncc::streams::{sbm_generate, SbmSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SbmSpec { n: 200, k: 4, p: 0.98, q: 0.01, seed: 11 };
    let g = DynGraph::from_edges(spec.n, &sbm_generate(&spec)?)?;
    let oracle = Oracle::new(&g);
    let eps = 0.3;

    let partition = static_sdd(&g, eps);
    println!("{} almost-cliques, {} sparse vertices", partition.clique_count(), partition.sparse_vertices().count());
    for clique in partition.cliques() {
        println!(
            "  clique {} of {} members, {eps}-dense: {}",
            clique.id,
            clique.len(),
            exact_dense_check(&oracle, clique.members(), eps)?
        );
    }
    let bad = partition.sparse_vertices().filter(|&v| !exact_sparse_check(&oracle, v, eps, 1.0)).count();
    println!("sparse vertices failing the {eps}-sparse check: {bad}");

    let local = local_sdd(&oracle, 0, &SddParams::new(eps)?, &mut ChaCha8Rng::seed_from_u64(1));
    println!(
        "around vertex 0: |N[0]| = {}, local cliques of sizes {:?}",
        local.universe.len(),
        local.local_cliques.iter().map(Vec::len).collect::<Vec<_>>()
    );
    Ok(())
}
