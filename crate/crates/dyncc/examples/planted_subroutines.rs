//! The two sampled subroutines on planted inputs: the merge test picks up a
//! vertex the clique missed, and the split test tells a star center from a
//! clique member.

use dyncc::dyngraph::{DynGraph, Oracle};
use dyncc::sdd::{ac_merge, sparse_split_test, MergeOutcome, SddParams, SddPartition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let eps = 0.05;
    let params = SddParams::new(eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // K200 on 0..200, plus vertex 200 adjacent to 195 members and 5 outsiders
    let mut edges = Vec::new();
    for u in 0..200 {
        for v in u + 1..200 {
            edges.push((u, v));
        }
    }
    for v in 0..195 {
        edges.push((v, 200));
    }
    for w in 201..206 {
        edges.push((200, w));
    }
    let g = DynGraph::from_edges(206, &edges)?;
    let oracle = Oracle::new(&g);

    let mut partition = SddPartition::new(g.n());
    let id = partition.new_clique(&(0..200).collect::<Vec<_>>());
    match ac_merge(&oracle, &mut partition, id, &params, &mut rng)? {
        MergeOutcome::Updated(added) => println!("merge added {added:?} ({} oracle ops)", oracle.ops()),
        MergeOutcome::Fail => println!("merge failed"),
    }

    let star = DynGraph::from_edges(501, &(1..501).map(|l| (0, l)).collect::<Vec<_>>())?;
    let star_oracle = Oracle::new(&star);
    println!("star center sparse: {}", sparse_split_test(&star_oracle, 0, &params, &mut rng));
    println!("clique member sparse: {}", sparse_split_test(&oracle, 7, &params, &mut rng));
    Ok(())
}
