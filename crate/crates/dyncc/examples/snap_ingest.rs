//! Load a SNAP edge list (a small built-in sample unless a path is given) and
//! run a short random stream over it.

use dyncc::baselines::cc_cost;
use dyncc::maintainer::MaintainerState;
use dyncc::sdd::SddParams;
use dyncc::streams::{load_snap_edgelist, parse_snap, RandomStream, StreamMode, StreamSpec};

const SAMPLE: &str = "\
# Directed graph: sample
# FromNodeId\tToNodeId
10\t11
11\t10
10\t12
11\t12
12\t13
13\t13
20\t21
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = match std::env::args().nth(1) {
        Some(path) => load_snap_edgelist(path)?,
        None => parse_snap(SAMPLE.as_bytes())?,
    };
    println!("n = {}, m = {} after dropping direction, duplicates and self-loops", graph.n, graph.edges.len());

    let spec = StreamSpec::new(StreamMode::Random, graph.edges.len() * 3 / 2, 1);
    let mut state = MaintainerState::new(graph.n, SddParams::new(0.45)?, 1)?;
    for upd in RandomStream::new(graph.n, &graph.edges, &spec)? {
        state.apply_update(upd)?;
    }
    let clustering = state.to_clustering();
    println!("final m = {}, cost {}", state.graph().edge_count(), cc_cost(state.graph(), &clustering)?);
    for cluster in clustering.clusters().iter().filter(|c| c.len() > 1) {
        let ids: Vec<u64> = cluster.iter().map(|&v| graph.original_ids[v]).collect();
        println!("cluster {ids:?}");
    }
    Ok(())
}
