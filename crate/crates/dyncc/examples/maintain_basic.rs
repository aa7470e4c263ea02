//! Feed a handful of edge flips to the maintainer and print the clustering
//! after each one.

use dyncc::baselines::cc_cost;
use dyncc::dyngraph::EdgeUpdate;
use dyncc::maintainer::MaintainerState;
use dyncc::sdd::SddParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = SddParams::new(0.45)?;
    let mut state = MaintainerState::new(10, params, 42)?;

    // two K5 blocks joined by a bridge, then the bridge goes away
    let mut updates = Vec::new();
    for block in [0..5, 5..10] {
        for u in block.clone() {
            for v in u + 1..block.end {
                updates.push(EdgeUpdate::insert(u, v));
            }
        }
    }
    updates.push(EdgeUpdate::insert(4, 5));
    updates.push(EdgeUpdate::delete(4, 5));
    for upd in updates {
        let step = state.apply_update(upd)?;
        let clustering = state.to_clustering();
        println!(
            "{upd}: ops {:>3}, triggered {:5}, cost {}, clusters {:?}",
            step.oracle_ops,
            step.triggered,
            cc_cost(state.graph(), &clustering)?,
            clustering.clusters()
        );
    }

    let report = state.verify_invariants(false)?;
    println!("invariants: {report}");
    println!("totals: {:?}", state.stats());
    Ok(())
}
