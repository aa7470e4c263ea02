//! An adaptive adversary that reads the maintained clustering itself (rather
//! than pivot) and tears apart its two largest clusters.

use std::cell::RefCell;
use std::rc::Rc;

use dyncc::baselines::cc_cost;
use dyncc::maintainer::MaintainerState;
use dyncc::sdd::SddParams;
use dyncc::streams::{sbm_generate, SbmSpec, StreamMode, StreamSpec, TargetedStream};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sbm = SbmSpec { n: 250, k: 4, p: 0.95, q: 0.05, seed: 9 };
    let edges = sbm_generate(&sbm)?;
    let state = Rc::new(RefCell::new(MaintainerState::new(sbm.n, SddParams::new(0.4)?, 1)?));

    let watcher = Rc::clone(&state);
    let spec = StreamSpec::new(StreamMode::Targeted, edges.len() + 8000, 2);
    let mut stream = TargetedStream::new(sbm.n, &edges, &spec, move |_graph| watcher.borrow().to_clustering())?;

    let mut t = 0;
    while let Some(upd) = stream.next() {
        state.borrow_mut().apply_update(upd)?;
        t += 1;
        if t > stream.fill_len() && t % 1000 == 0 {
            let s = state.borrow();
            let m = s.graph().edge_count();
            let cost = cc_cost(s.graph(), &s.to_clustering())?;
            println!(
                "t={t:>5} batch {:>2} m={m} cliques={} sdd/singleton={:.3}",
                stream.batches(),
                s.partition().clique_count(),
                cost as f64 / m as f64
            );
        }
    }
    let s = state.borrow();
    println!("{} dismantles over {} updates", s.stats().dismantled, s.stats().updates);
    Ok(())
}
