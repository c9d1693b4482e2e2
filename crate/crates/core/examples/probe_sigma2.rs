// quick probe: how far do cursors advance per stage?
use rcflab_core::constructions::{run_sigma2, CeScript, Sigma2Config};
use std::collections::BTreeMap;
fn main() {
    let indices = 2u64;
    let horizon = 12u64;
    let mut w = BTreeMap::new();
    for e in 0..indices {
        let adds: Vec<(u64, Vec<u64>)> = (1..=horizon).map(|s| (s, vec![s * 100 + e])).collect();
        w.insert(e, adds);
    }
    let script = CeScript { w, horizon, indices: Some(indices), ..Default::default() };
    for stages in 1..=horizon {
        let t0 = std::time::Instant::now();
        let res = run_sigma2(&script, stages, &Sigma2Config::default());
        match res {
            Ok((_, st)) => {
                let info: Vec<_> = st.per_index.iter().map(|i| (i.n, i.held.len(), i.interval.width().to_f64_lossy())).collect();
                println!("stages {}: {:?} in {:?}", stages, info, t0.elapsed());
            }
            Err(e) => println!("stages {}: err {:?}", stages, e),
        }
        if t0.elapsed().as_secs() > 20 { break; }
    }
}
