use superdir::optimizer::*;
use superdir::constants::{DEFAULT_FREQUENCY, DEFAULT_Z0};

#[test]
fn seed_robustness() {
    for n in [3usize, 4, 5] {
        let target = desired_realized_gain_db(n, DEFAULT_FREQUENCY, DEFAULT_Z0).unwrap();
        let p = SynthesisProblem::new(n, DEFAULT_FREQUENCY, DEFAULT_Z0, target).unwrap();
        let mut ok = 0;
        for seed in 0..6u64 {
            let cfg = DeConfig { seed, ..DeConfig::default() };
            let run = optimize_array(&cfg, &p).unwrap();
            let hit = run.run.best_cost < 1e-3;
            if hit { ok += 1; }
            println!("N={n} seed={seed}: cost={:.3e} achieved={:.3} target={target:.3} hit={hit}", run.run.best_cost, run.achieved_rg_db);
        }
        println!("N={n}: {ok}/6 seeds hit");
    }
}
