//! Prints the raw numbers behind the empirical acceptance thresholds.

use morsekit::arith::{moebius_sieve, ratio, ExactRational};
use morsekit::experiments::{
    counterexample_chain, eventually_periodic_sum, row_decomposition, tm_orthogonality, CylinderFunction,
};
use morsekit::sequences::{build_counterexample, DivisibilityChain, ThueToeplitz};
use morsekit::spectral::{tm_correlation, SigmaCache};

fn main() {
    let mut cache = SigmaCache::new();
    for e in [16, 18, 20, 22] {
        let mut worst = (0.0f64, 0u64);
        for k in 1..=64 {
            let d = tm_correlation(k, 1 << e, &mut cache).unwrap().deviation.unwrap();
            if d > worst.0 {
                worst = (d, k);
            }
        }
        println!("tm correlation N=2^{e}: max deviation {:.6e} at k={}", worst.0, worst.1);
    }

    let n = 1_000_000;
    let mu = moebius_sieve(n).unwrap();
    for m in [10_000, 100_000, 1_000_000] {
        println!("tm orthogonality N={m}: {:.6e}", tm_orthogonality(m, &mu).unwrap().to_f64().abs());
    }

    let cs = build_counterexample(&DivisibilityChain::powers(5).unwrap(), n, &mu).unwrap();
    let chain = counterexample_chain(&cs, &mu, &[10_000, 100_000, n]).unwrap();
    for cp in &chain.checkpoints {
        println!("counterexample N={}: average {:.6}", cp.n, cp.average.to_f64());
    }
    println!("counterexample all ok: {}", chain.all_ok());
    println!("floor 6/pi^2 - 1/2 = {:.6}", 6.0 / std::f64::consts::PI.powi(2) - 0.5);

    let mut worst = 0.0f64;
    for p in 1..=64usize {
        for seed in 0..8i64 {
            let period: Vec<i64> = (0..p as i64).map(|i| ((i * 31 + seed * 17) % 7) - 3).collect();
            let v = eventually_periodic_sum(&[3, -3, 1], &period, &mu, n).unwrap().to_f64().abs() / 3.0;
            worst = worst.max(v);
        }
    }
    println!("periodic sums N=10^6, period<=64, normalized by F: max {worst:.6e}");

    let mut ratio_max = 0.0f64;
    for stage in 1..=8u32 {
        for seed in 0..20i64 {
            let len = 1 + (seed as u32 % 6);
            let table: Vec<ExactRational> = (0..1i64 << len).map(|i| ratio((i * 13 + seed * 7) % 19 - 9, 1 + (i + seed) % 5)).collect();
            let f = CylinderFunction::new(seed % 3, len, table).unwrap();
            let d = row_decomposition(&f, &ThueToeplitz, stage, &mu, 100_000).unwrap();
            let r = (&d.e_head + &d.e_tail).abs().to_f64() / (d.bound.to_f64() * d.period as f64);
            ratio_max = ratio_max.max(r);
            if !(d.regrouping_exact && d.boundary_bound_holds && d.row_bound_holds) {
                println!("rows stage {stage} seed {seed}: exact {} star3 {} star4 {}", d.regrouping_exact, d.boundary_bound_holds, d.row_bound_holds);
            }
        }
    }
    println!("rows: max |E'+E''| / (2^n F) = {ratio_max:.4}");
}
