use kicked_top::noise::sample_random_chain;
use kicked_top::oracle::BlockCompressor;
use kicked_top::spin::Spin;
use kicked_top::stats::{SpacingEnsemble, SpacingSet, POISSON_R};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

fn ata_diag(n: u32, tau_a: f64) -> Vec<f64> {
    let dim = 1usize << n;
    (0..dim).map(|s| {
        let down = (s as u64).count_ones() as f64;
        let big_s = n as f64 - 2.0 * down;
        tau_a * (big_s * big_s - n as f64) / 2.0
    }).collect()
}

fn chain_curve(n: u32, targets: &[f64], n_tau: usize, reals: u64, seed0: u64) -> Vec<(f64, f64, f64)> {
    let comp = BlockCompressor::new(n, 0.85).unwrap();
    let j_top = Spin::from_twice(n);
    targets.par_iter().map(|&nu| {
        let mut ens = SpacingEnsemble::new();
        for i in 0..n_tau {
            let tau_sweep = 10.0 + 0.5 * i as f64 / (n_tau.max(2) - 1) as f64;
            let tau_a = tau_sweep / (2.0 * n as f64);
            let h_a = ata_diag(n, tau_a);
            for rl in 0..reals {
                let seed = seed0 ^ (i as u64 * 7919) ^ (rl * 104729) ^ ((nu * 997.0) as u64);
                let delta = if nu == 0.0 { 0.0 } else {
                    let probe = sample_random_chain(n, 1.0, seed).unwrap();
                    let base = probe.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                    nu / base
                };
                let h_rc = sample_random_chain(n, delta, seed).unwrap();
                let d: Vec<C64> = h_a.iter().zip(h_rc.iter())
                    .map(|(&a, &c)| C64::from_polar(1.0, -(a + c))).collect();
                let phases = comp.phases_for_diagonal(&d, &[j_top]).unwrap();
                ens.push(SpacingSet::from_circular_phases(&phases[0].1, format!("{i}-{rl}")).unwrap());
            }
        }
        let r = ens.r_statistic().unwrap();
        (nu, r.mean, r.stderr)
    }).collect()
}

fn main() {
    let targets = [0.0, 0.03, 0.1, 0.3, 0.6, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0];
    for n in [8u32, 10] {
        let t = std::time::Instant::now();
        let curve = chain_curve(n, &targets, 26, 3, 50_000 + n as u64);
        print!("N={n} ({:?}): ", t.elapsed());
        for (nu, m, s) in &curve { print!("({nu:.2}:{m:.3}±{s:.3}) "); }
        println!();
    }
    println!("POISSON_R = {POISSON_R:.4}");
}
