//! Timing of the two constructions on random full-rank payoff matrices.
//!
//! For every rank `k` the generator draws `reps` matrices of size
//! `(k + 2) × k` with entries uniform in `[0, 1)`, whose columns are the
//! `k` payoff vectors. Each rank has its own ChaCha stream derived from the
//! seed, so a rank's matrices do not depend on which other ranks run.

use std::hint::black_box;
use std::time::{Duration, Instant};

use lattice_kit::lattice::{generate_sublattice, minimal_lattice_subspace, PayoffCollection};
use lattice_kit::numerics::{rank, Matrix};
use lattice_kit::{Exec, Options};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every matrix is timed once per pass and its fastest time counts. Within
/// a pass the ranks take turns matrix by matrix, so a slow stretch of
/// wall-clock time is spread over every rank instead of inflating a
/// contiguous block of them.
const PASSES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub rank: usize,
    pub sublat_total_s: f64,
    pub minlat_total_s: f64,
}

fn rank_seed(seed: u64, rank: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ rank as u64
}

/// `reps` random `(rank + 2) × rank` matrices of full column rank.
pub fn random_matrices(seed: u64, rank_k: usize, reps: usize) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(rank_seed(seed, rank_k));
    let rows = rank_k + 2;
    let mut out = Vec::with_capacity(reps);
    while out.len() < reps {
        let data: Vec<f64> = (0..rows * rank_k).map(|_| rng.random::<f64>()).collect();
        let m = Matrix::new(rows, rank_k, data).expect("finite entries");
        if rank(&m, 1e-9) == rank_k {
            out.push(m);
        }
    }
    out
}

fn timed<T>(f: impl FnOnce() -> lattice_kit::Result<T>) -> lattice_kit::Result<Duration> {
    let t = Instant::now();
    black_box(f()?);
    Ok(t.elapsed())
}

/// Total time of each construction over `reps` matrices per rank.
pub fn run_bench(
    seed: u64,
    min_rank: usize,
    max_rank: usize,
    reps: usize,
    opts: &Options,
) -> lattice_kit::Result<Vec<BenchRow>> {
    let opts = opts.with_exec(Exec::Sequential);
    let ranks: Vec<usize> = (min_rank..=max_rank).collect();
    let inputs = ranks
        .iter()
        .map(|&k| {
            random_matrices(seed, k, reps)
                .iter()
                .map(PayoffCollection::from_columns)
                .collect::<lattice_kit::Result<Vec<_>>>()
        })
        .collect::<lattice_kit::Result<Vec<_>>>()?;
    let mut best = vec![vec![(Duration::MAX, Duration::MAX); reps]; ranks.len()];
    for _ in 0..PASSES {
        for j in 0..reps {
            for (per_rank, xs) in best.iter_mut().zip(&inputs) {
                let x = &xs[j];
                let s = timed(|| generate_sublattice(x, &opts))?;
                let m = timed(|| minimal_lattice_subspace(x, &opts))?;
                let b = &mut per_rank[j];
                *b = (b.0.min(s), b.1.min(m));
            }
        }
    }
    Ok(ranks
        .iter()
        .zip(&best)
        .map(|(&rank, per_rank)| BenchRow {
            rank,
            sublat_total_s: per_rank.iter().map(|b| b.0).sum::<Duration>().as_secs_f64(),
            minlat_total_s: per_rank.iter().map(|b| b.1).sum::<Duration>().as_secs_f64(),
        })
        .collect())
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "sublat_total_s", "minlat_total_s"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.rank.to_string(),
            r.sublat_total_s.to_string(),
            r.minlat_total_s.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 output")
}
