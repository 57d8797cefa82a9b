//! Timing ladder: hexagon rings of growing size with seeded random
//! offsets, transfer method always, enumeration oracle only while it stays
//! feasible. Output is CSV on stdout.

use std::time::Instant;

use polymatch::notation::{FaceSpec, RingSpec};
use polymatch::{build_ring, count_maximal, count_ring, ConstraintSet, MatrixCache};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The oracle enumerates every matching; past this many faces it stops
/// being a reasonable benchmark row.
const ORACLE_FACE_LIMIT: usize = 12;

pub fn run(faces: usize, repeat: usize, seed: u64) {
    let repeat = repeat.max(1);
    let mut ladder: Vec<usize> = [3usize, 6, 12, 100, 1_000, 10_000]
        .into_iter()
        .filter(|&n| n < faces)
        .collect();
    ladder.push(faces);

    println!("n,method,seconds,digits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in ladder {
        let spec = RingSpec::new(
            (0..n).map(|_| FaceSpec::interior(6, rng.gen_range(1..=3))).collect(),
        )
        .expect("hexagon rings are valid");

        let mut best = f64::INFINITY;
        let mut digits = 0;
        for _ in 0..repeat {
            let mut cache = MatrixCache::new();
            let t = Instant::now();
            let count = count_ring(&spec, &mut cache);
            best = best.min(t.elapsed().as_secs_f64());
            digits = count.to_string().len();
        }
        println!("{},transfer,{:.6},{}", n, best, digits);

        if n <= ORACLE_FACE_LIMIT {
            let g = build_ring(&spec);
            let mut best = f64::INFINITY;
            let mut digits = 0;
            for _ in 0..repeat {
                let t = Instant::now();
                let count = count_maximal(g.graph(), &ConstraintSet::new());
                best = best.min(t.elapsed().as_secs_f64());
                digits = count.to_string().len();
            }
            println!("{},oracle,{:.6},{}", n, best, digits);
        }
    }
}
