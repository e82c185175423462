//! Seeded generators for fuzzing: weighted-coverage instances, small set
//! matroids, and monotone submodular tables on them.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Instance, TableFunction, WeightedCoverage};
use crate::matroid::{MatroidSpec, SetMatroid};
use crate::seq::Action;
use crate::valuation::{string_extension, SetFunction};

/// Weighted coverage over a uniform set matroid of rank `k`, with `n_sets`
/// non-empty random subsets of a `universe`-element ground set and integer
/// weights in `1..=10`.
pub fn random_coverage_instance(seed: u64, n_sets: usize, universe: usize, k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..universe).map(|_| rng.gen_range(1..=10) as f64).collect();
    let coverage = random_coverage(&mut rng, weights, n_sets);
    let matroid = SetMatroid::uniform(n_sets, k).expect("positive sizes");
    Instance::new(matroid.into(), string_extension(coverage))
}

/// Same shape as [`random_coverage_instance`] but with all-zero weights,
/// which leaves no positive gain anywhere.
pub fn zero_weight_coverage_instance(seed: u64, n_sets: usize, universe: usize, k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coverage = random_coverage(&mut rng, vec![0.0; universe], n_sets);
    let matroid = SetMatroid::uniform(n_sets, k).expect("positive sizes");
    Instance::new(matroid.into(), string_extension(coverage))
}

fn random_coverage(rng: &mut ChaCha8Rng, weights: Vec<f64>, n_sets: usize) -> WeightedCoverage {
    let universe = weights.len();
    let elements: Vec<usize> = (0..universe).collect();
    let sets = (0..n_sets)
        .map(|_| {
            let size = rng.gen_range(1..=universe);
            elements.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    WeightedCoverage::new(weights, sets).expect("generated sets are in range")
}

/// Fuzz-harness instance: 2..=8 sets over a 1..=8 element universe, rank
/// `K` in `1..=min(4, sets)`. Returns the instance and `K`.
pub fn fuzz_coverage_instance(seed: u64) -> (Instance, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let n_sets = rng.gen_range(2..=8);
    let universe = rng.gen_range(1..=8);
    let k = rng.gen_range(1..=n_sets.min(4));
    (random_coverage_instance(seed, n_sets, universe, k), k)
}

/// A random set matroid with `ground` items and rank at most `max_rank`,
/// materialized as an explicit family. Alternates between truncated binary
/// linear matroids and truncated partition matroids; the declared rank is the
/// true rank of the result.
pub fn random_set_matroid(rng: &mut impl Rng, ground: usize, max_rank: usize) -> SetMatroid {
    let truncate = rng.gen_range(1..=max_rank);
    let independent: Box<dyn Fn(&[Action]) -> bool> = if rng.gen_bool(0.5) {
        let dim = rng.gen_range(1..=4);
        let vectors: Vec<u8> = (0..ground).map(|_| rng.gen_range(0..(1u8 << dim))).collect();
        Box::new(move |s: &[Action]| gf2_independent(s.iter().map(|&a| vectors[a])))
    } else {
        let blocks = rng.gen_range(1..=ground.min(3));
        let block_of: Vec<usize> = (0..ground).map(|_| rng.gen_range(0..blocks)).collect();
        let caps: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=2)).collect();
        Box::new(move |s: &[Action]| {
            let mut used = vec![0; caps.len()];
            s.iter().all(|&a| {
                used[block_of[a]] += 1;
                used[block_of[a]] <= caps[block_of[a]]
            })
        })
    };

    let mut family = Vec::new();
    let mut current = Vec::new();
    collect_subsets(ground, truncate, 0, &mut current, &mut |s| {
        if independent(s) {
            family.push(s.to_vec());
        }
    });
    let rank = family.iter().map(Vec::len).max().unwrap_or(0);
    if rank == 0 {
        // Every item was a loop; fall back to the rank-1 uniform matroid.
        return SetMatroid::uniform(ground, 1).expect("positive sizes");
    }
    SetMatroid::explicit(ground, rank, family).expect("generated family is well formed")
}

fn gf2_independent(vectors: impl Iterator<Item = u8>) -> bool {
    let mut basis: Vec<u8> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

fn collect_subsets(n: usize, max_len: usize, start: usize, current: &mut Vec<Action>, visit: &mut impl FnMut(&[Action])) {
    visit(current);
    if current.len() == max_len {
        return;
    }
    for a in start..n {
        current.push(a);
        collect_subsets(n, max_len, a + 1, current, visit);
        current.pop();
    }
}

/// A random monotone submodular set function tabulated on every independent
/// set of `m`. The raw empty-set value is a random offset so that
/// normalization is exercised.
pub fn random_submodular_table(rng: &mut impl Rng, m: &SetMatroid) -> TableFunction {
    let n = m.ground_size();
    let offset = rng.gen_range(-5..=5) as f64;
    let f: Box<dyn Fn(&[Action]) -> f64> = match rng.gen_range(0..3) {
        0 => {
            let universe = rng.gen_range(1..=6);
            let weights: Vec<f64> = (0..universe).map(|_| rng.gen_range(0..=10) as f64).collect();
            let cover = random_coverage(&mut ChaCha8Rng::seed_from_u64(rng.gen()), weights, n);
            Box::new(move |s: &[Action]| cover.value(s))
        }
        1 => {
            // Facility location: each client served by its best open facility.
            let clients = rng.gen_range(1..=4);
            let w: Vec<Vec<f64>> =
                (0..clients).map(|_| (0..n).map(|_| rng.gen_range(0..=10) as f64).collect()).collect();
            Box::new(move |s: &[Action]| w.iter().map(|row| s.iter().map(|&a| row[a]).fold(0.0, f64::max)).sum())
        }
        _ => {
            // Concave of modular.
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=10) as f64).collect();
            Box::new(move |s: &[Action]| s.iter().map(|&a| w[a]).sum::<f64>().sqrt() * 3.0)
        }
    };
    TableFunction::new(m.independent_sets().into_iter().map(|s| {
        let v = f(&s) + offset;
        (s, v)
    }))
    .expect("independent sets are distinct")
}

/// Random explicit set matroid plus a tabulated submodular function on it.
pub fn random_matroid_instance(seed: u64, max_ground: usize, max_rank: usize) -> (Instance, SetMatroid) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = rng.gen_range(2..=max_ground);
    let m = random_set_matroid(&mut rng, ground, max_rank);
    let table = random_submodular_table(&mut rng, &m);
    (Instance::new(MatroidSpec::FromSetMatroid(m.clone()), string_extension(table)), m)
}
