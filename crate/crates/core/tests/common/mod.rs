#![allow(dead_code)]

use lrtree::{Distribution, GeneratorConfig, PointSet, QueryBox, SplitMix64};

pub fn uniform(n: usize, dims: usize, seed: u64) -> PointSet {
    lrtree::gen_points(&GeneratorConfig {
        seed,
        n,
        dims,
        distribution: Distribution::Uniform,
    })
    .unwrap()
}

pub fn grid(n: usize, dims: usize, side: u64, seed: u64) -> PointSet {
    lrtree::gen_points(&GeneratorConfig {
        seed,
        n,
        dims,
        distribution: Distribution::Grid(side),
    })
    .unwrap()
}

/// Box whose bounds in each dimension are two draws from `[lo, hi)`, sorted.
pub fn random_box(rng: &mut SplitMix64, dims: usize, lo: f64, hi: f64) -> QueryBox {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for _ in 0..dims {
        let x = lo + rng.next_unit() * (hi - lo);
        let y = lo + rng.next_unit() * (hi - lo);
        a.push(x.min(y));
        b.push(x.max(y));
    }
    QueryBox::new(a, b).unwrap()
}

/// Integer-bounded box for grid workloads, hitting boundaries exactly.
pub fn grid_box(rng: &mut SplitMix64, dims: usize, side: u64) -> QueryBox {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for _ in 0..dims {
        let x = (rng.next_u64() % side) as f64;
        let y = (rng.next_u64() % side) as f64;
        a.push(x.min(y));
        b.push(x.max(y));
    }
    QueryBox::new(a, b).unwrap()
}

/// Number of node depths of a full tree over `m` leaves.
pub fn depths(m: usize) -> u64 {
    m.next_power_of_two().ilog2() as u64 + 1
}

/// Real leaves under each slot of a padded tree over `m` leaves.
pub fn subtree_sizes(m: usize) -> Vec<usize> {
    let leaves = m.next_power_of_two();
    (0..2 * leaves - 1)
        .map(|slot| {
            let depth = (slot + 1).ilog2();
            let width = leaves >> depth;
            let start = (slot + 1 - (1 << depth)) * width;
            (start + width).min(m).saturating_sub(start)
        })
        .collect()
}

/// Expected entries per tree level for a `dims`-dimensional tree over `m`
/// points, derived from subtree sizes alone: a tree over `m` points stores
/// `m` entries per depth, and every node with at least two points carries a
/// structure one level down. A one-dimensional tree is just its sorted array.
pub fn expected_levels(m: usize, dims: usize) -> Vec<u64> {
    if dims == 1 {
        return vec![m as u64];
    }
    let mut out = vec![0; dims - 1];
    fill_levels(m, 0, &mut out);
    out
}

fn fill_levels(m: usize, level: usize, out: &mut [u64]) {
    out[level] += m as u64 * depths(m);
    if level + 1 < out.len() {
        for size in subtree_sizes(m) {
            if size >= 2 {
                fill_levels(size, level + 1, out);
            }
        }
    }
}
