//! Build/query measurements with operation counters.

use std::time::Instant;

use lrtree::{gen_points, Distribution, GeneratorConfig, LayeredRangeTree, QueryBox, QueryStats, SplitMix64};

pub const HEADER: &str =
    "n,d,build_ms,queries,avg_query_us,avg_nodes_visited,avg_binary_searches,avg_bridge_follows,total_k";

/// Default expected fraction of points matched per query.
pub const DEFAULT_SELECTIVITY: f64 = 0.001;

// Query boxes come from their own stream so changing `n` leaves them fixed.
const BOX_STREAM: u64 = 0xB0C5_B0C5_B0C5_B0C5;

/// One row of the benchmark table. Counter averages are per query.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub d: usize,
    pub build_ms: f64,
    pub queries: usize,
    pub avg_query_us: f64,
    pub avg_nodes_visited: f64,
    pub avg_binary_searches: f64,
    pub avg_bridge_follows: f64,
    pub total_k: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.3},{},{:.3},{},{},{},{}",
            self.n,
            self.d,
            self.build_ms,
            self.queries,
            self.avg_query_us,
            self.avg_nodes_visited,
            self.avg_binary_searches,
            self.avg_bridge_follows,
            self.total_k
        )
    }
}

/// `count` boxes in the unit cube, each with side `selectivity^(1/dims)`
/// and placed uniformly so that it lies fully inside the cube.
pub fn selectivity_boxes(rng: &mut SplitMix64, dims: usize, count: usize, selectivity: f64) -> Vec<QueryBox> {
    let side = selectivity.powf(1.0 / dims as f64);
    (0..count)
        .map(|_| {
            let lo: Vec<f64> = (0..dims).map(|_| rng.next_unit() * (1.0 - side)).collect();
            let hi = lo.iter().map(|l| l + side).collect();
            QueryBox::new(lo, hi).expect("finite box")
        })
        .collect()
}

/// Generates `n` uniform points, builds the tree and runs `queries` boxes of
/// the given selectivity through it.
pub fn run_one(dims: usize, n: usize, queries: usize, seed: u64, selectivity: f64) -> lrtree::Result<BenchRecord> {
    let points = gen_points(&GeneratorConfig {
        seed,
        n,
        dims,
        distribution: Distribution::Uniform,
    })?;
    let boxes = selectivity_boxes(&mut SplitMix64::new(seed ^ BOX_STREAM), dims, queries, selectivity);

    let start = Instant::now();
    let tree = LayeredRangeTree::build(points)?;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut stats = QueryStats::default();
    let start = Instant::now();
    for b in &boxes {
        let hits = tree.query_ids(b, &mut stats)?;
        std::hint::black_box(hits);
    }
    let query_us = start.elapsed().as_secs_f64() * 1e6;

    let q = queries as f64;
    Ok(BenchRecord {
        n,
        d: dims,
        build_ms,
        queries,
        avg_query_us: query_us / q,
        avg_nodes_visited: stats.nodes_visited as f64 / q,
        avg_binary_searches: stats.binary_searches as f64 / q,
        avg_bridge_follows: stats.bridge_follows as f64 / q,
        total_k: stats.reported,
    })
}
