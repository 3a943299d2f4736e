//! Brute-force reference queries and a reproducible workload generator.

use crate::error::{Error, Result};
use crate::point::{box_contains, Point, PointSet, QueryBox};

/// Reports the points of `points` inside `qbox` by scanning all of them.
pub fn brute_force_query<'a>(points: &'a PointSet, qbox: &QueryBox) -> Result<Vec<&'a Point>> {
    if qbox.dims() != points.dims() {
        return Err(Error::DimensionMismatch {
            expected: points.dims(),
            found: qbox.dims(),
        });
    }
    // Points are stored in id order, so the filter output is id-sorted.
    Ok(points.points().iter().filter(|p| box_contains(qbox, p)).collect())
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of the splitmix64 generator: returns the advanced state and the
/// output drawn from it.
pub fn splitmix64_next(state: u64) -> (u64, u64) {
    let state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (state, z ^ (z >> 31))
}

/// Caller-owned splitmix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        let (state, out) = splitmix64_next(self.state);
        self.state = state;
        out
    }

    /// `next_u64() / 2^64`, in `[0, 1]`.
    ///
    /// Outputs within 2^10 of 2^64 round to exactly 1.0.
    pub fn next_unit(&mut self) -> f64 {
        self.next_u64() as f64 / TWO_POW_64
    }
}

const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

/// How coordinates are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    /// `output / 2^64`.
    Uniform,
    /// `output mod side`: integers in `0..side`, heavy duplication for small
    /// sides.
    Grid(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    pub dims: usize,
    pub distribution: Distribution,
}

/// Draws `cfg.n` points coordinate by coordinate from one splitmix64 stream
/// seeded with `cfg.seed`. Ids follow generation order.
pub fn gen_points(cfg: &GeneratorConfig) -> Result<PointSet> {
    if cfg.n == 0 {
        return Err(Error::EmptyInput);
    }
    if cfg.dims == 0 {
        return Err(Error::ZeroDimension);
    }
    if cfg.distribution == Distribution::Grid(0) {
        return Err(Error::InvalidConfig("grid side must be at least 1"));
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let mut draw = move || match cfg.distribution {
        Distribution::Uniform => rng.next_unit(),
        Distribution::Grid(side) => (rng.next_u64() % side) as f64,
    };
    let rows: Vec<Vec<f64>> = (0..cfg.n)
        .map(|_| (0..cfg.dims).map(|_| draw()).collect())
        .collect();
    PointSet::new(cfg.dims, rows)
}
