//! Points, query boxes and the composite ordering every tree level sorts by.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A point of the indexed set: `d` finite coordinates plus its id.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
    pub id: usize,
}

impl Point {
    pub fn new(coords: Vec<f64>, id: usize) -> Self {
        Point { coords, id }
    }

    pub fn dims(&self) -> usize {
        self.coords.len()
    }
}

fn cmp_coord(a: f64, b: f64) -> Ordering {
    // Coordinates are finite (or the +inf sentinel), never NaN.
    a.partial_cmp(&b).expect("NaN coordinate")
}

fn cmp_tuple(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| cmp_coord(x, y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Orders two points by coordinate `dim`, breaking ties by the full
/// coordinate tuple and then by id.
///
/// Only a point compared with itself (same id) is `Equal`.
pub fn compare_composite(a: &Point, b: &Point, dim: usize) -> Ordering {
    cmp_coord(a.coords[dim], b.coords[dim])
        .then_with(|| cmp_tuple(&a.coords, &b.coords))
        .then_with(|| a.id.cmp(&b.id))
}

/// Secondary component of a [`CompositeKey`].
///
/// `Below` and `Above` never belong to a stored point: they turn a raw
/// coordinate into the smallest or largest key carrying that value, which is
/// how closed query bounds and phantom padding are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tiebreak {
    Below,
    /// Rank of the owning point under (coordinate tuple, id) order.
    Rank(u32),
    Above,
}

/// A coordinate value extended with a tiebreak so that all points of a set
/// are strictly ordered in every dimension.
#[derive(Debug, Clone, Copy)]
pub struct CompositeKey {
    pub value: f64,
    pub tie: Tiebreak,
}

impl CompositeKey {
    /// Key of a phantom padding leaf; greater than every finite key.
    pub const PHANTOM: CompositeKey = CompositeKey {
        value: f64::INFINITY,
        tie: Tiebreak::Above,
    };

    /// Smallest key with coordinate `value`; the lower bound of `[value, ..]`.
    pub fn lower(value: f64) -> Self {
        CompositeKey {
            value,
            tie: Tiebreak::Below,
        }
    }

    /// Largest key with coordinate `value`; the upper bound of `[.., value]`.
    pub fn upper(value: f64) -> Self {
        CompositeKey {
            value,
            tie: Tiebreak::Above,
        }
    }

    pub fn is_phantom(&self) -> bool {
        self.value == f64::INFINITY && self.tie == Tiebreak::Above
    }
}

impl Ord for CompositeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_coord(self.value, other.value).then(self.tie.cmp(&other.tie))
    }
}

impl PartialOrd for CompositeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for CompositeKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for CompositeKey {}

/// A closed axis-aligned box `[lo_0, hi_0] x ... x [lo_{d-1}, hi_{d-1}]`.
///
/// `lo[j] > hi[j]` is allowed and makes the box empty.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl QueryBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::ZeroDimension);
        }
        check_finite(&lo)?;
        check_finite(&hi)?;
        Ok(QueryBox { lo, hi })
    }

    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    /// True if some interval has `lo > hi`.
    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    /// Tests dimensions `dims` of `coords` only.
    pub(crate) fn contains_in(&self, coords: &[f64], dims: std::ops::Range<usize>) -> bool {
        dims.into_iter()
            .all(|j| self.lo[j] <= coords[j] && coords[j] <= self.hi[j])
    }
}

/// True iff `lo_j <= p_j <= hi_j` in every dimension.
pub fn box_contains(qbox: &QueryBox, p: &Point) -> bool {
    debug_assert_eq!(qbox.dims(), p.dims());
    qbox.contains_in(&p.coords, 0..qbox.dims())
}

fn check_finite(coords: &[f64]) -> Result<()> {
    match coords.iter().position(|c| !c.is_finite()) {
        Some(dim) => Err(Error::NonFinite {
            dim,
            value: coords[dim],
        }),
        None => Ok(()),
    }
}

/// Largest supported point count; `u32::MAX` marks phantom slots.
pub const MAX_POINTS: usize = u32::MAX as usize - 1;

/// An immutable set of `d`-dimensional points with ids `0..n`.
#[derive(Debug, Clone)]
pub struct PointSet {
    dims: usize,
    points: Vec<Point>,
    tie_rank: Vec<u32>,
}

impl PointSet {
    /// Validates `rows` and assigns ids in iteration order.
    pub fn new<I>(dims: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<f64>>,
    {
        let points = rows
            .into_iter()
            .enumerate()
            .map(|(id, coords)| Point { coords, id })
            .collect();
        Self::from_points(dims, points)
    }

    /// Validates `points` and renumbers their ids `0..n` in sequence order.
    pub fn from_points(dims: usize, mut points: Vec<Point>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::ZeroDimension);
        }
        if points.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(points.len()));
        }
        for (id, p) in points.iter_mut().enumerate() {
            if p.coords.len() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    found: p.coords.len(),
                });
            }
            check_finite(&p.coords)?;
            p.id = id;
        }

        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            let (pa, pb) = (&points[a as usize], &points[b as usize]);
            cmp_tuple(&pa.coords, &pb.coords).then(pa.id.cmp(&pb.id))
        });
        let mut tie_rank = vec![0; points.len()];
        for (rank, &id) in order.iter().enumerate() {
            tie_rank[id as usize] = rank as u32;
        }

        Ok(PointSet {
            dims,
            points,
            tie_rank,
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, id: u32) -> &Point {
        &self.points[id as usize]
    }

    #[inline]
    pub fn coord(&self, id: u32, dim: usize) -> f64 {
        self.points[id as usize].coords[dim]
    }

    /// Composite key of point `id` in dimension `dim`.
    #[inline]
    pub fn key(&self, id: u32, dim: usize) -> CompositeKey {
        CompositeKey {
            value: self.coord(id, dim),
            tie: Tiebreak::Rank(self.tie_rank[id as usize]),
        }
    }

    /// All ids sorted by composite key in `dim`.
    pub fn sorted_ids(&self, dim: usize) -> Vec<u32> {
        let mut ids: Vec<u32> = (0..self.len() as u32).collect();
        ids.sort_unstable_by_key(|&id| self.key(id, dim));
        ids
    }

    /// Smallest box containing every point; `None` for an empty set.
    pub fn bounding_box(&self) -> Option<QueryBox> {
        let first = self.points.first()?;
        let mut lo = first.coords.clone();
        let mut hi = first.coords.clone();
        for p in &self.points[1..] {
            for (j, &c) in p.coords.iter().enumerate() {
                lo[j] = lo[j].min(c);
                hi[j] = hi[j].max(c);
            }
        }
        Some(QueryBox { lo, hi })
    }
}
