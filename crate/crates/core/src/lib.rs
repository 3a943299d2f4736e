//! Static d-dimensional orthogonal range search with layered range trees.
//!
//! A [`LayeredRangeTree`] answers closed-box queries over a fixed
//! [`PointSet`]. Each of the first `d - 2` dimensions is a balanced search
//! tree stored as an implicit array whose nodes carry associated structures
//! over the remaining dimensions; the last two dimensions use fractional
//! cascading ([`cascade`]), so a query costs one binary search at the bottom
//! level instead of one per canonical node. Duplicate coordinates are handled
//! by ordering points with a [`CompositeKey`].
//!
//! ```
//! use lrtree::{LayeredRangeTree, PointSet, QueryBox, QueryStats};
//!
//! let points = PointSet::new(2, vec![vec![1.0, 1.0], vec![2.0, 5.0], vec![3.0, 2.0]])?;
//! let tree = LayeredRangeTree::build(points)?;
//! let query = QueryBox::new(vec![1.0, 0.0], vec![3.0, 2.0])?;
//! let mut stats = QueryStats::default();
//! let hits: Vec<usize> = tree.query(&query, &mut stats)?.iter().map(|p| p.id).collect();
//! assert_eq!(hits, vec![0, 2]);
//! assert_eq!(stats.binary_searches, 1);
//! # Ok::<(), lrtree::Error>(())
//! ```

pub mod cascade;
pub mod error;
pub mod io;
pub mod oracle;
pub mod point;
pub mod tree;

pub use cascade::{build_cascade, lower_bound, CascadeNode, CascadeStructure};
pub use error::{Error, Result};
pub use oracle::{brute_force_query, gen_points, splitmix64_next, Distribution, GeneratorConfig, SplitMix64};
pub use point::{box_contains, compare_composite, CompositeKey, Point, PointSet, QueryBox, Tiebreak};
pub use tree::{merge_sorted, BuildStats, ImplicitTree, LayeredRangeTree, QueryStats, Structure};
