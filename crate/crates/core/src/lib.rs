//! Exact combinatorics around Graham's tree reconstruction problem.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`graph`]: simple graphs, the line-graph operator, iterated sizes,
//!   shadow tracking and closed forms for regular graphs and stars.
//! * [`treegen`]: free-tree enumeration, canonical codes and connected
//!   vertex subsets of trees.
//! * [`shadowcount`]: the weight of a tree and the shadow decomposition of
//!   `|L^k(T)|` into weights of subtrees.
//! * [`caterpillar`]: spiders `S(d;a,b)`, caterpillars and the per-joint
//!   polynomials `f_k`.
//! * [`pte`]: Thue-Morse splits, power sums and the `W(k;r,s,t)` chains.
//! * [`polypart`]: exact rational polynomials, integer partitions and sums
//!   of polynomial values over parts.
//! * [`graham`]: Graham sequences, class census and same-size caterpillar
//!   families that split at a chosen level.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod caterpillar;
pub mod error;
pub mod graham;
pub mod graph;
pub mod polypart;
pub mod pte;
pub mod shadowcount;
pub mod treegen;

pub use error::{Error, Result};
pub use graph::{Graph, GrahamSequence, Limits, ShadowedGraph};
pub use polypart::{Partition, Polynomial};
pub use pte::{Composition, PtePair};
pub use shadowcount::WtTable;
pub use treegen::TreeCode;
