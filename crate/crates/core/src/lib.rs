//! Minimal balanced collections, core tests for TU games, and uniform/regular
//! hypergraph duality, all in exact rational arithmetic.
//!
//! ```
//! use balanced_forge::{enumerate_mbc, games::{core_lp, Game}, arith::integer};
//!
//! assert_eq!(enumerate_mbc(4).unwrap().len(), 42);
//!
//! // Any two players can earn 1, all three only 1: the core is empty.
//! let g = Game::from_fn(3, |s| integer((s.len() >= 2) as i64)).unwrap();
//! assert!(!core_lp(&g).unwrap().is_nonempty());
//! ```

pub mod arith;
pub mod balanced;
pub mod catalog;
pub mod coalition;
pub mod counting;
pub mod decomposition;
pub mod enumeration;
pub mod error;
pub mod games;
pub mod hypergraph;
mod linalg;
pub mod rng;
pub mod simplex;
pub mod verify;

pub use arith::Rational;
pub use balanced::{
    find_balancing_weights, is_balanced, is_minimal_balanced, is_minimal_balanced_oracle, BalancedCollection,
};
pub use catalog::{MbcCatalog, Method};
pub use coalition::{coalitions_of, Coalition};
pub use counting::{count_cumulative, count_graphs, count_spanning, count_total, egf_table, EgfTable};
pub use decomposition::{decompose, decompose_all, UniformPartition};
pub use enumeration::{
    enumerate_mbc, enumerate_mbc_oracle, enumerate_minimally_uniform, enumerate_uniform, mbc_via_duality,
};
pub use error::{Error, Result};
pub use games::{core_lp, core_mbc, random_game, CoreVerdict, Game};
pub use hypergraph::Hypergraph;
