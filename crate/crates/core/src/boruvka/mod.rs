//! Contraction-based weighted oracle.
//!
//! Each level flips a coin per component; Heads components whose lightest
//! outgoing edge reaches a Tails component contract into it. Oversized
//! components are broken along their contracted forest.

mod breaking;
mod config;
mod contract;
mod global;
mod local;
mod mst;

pub use breaking::break_component;
pub use config::{BoruvkaConfig, DEFAULT_C2, DEFAULT_C_ITER};
pub use contract::{contract, Quotient, QuotientEdge};
pub use global::{boruvka_global, BoruvkaGlobal};
pub use local::{boruvka_local_component, boruvka_local_part, mwsg_edge_query, BoruvkaOracle, SharedCache};
pub use mst::exact_mst;

use crate::keyed::{keyed_coin, Purpose};
use crate::graph::Vertex;

/// Coin of the component with largest member `max` at `level`.
pub(crate) fn coin_is_heads(seed: u64, level: usize, max: Vertex) -> bool {
    keyed_coin(seed, Purpose::Coin, level as u64, max as u64)
}
