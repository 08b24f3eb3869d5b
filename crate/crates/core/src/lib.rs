//! Exact solvers, executable strategies, and a batch lab for coloring and
//! marking games played on the vertices and edges of small graphs.
//!
//! Every game here is a vertex game on a [`graph::ConflictGraph`] derived
//! from a source graph: the graph itself, its line graph, or its total
//! graph. The engines compute optimal-play winners and the associated game
//! parameters (game chromatic number, game coloring number) exactly; the
//! strategy layer turns winning arguments into replayable, adversarially
//! verifiable move generators; the lab sweeps graph corpora, checks the
//! known bounds, and reports on the gap between the total and edge game
//! coloring numbers.
//!
//! Everything is sized for desk-scale experiments: at most 64 game objects
//! (vertices plus edges) per graph, so positions fit in one machine word.

pub mod activation;
pub mod bitset;
pub mod canon;
pub mod coloring;
pub mod error;
pub mod families;
pub mod game;
pub mod graph;
pub mod graph6;
pub mod lab;
pub mod lift;
pub mod marking;
pub mod orientation;
pub mod play;
pub mod scripted;
pub mod strategy;

pub use bitset::ObjSet;
pub use error::{Error, Result};
pub use game::{BudgetMeter, Player, Solved, Winner};
pub use graph::{
    line_graph, max_degree, total_graph, ConflictGraph, ConflictMode, ObjectRef, SimpleGraph,
    DEFAULT_OBJECT_CAP, HARD_OBJECT_CAP,
};
pub use graph6::{parse_graph6, parse_graph6_with_cap, to_graph6};

/// Reads the object cap from `GGC_OBJECT_CAP`, defaulting to
/// [`DEFAULT_OBJECT_CAP`]. Values outside 1..=64 are rejected: positions are
/// one-word bitsets, so caps beyond 64 would need a wider representation.
pub fn object_cap_from_env() -> Result<u32> {
    match std::env::var("GGC_OBJECT_CAP") {
        Err(_) => Ok(DEFAULT_OBJECT_CAP),
        Ok(raw) => {
            let cap: u32 = raw.parse().map_err(|_| {
                Error::InvalidGraph(format!("GGC_OBJECT_CAP must be an integer, got `{raw}`"))
            })?;
            if (1..=HARD_OBJECT_CAP).contains(&cap) {
                Ok(cap)
            } else {
                Err(Error::InvalidGraph(format!(
                    "GGC_OBJECT_CAP must be in 1..={HARD_OBJECT_CAP} (one-word object sets), got {cap}"
                )))
            }
        }
    }
}
