//! Lifting a winning Bob from the edge marking game to the total marking
//! game.
//!
//! The total marking game on G and the marking game on "line graph of G
//! plus n isolated vertices" share an object set under the obvious label
//! map: edge objects are line-graph vertices, vertex objects are the
//! isolated vertices. Bob mirrors every move into the inner game and plays
//! back whatever his inner strategy picks; any inner threshold breach on a
//! line-graph vertex is, object for object, a breach on the matching edge
//! of G whose marked neighborhood there is only larger.

use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph::{ConflictGraph, ConflictMode, SimpleGraph};
use crate::marking::{solve_marking, MarkingState};
use crate::strategy::MarkingStrategy;

/// The inner arena: one vertex per object of G (same flat order as the
/// total graph), with only the edge-edge adjacencies kept.
pub fn line_with_isolated_vertices(g: &SimpleGraph) -> Result<ConflictGraph> {
    let n = g.n();
    let mut edges = Vec::new();
    for j in 0..g.m() as usize {
        for i in 0..j {
            let (a, b) = g.edges()[i];
            let (c, d) = g.edges()[j];
            if a == c || a == d || b == c || b == d {
                edges.push((n + i as u32, n + j as u32));
            }
        }
    }
    let inner = SimpleGraph::new(g.objects(), edges)?;
    Ok(ConflictGraph::identity(&inner))
}

/// Bob for the total marking game on `g`, driven by a winning inner Bob for
/// the marking game on the line graph plus isolated vertices at the same
/// parameter.
pub struct LiftedBob {
    graph: SimpleGraph,
    k: u32,
    inner_conflict: ConflictGraph,
    inner: Box<dyn MarkingStrategy>,
}

/// Builds the lifted strategy, first checking that the inner game at
/// parameter `k` really is a Bob win; a lift of a losing strategy would
/// prove nothing.
pub fn lift_bob(
    g: &SimpleGraph,
    k: u32,
    inner: Box<dyn MarkingStrategy>,
) -> Result<LiftedBob> {
    let inner_conflict = line_with_isolated_vertices(g)?;
    if solve_marking(&inner_conflict, k) != Player::Bob {
        return Err(Error::StrategyPrecondition(format!(
            "Alice wins the inner marking game at k = {k}; nothing to lift"
        )));
    }
    Ok(LiftedBob {
        graph: g.clone(),
        k,
        inner_conflict,
        inner,
    })
}

impl MarkingStrategy for LiftedBob {
    fn name(&self) -> String {
        format!("lifted({}, k={})", self.inner.name(), self.k)
    }

    fn choose(&mut self, state: &MarkingState<'_>) -> Result<u32> {
        let c = state.conflict();
        if c.mode() != ConflictMode::Total
            || c.source().n() != self.graph.n()
            || c.source().edges() != self.graph.edges()
        {
            return Err(Error::StrategyPrecondition(
                "lifted strategy plays the total marking game on its own graph".into(),
            ));
        }
        // Replay the outer history into the inner game; flat labels agree.
        let mut inner_state = MarkingState::new(&self.inner_conflict);
        for &mv in state.history() {
            inner_state = inner_state.apply_mark(mv)?;
        }
        self.inner.choose(&inner_state)
    }

    fn clone_box(&self) -> Box<dyn MarkingStrategy> {
        Box::new(LiftedBob {
            graph: self.graph.clone(),
            k: self.k,
            inner_conflict: self.inner_conflict.clone(),
            inner: self.inner.clone_box(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::marking::gcol;
    use crate::strategy::OptimalMarking;

    #[test]
    fn inner_arena_shape() {
        let k3 = families::complete(3).unwrap();
        let inner = line_with_isolated_vertices(&k3).unwrap();
        assert_eq!(inner.order(), 6);
        // vertex objects are isolated
        for v in 0..3 {
            assert_eq!(inner.degree(v), 0);
        }
        // edge objects form L(K3) = K3
        for e in 3..6 {
            assert_eq!(inner.degree(e), 2);
        }
    }

    #[test]
    fn lift_requires_a_bob_win() {
        let k3 = families::complete(3).unwrap();
        // edge game coloring number of K3 is 3, so k = 3 is an Alice win
        assert_eq!(gcol(&k3, ConflictMode::Line).unwrap(), 3);
        assert!(lift_bob(&k3, 3, Box::new(OptimalMarking::new(3))).is_err());
        assert!(lift_bob(&k3, 2, Box::new(OptimalMarking::new(2))).is_ok());
    }
}
