//! First-class strategies: decision functions with private memory, playable
//! by the match runner and cloneable for branching verification.

use crate::bitset::ObjSet;
use crate::coloring::{coloring_alice_wins, nonempty_classes, ColoringState};
use crate::error::{Error, Result};
use crate::game::{BudgetMeter, Player};
use crate::marking::{mark_violates, marking_alice_wins, MarkingState};
use rand::prelude::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// A marking-game strategy. `choose` must return an unmarked object index;
/// anything else forfeits the match.
pub trait MarkingStrategy: Send {
    fn name(&self) -> String;

    fn choose(&mut self, state: &MarkingState<'_>) -> Result<u32>;

    /// Clone with private memory, for exploring divergent continuations.
    fn clone_box(&self) -> Box<dyn MarkingStrategy>;

    /// Objects this strategy has activated, when it keeps such a notion.
    fn active_objects(&self) -> Option<ObjSet> {
        None
    }
}

/// A coloring-game strategy; returns (object, color).
pub trait ColoringStrategy: Send {
    fn name(&self) -> String;

    fn choose(&mut self, state: &ColoringState<'_>) -> Result<(u32, u8)>;

    fn clone_box(&self) -> Box<dyn ColoringStrategy>;
}

/// Uniformly random legal marks from a seeded generator.
#[derive(Clone)]
pub struct RandomMarking {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomMarking {
    pub fn new(seed: u64) -> Self {
        RandomMarking {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl MarkingStrategy for RandomMarking {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn choose(&mut self, state: &MarkingState<'_>) -> Result<u32> {
        let options: Vec<u32> = (0..state.conflict().order())
            .filter(|&i| !state.is_marked(i))
            .collect();
        options.choose(&mut self.rng).copied().ok_or_else(|| {
            Error::StrategyPrecondition("no unmarked object left to mark".into())
        })
    }

    fn clone_box(&self) -> Box<dyn MarkingStrategy> {
        Box::new(self.clone())
    }
}

/// Uniformly random legal (object, color) moves from a seeded generator.
#[derive(Clone)]
pub struct RandomColoring {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomColoring {
    pub fn new(seed: u64) -> Self {
        RandomColoring {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl ColoringStrategy for RandomColoring {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn choose(&mut self, state: &ColoringState<'_>) -> Result<(u32, u8)> {
        let moves = state.legal_moves();
        moves.choose(&mut self.rng).copied().ok_or_else(|| {
            Error::StrategyPrecondition("no legal coloring move left".into())
        })
    }

    fn clone_box(&self) -> Box<dyn ColoringStrategy> {
        Box::new(self.clone())
    }
}

/// Exact-solver-backed marking play: takes a winning move whenever the
/// position is won for the mover, and otherwise resists by avoiding moves
/// that concede on the spot. The memo persists across turns of one match.
#[derive(Clone)]
pub struct OptimalMarking {
    k: u32,
    memo: HashMap<u64, bool>,
}

impl OptimalMarking {
    pub fn new(k: u32) -> Self {
        OptimalMarking {
            k,
            memo: HashMap::new(),
        }
    }
}

impl MarkingStrategy for OptimalMarking {
    fn name(&self) -> String {
        format!("optimal(k={})", self.k)
    }

    fn choose(&mut self, state: &MarkingState<'_>) -> Result<u32> {
        let c = state.conflict();
        let marked = state.marked();
        let mover = state.to_move();
        let meter = BudgetMeter::unlimited();
        let mut fallback_clean = None;
        let mut fallback_any = None;
        for i in 0..c.order() {
            if marked.contains(i) {
                continue;
            }
            fallback_any.get_or_insert(i);
            let violates = mark_violates(c, self.k, marked, i);
            if !violates {
                fallback_clean.get_or_insert(i);
            }
            let alice_wins_child = if violates {
                false
            } else {
                marking_alice_wins(c, self.k, marked.with(i), &mut self.memo, &meter)
                    .expect("unlimited budget")
            };
            let child_winner = if alice_wins_child {
                Player::Alice
            } else {
                Player::Bob
            };
            if child_winner == mover {
                return Ok(i);
            }
        }
        fallback_clean
            .or(fallback_any)
            .ok_or_else(|| Error::StrategyPrecondition("no unmarked object left".into()))
    }

    fn clone_box(&self) -> Box<dyn MarkingStrategy> {
        Box::new(self.clone())
    }
}

/// Exact-solver-backed coloring play, the coloring analogue of
/// [`OptimalMarking`].
#[derive(Clone)]
pub struct OptimalColoring {
    k: u32,
    memo: HashMap<Vec<u64>, bool>,
}

impl OptimalColoring {
    pub fn new(k: u32) -> Self {
        OptimalColoring {
            k,
            memo: HashMap::new(),
        }
    }
}

impl ColoringStrategy for OptimalColoring {
    fn name(&self) -> String {
        format!("optimal(k={})", self.k)
    }

    fn choose(&mut self, state: &ColoringState<'_>) -> Result<(u32, u8)> {
        if state.k() != self.k {
            return Err(Error::StrategyPrecondition(format!(
                "strategy solved for {} colors but the game has {}",
                self.k,
                state.k()
            )));
        }
        let mover = state.to_move();
        let meter = BudgetMeter::unlimited();
        let moves = state.legal_moves();
        for &(i, col) in &moves {
            let child = state.apply_color(i, col).expect("legal move applies");
            let mut classes = nonempty_classes(&child);
            let alice_wins = coloring_alice_wins(
                state.conflict(),
                self.k,
                &mut classes,
                &mut self.memo,
                &meter,
            )
            .expect("unlimited budget");
            let child_winner = if alice_wins { Player::Alice } else { Player::Bob };
            if child_winner == mover {
                return Ok((i, col));
            }
        }
        // Lost position: prefer a move that keeps every object colorable.
        for &(i, col) in &moves {
            let child = state.apply_color(i, col).expect("legal move applies");
            if child.dead_object().is_none() {
                return Ok((i, col));
            }
        }
        moves.first().copied().ok_or_else(|| {
            Error::StrategyPrecondition("no legal coloring move left".into())
        })
    }

    fn clone_box(&self) -> Box<dyn ColoringStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::{total_graph, ConflictGraph};

    #[test]
    fn random_strategies_are_seed_deterministic() {
        let g = families::complete(3).unwrap();
        let t = total_graph(&g);
        let s = MarkingState::new(&t);
        let mut a = RandomMarking::new(7);
        let mut b = RandomMarking::new(7);
        assert_eq!(a.choose(&s).unwrap(), b.choose(&s).unwrap());
    }

    #[test]
    fn optimal_marking_wins_won_positions() {
        // Marking game on K3 with k = 3 is an Alice win; the optimal Alice
        // must hold it against any Bob.
        let k3 = ConflictGraph::identity(&families::complete(3).unwrap());
        let mut alice = OptimalMarking::new(3);
        let mut bob = RandomMarking::new(1);
        let mut state = MarkingState::new(&k3);
        while !state.is_full() {
            let mv = match state.to_move() {
                Player::Alice => alice.choose(&state).unwrap(),
                Player::Bob => bob.choose(&state).unwrap(),
            };
            state = state.apply_mark(mv).unwrap();
            assert!(state.threshold_violation(3).is_none());
        }
    }

    #[test]
    fn optimal_coloring_wins_won_positions() {
        // 3 colors on T(K3 + isolated vertex) is an Alice win.
        let g = families::generate("union:complete:3,complete:1", 64).unwrap();
        let t = total_graph(&g);
        let mut alice = OptimalColoring::new(3);
        let mut bob = RandomColoring::new(3);
        let mut state = ColoringState::new(&t, 3);
        loop {
            if state.is_complete() {
                break; // Alice completed the coloring
            }
            assert!(state.dead_object().is_none(), "optimal Alice let an object die");
            let (i, col) = match state.to_move() {
                Player::Alice => alice.choose(&state).unwrap(),
                Player::Bob => bob.choose(&state).unwrap(),
            };
            state = state.apply_color(i, col).unwrap();
        }
    }
}
