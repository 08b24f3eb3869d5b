//! The marking game on a conflict graph, and the game coloring number.
//!
//! Players alternately mark objects, Alice first, no passing. Alice wins a
//! play iff at every moment every unmarked object has at most k-1 marked
//! neighbors; as soon as some unmarked object collects k marked neighbors
//! Bob has won.

use crate::bitset::ObjSet;
use crate::error::{Error, Result};
use crate::game::{BudgetMeter, Player, Solved, Winner};
use crate::graph::{ConflictGraph, ConflictMode, ObjectRef, SimpleGraph};
use std::collections::HashMap;

/// A marking-game position: the marked set plus the order it was built in.
#[derive(Clone, Debug)]
pub struct MarkingState<'a> {
    conflict: &'a ConflictGraph,
    marked: ObjSet,
    history: Vec<u32>,
}

impl<'a> MarkingState<'a> {
    pub fn new(conflict: &'a ConflictGraph) -> MarkingState<'a> {
        MarkingState {
            conflict,
            marked: ObjSet::EMPTY,
            history: Vec::new(),
        }
    }

    pub fn conflict(&self) -> &'a ConflictGraph {
        self.conflict
    }

    pub fn marked(&self) -> ObjSet {
        self.marked
    }

    pub fn history(&self) -> &[u32] {
        &self.history
    }

    pub fn is_marked(&self, i: u32) -> bool {
        self.marked.contains(i)
    }

    pub fn is_full(&self) -> bool {
        self.marked.len() == self.conflict.order()
    }

    /// Alice moves exactly at even mark counts; there is no passing.
    pub fn to_move(&self) -> Player {
        if self.marked.len() % 2 == 0 {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    /// Marks object `i`, returning the successor position.
    pub fn apply_mark(&self, i: u32) -> Result<MarkingState<'a>> {
        if i >= self.conflict.order() {
            return Err(Error::NoSuchObject(i));
        }
        if self.marked.contains(i) {
            return Err(Error::AlreadyMarked {
                object: self.conflict.label(i),
            });
        }
        let mut next = self.clone();
        next.marked.insert(i);
        next.history.push(i);
        Ok(next)
    }

    /// Marks the object carrying the given source-graph label.
    pub fn apply_mark_ref(&self, obj: ObjectRef) -> Result<MarkingState<'a>> {
        let i = self
            .conflict
            .index_of_label(obj)
            .ok_or(Error::NoSuchObject(u32::MAX))?;
        self.apply_mark(i)
    }

    pub fn marked_neighbor_count(&self, i: u32) -> u32 {
        self.conflict.neighbor_mask(i).intersect(self.marked).len()
    }

    /// Largest marked-neighbor count over unmarked objects (0 when full).
    pub fn max_marked_neighbors(&self) -> u32 {
        (0..self.conflict.order())
            .filter(|&i| !self.marked.contains(i))
            .map(|i| self.marked_neighbor_count(i))
            .max()
            .unwrap_or(0)
    }

    /// Some unmarked object with >= k marked neighbors (lowest index), if any.
    pub fn threshold_violation(&self, k: u32) -> Option<ObjectRef> {
        debug_assert!(k >= 1);
        (0..self.conflict.order())
            .find(|&i| !self.marked.contains(i) && self.marked_neighbor_count(i) >= k)
            .map(|i| self.conflict.label(i))
    }
}

/// After marking `just`, fresh violations can only appear among its unmarked
/// neighbors, since only their counts changed.
#[inline]
fn has_new_violation(c: &ConflictGraph, marked: ObjSet, just: u32, k: u32) -> bool {
    c.neighbor_mask(just)
        .minus(marked)
        .iter()
        .any(|y| c.neighbor_mask(y).intersect(marked).len() >= k)
}

/// True iff Alice wins from `marked` (a violation-free position) under
/// optimal play. The mover is determined by parity, so the marked set alone
/// keys the memo table; the table is only valid for one (conflict, k) pair.
/// `None` means the budget ran out.
pub(crate) fn marking_alice_wins(
    c: &ConflictGraph,
    k: u32,
    marked: ObjSet,
    memo: &mut HashMap<u64, bool>,
    meter: &BudgetMeter,
) -> Option<bool> {
    let all = ObjSet::full(c.order());
    if marked == all {
        return Some(true);
    }
    if let Some(&w) = memo.get(&marked.0) {
        return Some(w);
    }
    if !meter.tick() {
        return None;
    }
    let alice_to_move = marked.len() % 2 == 0;
    // Try busier objects first; marking a high-contact object is the
    // likeliest cutoff for either player.
    let mut moves: Vec<u32> = all.minus(marked).iter().collect();
    moves.sort_by_key(|&i| std::cmp::Reverse(c.neighbor_mask(i).minus(marked).len()));
    let mut result = !alice_to_move;
    for i in moves {
        let next = marked.with(i);
        // Marked-neighbor counts never decrease, so a violation created now
        // persists to the end of the game; losing immediately is equivalent
        // to losing at full marking.
        let child = if has_new_violation(c, next, i, k) {
            false
        } else {
            marking_alice_wins(c, k, next, memo, meter)?
        };
        if child == alice_to_move {
            result = child;
            break;
        }
    }
    memo.insert(marked.0, result);
    Some(result)
}

/// True iff marking `i` from the violation-free set `marked` immediately
/// creates a violation at parameter `k`.
pub(crate) fn mark_violates(c: &ConflictGraph, k: u32, marked: ObjSet, i: u32) -> bool {
    has_new_violation(c, marked.with(i), i, k)
}

/// Optimal-play winner of the marking game with parameter `k`.
pub fn solve_marking(c: &ConflictGraph, k: u32) -> Winner {
    solve_marking_budgeted(c, k, &BudgetMeter::unlimited()).expect_done()
}

pub fn solve_marking_budgeted(c: &ConflictGraph, k: u32, meter: &BudgetMeter) -> Solved<Winner> {
    assert!(k >= 1, "marking parameter must be at least 1");
    let mut memo = HashMap::new();
    match marking_alice_wins(c, k, ObjSet::EMPTY, &mut memo, meter) {
        Some(true) => Solved::Done(Player::Alice),
        Some(false) => Solved::Done(Player::Bob),
        None => Solved::BudgetExceeded,
    }
}

/// Least k for which Alice wins the marking game on the conflict graph of
/// `g` in the given mode. Alice-wins is monotone in k here (the same moves
/// are available and the losing condition only relaxes), so the first
/// winning k in an ascending scan is the value.
pub fn gcol(g: &SimpleGraph, mode: ConflictMode) -> Result<u32> {
    gcol_budgeted(g, mode, &BudgetMeter::unlimited()).map(Solved::expect_done)
}

pub fn gcol_budgeted(g: &SimpleGraph, mode: ConflictMode, meter: &BudgetMeter) -> Result<Solved<u32>> {
    let c = ConflictGraph::build(g, mode);
    gcol_of_conflict_budgeted(&c, meter)
}

pub fn gcol_of_conflict(c: &ConflictGraph) -> Result<u32> {
    gcol_of_conflict_budgeted(c, &BudgetMeter::unlimited()).map(Solved::expect_done)
}

pub fn gcol_of_conflict_budgeted(c: &ConflictGraph, meter: &BudgetMeter) -> Result<Solved<u32>> {
    // With k = max degree + 1 no object can ever reach k marked neighbors,
    // so the scan below is bounded; for total graphs that cap equals the
    // counting bound 2*Delta(G) + 1.
    let cap = c.max_degree() + 1;
    for k in 1..=cap {
        match solve_marking_budgeted(c, k, meter) {
            Solved::Done(Player::Alice) => return Ok(Solved::Done(k)),
            Solved::Done(Player::Bob) => continue,
            Solved::BudgetExceeded => return Ok(Solved::BudgetExceeded),
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no winning marking parameter up to {cap} on a degree-{} conflict graph",
        c.max_degree()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::total_graph;

    /// No-memoization reference recursion. Recomputes the violation check
    /// globally at every node and never prunes; shares nothing with the
    /// production solver beyond the rules.
    fn brute_alice_wins(c: &ConflictGraph, k: u32, marked: ObjSet) -> bool {
        for i in 0..c.order() {
            if !marked.contains(i) && c.neighbor_mask(i).intersect(marked).len() >= k {
                return false;
            }
        }
        if marked.len() == c.order() {
            return true;
        }
        let alice = marked.len() % 2 == 0;
        for i in 0..c.order() {
            if !marked.contains(i) && brute_alice_wins(c, k, marked.with(i)) == alice {
                return alice;
            }
        }
        !alice
    }

    fn brute_winner(c: &ConflictGraph, k: u32) -> Winner {
        if brute_alice_wins(c, k, ObjSet::EMPTY) {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    #[test]
    fn state_transitions_and_errors() {
        let k3 = families::complete(3).unwrap();
        let t = total_graph(&k3);
        let s0 = MarkingState::new(&t);
        assert_eq!(s0.to_move(), Player::Alice);
        let s1 = s0.apply_mark_ref(ObjectRef::Vertex(0)).unwrap();
        assert_eq!(s1.to_move(), Player::Bob);
        assert_eq!(s1.marked().iter().collect::<Vec<_>>(), vec![0]);
        let s2 = s1.apply_mark_ref(ObjectRef::Edge(1)).unwrap();
        assert_eq!(s2.to_move(), Player::Alice);
        assert_eq!(s2.history(), &[0, 4]);
        // marking a marked object
        match s1.apply_mark_ref(ObjectRef::Vertex(0)) {
            Err(Error::AlreadyMarked { object }) => assert_eq!(object, ObjectRef::Vertex(0)),
            other => panic!("expected illegal-move error, got {other:?}"),
        }
        // original state untouched
        assert_eq!(s0.marked().len(), 0);
    }

    #[test]
    fn threshold_violation_examples() {
        // T(K2) = K3: both vertex objects marked, the edge object sees 2
        let k2 = families::complete(2).unwrap();
        let t = total_graph(&k2);
        let s = MarkingState::new(&t)
            .apply_mark(0)
            .unwrap()
            .apply_mark(1)
            .unwrap();
        assert_eq!(s.threshold_violation(2), Some(ObjectRef::Edge(0)));
        assert_eq!(s.threshold_violation(3), None);
        // edgeless conflict graph: never a violation
        let e = families::empty(3).unwrap();
        let c = ConflictGraph::identity(&e);
        let s = MarkingState::new(&c).apply_mark(1).unwrap();
        assert_eq!(s.threshold_violation(1), None);
    }

    #[test]
    fn clique_thresholds() {
        // In a t-clique the last unmarked vertex sees t-1 marked neighbors,
        // and with k = t nothing can ever reach k.
        let k3 = ConflictGraph::identity(&families::complete(3).unwrap());
        assert_eq!(solve_marking(&k3, 2), Player::Bob);
        assert_eq!(solve_marking(&k3, 3), Player::Alice);
    }

    #[test]
    fn total_k3_winner_table() {
        // Bob pairs each of Alice's marks with the unique non-incident
        // object; the last pair then sees four marked neighbors.
        let t = total_graph(&families::complete(3).unwrap());
        assert_eq!(solve_marking(&t, 4), Player::Bob);
        assert_eq!(solve_marking(&t, 5), Player::Alice);
        assert_eq!(brute_winner(&t, 4), Player::Bob);
        assert_eq!(brute_winner(&t, 5), Player::Alice);
    }

    #[test]
    fn single_object_game() {
        let k1 = ConflictGraph::identity(&families::complete(1).unwrap());
        assert_eq!(solve_marking(&k1, 1), Player::Alice);
    }

    #[test]
    fn gcol_examples() {
        let k3 = families::complete(3).unwrap();
        assert_eq!(gcol(&k3, ConflictMode::Line).unwrap(), 3); // L(K3) = K3
        assert_eq!(gcol(&k3, ConflictMode::Total).unwrap(), 5);
        let k2 = families::complete(2).unwrap();
        assert_eq!(gcol(&k2, ConflictMode::Total).unwrap(), 3); // T(K2) = K3
        assert_eq!(gcol(&k2, ConflictMode::Line).unwrap(), 1); // L(K2) = K1
        // empty conflict graph: Alice wins vacuously at k = 1
        assert_eq!(gcol(&families::empty(3).unwrap(), ConflictMode::Line).unwrap(), 1);
    }

    #[test]
    fn solver_matches_brute_force_on_small_cases() {
        for spec in ["complete:3", "path:4", "star:3", "gnp:5:0.5:seed=1"] {
            let g = families::generate(spec, 64).unwrap();
            for mode in [ConflictMode::Identity, ConflictMode::Line] {
                let c = ConflictGraph::build(&g, mode);
                if c.order() > 10 {
                    continue;
                }
                for k in 1..=(c.max_degree() + 1) {
                    assert_eq!(
                        solve_marking(&c, k),
                        brute_winner(&c, k),
                        "{spec} mode {mode:?} k {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn alice_win_is_monotone_in_k() {
        for spec in ["complete:3", "path:4", "gnp:5:0.6:seed=2", "cycle:5"] {
            let g = families::generate(spec, 64).unwrap();
            let c = total_graph(&g);
            let mut seen_alice = false;
            for k in 1..=(c.max_degree() + 1) {
                let w = solve_marking(&c, k);
                if seen_alice {
                    assert_eq!(w, Player::Alice, "monotonicity broke at {spec} k={k}");
                }
                seen_alice |= w == Player::Alice;
            }
            assert!(seen_alice);
        }
    }

    #[test]
    fn budget_cuts_off_explicitly() {
        let t = total_graph(&families::complete(3).unwrap());
        let meter = BudgetMeter::with_node_limit(3);
        assert_eq!(
            solve_marking_budgeted(&t, 5, &meter),
            Solved::BudgetExceeded
        );
    }
}
