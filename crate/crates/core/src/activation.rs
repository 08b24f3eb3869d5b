//! The activation strategy for Alice in the total marking game.
//!
//! Alice fixes an orientation D of the source graph with small maximum
//! outdegree and, before each of her marks, takes a jumping tour over the
//! objects of D, activating everything she visits:
//!
//! 1. jumps always follow the orientation of D;
//! 2. on her first move the tour starts from an edge;
//! 3. after a Bob move the tour starts at the object he just marked, which
//!    she activates;
//! 4. from an edge x->y she jumps to the head y unless y is marked, in which
//!    case she jumps to an unmarked out-edge of y;
//! 5. from a vertex x she jumps to an unmarked out-edge of x;
//! 6. landing on an inactive object activates it; landing on an active
//!    object means she marks it and the tour ends;
//! 7. if the very first jump is impossible the tour restarts from an edge;
//! 8. if a later jump is impossible she marks the last object the tour
//!    activated.
//!
//! Where the rules leave a choice, the lowest edge index is taken, so play
//! is fully deterministic and any counting argument over tours holds for
//! this instantiation. Once activated, an object stays active for the rest
//! of the game; after each Alice move every marked object is active, and
//! after each Bob move at most his newest mark is inactive.

use crate::bitset::ObjSet;
use crate::error::{Error, Result};
use crate::graph::{ConflictGraph, ConflictMode};
use crate::marking::MarkingState;
use crate::orientation::Orientation;
use crate::strategy::MarkingStrategy;

/// How rule 7 picks its restart object. The rules only ever speak of
/// jumping onto unmarked objects outside the Bob-reply start, so the
/// default restart considers unmarked edges; the strict reading also lets
/// the restart land on a marked-but-inactive edge, which is then activated
/// and toured through like a Bob reply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RestartRule {
    #[default]
    UnmarkedOnly,
    Strict,
}

/// Alice's activation-strategy state: the fixed orientation plus the
/// ever-growing active set.
#[derive(Clone)]
pub struct ActivationAlice {
    orientation: Orientation,
    active: ObjSet,
    last_tour: Vec<u32>,
    restart_rule: RestartRule,
}

impl ActivationAlice {
    pub fn new(orientation: Orientation) -> Self {
        ActivationAlice {
            orientation,
            active: ObjSet::EMPTY,
            last_tour: Vec::new(),
            restart_rule: RestartRule::default(),
        }
    }

    pub fn with_restart_rule(orientation: Orientation, rule: RestartRule) -> Self {
        ActivationAlice {
            restart_rule: rule,
            ..ActivationAlice::new(orientation)
        }
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn active(&self) -> ObjSet {
        self.active
    }

    /// Flat indices visited by the most recent tour, in visit order.
    pub fn last_tour(&self) -> &[u32] {
        &self.last_tour
    }

    fn activate(&mut self, flat: u32) {
        self.active.insert(flat);
        self.last_tour.push(flat);
    }

    /// Lowest-index unmarked out-edge of vertex `v`, as a flat index.
    fn out_jump(&self, state: &MarkingState<'_>, n: u32, v: u32) -> Option<u32> {
        self.orientation
            .out_edges(v)
            .iter()
            .map(|&j| n + j)
            .find(|&flat| !state.is_marked(flat))
    }

    /// Rules 4 and 5: the next landing from `cur`, or None when the tour
    /// stalls.
    fn next_jump(&self, state: &MarkingState<'_>, n: u32, cur: u32) -> Option<u32> {
        if cur < n {
            // vertex: continue along an unmarked out-edge
            self.out_jump(state, n, cur)
        } else {
            // edge x->y: land on the head, or skip past it when marked
            let head = self.orientation.head(cur - n);
            if !state.is_marked(head) {
                Some(head)
            } else {
                self.out_jump(state, n, head)
            }
        }
    }

    /// Lowest unmarked edge, then lowest unmarked vertex, as tour starts.
    fn fresh_start(&self, state: &MarkingState<'_>, n: u32) -> Option<u32> {
        let order = state.conflict().order();
        (n..order)
            .chain(0..n)
            .find(|&flat| !state.is_marked(flat))
    }

    /// Rule 7 candidates; the strict reading additionally admits
    /// marked-but-inactive objects.
    fn restart_start(&self, state: &MarkingState<'_>, n: u32) -> Option<u32> {
        match self.restart_rule {
            RestartRule::UnmarkedOnly => self.fresh_start(state, n),
            RestartRule::Strict => {
                let order = state.conflict().order();
                (n..order)
                    .chain(0..n)
                    .find(|&flat| !state.is_marked(flat) || !self.active.contains(flat))
            }
        }
    }

    fn check_applicable(&self, conflict: &ConflictGraph) -> Result<()> {
        if conflict.mode() != ConflictMode::Total {
            return Err(Error::StrategyPrecondition(
                "the activation strategy plays the total marking game".into(),
            ));
        }
        if !self.orientation.matches_graph(conflict.source()) {
            return Err(Error::StrategyPrecondition(
                "orientation was built for a different graph".into(),
            ));
        }
        Ok(())
    }
}

/// Runs one jumping tour and returns the flat index Alice marks, updating
/// the active set with every visit. `bob_last` is the object Bob just
/// marked, or None on the opening move; the caller vouches that it is
/// Alice's turn.
pub fn activation_alice_move(
    mem: &mut ActivationAlice,
    state: &MarkingState<'_>,
    bob_last: Option<u32>,
) -> Result<u32> {
    let conflict = state.conflict();
    mem.check_applicable(conflict)?;
    if state.is_full() {
        return Err(Error::StrategyPrecondition(
            "no unmarked object left to mark".into(),
        ));
    }
    let n = conflict.source().n();
    mem.last_tour.clear();

    // The tour's starting landing. A Bob reply is activated and toured
    // through even though it is marked; a fresh start lands like any other
    // jump, so an already-active start is marked immediately.
    let mut last_activated_unmarked: Option<u32> = None;
    let mut cur = match bob_last {
        Some(b) => {
            if !state.is_marked(b) {
                return Err(Error::StrategyPrecondition(format!(
                    "reported Bob move {b} is not marked"
                )));
            }
            mem.activate(b);
            b
        }
        None => {
            let start = mem
                .fresh_start(state, n)
                .expect("an unmarked object exists");
            if mem.active.contains(start) {
                mem.last_tour.push(start);
                return Ok(start);
            }
            mem.activate(start);
            last_activated_unmarked = Some(start);
            start
        }
    };

    let mut restarted = false;
    loop {
        match mem.next_jump(state, n, cur) {
            Some(landing) => {
                if mem.active.contains(landing) {
                    // rule 6: an active landing is marked and the tour ends
                    mem.last_tour.push(landing);
                    return Ok(landing);
                }
                mem.activate(landing);
                last_activated_unmarked = Some(landing);
                cur = landing;
            }
            None => {
                // rule 8 first: mark the tour's last activated object
                if let Some(target) = last_activated_unmarked {
                    return Ok(target);
                }
                // nothing activated yet: restart once per rule 7
                if restarted {
                    break;
                }
                restarted = true;
                match mem.restart_start(state, n) {
                    None => break,
                    Some(start) if state.is_marked(start) => {
                        // strict reading: tour through a marked inactive object
                        mem.activate(start);
                        cur = start;
                    }
                    Some(start) => {
                        if mem.active.contains(start) {
                            mem.last_tour.push(start);
                            return Ok(start);
                        }
                        mem.activate(start);
                        last_activated_unmarked = Some(start);
                        cur = start;
                    }
                }
            }
        }
    }

    // Stalled with nothing activated and no restart available: mark the
    // lowest unmarked object, activating it so marked objects stay active.
    let fallback = (0..conflict.order())
        .find(|&flat| !state.is_marked(flat))
        .expect("an unmarked object exists");
    mem.activate(fallback);
    Ok(fallback)
}

/// Per-position invariant check for activation play on the total graph of a
/// graph with maximum degree `delta`, toured along an orientation with
/// maximum outdegree `dplus`:
///
/// - after an Alice move every marked object is active; after a Bob move at
///   most his newest mark is inactive;
/// - every unmarked vertex object has at most `delta + dplus + 2` active
///   neighbors, every unmarked edge object at most `delta + 3 * dplus`.
///
/// The counting bounds cap an unmarked object's marked neighbors one past
/// the active count, which is what keeps the threshold `delta + 3*dplus + 1`
/// out of reach.
pub fn activation_invariant(
    delta: u32,
    dplus: u32,
) -> impl Fn(&MarkingState<'_>, Option<ObjSet>, crate::game::Player) -> std::result::Result<(), String>
       + Sync {
    move |state, active, just_moved| {
        let active = active.ok_or("activation check needs the strategy's active set")?;
        let marked = state.marked();
        let inactive_marked = marked.minus(active).len();
        match just_moved {
            crate::game::Player::Alice if inactive_marked > 0 => {
                return Err(format!(
                    "{inactive_marked} marked objects inactive after an Alice move"
                ));
            }
            crate::game::Player::Bob if inactive_marked > 1 => {
                return Err(format!(
                    "{inactive_marked} marked objects inactive after a Bob move"
                ));
            }
            _ => {}
        }
        let conflict = state.conflict();
        let n = conflict.source().n();
        for i in 0..conflict.order() {
            if marked.contains(i) {
                continue;
            }
            let active_nbrs = conflict.neighbor_mask(i).intersect(active).len();
            let bound = if i < n {
                delta + dplus + 2
            } else {
                delta + 3 * dplus
            };
            if active_nbrs > bound {
                return Err(format!(
                    "unmarked {} has {active_nbrs} active neighbors, bound {bound}",
                    conflict.label(i)
                ));
            }
        }
        Ok(())
    }
}

impl MarkingStrategy for ActivationAlice {
    fn name(&self) -> String {
        format!(
            "activation(dplus={}, arcs={})",
            self.orientation.max_outdegree(),
            self.orientation.arc_string()
        )
    }

    fn choose(&mut self, state: &MarkingState<'_>) -> Result<u32> {
        if state.to_move() != crate::game::Player::Alice {
            return Err(Error::StrategyPrecondition(
                "activation strategy plays Alice, but it is Bob's turn".into(),
            ));
        }
        let bob_last = if state.history().is_empty() {
            None
        } else {
            state.history().last().copied()
        };
        activation_alice_move(self, state, bob_last)
    }

    fn clone_box(&self) -> Box<dyn MarkingStrategy> {
        Box::new(self.clone())
    }

    fn active_objects(&self) -> Option<ObjSet> {
        Some(self.active)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::total_graph;

    fn chain_p3() -> (crate::graph::SimpleGraph, Orientation) {
        let p3 = families::path(3).unwrap();
        // a->b->c: edge {0,1} tailed at 0, edge {1,2} tailed at 1
        let o = Orientation::new(&p3, vec![0, 1]).unwrap();
        (p3, o)
    }

    #[test]
    fn opening_tour_on_oriented_path() {
        // Start at the lowest unmarked edge e01 (flat 3), activate it, jump
        // to its head b (flat 1), on to e12 (flat 4), on to c (flat 2); c
        // has no out-edges, so Alice marks the last activated object c.
        let (p3, o) = chain_p3();
        let t = total_graph(&p3);
        let state = MarkingState::new(&t);
        let mut mem = ActivationAlice::new(o);
        let mark = activation_alice_move(&mut mem, &state, None).unwrap();
        assert_eq!(mark, 2);
        assert_eq!(mem.last_tour(), &[3, 1, 4, 2]);
        assert_eq!(mem.active().iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn tour_from_bob_reply() {
        // Fresh memory, Bob just marked b (flat 1): activate b, jump along
        // b's unmarked out-edge e12, then to c, stall, mark c.
        let (p3, o) = chain_p3();
        let t = total_graph(&p3);
        let state = MarkingState::new(&t).apply_mark(1).unwrap();
        let mut mem = ActivationAlice::new(o);
        let mark = activation_alice_move(&mut mem, &state, Some(1)).unwrap();
        assert_eq!(mark, 2);
        assert_eq!(mem.last_tour(), &[1, 4, 2]);
        assert_eq!(mem.active().iter().collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn landing_on_active_object_marks_it() {
        // Prime the memory so e12 (flat 4) is already active; the opening
        // tour then stops there and marks it.
        let (p3, o) = chain_p3();
        let t = total_graph(&p3);
        let state = MarkingState::new(&t);
        let mut mem = ActivationAlice::new(o);
        mem.active.insert(4);
        let mark = activation_alice_move(&mut mem, &state, None).unwrap();
        // tour: e01 (activate), b (activate), land on active e12 -> mark
        assert_eq!(mark, 4);
        assert_eq!(mem.last_tour(), &[3, 1, 4]);
    }

    #[test]
    fn edgeless_graph_falls_back_to_vertices() {
        let g = families::empty(2).unwrap();
        let t = total_graph(&g);
        let o = Orientation::new(&g, vec![]).unwrap();
        let state = MarkingState::new(&t);
        let mut mem = ActivationAlice::new(o);
        // no edges anywhere: start at vertex 0, no jumps, rule 8 marks it
        let mark = activation_alice_move(&mut mem, &state, None).unwrap();
        assert_eq!(mark, 0);
        assert!(mem.active().contains(0));
    }

    #[test]
    fn stalled_bob_reply_restarts_from_an_edge() {
        // Orient P3 inward (a->b<-c) and let Bob mark the sink b: b has no
        // out-edges, the first jump fails, and the tour restarts from the
        // lowest unmarked edge e01. From e01 the head b is marked and b has
        // no unmarked out-edges, so the tour stalls again and marks e01.
        let p3 = families::path(3).unwrap();
        let o = Orientation::new(&p3, vec![0, 2]).unwrap(); // tails 0 and 2
        let t = total_graph(&p3);
        let state = MarkingState::new(&t).apply_mark(1).unwrap(); // Bob marked b
        let mut mem = ActivationAlice::new(o);
        let mark = activation_alice_move(&mut mem, &state, Some(1)).unwrap();
        assert_eq!(mem.last_tour(), &[1, 3]);
        assert!(mem.active().contains(1), "Bob's mark gets activated");
        assert_eq!(mark, 3); // the restart edge is the last activated object
    }

    #[test]
    fn bob_reply_tour_walks_downstream() {
        // Orientation a->b->c, Bob marked a: tour activates a, follows a's
        // out-edge e01, lands on b, continues to e12 and c, then marks c.
        let (p3, o) = chain_p3();
        let t = total_graph(&p3);
        let state = MarkingState::new(&t).apply_mark(0).unwrap();
        let mut mem = ActivationAlice::new(o);
        let mark = activation_alice_move(&mut mem, &state, Some(0)).unwrap();
        assert_eq!(mem.last_tour(), &[0, 3, 1, 4, 2]);
        assert_eq!(mark, 2);
    }

    #[test]
    fn restart_rules_differ_on_marked_inactive_edges() {
        // Inward orientation a->b<-c; marked {e01, b} with fresh memory and
        // Bob's last at b. The tour stalls at b immediately. The default
        // restart takes the lowest unmarked edge e12, stalls again, and
        // marks it; the strict reading restarts on the marked-but-inactive
        // e01 first, tours through it, stalls with nothing activated and
        // unmarked, and falls back to marking the lowest unmarked object.
        let p3 = families::path(3).unwrap();
        let o = Orientation::new(&p3, vec![0, 2]).unwrap();
        let t = total_graph(&p3);
        let state = MarkingState::new(&t)
            .apply_mark(3)
            .unwrap()
            .apply_mark(1)
            .unwrap();

        let mut default_mem = ActivationAlice::new(o.clone());
        let mark = activation_alice_move(&mut default_mem, &state, Some(1)).unwrap();
        assert_eq!(mark, 4);
        assert_eq!(default_mem.last_tour(), &[1, 4]);

        let mut strict_mem = ActivationAlice::with_restart_rule(o, RestartRule::Strict);
        let mark = activation_alice_move(&mut strict_mem, &state, Some(1)).unwrap();
        assert_eq!(mark, 0);
        assert!(strict_mem.active().contains(3), "restart edge was activated");
    }

    #[test]
    fn strict_restart_holds_the_bound_too() {
        use crate::game::Player;
        use crate::orientation::min_max_outdegree_orientation;
        use crate::play::{exhaustive_verify_marking, VerifyOutcome};
        for spec in ["path:3", "complete:3", "star:4", "cycle:4"] {
            let g = families::generate(spec, 64).unwrap();
            let o = min_max_outdegree_orientation(&g);
            let parameter = g.max_degree() + 3 * o.max_outdegree() + 1;
            let t = total_graph(&g);
            let alice = ActivationAlice::with_restart_rule(o, RestartRule::Strict);
            let meter = crate::game::BudgetMeter::unlimited();
            let outcome =
                exhaustive_verify_marking(&t, parameter, Player::Alice, &alice, &meter, None);
            assert!(
                matches!(outcome, VerifyOutcome::Ok { .. }),
                "{spec}: {outcome:?}"
            );
        }
    }

    #[test]
    fn rejects_wrong_conflict_mode() {
        let (p3, o) = chain_p3();
        let line = crate::graph::line_graph(&p3);
        let state = MarkingState::new(&line);
        let mut mem = ActivationAlice::new(o);
        assert!(activation_alice_move(&mut mem, &state, None).is_err());
    }

    #[test]
    fn rejects_full_board() {
        let (p3, o) = chain_p3();
        let t = total_graph(&p3);
        let mut state = MarkingState::new(&t);
        for i in 0..t.order() {
            state = state.apply_mark(i).unwrap();
        }
        let mut mem = ActivationAlice::new(o);
        assert!(activation_alice_move(&mut mem, &state, Some(4)).is_err());
    }

    #[test]
    fn active_set_only_grows_across_a_match() {
        let (p3, o) = chain_p3();
        let t = total_graph(&p3);
        let mut mem = ActivationAlice::new(o);
        let mut state = MarkingState::new(&t);
        let mut prev = ObjSet::EMPTY;
        while !state.is_full() {
            let mv = match state.to_move() {
                crate::game::Player::Alice => {
                    let bob_last = state.history().last().copied();
                    activation_alice_move(&mut mem, &state, bob_last).unwrap()
                }
                crate::game::Player::Bob => {
                    (0..t.order()).find(|&i| !state.is_marked(i)).unwrap()
                }
            };
            state = state.apply_mark(mv).unwrap();
            assert!(prev.is_subset_of(mem.active()));
            prev = mem.active();
        }
    }
}
