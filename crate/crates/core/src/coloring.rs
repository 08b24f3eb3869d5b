//! The coloring game on a conflict graph, the game chromatic parameters, and
//! an exact offline chromatic-number oracle.
//!
//! Players alternately color objects properly from a fixed palette of k
//! colors, Alice first, no passing. Alice wins iff the whole conflict graph
//! gets colored; Bob wins iff the game stalls with uncolored objects left.

use crate::bitset::ObjSet;
use crate::error::{Error, Result};
use crate::game::{BudgetMeter, Player, Solved, Winner};
use crate::graph::{ConflictGraph, ConflictMode, ObjectRef, SimpleGraph};
use std::collections::HashMap;

/// A coloring-game position: a proper partial coloring with k colors.
#[derive(Clone, Debug)]
pub struct ColoringState<'a> {
    conflict: &'a ConflictGraph,
    k: u32,
    color: Vec<Option<u8>>,
    classes: Vec<ObjSet>,
    colored: ObjSet,
    history: Vec<(u32, u8)>,
}

impl<'a> ColoringState<'a> {
    pub fn new(conflict: &'a ConflictGraph, k: u32) -> ColoringState<'a> {
        assert!((1..=64).contains(&k), "color count must be in 1..=64");
        ColoringState {
            conflict,
            k,
            color: vec![None; conflict.order() as usize],
            classes: vec![ObjSet::EMPTY; k as usize],
            colored: ObjSet::EMPTY,
            history: Vec::new(),
        }
    }

    pub fn conflict(&self) -> &'a ConflictGraph {
        self.conflict
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn color_of(&self, i: u32) -> Option<u8> {
        self.color[i as usize]
    }

    pub fn colored(&self) -> ObjSet {
        self.colored
    }

    pub fn history(&self) -> &[(u32, u8)] {
        &self.history
    }

    pub fn is_complete(&self) -> bool {
        self.colored.len() == self.conflict.order()
    }

    pub fn to_move(&self) -> Player {
        if self.colored.len() % 2 == 0 {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    /// Colors present in the neighborhood of `i`, as a bitmask over colors.
    fn neighbor_colors(&self, i: u32) -> u64 {
        let nbrs = self.conflict.neighbor_mask(i);
        let mut mask = 0u64;
        for (col, class) in self.classes.iter().enumerate() {
            if !class.intersect(nbrs).is_empty() {
                mask |= 1 << col;
            }
        }
        mask
    }

    /// Every legal (object, color) pair, ascending by object then color.
    pub fn legal_moves(&self) -> Vec<(u32, u8)> {
        let mut out = Vec::new();
        for i in 0..self.conflict.order() {
            if self.colored.contains(i) {
                continue;
            }
            let blocked = self.neighbor_colors(i);
            for col in 0..self.k as u8 {
                if blocked >> col & 1 == 0 {
                    out.push((i, col));
                }
            }
        }
        out
    }

    pub fn check_move(&self, i: u32, col: u8) -> Result<()> {
        if i >= self.conflict.order() {
            return Err(Error::NoSuchObject(i));
        }
        if self.colored.contains(i) {
            return Err(Error::AlreadyColored {
                object: self.conflict.label(i),
            });
        }
        if col as u32 >= self.k {
            return Err(Error::StrategyPrecondition(format!(
                "color {col} is outside the {}-color palette",
                self.k
            )));
        }
        if let Some(nbr) = self
            .conflict
            .neighbors(i)
            .iter()
            .find(|&&u| self.color[u as usize] == Some(col))
        {
            return Err(Error::ColorConflict {
                object: self.conflict.label(i),
                color: col,
                conflict: self.conflict.label(*nbr),
            });
        }
        Ok(())
    }

    /// Colors object `i` with `col`, returning the successor position.
    pub fn apply_color(&self, i: u32, col: u8) -> Result<ColoringState<'a>> {
        self.check_move(i, col)?;
        let mut next = self.clone();
        next.color[i as usize] = Some(col);
        next.classes[col as usize].insert(i);
        next.colored.insert(i);
        next.history.push((i, col));
        Ok(next)
    }

    /// Lowest-index uncolored object with every color in its neighborhood.
    /// Such an object can never be colored, so the graph can never be
    /// completed and Bob already has the win.
    pub fn dead_object(&self) -> Option<ObjectRef> {
        let full = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        (0..self.conflict.order())
            .find(|&i| !self.colored.contains(i) && self.neighbor_colors(i) == full)
            .map(|i| self.conflict.label(i))
    }
}

/// Color names are interchangeable, so a position is keyed by its multiset
/// of nonempty color classes; sorting the class bitsets fixes one
/// representative per orbit.
fn class_key(classes: &[ObjSet]) -> Vec<u64> {
    let mut key: Vec<u64> = classes.iter().map(|c| c.0).collect();
    key.sort_unstable();
    key
}

/// True iff Alice wins from the position described by `classes` (the
/// nonempty color classes of a proper partial coloring; `k - classes.len()`
/// colors are still unused). The mover follows from the colored count's
/// parity. The memo is only valid for one (conflict, k) pair. `None` means
/// the budget ran out.
pub(crate) fn coloring_alice_wins(
    c: &ConflictGraph,
    k: u32,
    classes: &mut Vec<ObjSet>,
    memo: &mut HashMap<Vec<u64>, bool>,
    meter: &BudgetMeter,
) -> Option<bool> {
    let all = ObjSet::full(c.order());
    let colored = classes.iter().fold(ObjSet::EMPTY, |acc, &cl| acc.union(cl));
    if colored == all {
        return Some(true);
    }
    let key = class_key(classes);
    if let Some(&w) = memo.get(&key) {
        return Some(w);
    }
    if !meter.tick() {
        return None;
    }
    // An object whose neighborhood shows all k colors can never be colored;
    // the game is already lost for Alice however play continues.
    let dead = classes.len() == k as usize
        && all.minus(colored).iter().any(|i| {
            let nbrs = c.neighbor_mask(i);
            classes.iter().all(|cl| !cl.intersect(nbrs).is_empty())
        });
    let result = if dead {
        false
    } else {
        let alice_to_move = colored.len() % 2 == 0;
        let mut outcome = !alice_to_move;
        'moves: for i in all.minus(colored).iter() {
            let nbrs = c.neighbor_mask(i);
            // Distinct used classes are distinct moves; all unused colors
            // collapse into one representative fresh move.
            for ci in 0..classes.len() {
                if !classes[ci].intersect(nbrs).is_empty() {
                    continue;
                }
                classes[ci].insert(i);
                let child = coloring_alice_wins(c, k, classes, memo, meter);
                classes[ci] = classes[ci].minus(ObjSet::singleton(i));
                match child {
                    None => return None,
                    Some(w) if w == alice_to_move => {
                        outcome = w;
                        break 'moves;
                    }
                    Some(_) => {}
                }
            }
            if classes.len() < k as usize {
                classes.push(ObjSet::singleton(i));
                let child = coloring_alice_wins(c, k, classes, memo, meter);
                classes.pop();
                match child {
                    None => return None,
                    Some(w) if w == alice_to_move => {
                        outcome = w;
                        break 'moves;
                    }
                    Some(_) => {}
                }
            }
        }
        outcome
    };
    memo.insert(key, result);
    Some(result)
}

/// Nonempty color classes of a state, for handing to the solver recursion.
pub(crate) fn nonempty_classes(state: &ColoringState<'_>) -> Vec<ObjSet> {
    state
        .classes
        .iter()
        .copied()
        .filter(|c| !c.is_empty())
        .collect()
}

/// Optimal-play winner of the coloring game with k colors.
pub fn solve_coloring(c: &ConflictGraph, k: u32) -> Winner {
    solve_coloring_budgeted(c, k, &BudgetMeter::unlimited()).expect_done()
}

pub fn solve_coloring_budgeted(c: &ConflictGraph, k: u32, meter: &BudgetMeter) -> Solved<Winner> {
    assert!(k >= 1, "color count must be at least 1");
    let mut memo = HashMap::new();
    let mut classes = Vec::new();
    match coloring_alice_wins(c, k, &mut classes, &mut memo, meter) {
        Some(true) => Solved::Done(Player::Alice),
        Some(false) => Solved::Done(Player::Bob),
        None => Solved::BudgetExceeded,
    }
}

/// Least winning k plus the full win/lose record over the scanned range.
/// Whether an Alice win at k implies one at k+1 is not assumed; the scan
/// records every winner so anomalies would be visible, not collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameChromaticReport {
    pub value: u32,
    /// Winner for each k = 1..=scan cap, in order.
    pub winners: Vec<Winner>,
}

/// Game chromatic number of `g` in the given mode (total mode is the total
/// game chromatic number), scanning k = 1 up to max conflict degree + 1 —
/// for total graphs exactly the counting bound 2*Delta(G) + 1.
pub fn game_chromatic(g: &SimpleGraph, mode: ConflictMode) -> Result<GameChromaticReport> {
    game_chromatic_budgeted(g, mode, &BudgetMeter::unlimited()).map(Solved::expect_done)
}

pub fn game_chromatic_budgeted(
    g: &SimpleGraph,
    mode: ConflictMode,
    meter: &BudgetMeter,
) -> Result<Solved<GameChromaticReport>> {
    let c = ConflictGraph::build(g, mode);
    game_chromatic_of_conflict_budgeted(&c, meter)
}

pub fn game_chromatic_of_conflict_budgeted(
    c: &ConflictGraph,
    meter: &BudgetMeter,
) -> Result<Solved<GameChromaticReport>> {
    // With max conflict degree + 1 colors no object can ever be blocked, so
    // any maximal play completes the coloring and Alice wins regardless of
    // strategy; the scan is bounded.
    let cap = c.max_degree() + 1;
    let mut winners = Vec::with_capacity(cap as usize);
    for k in 1..=cap {
        match solve_coloring_budgeted(c, k, meter) {
            Solved::Done(w) => winners.push(w),
            Solved::BudgetExceeded => return Ok(Solved::BudgetExceeded),
        }
    }
    match winners.iter().position(|&w| w == Player::Alice) {
        Some(idx) => Ok(Solved::Done(GameChromaticReport {
            value: idx as u32 + 1,
            winners,
        })),
        None => Err(Error::InternalInconsistency(format!(
            "Alice loses the coloring game even with {cap} colors on a degree-{} conflict graph",
            c.max_degree()
        ))),
    }
}

/// Exact chromatic number of the conflict graph: branch and bound with a
/// greedy clique lower bound and first-fit symmetry breaking.
pub fn offline_chromatic(c: &ConflictGraph) -> u32 {
    let n = c.order();
    if n == 0 {
        return 0;
    }
    // vertices by degree, densest first
    let mut order: Vec<u32> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(c.degree(v)));
    // greedy clique through that order
    let mut clique = ObjSet::EMPTY;
    for &v in &order {
        if clique.iter().all(|u| c.are_adjacent(u, v)) {
            clique.insert(v);
        }
    }
    let lower = clique.len().max(1);
    for k in lower..=n {
        let mut colors = vec![u8::MAX; n as usize];
        if k_colorable(c, &order, 0, k, &mut colors, 0) {
            return k;
        }
    }
    n
}

fn k_colorable(
    c: &ConflictGraph,
    order: &[u32],
    pos: usize,
    k: u32,
    colors: &mut [u8],
    used: u8,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let mut blocked = 0u64;
    for &u in c.neighbors(v) {
        if colors[u as usize] != u8::MAX {
            blocked |= 1 << colors[u as usize];
        }
    }
    // A fresh color is indistinguishable from any other fresh color.
    let limit = (used + 1).min(k as u8);
    for col in 0..limit {
        if blocked >> col & 1 == 1 {
            continue;
        }
        colors[v as usize] = col;
        let next_used = used.max(col + 1);
        if k_colorable(c, order, pos + 1, k, colors, next_used) {
            return true;
        }
        colors[v as usize] = u8::MAX;
    }
    false
}
