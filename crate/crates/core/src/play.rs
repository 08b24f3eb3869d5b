//! Match running, move traces, and exhaustive adversarial verification.

use crate::bitset::ObjSet;
use crate::coloring::ColoringState;
use crate::error::{Error, Result};
use crate::game::{BudgetMeter, Player, Winner};
use crate::graph::{ConflictGraph, ConflictMode, ObjectRef};
use crate::graph6::to_graph6;
use crate::marking::MarkingState;
use crate::strategy::{ColoringStrategy, MarkingStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameKind {
    Marking,
    Coloring,
}

impl std::fmt::Display for GameKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GameKind::Marking => write!(f, "marking"),
            GameKind::Coloring => write!(f, "coloring"),
        }
    }
}

/// One played move plus its per-move snapshot: the maximum marked-neighbor
/// count over unmarked objects (marking games) or the legality record
/// (coloring games).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMove {
    pub turn: u32,
    pub player: Player,
    pub object: ObjectRef,
    pub color: Option<u8>,
    pub max_marked_nbrs: Option<u32>,
}

/// Complete record of one match; replaying the moves from the empty state
/// reproduces every snapshot and the winner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchTrace {
    pub game: GameKind,
    pub mode: ConflictMode,
    pub graph6: String,
    pub k: u32,
    pub moves: Vec<TraceMove>,
    pub winner: Winner,
    /// Set when a strategy returned an illegal or failing move and thereby
    /// forfeited; the recorded winner is its opponent.
    pub forfeited_by: Option<Player>,
}

impl MatchTrace {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# game={} mode={} graph6={} k={}\n",
            self.game, self.mode, self.graph6, self.k
        );
        for mv in &self.moves {
            out.push_str(&format!("turn={} player={} object={}", mv.turn, mv.player.letter(), mv.object));
            if let Some(c) = mv.color {
                out.push_str(&format!(" color={c} legal=ok"));
            }
            if let Some(t) = mv.max_marked_nbrs {
                out.push_str(&format!(" max_marked_nbrs={t}"));
            }
            out.push('\n');
        }
        if let Some(p) = self.forfeited_by {
            out.push_str(&format!("forfeit={}\n", p.letter()));
        }
        out.push_str(&format!("winner={}\n", self.winner));
        out
    }

    pub fn parse(text: &str) -> Result<MatchTrace> {
        let bad = |msg: &str| Error::BadTrace(msg.to_string());
        let mut header = None;
        let mut moves = Vec::new();
        let mut winner = None;
        let mut forfeited_by = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# ") {
                // only the `# game=...` line is the header; any other
                // comment (orientations, notes) is ignored
                if !rest.starts_with("game=") {
                    continue;
                }
                let mut fields = std::collections::HashMap::new();
                for kv in rest.split_whitespace() {
                    if let Some((k, v)) = kv.split_once('=') {
                        fields.insert(k.to_string(), v.to_string());
                    }
                }
                let game = match fields.get("game").map(String::as_str) {
                    Some("marking") => GameKind::Marking,
                    Some("coloring") => GameKind::Coloring,
                    _ => return Err(bad("missing or unknown game kind")),
                };
                let mode = match fields.get("mode").map(String::as_str) {
                    Some("vertex") => ConflictMode::Identity,
                    Some("edge") => ConflictMode::Line,
                    Some("total") => ConflictMode::Total,
                    _ => return Err(bad("missing or unknown mode")),
                };
                let graph6 = fields.get("graph6").ok_or_else(|| bad("missing graph6"))?.clone();
                let k = fields
                    .get("k")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad("missing k"))?;
                header = Some((game, mode, graph6, k));
            } else if let Some(rest) = line.strip_prefix("winner=") {
                winner = Some(match rest {
                    "Alice" => Player::Alice,
                    "Bob" => Player::Bob,
                    _ => return Err(bad("unknown winner")),
                });
            } else if let Some(rest) = line.strip_prefix("forfeit=") {
                forfeited_by = Player::from_letter(rest.chars().next().unwrap_or(' '));
            } else {
                let mut turn = None;
                let mut player = None;
                let mut object = None;
                let mut color = None;
                let mut snap = None;
                for kv in line.split_whitespace() {
                    let (key, val) = kv.split_once('=').ok_or_else(|| bad("bad move field"))?;
                    match key {
                        "turn" => turn = val.parse().ok(),
                        "player" => player = Player::from_letter(val.chars().next().unwrap_or(' ')),
                        "object" => object = ObjectRef::parse(val),
                        "color" => color = val.parse().ok(),
                        "max_marked_nbrs" => snap = val.parse().ok(),
                        "legal" => {}
                        _ => return Err(bad(&format!("unknown move field `{key}`"))),
                    }
                }
                moves.push(TraceMove {
                    turn: turn.ok_or_else(|| bad("move missing turn"))?,
                    player: player.ok_or_else(|| bad("move missing player"))?,
                    object: object.ok_or_else(|| bad("move missing object"))?,
                    color,
                    max_marked_nbrs: snap,
                });
            }
        }
        let (game, mode, graph6, k) = header.ok_or_else(|| bad("missing header line"))?;
        Ok(MatchTrace {
            game,
            mode,
            graph6,
            k,
            moves,
            winner: winner.ok_or_else(|| bad("missing winner line"))?,
            forfeited_by,
        })
    }

    /// Replays the trace from the empty state on `conflict`, checking move
    /// legality, every marking snapshot, and the recorded winner.
    pub fn replay(&self, conflict: &ConflictGraph) -> Result<()> {
        let bad = |msg: String| Error::BadTrace(msg);
        match self.game {
            GameKind::Marking => {
                let mut state = MarkingState::new(conflict);
                let mut outcome = None;
                for mv in &self.moves {
                    if mv.player != state.to_move() {
                        return Err(bad(format!("turn {}: wrong player", mv.turn)));
                    }
                    let flat = conflict
                        .index_of_label(mv.object)
                        .ok_or_else(|| bad(format!("turn {}: unknown object", mv.turn)))?;
                    state = state.apply_mark(flat)?;
                    let snap = state.max_marked_neighbors();
                    if mv.max_marked_nbrs != Some(snap) {
                        return Err(bad(format!(
                            "turn {}: snapshot {} recorded, {snap} replayed",
                            mv.turn,
                            mv.max_marked_nbrs.map_or(-1, |v| v as i64),
                        )));
                    }
                    if snap >= self.k {
                        outcome = Some(Player::Bob);
                        break;
                    }
                    if state.is_full() {
                        outcome = Some(Player::Alice);
                    }
                }
                let expected = match self.forfeited_by {
                    Some(p) => Some(p.opponent()),
                    None => outcome,
                };
                if expected != Some(self.winner) {
                    return Err(bad("winner does not match the replayed outcome".into()));
                }
            }
            GameKind::Coloring => {
                let mut state = ColoringState::new(conflict, self.k);
                let mut outcome = None;
                for mv in &self.moves {
                    if mv.player != state.to_move() {
                        return Err(bad(format!("turn {}: wrong player", mv.turn)));
                    }
                    let flat = conflict
                        .index_of_label(mv.object)
                        .ok_or_else(|| bad(format!("turn {}: unknown object", mv.turn)))?;
                    let color = mv
                        .color
                        .ok_or_else(|| bad(format!("turn {}: coloring move without color", mv.turn)))?;
                    state = state.apply_color(flat, color)?;
                    if state.is_complete() {
                        outcome = Some(Player::Alice);
                        break;
                    }
                    if state.dead_object().is_some() {
                        outcome = Some(Player::Bob);
                        break;
                    }
                }
                let expected = match self.forfeited_by {
                    Some(p) => Some(p.opponent()),
                    None => outcome,
                };
                if expected != Some(self.winner) {
                    return Err(bad("winner does not match the replayed outcome".into()));
                }
            }
        }
        Ok(())
    }
}

/// Plays one marking match. Illegal or failing strategy moves forfeit.
pub fn play_marking_match(
    conflict: &ConflictGraph,
    k: u32,
    alice: &mut dyn MarkingStrategy,
    bob: &mut dyn MarkingStrategy,
) -> MatchTrace {
    let mut trace = MatchTrace {
        game: GameKind::Marking,
        mode: conflict.mode(),
        graph6: to_graph6(conflict.source()),
        k,
        moves: Vec::new(),
        winner: Player::Alice,
        forfeited_by: None,
    };
    let mut state = MarkingState::new(conflict);
    let mut turn = 0u32;
    loop {
        if state.is_full() {
            trace.winner = Player::Alice;
            return trace;
        }
        let mover = state.to_move();
        let strategy: &mut dyn MarkingStrategy = match mover {
            Player::Alice => alice,
            Player::Bob => bob,
        };
        let next = match strategy.choose(&state).and_then(|mv| state.apply_mark(mv)) {
            Ok(next) => next,
            Err(_) => {
                trace.forfeited_by = Some(mover);
                trace.winner = mover.opponent();
                return trace;
            }
        };
        state = next;
        let snap = state.max_marked_neighbors();
        trace.moves.push(TraceMove {
            turn,
            player: mover,
            object: conflict.label(*state.history().last().expect("just moved")),
            color: None,
            max_marked_nbrs: Some(snap),
        });
        turn += 1;
        if snap >= k {
            trace.winner = Player::Bob;
            return trace;
        }
    }
}

/// Plays one coloring match. The game ends as soon as the coloring is
/// complete (Alice) or some object has every color in its neighborhood
/// (Bob: the graph can never be completed).
pub fn play_coloring_match(
    conflict: &ConflictGraph,
    k: u32,
    alice: &mut dyn ColoringStrategy,
    bob: &mut dyn ColoringStrategy,
) -> MatchTrace {
    let mut trace = MatchTrace {
        game: GameKind::Coloring,
        mode: conflict.mode(),
        graph6: to_graph6(conflict.source()),
        k,
        moves: Vec::new(),
        winner: Player::Alice,
        forfeited_by: None,
    };
    let mut state = ColoringState::new(conflict, k);
    let mut turn = 0u32;
    loop {
        if state.is_complete() {
            trace.winner = Player::Alice;
            return trace;
        }
        if state.dead_object().is_some() {
            trace.winner = Player::Bob;
            return trace;
        }
        let mover = state.to_move();
        let strategy: &mut dyn ColoringStrategy = match mover {
            Player::Alice => alice,
            Player::Bob => bob,
        };
        let next = match strategy
            .choose(&state)
            .and_then(|(i, c)| state.apply_color(i, c))
        {
            Ok(next) => next,
            Err(_) => {
                trace.forfeited_by = Some(mover);
                trace.winner = mover.opponent();
                return trace;
            }
        };
        state = next;
        let &(flat, color) = state.history().last().expect("just moved");
        trace.moves.push(TraceMove {
            turn,
            player: mover,
            object: conflict.label(flat),
            color: Some(color),
            max_marked_nbrs: None,
        });
        turn += 1;
    }
}

/// Result of exploring every opponent line against a deterministic hero
/// strategy.
#[derive(Debug)]
pub enum VerifyOutcome {
    /// The hero won every explored line.
    Ok { nodes: u64 },
    /// A line the hero loses, as a replayable trace.
    Counterexample(MatchTrace),
    /// A per-position invariant failed on some line.
    InvariantBreach { detail: String, trace: MatchTrace },
    /// The node budget ran out before the exploration finished; explicitly
    /// not a pass.
    BudgetExceeded { nodes: u64 },
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok { .. })
    }
}

/// Per-position invariant check: receives the position just reached, the
/// hero strategy's activation set (when it keeps one), and who just moved.
pub type MarkingInvariant<'h> =
    &'h (dyn Fn(&MarkingState<'_>, Option<ObjSet>, Player) -> std::result::Result<(), String>
         + Sync);

fn marking_trace_from_history(
    conflict: &ConflictGraph,
    k: u32,
    history: &[u32],
    winner: Winner,
) -> MatchTrace {
    let mut state = MarkingState::new(conflict);
    let mut moves = Vec::new();
    for (turn, &flat) in history.iter().enumerate() {
        let mover = state.to_move();
        state = state.apply_mark(flat).expect("history is replayable");
        moves.push(TraceMove {
            turn: turn as u32,
            player: mover,
            object: conflict.label(flat),
            color: None,
            max_marked_nbrs: Some(state.max_marked_neighbors()),
        });
    }
    MatchTrace {
        game: GameKind::Marking,
        mode: conflict.mode(),
        graph6: to_graph6(conflict.source()),
        k,
        moves,
        winner,
        forfeited_by: None,
    }
}

/// Explores every opponent reply sequence against the deterministic `hero`
/// strategy in the marking game. Strategy memory is cloned at each branch,
/// so divergent lines cannot contaminate each other; the branches under the
/// opponent's first choice run on separate threads, and the first failure
/// in branch order is reported regardless of thread timing.
pub fn exhaustive_verify_marking(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    strategy: &dyn MarkingStrategy,
    meter: &BudgetMeter,
    invariant: Option<MarkingInvariant<'_>>,
) -> VerifyOutcome {
    let state = MarkingState::new(conflict);
    // Walk hero moves until the opponent first has a choice.
    let mut strategy = strategy.clone_box();
    let mut state = state;
    loop {
        if !meter.tick() {
            return VerifyOutcome::BudgetExceeded {
                nodes: meter.nodes_used(),
            };
        }
        if state.is_full() {
            return match finish_marking_line(conflict, k, hero, &state, Player::Alice) {
                Explored::HeroHolds => VerifyOutcome::Ok {
                    nodes: meter.nodes_used(),
                },
                Explored::Fail(f) => f,
            };
        }
        if state.to_move() != hero {
            break;
        }
        let next = match strategy.choose(&state).and_then(|mv| state.apply_mark(mv)) {
            Ok(next) => next,
            Err(e) => {
                return VerifyOutcome::InvariantBreach {
                    detail: format!("strategy failed to move: {e}"),
                    trace: marking_trace_from_history(conflict, k, state.history(), hero.opponent()),
                }
            }
        };
        state = next;
        match check_marking_position(conflict, k, hero, strategy.as_ref(), &state, invariant) {
            Some(Explored::HeroHolds) => {
                return VerifyOutcome::Ok {
                    nodes: meter.nodes_used(),
                }
            }
            Some(Explored::Fail(f)) => return f,
            None => {}
        }
    }

    // Fan the opponent's first choices out over threads, one strategy
    // clone per branch.
    let branches: Vec<(u32, Box<dyn MarkingStrategy>)> = (0..conflict.order())
        .filter(|&i| !state.is_marked(i))
        .map(|i| (i, strategy.clone_box()))
        .collect();
    let mut outcomes: Vec<Option<Explored>> = Vec::with_capacity(branches.len());
    outcomes.resize_with(branches.len(), || None);
    std::thread::scope(|scope| {
        let state = &state;
        let mut slots: &mut [Option<Explored>] = &mut outcomes;
        for (mv, branch_strategy) in branches {
            let (slot, rest) = slots.split_first_mut().expect("one slot per branch");
            slots = rest;
            scope.spawn(move || {
                let next = state.apply_mark(mv).expect("unmarked");
                *slot = Some(step_marking(
                    conflict,
                    k,
                    hero,
                    branch_strategy,
                    next,
                    meter,
                    invariant,
                ));
            });
        }
    });
    for outcome in outcomes {
        match outcome.expect("branch explored") {
            Explored::HeroHolds => {}
            Explored::Fail(f) => return f,
        }
    }
    VerifyOutcome::Ok {
        nodes: meter.nodes_used(),
    }
}

/// Violation and invariant checks for a freshly reached position; `Some`
/// means the line (or the whole run) is decided.
fn check_marking_position(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    strategy: &dyn MarkingStrategy,
    state: &MarkingState<'_>,
    invariant: Option<MarkingInvariant<'_>>,
) -> Option<Explored> {
    let just_moved = state.to_move().opponent();
    if let Some(check) = invariant {
        if let Err(detail) = check(state, strategy.active_objects(), just_moved) {
            return Some(Explored::Fail(VerifyOutcome::InvariantBreach {
                detail,
                trace: marking_trace_from_history(conflict, k, state.history(), hero.opponent()),
            }));
        }
    }
    if state.max_marked_neighbors() >= k {
        return Some(finish_marking_line(conflict, k, hero, state, Player::Bob));
    }
    if state.is_full() {
        return Some(finish_marking_line(conflict, k, hero, state, Player::Alice));
    }
    None
}

enum Explored {
    HeroHolds,
    Fail(VerifyOutcome),
}

fn explore_marking(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    mut strategy: Box<dyn MarkingStrategy>,
    state: MarkingState<'_>,
    meter: &BudgetMeter,
    invariant: Option<MarkingInvariant<'_>>,
) -> Explored {
    if !meter.tick() {
        return Explored::Fail(VerifyOutcome::BudgetExceeded {
            nodes: meter.nodes_used(),
        });
    }
    if state.is_full() {
        return finish_marking_line(conflict, k, hero, &state, Player::Alice);
    }
    let mover = state.to_move();
    if mover == hero {
        let next = match strategy.choose(&state).and_then(|mv| state.apply_mark(mv)) {
            Ok(next) => next,
            Err(e) => {
                return Explored::Fail(VerifyOutcome::InvariantBreach {
                    detail: format!("strategy failed to move: {e}"),
                    trace: marking_trace_from_history(
                        conflict,
                        k,
                        state.history(),
                        hero.opponent(),
                    ),
                })
            }
        };
        step_marking(conflict, k, hero, strategy, next, meter, invariant)
    } else {
        for i in 0..conflict.order() {
            if state.is_marked(i) {
                continue;
            }
            let next = state.apply_mark(i).expect("unmarked");
            match step_marking(
                conflict,
                k,
                hero,
                strategy.clone_box(),
                next,
                meter,
                invariant,
            ) {
                Explored::HeroHolds => {}
                fail => return fail,
            }
        }
        Explored::HeroHolds
    }
}

/// Handles the position right after a move: violation bookkeeping, the
/// invariant hook, then recursion.
fn step_marking(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    strategy: Box<dyn MarkingStrategy>,
    state: MarkingState<'_>,
    meter: &BudgetMeter,
    invariant: Option<MarkingInvariant<'_>>,
) -> Explored {
    if let Some(decided) = check_marking_position(conflict, k, hero, strategy.as_ref(), &state, invariant)
    {
        return decided;
    }
    explore_marking(conflict, k, hero, strategy, state, meter, invariant)
}

fn finish_marking_line(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    state: &MarkingState<'_>,
    winner: Winner,
) -> Explored {
    if winner == hero {
        Explored::HeroHolds
    } else {
        Explored::Fail(VerifyOutcome::Counterexample(marking_trace_from_history(
            conflict,
            k,
            state.history(),
            winner,
        )))
    }
}

fn coloring_trace_from_history(
    conflict: &ConflictGraph,
    k: u32,
    history: &[(u32, u8)],
    winner: Winner,
) -> MatchTrace {
    let moves = history
        .iter()
        .enumerate()
        .map(|(turn, &(flat, color))| TraceMove {
            turn: turn as u32,
            player: if turn % 2 == 0 { Player::Alice } else { Player::Bob },
            object: conflict.label(flat),
            color: Some(color),
            max_marked_nbrs: None,
        })
        .collect();
    MatchTrace {
        game: GameKind::Coloring,
        mode: conflict.mode(),
        graph6: to_graph6(conflict.source()),
        k,
        moves,
        winner,
        forfeited_by: None,
    }
}

/// Coloring-game analogue of [`exhaustive_verify_marking`].
pub fn exhaustive_verify_coloring(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    strategy: &dyn ColoringStrategy,
    meter: &BudgetMeter,
) -> VerifyOutcome {
    let state = ColoringState::new(conflict, k);
    match explore_coloring(conflict, k, hero, strategy.clone_box(), state, meter) {
        Explored::HeroHolds => VerifyOutcome::Ok {
            nodes: meter.nodes_used(),
        },
        Explored::Fail(f) => f,
    }
}

fn explore_coloring(
    conflict: &ConflictGraph,
    k: u32,
    hero: Player,
    mut strategy: Box<dyn ColoringStrategy>,
    state: ColoringState<'_>,
    meter: &BudgetMeter,
) -> Explored {
    if !meter.tick() {
        return Explored::Fail(VerifyOutcome::BudgetExceeded {
            nodes: meter.nodes_used(),
        });
    }
    // A dead object or a stalled position (every uncolored object dead)
    // both mean the graph can never be completed.
    let line_winner = if state.is_complete() {
        Some(Player::Alice)
    } else if state.dead_object().is_some() || state.legal_moves().is_empty() {
        Some(Player::Bob)
    } else {
        None
    };
    if let Some(winner) = line_winner {
        return if winner == hero {
            Explored::HeroHolds
        } else {
            Explored::Fail(VerifyOutcome::Counterexample(coloring_trace_from_history(
                conflict,
                k,
                state.history(),
                winner,
            )))
        };
    }
    let mover = state.to_move();
    if mover == hero {
        let next = match strategy
            .choose(&state)
            .and_then(|(i, c)| state.apply_color(i, c))
        {
            Ok(next) => next,
            Err(e) => {
                return Explored::Fail(VerifyOutcome::InvariantBreach {
                    detail: format!("strategy failed to move: {e}"),
                    trace: coloring_trace_from_history(
                        conflict,
                        k,
                        state.history(),
                        hero.opponent(),
                    ),
                })
            }
        };
        explore_coloring(conflict, k, hero, strategy, next, meter)
    } else {
        for (i, c) in state.legal_moves() {
            let next = state.apply_color(i, c).expect("legal");
            match explore_coloring(conflict, k, hero, strategy.clone_box(), next, meter) {
                Explored::HeroHolds => {}
                fail => return fail,
            }
        }
        Explored::HeroHolds
    }
}
