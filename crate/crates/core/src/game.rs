use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

/// The two players. Alice moves first in every game here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Alice,
    Bob,
}

/// Game-theoretic winner under optimal play.
pub type Winner = Player;

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Alice => 'A',
            Player::Bob => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Player> {
        match c {
            'A' => Some(Player::Alice),
            'B' => Some(Player::Bob),
            _ => None,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Player::Alice => write!(f, "Alice"),
            Player::Bob => write!(f, "Bob"),
        }
    }
}

/// Result of a budgeted computation: either done, or cut off with the work
/// left explicitly unfinished. A cutoff is never reported as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solved<T> {
    Done(T),
    BudgetExceeded,
}

impl<T> Solved<T> {
    pub fn done(self) -> Option<T> {
        match self {
            Solved::Done(t) => Some(t),
            Solved::BudgetExceeded => None,
        }
    }

    pub fn expect_done(self) -> T {
        match self {
            Solved::Done(t) => t,
            Solved::BudgetExceeded => panic!("budget exceeded on an unbudgeted solve"),
        }
    }
}

/// Shared node/time accounting for solver runs. Node limits are deterministic;
/// deadlines are wall-clock and only suitable for coarse lab budgets.
#[derive(Debug)]
pub struct BudgetMeter {
    nodes: AtomicU64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

impl BudgetMeter {
    pub fn unlimited() -> Self {
        BudgetMeter {
            nodes: AtomicU64::new(0),
            node_limit: None,
            deadline: None,
        }
    }

    pub fn with_node_limit(limit: u64) -> Self {
        BudgetMeter {
            nodes: AtomicU64::new(0),
            node_limit: Some(limit),
            deadline: None,
        }
    }

    pub fn with_limits(node_limit: Option<u64>, deadline: Option<Instant>) -> Self {
        BudgetMeter {
            nodes: AtomicU64::new(0),
            node_limit,
            deadline,
        }
    }

    /// Counts one solver node; false once the budget is exhausted.
    #[inline]
    pub fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = self.node_limit {
            if n > limit {
                return false;
            }
        }
        if let Some(deadline) = self.deadline {
            // Deadline polls are throttled; the node counter stays exact.
            if n % 4096 == 0 && Instant::now() > deadline {
                return false;
            }
        }
        true
    }

    pub fn nodes_used(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}
