//! Hand-scripted strategies for two specific total coloring games. Each one
//! encodes a winning argument for its exact instance, so the preconditions
//! are checked aggressively and anything foreign is rejected.

use crate::coloring::ColoringState;
use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph::{ConflictGraph, ConflictMode, SimpleGraph};
use crate::strategy::ColoringStrategy;

fn is_triangle(g: &SimpleGraph) -> bool {
    g.n() == 3 && g.m() == 3
}

/// K3 plus one isolated vertex; returns the isolated vertex if so.
fn triangle_plus_isolated(g: &SimpleGraph) -> Option<u32> {
    if g.n() != 4 || g.m() != 3 {
        return None;
    }
    let isolated: Vec<u32> = (0..4).filter(|&v| g.degree(v) == 0).collect();
    match isolated.as_slice() {
        [v] if (0..4).all(|u| u == *v || g.degree(u) == 2) => Some(*v),
        _ => None,
    }
}

/// The unique object not incident with `i`, looking only at the triangle's
/// six objects (an isolated-vertex object is skipped: it is incident with
/// nothing and would make "non-incident" ambiguous).
fn antipode(c: &ConflictGraph, i: u32, skip: Option<u32>) -> Result<u32> {
    let candidates: Vec<u32> = (0..c.order())
        .filter(|&j| j != i && Some(j) != skip && !c.are_adjacent(i, j))
        .collect();
    match candidates.as_slice() {
        [j] => Ok(*j),
        _ => Err(Error::StrategyPrecondition(format!(
            "object {i} has {} non-incident partners, expected exactly one",
            candidates.len()
        ))),
    }
}

/// Bob's reply for the total coloring game on K3 with 4 colors: color the
/// unique object non-incident with Alice's last move, using the lowest
/// color unused anywhere so far. Two such replies burn all four colors on
/// two non-incident pairs, leaving the last pair uncolorable.
pub fn scripted_bob_k3(state: &ColoringState<'_>) -> Result<(u32, u8)> {
    let c = state.conflict();
    if c.mode() != ConflictMode::Total || !is_triangle(c.source()) {
        return Err(Error::StrategyPrecondition(
            "this script plays the total coloring game on the triangle".into(),
        ));
    }
    if state.k() != 4 {
        return Err(Error::StrategyPrecondition(format!(
            "this script is built for 4 colors, game has {}",
            state.k()
        )));
    }
    if state.to_move() != Player::Bob {
        return Err(Error::StrategyPrecondition("not Bob's turn".into()));
    }
    let &(alice_obj, _) = state.history().last().ok_or_else(|| {
        Error::StrategyPrecondition("Bob replies to an Alice move, but none was made".into())
    })?;
    let target = antipode(c, alice_obj, None)?;
    if state.color_of(target).is_some() {
        return Err(Error::StrategyPrecondition(format!(
            "antipodal object {target} is already colored"
        )));
    }
    let fresh = (0..state.k() as u8)
        .find(|&col| (0..c.order()).all(|i| state.color_of(i) != Some(col)))
        .ok_or_else(|| {
            Error::StrategyPrecondition("no unused color left for the scripted reply".into())
        })?;
    state.check_move(target, fresh)?;
    Ok((target, fresh))
}

/// Alice's strategy for the total coloring game on K3 + K1 with 3 colors:
/// open on the isolated vertex, then mirror Bob by coloring the unique
/// object non-incident with his last move in the same color. Every pair
/// of the triangle's objects ends up monochromatic and the graph completes.
pub fn scripted_alice_k3k1(state: &ColoringState<'_>) -> Result<(u32, u8)> {
    let c = state.conflict();
    let isolated = match (c.mode(), triangle_plus_isolated(c.source())) {
        (ConflictMode::Total, Some(v)) => v,
        _ => {
            return Err(Error::StrategyPrecondition(
                "this script plays the total coloring game on K3 plus an isolated vertex".into(),
            ))
        }
    };
    if state.k() != 3 {
        return Err(Error::StrategyPrecondition(format!(
            "this script is built for 3 colors, game has {}",
            state.k()
        )));
    }
    if state.to_move() != Player::Alice {
        return Err(Error::StrategyPrecondition("not Alice's turn".into()));
    }
    if state.history().is_empty() {
        return Ok((isolated, 0));
    }
    let &(bob_obj, bob_color) = state.history().last().expect("history checked non-empty");
    if bob_obj == isolated {
        return Err(Error::StrategyPrecondition(
            "opponent colored the isolated vertex; the mirror has no target".into(),
        ));
    }
    let target = antipode(c, bob_obj, Some(isolated))?;
    state.check_move(target, bob_color)?;
    Ok((target, bob_color))
}

/// [`scripted_bob_k3`] as a match-playable strategy.
#[derive(Clone, Default)]
pub struct ScriptedBobK3;

impl ColoringStrategy for ScriptedBobK3 {
    fn name(&self) -> String {
        "scripted-bob-k3".into()
    }

    fn choose(&mut self, state: &ColoringState<'_>) -> Result<(u32, u8)> {
        scripted_bob_k3(state)
    }

    fn clone_box(&self) -> Box<dyn ColoringStrategy> {
        Box::new(self.clone())
    }
}

/// [`scripted_alice_k3k1`] as a match-playable strategy.
#[derive(Clone, Default)]
pub struct ScriptedAliceK3K1;

impl ColoringStrategy for ScriptedAliceK3K1 {
    fn name(&self) -> String {
        "scripted-alice-k3k1".into()
    }

    fn choose(&mut self, state: &ColoringState<'_>) -> Result<(u32, u8)> {
        scripted_alice_k3k1(state)
    }

    fn clone_box(&self) -> Box<dyn ColoringStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::total_graph;

    #[test]
    fn bob_answers_antipodally_with_fresh_colors() {
        let t = total_graph(&families::complete(3).unwrap());
        // Alice colors vertex 0 with color 0; the antipode is edge {1,2}
        // (flat 5) and the second color is 1.
        let s = ColoringState::new(&t, 4).apply_color(0, 0).unwrap();
        assert_eq!(scripted_bob_k3(&s).unwrap(), (5, 1));
        // Alice then colors vertex 1 with color 2; Bob answers on edge
        // {0,2} (flat 4) with the last available color 3.
        let s = s.apply_color(5, 1).unwrap().apply_color(1, 2).unwrap();
        assert_eq!(scripted_bob_k3(&s).unwrap(), (4, 3));
    }

    #[test]
    fn bob_script_rejects_foreign_games() {
        let p3 = total_graph(&families::path(3).unwrap());
        let s = ColoringState::new(&p3, 4).apply_color(0, 0).unwrap();
        assert!(scripted_bob_k3(&s).is_err());
        let t = total_graph(&families::complete(3).unwrap());
        // wrong color count
        let s = ColoringState::new(&t, 5).apply_color(0, 0).unwrap();
        assert!(scripted_bob_k3(&s).is_err());
        // no Alice move yet
        let s = ColoringState::new(&t, 4);
        assert!(scripted_bob_k3(&s).is_err());
    }

    #[test]
    fn alice_opens_on_the_isolated_vertex() {
        let g = families::generate("union:complete:3,complete:1", 64).unwrap();
        let t = total_graph(&g);
        let s = ColoringState::new(&t, 3);
        assert_eq!(scripted_alice_k3k1(&s).unwrap(), (3, 0));
    }

    #[test]
    fn alice_mirrors_bob_with_the_same_color() {
        let g = families::generate("union:complete:3,complete:1", 64).unwrap();
        let t = total_graph(&g);
        let s = ColoringState::new(&t, 3).apply_color(3, 0).unwrap();
        // Bob colors vertex 0 with color 2; the mirror is edge {1,2}
        // (flat 6) in color 2.
        let s = s.apply_color(0, 2).unwrap();
        assert_eq!(scripted_alice_k3k1(&s).unwrap(), (6, 2));
        // Bob colors edge {0,1} (flat 4) with color 1; mirror is vertex 2.
        let s = s.apply_color(6, 2).unwrap().apply_color(4, 1).unwrap();
        assert_eq!(scripted_alice_k3k1(&s).unwrap(), (2, 1));
    }

    #[test]
    fn alice_script_rejects_foreign_games() {
        let p3 = total_graph(&families::path(3).unwrap());
        assert!(scripted_alice_k3k1(&ColoringState::new(&p3, 3)).is_err());
        let g = families::generate("union:complete:3,complete:1", 64).unwrap();
        let t = total_graph(&g);
        assert!(scripted_alice_k3k1(&ColoringState::new(&t, 4)).is_err());
    }
}
