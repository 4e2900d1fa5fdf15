//! Move selection under a privacy behavior, and the dedication drop roll.

use std::cmp::Reverse;
use std::sync::Arc;

use rand::Rng;

use super::behavior::{Dedication, PrivacyBehavior, Scope};
use super::oskb::Oskb;
use crate::argumentation::{Argument, Side};
use crate::dispute::{AgentId, DisputeState};

/// Per-dispute agent state: behavior, OSKB and the arguments it can build.
#[derive(Clone, Debug)]
pub struct Agent {
    pub id: AgentId,
    pub side: Side,
    pub behavior: PrivacyBehavior,
    pub oskb: Oskb,
    pool: Arc<[Argument]>,
    required_level: Vec<Option<usize>>,
}

impl Agent {
    pub fn new(
        id: AgentId,
        side: Side,
        behavior: PrivacyBehavior,
        oskb: Oskb,
        pool: Arc<[Argument]>,
    ) -> Self {
        let required_level = pool.iter().map(|a| oskb.required_level(a)).collect();
        Agent {
            id,
            side,
            behavior,
            oskb,
            pool,
            required_level,
        }
    }

    /// Arguments built only from unlocked levels.
    pub fn available(&self) -> impl Iterator<Item = &Argument> + '_ {
        let unlocked = self.oskb.unlocked_upto();
        self.pool
            .iter()
            .zip(&self.required_level)
            .filter(move |(_, l)| l.is_some_and(|l| l <= unlocked))
            .map(|(a, _)| a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Move(Vec<Argument>),
    RequestDrop,
    Pass,
}

pub fn select_move<R: Rng + ?Sized>(agent: &Agent, state: &DisputeState, rng: &mut R) -> Decision {
    let useful = state.useful_arguments(agent.side, agent.available());
    if useful.is_empty() {
        return if agent.oskb.has_deeper_level() {
            Decision::RequestDrop
        } else {
            Decision::Pass
        };
    }
    Decision::Move(apply_scope(agent.behavior.scope, useful, rng))
}

/// Picks the arguments to play among `useful` (nonempty).
pub fn apply_scope<R: Rng + ?Sized>(
    scope: Scope,
    mut useful: Vec<Argument>,
    rng: &mut R,
) -> Vec<Argument> {
    debug_assert!(!useful.is_empty());
    match scope {
        Scope::All => useful,
        Scope::Shortest => {
            let best = useful
                .iter()
                .min_by_key(|a| (a.size(), a.hash()))
                .expect("nonempty");
            vec![best.clone()]
        }
        Scope::Longest => {
            let best = useful
                .iter()
                .min_by_key(|a| (Reverse(a.size()), a.hash()))
                .expect("nonempty");
            vec![best.clone()]
        }
        Scope::Random => {
            useful.sort_by_key(|a| a.hash());
            let i = rng.random_range(0..useful.len());
            vec![useful.swap_remove(i)]
        }
    }
}

/// Rolls whether the agent drops to its next level: true with chance θ/100.
pub fn decide_drop<R: Rng + ?Sized>(theta: Dedication, rng: &mut R) -> bool {
    rng.random_range(0..100u8) < theta.percent()
}
