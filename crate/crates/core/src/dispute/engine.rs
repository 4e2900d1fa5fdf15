//! Runs a full dispute: teams take turns extending until one side forfeits.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::case::PreparedCase;
use super::state::{AgentId, DisputeState, Participant, Status};
use crate::agent::{build_oskb, decide_drop, select_move, Agent, Decision, Oskb, PrivacyBehavior};
use crate::argumentation::{ContentId, Side};
use crate::error::{Error, Result};
use crate::seed::rng_from;

/// Declaration of one agent: its name, behavior and knowledge base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentSpec {
    pub name: String,
    pub behavior: PrivacyBehavior,
    /// Knowledge base on the agent's side; defaults to member index modulo
    /// the number of knowledge bases.
    pub kb_index: Option<usize>,
    /// Content ordered from least to most sensitive; random when absent.
    pub preference_order: Option<Vec<ContentId>>,
}

impl AgentSpec {
    pub fn new(name: impl Into<String>, behavior: PrivacyBehavior) -> Self {
        AgentSpec {
            name: name.into(),
            behavior,
            kb_index: None,
            preference_order: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Team {
    side: Side,
    members: Vec<AgentSpec>,
}

impl Team {
    pub fn new(side: Side, members: Vec<AgentSpec>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid(format!("{side} team has no members")));
        }
        Ok(Team { side, members })
    }

    pub fn solo(side: Side, member: AgentSpec) -> Self {
        Team {
            side,
            members: vec![member],
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn members(&self) -> &[AgentSpec] {
        &self.members
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Teams {
    pub proponent: Team,
    pub opponent: Team,
}

impl Teams {
    pub fn new(proponent: Team, opponent: Team) -> Result<Self> {
        if proponent.side != Side::Proponent || opponent.side != Side::Opponent {
            return Err(Error::invalid("teams are assigned to the wrong sides"));
        }
        Ok(Teams {
            proponent,
            opponent,
        })
    }

    /// Single-agent teams.
    pub fn duel(proponent: AgentSpec, opponent: AgentSpec) -> Self {
        Teams {
            proponent: Team::solo(Side::Proponent, proponent),
            opponent: Team::solo(Side::Opponent, opponent),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Maximum number of extensions; defaults to 10 x total content items.
    pub turn_ceiling: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct DisputeOutcome {
    pub state: DisputeState,
    pub winner: Side,
    pub forfeited_by: Side,
    /// Final concealment ratio per participant, indexed by [`AgentId`].
    pub concealment: Vec<f64>,
}

impl DisputeOutcome {
    /// Outcome of a finished dispute state.
    pub fn from_state(state: DisputeState) -> Result<Self> {
        let Status::Finished {
            winner,
            forfeited_by,
        } = state.status()
        else {
            return Err(Error::invalid(format!(
                "dispute `{}` has not finished",
                state.case().id()
            )));
        };
        let concealment = (0..state.participants().len())
            .map(|i| state.concealment(AgentId(i as u32)))
            .collect();
        Ok(DisputeOutcome {
            state,
            winner,
            forfeited_by,
            concealment,
        })
    }

    pub fn case_id(&self) -> &str {
        self.state.case().id()
    }

    pub fn participants(&self) -> &[Participant] {
        self.state.participants()
    }
}

/// Plays the dispute to completion.
///
/// The proponent team moves first. On each turn the acting team polls its
/// members in rotation, starting after the member that moved last; the first
/// member that produces a move extends the dispute. A member with no useful
/// argument in its unlocked levels rolls to drop a level and retries, and
/// counts as unable when it declines. When nobody can move the team forfeits.
///
/// Every agent draws from its own stream derived from `(seed, agent index)`.
pub fn run_dispute(
    case: &Arc<PreparedCase>,
    teams: &Teams,
    seed: u64,
    options: EngineOptions,
) -> Result<DisputeOutcome> {
    let mut participants = Vec::new();
    let mut specs = Vec::new();
    for team in [&teams.proponent, &teams.opponent] {
        let n_kbs = case.case().kbs(team.side).len();
        for (i, m) in team.members.iter().enumerate() {
            let kb_index = m.kb_index.unwrap_or(i % n_kbs.max(1));
            participants.push(Participant {
                name: m.name.clone(),
                side: team.side,
                kb_index,
            });
            specs.push(m);
        }
    }
    let mut state = DisputeState::new(Arc::clone(case), participants.clone())?;

    let mut agents = Vec::with_capacity(specs.len());
    let mut rngs: Vec<ChaCha8Rng> = Vec::with_capacity(specs.len());
    for (i, (spec, p)) in specs.iter().zip(&participants).enumerate() {
        let mut rng = rng_from(&[seed, i as u64]);
        let kb = case.kb(p.side, p.kb_index);
        let pool = Arc::clone(&case.pools(p.side)[p.kb_index].arguments);
        let oskb = if kb.is_empty() {
            Oskb::empty()
        } else {
            build_oskb(
                kb,
                &pool,
                spec.behavior.division,
                spec.preference_order.as_deref(),
                &mut rng,
            )?
        };
        agents.push(Agent::new(
            AgentId(i as u32),
            p.side,
            spec.behavior,
            oskb,
            pool,
        ));
        rngs.push(rng);
    }

    let members = |side: Side| -> Vec<usize> {
        (0..participants.len())
            .filter(|&i| participants[i].side == side)
            .collect()
    };
    let rosters = [members(Side::Proponent), members(Side::Opponent)];
    let mut next_start = [0usize; 2];
    let ceiling = options
        .turn_ceiling
        .unwrap_or(10 * case.case().content_len());

    loop {
        let side = state.turn();
        let slot = side as usize;
        let roster = &rosters[slot];
        let mut moved = false;
        for k in 0..roster.len() {
            let pos = (next_start[slot] + k) % roster.len();
            let idx = roster[pos];
            loop {
                match select_move(&agents[idx], &state, &mut rngs[idx]) {
                    Decision::Move(args) => {
                        state.extend(AgentId(idx as u32), args)?;
                        moved = true;
                    }
                    Decision::RequestDrop => {
                        if decide_drop(agents[idx].behavior.theta, &mut rngs[idx]) {
                            agents[idx].oskb.drop_level();
                            continue;
                        }
                    }
                    Decision::Pass => {}
                }
                break;
            }
            if moved {
                next_start[slot] = (pos + 1) % roster.len();
                break;
            }
        }
        if !moved {
            state.forfeit(side)?;
            return DisputeOutcome::from_state(state);
        }
        if state.move_log().len() > ceiling {
            return Err(Error::EngineInvariant(format!(
                "dispute `{}` exceeded the turn ceiling of {ceiling}",
                case.id()
            )));
        }
    }
}
