//! The public dispute arena and the extension step of the protocol.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use super::case::PreparedCase;
use crate::agent::{concealment_ratio, ConcealmentLedger};
use crate::argumentation::{
    attacks, grounded_labelling, subject_accepted_with, ArgHash, Argument, ArgumentGraph,
    ContentId, GroundedLabelling, Label, Side,
};
use crate::error::{Error, Result};

/// Index of a participant within one dispute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(pub u32);

/// An agent taking part in a dispute and the knowledge base it argues from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Participant {
    pub name: String,
    pub side: Side,
    pub kb_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub actor: AgentId,
    pub added_arguments: Vec<Argument>,
    /// Content used by this move that the actor had not revealed before.
    pub revealed_content: Vec<ContentId>,
    pub turn_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Running,
    Finished { winner: Side, forfeited_by: Side },
}

#[derive(Clone, Debug)]
pub struct DisputeState {
    case: Arc<PreparedCase>,
    participants: Vec<Participant>,
    graph: ArgumentGraph,
    introduced_by: Vec<AgentId>,
    labels: GroundedLabelling,
    turn: Side,
    move_log: Vec<MoveRecord>,
    status: Status,
    ledgers: Vec<ConcealmentLedger>,
}

impl DisputeState {
    /// Fresh dispute: empty board, proponent to move, everything concealed.
    pub fn new(case: Arc<PreparedCase>, participants: Vec<Participant>) -> Result<Self> {
        for side in [Side::Proponent, Side::Opponent] {
            if !participants.iter().any(|p| p.side == side) {
                return Err(Error::invalid(format!("no {side} participant")));
            }
        }
        let ledgers = participants
            .iter()
            .map(|p| {
                let kbs = case.case().kbs(p.side);
                kbs.get(p.kb_index)
                    .map(ConcealmentLedger::new)
                    .ok_or_else(|| {
                        Error::invalid(format!(
                            "agent `{}` refers to {} knowledge base {} but the case has {}",
                            p.name,
                            p.side,
                            p.kb_index,
                            kbs.len()
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = ArgumentGraph::new();
        let labels = grounded_labelling(&graph);
        Ok(DisputeState {
            case,
            participants,
            graph,
            introduced_by: Vec::new(),
            labels,
            turn: Side::Proponent,
            move_log: Vec::new(),
            status: Status::Running,
            ledgers,
        })
    }

    pub fn case(&self) -> &Arc<PreparedCase> {
        &self.case
    }

    pub fn participants(&self) -> &[Participant] {
        &self.participants
    }

    pub fn participant(&self, id: AgentId) -> &Participant {
        &self.participants[id.0 as usize]
    }

    pub fn graph(&self) -> &ArgumentGraph {
        &self.graph
    }

    /// Grounded labelling of the current graph.
    pub fn labels(&self) -> &GroundedLabelling {
        &self.labels
    }

    /// Agent that put graph node `node` on the board.
    pub fn introduced_by(&self, node: usize) -> AgentId {
        self.introduced_by[node]
    }

    pub fn turn(&self) -> Side {
        self.turn
    }

    pub fn move_log(&self) -> &[MoveRecord] {
        &self.move_log
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn ledger(&self, id: AgentId) -> &ConcealmentLedger {
        &self.ledgers[id.0 as usize]
    }

    pub fn concealment(&self, id: AgentId) -> f64 {
        concealment_ratio(self.ledger(id))
    }

    pub fn winner(&self) -> Option<Side> {
        match self.status {
            Status::Finished { winner, .. } => Some(winner),
            Status::Running => None,
        }
    }

    fn has_subject_argument(&self) -> bool {
        let subject = self.case.subject();
        (0..self.graph.len()).any(|i| {
            self.graph.owner(i) == Side::Proponent && self.graph.nodes()[i].conclusion() == subject
        })
    }

    /// Whether `candidate` would be a useful addition for `side` right now.
    pub fn is_useful(&self, side: Side, candidate: &Argument) -> bool {
        if self.graph.contains(candidate) {
            return false;
        }
        if side == Side::Proponent && !self.has_subject_argument() {
            return candidate.conclusion() == self.case.subject();
        }
        let contraries = self.case.contraries();
        (0..self.graph.len()).any(|i| {
            self.graph.owner(i) != side
                && self.labels.label(i) != Label::Out
                && attacks(candidate, &self.graph.nodes()[i], contraries)
        })
    }

    /// Candidates that open the dispute on the subject (proponent, empty
    /// board) or attack an opposing argument that is currently IN or UNDEC.
    pub fn useful_arguments<'a>(
        &self,
        side: Side,
        candidates: impl IntoIterator<Item = &'a Argument>,
    ) -> Vec<Argument> {
        let mut seen = HashSet::new();
        candidates
            .into_iter()
            .filter(|a| self.is_useful(side, a) && seen.insert(a.hash()))
            .cloned()
            .collect()
    }

    /// Adds `arguments` for `actor`, updates attacks, labels and the actor's
    /// ledger, and passes the turn to the other side.
    pub fn extend(&mut self, actor: AgentId, arguments: Vec<Argument>) -> Result<&MoveRecord> {
        let participant = self
            .participants
            .get(actor.0 as usize)
            .ok_or_else(|| Error::IllegalMove(format!("unknown agent {}", actor.0)))?
            .clone();
        let violation = |argument: ArgHash, reason: &'static str| Error::ProtocolViolation {
            agent: participant.name.clone(),
            argument,
            reason,
        };
        if let Status::Finished { .. } = self.status {
            return Err(Error::IllegalMove(format!(
                "agent `{}` moved after the dispute finished",
                participant.name
            )));
        }
        if participant.side != self.turn {
            return Err(Error::IllegalMove(format!(
                "agent `{}` moved out of turn",
                participant.name
            )));
        }
        if arguments.is_empty() {
            return Err(Error::IllegalMove(format!(
                "agent `{}` made an empty move",
                participant.name
            )));
        }
        let pool = &self.case.pools(participant.side)[participant.kb_index];
        let mut in_move = HashSet::new();
        for a in &arguments {
            if !in_move.insert(a.hash()) {
                return Err(violation(a.hash(), "argument repeated within a move"));
            }
            if !pool.contains(a.hash()) {
                return Err(violation(
                    a.hash(),
                    "argument not constructible from own knowledge base",
                ));
            }
            if self.graph.contains(a) {
                return Err(violation(a.hash(), "argument already in the dispute"));
            }
            if !self.is_useful(participant.side, a) {
                return Err(violation(a.hash(), "argument is not useful"));
            }
        }

        let case = Arc::clone(&self.case);
        for a in &arguments {
            self.graph
                .add(a.clone(), participant.side, case.contraries());
            self.introduced_by.push(actor);
        }
        self.labels = grounded_labelling(&self.graph);
        let revealed = self.ledgers[actor.0 as usize]
            .reveal(arguments.iter().flat_map(|a| a.content().iter()));
        self.move_log.push(MoveRecord {
            actor,
            added_arguments: arguments,
            revealed_content: revealed,
            turn_index: self.move_log.len(),
        });
        self.turn = self.turn.other();
        Ok(self.move_log.last().expect("just pushed"))
    }

    /// Ends the dispute with `side` unable to extend it.
    ///
    /// A proponent forfeit loses outright; after an opponent forfeit the
    /// subject is evaluated under grounded semantics.
    pub fn forfeit(&mut self, side: Side) -> Result<Side> {
        if let Status::Finished { .. } = self.status {
            return Err(Error::IllegalMove(
                "forfeit after the dispute finished".into(),
            ));
        }
        if side != self.turn {
            return Err(Error::IllegalMove(format!("{side} forfeited out of turn")));
        }
        let winner = match side {
            Side::Proponent => Side::Opponent,
            Side::Opponent => {
                if subject_accepted_with(&self.graph, &self.labels, self.case.subject()) {
                    Side::Proponent
                } else {
                    Side::Opponent
                }
            }
        };
        self.status = Status::Finished {
            winner,
            forfeited_by: side,
        };
        Ok(winner)
    }

    /// Rebuilds a state by replaying `log` (actor, argument hashes per move).
    /// When `finished` is set, the side to move after the log forfeits.
    pub fn replay(
        case: Arc<PreparedCase>,
        participants: Vec<Participant>,
        log: &[(AgentId, Vec<ArgHash>)],
        finished: bool,
    ) -> Result<Self> {
        let mut state = DisputeState::new(case, participants)?;
        for (actor, hashes) in log {
            let p = state
                .participants
                .get(actor.0 as usize)
                .ok_or_else(|| Error::invalid(format!("unknown agent {} in log", actor.0)))?;
            let pool = &state.case.pools(p.side)[p.kb_index];
            let args = hashes
                .iter()
                .map(|h| {
                    pool.find(*h).cloned().ok_or_else(|| {
                        Error::invalid(format!(
                            "argument {h} is not in the knowledge base of `{}`",
                            p.name
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            state.extend(*actor, args)?;
        }
        if finished {
            let side = state.turn;
            state.forfeit(side)?;
        }
        Ok(state)
    }

    /// Move log as text, one move per line:
    /// `<turn> <actor> <hash,hash,...> <content,content,...|->`.
    pub fn trace(&self) -> String {
        let vocab = self.case.vocabulary();
        let mut out = String::new();
        for m in &self.move_log {
            let hashes: Vec<String> = m
                .added_arguments
                .iter()
                .map(|a| a.hash().to_string())
                .collect();
            let content: Vec<String> = m
                .revealed_content
                .iter()
                .map(|c| vocab.content_name(*c))
                .collect();
            let content = if content.is_empty() {
                "-".to_string()
            } else {
                content.join(",")
            };
            let _ = writeln!(
                out,
                "{} {} {} {}",
                m.turn_index,
                self.participant(m.actor).name,
                hashes.join(","),
                content
            );
        }
        out
    }
}
