//! Dispute histories and their TOML persistence. Only inputs and move logs
//! are stored; winners, labels and ledgers come from replay on load.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::argumentation::{ArgHash, Side};
use crate::dataset::{check_header, field_error, toml_error, CaseDoc, FORMAT_VERSION};
use crate::dispute::{AgentId, DisputeOutcome, DisputeState, Participant};
use crate::error::{Error, Result};

pub const HISTORY_FORMAT: &str = "privarg-history";

/// One finished dispute seen from the agent the history belongs to.
#[derive(Clone, Debug)]
pub struct HistoryEntry {
    pub outcome: DisputeOutcome,
    pub agent: AgentId,
}

impl HistoryEntry {
    pub fn side(&self) -> Side {
        self.outcome.state.participant(self.agent).side
    }

    pub fn won(&self) -> bool {
        self.outcome.winner == self.side()
    }

    pub fn concealment(&self) -> f64 {
        self.outcome.concealment[self.agent.0 as usize]
    }
}

/// Append-only record of one agent's disputes.
#[derive(Clone, Debug, Default)]
pub struct DisputeHistory {
    entries: Vec<HistoryEntry>,
}

impl DisputeHistory {
    pub fn new() -> Self {
        DisputeHistory::default()
    }

    pub fn push(&mut self, outcome: DisputeOutcome, agent: AgentId) -> Result<()> {
        if agent.0 as usize >= outcome.participants().len() {
            return Err(Error::invalid(format!(
                "agent {} is not a participant of `{}`",
                agent.0,
                outcome.case_id()
            )));
        }
        self.entries.push(HistoryEntry { outcome, agent });
        Ok(())
    }

    pub fn entries(&self) -> &[HistoryEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_toml(&self) -> String {
        let doc = HistoryDoc {
            format: HISTORY_FORMAT.to_string(),
            version: FORMAT_VERSION,
            disputes: self
                .entries
                .iter()
                .map(|e| {
                    let state = &e.outcome.state;
                    EntryDoc {
                        agent: e.agent.0,
                        participants: state
                            .participants()
                            .iter()
                            .map(|p| ParticipantDoc {
                                name: p.name.clone(),
                                side: p.side,
                                kb_index: p.kb_index,
                            })
                            .collect(),
                        moves: state
                            .move_log()
                            .iter()
                            .map(|m| MoveDoc {
                                actor: m.actor.0,
                                arguments: m
                                    .added_arguments
                                    .iter()
                                    .map(|a| a.hash().to_string())
                                    .collect(),
                            })
                            .collect(),
                        case: CaseDoc::from_case(state.case().case()),
                    }
                })
                .collect(),
        };
        toml::to_string(&doc).expect("history documents always serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: HistoryDoc = toml::from_str(text).map_err(|e| toml_error(text, e))?;
        check_header(&doc.format, doc.version, HISTORY_FORMAT)?;
        let mut history = DisputeHistory::new();
        for (i, d) in doc.disputes.into_iter().enumerate() {
            let at = format!("disputes[{i}]");
            let case = d.case.into_case(&format!("{at}.case"))?;
            let case = Arc::new(
                case.prepare()
                    .map_err(|e| field_error(format!("{at}.case"), e.to_string()))?,
            );
            let participants: Vec<Participant> = d
                .participants
                .into_iter()
                .map(|p| Participant {
                    name: p.name,
                    side: p.side,
                    kb_index: p.kb_index,
                })
                .collect();
            let log = d
                .moves
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    let hashes = m
                        .arguments
                        .iter()
                        .map(|h| {
                            h.parse::<ArgHash>().map_err(|_| {
                                field_error(
                                    format!("{at}.moves[{k}]"),
                                    format!("bad argument hash `{h}`"),
                                )
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((AgentId(m.actor), hashes))
                })
                .collect::<Result<Vec<_>>>()?;
            let state = DisputeState::replay(case, participants, &log, true)
                .map_err(|e| field_error(format!("{at}.moves"), e.to_string()))?;
            let outcome = DisputeOutcome::from_state(state)?;
            history
                .push(outcome, AgentId(d.agent))
                .map_err(|e| field_error(format!("{at}.agent"), e.to_string()))?;
        }
        Ok(history)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HistoryDoc {
    format: String,
    version: u32,
    #[serde(default)]
    disputes: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    /// Index into `participants` of the agent the history belongs to.
    agent: u32,
    participants: Vec<ParticipantDoc>,
    #[serde(default)]
    moves: Vec<MoveDoc>,
    case: CaseDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParticipantDoc {
    name: String,
    side: Side,
    kb_index: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveDoc {
    actor: u32,
    arguments: Vec<String>,
}
