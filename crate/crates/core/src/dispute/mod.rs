//! Turn-based dispute protocol between a proponent team and an opponent team.

mod case;
mod engine;
mod state;

pub use case::{ArgumentPool, DisputeCase, PreparedCase};
pub use engine::{run_dispute, AgentSpec, DisputeOutcome, EngineOptions, Team, Teams};
pub use state::{AgentId, DisputeState, MoveRecord, Participant, Status};
