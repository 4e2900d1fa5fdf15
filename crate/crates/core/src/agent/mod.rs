//! The concealing agent: behaviors, OSKB levels, the concealment ledger and
//! move selection.

mod behavior;
mod ledger;
mod oskb;
mod select;

pub use behavior::{
    personalize, Dedication, Degree, Division, PrivacyBehavior, Scope, UserProfile, UserType,
};
pub use ledger::{concealment_ratio, ConcealmentLedger};
pub use oskb::{build_oskb, maximal_arguments, Level, Oskb};
pub use select::{apply_scope, decide_drop, select_move, Agent, Decision};
