//! Structured argumentation: knowledge bases, argument construction, attacks
//! and grounded semantics.

mod argument;
mod graph;
mod kb;

pub use argument::{
    attacks, construct_arguments, construct_arguments_with_budget, weak_points, ArgHash, Argument,
    Position, DEFAULT_ARGUMENT_BUDGET,
};
pub use graph::{
    grounded_labelling, grounded_labels, subject_accepted, subject_accepted_with, ArgumentGraph,
    GroundedLabelling, Label, Side,
};
pub use kb::{
    Bias, ContentId, ContraryRelation, KnowledgeBase, Premise, PremiseKind, Rule, RuleId, RuleKind,
    Statement, Vocabulary,
};
