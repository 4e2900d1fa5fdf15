use std::collections::BTreeSet;

use crate::argumentation::{ContentId, KnowledgeBase, RuleId, Statement};

/// Tracks which of an agent's premises and rules are still concealed.
///
/// Starts with everything concealed and only shrinks, when the agent itself
/// uses content in a move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcealmentLedger {
    concealed_premises: BTreeSet<Statement>,
    concealed_rules: BTreeSet<RuleId>,
    total_premises: usize,
    total_rules: usize,
}

impl ConcealmentLedger {
    pub fn new(kb: &KnowledgeBase) -> Self {
        ConcealmentLedger {
            concealed_premises: kb.premises().iter().map(|p| p.statement).collect(),
            concealed_rules: kb.rules().iter().map(|r| r.id()).collect(),
            total_premises: kb.premises().len(),
            total_rules: kb.rules().len(),
        }
    }

    /// Marks `content` as used. Returns the items that were concealed until now.
    pub fn reveal<'a>(
        &mut self,
        content: impl IntoIterator<Item = &'a ContentId>,
    ) -> Vec<ContentId> {
        let mut newly = Vec::new();
        for c in content {
            let removed = match c {
                ContentId::Premise(s) => self.concealed_premises.remove(s),
                ContentId::Rule(r) => self.concealed_rules.remove(r),
            };
            if removed {
                newly.push(*c);
            }
        }
        newly.sort_unstable();
        newly
    }

    pub fn is_concealed(&self, c: ContentId) -> bool {
        match c {
            ContentId::Premise(s) => self.concealed_premises.contains(&s),
            ContentId::Rule(r) => self.concealed_rules.contains(&r),
        }
    }

    pub fn concealed_premises(&self) -> &BTreeSet<Statement> {
        &self.concealed_premises
    }

    pub fn concealed_rules(&self) -> &BTreeSet<RuleId> {
        &self.concealed_rules
    }

    pub fn total(&self) -> usize {
        self.total_premises + self.total_rules
    }

    pub fn concealed(&self) -> usize {
        self.concealed_premises.len() + self.concealed_rules.len()
    }
}

/// Fraction of the agent's content still concealed; 1.0 for an empty KB.
pub fn concealment_ratio(ledger: &ConcealmentLedger) -> f64 {
    if ledger.total() == 0 {
        return 1.0;
    }
    ledger.concealed() as f64 / ledger.total() as f64
}
