use std::collections::HashSet;
use std::sync::Arc;

use crate::argumentation::{
    construct_arguments, ArgHash, Argument, ContraryRelation, KnowledgeBase, Side, Statement,
    Vocabulary,
};
use crate::error::{Error, Result};

/// A dispute over `subject` between the knowledge bases of two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisputeCase {
    pub id: String,
    pub vocabulary: Vocabulary,
    pub subject: Statement,
    pub proponent_kbs: Vec<KnowledgeBase>,
    pub opponent_kbs: Vec<KnowledgeBase>,
    pub shared_contraries: ContraryRelation,
}

impl DisputeCase {
    pub fn validate(&self) -> Result<()> {
        if self.proponent_kbs.is_empty() || self.opponent_kbs.is_empty() {
            return Err(Error::invalid(format!(
                "case `{}` needs at least one knowledge base per side",
                self.id
            )));
        }
        if !self.vocabulary.contains_statement(self.subject) {
            return Err(Error::invalid(format!(
                "case `{}`: undeclared subject",
                self.id
            )));
        }
        for kb in self.proponent_kbs.iter().chain(&self.opponent_kbs) {
            kb.validate(&self.vocabulary)?;
        }
        for (a, b) in self.shared_contraries.sorted_pairs() {
            if !self.vocabulary.contains_statement(a) || !self.vocabulary.contains_statement(b) {
                return Err(Error::invalid(format!(
                    "case `{}`: contrary over an undeclared statement",
                    self.id
                )));
            }
        }
        Ok(())
    }

    pub fn kbs(&self, side: Side) -> &[KnowledgeBase] {
        match side {
            Side::Proponent => &self.proponent_kbs,
            Side::Opponent => &self.opponent_kbs,
        }
    }

    /// Total premises and rules over every knowledge base.
    pub fn content_len(&self) -> usize {
        self.proponent_kbs
            .iter()
            .chain(&self.opponent_kbs)
            .map(|kb| kb.content_len())
            .sum()
    }

    /// Validates the case and constructs every knowledge base's arguments once.
    pub fn prepare(self) -> Result<PreparedCase> {
        self.validate()?;
        let mut contraries = self.shared_contraries.clone();
        let mut build = |kbs: &[KnowledgeBase]| -> Result<Vec<ArgumentPool>> {
            kbs.iter()
                .map(|kb| {
                    contraries.extend_from(&kb.contraries);
                    let arguments = construct_arguments(kb, &self.vocabulary)?;
                    let hashes = arguments.iter().map(|a| a.hash()).collect();
                    Ok(ArgumentPool {
                        arguments: arguments.into(),
                        hashes,
                    })
                })
                .collect()
        };
        let proponent = build(&self.proponent_kbs).map_err(|e| e.in_case(&self.id))?;
        let opponent = build(&self.opponent_kbs).map_err(|e| e.in_case(&self.id))?;
        Ok(PreparedCase {
            case: self,
            contraries,
            proponent,
            opponent,
        })
    }
}

/// Every argument constructible from one knowledge base.
#[derive(Debug)]
pub struct ArgumentPool {
    pub arguments: Arc<[Argument]>,
    hashes: HashSet<ArgHash>,
}

impl ArgumentPool {
    pub fn contains(&self, hash: ArgHash) -> bool {
        self.hashes.contains(&hash)
    }

    pub fn find(&self, hash: ArgHash) -> Option<&Argument> {
        self.arguments.iter().find(|a| a.hash() == hash)
    }
}

/// A validated case together with the argument pools of its knowledge bases.
#[derive(Debug)]
pub struct PreparedCase {
    case: DisputeCase,
    contraries: ContraryRelation,
    proponent: Vec<ArgumentPool>,
    opponent: Vec<ArgumentPool>,
}

impl PreparedCase {
    pub fn case(&self) -> &DisputeCase {
        &self.case
    }

    pub fn id(&self) -> &str {
        &self.case.id
    }

    pub fn subject(&self) -> Statement {
        self.case.subject
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.case.vocabulary
    }

    /// Shared contraries together with every knowledge base's own contraries.
    pub fn contraries(&self) -> &ContraryRelation {
        &self.contraries
    }

    pub fn pools(&self, side: Side) -> &[ArgumentPool] {
        match side {
            Side::Proponent => &self.proponent,
            Side::Opponent => &self.opponent,
        }
    }

    pub fn kb(&self, side: Side, index: usize) -> &KnowledgeBase {
        &self.case.kbs(side)[index]
    }
}
