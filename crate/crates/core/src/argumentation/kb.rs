//! Statements, premises, rules, contraries and knowledge bases.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Handle for a statement interned in a [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement(pub u32);

/// Handle for a rule name interned in a [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(pub u32);

/// Closed set of statement and rule names for one dispute case.
///
/// Handles are dense indices in declaration order, so two vocabularies built
/// from the same declarations hand out identical handles.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    statements: Vec<String>,
    rules: Vec<String>,
    statement_index: HashMap<String, Statement>,
    rule_index: HashMap<String, RuleId>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements && self.rules == other.rules
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the handle for `name`, declaring it if needed.
    pub fn statement(&mut self, name: &str) -> Statement {
        if let Some(s) = self.statement_index.get(name) {
            return *s;
        }
        let s = Statement(self.statements.len() as u32);
        self.statements.push(name.to_string());
        self.statement_index.insert(name.to_string(), s);
        s
    }

    pub fn rule(&mut self, name: &str) -> RuleId {
        if let Some(r) = self.rule_index.get(name) {
            return *r;
        }
        let r = RuleId(self.rules.len() as u32);
        self.rules.push(name.to_string());
        self.rule_index.insert(name.to_string(), r);
        r
    }

    pub fn lookup_statement(&self, name: &str) -> Option<Statement> {
        self.statement_index.get(name).copied()
    }

    pub fn lookup_rule(&self, name: &str) -> Option<RuleId> {
        self.rule_index.get(name).copied()
    }

    pub fn statement_name(&self, s: Statement) -> &str {
        &self.statements[s.0 as usize]
    }

    pub fn rule_name(&self, r: RuleId) -> &str {
        &self.rules[r.0 as usize]
    }

    pub fn contains_statement(&self, s: Statement) -> bool {
        (s.0 as usize) < self.statements.len()
    }

    pub fn contains_rule(&self, r: RuleId) -> bool {
        (r.0 as usize) < self.rules.len()
    }

    pub fn statement_names(&self) -> &[String] {
        &self.statements
    }

    pub fn rule_names(&self) -> &[String] {
        &self.rules
    }

    /// Printable id for a piece of content: `p:<statement>` or `r:<rule>`.
    pub fn content_name(&self, c: ContentId) -> String {
        match c {
            ContentId::Premise(s) => format!("p:{}", self.statement_name(s)),
            ContentId::Rule(r) => format!("r:{}", self.rule_name(r)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PremiseKind {
    Ordinary,
    Necessary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Strict,
    Defeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Premise {
    pub statement: Statement,
    pub kind: PremiseKind,
}

impl Premise {
    pub fn ordinary(statement: Statement) -> Self {
        Premise {
            statement,
            kind: PremiseKind::Ordinary,
        }
    }

    pub fn necessary(statement: Statement) -> Self {
        Premise {
            statement,
            kind: PremiseKind::Necessary,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    id: RuleId,
    antecedents: Vec<Statement>,
    consequent: Statement,
    kind: RuleKind,
}

impl Rule {
    pub fn new(
        id: RuleId,
        antecedents: Vec<Statement>,
        consequent: Statement,
        kind: RuleKind,
    ) -> Result<Self> {
        if antecedents.is_empty() {
            return Err(Error::invalid(format!("rule {} has no antecedents", id.0)));
        }
        if antecedents.contains(&consequent) {
            return Err(Error::invalid(format!(
                "rule {} has its consequent among its antecedents",
                id.0
            )));
        }
        let distinct: HashSet<_> = antecedents.iter().collect();
        if distinct.len() != antecedents.len() {
            return Err(Error::invalid(format!(
                "rule {} repeats an antecedent",
                id.0
            )));
        }
        Ok(Rule {
            id,
            antecedents,
            consequent,
            kind,
        })
    }

    pub fn strict(id: RuleId, antecedents: Vec<Statement>, consequent: Statement) -> Result<Self> {
        Self::new(id, antecedents, consequent, RuleKind::Strict)
    }

    pub fn defeasible(
        id: RuleId,
        antecedents: Vec<Statement>,
        consequent: Statement,
    ) -> Result<Self> {
        Self::new(id, antecedents, consequent, RuleKind::Defeasible)
    }

    pub fn id(&self) -> RuleId {
        self.id
    }

    pub fn antecedents(&self) -> &[Statement] {
        &self.antecedents
    }

    pub fn consequent(&self) -> Statement {
        self.consequent
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }
}

/// A single piece of knowledge-base content: a premise or a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContentId {
    Premise(Statement),
    Rule(RuleId),
}

/// Directed incompatibility: `(a, b)` means `a` is a contrary of `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContraryRelation {
    pairs: HashSet<(Statement, Statement)>,
}

impl ContraryRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, contrary: Statement, of: Statement) -> Result<()> {
        if contrary == of {
            return Err(Error::invalid(format!(
                "statement {} cannot be its own contrary",
                of.0
            )));
        }
        self.pairs.insert((contrary, of));
        Ok(())
    }

    pub fn contains(&self, contrary: Statement, of: Statement) -> bool {
        self.pairs.contains(&(contrary, of))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in a stable order.
    pub fn sorted_pairs(&self) -> Vec<(Statement, Statement)> {
        let mut v: Vec<_> = self.pairs.iter().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn extend_from(&mut self, other: &ContraryRelation) {
        self.pairs.extend(other.pairs.iter().copied());
    }
}

/// Opaque bias record. Stored and serialized; nothing evaluates it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bias(pub String);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    premises: Vec<Premise>,
    rules: Vec<Rule>,
    pub contraries: ContraryRelation,
    pub biases: Vec<Bias>,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_premise(&mut self, premise: Premise) -> Result<()> {
        if self.premise(premise.statement).is_some() {
            return Err(Error::invalid(format!(
                "premise {} declared twice",
                premise.statement.0
            )));
        }
        self.premises.push(premise);
        Ok(())
    }

    pub fn add_rule(&mut self, rule: Rule) -> Result<()> {
        if self.rule(rule.id).is_some() {
            return Err(Error::invalid(format!("rule {} declared twice", rule.id.0)));
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn premises(&self) -> &[Premise] {
        &self.premises
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn premise(&self, s: Statement) -> Option<&Premise> {
        self.premises.iter().find(|p| p.statement == s)
    }

    pub fn rule(&self, id: RuleId) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Every premise and rule, premises first, in declaration order.
    pub fn content(&self) -> Vec<ContentId> {
        self.premises
            .iter()
            .map(|p| ContentId::Premise(p.statement))
            .chain(self.rules.iter().map(|r| ContentId::Rule(r.id)))
            .collect()
    }

    pub fn content_len(&self) -> usize {
        self.premises.len() + self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content_len() == 0
    }

    /// Checks that every referenced statement and rule is declared in `vocab`.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<()> {
        let check = |s: Statement| {
            if vocab.contains_statement(s) {
                Ok(())
            } else {
                Err(Error::invalid(format!(
                    "undeclared statement handle {}",
                    s.0
                )))
            }
        };
        for p in &self.premises {
            check(p.statement)?;
        }
        for r in &self.rules {
            if !vocab.contains_rule(r.id) {
                return Err(Error::invalid(format!("undeclared rule handle {}", r.id.0)));
            }
            check(r.consequent)?;
            for a in &r.antecedents {
                check(*a)?;
            }
        }
        for (a, b) in self.contraries.sorted_pairs() {
            check(a)?;
            check(b)?;
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}
