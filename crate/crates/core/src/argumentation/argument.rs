//! Argument trees, forward-chaining construction, weak points and attacks.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::kb::{
    ContentId, ContraryRelation, KnowledgeBase, Premise, PremiseKind, Rule, RuleKind, Statement,
    Vocabulary,
};
use crate::error::{Error, Result};

pub const DEFAULT_ARGUMENT_BUDGET: usize = 100_000;

/// Structural hash of an argument tree. Equal hashes mean equal arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArgHash(pub u64);

impl fmt::Display for ArgHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl std::str::FromStr for ArgHash {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        u64::from_str_radix(s, 16).map(ArgHash)
    }
}

#[derive(Debug)]
struct Node {
    hash: ArgHash,
    conclusion: Statement,
    top_rule: Option<Rule>,
    premise: Option<Premise>,
    subarguments: Vec<Argument>,
    /// Sorted, deduplicated premises and rules used anywhere in the tree.
    content: Vec<ContentId>,
    /// Sorted, deduplicated statements at weak-point positions.
    weak_statements: Vec<Statement>,
    /// Sorted statements concluded anywhere in the tree.
    statements: Vec<Statement>,
}

/// An immutable argument tree, cheap to clone.
#[derive(Clone)]
pub struct Argument(Arc<Node>);

impl PartialEq for Argument {
    fn eq(&self, other: &Self) -> bool {
        self.0.hash == other.0.hash
    }
}

impl Eq for Argument {}

impl std::hash::Hash for Argument {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state)
    }
}

impl fmt::Debug for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Argument({} => {})", self.0.hash, self.0.conclusion)
    }
}

/// Path from the root to a subargument; empty is the root itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(pub Vec<u16>);

impl Position {
    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

fn sorted_union<T: Ord + Copy>(parts: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = parts.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl Argument {
    /// Atomic argument consisting of a single premise.
    pub fn atomic(premise: Premise) -> Self {
        let mut h = Sha256::new();
        h.update(b"P");
        h.update(premise.statement.0.to_le_bytes());
        h.update([matches!(premise.kind, PremiseKind::Ordinary) as u8]);
        let weak = match premise.kind {
            PremiseKind::Ordinary => vec![premise.statement],
            PremiseKind::Necessary => vec![],
        };
        Argument(Arc::new(Node {
            hash: finish(h),
            conclusion: premise.statement,
            top_rule: None,
            premise: Some(premise),
            subarguments: Vec::new(),
            content: vec![ContentId::Premise(premise.statement)],
            weak_statements: weak,
            statements: vec![premise.statement],
        }))
    }

    /// Applies `rule` to subarguments concluding its antecedents, in order.
    pub fn compose(rule: &Rule, subarguments: Vec<Argument>) -> Result<Self> {
        if subarguments.len() != rule.antecedents().len()
            || subarguments
                .iter()
                .zip(rule.antecedents())
                .any(|(a, s)| a.conclusion() != *s)
        {
            return Err(Error::invalid(format!(
                "subarguments do not match the antecedents of rule {}",
                rule.id().0
            )));
        }
        if subarguments
            .iter()
            .any(|a| a.0.statements.binary_search(&rule.consequent()).is_ok())
        {
            return Err(Error::invalid(format!(
                "rule {} would repeat statement {} along a branch",
                rule.id().0,
                rule.consequent()
            )));
        }
        let mut h = Sha256::new();
        h.update(b"R");
        h.update(rule.id().0.to_le_bytes());
        h.update(rule.consequent().0.to_le_bytes());
        h.update([matches!(rule.kind(), RuleKind::Defeasible) as u8]);
        for s in &subarguments {
            h.update(s.0.hash.0.to_le_bytes());
        }
        let content = sorted_union(
            subarguments
                .iter()
                .flat_map(|a| a.0.content.iter().copied())
                .chain(std::iter::once(ContentId::Rule(rule.id()))),
        );
        let own_weak = (rule.kind() == RuleKind::Defeasible).then_some(rule.consequent());
        let weak_statements = sorted_union(
            subarguments
                .iter()
                .flat_map(|a| a.0.weak_statements.iter().copied())
                .chain(own_weak),
        );
        let statements = sorted_union(
            subarguments
                .iter()
                .flat_map(|a| a.0.statements.iter().copied())
                .chain(std::iter::once(rule.consequent())),
        );
        Ok(Argument(Arc::new(Node {
            hash: finish(h),
            conclusion: rule.consequent(),
            top_rule: Some(rule.clone()),
            premise: None,
            subarguments,
            content,
            weak_statements,
            statements,
        })))
    }

    pub fn hash(&self) -> ArgHash {
        self.0.hash
    }

    pub fn conclusion(&self) -> Statement {
        self.0.conclusion
    }

    pub fn top_rule(&self) -> Option<&Rule> {
        self.0.top_rule.as_ref()
    }

    pub fn premise_leaf(&self) -> Option<&Premise> {
        self.0.premise.as_ref()
    }

    pub fn subarguments(&self) -> &[Argument] {
        &self.0.subarguments
    }

    /// Sorted set of premises and rules appearing in the tree.
    pub fn content(&self) -> &[ContentId] {
        &self.0.content
    }

    pub fn size(&self) -> usize {
        self.0.content.len()
    }

    /// Statements sitting at weak-point positions, sorted and deduplicated.
    pub fn weak_statements(&self) -> &[Statement] {
        &self.0.weak_statements
    }

    /// Looks up the subargument at `pos`.
    pub fn at(&self, pos: &Position) -> Option<&Argument> {
        let mut cur = self;
        for &i in &pos.0 {
            cur = cur.0.subarguments.get(i as usize)?;
        }
        Some(cur)
    }

    /// Every subargument (including the argument itself) in depth-first order.
    pub fn subtree(&self) -> Vec<(Position, &Argument)> {
        let mut out = Vec::new();
        let mut stack = vec![(Position::default(), self)];
        while let Some((pos, arg)) = stack.pop() {
            for (i, sub) in arg.0.subarguments.iter().enumerate().rev() {
                let mut p = pos.0.clone();
                p.push(i as u16);
                stack.push((Position(p), sub));
            }
            out.push((pos, arg));
        }
        out
    }

    /// Human-readable rendering such as `(a, b =>d c)`.
    pub fn render(&self, vocab: &Vocabulary) -> String {
        match (&self.0.premise, &self.0.top_rule) {
            (Some(p), _) => {
                let mark = if p.kind == PremiseKind::Necessary {
                    "!"
                } else {
                    ""
                };
                format!("{}{}", mark, vocab.statement_name(p.statement))
            }
            (None, Some(r)) => {
                let subs: Vec<String> = self
                    .0
                    .subarguments
                    .iter()
                    .map(|a| a.render(vocab))
                    .collect();
                let arrow = if r.kind() == RuleKind::Defeasible {
                    "=>d"
                } else {
                    "->"
                };
                format!(
                    "({} {} {})",
                    subs.join(", "),
                    arrow,
                    vocab.statement_name(r.consequent())
                )
            }
            (None, None) => unreachable!("argument without premise or rule"),
        }
    }
}

fn finish(h: Sha256) -> ArgHash {
    let digest = h.finalize();
    let mut b = [0u8; 8];
    b.copy_from_slice(&digest[..8]);
    ArgHash(u64::from_be_bytes(b))
}

/// Weak points: ordinary-premise leaves and consequents of defeasible top rules.
pub fn weak_points(arg: &Argument) -> Vec<(Position, Statement)> {
    arg.subtree()
        .into_iter()
        .filter_map(|(pos, a)| {
            let weak = match (&a.0.premise, &a.0.top_rule) {
                (Some(p), _) => p.kind == PremiseKind::Ordinary,
                (None, Some(r)) => r.kind() == RuleKind::Defeasible,
                _ => false,
            };
            weak.then_some((pos, a.conclusion()))
        })
        .collect()
}

/// `attacker` attacks `target` iff its conclusion is a contrary of one of the
/// target's weak-point statements.
pub fn attacks(attacker: &Argument, target: &Argument, contraries: &ContraryRelation) -> bool {
    let c = attacker.conclusion();
    target
        .weak_statements()
        .iter()
        .any(|w| contraries.contains(c, *w))
}

/// Every argument derivable from `kb` by forward chaining, in derivation order.
pub fn construct_arguments(kb: &KnowledgeBase, vocab: &Vocabulary) -> Result<Vec<Argument>> {
    construct_arguments_with_budget(kb, vocab, DEFAULT_ARGUMENT_BUDGET)
}

pub fn construct_arguments_with_budget(
    kb: &KnowledgeBase,
    vocab: &Vocabulary,
    budget: usize,
) -> Result<Vec<Argument>> {
    kb.validate(vocab)?;
    let mut all: Vec<Argument> = Vec::new();
    let mut seen: HashSet<ArgHash> = HashSet::new();
    let mut by_conclusion: BTreeMap<Statement, Vec<Argument>> = BTreeMap::new();

    let mut push = |arg: Argument,
                    all: &mut Vec<Argument>,
                    by_conclusion: &mut BTreeMap<Statement, Vec<Argument>>|
     -> Result<bool> {
        if !seen.insert(arg.hash()) {
            return Ok(false);
        }
        if all.len() >= budget {
            return Err(Error::ResourceLimit { budget });
        }
        by_conclusion
            .entry(arg.conclusion())
            .or_default()
            .push(arg.clone());
        all.push(arg);
        Ok(true)
    };

    for p in kb.premises() {
        push(Argument::atomic(*p), &mut all, &mut by_conclusion)?;
    }

    loop {
        let mut changed = false;
        for rule in kb.rules() {
            let options: Option<Vec<Vec<Argument>>> = rule
                .antecedents()
                .iter()
                .map(|s| by_conclusion.get(s).cloned())
                .collect();
            let Some(options) = options else { continue };
            let mut idx = vec![0usize; options.len()];
            'combos: loop {
                let subs: Vec<Argument> = idx
                    .iter()
                    .zip(&options)
                    .map(|(i, o)| o[*i].clone())
                    .collect();
                if let Ok(arg) = Argument::compose(rule, subs) {
                    changed |= push(arg, &mut all, &mut by_conclusion)?;
                }
                // odometer increment
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < options[k].len() {
                        continue 'combos;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(all)
}
