//! Random dispute cases shaped as attack trees.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::argumentation::{
    ContraryRelation, KnowledgeBase, Premise, PremiseKind, Rule, RuleKind, Statement, Vocabulary,
};
use crate::dispute::DisputeCase;
use crate::error::{Error, Result};
use crate::seed::rng_from;

/// Most antecedents a generated rule gets.
const MAX_ANTECEDENTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenParams {
    pub dispute_amount: usize,
    /// Maximum number of arguments per dispute.
    pub dispute_size: usize,
    /// Maximum number of premises and rules per argument.
    pub max_argument_size: usize,
    /// Maximum number of attackers per weak point.
    pub max_branches: usize,
    pub seed: u64,
    /// Probability that a generated premise is ordinary.
    pub ordinary_ratio: f64,
    /// Probability that a generated rule is defeasible.
    pub defeasible_ratio: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            dispute_amount: 200,
            dispute_size: 20,
            max_argument_size: 10,
            max_branches: 2,
            seed: 0,
            ordinary_ratio: 0.8,
            defeasible_ratio: 0.8,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("dispute_amount", self.dispute_amount),
            ("dispute_size", self.dispute_size),
            ("max_argument_size", self.max_argument_size),
            ("max_branches", self.max_branches),
        ] {
            if v == 0 {
                return Err(Error::invalid(format!("{name} must be at least 1")));
            }
        }
        for (name, v) in [
            ("ordinary_ratio", self.ordinary_ratio),
            ("defeasible_ratio", self.defeasible_ratio),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub params: GenParams,
    pub cases: Vec<DisputeCase>,
}

impl Dataset {
    /// The first `n` cases (all of them when `n` is larger).
    pub fn truncated(&self, n: usize) -> Dataset {
        Dataset {
            params: self.params.clone(),
            cases: self.cases.iter().take(n).cloned().collect(),
        }
    }
}

/// Case `case_index` of the dataset described by `params`.
pub fn generate_dataset(params: &GenParams) -> Result<Dataset> {
    params.validate()?;
    let cases = (0..params.dispute_amount)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from(&[params.seed, i as u64]);
            generate_dispute(params, &mut rng, i)
        })
        .collect();
    Ok(Dataset {
        params: params.clone(),
        cases,
    })
}

struct Builder<'a, R: Rng + ?Sized> {
    params: &'a GenParams,
    rng: &'a mut R,
    vocab: Vocabulary,
    next_statement: usize,
    next_rule: usize,
}

/// Premises and rules of one generated argument before they are committed.
#[derive(Default)]
struct Draft {
    premises: Vec<Premise>,
    rules: Vec<(Statement, Vec<Statement>, RuleKind)>,
}

impl<R: Rng + ?Sized> Builder<'_, R> {
    fn fresh_statement(&mut self) -> Statement {
        let s = self.vocab.statement(&format!("s{}", self.next_statement));
        self.next_statement += 1;
        s
    }

    /// Drafts an argument of `size` content pieces concluding `conclusion`.
    fn draft(&mut self, size: usize, conclusion: Statement, out: &mut Draft) {
        if size == 1 {
            let kind = if self.rng.random_bool(self.params.ordinary_ratio) {
                PremiseKind::Ordinary
            } else {
                PremiseKind::Necessary
            };
            out.premises.push(Premise {
                statement: conclusion,
                kind,
            });
            return;
        }
        let kind = if self.rng.random_bool(self.params.defeasible_ratio) {
            RuleKind::Defeasible
        } else {
            RuleKind::Strict
        };
        let rest = size - 1;
        let arity = self.rng.random_range(1..=rest.min(MAX_ANTECEDENTS));
        // random composition of `rest` into `arity` positive parts
        let mut cuts: Vec<usize> = rand::seq::index::sample(self.rng, rest - 1, arity - 1)
            .into_iter()
            .map(|c| c + 1)
            .collect();
        cuts.sort_unstable();
        let mut parts = Vec::with_capacity(arity);
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(rest)) {
            parts.push(c - prev);
            prev = c;
        }
        let antecedents: Vec<Statement> = parts.iter().map(|_| self.fresh_statement()).collect();
        out.rules.push((conclusion, antecedents.clone(), kind));
        for (part, a) in parts.into_iter().zip(antecedents) {
            self.draft(part, a, out);
        }
    }

    fn commit(&mut self, draft: Draft, kb: &mut KnowledgeBase) -> Vec<Statement> {
        let mut weak = Vec::new();
        for p in draft.premises {
            if p.kind == PremiseKind::Ordinary {
                weak.push(p.statement);
            }
            kb.add_premise(p).expect("fresh premise");
        }
        for (consequent, antecedents, kind) in draft.rules {
            let id = self.vocab.rule(&format!("r{}", self.next_rule));
            self.next_rule += 1;
            if kind == RuleKind::Defeasible {
                weak.push(consequent);
            }
            kb.add_rule(Rule::new(id, antecedents, consequent, kind).expect("well-formed rule"))
                .expect("fresh rule");
        }
        weak
    }
}

fn draft_has_weak_point(d: &Draft) -> bool {
    d.premises.iter().any(|p| p.kind == PremiseKind::Ordinary)
        || d.rules.iter().any(|r| r.2 == RuleKind::Defeasible)
}

/// Builds one attack tree. The root argument concludes the subject and
/// belongs to the proponent; attackers alternate sides with depth. Each
/// attacker concludes a fresh statement registered as a contrary of the weak
/// point it targets.
pub fn generate_dispute<R: Rng + ?Sized>(
    params: &GenParams,
    rng: &mut R,
    case_index: usize,
) -> DisputeCase {
    let mut b = Builder {
        params,
        rng,
        vocab: Vocabulary::new(),
        next_statement: 0,
        next_rule: 0,
    };
    let mut kbs = [KnowledgeBase::new(), KnowledgeBase::new()];
    let mut contraries = ContraryRelation::new();
    let subject = b.fresh_statement();

    let root_size = b.rng.random_range(1..=params.max_argument_size);
    let mut root = Draft::default();
    b.draft(root_size, subject, &mut root);
    if params.dispute_size >= 2 && !draft_has_weak_point(&root) {
        // the root must be attackable so the opponent has something to do
        match root.rules.first_mut() {
            Some(r) => r.2 = RuleKind::Defeasible,
            None => root.premises[0].kind = PremiseKind::Ordinary,
        }
    }
    let root_weak = b.commit(root, &mut kbs[0]);

    // (weak-point statement, depth of the argument it belongs to)
    let mut frontier: Vec<(Statement, usize)> = root_weak.into_iter().map(|w| (w, 0)).collect();
    let mut count = 1;
    let mut root_attacked = false;
    while count < params.dispute_size && !frontier.is_empty() {
        let pick = b.rng.random_range(0..frontier.len());
        let (target, depth) = frontier.swap_remove(pick);
        let mut branches = b.rng.random_range(0..=params.max_branches);
        let last_root_point = depth == 0 && !frontier.iter().any(|(_, d)| *d == 0);
        if last_root_point && !root_attacked {
            branches = branches.max(1);
        }
        for _ in 0..branches {
            if count >= params.dispute_size {
                break;
            }
            let conclusion = b.fresh_statement();
            contraries
                .insert(conclusion, target)
                .expect("fresh statement");
            let size = b.rng.random_range(1..=params.max_argument_size);
            let mut d = Draft::default();
            b.draft(size, conclusion, &mut d);
            let owner = (depth + 1) % 2;
            let weak = b.commit(d, &mut kbs[owner]);
            frontier.extend(weak.into_iter().map(|w| (w, depth + 1)));
            count += 1;
            if depth == 0 {
                root_attacked = true;
            }
        }
    }

    let [proponent, opponent] = kbs;
    DisputeCase {
        id: format!("case-{case_index:04}"),
        vocabulary: b.vocab,
        subject,
        proponent_kbs: vec![proponent],
        opponent_kbs: vec![opponent],
        shared_contraries: contraries,
    }
}
