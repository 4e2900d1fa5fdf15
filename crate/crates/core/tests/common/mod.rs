//! Shared fixtures and independent reference implementations for the
//! integration suites. Nothing here calls the engine's own labelling, attack
//! or move logic.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use privarg_core::agent::{build_oskb, Oskb, PrivacyBehavior, Scope};
use privarg_core::argumentation::{
    Argument, ContentId, ContraryRelation, KnowledgeBase, Label, Premise, PremiseKind, Rule,
    RuleKind, Side, Statement, Vocabulary,
};
use privarg_core::dispute::{AgentId, DisputeCase, PreparedCase};
use privarg_core::seed::rng_from;
use rand::Rng;

// ---------------------------------------------------------------------------
// Abstract graphs

/// Random attack graph on at most `max_nodes` nodes, self-attacks allowed.
/// Returned as the attacker list of every node.
pub fn random_attackers<R: Rng>(rng: &mut R, max_nodes: usize) -> Vec<Vec<usize>> {
    let n = rng.random_range(0..=max_nodes);
    let density = rng.random_range(0.05..0.5);
    (0..n)
        .map(|_| (0..n).filter(|_| rng.random_bool(density)).collect())
        .collect()
}

/// Grounded labelling by enumeration: among all 3^n labellings keep the
/// complete ones and return the one with the fewest IN nodes.
pub fn brute_force_grounded(attackers: &[Vec<usize>]) -> Vec<Label> {
    let n = attackers.len();
    let mut labels = vec![Label::Undec; n];
    let mut best: Option<(usize, Vec<Label>)> = None;
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = match c % 3 {
                0 => Label::In,
                1 => Label::Out,
                _ => Label::Undec,
            };
            c /= 3;
        }
        if !is_complete(attackers, &labels) {
            continue;
        }
        let ins = labels.iter().filter(|l| **l == Label::In).count();
        if best.as_ref().is_none_or(|(b, _)| ins < *b) {
            best = Some((ins, labels.clone()));
        }
    }
    best.expect("every graph has a complete labelling").1
}

fn is_complete(attackers: &[Vec<usize>], labels: &[Label]) -> bool {
    attackers.iter().zip(labels).all(|(att, l)| {
        let all_out = att.iter().all(|&a| labels[a] == Label::Out);
        let some_in = att.iter().any(|&a| labels[a] == Label::In);
        match l {
            Label::In => all_out,
            Label::Out => some_in,
            Label::Undec => !all_out && !some_in,
        }
    })
}

/// Grounded labelling as the least fixpoint of the defence function: IN is
/// the smallest set containing every node it defends, OUT is what IN attacks.
pub fn defence_fixpoint(attackers: &[Vec<usize>]) -> Vec<Label> {
    let n = attackers.len();
    let mut accepted = vec![false; n];
    loop {
        let attacked: Vec<bool> = (0..n)
            .map(|i| attackers[i].iter().any(|&a| accepted[a]))
            .collect();
        let next: Vec<bool> = (0..n)
            .map(|i| attackers[i].iter().all(|&a| attacked[a]))
            .collect();
        if next == accepted {
            return (0..n)
                .map(|i| {
                    if accepted[i] {
                        Label::In
                    } else if attacked[i] {
                        Label::Out
                    } else {
                        Label::Undec
                    }
                })
                .collect();
        }
        accepted = next;
    }
}

// ---------------------------------------------------------------------------
// Arguments

/// Canonical text of an argument tree, built only from its public structure.
pub fn shape(arg: &Argument) -> String {
    match (arg.premise_leaf(), arg.top_rule()) {
        (Some(p), _) => format!("p{}{}", p.statement.0, kind_char(p.kind)),
        (None, Some(r)) => {
            let subs: Vec<String> = arg.subarguments().iter().map(shape).collect();
            format!("r{}[{}]", r.id().0, subs.join(","))
        }
        _ => unreachable!("an argument is a premise or a rule application"),
    }
}

fn kind_char(k: PremiseKind) -> char {
    match k {
        PremiseKind::Ordinary => 'o',
        PremiseKind::Necessary => 'n',
    }
}

/// Every argument tree derivable from `kb`, as canonical text. A statement
/// may not reappear below itself on any branch.
pub fn brute_force_arguments(kb: &KnowledgeBase) -> BTreeSet<String> {
    let statements: BTreeSet<Statement> = kb
        .premises()
        .iter()
        .map(|p| p.statement)
        .chain(kb.rules().iter().map(|r| r.consequent()))
        .collect();
    let mut out = BTreeSet::new();
    for s in statements {
        out.extend(derive(kb, s, &mut Vec::new()));
    }
    out
}

fn derive(kb: &KnowledgeBase, s: Statement, above: &mut Vec<Statement>) -> Vec<String> {
    if above.contains(&s) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some(p) = kb.premise(s) {
        out.push(format!("p{}{}", s.0, kind_char(p.kind)));
    }
    above.push(s);
    for r in kb.rules().iter().filter(|r| r.consequent() == s) {
        let mut combos: Vec<Vec<String>> = vec![Vec::new()];
        for a in r.antecedents() {
            let options = derive(kb, *a, above);
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    options.iter().map(move |o| {
                        let mut c = c.clone();
                        c.push(o.clone());
                        c
                    })
                })
                .collect();
        }
        for c in combos {
            out.push(format!("r{}[{}]", r.id().0, c.join(",")));
        }
    }
    above.pop();
    out
}

/// Statements at the weak points of `arg`, found by walking the tree.
pub fn weak_statements(arg: &Argument) -> Vec<Statement> {
    let mut out = Vec::new();
    let mut stack = vec![arg];
    while let Some(a) = stack.pop() {
        match (a.premise_leaf(), a.top_rule()) {
            (Some(p), _) if p.kind == PremiseKind::Ordinary => out.push(p.statement),
            (None, Some(r)) if r.kind() == RuleKind::Defeasible => out.push(r.consequent()),
            _ => {}
        }
        stack.extend(a.subarguments());
    }
    out
}

pub fn attacks_oracle(
    attacker: &Argument,
    target: &Argument,
    contraries: &ContraryRelation,
) -> bool {
    weak_statements(target)
        .into_iter()
        .any(|w| contraries.contains(attacker.conclusion(), w))
}

/// Small random knowledge base over `statements` statements: some premises
/// and a handful of rules, cycles allowed.
pub fn random_kb<R: Rng>(
    rng: &mut R,
    vocab: &mut Vocabulary,
    statements: usize,
    tag: &str,
) -> KnowledgeBase {
    let names: Vec<Statement> = (0..statements)
        .map(|i| vocab.statement(&format!("s{i}")))
        .collect();
    let mut kb = KnowledgeBase::new();
    for s in &names {
        if rng.random_bool(0.45) {
            let p = if rng.random_bool(0.7) {
                Premise::ordinary(*s)
            } else {
                Premise::necessary(*s)
            };
            kb.add_premise(p).unwrap();
        }
    }
    let rules = rng.random_range(0..=statements + 1);
    for k in 0..rules {
        let arity = rng.random_range(1..=3.min(statements.max(2) - 1));
        let mut ants: Vec<Statement> = Vec::new();
        while ants.len() < arity {
            let s = names[rng.random_range(0..names.len())];
            if !ants.contains(&s) {
                ants.push(s);
            }
        }
        let consequent = names[rng.random_range(0..names.len())];
        let id = vocab.rule(&format!("{tag}r{k}"));
        let kind = if rng.random_bool(0.7) {
            RuleKind::Defeasible
        } else {
            RuleKind::Strict
        };
        if let Ok(rule) = Rule::new(id, ants, consequent, kind) {
            kb.add_rule(rule).unwrap();
        }
    }
    kb
}

// ---------------------------------------------------------------------------
// Straight-line dispute

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceRun {
    pub moves: Vec<(AgentId, Vec<String>)>,
    pub winner: Side,
    pub forfeited_by: Side,
    pub concealment: [f64; 2],
}

/// Plays `case` between one proponent and one opponent agent, each arguing
/// from its side's first knowledge base, in the most direct way possible.
/// Only OSKB construction and the random streams are shared with the engine.
pub fn reference_dispute(
    case: &Arc<PreparedCase>,
    behaviors: [PrivacyBehavior; 2],
    seed: u64,
) -> ReferenceRun {
    let sides = [Side::Proponent, Side::Opponent];
    let subject = case.subject();
    let mut contraries = case.case().shared_contraries.clone();
    for side in sides {
        for kb in case.case().kbs(side) {
            contraries.extend_from(&kb.contraries);
        }
    }

    let mut rngs = Vec::new();
    let mut oskbs = Vec::new();
    let mut pools: Vec<Vec<Argument>> = Vec::new();
    for (i, side) in sides.into_iter().enumerate() {
        let mut rng = rng_from(&[seed, i as u64]);
        let kb = &case.case().kbs(side)[0];
        let pool: Vec<Argument> = case.pools(side)[0].arguments.to_vec();
        let oskb = if kb.is_empty() {
            Oskb::empty()
        } else {
            build_oskb(kb, &pool, behaviors[i].division, None, &mut rng).unwrap()
        };
        rngs.push(rng);
        oskbs.push(oskb);
        pools.push(pool);
    }

    let mut board: Vec<(Argument, Side)> = Vec::new();
    let mut revealed: [HashSet<ContentId>; 2] = [HashSet::new(), HashSet::new()];
    let mut moves = Vec::new();
    let mut turn = 0usize;

    let forfeited = loop {
        let side = sides[turn];
        let labels = board_labels(&board, &contraries);
        let opened = board
            .iter()
            .any(|(a, s)| *s == Side::Proponent && a.conclusion() == subject);
        let chosen = loop {
            let mut useful: Vec<Argument> = Vec::new();
            for a in &pools[turn] {
                if !oskbs[turn].is_usable(a)
                    || board.iter().any(|(b, _)| b.hash() == a.hash())
                    || useful.iter().any(|u| u.hash() == a.hash())
                {
                    continue;
                }
                let ok = if side == Side::Proponent && !opened {
                    a.conclusion() == subject
                } else {
                    board.iter().zip(&labels).any(|((b, owner), l)| {
                        *owner != side && *l != Label::Out && attacks_oracle(a, b, &contraries)
                    })
                };
                if ok {
                    useful.push(a.clone());
                }
            }
            if !useful.is_empty() {
                break Some(pick(behaviors[turn].scope, useful, &mut rngs[turn]));
            }
            if oskbs[turn].has_deeper_level()
                && rngs[turn].random_range(0..100u8) < behaviors[turn].theta.percent()
            {
                oskbs[turn].drop_level();
                continue;
            }
            break None;
        };
        let Some(chosen) = chosen else { break side };
        for a in &chosen {
            revealed[turn].extend(a.content().iter().copied());
            board.push((a.clone(), side));
        }
        moves.push((
            AgentId(turn as u32),
            chosen.iter().map(|a| a.hash().to_string()).collect(),
        ));
        turn = 1 - turn;
    };

    let winner = match forfeited {
        Side::Proponent => Side::Opponent,
        Side::Opponent => {
            let labels = board_labels(&board, &contraries);
            let accepted = board.iter().zip(&labels).any(|((a, s), l)| {
                *s == Side::Proponent && a.conclusion() == subject && *l == Label::In
            });
            if accepted {
                Side::Proponent
            } else {
                Side::Opponent
            }
        }
    };
    let concealment = [0, 1].map(|i| {
        let kb = &case.case().kbs(sides[i])[0];
        let total = kb.content_len();
        if total == 0 {
            1.0
        } else {
            let shown = kb
                .content()
                .iter()
                .filter(|c| revealed[i].contains(c))
                .count();
            (total - shown) as f64 / total as f64
        }
    });
    ReferenceRun {
        moves,
        winner,
        forfeited_by: forfeited,
        concealment,
    }
}

fn board_labels(board: &[(Argument, Side)], contraries: &ContraryRelation) -> Vec<Label> {
    let attackers: Vec<Vec<usize>> = board
        .iter()
        .map(|(t, _)| {
            (0..board.len())
                .filter(|&i| attacks_oracle(&board[i].0, t, contraries))
                .collect()
        })
        .collect();
    defence_fixpoint(&attackers)
}

fn pick<R: Rng>(scope: Scope, mut useful: Vec<Argument>, rng: &mut R) -> Vec<Argument> {
    match scope {
        Scope::All => useful,
        Scope::Shortest => {
            useful.sort_by_key(|a| (a.size(), a.hash()));
            vec![useful.swap_remove(0)]
        }
        Scope::Longest => {
            useful.sort_by_key(|a| (std::cmp::Reverse(a.size()), a.hash()));
            vec![useful.swap_remove(0)]
        }
        Scope::Random => {
            useful.sort_by_key(|a| a.hash());
            let i = rng.random_range(0..useful.len());
            vec![useful.swap_remove(i)]
        }
    }
}

// ---------------------------------------------------------------------------
// Fixtures

/// Proponent argues `s` from premise `p`; the opponent undercuts `p` with
/// `q`; the proponent answers with `t`, which nothing attacks.
pub fn three_argument_case() -> DisputeCase {
    let mut v = Vocabulary::new();
    let [s, p, q, t] = ["s", "p", "q", "t"].map(|n| v.statement(n));
    let r1 = v.rule("r1");
    let mut pro = KnowledgeBase::new();
    pro.add_premise(Premise::ordinary(p)).unwrap();
    pro.add_premise(Premise::ordinary(t)).unwrap();
    pro.add_rule(Rule::defeasible(r1, vec![p], s).unwrap())
        .unwrap();
    let mut opp = KnowledgeBase::new();
    opp.add_premise(Premise::ordinary(q)).unwrap();
    let mut contraries = ContraryRelation::new();
    contraries.insert(q, p).unwrap();
    contraries.insert(t, q).unwrap();
    DisputeCase {
        id: "three-args".into(),
        vocabulary: v,
        subject: s,
        proponent_kbs: vec![pro],
        opponent_kbs: vec![opp],
        shared_contraries: contraries,
    }
}

pub fn prepared(case: DisputeCase) -> Arc<PreparedCase> {
    Arc::new(case.prepare().unwrap())
}

/// Count of each label value, for compact assertion messages.
pub fn label_counts(labels: &[Label]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for l in labels {
        let k = match l {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        };
        *m.entry(k).or_default() += 1;
    }
    m
}
