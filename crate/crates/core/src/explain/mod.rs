//! Feedback for the user: summaries, advice on weak content, graph export.

mod history;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::argumentation::{weak_points, ArgHash, Label, Side};
use crate::dispute::DisputeOutcome;

pub use history::{DisputeHistory, HistoryEntry, HISTORY_FORMAT};

fn percent(x: f64) -> i64 {
    (x * 100.0).round() as i64
}

/// One paragraph with the win rate and mean concealment, in whole percents.
pub fn summary_report(history: &DisputeHistory) -> String {
    let n = history.len();
    if n == 0 {
        return "No disputes recorded.\n".to_string();
    }
    let wins = history.entries().iter().filter(|e| e.won()).count();
    let conceal = history
        .entries()
        .iter()
        .map(|e| e.concealment())
        .sum::<f64>()
        / n as f64;
    let noun = if n == 1 { "dispute" } else { "disputes" };
    format!(
        "I won {}% of {n} {noun} ({wins} won, {} lost) and managed to conceal {}% of your content on average.\n",
        percent(wins as f64 / n as f64),
        n - wins,
        percent(conceal)
    )
}

/// A piece of content that opponents defeated, and in how many disputes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Advice {
    /// `p:<statement>` for a premise, `r:<rule>` for a defeasible rule.
    pub content: String,
    pub times_defeated: usize,
}

/// Content behind the agent's defeated arguments, most often defeated first
/// (ties by content id).
///
/// For every argument the agent put forward that ends OUT, each IN attacker
/// is traced to the weak point it hits: an ordinary premise or the
/// defeasible rule whose consequent is contradicted. A piece counts once per
/// dispute.
pub fn advice_report(history: &DisputeHistory) -> Vec<Advice> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for e in history.entries() {
        let state = &e.outcome.state;
        let g = state.graph();
        let labels = state.labels();
        let contraries = state.case().contraries();
        let vocab = state.case().vocabulary();
        let mut hit: BTreeSet<String> = BTreeSet::new();
        for node in 0..g.len() {
            if state.introduced_by(node) != e.agent || labels.label(node) != Label::Out {
                continue;
            }
            let arg = &g.nodes()[node];
            for &att in g.attackers_of(node) {
                if labels.label(att) != Label::In {
                    continue;
                }
                let c = g.nodes()[att].conclusion();
                for (pos, w) in weak_points(arg) {
                    if !contraries.contains(c, w) {
                        continue;
                    }
                    let sub = arg.at(&pos).expect("weak point position exists");
                    let name = match sub.top_rule() {
                        Some(r) => format!("r:{}", vocab.rule_name(r.id())),
                        None => format!("p:{}", vocab.statement_name(w)),
                    };
                    hit.insert(name);
                }
            }
        }
        for h in hit {
            *counts.entry(h).or_default() += 1;
        }
    }
    let mut out: Vec<Advice> = counts
        .into_iter()
        .map(|(content, times_defeated)| Advice {
            content,
            times_defeated,
        })
        .collect();
    // stable sort keeps the id order among equal counts
    out.sort_by_key(|a| std::cmp::Reverse(a.times_defeated));
    out
}

pub fn advice_text(advice: &[Advice]) -> String {
    if advice.is_empty() {
        return "No weak content found.\n".to_string();
    }
    let mut s =
        String::from("Content most often defeated (consider removing or strengthening it):\n");
    for a in advice {
        let _ = writeln!(
            s,
            "  {} defeated in {} dispute(s)",
            a.content, a.times_defeated
        );
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Final argument graph in DOT. Nodes are sorted by structural hash and
/// edges by (attacker, target) hash; boxes are proponent arguments,
/// ellipses opponent ones; fill color gives the grounded label.
pub fn export_graph(outcome: &DisputeOutcome) -> String {
    let state = &outcome.state;
    let g = state.graph();
    let labels = state.labels();
    let vocab = state.case().vocabulary();
    let hash = |i: usize| g.nodes()[i].hash();
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&i| hash(i));
    let mut edges: Vec<(ArgHash, ArgHash)> =
        g.edges().iter().map(|&(a, t)| (hash(a), hash(t))).collect();
    edges.sort();

    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", dot_escape(state.case().id()));
    let _ = writeln!(s, "  node [style=filled];");
    for i in order {
        let a = &g.nodes()[i];
        let shape = match g.owner(i) {
            Side::Proponent => "box",
            Side::Opponent => "ellipse",
        };
        let color = match labels.label(i) {
            Label::In => "palegreen",
            Label::Out => "lightcoral",
            Label::Undec => "lightgoldenrod",
        };
        let _ = writeln!(
            s,
            "  \"{}\" [label=\"{} ({})\", shape={shape}, fillcolor={color}];",
            a.hash(),
            dot_escape(vocab.statement_name(a.conclusion())),
            a.size()
        );
    }
    for (a, t) in edges {
        let _ = writeln!(s, "  \"{a}\" -> \"{t}\";");
    }
    s.push_str("}\n");
    s
}
