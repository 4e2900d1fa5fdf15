//! The public argument graph and its grounded labelling.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::argument::{attacks, ArgHash, Argument};
use super::kb::{ContraryRelation, Statement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Proponent,
    Opponent,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Proponent => Side::Opponent,
            Side::Opponent => Side::Proponent,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Proponent => "proponent",
            Side::Opponent => "opponent",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    In,
    Out,
    Undec,
}

/// Arguments on the board, their owning side, and the attack edges between them.
///
/// Edges are never inserted directly: adding an argument computes its attacks
/// against every node already present, in both directions.
#[derive(Clone, Debug, Default)]
pub struct ArgumentGraph {
    nodes: Vec<Argument>,
    owners: Vec<Side>,
    index: HashMap<ArgHash, usize>,
    edges: Vec<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
}

impl ArgumentGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `arg` owned by `side`. Returns `None` if it is already present.
    pub fn add(
        &mut self,
        arg: Argument,
        side: Side,
        contraries: &ContraryRelation,
    ) -> Option<usize> {
        if self.index.contains_key(&arg.hash()) {
            return None;
        }
        let id = self.nodes.len();
        self.index.insert(arg.hash(), id);
        self.attackers.push(Vec::new());
        for j in 0..id {
            if attacks(&self.nodes[j], &arg, contraries) {
                self.edges.push((j, id));
                self.attackers[id].push(j);
            }
            if attacks(&arg, &self.nodes[j], contraries) {
                self.edges.push((id, j));
                self.attackers[j].push(id);
            }
        }
        if attacks(&arg, &arg, contraries) {
            self.edges.push((id, id));
            self.attackers[id].push(id);
        }
        self.nodes.push(arg);
        self.owners.push(side);
        Some(id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Argument] {
        &self.nodes
    }

    pub fn owner(&self, node: usize) -> Side {
        self.owners[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn attackers_of(&self, node: usize) -> &[usize] {
        &self.attackers[node]
    }

    pub fn index_of(&self, hash: ArgHash) -> Option<usize> {
        self.index.get(&hash).copied()
    }

    pub fn contains(&self, arg: &Argument) -> bool {
        self.index.contains_key(&arg.hash())
    }
}

/// Grounded labelling indexed by graph node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedLabelling {
    labels: Vec<Label>,
}

impl GroundedLabelling {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> Label {
        self.labels[node]
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Least-fixpoint grounded labelling of an abstract attack graph given as
/// per-node attacker lists.
pub fn grounded_labels(attackers: &[Vec<usize>]) -> Vec<Label> {
    let n = attackers.len();
    let mut labels = vec![Label::Undec; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if labels[v] != Label::Undec {
                continue;
            }
            if attackers[v].iter().all(|&a| labels[a] == Label::Out) {
                labels[v] = Label::In;
                changed = true;
            } else if attackers[v].iter().any(|&a| labels[a] == Label::In) {
                labels[v] = Label::Out;
                changed = true;
            }
        }
        if !changed {
            return labels;
        }
    }
}

pub fn grounded_labelling(g: &ArgumentGraph) -> GroundedLabelling {
    GroundedLabelling {
        labels: grounded_labels(&g.attackers),
    }
}

/// The proponent meets its burden iff one of its arguments for `subject` is IN.
pub fn subject_accepted(g: &ArgumentGraph, subject: Statement) -> bool {
    subject_accepted_with(g, &grounded_labelling(g), subject)
}

pub fn subject_accepted_with(
    g: &ArgumentGraph,
    labels: &GroundedLabelling,
    subject: Statement,
) -> bool {
    (0..g.len()).any(|i| {
        g.owners[i] == Side::Proponent
            && g.nodes[i].conclusion() == subject
            && labels.label(i) == Label::In
    })
}
