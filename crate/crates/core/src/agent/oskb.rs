//! Ordered subdivided knowledge base: content partitioned into dedication levels.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::behavior::Division;
use crate::argumentation::{ArgHash, Argument, ContentId, KnowledgeBase, RuleId, Statement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Level {
    pub premises: Vec<Statement>,
    pub rules: Vec<RuleId>,
}

impl Level {
    fn push(&mut self, c: ContentId) {
        match c {
            ContentId::Premise(s) => self.premises.push(s),
            ContentId::Rule(r) => self.rules.push(r),
        }
    }

    pub fn len(&self) -> usize {
        self.premises.len() + self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn content(&self) -> impl Iterator<Item = ContentId> + '_ {
        self.premises
            .iter()
            .map(|s| ContentId::Premise(*s))
            .chain(self.rules.iter().map(|r| ContentId::Rule(*r)))
    }
}

/// Levels L1..Ln, least sensitive first, plus how many are unlocked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oskb {
    levels: Vec<Level>,
    level_of: HashMap<ContentId, usize>,
    unlocked: usize,
}

impl Oskb {
    fn from_levels(levels: Vec<Level>) -> Self {
        let levels: Vec<Level> = levels.into_iter().filter(|l| !l.is_empty()).collect();
        let level_of = levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.content().map(move |c| (c, i + 1)))
            .collect();
        Oskb {
            levels,
            level_of,
            unlocked: 1,
        }
    }

    /// OSKB of an agent with no content: no levels, nothing to unlock.
    pub fn empty() -> Self {
        Oskb {
            levels: Vec::new(),
            level_of: HashMap::new(),
            unlocked: 0,
        }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Number of unlocked levels (1-based index of the deepest usable level).
    pub fn unlocked_upto(&self) -> usize {
        self.unlocked
    }

    pub fn has_deeper_level(&self) -> bool {
        self.unlocked < self.levels.len()
    }

    /// Unlocks the next level. Returns false when already fully unlocked.
    pub fn drop_level(&mut self) -> bool {
        if self.has_deeper_level() {
            self.unlocked += 1;
            true
        } else {
            false
        }
    }

    /// 1-based level holding `c`, if it belongs to this OSKB.
    pub fn level_of(&self, c: ContentId) -> Option<usize> {
        self.level_of.get(&c).copied()
    }

    /// Deepest level an argument needs; `None` if it uses foreign content.
    pub fn required_level(&self, arg: &Argument) -> Option<usize> {
        arg.content()
            .iter()
            .map(|c| self.level_of(*c))
            .try_fold(0, |acc, l| l.map(|l| acc.max(l)))
    }

    pub fn is_usable(&self, arg: &Argument) -> bool {
        self.required_level(arg).is_some_and(|l| l <= self.unlocked)
    }
}

/// Arguments in `arguments` that are not a proper subargument of another one.
pub fn maximal_arguments(arguments: &[Argument]) -> Vec<Argument> {
    let mut inner: HashSet<ArgHash> = HashSet::new();
    for a in arguments {
        for (pos, sub) in a.subtree() {
            if !pos.is_root() {
                inner.insert(sub.hash());
            }
        }
    }
    arguments
        .iter()
        .filter(|a| !inner.contains(&a.hash()))
        .cloned()
        .collect()
}

/// Splits `kb` into dedication levels according to `division`.
///
/// `arguments` must be the arguments constructible from `kb`. Level order
/// follows `preference_order` (most willing to reveal first) when given,
/// otherwise a random permutation drawn from `rng`. Content that no argument
/// uses goes to the last level.
pub fn build_oskb<R: Rng + ?Sized>(
    kb: &KnowledgeBase,
    arguments: &[Argument],
    division: Division,
    preference_order: Option<&[ContentId]>,
    rng: &mut R,
) -> Result<Oskb> {
    if kb.is_empty() {
        return Err(Error::invalid("cannot divide an empty knowledge base"));
    }
    let content = kb.content();
    let rank: Option<HashMap<ContentId, usize>> = preference_order.map(|order| {
        let mut m: HashMap<ContentId, usize> = HashMap::new();
        for (i, c) in order.iter().enumerate() {
            m.entry(*c).or_insert(i);
        }
        let base = order.len();
        for (i, c) in content.iter().enumerate() {
            m.entry(*c).or_insert(base + i);
        }
        m
    });

    let levels = match division {
        Division::None => {
            let mut l = Level::default();
            content.iter().for_each(|c| l.push(*c));
            vec![l]
        }
        Division::AllContent => {
            let mut order = content.clone();
            match &rank {
                Some(rank) => order.sort_by_key(|c| rank[c]),
                None => order.shuffle(rng),
            }
            order
                .into_iter()
                .map(|c| {
                    let mut l = Level::default();
                    l.push(c);
                    l
                })
                .collect()
        }
        Division::HalfArgs | Division::AllArgs => {
            let mut maximal = maximal_arguments(arguments);
            match &rank {
                Some(rank) => maximal.sort_by_key(|a| {
                    a.content()
                        .iter()
                        .map(|c| rank.get(c).copied().unwrap_or(usize::MAX))
                        .max()
                }),
                None => maximal.shuffle(rng),
            }
            let groups: Vec<Vec<Argument>> = if division == Division::AllArgs {
                maximal.into_iter().map(|a| vec![a]).collect()
            } else {
                let first = maximal.len().div_ceil(2);
                let second = maximal.split_off(first);
                vec![maximal, second]
            };
            let mut placed: HashSet<ContentId> = HashSet::new();
            let mut levels: Vec<Level> = groups
                .iter()
                .map(|group| {
                    let mut l = Level::default();
                    for a in group {
                        for c in a.content() {
                            if kb_has(kb, *c) && placed.insert(*c) {
                                l.push(*c);
                            }
                        }
                    }
                    l
                })
                .collect();
            let orphans: Vec<ContentId> = content
                .iter()
                .filter(|c| !placed.contains(c))
                .copied()
                .collect();
            if !orphans.is_empty() {
                if levels.iter().all(|l| l.is_empty()) {
                    levels.push(Level::default());
                }
                let last = levels
                    .iter()
                    .rposition(|l| !l.is_empty())
                    .unwrap_or(levels.len() - 1);
                orphans.into_iter().for_each(|c| levels[last].push(c));
            }
            levels
        }
    };
    Ok(Oskb::from_levels(levels))
}

fn kb_has(kb: &KnowledgeBase, c: ContentId) -> bool {
    match c {
        ContentId::Premise(s) => kb.premise(s).is_some(),
        ContentId::Rule(r) => kb.rule(r).is_some(),
    }
}
