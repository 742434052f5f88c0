use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// A generator or its inverse. Letters are ordered `a < a^-1 < b < b^-1 < ...`
/// following the declared generator order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: u32) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: u32) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn rank(self) -> u32 {
        2 * self.gen + self.inverse as u32
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Identifies the defining graph a word was built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphId(pub u64);

/// A word in the generators of a RAAG. Words produced by [`crate::Raag`]
/// operations are canonical (shortlex normal forms); parsed input is not
/// until normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub(crate) graph: GraphId,
    pub(crate) letters: Vec<Letter>,
    pub(crate) canonical: bool,
}

impl GroupWord {
    pub(crate) fn raw(graph: GraphId, letters: Vec<Letter>) -> Self {
        GroupWord {
            graph,
            letters,
            canonical: false,
        }
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Formal inverse: reversed, each letter negated. Not renormalized.
    pub fn formal_inverse(&self) -> GroupWord {
        GroupWord {
            graph: self.graph,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
            canonical: false,
        }
    }

    /// Sum of exponents of the generator `gen`.
    pub fn exponent_sum(&self, gen: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.sign())
            .sum()
    }

    pub fn generators(&self) -> BTreeSet<u32> {
        self.letters.iter().map(|l| l.gen).collect()
    }
}

/// Shortlex: shorter words first, ties broken lexicographically by letter order.
impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.graph.cmp(&other.graph))
            .then_with(|| self.canonical.cmp(&other.canonical))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A subset `S` of the generators, naming the parabolic subgroup `G_S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicSubset(pub BTreeSet<u32>);

impl ParabolicSubset {
    pub fn new(gens: impl IntoIterator<Item = u32>) -> Self {
        ParabolicSubset(gens.into_iter().collect())
    }

    pub fn contains(&self, gen: u32) -> bool {
        self.0.contains(&gen)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<BTreeSet<u32>> for ParabolicSubset {
    fn from(s: BTreeSet<u32>) -> Self {
        ParabolicSubset(s)
    }
}
