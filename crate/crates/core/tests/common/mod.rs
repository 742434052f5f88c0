//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use raag_hhg::{DefiningGraph, Letter, Raag};

pub fn path(names: &[&str]) -> Raag {
    Raag::new(DefiningGraph::path(names).unwrap())
}

pub fn pentagon() -> Raag {
    let v = ["a", "b", "c", "d", "e"];
    let e = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")];
    Raag::new(DefiningGraph::new(&v, &e).unwrap())
}

pub fn rank(l: &Letter) -> u32 {
    2 * l.gen + l.inverse as u32
}

/// Shortlex-least word in the closure of `w` under commuting swaps and free
/// cancellations. Independent of the library's rewriting algorithm.
pub fn oracle_nf(graph: &DefiningGraph, w: &[Letter]) -> Vec<Letter> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::from([w.to_vec()]);
    seen.insert(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (x, y) = (cur[i], cur[i + 1]);
            let mut moves = Vec::new();
            if x.gen == y.gen && x.inverse != y.inverse {
                let mut next = cur.clone();
                next.drain(i..i + 2);
                moves.push(next);
            }
            if x.gen != y.gen && graph.adjacent(x.gen, y.gen) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                moves.push(next);
            }
            for m in moves {
                if seen.insert(m.clone()) {
                    queue.push_back(m);
                }
            }
        }
    }
    seen.into_iter()
        .min_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.iter().map(rank).cmp(b.iter().map(rank)))
        })
        .unwrap()
}

pub fn all_words(n_gens: u32, max_len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..n_gens)
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn word_strategy(n_gens: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..n_gens, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)),
        0..=max_len,
    )
}
