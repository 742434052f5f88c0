//! Exact arithmetic in a right-angled Artin group on a triangle- and
//! square-free defining graph.

mod graph;
mod parse;
mod word;

use std::collections::HashSet;
use std::sync::Arc;

pub use graph::{DefiningGraph, GraphFile};
pub use parse::parse_letters;
pub use word::{GraphId, GroupWord, Letter, ParabolicSubset};

use crate::error::{Error, Result};

/// Default cap on the number of elements a ball enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug)]
struct Inner {
    graph: DefiningGraph,
    id: GraphId,
    enumeration_cap: usize,
}

/// The RAAG `G_Λ` of a defining graph. Cheap to clone; all operations are pure.
#[derive(Debug, Clone)]
pub struct Raag {
    inner: Arc<Inner>,
}

impl Raag {
    pub fn new(graph: DefiningGraph) -> Self {
        let id = GraphId(graph.fingerprint());
        Raag {
            inner: Arc::new(Inner {
                graph,
                id,
                enumeration_cap: DEFAULT_ENUMERATION_CAP,
            }),
        }
    }

    pub fn with_enumeration_cap(&self, cap: usize) -> Self {
        Raag {
            inner: Arc::new(Inner {
                graph: self.inner.graph.clone(),
                id: self.inner.id,
                enumeration_cap: cap,
            }),
        }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.inner.graph
    }

    pub fn id(&self) -> GraphId {
        self.inner.id
    }

    pub fn enumeration_cap(&self) -> usize {
        self.inner.enumeration_cap
    }

    pub fn rank(&self) -> usize {
        self.graph().len()
    }

    pub fn gen(&self, name: &str) -> Result<u32> {
        self.graph()
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))
    }

    pub fn gen_name(&self, gen: u32) -> &str {
        self.graph().name(gen)
    }

    /// Distinct generators that commute, i.e. span an edge of Λ.
    pub fn commute(&self, a: u32, b: u32) -> bool {
        a != b && self.graph().adjacent(a, b)
    }

    pub fn star(&self, v: u32) -> ParabolicSubset {
        self.graph().star(v).into()
    }

    pub fn link(&self, v: u32) -> ParabolicSubset {
        self.graph().link(v).into()
    }

    pub fn all_generators(&self) -> ParabolicSubset {
        ParabolicSubset::new(0..self.rank() as u32)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.rank() as u32).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }

    fn check(&self, w: &GroupWord) -> Result<()> {
        if w.graph != self.id() {
            return Err(Error::MixedGraphs);
        }
        Ok(())
    }

    fn canonical(&self, letters: Vec<Letter>) -> GroupWord {
        GroupWord {
            graph: self.id(),
            letters,
            canonical: true,
        }
    }

    pub fn identity(&self) -> GroupWord {
        self.canonical(Vec::new())
    }

    pub fn letter(&self, l: Letter) -> GroupWord {
        self.canonical(vec![l])
    }

    /// Canonical word of an arbitrary letter sequence.
    pub fn word(&self, letters: &[Letter]) -> GroupWord {
        self.canonical(self.nf_letters(letters))
    }

    /// Parses `text` without reducing it.
    pub fn parse(&self, text: &str) -> Result<GroupWord> {
        Ok(GroupWord::raw(self.id(), parse_letters(self.graph(), text)?))
    }

    /// Parses `text` and returns its normal form.
    pub fn element(&self, text: &str) -> Result<GroupWord> {
        Ok(self.word(&parse_letters(self.graph(), text)?))
    }

    pub fn normal_form(&self, w: &GroupWord) -> Result<GroupWord> {
        self.check(w)?;
        Ok(self.nf(w))
    }

    pub(crate) fn nf(&self, w: &GroupWord) -> GroupWord {
        if w.canonical {
            w.clone()
        } else {
            self.word(&w.letters)
        }
    }

    /// Free reduction interleaved with commutation: the result is a reduced
    /// (hence geodesic) word for the same element.
    fn reduce(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &x in letters {
            let mut i = out.len();
            let mut cancelled = false;
            while i > 0 {
                let y = out[i - 1];
                if y.gen == x.gen {
                    if y == x.inv() {
                        out.remove(i - 1);
                        cancelled = true;
                    }
                    break;
                }
                if !self.commute(x.gen, y.gen) {
                    break;
                }
                i -= 1;
            }
            if !cancelled {
                out.push(x);
            }
        }
        out
    }

    /// Number of earlier letters that block each letter from moving to the front.
    fn blockers(&self, letters: &[Letter]) -> Vec<usize> {
        (0..letters.len())
            .map(|i| {
                (0..i)
                    .filter(|&j| !self.commute(letters[j].gen, letters[i].gen))
                    .count()
            })
            .collect()
    }

    /// Lexicographically least linearization of a reduced word's commutation class.
    fn linearize(&self, letters: &[Letter]) -> Vec<Letter> {
        let n = letters.len();
        let mut blockers = self.blockers(letters);
        let mut taken = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let mut best: Option<usize> = None;
            for i in 0..n {
                if !taken[i] && blockers[i] == 0 && best.is_none_or(|b| letters[i] < letters[b]) {
                    best = Some(i);
                }
            }
            let p = best.expect("a reduced word always has a free first letter");
            taken[p] = true;
            out.push(letters[p]);
            for i in (p + 1)..n {
                if !taken[i] && !self.commute(letters[p].gen, letters[i].gen) {
                    blockers[i] -= 1;
                }
            }
        }
        out
    }

    pub(crate) fn nf_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let reduced = self.reduce(letters);
        self.linearize(&reduced)
    }

    /// Splits a reduced word into its maximal prefix of letters from `subset`
    /// that can be commuted to the front, and the remainder.
    fn split_prefix(&self, letters: &[Letter], subset: &ParabolicSubset) -> (Vec<Letter>, Vec<Letter>) {
        let n = letters.len();
        let mut blockers = self.blockers(letters);
        let mut taken = vec![false; n];
        let mut prefix = Vec::new();
        loop {
            let next = (0..n).find(|&i| !taken[i] && blockers[i] == 0 && subset.contains(letters[i].gen));
            let Some(p) = next else { break };
            taken[p] = true;
            prefix.push(letters[p]);
            for i in (p + 1)..n {
                if !taken[i] && !self.commute(letters[p].gen, letters[i].gen) {
                    blockers[i] -= 1;
                }
            }
        }
        let rest = (0..n).filter(|&i| !taken[i]).map(|i| letters[i]).collect();
        (prefix, rest)
    }

    pub fn multiply(&self, u: &GroupWord, v: &GroupWord) -> Result<GroupWord> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    pub(crate) fn mul(&self, u: &GroupWord, v: &GroupWord) -> GroupWord {
        let mut letters = Vec::with_capacity(u.len() + v.len());
        letters.extend_from_slice(&u.letters);
        letters.extend_from_slice(&v.letters);
        self.word(&letters)
    }

    pub(crate) fn product(&self, words: &[&GroupWord]) -> GroupWord {
        let letters: Vec<Letter> = words.iter().flat_map(|w| w.letters.iter().copied()).collect();
        self.word(&letters)
    }

    pub fn inverse(&self, w: &GroupWord) -> GroupWord {
        self.word(&w.formal_inverse().letters)
    }

    pub fn power(&self, w: &GroupWord, n: i64) -> GroupWord {
        let base = if n >= 0 { self.nf(w) } else { self.inverse(w) };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        self.word(&letters)
    }

    /// `x · w · x⁻¹`.
    pub fn conjugate(&self, x: &GroupWord, w: &GroupWord) -> GroupWord {
        self.product(&[x, w, &x.formal_inverse()])
    }

    /// `u · v · u⁻¹ · v⁻¹`.
    pub fn commutator(&self, u: &GroupWord, v: &GroupWord) -> GroupWord {
        self.product(&[u, v, &u.formal_inverse(), &v.formal_inverse()])
    }

    pub fn equals(&self, u: &GroupWord, v: &GroupWord) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.nf(u).letters == self.nf(v).letters)
    }

    pub fn is_identity(&self, w: &GroupWord) -> bool {
        self.nf(w).is_empty()
    }

    pub fn word_length(&self, w: &GroupWord) -> usize {
        self.nf(w).len()
    }

    /// Word-metric distance `|g⁻¹h|`.
    pub fn distance(&self, g: &GroupWord, h: &GroupWord) -> usize {
        self.product(&[&g.formal_inverse(), h]).len()
    }

    /// Membership in the parabolic subgroup `G_S`.
    pub fn in_parabolic(&self, w: &GroupWord, subset: &ParabolicSubset) -> bool {
        self.nf(w).letters.iter().all(|l| subset.contains(l.gen))
    }

    /// The maximal left divisor of `w` lying in `G_S`; a closest point of
    /// `G_S` to `w` in the word metric.
    pub fn parabolic_gate(&self, w: &GroupWord, subset: &ParabolicSubset) -> GroupWord {
        let nf = self.nf(w);
        let (prefix, _) = self.split_prefix(&nf.letters, subset);
        self.word(&prefix)
    }

    /// Gate of `w` onto the coset `x · G_S`: `x · gate(x⁻¹ w, S)`.
    pub fn coset_gate(&self, x: &GroupWord, subset: &ParabolicSubset, w: &GroupWord) -> GroupWord {
        let local = self.product(&[&x.formal_inverse(), w]);
        self.mul(x, &self.parabolic_gate(&local, subset))
    }

    /// Writes `w = residual · divisor` with `divisor ∈ G_S` maximal; the
    /// residual is the canonical representative of the coset `w · G_S`.
    pub fn right_divisor_split(&self, w: &GroupWord, subset: &ParabolicSubset) -> (GroupWord, GroupWord) {
        let nf = self.nf(w);
        let reversed: Vec<Letter> = nf.letters.iter().rev().copied().collect();
        let (mut suffix, mut rest) = self.split_prefix(&reversed, subset);
        suffix.reverse();
        rest.reverse();
        (self.word(&rest), self.word(&suffix))
    }

    /// A shortest element of the double coset `G_S · w · G_T`, found by
    /// stripping maximal left divisors in `G_S` and right divisors in `G_T`
    /// until neither side changes. Its length is `d(G_S, w·G_T)`.
    pub fn double_coset_min(&self, left: &ParabolicSubset, w: &GroupWord, right: &ParabolicSubset) -> GroupWord {
        let mut current = self.nf(w);
        loop {
            let (prefix, rest) = self.split_prefix(&current.letters, left);
            let (stripped, suffix) = self.right_divisor_split(&self.word(&rest), right);
            if prefix.is_empty() && suffix.is_empty() {
                return current;
            }
            current = stripped;
        }
    }

    /// Deletes every occurrence of `v` and renormalizes. On the centralizer
    /// `C(v) = ⟨v⟩ × G_{Lk(v)}` this is the quotient map killing `v`.
    pub fn delete_generator(&self, w: &GroupWord, v: u32) -> GroupWord {
        let kept: Vec<Letter> = self.nf(w).letters.into_iter().filter(|l| l.gen != v).collect();
        self.word(&kept)
    }

    /// All elements of word length at most `r`, as canonical words in shortlex order.
    pub fn ball_enumerate(&self, r: usize) -> Result<Vec<GroupWord>> {
        let cap = self.enumeration_cap();
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        seen.insert(Vec::new());
        let mut all = vec![Vec::new()];
        let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
        for radius in 0..r {
            let mut next = Vec::new();
            for w in &frontier {
                for l in self.letters() {
                    let mut cand = w.clone();
                    cand.push(l);
                    let nf = self.nf_letters(&cand);
                    if nf.len() == radius + 1 && seen.insert(nf.clone()) {
                        if seen.len() > cap {
                            return Err(Error::ResourceCap {
                                what: "ball enumeration",
                                cap,
                            });
                        }
                        next.push(nf);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let mut words: Vec<GroupWord> = all.into_iter().map(|l| self.canonical(l)).collect();
        words.sort();
        Ok(words)
    }

    /// Human-readable form, e.g. `a b^3 c^-1`; the identity prints as `1`.
    pub fn format(&self, w: &GroupWord) -> String {
        format_letters(self.graph(), &w.letters)
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        format_letters(self.graph(), letters)
    }
}

fn format_letters(graph: &DefiningGraph, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let exp = run as i64 * l.sign();
        let name = graph.name(l.gen);
        parts.push(if exp == 1 {
            name.to_string()
        } else {
            format!("{name}^{exp}")
        });
        i += run;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(names: &[&str]) -> Raag {
        Raag::new(DefiningGraph::path(names).unwrap())
    }

    fn nf(r: &Raag, s: &str) -> String {
        r.format(&r.element(s).unwrap())
    }

    #[test]
    fn normal_form_examples() {
        let r = path(&["a", "b", "c"]);
        assert_eq!(nf(&r, "b a b^-1"), "a");
        assert_eq!(nf(&r, "a c a^-1"), "a c a^-1");
        assert_eq!(nf(&r, "c b b^-1 a"), "c a");
        assert_eq!(nf(&r, "b a"), "a b");
        assert_eq!(nf(&r, "c b a"), "b c a");
    }

    #[test]
    fn multiply_examples() {
        let r = path(&["a", "b", "c"]);
        let m = |u: &str, v: &str| {
            let p = r.multiply(&r.parse(u).unwrap(), &r.parse(v).unwrap()).unwrap();
            r.format(&p)
        };
        assert_eq!(m("a b", "b^-1 c"), "a c");
        assert_eq!(m("a", "a^-1"), "1");
        assert_eq!(m("b", "a"), "a b");
    }

    #[test]
    fn mixed_graphs_rejected() {
        let r = path(&["a", "b", "c"]);
        let s = path(&["a", "b", "c", "d"]);
        let u = r.element("a").unwrap();
        let v = s.element("a").unwrap();
        assert_eq!(r.multiply(&u, &v), Err(Error::MixedGraphs));
        assert_eq!(r.equals(&u, &v), Err(Error::MixedGraphs));
    }

    #[test]
    fn equals_examples() {
        let r = path(&["a", "b", "c"]);
        let eq = |u: &str, v: &str| r.equals(&r.parse(u).unwrap(), &r.parse(v).unwrap()).unwrap();
        assert!(eq("a b", "b a"));
        assert!(!eq("a c", "c a"));
        assert!(eq("b c b^-1 c^-1", ""));
        let r2 = path(&["b", "a", "c"]);
        assert!(!r2.equals(&r2.parse("b c b^-1 c^-1").unwrap(), &r2.identity()).unwrap());
        assert!(!eq("a c a^-1 c^-1", ""));
    }

    #[test]
    fn gate_examples() {
        let r = path(&["a", "b", "c", "d"]);
        let s = ParabolicSubset::new([0, 1, 2]);
        let gate = |w: &str| r.format(&r.parabolic_gate(&r.parse(w).unwrap(), &s));
        assert_eq!(gate("a c"), "a c");
        assert_eq!(gate("d"), "1");
        assert_eq!(gate("b d"), "b");
        assert_eq!(gate("d c b"), "c");
        assert_eq!(gate("c d a"), "c");
    }

    #[test]
    fn right_divisor_split_examples() {
        let r = path(&["a", "b", "c"]);
        let star_a = r.star(0);
        let (rep, div) = r.right_divisor_split(&r.parse("c b").unwrap(), &star_a);
        assert_eq!(r.format(&rep), "c");
        assert_eq!(r.format(&div), "b");
        let (rep, _) = r.right_divisor_split(&r.parse("c a c^-1 a b^2").unwrap(), &star_a);
        assert_eq!(r.format(&rep), "c a c^-1");
    }

    #[test]
    fn double_coset_min_matches_brute_force() {
        let r = Raag::new(
            DefiningGraph::new(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
            )
            .unwrap(),
        );
        let ball = r.ball_enumerate(2).unwrap();
        for (s, t) in [(0, 2), (1, 1), (0, 3)] {
            let (left, right) = (r.star(s), r.star(t));
            let hs: Vec<_> = ball.iter().filter(|g| r.in_parabolic(g, &left)).collect();
            let ks: Vec<_> = ball.iter().filter(|g| r.in_parabolic(g, &right)).collect();
            for w in &ball {
                let r = &r;
                let brute = hs
                    .iter()
                    .flat_map(|h| ks.iter().map(move |k| r.product(&[h, w, k]).len()))
                    .min()
                    .unwrap();
                assert_eq!(r.double_coset_min(&left, w, &right).len(), brute, "{}", r.format(w));
            }
        }
    }

    #[test]
    fn ball_counts() {
        let r = path(&["a", "b", "c"]);
        assert_eq!(r.ball_enumerate(0).unwrap().len(), 1);
        assert_eq!(r.ball_enumerate(1).unwrap().len(), 7);
        assert_eq!(r.ball_enumerate(2).unwrap().len(), 29);
    }

    #[test]
    fn ball_cap() {
        let r = path(&["a", "b", "c"]).with_enumeration_cap(20);
        assert!(matches!(
            r.ball_enumerate(2),
            Err(Error::ResourceCap { cap: 20, .. })
        ));
    }

    #[test]
    fn delete_generator_is_quotient_on_centralizer() {
        let r = path(&["a", "b", "c"]);
        let w = r.element("b^2 a c b^-1 a").unwrap();
        assert_eq!(r.format(&r.delete_generator(&w, 1)), "a c a");
    }

    #[test]
    fn formatting_runs() {
        let r = path(&["a", "b", "c"]);
        assert_eq!(nf(&r, "a b b b c^-1 c^-1"), "a b^3 c^-2");
        assert_eq!(nf(&r, ""), "1");
    }
}
