//! Finite pieces of the extension graph (the support graph of the short
//! structure), its colouring, and coned-off distances in the Cayley graph.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::raag::{GroupWord, Letter, ParabolicSubset, Raag};

/// A conjugate `x · v · x⁻¹` of a standard generator, identified by the
/// generator and the shortlex-minimal representative of `x · C(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtVertex {
    pub base: u32,
    pub conjugator: GroupWord,
}

impl Ord for ExtVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conjugator
            .len()
            .cmp(&other.conjugator.len())
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| self.conjugator.cmp(&other.conjugator))
    }
}

impl PartialOrd for ExtVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Raag {
    /// `C(v) = G_{Star(v)}`, the centralizer of the generator `v`.
    pub fn centralizer(&self, v: u32) -> ParabolicSubset {
        self.star(v)
    }

    /// The vertex `g · base · g⁻¹`, with `g` replaced by its canonical coset representative.
    pub fn canonical_vertex(&self, base: u32, g: &GroupWord) -> ExtVertex {
        let (conjugator, _) = self.right_divisor_split(g, &self.centralizer(base));
        ExtVertex { base, conjugator }
    }

    pub fn standard_vertex(&self, base: u32) -> ExtVertex {
        ExtVertex {
            base,
            conjugator: self.identity(),
        }
    }

    /// The group element `x · v · x⁻¹` a vertex stands for.
    pub fn vertex_element(&self, v: &ExtVertex) -> GroupWord {
        self.conjugate(&v.conjugator, &self.letter(Letter::pos(v.base)))
    }

    /// Left action of `x` on vertices: `x · (c v c⁻¹) · x⁻¹`.
    pub fn translate_vertex(&self, x: &GroupWord, v: &ExtVertex) -> ExtVertex {
        self.canonical_vertex(v.base, &self.mul(x, &v.conjugator))
    }

    /// Whether the two conjugated generators commute. Vertices must differ.
    pub fn vertices_adjacent(&self, v: &ExtVertex, w: &ExtVertex) -> Result<bool> {
        if v == w {
            return Err(Error::Precondition(format!(
                "adjacency of `{}` with itself",
                self.format_vertex(v)
            )));
        }
        Ok(self.commute_vertices(v, w))
    }

    fn commute_vertices(&self, v: &ExtVertex, w: &ExtVertex) -> bool {
        let (gv, gw) = (self.vertex_element(v), self.vertex_element(w));
        self.is_identity(&self.commutator(&gv, &gw))
    }

    /// `a` for standard vertices, `a^{c b}` for conjugates.
    pub fn format_vertex(&self, v: &ExtVertex) -> String {
        let name = self.gen_name(v.base);
        if v.conjugator.is_empty() {
            name.to_string()
        } else {
            format!("{name}^{{{}}}", self.format(&v.conjugator))
        }
    }

    /// Inverse of [`Raag::format_vertex`]; any conjugating word is accepted and canonicalized.
    pub fn parse_vertex(&self, text: &str) -> Result<ExtVertex> {
        let text = text.trim();
        let (name, conj) = match text.split_once('^') {
            None => (text, ""),
            Some((name, rest)) => {
                let inner = rest
                    .strip_prefix('{')
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("expected `name^{{word}}`, got `{text}`")))?;
                (name, inner)
            }
        };
        let base = self.gen(name.trim())?;
        let g = self.element(conj)?;
        Ok(self.canonical_vertex(base, &g))
    }

    /// Vertices with canonical conjugator of length at most `r`, in order.
    pub fn standard_vertices(&self, r: usize) -> Result<Vec<ExtVertex>> {
        let ball = self.ball_enumerate(r)?;
        let mut set = BTreeSet::new();
        for g in &ball {
            for base in 0..self.rank() as u32 {
                set.insert(self.canonical_vertex(base, g));
            }
        }
        Ok(set.into_iter().collect())
    }

    /// The ball of conjugator radius `r` around `center`: the translate by
    /// `center`'s conjugator of every vertex whose canonical conjugator has
    /// length at most `r`, with all adjacencies among them.
    pub fn extension_ball(&self, center: &ExtVertex, r: usize) -> Result<ExtBall> {
        let vertices: Vec<ExtVertex> = self
            .standard_vertices(r)?
            .iter()
            .map(|v| self.translate_vertex(&center.conjugator, v))
            .collect();
        Ok(ExtBall::from_vertices(self, center.clone(), r, vertices))
    }
}

/// A finite full subgraph of the extension graph.
#[derive(Debug, Clone)]
pub struct ExtBall {
    pub center: ExtVertex,
    pub conj_radius: usize,
    vertices: Vec<ExtVertex>,
    index: HashMap<ExtVertex, usize>,
    neighbours: Vec<Vec<usize>>,
}

impl ExtBall {
    /// Builds the full subgraph on `vertices` (duplicates are merged).
    pub fn from_vertices(raag: &Raag, center: ExtVertex, conj_radius: usize, vertices: Vec<ExtVertex>) -> Self {
        let vertices: Vec<ExtVertex> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let elements: Vec<GroupWord> = vertices.iter().map(|v| raag.vertex_element(v)).collect();
        let neighbours: Vec<Vec<usize>> = (0..vertices.len())
            .into_par_iter()
            .map(|i| {
                (0..vertices.len())
                    .filter(|&j| {
                        j != i && vertices[i].base != vertices[j].base && {
                            let c = raag.commutator(&elements[i], &elements[j]);
                            raag.is_identity(&c)
                        }
                    })
                    .collect()
            })
            .collect();
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        ExtBall {
            center,
            conj_radius,
            vertices,
            index,
            neighbours,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ExtVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &ExtVertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &ExtVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &ExtVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbours[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbours
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// The colour of a vertex is its underlying standard generator.
    pub fn color(&self, i: usize) -> u32 {
        self.vertices[i].base
    }

    pub fn is_properly_colored(&self) -> bool {
        self.edges().all(|(i, j)| self.color(i) != self.color(j))
    }

    /// Graph distances from vertex `i` (None when unreachable inside the ball).
    pub fn distances_from(&self, i: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[i] = Some(0);
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.neighbours[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Indices of the link of vertex `i` inside the ball.
    pub fn link(&self, i: usize) -> BTreeSet<usize> {
        self.neighbours[i].iter().copied().collect()
    }

    pub fn to_dot(&self, raag: &Raag) -> String {
        let mut out = String::from("graph extension_ball {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  v{i} [label=\"{}\", color=\"{}\"];",
                raag.format_vertex(v),
                raag.gen_name(v.base)
            );
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  v{i} -- v{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_export(&self, raag: &Raag) -> ExtBallExport {
        let names: Vec<String> = self.vertices.iter().map(|v| raag.format_vertex(v)).collect();
        ExtBallExport {
            vertices: names.clone(),
            edges: self
                .edges()
                .map(|(i, j)| [names[i].clone(), names[j].clone()])
                .collect(),
            colors: self
                .vertices
                .iter()
                .zip(&names)
                .map(|(v, n)| (n.clone(), raag.gen_name(v.base).to_string()))
                .collect(),
        }
    }
}

/// JSON shape of an exported ball: the graph-file schema plus colours.
#[derive(Debug, Clone, Serialize)]
pub struct ExtBallExport {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub colors: std::collections::BTreeMap<String, String>,
}

/// Result of a coned-off distance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConedDistance {
    /// An upper bound, exact when a geodesic stays inside the searched ball.
    AtMost(usize),
    /// Neither point nor any of its neighbours was reached by the search.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Elem(Vec<Letter>),
    Cone(u32, Vec<Letter>),
}

/// Breadth-first distances from the identity in the Cayley graph coned off
/// along every centralizer coset `x · C(v)`, restricted to the ball `B_R`.
/// Each cone point is joined to its coset by edges of length 1, so passing
/// through a cone costs 2.
#[derive(Debug, Clone)]
pub struct ConedOffBall {
    raag: Raag,
    radius: usize,
    dist: HashMap<Node, usize>,
}

impl ConedOffBall {
    pub fn new(raag: &Raag, radius: usize) -> Result<Self> {
        let ball = raag.ball_enumerate(radius)?;
        let centralizers: Vec<ParabolicSubset> =
            (0..raag.rank() as u32).map(|v| raag.centralizer(v)).collect();
        let mut members: HashMap<Node, Vec<Vec<Letter>>> = HashMap::new();
        let mut cones_of: HashMap<Vec<Letter>, Vec<Node>> = HashMap::new();
        for g in &ball {
            let cones: Vec<Node> = centralizers
                .iter()
                .enumerate()
                .map(|(v, c)| Node::Cone(v as u32, raag.right_divisor_split(g, c).0.letters().to_vec()))
                .collect();
            for c in &cones {
                members.entry(c.clone()).or_default().push(g.letters().to_vec());
            }
            cones_of.insert(g.letters().to_vec(), cones);
        }
        let mut dist: HashMap<Node, usize> = HashMap::new();
        let start = Node::Elem(Vec::new());
        dist.insert(start.clone(), 0);
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            let d = dist[&node];
            let next: Vec<Node> = match &node {
                Node::Elem(g) => {
                    let mut out: Vec<Node> = raag
                        .letters()
                        .map(|l| {
                            let mut w = g.clone();
                            w.push(l);
                            raag.word(&w).letters().to_vec()
                        })
                        .filter(|w| w.len() <= radius)
                        .map(Node::Elem)
                        .collect();
                    out.extend(cones_of[g].iter().cloned());
                    out
                }
                Node::Cone(..) => members[&node].iter().cloned().map(Node::Elem).collect(),
            };
            for n in next {
                if !dist.contains_key(&n) {
                    dist.insert(n.clone(), d + 1);
                    queue.push_back(n);
                }
            }
        }
        Ok(ConedOffBall {
            raag: raag.clone(),
            radius,
            dist,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Upper bound on the coned-off distance from `g` to `h`.
    pub fn distance_ub(&self, g: &GroupWord, h: &GroupWord) -> ConedDistance {
        let r = &self.raag;
        let t = r.product(&[&g.formal_inverse(), h]);
        let key = t.letters().to_vec();
        if let Some(&d) = self.dist.get(&Node::Elem(key)) {
            return ConedDistance::AtMost(d);
        }
        let via_neighbours = r.letters().filter_map(|l| {
            let n = r.mul(&t, &r.letter(l));
            self.dist.get(&Node::Elem(n.letters().to_vec())).map(|d| d + 1)
        });
        let via_cones = (0..r.rank() as u32).filter_map(|v| {
            let rep = r.right_divisor_split(&t, &r.centralizer(v)).0;
            self.dist.get(&Node::Cone(v, rep.letters().to_vec())).map(|d| d + 1)
        });
        match via_neighbours.chain(via_cones).min() {
            Some(d) => ConedDistance::AtMost(d.min(t.len())),
            None => ConedDistance::Unknown,
        }
    }
}

impl Raag {
    /// One-shot coned-off distance bound; builds the search ball each call.
    pub fn coned_off_distance_ub(&self, g: &GroupWord, h: &GroupWord, search_radius: usize) -> Result<ConedDistance> {
        Ok(ConedOffBall::new(self, search_radius)?.distance_ub(g, h))
    }
}
