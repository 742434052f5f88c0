//! Coarse level sets `N(x)`, realisations `f(Δ) = N(x) ∩ N(y)` and the two
//! kinds of W-edges, all probed inside a finite ball of the group.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use super::{BlowupBall, BlowupVertex, Simplex};
use crate::atlas::ChartAtlas;
use crate::error::{Error, Result};
use crate::raag::{GroupWord, Letter, Raag};
use crate::support::ExtVertex;

/// The ball `B_r` of the Cayley graph with its adjacency.
#[derive(Debug, Clone)]
pub struct GroupBall {
    radius: usize,
    elements: Vec<GroupWord>,
    index: HashMap<Vec<Letter>, usize>,
    neighbours: Vec<Vec<usize>>,
}

impl GroupBall {
    pub fn new(raag: &Raag, radius: usize) -> Result<Self> {
        let elements = raag.ball_enumerate(radius)?;
        let index: HashMap<Vec<Letter>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.letters().to_vec(), i))
            .collect();
        let letters: Vec<GroupWord> = raag.letters().map(|l| raag.letter(l)).collect();
        let neighbours = elements
            .par_iter()
            .map(|g| {
                letters
                    .iter()
                    .filter_map(|l| index.get(raag.mul(g, l).letters()).copied())
                    .collect()
            })
            .collect();
        Ok(GroupBall {
            radius,
            elements,
            index,
            neighbours,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupWord] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupWord {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupWord) -> Option<usize> {
        self.index.get(g.letters()).copied()
    }

    pub fn contains(&self, g: &GroupWord) -> bool {
        self.index.contains_key(g.letters())
    }

    /// Distance between two index sets along paths inside the ball, when at
    /// most `max`.
    pub fn set_distance(&self, from: &BTreeSet<usize>, to: &BTreeSet<usize>, max: usize) -> Option<usize> {
        if from.is_empty() || to.is_empty() {
            return None;
        }
        let mut dist: HashMap<usize, usize> = from.iter().map(|&i| (i, 0)).collect();
        let mut queue: VecDeque<usize> = from.iter().copied().collect();
        while let Some(i) = queue.pop_front() {
            let d = dist[&i];
            if to.contains(&i) {
                return Some(d);
            }
            if d == max {
                continue;
            }
            for &j in &self.neighbours[i] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(j) {
                    e.insert(d + 1);
                    queue.push_back(j);
                }
            }
        }
        None
    }

    /// Elements within `margin` of the outer sphere.
    fn near_boundary(&self, i: usize, margin: usize) -> bool {
        self.elements[i].len() + margin > self.radius
    }
}

/// `N(x) ∩ B_r`, as indices into the group ball. `undecided` counts ball
/// elements whose membership could not be certified either way; they are
/// left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub members: BTreeSet<usize>,
    pub undecided: usize,
}

/// `f(Δ) ∩ B_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realisation {
    pub elements: Vec<GroupWord>,
    /// Set when nothing was found inside the ball.
    pub possibly_empty: bool,
    pub undecided: usize,
}

/// Outcome of a W-adjacency probe. Both edge types can hold at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WEdge {
    /// `d(f(Δ₁), f(Δ₂))` when at most 1 (Type 1, close realisations).
    pub type1: Option<usize>,
    /// `d(N(y), N(y'))` when the simplices share a point `x` and the distance
    /// is at most `T + 1` (Type 2, staple edges).
    pub type2: Option<usize>,
    /// Set when a missing edge type might appear in a larger ball: the sets
    /// involved reach the boundary, are empty, or have undecided elements.
    pub truncated: bool,
}

impl WEdge {
    pub fn is_edge(&self) -> bool {
        self.type1.is_some() || self.type2.is_some()
    }
}

/// A maximal simplex `Δ(x, y)` given by its two points `x ∈ P_v`, `y ∈ P_w`
/// over adjacent support vertices, independent of any finite ball.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSimplex {
    pub ends: [(ExtVertex, GroupWord); 2],
}

impl EdgeSimplex {
    pub fn new(raag: &Raag, atlas: &ChartAtlas, ends: [(ExtVertex, GroupWord); 2]) -> Result<Self> {
        let [(v, x), (w, y)] = &ends;
        if v == w || !raag.vertices_adjacent(v, w)? {
            return Err(Error::Precondition(format!(
                "{} and {} are not adjacent",
                raag.format_vertex(v),
                raag.format_vertex(w)
            )));
        }
        for (u, p) in [(v, x), (w, y)] {
            if !atlas.in_coset(u, p) {
                return Err(Error::Domain {
                    element: raag.format(p),
                    domain: format!("P_{}", raag.format_vertex(u)),
                });
            }
        }
        let ends = [(v.clone(), raag.nf(x)), (w.clone(), raag.nf(y))];
        Ok(EdgeSimplex { ends })
    }

    /// `g·Δ(x, y) = Δ(gx, gy)` over the translated vertices.
    pub fn translate(&self, raag: &Raag, g: &GroupWord) -> Self {
        EdgeSimplex {
            ends: self
                .ends
                .clone()
                .map(|(v, x)| (raag.translate_vertex(g, &v), raag.mul(g, &x))),
        }
    }
}

/// `N(x) ∩ B_r` for the point `x ∈ P_v`: elements `k` of the ball with some
/// `g = k·u ∈ P_v`, `|u| ≤ R`, certified `d_{L_v}(x, g) ≤ R`.
pub fn coarse_level_set(
    atlas: &ChartAtlas,
    v: &ExtVertex,
    x: &GroupWord,
    ball: &GroupBall,
    level_radius: u64,
) -> Result<LevelSet> {
    let raag = atlas.raag();
    let near = raag.ball_enumerate(level_radius as usize)?;
    let verdicts: Vec<Result<(bool, bool)>> = ball
        .elements()
        .par_iter()
        .map(|k| {
            let mut undecided = false;
            for u in &near {
                let g = raag.mul(k, u);
                if !atlas.in_coset(v, &g) {
                    continue;
                }
                match atlas.level_within(v, x, &g, level_radius)? {
                    Some(true) => return Ok((true, false)),
                    Some(false) => {}
                    None => undecided = true,
                }
            }
            Ok((false, undecided))
        })
        .collect();
    let mut members = BTreeSet::new();
    let mut undecided = 0;
    for (i, verdict) in verdicts.into_iter().enumerate() {
        match verdict? {
            (true, _) => {
                members.insert(i);
            }
            (false, true) => undecided += 1,
            _ => {}
        }
    }
    Ok(LevelSet { members, undecided })
}

type LevelKey = (ExtVertex, Vec<Letter>);

/// Computes and caches level sets for one blowup ball and one group ball.
pub struct Realiser<'a> {
    blowup: &'a BlowupBall,
    ball: GroupBall,
    cache: Mutex<HashMap<LevelKey, Arc<LevelSet>>>,
}

impl<'a> Realiser<'a> {
    pub fn new(blowup: &'a BlowupBall, group_radius: usize) -> Result<Self> {
        Ok(Realiser {
            blowup,
            ball: GroupBall::new(blowup.raag(), group_radius)?,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn group_ball(&self) -> &GroupBall {
        &self.ball
    }

    /// `N(x)` for any point `x ∈ P_v`, not necessarily a truncated squid point.
    pub fn level_set(&self, v: &ExtVertex, x: &GroupWord) -> Result<Arc<LevelSet>> {
        let key = (v.clone(), x.letters().to_vec());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let set = Arc::new(coarse_level_set(
            self.blowup.atlas(),
            v,
            x,
            &self.ball,
            self.blowup.level_radius(),
        )?);
        self.cache.lock().expect("cache lock").insert(key, set.clone());
        Ok(set)
    }

    /// The two points of a maximal simplex of the blowup ball.
    pub fn edge_simplex(&self, s: &Simplex) -> Result<EdgeSimplex> {
        let points: Vec<BlowupVertex> = s.vertices().iter().copied().filter(|u| !u.is_apex()).collect();
        if !(self.blowup.link_generic(s)?.is_empty() && points.len() == 2 && s.support().len() == 2) {
            return Err(Error::Precondition(format!(
                "{} is not a maximal simplex over an edge",
                self.blowup.format_simplex(s)
            )));
        }
        let end = |u: BlowupVertex| {
            let p = self.blowup.point(u).expect("simplex vertices lie in the ball");
            (self.blowup.support().vertex(u.support()).clone(), p.element.clone())
        };
        Ok(EdgeSimplex {
            ends: [end(points[0]), end(points[1])],
        })
    }

    fn realisation_indices(&self, e: &EdgeSimplex) -> Result<(BTreeSet<usize>, usize)> {
        let [(v, x), (w, y)] = &e.ends;
        let (nx, ny) = (self.level_set(v, x)?, self.level_set(w, y)?);
        Ok((
            nx.members.intersection(&ny.members).copied().collect(),
            nx.undecided + ny.undecided,
        ))
    }

    /// `f(Δ(x, y)) ∩ B_r`.
    pub fn realise(&self, e: &EdgeSimplex) -> Result<Realisation> {
        let (members, undecided) = self.realisation_indices(e)?;
        Ok(Realisation {
            elements: members.iter().map(|&i| self.ball.element(i).clone()).collect(),
            possibly_empty: members.is_empty(),
            undecided,
        })
    }

    pub fn realisation(&self, s: &Simplex) -> Result<Realisation> {
        self.realise(&self.edge_simplex(s)?)
    }

    /// W-adjacency of two maximal simplices, probed inside the group ball.
    pub fn w_adjacent_edges(&self, e1: &EdgeSimplex, e2: &EdgeSimplex) -> Result<WEdge> {
        let (f1, u1) = self.realisation_indices(e1)?;
        let (f2, u2) = self.realisation_indices(e2)?;
        let type1 = self.ball.set_distance(&f1, &f2, 1);
        let mut truncated = type1.is_none()
            && (u1 + u2 > 0
                || f1.is_empty()
                || f2.is_empty()
                || f1.iter().chain(&f2).any(|&i| self.ball.near_boundary(i, 1)));
        let threshold = self.blowup.staple_threshold() as usize + 1;
        let margin = threshold + self.blowup.level_radius() as usize;
        let mut type2 = None;
        for (i, x) in e1.ends.iter().enumerate() {
            let Some(j) = e2.ends.iter().position(|p| p == x) else {
                continue;
            };
            let (w, y) = &e1.ends[1 - i];
            let (w2, y2) = &e2.ends[1 - j];
            let (ny, ny2) = (self.level_set(w, y)?, self.level_set(w2, y2)?);
            let d = self.ball.set_distance(&ny.members, &ny2.members, threshold);
            type2 = match (type2, d) {
                (Some(a), Some(b)) => Some(usize::min(a, b)),
                (a, b) => a.or(b),
            };
            if d.is_none() {
                truncated |= ny.undecided + ny2.undecided > 0
                    || ny.members.iter().chain(&ny2.members).any(|&k| self.ball.near_boundary(k, margin));
            }
        }
        Ok(WEdge {
            type1,
            type2,
            truncated,
        })
    }

    pub fn w_adjacent(&self, s1: &Simplex, s2: &Simplex) -> Result<WEdge> {
        self.w_adjacent_edges(&self.edge_simplex(s1)?, &self.edge_simplex(s2)?)
    }
}
