//! Ball-scale blowup of the support graph: every support vertex `v` is
//! replaced by the squid `v ⋆ L_v`, truncated to the points of `L_v` along the
//! central direction whose coordinate lies in a window, and squids over
//! adjacent support vertices span joins.

mod bgi;
mod delta;
mod links;
mod realise;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Signed;
use serde::Serialize;

pub use bgi::{augmented_support, strong_bgi_check, BgiParams, BgiReport, BgiViolation};
pub use delta::{delta_hyperbolicity_estimate, ComponentDelta, DeltaEstimate, DeltaParams};
pub use links::SimplexClass;
pub use realise::{EdgeSimplex, GroupBall, LevelSet, Realisation, Realiser, WEdge};

use crate::atlas::ChartAtlas;
use crate::error::{Error, Result};
use crate::qm::Rational;
use crate::raag::{GroupWord, Letter, Raag};
use crate::support::ExtBall;

pub const DEFAULT_LEVEL_RADIUS: u64 = 2;
pub const DEFAULT_STAPLE_THRESHOLD: u64 = 4;

/// A vertex of the blowup: the apex of the squid over support vertex `i`,
/// or its `j`-th truncated point of `L_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlowupVertex {
    Apex(usize),
    Point(usize, usize),
}

impl BlowupVertex {
    /// The support vertex `p(self)`.
    pub fn support(self) -> usize {
        match self {
            BlowupVertex::Apex(i) | BlowupVertex::Point(i, _) => i,
        }
    }

    pub fn is_apex(self) -> bool {
        matches!(self, BlowupVertex::Apex(_))
    }
}

/// A truncated point of `L_v`: an element of `P_v` and its coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquidPoint {
    pub element: GroupWord,
    pub coord: Rational,
}

/// A set of pairwise adjacent blowup vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(BTreeSet<BlowupVertex>);

impl Simplex {
    pub fn empty() -> Self {
        Simplex(BTreeSet::new())
    }

    pub fn vertices(&self) -> &BTreeSet<BlowupVertex> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The support `p(Δ)`.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().map(|u| u.support()).collect()
    }

    /// `Δ_v = Δ ∩ Squid(v)`.
    pub fn part(&self, v: usize) -> BTreeSet<BlowupVertex> {
        self.0.iter().copied().filter(|u| u.support() == v).collect()
    }
}

#[derive(Debug, Clone)]
pub struct BlowupBall {
    support: ExtBall,
    atlas: ChartAtlas,
    squids: Vec<Vec<SquidPoint>>,
    window: Rational,
    level_radius: u64,
    staple_threshold: u64,
}

impl BlowupBall {
    /// Builds the blowup of `support` with squid points `c·z^k`,
    /// `|k·m(z)| ≤ window`, for each support vertex `c·b·c⁻¹` with central
    /// generator `z = b`.
    pub fn new(support: ExtBall, atlas: ChartAtlas, window: Rational) -> Result<Self> {
        if window.is_negative() {
            return Err(Error::Precondition(format!("coordinate window {window} is negative")));
        }
        let raag = atlas.raag().clone();
        let mut squids = Vec::with_capacity(support.len());
        for v in support.vertices() {
            let chart = atlas.chart(v.base)?;
            let step = chart.central_value().abs();
            let reach = (window / step).floor().to_integer();
            let z = raag.letter(Letter::pos(v.base));
            let mut points = Vec::new();
            for k in -reach..=reach {
                let element = raag.mul(&v.conjugator, &raag.power(&z, k));
                let coord = atlas.coord(v, &element)?;
                points.push(SquidPoint { element, coord });
            }
            points.sort_by_key(|p| p.coord);
            squids.push(points);
        }
        Ok(BlowupBall {
            support,
            atlas,
            squids,
            window,
            level_radius: DEFAULT_LEVEL_RADIUS,
            staple_threshold: DEFAULT_STAPLE_THRESHOLD,
        })
    }

    /// Sets the coarse-level radius `R` and the staple threshold `T`.
    pub fn with_params(mut self, level_radius: u64, staple_threshold: u64) -> Self {
        self.level_radius = level_radius;
        self.staple_threshold = staple_threshold;
        self
    }

    pub fn raag(&self) -> &Raag {
        self.atlas.raag()
    }

    pub fn support(&self) -> &ExtBall {
        &self.support
    }

    pub fn atlas(&self) -> &ChartAtlas {
        &self.atlas
    }

    pub fn window(&self) -> Rational {
        self.window
    }

    pub fn level_radius(&self) -> u64 {
        self.level_radius
    }

    pub fn staple_threshold(&self) -> u64 {
        self.staple_threshold
    }

    pub fn squid_points(&self, v: usize) -> &[SquidPoint] {
        &self.squids[v]
    }

    pub fn point(&self, u: BlowupVertex) -> Option<&SquidPoint> {
        match u {
            BlowupVertex::Apex(_) => None,
            BlowupVertex::Point(i, j) => self.squids.get(i).and_then(|s| s.get(j)),
        }
    }

    /// All vertices: each squid's apex followed by its points.
    pub fn vertices(&self) -> Vec<BlowupVertex> {
        let mut out = Vec::new();
        for (i, points) in self.squids.iter().enumerate() {
            out.push(BlowupVertex::Apex(i));
            out.extend((0..points.len()).map(|j| BlowupVertex::Point(i, j)));
        }
        out
    }

    /// The vertices of `Squid(v)`.
    pub fn squid(&self, v: usize) -> BTreeSet<BlowupVertex> {
        std::iter::once(BlowupVertex::Apex(v))
            .chain((0..self.squids[v].len()).map(|j| BlowupVertex::Point(v, j)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.squids.iter().map(|s| s.len() + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.squids.is_empty()
    }

    pub fn contains(&self, u: BlowupVertex) -> bool {
        match u {
            BlowupVertex::Apex(i) => i < self.squids.len(),
            BlowupVertex::Point(i, j) => i < self.squids.len() && j < self.squids[i].len(),
        }
    }

    /// Inside a squid only the apex is adjacent to the points; across squids
    /// everything is adjacent exactly over support edges.
    pub fn adjacent(&self, u: BlowupVertex, w: BlowupVertex) -> bool {
        let (i, j) = (u.support(), w.support());
        if i == j {
            u != w && (u.is_apex() || w.is_apex())
        } else {
            self.support.adjacent(i, j)
        }
    }

    pub fn edges(&self) -> Vec<(BlowupVertex, BlowupVertex)> {
        let vs = self.vertices();
        let mut out = Vec::new();
        for (a, &u) in vs.iter().enumerate() {
            for &w in &vs[a + 1..] {
                if self.adjacent(u, w) {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Edges inside squids (apex to point).
    pub fn squid_edge_count(&self) -> usize {
        self.squids.iter().map(Vec::len).sum()
    }

    /// Edges of the joins over support edges.
    pub fn join_edge_count(&self) -> usize {
        self.support
            .edges()
            .map(|(i, j)| (self.squids[i].len() + 1) * (self.squids[j].len() + 1))
            .sum()
    }

    /// Adjacency lists indexed like [`BlowupBall::vertices`].
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let vs = self.vertices();
        (0..vs.len())
            .map(|a| (0..vs.len()).filter(|&b| a != b && self.adjacent(vs[a], vs[b])).collect())
            .collect()
    }

    /// Checks that the vertices exist and are pairwise adjacent.
    pub fn simplex(&self, vertices: impl IntoIterator<Item = BlowupVertex>) -> Result<Simplex> {
        let set: BTreeSet<BlowupVertex> = vertices.into_iter().collect();
        let list: Vec<BlowupVertex> = set.iter().copied().collect();
        for (a, &u) in list.iter().enumerate() {
            if !self.contains(u) || list[a + 1..].iter().any(|&w| !self.adjacent(u, w)) {
                return Err(Error::NotASimplex);
            }
        }
        Ok(Simplex(set))
    }

    /// Every simplex of the ball, the empty one included.
    pub fn simplices(&self) -> Vec<Simplex> {
        let vs = self.vertices();
        let mut out = vec![Simplex::empty()];
        let mut frontier: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((clique, start)) = frontier.pop() {
            for b in start..vs.len() {
                if clique.iter().all(|&a| self.adjacent(vs[a], vs[b])) {
                    let mut next = clique.clone();
                    next.push(b);
                    out.push(Simplex(next.iter().map(|&i| vs[i]).collect()));
                    frontier.push((next, b + 1));
                }
            }
        }
        out.sort();
        out
    }

    /// Simplices of the shape `{(v,x),(w,y)}`.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (i, j) in self.support.edges() {
            for x in 0..self.squids[i].len() {
                for y in 0..self.squids[j].len() {
                    out.push(Simplex(BTreeSet::from([
                        BlowupVertex::Apex(i),
                        BlowupVertex::Point(i, x),
                        BlowupVertex::Apex(j),
                        BlowupVertex::Point(j, y),
                    ])));
                }
            }
        }
        out
    }

    /// `a^{c}` for an apex, `a^{c}|c a^2` for a point (vertex, then element).
    pub fn format_vertex(&self, u: BlowupVertex) -> String {
        let r = self.raag();
        let name = r.format_vertex(self.support.vertex(u.support()));
        match self.point(u) {
            None => name,
            Some(p) => format!("{name}|{}", r.format(&p.element)),
        }
    }

    pub fn format_simplex(&self, s: &Simplex) -> String {
        let parts: Vec<String> = s
            .support()
            .into_iter()
            .map(|v| {
                let names: Vec<String> = s.part(v).into_iter().map(|u| self.format_vertex(u)).collect();
                format!("({})", names.join(", "))
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn to_dot(&self) -> String {
        let vs = self.vertices();
        let mut out = String::from("graph blowup {\n");
        for (a, &u) in vs.iter().enumerate() {
            let coord = self.point(u).map(|p| p.coord.to_string()).unwrap_or_default();
            let shape = if u.is_apex() { "box" } else { "ellipse" };
            let _ = writeln!(
                out,
                "  n{a} [label=\"{}\", coord=\"{coord}\", shape={shape}];",
                self.format_vertex(u)
            );
        }
        let pos = |u: BlowupVertex| vs.iter().position(|&w| w == u).expect("vertex of the ball");
        for (u, w) in self.edges() {
            let _ = writeln!(out, "  n{} -- n{};", pos(u), pos(w));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_export(&self) -> BlowupExport {
        let r = self.raag();
        let squids = self
            .support
            .vertices()
            .iter()
            .zip(&self.squids)
            .map(|(v, points)| SquidExport {
                vertex: r.format_vertex(v),
                points: points
                    .iter()
                    .map(|p| PointExport {
                        element: r.format(&p.element),
                        coord: p.coord.to_string(),
                    })
                    .collect(),
            })
            .collect();
        BlowupExport {
            window: self.window.to_string(),
            level_radius: self.level_radius,
            staple_threshold: self.staple_threshold,
            vertex_count: self.len(),
            squid_edges: self.squid_edge_count(),
            join_edges: self.join_edge_count(),
            squids,
            edges: self
                .edges()
                .into_iter()
                .map(|(u, w)| [self.format_vertex(u), self.format_vertex(w)])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointExport {
    pub element: String,
    pub coord: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SquidExport {
    pub vertex: String,
    pub points: Vec<PointExport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlowupExport {
    pub window: String,
    pub level_radius: u64,
    pub staple_threshold: u64,
    pub vertex_count: usize,
    pub squid_edges: usize,
    pub join_edges: usize,
    pub squids: Vec<SquidExport>,
    pub edges: Vec<[String; 2]>,
}
