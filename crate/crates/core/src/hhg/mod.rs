//! The short hierarchical structure on a RAAG at ball scale: the domains
//! `S`, `U_v` and `ℓ_v`, their relations, projections, ρ-points and sampled
//! consistency statistics.

mod median;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

pub use median::{
    divergence_scan, four_point_check, median_divergence, DivergenceParams, DivergenceRow, FourPointReport,
    MedianResult,
};

use crate::atlas::ChartAtlas;
use crate::error::{Error, Result};
use crate::qm::{Quasimorphism, Rational};
use crate::quasiline::QuasilineChart;
use crate::raag::{GroupWord, Raag};
use crate::support::{ConedDistance, ConedOffBall, ExtBall, ExtVertex};

/// A domain with (possibly) unbounded coordinate space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// The maximal domain `S`.
    Top,
    /// `U_v`, coordinatised by the free parabolic `G_{Lk(v)}`.
    U(ExtVertex),
    /// The quasiline `ℓ_v`, coordinatised by its chart.
    Ell(ExtVertex),
}

impl Domain {
    pub fn vertex(&self) -> Option<&ExtVertex> {
        match self {
            Domain::Top => None,
            Domain::U(v) | Domain::Ell(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Equal,
    /// The first domain is nested in the second.
    Nested,
    /// The second domain is nested in the first.
    Contains,
    Orthogonal,
    Transverse,
    /// Outside the computed ball, or a case not covered by the rules.
    Unknown,
}

/// A point of a coordinate space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coordinate {
    /// A group element standing in for its image in the top-level space.
    Top(GroupWord),
    /// An element of the free parabolic `G_{Lk(v)}`.
    U(GroupWord),
    Ell(Rational),
}

/// `ρ^U_V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoValue {
    /// Transverse domains: a point of `CV`.
    Point(Coordinate),
    /// `U ⊑ V`: the support vertex that `U` cones to in `CV`.
    Vertex(ExtVertex),
}

/// One consistency evaluation: `min(|π_U(g) − ρ^V_U|, |π_V(g) − ρ^U_V|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyWitness {
    pub element: GroupWord,
    pub first: Domain,
    pub second: Domain,
    pub terms: [Rational; 2],
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub max: Rational,
    /// The first evaluation (in sample, then pair order) attaining the max.
    pub witness: Option<ConsistencyWitness>,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub struct ShortStructure {
    atlas: ChartAtlas,
    support: ExtBall,
    coned: Option<ConedOffBall>,
}

impl ShortStructure {
    /// Requires a chart for the base generator of every vertex in `support`.
    pub fn new(atlas: ChartAtlas, support: ExtBall) -> Result<Self> {
        for v in support.vertices() {
            atlas.chart(v.base)?;
        }
        Ok(ShortStructure {
            atlas,
            support,
            coned: None,
        })
    }

    /// Exponent charts everywhere except `φ^λ = φ_v + λ·ψ∘𝔭_v` at `vertex`.
    pub fn phi_lambda(raag: &Raag, support: ExtBall, vertex: u32, psi: &Quasimorphism, lambda: Rational) -> Result<Self> {
        let phi = Quasimorphism::phi_lambda_at(&Quasimorphism::exponent_hom(raag, vertex), psi, lambda, vertex)?;
        let atlas = ChartAtlas::exponent(raag, None)?.with_chart(QuasilineChart::new(phi, vertex, None)?);
        Self::new(atlas, support)
    }

    /// Measures top-level distances in the coned-off Cayley graph searched to
    /// `radius` (word length otherwise).
    pub fn with_coned_off(mut self, radius: usize) -> Result<Self> {
        self.coned = Some(ConedOffBall::new(self.atlas.raag(), radius)?);
        Ok(self)
    }

    pub fn raag(&self) -> &Raag {
        self.atlas.raag()
    }

    pub fn atlas(&self) -> &ChartAtlas {
        &self.atlas
    }

    pub fn support(&self) -> &ExtBall {
        &self.support
    }

    /// `S`, then `ℓ_v` and `U_v` for every vertex of the ball.
    pub fn domains(&self) -> Vec<Domain> {
        let mut out = vec![Domain::Top];
        for v in self.support.vertices() {
            out.push(Domain::Ell(v.clone()));
            out.push(Domain::U(v.clone()));
        }
        out
    }

    pub fn ell_domains(&self) -> Vec<Domain> {
        self.support.vertices().iter().cloned().map(Domain::Ell).collect()
    }

    /// Valence of `v` in the whole support graph; `None` when infinite. A
    /// conjugate of `b` has the valence of `b`, which is infinite as soon as
    /// `b` has two neighbours in the defining graph.
    pub fn valence(&self, v: &ExtVertex) -> Option<usize> {
        match self.raag().graph().degree(v.base) {
            d if d >= 2 => None,
            d => Some(d),
        }
    }

    fn valence_above_one(&self, v: &ExtVertex) -> bool {
        self.valence(v).is_none_or(|d| d > 1)
    }

    fn adjacent(&self, v: &ExtVertex, w: &ExtVertex) -> bool {
        v != w && self.raag().vertices_adjacent(v, w).unwrap_or(false)
    }

    pub fn relation(&self, a: &Domain, b: &Domain) -> Relation {
        if a == b {
            return Relation::Equal;
        }
        if [a, b].iter().any(|d| d.vertex().is_some_and(|v| !self.support.contains(v))) {
            return Relation::Unknown;
        }
        match (a, b) {
            (_, Domain::Top) => Relation::Nested,
            (Domain::Top, _) => Relation::Contains,
            (Domain::Ell(v), Domain::Ell(w)) => {
                if self.adjacent(v, w) {
                    Relation::Orthogonal
                } else {
                    Relation::Transverse
                }
            }
            (Domain::Ell(v), Domain::U(w)) => self.ell_u_relation(v, w),
            (Domain::U(w), Domain::Ell(v)) => match self.ell_u_relation(v, w) {
                Relation::Nested => Relation::Contains,
                other => other,
            },
            (Domain::U(v), Domain::U(w)) => {
                if !self.adjacent(v, w) && self.valence_above_one(v) && self.valence_above_one(w) {
                    Relation::Transverse
                } else {
                    Relation::Unknown
                }
            }
        }
    }

    fn ell_u_relation(&self, v: &ExtVertex, w: &ExtVertex) -> Relation {
        if v == w {
            Relation::Orthogonal
        } else if self.adjacent(v, w) {
            Relation::Nested
        } else if self.valence_above_one(w) {
            Relation::Transverse
        } else {
            Relation::Unknown
        }
    }

    /// `c⁻¹ · gate(g, P_v)`: the gate in standard position, an element of `C(b)`.
    fn local_gate(&self, v: &ExtVertex, g: &GroupWord) -> GroupWord {
        let raag = self.raag();
        raag.parabolic_gate(&self.atlas.localize(v, g), &raag.centralizer(v.base))
    }

    /// `π_U(g)`.
    pub fn project(&self, g: &GroupWord, d: &Domain) -> Result<Coordinate> {
        let raag = self.raag();
        Ok(match d {
            Domain::Top => Coordinate::Top(raag.normal_form(g)?),
            Domain::Ell(v) => Coordinate::Ell(self.atlas.project(v, g)?),
            Domain::U(v) => Coordinate::U(raag.delete_generator(&self.local_gate(v, g), v.base)),
        })
    }

    /// Distance between two coordinates of `d`: `|p − q|` on quasilines, the
    /// cone-off of the free parabolic over generator cosets on `U_v`, and the
    /// coned-off Cayley graph (or word metric) at the top.
    pub fn coordinate_distance(&self, p: &Coordinate, q: &Coordinate) -> Result<Rational> {
        let raag = self.raag();
        match (p, q) {
            (Coordinate::Ell(x), Coordinate::Ell(y)) => Ok((x - y).abs()),
            (Coordinate::U(x), Coordinate::U(y)) => {
                let diff = raag.product(&[&x.formal_inverse(), y]);
                let cost: usize = diff
                    .letters()
                    .chunk_by(|l, m| l.gen == m.gen)
                    .map(|syllable| syllable.len().min(2))
                    .sum();
                Ok(Rational::from_integer(cost as i64))
            }
            (Coordinate::Top(x), Coordinate::Top(y)) => {
                let mut d = raag.distance(x, y);
                if let Some(coned) = &self.coned {
                    for bound in [coned.distance_ub(x, y), coned.distance_ub(y, x)] {
                        if let ConedDistance::AtMost(b) = bound {
                            d = d.min(b);
                        }
                    }
                }
                Ok(Rational::from_integer(d as i64))
            }
            _ => Err(Error::Precondition("coordinates of different domain kinds".into())),
        }
    }

    /// `ρ^U_V` for `U` transverse to or nested in `V`.
    pub fn rho(&self, u: &Domain, v: &Domain) -> Result<RhoValue> {
        match self.relation(u, v) {
            Relation::Orthogonal => Err(Error::Orthogonal),
            Relation::Equal => Err(Error::Precondition("no rho from a domain to itself".into())),
            Relation::Unknown => Err(Error::Precondition("relation between the domains is unknown".into())),
            Relation::Contains => Err(Error::Unsupported(
                "rho from a domain into one nested in it is a map, not a point".into(),
            )),
            Relation::Nested => Ok(RhoValue::Vertex(u.vertex().expect("nested domains have vertices").clone())),
            Relation::Transverse => {
                let from = u.vertex().expect("transverse domains have vertices");
                Ok(RhoValue::Point(self.project(&from.conjugator, v)?))
            }
        }
    }

    /// All transverse pairs `(ℓ_v, ℓ_w)` with `v < w` in the ball.
    pub fn transverse_ell_pairs(&self) -> Vec<(Domain, Domain)> {
        let ells = self.ell_domains();
        let mut out = Vec::new();
        for (i, a) in ells.iter().enumerate() {
            for b in &ells[i + 1..] {
                if self.relation(a, b) == Relation::Transverse {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    fn rho_point(&self, u: &Domain, v: &Domain) -> Result<Coordinate> {
        match self.rho(u, v)? {
            RhoValue::Point(p) => Ok(p),
            RhoValue::Vertex(_) => Err(Error::Precondition("consistency needs transverse domains".into())),
        }
    }

    /// The consistency term of `g` for one transverse pair.
    pub fn consistency_check(&self, g: &GroupWord, first: &Domain, second: &Domain) -> Result<ConsistencyWitness> {
        let t1 = self.coordinate_distance(&self.project(g, first)?, &self.rho_point(second, first)?)?;
        let t2 = self.coordinate_distance(&self.project(g, second)?, &self.rho_point(first, second)?)?;
        Ok(ConsistencyWitness {
            element: self.raag().normal_form(g)?,
            first: first.clone(),
            second: second.clone(),
            terms: [t1, t2],
            value: t1.min(t2),
        })
    }

    /// Maximum consistency term over `samples × pairs`.
    pub fn consistency_sample(&self, samples: &[GroupWord], pairs: &[(Domain, Domain)]) -> Result<ConsistencyReport> {
        let rhos: Vec<(Coordinate, Coordinate)> = pairs
            .iter()
            .map(|(a, b)| Ok((self.rho_point(b, a)?, self.rho_point(a, b)?)))
            .collect::<Result<_>>()?;
        let per_sample: Vec<Option<ConsistencyWitness>> = samples
            .par_iter()
            .map(|g| {
                let mut best: Option<ConsistencyWitness> = None;
                for ((a, b), (rho_a, rho_b)) in pairs.iter().zip(&rhos) {
                    let t1 = self.coordinate_distance(&self.project(g, a)?, rho_a)?;
                    let t2 = self.coordinate_distance(&self.project(g, b)?, rho_b)?;
                    let value = t1.min(t2);
                    if best.as_ref().is_none_or(|w| value > w.value) {
                        best = Some(ConsistencyWitness {
                            element: g.clone(),
                            first: a.clone(),
                            second: b.clone(),
                            terms: [t1, t2],
                            value,
                        });
                    }
                }
                Ok(best)
            })
            .collect::<Result<_>>()?;
        let witness = per_sample
            .into_iter()
            .flatten()
            .reduce(|best, w| if w.value.cmp(&best.value) == Ordering::Greater { w } else { best });
        Ok(ConsistencyReport {
            max: witness.as_ref().map_or_else(|| Rational::from_integer(0), |w| w.value),
            witness,
            evaluations: samples.len() * pairs.len(),
        })
    }

    /// Coordinates of `g` in every domain.
    pub fn coordinates(&self, g: &GroupWord) -> Result<BTreeMap<Domain, Coordinate>> {
        self.domains()
            .into_iter()
            .map(|d| Ok((d.clone(), self.project(g, &d)?)))
            .collect()
    }

    pub fn format_domain(&self, d: &Domain) -> String {
        let raag = self.raag();
        match d {
            Domain::Top => "S".into(),
            Domain::U(v) => format!("U[{}]", raag.format_vertex(v)),
            Domain::Ell(v) => format!("l[{}]", raag.format_vertex(v)),
        }
    }

    pub fn format_coordinate(&self, c: &Coordinate) -> String {
        match c {
            Coordinate::Top(g) | Coordinate::U(g) => self.raag().format(g),
            Coordinate::Ell(x) => x.to_string(),
        }
    }
}
