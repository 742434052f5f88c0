//! One quasiline chart per standard generator, transported to every vertex
//! `v = c·b·c⁻¹` of the support graph: `L_v` has vertex set `P_v = c·C(b)`
//! and the coordinate of `g ∈ P_v` is `m_b(c⁻¹ g)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quasiline::QuasilineChart;
use crate::qm::Rational;
use crate::raag::{GroupWord, Raag};
use crate::support::ExtVertex;

#[derive(Debug, Clone)]
pub struct ChartAtlas {
    raag: Raag,
    charts: BTreeMap<u32, QuasilineChart>,
}

impl ChartAtlas {
    pub fn new(raag: &Raag, charts: impl IntoIterator<Item = QuasilineChart>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for chart in charts {
            if chart.raag().id() != raag.id() {
                return Err(Error::MixedGraphs);
            }
            let v = chart.vertex();
            if map.insert(v, chart).is_some() {
                return Err(Error::Precondition(format!(
                    "two charts for generator {}",
                    raag.gen_name(v)
                )));
            }
        }
        Ok(ChartAtlas {
            raag: raag.clone(),
            charts: map,
        })
    }

    /// The exponent-sum chart at every generator.
    pub fn exponent(raag: &Raag, cutoff: Option<Rational>) -> Result<Self> {
        let charts = (0..raag.rank() as u32)
            .map(|v| QuasilineChart::exponent(raag, v, cutoff))
            .collect::<Result<Vec<_>>>()?;
        Self::new(raag, charts)
    }

    /// Replaces (or adds) the chart at the chart's own generator.
    pub fn with_chart(mut self, chart: QuasilineChart) -> Self {
        self.charts.insert(chart.vertex(), chart);
        self
    }

    pub fn raag(&self) -> &Raag {
        &self.raag
    }

    pub fn charts(&self) -> impl Iterator<Item = &QuasilineChart> {
        self.charts.values()
    }

    pub fn chart(&self, base: u32) -> Result<&QuasilineChart> {
        self.charts
            .get(&base)
            .ok_or_else(|| Error::Precondition(format!("no chart for generator {}", self.raag.gen_name(base))))
    }

    /// Whether `g` lies in the coset `P_v`.
    pub fn in_coset(&self, v: &ExtVertex, g: &GroupWord) -> bool {
        let (rep, _) = self.raag.right_divisor_split(g, &self.raag.centralizer(v.base));
        rep == v.conjugator
    }

    /// `c⁻¹ g`, the standard-position copy of `g ∈ P_v`.
    pub fn localize(&self, v: &ExtVertex, g: &GroupWord) -> GroupWord {
        self.raag.product(&[&v.conjugator.formal_inverse(), g])
    }

    /// Quasiline coordinate of `g ∈ P_v` in `L_v`.
    pub fn coord(&self, v: &ExtVertex, g: &GroupWord) -> Result<Rational> {
        if !self.in_coset(v, g) {
            return Err(Error::Domain {
                element: self.raag.format(g),
                domain: format!("P_{}", self.raag.format_vertex(v)),
            });
        }
        self.chart(v.base)?.coord(&self.localize(v, g))
    }

    /// The gate of `g` onto `P_v`, in `P_v`.
    pub fn gate(&self, v: &ExtVertex, g: &GroupWord) -> GroupWord {
        self.raag.coset_gate(&v.conjugator, &self.raag.centralizer(v.base), g)
    }

    /// Coordinate of the gate of `g` onto `P_v`.
    pub fn project(&self, v: &ExtVertex, g: &GroupWord) -> Result<Rational> {
        let local = self.raag.parabolic_gate(&self.localize(v, g), &self.raag.centralizer(v.base));
        self.chart(v.base)?.coord(&local)
    }

    /// Certified answer to `d_{L_v}(x, g) ≤ radius` for `x, g ∈ P_v`;
    /// `None` when the τ-distance bounds straddle `radius`.
    pub fn level_within(&self, v: &ExtVertex, x: &GroupWord, g: &GroupWord, radius: u64) -> Result<Option<bool>> {
        let h = self.raag.product(&[&x.formal_inverse(), g]);
        let bounds = self.chart(v.base)?.tau_distance_bounds(&h)?;
        Ok(if bounds.upper <= radius {
            Some(true)
        } else if bounds.lower > radius {
            Some(false)
        } else {
            None
        })
    }

    /// `ρ^{ℓ_u}_{ℓ_w}`: the coordinate in `L_w` of the gate of `P_u`, taken at
    /// the canonical representative of the coset `P_u`.
    pub fn rho(&self, u: &ExtVertex, w: &ExtVertex) -> Result<Rational> {
        self.project(w, &u.conjugator)
    }
}
