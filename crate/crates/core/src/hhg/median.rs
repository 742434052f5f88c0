//! Coordinatewise coarse medians and the divergence experiment for the
//! `φ^λ` family of quasiline charts.

use std::collections::BTreeMap;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::{Coordinate, Domain, ShortStructure};
use crate::error::{Error, Result};
use crate::qm::{Quasimorphism, Rational};
use crate::raag::{GroupWord, Raag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianResult {
    pub tuple: BTreeMap<Domain, Coordinate>,
    /// The input whose coordinate was chosen in each domain.
    pub representatives: BTreeMap<Domain, GroupWord>,
}

impl MedianResult {
    pub fn quasiline_representatives(&self) -> impl Iterator<Item = (&Domain, &GroupWord)> {
        self.representatives.iter().filter(|(d, _)| matches!(d, Domain::Ell(_)))
    }
}

/// Index of the input attaining the median of `values`, preferring the
/// shortlex-smallest word among ties.
fn median_index(values: &[Rational; 3], words: &[GroupWord; 3]) -> usize {
    let mut sorted = *values;
    sorted.sort();
    (0..3)
        .filter(|&i| values[i] == sorted[1])
        .min_by(|&i, &j| words[i].cmp(&words[j]))
        .expect("the median is attained")
}

/// Index minimising the Gromov product of the other two inputs, preferring
/// the shortlex-smallest word among ties.
fn centre_index(d: &[[Rational; 3]; 3], words: &[GroupWord; 3]) -> usize {
    let product = |i: usize| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        d[i][j] + d[i][k] - d[j][k]
    };
    (0..3)
        .min_by(|&i, &j| product(i).cmp(&product(j)).then_with(|| words[i].cmp(&words[j])))
        .expect("three inputs")
}

impl ShortStructure {
    /// The coordinatewise median of three elements: exact medians on every
    /// quasiline, and the Gromov-product centre on `U_v` and `S`.
    pub fn median_tuple(&self, inputs: [&GroupWord; 3]) -> Result<MedianResult> {
        let raag = self.raag();
        let words: [GroupWord; 3] = [
            raag.normal_form(inputs[0])?,
            raag.normal_form(inputs[1])?,
            raag.normal_form(inputs[2])?,
        ];
        let per_domain: Vec<(Domain, Coordinate, GroupWord)> = self
            .domains()
            .into_par_iter()
            .map(|domain| {
                let coords: Vec<Coordinate> = words.iter().map(|w| self.project(w, &domain)).collect::<Result<_>>()?;
                let chosen = match &domain {
                    Domain::Ell(_) => {
                        let values = [ell_value(&coords[0]), ell_value(&coords[1]), ell_value(&coords[2])];
                        median_index(&values, &words)
                    }
                    _ => {
                        let mut d = [[Rational::from_integer(0); 3]; 3];
                        for i in 0..3 {
                            for j in i + 1..3 {
                                d[i][j] = self.coordinate_distance(&coords[i], &coords[j])?;
                                d[j][i] = d[i][j];
                            }
                        }
                        centre_index(&d, &words)
                    }
                };
                Ok((domain, coords[chosen].clone(), words[chosen].clone()))
            })
            .collect::<Result<_>>()?;
        let mut tuple = BTreeMap::new();
        let mut representatives = BTreeMap::new();
        for (domain, coord, rep) in per_domain {
            tuple.insert(domain.clone(), coord);
            representatives.insert(domain, rep);
        }
        Ok(MedianResult { tuple, representatives })
    }
}

fn ell_value(c: &Coordinate) -> Rational {
    match c {
        Coordinate::Ell(x) => *x,
        _ => unreachable!("quasiline domains have rational coordinates"),
    }
}

/// Coarse four-point statistic per quasiline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourPointReport {
    /// `(domain label, max over quadruples)` for every quasiline of the ball.
    pub per_domain: Vec<(String, Rational)>,
    pub max: Rational,
    pub quadruples: usize,
}

/// For each quasiline chart, the largest distance between the coordinates
/// of `μ(μ(a,b,c),b,d)` and `μ(a,b,μ(c,b,d))`, where inner medians are
/// realised by their representatives.
pub fn four_point_check(structure: &ShortStructure, quadruples: &[[GroupWord; 4]]) -> Result<FourPointReport> {
    if quadruples.is_empty() {
        return Err(Error::Precondition("four-point check needs at least one quadruple".into()));
    }
    let raag = structure.raag();
    let domains = structure.ell_domains();
    let per_domain: Vec<(String, Rational)> = domains
        .par_iter()
        .map(|domain| {
            let mut best = Rational::from_integer(0);
            for q in quadruples {
                let words: Vec<GroupWord> = q.iter().map(|w| raag.normal_form(w)).collect::<Result<_>>()?;
                let values: Vec<Rational> = words
                    .iter()
                    .map(|w| structure.project(w, domain).map(|c| ell_value(&c)))
                    .collect::<Result<_>>()?;
                let pick = |i: usize, j: usize, k: usize| {
                    let idx = median_index(
                        &[values[i], values[j], values[k]],
                        &[words[i].clone(), words[j].clone(), words[k].clone()],
                    );
                    [i, j, k][idx]
                };
                let (a, b, c, d) = (0, 1, 2, 3);
                let left = values[pick(pick(a, b, c), b, d)];
                let right = values[pick(a, b, pick(c, b, d))];
                best = best.max((left - right).abs());
            }
            Ok((structure.format_domain(domain), best))
        })
        .collect::<Result<_>>()?;
    let max = per_domain
        .iter()
        .map(|(_, v)| *v)
        .max()
        .unwrap_or_else(|| Rational::from_integer(0));
    Ok(FourPointReport {
        per_domain,
        max,
        quadruples: quadruples.len(),
    })
}

/// The family of triples `(1, z^k, g^l)` compared under two charts
/// `φ^{λ} = φ_v + λ·ψ∘𝔭_v` at the vertex `v`.
#[derive(Debug, Clone)]
pub struct DivergenceParams {
    pub vertex: u32,
    pub z: GroupWord,
    pub g: GroupWord,
    pub psi: Quasimorphism,
    pub lambda1: Rational,
    pub lambda2: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivergenceRow {
    pub l: i64,
    pub k: i64,
    pub lambda1: Rational,
    pub lambda2: Rational,
    pub phi1_of_triple: [Rational; 3],
    pub phi2_of_triple: [Rational; 3],
    pub x1: GroupWord,
    pub x2: GroupWord,
    /// `|φ^{λ2}(x1) − φ^{λ2}(x2)|`.
    pub divergence: Rational,
    /// `|φ^{λ1}(x1) − φ^{λ1}(x2)|`.
    pub divergence_lambda1: Rational,
}

struct Charts {
    phi1: Quasimorphism,
    phi2: Quasimorphism,
}

fn prepare(raag: &Raag, p: &DivergenceParams) -> Result<Charts> {
    let v = p.vertex;
    if p.z.is_empty() || p.z.letters().iter().any(|l| l.gen != v) {
        return Err(Error::Precondition(format!(
            "z = {} must be a nontrivial element of <{}>",
            raag.format(&p.z),
            raag.gen_name(v)
        )));
    }
    let centralizer = raag.centralizer(v);
    if !raag.in_parabolic(&p.g, &centralizer) {
        return Err(Error::Precondition(format!(
            "g = {} must centralise {}",
            raag.format(&p.g),
            raag.gen_name(v)
        )));
    }
    let projected = raag.delete_generator(&raag.normal_form(&p.g)?, v);
    if p.psi.eval(&projected)? == Rational::from_integer(0) {
        return Err(Error::Precondition(format!(
            "psi vanishes on the projection {} of g",
            raag.format(&projected)
        )));
    }
    let phi = Quasimorphism::exponent_hom(raag, v);
    Ok(Charts {
        phi1: Quasimorphism::phi_lambda_at(&phi, &p.psi, p.lambda1, v)?,
        phi2: Quasimorphism::phi_lambda_at(&phi, &p.psi, p.lambda2, v)?,
    })
}

fn row(raag: &Raag, p: &DivergenceParams, charts: &Charts, k: i64, l: i64) -> Result<DivergenceRow> {
    let triple: [GroupWord; 3] = [raag.identity(), raag.power(&p.z, k), raag.power(&p.g, l)];
    let eval = |m: &Quasimorphism| -> Result<[Rational; 3]> {
        Ok([m.eval(&triple[0])?, m.eval(&triple[1])?, m.eval(&triple[2])?])
    };
    let phi1 = eval(&charts.phi1)?;
    let phi2 = eval(&charts.phi2)?;
    let i1 = median_index(&phi1, &triple);
    let i2 = median_index(&phi2, &triple);
    let zero = Rational::from_integer(0);
    let (divergence, divergence_lambda1) = if triple[i1] == triple[i2] {
        (zero, zero)
    } else {
        ((phi2[i1] - phi2[i2]).abs(), (phi1[i1] - phi1[i2]).abs())
    };
    Ok(DivergenceRow {
        l,
        k,
        lambda1: p.lambda1,
        lambda2: p.lambda2,
        phi1_of_triple: phi1,
        phi2_of_triple: phi2,
        x1: triple[i1].clone(),
        x2: triple[i2].clone(),
        divergence,
        divergence_lambda1,
    })
}

/// Median representatives of `(1, z^k, g^l)` in the two charts at `v` and
/// their separation.
pub fn median_divergence(p: &DivergenceParams, k: i64, l: i64) -> Result<DivergenceRow> {
    let raag = p.psi.raag();
    let charts = prepare(raag, p)?;
    row(raag, p, &charts, k, l)
}

/// Rows for every `(l, k)` pair, ordered by `l` then `k`.
pub fn divergence_scan(p: &DivergenceParams, pairs: &[(i64, i64)]) -> Result<Vec<DivergenceRow>> {
    let raag = p.psi.raag();
    let charts = prepare(raag, p)?;
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.par_iter().map(|&(l, k)| row(raag, p, &charts, k, l)).collect()
}
