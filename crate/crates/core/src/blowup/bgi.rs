//! Strong bounded geodesic image checks: support-graph geodesics between
//! vertices whose projections to `L_w` are far apart must pass through
//! `Star(w)`.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::BlowupBall;
use crate::error::{Error, Result};
use crate::qm::Rational;
use crate::raag::Raag;
use crate::support::ExtBall;

/// Adjacency of the ball-truncated augmented support graph: support edges
/// plus `{u, u'}` whenever the cosets `P_u`, `P_{u'}` are within distance 1
/// in the Cayley graph.
pub fn augmented_support(raag: &Raag, ball: &ExtBall) -> Vec<BTreeSet<usize>> {
    let n = ball.len();
    let mut adjacency: Vec<BTreeSet<usize>> = (0..n).map(|i| ball.neighbours(i).iter().copied().collect()).collect();
    let extra: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&(i, j)| {
            let (u, v) = (ball.vertex(i), ball.vertex(j));
            let between = raag.product(&[&u.conjugator.formal_inverse(), &v.conjugator]);
            raag.double_coset_min(&raag.centralizer(u.base), &between, &raag.centralizer(v.base))
                .len()
                <= 1
        })
        .collect();
    for (i, j) in extra {
        adjacency[i].insert(j);
        adjacency[j].insert(i);
    }
    adjacency
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BgiParams {
    /// Pairs with `|ρ_u − ρ_v|` below this are vacuous.
    pub threshold: Rational,
    /// Pairs examined; all pairs when there are no more than this.
    pub samples: usize,
    pub seed: u64,
}

impl Default for BgiParams {
    fn default() -> Self {
        BgiParams {
            threshold: Rational::from_integer(3),
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BgiViolation {
    pub u: String,
    pub v: String,
    pub separation: Rational,
    /// Length of a geodesic avoiding `Star(w)`.
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BgiReport {
    pub w: String,
    /// Pairs with `ρ` defined at both ends that were examined.
    pub checked: usize,
    /// Pairs below the separation threshold.
    pub vacuous: usize,
    pub passed: usize,
    pub violations: Vec<BgiViolation>,
}

type Distances = Vec<Option<usize>>;

fn bfs(adjacency: &[BTreeSet<usize>], from: usize, blocked: &BTreeSet<usize>) -> Distances {
    let mut dist = vec![None; adjacency.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        let d = dist[i].expect("queued vertices have distances");
        for &j in &adjacency[i] {
            if dist[j].is_none() && !blocked.contains(&j) {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}

/// For pairs `u, v` outside `Star(w)` with `|ρ^u_w − ρ^v_w| ≥ threshold`,
/// checks that no geodesic of the augmented support graph avoids `Star(w)`:
/// the distance with `Star(w)` deleted must exceed the full distance.
pub fn strong_bgi_check(ball: &BlowupBall, w: usize, params: &BgiParams) -> Result<BgiReport> {
    let support = ball.support();
    if w >= support.len() {
        return Err(Error::Precondition(format!("support vertex {w} is outside the ball")));
    }
    let raag = ball.raag();
    let atlas = ball.atlas();
    let wv = support.vertex(w);
    let star: BTreeSet<usize> = support.neighbours(w).iter().copied().chain([w]).collect();
    let candidates: Vec<usize> = (0..support.len()).filter(|i| !star.contains(i)).collect();
    let rho: Vec<Rational> = candidates
        .iter()
        .map(|&i| atlas.rho(support.vertex(i), wv))
        .collect::<Result<_>>()?;
    let mut pairs: Vec<(usize, usize)> = (0..candidates.len()).tuple_combinations().collect();
    if pairs.len() > params.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(params.samples);
        pairs.sort_unstable();
    }
    let adjacency = augmented_support(raag, support);
    let none = BTreeSet::new();
    let mut report = BgiReport {
        w: raag.format_vertex(wv),
        checked: pairs.len(),
        vacuous: 0,
        passed: 0,
        violations: Vec::new(),
    };
    let mut cache: Vec<Option<(Distances, Distances)>> = vec![None; candidates.len()];
    for (a, b) in pairs {
        let separation = (rho[a] - rho[b]).abs();
        if separation < params.threshold {
            report.vacuous += 1;
            continue;
        }
        let (full, avoiding) = cache[a].get_or_insert_with(|| {
            (
                bfs(&adjacency, candidates[a], &none),
                bfs(&adjacency, candidates[a], &star),
            )
        });
        let target = candidates[b];
        match (full[target], avoiding[target]) {
            (Some(d), Some(e)) if e == d => report.violations.push(BgiViolation {
                u: raag.format_vertex(support.vertex(candidates[a])),
                v: raag.format_vertex(support.vertex(target)),
                separation,
                distance: d,
            }),
            _ => report.passed += 1,
        }
    }
    Ok(report)
}
