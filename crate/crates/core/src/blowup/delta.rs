//! Four-point hyperbolicity constant of a finite graph, per connected
//! component, exhaustively for small components and by seeded sampling
//! otherwise.

use std::collections::VecDeque;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::qm::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaParams {
    /// Components with at most this many quadruples are scanned exhaustively.
    pub exhaustive_cap: u64,
    /// Number of random quadruples for larger components.
    pub samples: u64,
    pub seed: u64,
}

impl Default for DeltaParams {
    fn default() -> Self {
        DeltaParams {
            exhaustive_cap: 2_000_000,
            samples: 200_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDelta {
    /// Vertex indices of the component, ascending.
    pub vertices: Vec<usize>,
    pub delta: Rational,
    pub exhaustive: bool,
    pub quadruples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaEstimate {
    pub components: Vec<ComponentDelta>,
}

impl DeltaEstimate {
    /// Largest value over all components (zero for the empty graph).
    pub fn max_delta(&self) -> Rational {
        self.components
            .iter()
            .map(|c| c.delta)
            .max()
            .unwrap_or_else(|| Rational::from_integer(0))
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

fn bfs(adjacency: &[Vec<usize>], from: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adjacency.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        let d = dist[i].expect("queued vertices have distances");
        for &j in &adjacency[i] {
            if dist[j].is_none() {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}

/// Twice the four-point defect: the largest of the three pair sums minus the
/// middle one.
fn defect2(d: &[Vec<u32>], [x, y, z, w]: [usize; 4]) -> u32 {
    let mut sums = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
    sums.sort_unstable();
    sums[2] - sums[1]
}

fn binomial4(n: u64) -> u64 {
    if n < 4 {
        0
    } else {
        n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4
    }
}

/// The four-point `δ` of the graph given by adjacency lists, per component.
pub fn delta_hyperbolicity_estimate(adjacency: &[Vec<usize>], params: &DeltaParams) -> DeltaEstimate {
    let n = adjacency.len();
    let all: Vec<Vec<Option<u32>>> = (0..n).into_par_iter().map(|i| bfs(adjacency, i)).collect();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&j| all[start][j].is_some()).collect();
        for &v in &vertices {
            seen[v] = true;
        }
        let d: Vec<Vec<u32>> = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| all[i][j].expect("same component")).collect())
            .collect();
        let size = vertices.len();
        let total = binomial4(size as u64);
        let (twice, exhaustive, quadruples) = if total <= params.exhaustive_cap {
            let best = (0..size)
                .combinations(4)
                .par_bridge()
                .map(|q| defect2(&d, [q[0], q[1], q[2], q[3]]))
                .max()
                .unwrap_or(0);
            (best, true, total)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ start as u64);
            let mut best = 0;
            for _ in 0..params.samples {
                let q = sample(&mut rng, size, 4);
                best = best.max(defect2(&d, [q.index(0), q.index(1), q.index(2), q.index(3)]));
            }
            (best, false, params.samples)
        };
        components.push(ComponentDelta {
            vertices,
            delta: Rational::new(i64::from(twice), 2),
            exhaustive,
            quadruples,
        });
    }
    DeltaEstimate { components }
}
