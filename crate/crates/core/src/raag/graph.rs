use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// On-disk form of a defining graph: `{"vertices":[...], "edges":[["a","b"],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// A finite simplicial graph with no triangles and no squares, the seed of a
/// right-angled Artin group. Vertex order is the declared generator order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, u32>,
    adjacency: Vec<Vec<bool>>,
    edges: BTreeSet<(u32, u32)>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl DefiningGraph {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], edges: &[(T, T)]) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref();
            if !valid_name(v) {
                return Err(GraphError::InvalidName(v.to_string()));
            }
            if index.insert(v.to_string(), names.len() as u32).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
            names.push(v.to_string());
        }
        let n = names.len();
        let mut adjacency = vec![vec![false; n]; n];
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if i == j {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            let key = (i.min(j), i.max(j));
            if !edge_set.insert(key) {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
            adjacency[i as usize][j as usize] = true;
            adjacency[j as usize][i as usize] = true;
        }
        let graph = DefiningGraph {
            names,
            index,
            adjacency,
            edges: edge_set,
        };
        graph.check_triangle_free()?;
        graph.check_square_free()?;
        graph.check_no_isolated()?;
        Ok(graph)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str)> = file
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        Self::new(&file.vertices, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
        Self::from_file(&file)
    }

    /// The path `v_0 - v_1 - ... - v_{n-1}`.
    pub fn path(names: &[&str]) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(names, &edges)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.name(a).to_string(), self.name(b).to_string()])
                .collect(),
        }
    }

    fn check_triangle_free(&self) -> Result<(), GraphError> {
        let n = self.len() as u32;
        for &(a, b) in &self.edges {
            for c in 0..n {
                if c > b && self.adjacent(a, c) && self.adjacent(b, c) {
                    return Err(GraphError::Triangle(
                        self.name(a).into(),
                        self.name(b).into(),
                        self.name(c).into(),
                    ));
                }
            }
        }
        Ok(())
    }

    // In a triangle-free graph every 4-cycle is induced, so it suffices to
    // find two distinct vertices sharing two common neighbours.
    fn check_square_free(&self) -> Result<(), GraphError> {
        let n = self.len() as u32;
        for a in 0..n {
            for c in (a + 1)..n {
                let common: Vec<u32> = (0..n)
                    .filter(|&x| self.adjacent(a, x) && self.adjacent(c, x))
                    .take(2)
                    .collect();
                if common.len() == 2 {
                    return Err(GraphError::Square(
                        self.name(a).into(),
                        self.name(common[0]).into(),
                        self.name(c).into(),
                        self.name(common[1]).into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_no_isolated(&self) -> Result<(), GraphError> {
        if self.len() == 1 {
            return Ok(());
        }
        for v in 0..self.len() as u32 {
            if self.degree(v) == 0 {
                return Err(GraphError::IsolatedVertex(self.name(v).into()));
            }
        }
        Ok(())
    }

    /// Extra requirements for the median experiment: connected, at least three vertices.
    pub fn require_experiment_ready(&self) -> Result<(), GraphError> {
        if self.len() < 3 {
            return Err(GraphError::TooFewVertices(self.len()));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (w, &adjacent) in self.adjacency[v].iter().enumerate() {
                if adjacent && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize][b as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].iter().filter(|&&x| x).count()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    /// `Lk_Λ(v)`: the neighbours of `v`.
    pub fn link(&self, v: u32) -> BTreeSet<u32> {
        (0..self.len() as u32)
            .filter(|&w| self.adjacent(v, w))
            .collect()
    }

    /// `Star_Λ(v) = {v} ∪ Lk_Λ(v)`.
    pub fn star(&self, v: u32) -> BTreeSet<u32> {
        let mut s = self.link(v);
        s.insert(v);
        s
    }

    /// Stable fingerprint used to tag words with the graph they live over.
    pub(crate) fn fingerprint(&self) -> u64 {
        // FNV-1a over the canonical description; stable across runs.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for name in &self.names {
            feed(name.as_bytes());
            feed(&[0]);
        }
        for &(a, b) in &self.edges {
            feed(&a.to_le_bytes());
            feed(&b.to_le_bytes());
        }
        h
    }
}
