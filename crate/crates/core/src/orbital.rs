//! Undirected graphs with bitset adjacency, and orbital graphs of
//! transitive permutation groups.

use thiserror::Error;

use crate::perm::{PermutationGroup, Suborbit};

/// Hard cap on vertex count (bitset rows stay cache-friendly well below it).
pub const MAX_VERTICES: usize = 65_536;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitalError {
    /// Vertex index at or beyond `n`.
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    /// Self-loops are rejected.
    #[error("loop at vertex {0}")]
    LoopEdge(u32),
    /// Vertex count exceeds [`MAX_VERTICES`].
    #[error("vertex count {0} exceeds the supported maximum")]
    TooManyVertices(usize),
    /// The trivial suborbit has no orbital graph.
    #[error("trivial suborbit has no orbital graph")]
    TrivialSuborbit,
    /// Malformed edge-list text.
    #[error("edge list parse error: {0}")]
    Parse(String),
}

/// An immutable simple undirected graph on `{0..n-1}`.
///
/// Adjacency is one `u64` bitset row per vertex; the content hash is an
/// FNV-1a digest of the sorted edge list and identifies the graph inside
/// Hamilton-cycle certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    edge_count: usize,
    hash: u64,
}

impl Graph {
    /// Builds a graph from undirected edges (duplicates collapse).
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Graph, OrbitalError> {
        if n > MAX_VERTICES {
            return Err(OrbitalError::TooManyVertices(n));
        }
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (u, v) in edges {
            if u == v {
                return Err(OrbitalError::LoopEdge(u));
            }
            for w in [u, v] {
                if w as usize >= n {
                    return Err(OrbitalError::VertexOutOfRange { vertex: w, n });
                }
            }
            bits[u as usize * words + (v as usize >> 6)] |= 1u64 << (v & 63);
            bits[v as usize * words + (u as usize >> 6)] |= 1u64 << (u & 63);
        }
        let mut g = Graph {
            n,
            words,
            bits,
            edge_count: 0,
            hash: 0,
        };
        let edges = g.edges();
        g.edge_count = edges.len();
        g.hash = fnv1a_edges(&edges);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// FNV-1a digest of the sorted `(min,max)` edge pairs, little-endian.
    pub fn content_hash(&self) -> u64 {
        self.hash
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.bits[u as usize * self.words + (v as usize >> 6)] >> (v & 63) & 1 == 1
    }

    /// The bitset row of a vertex.
    pub fn row(&self, v: u32) -> &[u64] {
        let start = v as usize * self.words;
        &self.bits[start..start + self.words]
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(wi, &word)| {
            let base = (wi as u32) << 6;
            BitIter(word).map(move |b| base + b)
        })
    }

    pub fn degree(&self, v: u32) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `Some(valency)` when all degrees agree.
    pub fn regular_valency(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n as u32).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Sorted `(min,max)` edge list.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n as u32 {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// True when the graph is connected with no cut vertex (and n >= 3).
    pub fn is_biconnected(&self) -> bool {
        let n = self.n;
        if n < 3 || !self.is_connected() {
            return false;
        }
        // Iterative lowpoint computation rooted at 0.
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![u32::MAX; n];
        let mut timer = 0usize;
        let mut root_children = 0usize;
        let mut stack: Vec<(u32, Vec<u32>)> = vec![(0, self.neighbors(0).collect())];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        while let Some((v, pending)) = stack.last_mut() {
            let v = *v;
            match pending.pop() {
                Some(w) => {
                    if disc[w as usize] == usize::MAX {
                        parent[w as usize] = v;
                        disc[w as usize] = timer;
                        low[w as usize] = timer;
                        timer += 1;
                        if v == 0 {
                            root_children += 1;
                        }
                        stack.push((w, self.neighbors(w).collect()));
                    } else if w != parent[v as usize] {
                        low[v as usize] = low[v as usize].min(disc[w as usize]);
                    }
                }
                None => {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p as usize] = low[p as usize].min(low[v as usize]);
                        if p != 0 && low[v as usize] >= disc[p as usize] {
                            return false;
                        }
                    }
                }
            }
        }
        root_children < 2
    }

    /// Plain-text export: header `n m`, then one `u v` line per edge with
    /// `u < v`, sorted.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the [`Graph::to_edge_list_string`] format.
    pub fn parse_edge_list(text: &str) -> Result<Graph, OrbitalError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| OrbitalError::Parse("empty edge list".into()))?;
        let mut head = header.split_whitespace();
        let n: usize = head
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| OrbitalError::Parse(format!("bad header {header:?}")))?;
        let m: usize = head
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| OrbitalError::Parse(format!("bad header {header:?}")))?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| OrbitalError::Parse(format!("bad edge line {line:?}")))?;
            let v: u32 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| OrbitalError::Parse(format!("bad edge line {line:?}")))?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(OrbitalError::Parse(format!(
                "header promises {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, edges)
    }

    /// Complete graph, mainly for tests and quotient modeling.
    pub fn complete(n: usize) -> Graph {
        let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph within caps")
    }

    /// Cycle graph `C_n`.
    pub fn cycle(n: usize) -> Graph {
        let edges = (0..n as u32).map(|u| (u, ((u + 1) % n as u32)));
        Graph::from_edges(n, edges).expect("cycle within caps")
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

fn fnv1a_edges(edges: &[(u32, u32)]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: [u8; 4]| {
        for b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for &(u, v) in edges {
        eat(u.to_le_bytes());
        eat(v.to_le_bytes());
    }
    hash
}

/// The orbital graph `X(G, Δ)` for a self-paired suborbit, or
/// `X(G, Δ ∪ Δ*)` otherwise (the partner is unioned automatically).
///
/// `group` must be the transitive group whose `suborbits(base)` produced the
/// listing; vertex `v` is adjacent to the image of the suborbit under any
/// element carrying `base` to `v`.
pub fn orbital_graph(
    group: &PermutationGroup,
    base: u32,
    suborbits: &[Suborbit],
    index: usize,
) -> Result<Graph, OrbitalError> {
    let chosen = &suborbits[index];
    if chosen.points == [base] {
        return Err(OrbitalError::TrivialSuborbit);
    }
    let n = group.degree();
    let mut seed: Vec<u32> = chosen.points.clone();
    if !chosen.self_paired {
        seed.extend_from_slice(&suborbits[chosen.paired_with].points);
    }
    // Transversal built breadth-first: one composition per vertex.
    let mut reps: Vec<Option<crate::perm::Permutation>> = vec![None; n];
    reps[base as usize] = Some(crate::perm::Permutation::identity(n));
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(p) = queue.pop_front() {
        for g in group.generators() {
            let q = g.image(p);
            if reps[q as usize].is_none() {
                let u = reps[p as usize].as_ref().unwrap().then(g);
                reps[q as usize] = Some(u);
                queue.push_back(q);
            }
        }
    }
    let mut edges = Vec::with_capacity(n * seed.len() / 2);
    for v in 0..n as u32 {
        let u = reps[v as usize]
            .as_ref()
            .expect("transitive group reaches every vertex");
        for &d in &seed {
            edges.push((v, u.image(d)));
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn basic_graph_queries() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(g.regular_valency(), Some(2));
        assert!(g.is_connected());
        assert!(!Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
            .unwrap()
            .is_connected());
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(OrbitalError::LoopEdge(1)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 5)]),
            Err(OrbitalError::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn biconnectivity() {
        assert!(Graph::cycle(4).is_biconnected());
        assert!(Graph::complete(5).is_biconnected());
        // Path: both interior vertices are cut vertices.
        assert!(!Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap().is_biconnected());
        // Two triangles sharing vertex 2.
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!bowtie.is_biconnected());
        assert!(!Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
            .unwrap()
            .is_biconnected());
    }

    #[test]
    fn hash_is_order_independent_and_sensitive() {
        let a = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(3, 2), (1, 0), (0, 1)]).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        let c = Graph::from_edges(4, [(0, 1), (1, 3)]).unwrap();
        assert_ne!(a.content_hash(), c.content_hash());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete(5);
        let text = g.to_edge_list_string();
        assert!(text.starts_with("5 10\n"));
        let parsed = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(parsed.edges(), g.edges());
        assert_eq!(parsed.content_hash(), g.content_hash());
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
    }

    #[test]
    fn orbital_graph_of_dihedral_suborbit() {
        // D5 on the pentagon: the suborbit {1,4} yields C5 itself.
        let gens = vec![
            Permutation::parse_cycles(5, "(0 1 2 3 4)").unwrap(),
            Permutation::parse_cycles(5, "(1 4)(2 3)").unwrap(),
        ];
        let g = PermutationGroup::new(5, gens).unwrap();
        let subs = g.suborbits(0).unwrap();
        assert_eq!(
            orbital_graph(&g, 0, &subs, 0),
            Err(OrbitalError::TrivialSuborbit)
        );
        let x = orbital_graph(&g, 0, &subs, 1).unwrap();
        assert_eq!(x.regular_valency(), Some(2));
        assert!(x.is_connected());
        assert_eq!(x.content_hash(), Graph::cycle(5).content_hash());
    }

    #[test]
    fn non_self_paired_union_is_symmetric() {
        // Z7 regular action: suborbit {1} pairs with {6}; the orbital graph
        // is the circulant with connection set {1,6}, i.e. C7.
        let g = PermutationGroup::new(
            7,
            vec![Permutation::parse_cycles(7, "(0 1 2 3 4 5 6)").unwrap()],
        )
        .unwrap();
        let subs = g.suborbits(0).unwrap();
        let idx = subs.iter().position(|s| s.representative == 1).unwrap();
        assert!(!subs[idx].self_paired);
        let x = orbital_graph(&g, 0, &subs, idx).unwrap();
        assert_eq!(x.regular_valency(), Some(2));
        assert_eq!(x.content_hash(), Graph::cycle(7).content_hash());
    }
}
