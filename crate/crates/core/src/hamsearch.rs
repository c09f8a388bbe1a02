//! Hamilton-cycle search, certificates, and exhaustive non-hamiltonicity
//! proofs.
//!
//! The search is a deterministic depth-first backtracker over bitset rows.
//! Pruning rules are all sound (they never discard a completable path), so
//! an exhausted search doubles as a non-hamiltonicity proof on small graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbital::Graph;

/// Default node budget for [`find_hcycle`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest vertex count [`prove_nonhamiltonian`] accepts.
pub const NONHAM_CAP: usize = 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    /// Hamilton cycles need at least three vertices.
    #[error("graph on {0} vertices is too small for a Hamilton cycle")]
    TooSmall(usize),
    /// Exhaustive proofs are restricted to small graphs.
    #[error("{0} vertices exceeds the exhaustive-search cap of {1}")]
    CapExceeded(usize, usize),
    /// A search hint must be a path in the graph.
    #[error("hint is not a simple path in the graph: {0}")]
    BadHint(String),
}

/// Why a certificate failed verification.
///
/// `reason()` yields the stable one-word codes used in reports.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("certificate hash {cert:016x} does not match graph hash {graph:016x}")]
    HashMismatch { cert: u64, graph: u64 },
    #[error("cycle is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("consecutive cycle vertices {u} and {v} are not adjacent")]
    MissingEdge { u: u32, v: u32 },
}

impl VerifyError {
    pub fn reason(&self) -> &'static str {
        match self {
            VerifyError::HashMismatch { .. } => "hash",
            VerifyError::NotAPermutation => "permutation",
            VerifyError::MissingEdge { .. } => "adjacency",
        }
    }
}

/// A machine-checkable Hamilton cycle: the graph's content hash plus a
/// vertex ordering whose consecutive pairs (cyclically) are all edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamCertificate {
    pub graph_hash: u64,
    pub cycle: Vec<u32>,
}

impl HamCertificate {
    /// Two-line text form: `hash <hex16>` then the space-separated cycle.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("hash {:016x}\n", self.graph_hash);
        for (i, v) in self.cycle.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
        out
    }

    /// Parses the [`HamCertificate::to_file_string`] format.
    pub fn parse(text: &str) -> Result<HamCertificate, SearchError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |msg: &str| SearchError::BadHint(msg.to_string());
        let head = lines.next().ok_or_else(|| bad("empty certificate"))?;
        let hex = head
            .strip_prefix("hash ")
            .ok_or_else(|| bad("first line must be `hash <hex16>`"))?;
        let graph_hash =
            u64::from_str_radix(hex.trim(), 16).map_err(|_| bad("unparseable hash"))?;
        let cycle_line = lines.next().ok_or_else(|| bad("missing cycle line"))?;
        let cycle = cycle_line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| bad("unparseable vertex index")))
            .collect::<Result<Vec<u32>, _>>()?;
        Ok(HamCertificate { graph_hash, cycle })
    }
}

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(HamCertificate),
    /// The whole (pruned) search space was covered without finding a cycle,
    /// so none exists.
    Exhausted { expansions: u64 },
    /// The node budget ran out first; no conclusion.
    BudgetExceeded { expansions: u64 },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&HamCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Checks a certificate against a graph. All three failure reasons are
/// distinguished so corrupted certificates report what broke.
pub fn verify_certificate(graph: &Graph, cert: &HamCertificate) -> Result<(), VerifyError> {
    if cert.graph_hash != graph.content_hash() {
        return Err(VerifyError::HashMismatch {
            cert: cert.graph_hash,
            graph: graph.content_hash(),
        });
    }
    let n = graph.n();
    if cert.cycle.len() != n || n < 3 {
        return Err(VerifyError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &v in &cert.cycle {
        if v as usize >= n || seen[v as usize] {
            return Err(VerifyError::NotAPermutation);
        }
        seen[v as usize] = true;
    }
    for i in 0..n {
        let u = cert.cycle[i];
        let v = cert.cycle[(i + 1) % n];
        if !graph.has_edge(u, v) {
            return Err(VerifyError::MissingEdge { u, v });
        }
    }
    Ok(())
}

/// Deterministic depth-first Hamilton-cycle search.
///
/// The anchor is vertex 0 (or `hint[0]`); successors are tried in ascending
/// (unvisited-degree, index) order. `hint` seeds the initial path, which
/// also forces a cycle through a chosen edge: hint `[u, v]` finds a cycle
/// containing `uv` if one exists. Each pushed vertex costs one budget unit.
pub fn find_hcycle(
    graph: &Graph,
    budget: u64,
    hint: Option<&[u32]>,
) -> Result<SearchOutcome, SearchError> {
    let n = graph.n();
    if n < 3 {
        return Err(SearchError::TooSmall(n));
    }
    let seed: Vec<u32> = match hint {
        None => vec![0],
        Some(h) => {
            if h.is_empty() {
                vec![0]
            } else {
                let mut seen = vec![false; n];
                for (i, &v) in h.iter().enumerate() {
                    if v as usize >= n || seen[v as usize] {
                        return Err(SearchError::BadHint(format!("vertex {v} repeated or out of range")));
                    }
                    seen[v as usize] = true;
                    if i > 0 && !graph.has_edge(h[i - 1], v) {
                        return Err(SearchError::BadHint(format!(
                            "{} and {v} are not adjacent",
                            h[i - 1]
                        )));
                    }
                }
                h.to_vec()
            }
        }
    };
    Ok(search(graph, budget, &seed))
}

/// Exhaustive verdict for small graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonHamVerdict {
    /// The full search space was covered; the graph has no Hamilton cycle.
    NonHamiltonian { expansions: u64 },
    /// A cycle turned up instead.
    Hamiltonian(HamCertificate),
}

/// Runs the backtracker to exhaustion (no budget) on a graph of at most
/// [`NONHAM_CAP`] vertices and reports whether a Hamilton cycle exists.
pub fn prove_nonhamiltonian(graph: &Graph) -> Result<NonHamVerdict, SearchError> {
    let n = graph.n();
    if n < 3 {
        return Err(SearchError::TooSmall(n));
    }
    if n > NONHAM_CAP {
        return Err(SearchError::CapExceeded(n, NONHAM_CAP));
    }
    match search(graph, u64::MAX, &[0]) {
        SearchOutcome::Found(c) => Ok(NonHamVerdict::Hamiltonian(c)),
        SearchOutcome::Exhausted { expansions } => Ok(NonHamVerdict::NonHamiltonian { expansions }),
        SearchOutcome::BudgetExceeded { .. } => unreachable!("budget is unlimited"),
    }
}

struct Frame {
    /// Candidates still untried at this depth, in reverse preference order.
    candidates: Vec<u32>,
}

fn search(graph: &Graph, budget: u64, seed: &[u32]) -> SearchOutcome {
    let n = graph.n();
    let words = n.div_ceil(64);
    let anchor = seed[0];
    let mut visited = vec![0u64; words];
    let mut path: Vec<u32> = Vec::with_capacity(n);
    for &v in seed {
        visited[v as usize >> 6] |= 1 << (v & 63);
        path.push(v);
    }
    let mut expansions = seed.len() as u64;
    // Direction-breaking: fix path[1] < closing vertex, pruning one of the
    // two orientations of every cycle without losing existence.
    let mut stack: Vec<Frame> = vec![Frame {
        candidates: ordered_candidates(graph, &visited, *path.last().unwrap(), anchor, n, words),
    }];
    loop {
        let Some(frame) = stack.last_mut() else {
            return SearchOutcome::Exhausted { expansions };
        };
        let Some(v) = frame.candidates.pop() else {
            stack.pop();
            if path.len() > seed.len() {
                let dropped = path.pop().unwrap();
                visited[dropped as usize >> 6] &= !(1 << (dropped & 63));
            }
            continue;
        };
        if path.len() + 1 == n {
            if graph.has_edge(v, anchor) && (path.len() < 2 || path[1] < v) {
                path.push(v);
                return SearchOutcome::Found(HamCertificate {
                    graph_hash: graph.content_hash(),
                    cycle: path,
                });
            }
            continue;
        }
        if expansions >= budget {
            return SearchOutcome::BudgetExceeded { expansions };
        }
        expansions += 1;
        visited[v as usize >> 6] |= 1 << (v & 63);
        path.push(v);
        if prune(graph, &visited, v, anchor, n, words) {
            visited[v as usize >> 6] &= !(1 << (v & 63));
            path.pop();
            continue;
        }
        stack.push(Frame {
            candidates: ordered_candidates(graph, &visited, v, anchor, n, words),
        });
    }
}

/// Unvisited neighbors of `tail`, sorted so the most constrained (fewest
/// remaining unvisited neighbors, then smallest index) is tried first.
/// Returned in reverse so `pop` yields the preferred candidate.
fn ordered_candidates(
    graph: &Graph,
    visited: &[u64],
    tail: u32,
    _anchor: u32,
    _n: usize,
    words: usize,
) -> Vec<u32> {
    let row = graph.row(tail);
    let mut out: Vec<(usize, u32)> = Vec::new();
    for w in 0..words {
        let mut avail = row[w] & !visited[w];
        while avail != 0 {
            let b = avail.trailing_zeros();
            avail &= avail - 1;
            let v = ((w as u32) << 6) + b;
            let vrow = graph.row(v);
            let free: usize = (0..words)
                .map(|i| (vrow[i] & !visited[i]).count_ones() as usize)
                .sum();
            out.push((free, v));
        }
    }
    out.sort_unstable();
    out.reverse();
    out.into_iter().map(|(_, v)| v).collect()
}

/// Sound cut rules after extending the path to `tail`:
/// the anchor must stay reachable for the closing edge, and every unvisited
/// vertex still needs two usable cycle neighbors (unvisited ones, the tail,
/// or the anchor).
fn prune(graph: &Graph, visited: &[u64], tail: u32, anchor: u32, n: usize, words: usize) -> bool {
    let visited_count: usize = visited.iter().map(|w| w.count_ones() as usize).sum();
    if visited_count == n {
        return false;
    }
    let anchor_row = graph.row(anchor);
    let anchor_open = (0..words).any(|i| anchor_row[i] & !visited[i] != 0);
    if !anchor_open {
        return true;
    }
    for w in 0..words {
        let mut un = !visited[w];
        if w == words - 1 && n & 63 != 0 {
            un &= (1u64 << (n & 63)) - 1;
        }
        while un != 0 {
            let b = un.trailing_zeros();
            un &= un - 1;
            let v = ((w as u32) << 6) + b;
            let vrow = graph.row(v);
            let mut support: usize = (0..words)
                .map(|i| (vrow[i] & !visited[i]).count_ones() as usize)
                .sum();
            if graph.has_edge(v, tail) {
                support += 1;
            }
            if graph.has_edge(v, anchor) {
                support += 1;
            }
            if support < 2 {
                return true;
            }
        }
    }
    false
}
