//! Block quotients and cycle lifting.
//!
//! A semiregular automorphism of odd prime order p partitions the vertices
//! into fibres of size p. A Hamilton cycle of the quotient multigraph lifts
//! to the full graph whenever the accumulated fibre shift around the cycle
//! is nonzero mod p; a zero winding can be repaired at any quotient edge
//! carrying at least two distinct shifts, and when no such edge exists the
//! lift provably splits into p disjoint short cycles.

use thiserror::Error;

use crate::ff::is_prime_u64;
use crate::hamsearch::{find_hcycle, HamCertificate, SearchError, SearchOutcome, DEFAULT_BUDGET};
use crate::orbital::Graph;
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuoLiftError {
    /// The deck permutation must be fixed-point-free with equal cycle sizes.
    #[error("permutation is not semiregular")]
    NotSemiregular,
    /// Lifting arguments require an odd prime fibre size.
    #[error("fibre size {0} is not an odd prime")]
    FibreSizeNotOddPrime(usize),
    /// Graph and block system disagree on the vertex count.
    #[error("graph has {graph} vertices but the block system covers {blocks}")]
    SizeMismatch { graph: usize, blocks: usize },
    /// Vertices of the same block see different degree patterns.
    #[error("block degrees are not constant: {0}")]
    IrregularQuotient(String),
    /// The proposed quotient cycle is not a Hamilton cycle of the skeleton.
    #[error("invalid quotient cycle: {0}")]
    NotABlockCycle(String),
    /// A forced edge is missing from the circulant.
    #[error("edge ({0},{1}) is not present in the circulant")]
    EdgeNotPresent(u32, u32),
    /// The internal cycle search gave up; effectively unreachable for the
    /// graph sizes this crate targets.
    #[error("cycle search exhausted its budget")]
    SearchBudget,
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Fibres of a semiregular permutation, each listed in deck order
/// `[m, ρ(m), ρ²(m), …]` from its least vertex. Blocks are sorted by least
/// vertex, and the in-block position encodes the deck power for lifting.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    blocks: Vec<Vec<u32>>,
    block_of: Vec<u32>,
    position: Vec<u32>,
    fibre_size: usize,
}

impl BlockSystem {
    pub fn from_semiregular(deck: &Permutation) -> Result<BlockSystem, QuoLiftError> {
        let (_, fibre_size) = deck.is_semiregular().ok_or(QuoLiftError::NotSemiregular)?;
        let n = deck.degree();
        let mut blocks = Vec::with_capacity(n / fibre_size);
        let mut block_of = vec![u32::MAX; n];
        let mut position = vec![0u32; n];
        for start in 0..n as u32 {
            if block_of[start as usize] != u32::MAX {
                continue;
            }
            let mut fibre = Vec::with_capacity(fibre_size);
            let mut v = start;
            loop {
                block_of[v as usize] = blocks.len() as u32;
                position[v as usize] = fibre.len() as u32;
                fibre.push(v);
                v = deck.image(v);
                if v == start {
                    break;
                }
            }
            blocks.push(fibre);
        }
        Ok(BlockSystem {
            blocks,
            block_of,
            position,
            fibre_size,
        })
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn fibre_size(&self) -> usize {
        self.fibre_size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_of(&self, v: u32) -> u32 {
        self.block_of[v as usize]
    }

    /// Deck power carrying the block's least vertex to `v`.
    pub fn position_of(&self, v: u32) -> u32 {
        self.position[v as usize]
    }
}

/// The quotient multigraph of a graph by a block system.
///
/// `multiplicity[i][j]` is the number of neighbors a vertex of block `i`
/// has inside block `j` (the diagonal holds internal degrees); construction
/// fails unless these counts are constant across each block.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    multiplicity: Vec<Vec<u32>>,
    skeleton: Graph,
}

impl QuotientGraph {
    pub fn block_count(&self) -> usize {
        self.multiplicity.len()
    }

    pub fn multiplicity(&self, i: u32, j: u32) -> u32 {
        self.multiplicity[i as usize][j as usize]
    }

    pub fn internal_degree(&self, i: u32) -> u32 {
        self.multiplicity[i as usize][i as usize]
    }

    /// Simple graph with an edge wherever the cross multiplicity is positive.
    pub fn skeleton(&self) -> &Graph {
        &self.skeleton
    }
}

/// Collapses `graph` along `blocks`, checking block-degree regularity.
pub fn quotient(graph: &Graph, blocks: &BlockSystem) -> Result<QuotientGraph, QuoLiftError> {
    if graph.n() != blocks.n() {
        return Err(QuoLiftError::SizeMismatch {
            graph: graph.n(),
            blocks: blocks.n(),
        });
    }
    let b = blocks.block_count();
    let mut multiplicity = vec![vec![0u32; b]; b];
    for (i, fibre) in blocks.blocks().iter().enumerate() {
        let mut counts = vec![0u32; b];
        for w in graph.neighbors(fibre[0]) {
            counts[blocks.block_of(w) as usize] += 1;
        }
        for &v in &fibre[1..] {
            let mut check = vec![0u32; b];
            for w in graph.neighbors(v) {
                check[blocks.block_of(w) as usize] += 1;
            }
            if check != counts {
                return Err(QuoLiftError::IrregularQuotient(format!(
                    "vertices {} and {v} of block {i} disagree",
                    fibre[0]
                )));
            }
        }
        multiplicity[i] = counts;
    }
    let edges = (0..b as u32).flat_map(|i| {
        let row = &multiplicity[i as usize];
        (i + 1..b as u32).filter_map(move |j| (row[j as usize] > 0).then_some((i, j)))
    });
    let skeleton = Graph::from_edges(b, edges).expect("quotient within caps");
    Ok(QuotientGraph {
        multiplicity,
        skeleton,
    })
}

/// What lifting a quotient Hamilton cycle produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Cycle(HamCertificate),
    /// Every shift assignment winds to zero: the lift is `fibre_size`
    /// disjoint cycles, one per deck power, and this route cannot yield a
    /// Hamilton cycle.
    Split { fibre_cycles: Vec<Vec<u32>> },
}

/// Lifts a Hamilton cycle of the quotient skeleton through the deck.
///
/// Shift sets are read off equivariantly from each block's least vertex;
/// the default assignment takes the smallest shift on every edge and, if
/// the winding sum vanishes, retries once at the first edge offering a
/// second shift (any two shifts differ by a unit mod p, so the repaired
/// winding is nonzero).
pub fn lift_cycle(
    graph: &Graph,
    blocks: &BlockSystem,
    quotient_cycle: &[u32],
) -> Result<LiftOutcome, QuoLiftError> {
    if graph.n() != blocks.n() {
        return Err(QuoLiftError::SizeMismatch {
            graph: graph.n(),
            blocks: blocks.n(),
        });
    }
    let p = blocks.fibre_size();
    if p < 3 || !is_prime_u64(p as u64) {
        return Err(QuoLiftError::FibreSizeNotOddPrime(p));
    }
    let m = blocks.block_count();
    if quotient_cycle.len() != m || m < 3 {
        return Err(QuoLiftError::NotABlockCycle(format!(
            "expected {m} distinct blocks, got {}",
            quotient_cycle.len()
        )));
    }
    let mut seen = vec![false; m];
    for &bk in quotient_cycle {
        if bk as usize >= m || seen[bk as usize] {
            return Err(QuoLiftError::NotABlockCycle(format!(
                "block {bk} repeated or out of range"
            )));
        }
        seen[bk as usize] = true;
    }
    // Shift set of each cycle edge: deck powers t with  fibre_a[0] ~ fibre_b[t].
    let mut shift_sets: Vec<Vec<u32>> = Vec::with_capacity(m);
    for i in 0..m {
        let a = quotient_cycle[i];
        let b = quotient_cycle[(i + 1) % m];
        let a0 = blocks.blocks()[a as usize][0];
        let mut set: Vec<u32> = graph
            .neighbors(a0)
            .filter(|&w| blocks.block_of(w) == b)
            .map(|w| blocks.position_of(w))
            .collect();
        set.sort_unstable();
        if set.is_empty() {
            return Err(QuoLiftError::NotABlockCycle(format!(
                "blocks {a} and {b} are not adjacent"
            )));
        }
        shift_sets.push(set);
    }
    let mut shifts: Vec<u32> = shift_sets.iter().map(|s| s[0]).collect();
    let winding = |sh: &[u32]| sh.iter().map(|&s| s as u64).sum::<u64>() % p as u64;
    if winding(&shifts) == 0 {
        match shift_sets.iter().position(|s| s.len() >= 2) {
            Some(i) => shifts[i] = shift_sets[i][1],
            None => {
                // All cross multiplicities are 1: the p lifts of the quotient
                // cycle are vertex-disjoint m-cycles.
                let mut fibre_cycles = Vec::with_capacity(p);
                for k in 0..p as u32 {
                    let mut cyc = Vec::with_capacity(m);
                    let mut pos = k;
                    for (i, &bk) in quotient_cycle.iter().enumerate() {
                        cyc.push(blocks.blocks()[bk as usize][pos as usize]);
                        pos = (pos + shifts[i]) % p as u32;
                    }
                    fibre_cycles.push(cyc);
                }
                return Ok(LiftOutcome::Split { fibre_cycles });
            }
        }
    }
    let w = winding(&shifts) as u32;
    debug_assert!(w != 0);
    let mut cycle = Vec::with_capacity(m * p);
    let mut pos: u32 = 0;
    for round in 0..p as u32 {
        debug_assert!(round == 0 || pos == (round * w) % p as u32);
        for (i, &bk) in quotient_cycle.iter().enumerate() {
            cycle.push(blocks.blocks()[bk as usize][pos as usize]);
            pos = (pos + shifts[i]) % p as u32;
        }
    }
    debug_assert_eq!(pos, 0);
    Ok(LiftOutcome::Cycle(HamCertificate {
        graph_hash: graph.content_hash(),
        cycle,
    }))
}

/// Hamilton cycle of the circulant `Cay(Z_m, ±connection)` through a chosen
/// edge. Connected circulants always have one; the cycle is produced by the
/// deterministic backtracker seeded with the forced edge.
pub fn circulant_hcycle_through_edge(
    m: usize,
    connection: &[u32],
    forced: (u32, u32),
) -> Result<(Graph, Vec<u32>), QuoLiftError> {
    let edges = connection.iter().flat_map(|&c| {
        (0..m as u32).map(move |t| (t, (t + c) % m as u32))
    });
    let graph = Graph::from_edges(m, edges).expect("circulant within caps");
    if !graph.has_edge(forced.0, forced.1) {
        return Err(QuoLiftError::EdgeNotPresent(forced.0, forced.1));
    }
    match find_hcycle(&graph, DEFAULT_BUDGET, Some(&[forced.0, forced.1]))? {
        SearchOutcome::Found(cert) => Ok((graph, cert.cycle)),
        SearchOutcome::Exhausted { .. } => Err(QuoLiftError::NotABlockCycle(
            "circulant is not hamiltonian through that edge".into(),
        )),
        SearchOutcome::BudgetExceeded { .. } => Err(QuoLiftError::SearchBudget),
    }
}

/// Degree-density guarantees of hamiltonicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityTag {
    /// Minimum degree at least n/2.
    Dirac,
    /// k-regular, 2-connected, and n at most 3k.
    Jackson,
}

/// Checks whether a density theorem already guarantees a Hamilton cycle.
pub fn density_hamiltonian(graph: &Graph) -> Option<DensityTag> {
    let n = graph.n();
    if n < 3 {
        return None;
    }
    let min_degree = (0..n as u32).map(|v| graph.degree(v)).min().unwrap();
    if 2 * min_degree >= n {
        return Some(DensityTag::Dirac);
    }
    if let Some(k) = graph.regular_valency() {
        if n <= 3 * k && graph.is_biconnected() {
            return Some(DensityTag::Jackson);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamsearch::verify_certificate;

    #[test]
    fn block_system_from_semiregular() {
        let rho = Permutation::parse_cycles(12, "(0 4 8)(1 5 9)(2 6 10)(3 7 11)").unwrap();
        let bs = BlockSystem::from_semiregular(&rho).unwrap();
        assert_eq!(bs.block_count(), 4);
        assert_eq!(bs.fibre_size(), 3);
        assert_eq!(bs.blocks()[0], vec![0, 4, 8]);
        assert_eq!(bs.block_of(9), 1);
        assert_eq!(bs.position_of(9), 2);
        let not_semi = Permutation::parse_cycles(4, "(0 1 2)").unwrap();
        assert!(matches!(
            BlockSystem::from_semiregular(&not_semi),
            Err(QuoLiftError::NotSemiregular)
        ));
    }

    #[test]
    fn quotient_of_c12_and_direct_lift() {
        let g = Graph::cycle(12);
        let rho = Permutation::parse_cycles(12, "(0 4 8)(1 5 9)(2 6 10)(3 7 11)").unwrap();
        let bs = BlockSystem::from_semiregular(&rho).unwrap();
        let q = quotient(&g, &bs).unwrap();
        assert_eq!(q.block_count(), 4);
        assert_eq!(q.multiplicity(0, 1), 1);
        assert_eq!(q.multiplicity(0, 2), 0);
        assert_eq!(q.internal_degree(0), 0);
        assert_eq!(q.skeleton().content_hash(), Graph::cycle(4).content_hash());
        match lift_cycle(&g, &bs, &[0, 1, 2, 3]).unwrap() {
            LiftOutcome::Cycle(cert) => verify_certificate(&g, &cert).unwrap(),
            other => panic!("expected a full lift, got {other:?}"),
        }
    }

    #[test]
    fn zero_winding_repaired_through_double_edge() {
        // Circulant on Z9 with connection {1,2}; deck is translation by 3.
        let edges = (0..9u32).flat_map(|t| [(t, (t + 1) % 9), (t, (t + 2) % 9)]);
        let g = Graph::from_edges(9, edges).unwrap();
        let rho = Permutation::parse_cycles(9, "(0 3 6)(1 4 7)(2 5 8)").unwrap();
        let bs = BlockSystem::from_semiregular(&rho).unwrap();
        let q = quotient(&g, &bs).unwrap();
        assert_eq!(q.multiplicity(0, 1), 2);
        match lift_cycle(&g, &bs, &[0, 1, 2]).unwrap() {
            LiftOutcome::Cycle(cert) => verify_certificate(&g, &cert).unwrap(),
            other => panic!("expected a repaired lift, got {other:?}"),
        }
    }

    #[test]
    fn forced_split_when_all_multiplicities_are_one() {
        // Three disjoint triangles whose quotient is a triangle with every
        // cross multiplicity 1: no lift exists and the split is reported.
        let edges = (0..3u32).flat_map(|k| [(k, 3 + k), (3 + k, 6 + k), (6 + k, k)]);
        let g = Graph::from_edges(9, edges).unwrap();
        let rho = Permutation::parse_cycles(9, "(0 1 2)(3 4 5)(6 7 8)").unwrap();
        let bs = BlockSystem::from_semiregular(&rho).unwrap();
        match lift_cycle(&g, &bs, &[0, 1, 2]).unwrap() {
            LiftOutcome::Split { fibre_cycles } => {
                assert_eq!(fibre_cycles.len(), 3);
                assert_eq!(fibre_cycles[0], vec![0, 3, 6]);
                for cyc in fibre_cycles {
                    for i in 0..cyc.len() {
                        assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
                    }
                }
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_quotient_cycles_and_fibres() {
        let g = Graph::cycle(12);
        let rho = Permutation::parse_cycles(12, "(0 4 8)(1 5 9)(2 6 10)(3 7 11)").unwrap();
        let bs = BlockSystem::from_semiregular(&rho).unwrap();
        assert!(matches!(
            lift_cycle(&g, &bs, &[0, 1, 2]),
            Err(QuoLiftError::NotABlockCycle(_))
        ));
        assert!(matches!(
            lift_cycle(&g, &bs, &[0, 2, 1, 3]),
            Err(QuoLiftError::NotABlockCycle(_))
        ));
        let rho4 = Permutation::parse_cycles(12, "(0 3 6 9)(1 4 7 10)(2 5 8 11)").unwrap();
        let bs4 = BlockSystem::from_semiregular(&rho4).unwrap();
        assert!(matches!(
            lift_cycle(&g, &bs4, &[0, 1, 2]),
            Err(QuoLiftError::FibreSizeNotOddPrime(4))
        ));
    }

    #[test]
    fn irregular_partition_is_rejected() {
        // A path is not block-regular for the deck (0 2)(1 3) on 4 vertices.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let rho = Permutation::parse_cycles(4, "(0 2)(1 3)").unwrap();
        let bs = BlockSystem::from_semiregular(&rho).unwrap();
        assert!(matches!(
            quotient(&g, &bs),
            Err(QuoLiftError::IrregularQuotient(_))
        ));
    }

    #[test]
    fn circulant_cycle_honors_forced_edge() {
        let (graph, cycle) = circulant_hcycle_through_edge(10, &[1, 3], (2, 5)).unwrap();
        assert_eq!(cycle.len(), 10);
        assert_eq!((cycle[0], cycle[1]), (2, 5));
        for i in 0..cycle.len() {
            assert!(graph.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
        assert!(matches!(
            circulant_hcycle_through_edge(10, &[2], (0, 1)),
            Err(QuoLiftError::EdgeNotPresent(0, 1))
        ));
    }

    #[test]
    fn density_tags() {
        assert_eq!(density_hamiltonian(&Graph::complete(6)), Some(DensityTag::Dirac));
        // K33 is 3-regular on 6 vertices: Jackson territory, not Dirac.
        let k33 = Graph::from_edges(
            6,
            (0..3u32).flat_map(|u| (3..6u32).map(move |v| (u, v))),
        )
        .unwrap();
        assert_eq!(density_hamiltonian(&k33), Some(DensityTag::Dirac));
        // C6 is 2-regular on 6 = 3k vertices and 2-connected.
        assert_eq!(density_hamiltonian(&Graph::cycle(6)), Some(DensityTag::Jackson));
        // Petersen: 3-regular on 10 > 9 vertices; no density guarantee.
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let petersen = Graph::from_edges(10, edges).unwrap();
        assert_eq!(density_hamiltonian(&petersen), None);
    }
}
