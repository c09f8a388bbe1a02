//! The two orbital graphs of the symmetric-group action on 2-subsets.
//!
//! Vertices are the 2-subsets of `{0, ..., c-1}`. Sharing exactly one point
//! gives the Johnson graph `J(c,2)`; sharing none gives the Kneser graph
//! `K(c,2)`. The Johnson side has a fully explicit Hamilton cycle: walk a
//! spine of consecutive pairs and replace each spine edge by a Hamilton path
//! through the not-yet-visited part of the star of the shared point. The
//! Kneser side is dense enough for Dirac's bound once `c ≥ 7`; below that it
//! is settled by exhaustive search, and `K(5,2)` is the Petersen graph, the
//! classical non-hamiltonian exception.

use crate::hamsearch::{find_hcycle, HamCertificate, SearchOutcome, DEFAULT_BUDGET};
use crate::orbital::Graph;
use crate::quolift::{density_hamiltonian, DensityTag};

use super::{BuiltCase, CaseOutcome, ConstructionError, Strategy};

/// The 2-subsets of `{0..c-1}` in lexicographic order.
pub fn pair_vertices(c: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity((c as usize * (c as usize - 1)) / 2);
    for a in 0..c {
        for b in a + 1..c {
            out.push((a, b));
        }
    }
    out
}

/// Index of the pair `{a, b}` (`a < b`) in [`pair_vertices`] order.
fn pair_index(c: u32, a: u32, b: u32) -> u32 {
    debug_assert!(a < b && b < c);
    a * c - a * (a + 1) / 2 + (b - a - 1)
}

fn subset_graph(c: u32, shared: usize) -> Result<Graph, ConstructionError> {
    let verts = pair_vertices(c);
    let n = verts.len();
    let edges = (0..n).flat_map(|i| {
        let verts = &verts;
        (i + 1..n).filter_map(move |j| {
            let (a, b) = verts[i];
            let (x, y) = verts[j];
            let common = usize::from(a == x) + usize::from(a == y)
                + usize::from(b == x)
                + usize::from(b == y);
            (common == shared).then_some((i as u32, j as u32))
        })
    });
    Ok(Graph::from_edges(n, edges)?)
}

/// The Johnson graph `J(c,2)`: 2-subsets adjacent when they share a point.
pub fn johnson_graph(c: u32) -> Result<Graph, ConstructionError> {
    if c < 3 {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "johnson graph needs c >= 3, got {c}"
        )));
    }
    subset_graph(c, 1)
}

/// The Kneser graph `K(c,2)`: 2-subsets adjacent when disjoint.
pub fn kneser_graph(c: u32) -> Result<Graph, ConstructionError> {
    if c < 5 {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "kneser graph needs c >= 5, got {c}"
        )));
    }
    subset_graph(c, 0)
}

/// Explicit Hamilton cycle of `J(c,2)` by star-path splicing; `O(c^2)`, no
/// search.
///
/// With points `1..c`: start from the spine cycle `{1,2}, {2,3}, ...,
/// {c,1}`. For each `k = 2..c-1` in turn, the spine edge into `{k,k+1}` is
/// replaced by a Hamilton path of the star of `k`, skipping the star
/// vertices `{j,k}` with `2 <= j <= k-2` that earlier paths already
/// visited. The two spine edges through `{c,1}` survive unchanged, closing
/// the cycle.
pub fn johnson_splice(c: u32) -> Result<BuiltCase, ConstructionError> {
    if c < 5 {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "johnson splice needs c >= 5, got {c}"
        )));
    }
    let graph = johnson_graph(c)?;
    // Points are 1-based in the walk below; `idx` converts a pair to its
    // vertex index.
    let idx = |a: u32, b: u32| pair_index(c, a.min(b) - 1, a.max(b) - 1);
    let mut cycle = Vec::with_capacity(graph.n());
    cycle.push(idx(1, 2));
    for k in 2..c {
        // Interior of the star path at k: x = 1 first (absent for k = 2,
        // where {1,2} is the path's start), then everything past k+1.
        if k >= 3 {
            cycle.push(idx(1, k));
        }
        for x in k + 2..=c {
            cycle.push(idx(k, x));
        }
        cycle.push(idx(k, k + 1));
    }
    cycle.push(idx(c, 1));
    let cert = HamCertificate {
        graph_hash: graph.content_hash(),
        cycle,
    };
    crate::hamsearch::verify_certificate(&graph, &cert)
        .map_err(|e| ConstructionError::DataMismatch(format!("spliced cycle rejected: {e}")))?;
    Ok(BuiltCase::certified(graph, cert, Strategy::Splice))
}

/// Settles `K(c,2)`: Dirac density plus search for `c >= 7`, exhaustive
/// search for `c = 6`, and the Petersen verdict for `c = 5`.
pub fn kneser_case(c: u32) -> Result<BuiltCase, ConstructionError> {
    let graph = kneser_graph(c)?;
    if c >= 7 {
        // Dirac from c = 8 on; at c = 7 the degree is exactly (n-1)/2 and
        // Jackson's regular-graph bound covers the gap.
        debug_assert!(density_hamiltonian(&graph).is_some());
        debug_assert!(c > 7 || density_hamiltonian(&graph) == Some(DensityTag::Jackson));
        let outcome = match find_hcycle(&graph, DEFAULT_BUDGET, None)? {
            SearchOutcome::Found(cert) => CaseOutcome::Certified(cert),
            SearchOutcome::Exhausted { .. } => {
                return Err(ConstructionError::DataMismatch(
                    "dirac-dense kneser graph searched as non-hamiltonian".into(),
                ))
            }
            SearchOutcome::BudgetExceeded { expansions } => CaseOutcome::Timeout { expansions },
        };
        return Ok(BuiltCase {
            graph,
            outcome,
            strategy: Strategy::Density,
        });
    }
    // c = 5 or 6: small enough to search to exhaustion.
    let outcome = match find_hcycle(&graph, u64::MAX, None)? {
        SearchOutcome::Found(cert) => CaseOutcome::Certified(cert),
        SearchOutcome::Exhausted { expansions } => CaseOutcome::NonHamiltonian { expansions },
        SearchOutcome::BudgetExceeded { .. } => unreachable!("budget is unlimited"),
    };
    Ok(BuiltCase {
        graph,
        outcome,
        strategy: Strategy::Search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamsearch::verify_certificate;

    #[test]
    fn pair_indexing_is_lexicographic() {
        for c in [5u32, 9, 12] {
            for (i, &(a, b)) in pair_vertices(c).iter().enumerate() {
                assert_eq!(pair_index(c, a, b), i as u32);
            }
        }
    }

    #[test]
    fn johnson_graph_shape() {
        let g = johnson_graph(7).unwrap();
        assert_eq!(g.n(), 21);
        // J(c,2) is 2(c-2)-regular.
        assert_eq!(g.regular_valency(), Some(10));
    }

    #[test]
    fn splice_certifies_small_range() {
        for c in 5..=25 {
            let built = johnson_splice(c).unwrap();
            assert_eq!(built.strategy, Strategy::Splice);
            let cert = built.certificate().expect("splice always certifies");
            assert_eq!(cert.cycle.len(), (c as usize * (c as usize - 1)) / 2);
            verify_certificate(&built.graph, cert).unwrap();
        }
    }

    #[test]
    fn splice_sizes_match_examples() {
        assert_eq!(johnson_splice(5).unwrap().graph.n(), 10);
        assert_eq!(johnson_splice(12).unwrap().graph.n(), 66);
        assert_eq!(johnson_splice(40).unwrap().graph.n(), 780);
    }

    #[test]
    fn too_small_c_is_rejected() {
        assert!(matches!(
            johnson_splice(4),
            Err(ConstructionError::UnsupportedParameter(_))
        ));
        assert!(matches!(
            kneser_case(4),
            Err(ConstructionError::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn kneser_five_is_the_petersen_exception() {
        let built = kneser_case(5).unwrap();
        assert_eq!(built.graph.n(), 10);
        assert_eq!(built.graph.regular_valency(), Some(3));
        assert!(matches!(
            built.outcome,
            CaseOutcome::NonHamiltonian { .. }
        ));
    }

    #[test]
    fn kneser_six_and_up_are_hamiltonian() {
        let six = kneser_case(6).unwrap();
        assert_eq!(six.graph.n(), 15);
        assert_eq!(six.strategy, Strategy::Search);
        verify_certificate(&six.graph, six.certificate().unwrap()).unwrap();
        for c in 7..=10 {
            let built = kneser_case(c).unwrap();
            assert_eq!(built.strategy, Strategy::Density);
            verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
        }
    }
}
