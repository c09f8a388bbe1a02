//! Hamilton-cycle builders for the concrete graph families of order `2rs`.
//!
//! Each submodule turns one family into graphs plus certificates:
//!
//! * [`linalg`] — small dense matrices over finite fields, projective points
//!   and 2-spaces, Singer elements.
//! * [`subsets`] — Johnson and Kneser graphs on 2-subsets.
//! * [`dihedral`] — the two `PSL(2,q)` dihedral-stabilizer models, via block
//!   quotients and lifts.
//! * [`grassmann`] — 2-spaces of `F_q^4` and `F_q^5` with clique splices and
//!   Singer clique covers.
//! * [`orthogonal`] — totally singular points of `O^±` forms with complete
//!   block quotients.
//! * [`groups`] — coset and orbit actions built at runtime (Mathieu, Janko,
//!   flag and subgroup-coset actions of small linear groups).
//! * [`runner`] — table-driven execution producing reports and certificates.

pub mod dihedral;
pub mod grassmann;
pub mod groups;
pub mod linalg;
pub mod orthogonal;
pub mod runner;
pub mod subsets;

use thiserror::Error;

use crate::ff::FieldError;
use crate::hamsearch::SearchError;
use crate::orbital::OrbitalError;
use crate::perm::PermError;
use crate::psl2::Psl2Error;
use crate::quolift::QuoLiftError;

/// Errors shared by the family builders.
#[derive(Debug, Error)]
pub enum ConstructionError {
    /// Parameters outside the family's domain (wrong residue class, size cap,
    /// composite where a prime is required, ...).
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    /// A quantity computed from scratch disagrees with the value it must
    /// reproduce (group order, orbit length, point count). Never papered
    /// over: the case fails loudly instead.
    #[error("computed data mismatch: {0}")]
    DataMismatch(String),
    /// Every strategy rung failed within budget.
    #[error("no hamilton cycle found for {0} within budget")]
    CycleNotFound(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Orbital(#[from] OrbitalError),
    #[error(transparent)]
    Quotient(#[from] QuoLiftError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Psl2(#[from] Psl2Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Which rung of the fallback ladder produced a result. Order matters: it is
/// the order the rungs are tried, and reports record the first that
/// succeeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Block quotient plus deck lift.
    QuotientLift,
    /// Explicit cycle assembled from clique paths.
    Splice,
    /// Singer-orbit clique cover chained into a cycle.
    SingerCover,
    /// A degree-density theorem guarantees a cycle; search merely exhibits it.
    Density,
    /// Plain backtracking search.
    Search,
}

impl Strategy {
    pub fn tag(self) -> &'static str {
        match self {
            Strategy::QuotientLift => "quotient-lift",
            Strategy::Splice => "splice",
            Strategy::SingerCover => "singer-cover",
            Strategy::Density => "density",
            Strategy::Search => "search",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// How a single case ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    /// A cycle exists and the certificate has been verified.
    Certified(crate::hamsearch::HamCertificate),
    /// Exhaustive search proved there is no Hamilton cycle.
    NonHamiltonian { expansions: u64 },
    /// The budget ran out with no conclusion.
    Timeout { expansions: u64 },
}

/// A constructed graph with its settled Hamilton question.
#[derive(Clone, Debug)]
pub struct BuiltCase {
    pub graph: crate::orbital::Graph,
    pub outcome: CaseOutcome,
    /// The fallback rung that settled the case.
    pub strategy: Strategy,
}

impl BuiltCase {
    /// Wraps a certificate after re-verifying it against the graph.
    pub(crate) fn certified(
        graph: crate::orbital::Graph,
        cert: crate::hamsearch::HamCertificate,
        strategy: Strategy,
    ) -> BuiltCase {
        debug_assert!(crate::hamsearch::verify_certificate(&graph, &cert).is_ok());
        BuiltCase {
            graph,
            outcome: CaseOutcome::Certified(cert),
            strategy,
        }
    }

    pub fn certificate(&self) -> Option<&crate::hamsearch::HamCertificate> {
        match &self.outcome {
            CaseOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Runs the shared tail of a quotient pipeline: lift the case-specific
/// cycle if one was produced, then retry with a double-edge-seeded skeleton
/// search, and finally fall back to plain search on the full graph.
///
/// Plain-search exhaustion is reported as a negative outcome rather than an
/// error; below the primitivity thresholds some orbital graphs genuinely
/// fall apart into components.
pub(crate) fn finish_via_quotient(
    graph: crate::orbital::Graph,
    blocks: &crate::quolift::BlockSystem,
    quo: &crate::quolift::QuotientGraph,
    candidate: Option<Vec<u32>>,
) -> Result<BuiltCase, ConstructionError> {
    use crate::quolift::LiftOutcome;
    for cycle in [candidate, skeleton_cycle(quo)?].into_iter().flatten() {
        if !block_cycle_is_valid(quo, &cycle) {
            continue;
        }
        if let LiftOutcome::Cycle(cert) = crate::quolift::lift_cycle(&graph, blocks, &cycle)? {
            return Ok(BuiltCase::certified(graph, cert, Strategy::QuotientLift));
        }
    }
    use crate::hamsearch::{find_hcycle, SearchOutcome, DEFAULT_BUDGET};
    let outcome = match find_hcycle(&graph, DEFAULT_BUDGET, None)? {
        SearchOutcome::Found(cert) => CaseOutcome::Certified(cert),
        SearchOutcome::Exhausted { expansions } => CaseOutcome::NonHamiltonian { expansions },
        SearchOutcome::BudgetExceeded { expansions } => CaseOutcome::Timeout { expansions },
    };
    Ok(BuiltCase {
        graph,
        outcome,
        strategy: Strategy::Search,
    })
}

/// Hamilton cycle of the quotient skeleton, seeded through the first edge
/// of multiplicity >= 2 so the lift can always repair its winding.
pub(crate) fn skeleton_cycle(
    quo: &crate::quolift::QuotientGraph,
) -> Result<Option<Vec<u32>>, ConstructionError> {
    use crate::hamsearch::{find_hcycle, SearchOutcome, DEFAULT_BUDGET};
    let sk = quo.skeleton();
    let m = sk.n() as u32;
    let mut hint: Option<[u32; 2]> = None;
    'outer: for i in 0..m {
        for j in i + 1..m {
            if quo.multiplicity(i, j) >= 2 {
                hint = Some([i, j]);
                break 'outer;
            }
        }
    }
    match find_hcycle(sk, DEFAULT_BUDGET, hint.as_ref().map(|h| &h[..]))? {
        SearchOutcome::Found(cert) => Ok(Some(cert.cycle)),
        _ => Ok(None),
    }
}

/// A usable quotient cycle: every block exactly once, consecutive blocks
/// adjacent.
pub(crate) fn block_cycle_is_valid(quo: &crate::quolift::QuotientGraph, cycle: &[u32]) -> bool {
    let m = quo.block_count();
    if cycle.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &b in cycle {
        if b as usize >= m || seen[b as usize] {
            return false;
        }
        seen[b as usize] = true;
    }
    (0..m).all(|i| {
        let a = cycle[i];
        let b = cycle[(i + 1) % m];
        quo.multiplicity(a, b) > 0
    })
}

/// Settles a dense case by plain search, tagging it with the density
/// guarantee when one applies.
pub(crate) fn search_with_density_tag(
    graph: crate::orbital::Graph,
) -> Result<BuiltCase, ConstructionError> {
    use crate::hamsearch::{find_hcycle, SearchOutcome, DEFAULT_BUDGET};
    let strategy = if crate::quolift::density_hamiltonian(&graph).is_some() {
        Strategy::Density
    } else {
        Strategy::Search
    };
    let outcome = match find_hcycle(&graph, DEFAULT_BUDGET, None)? {
        SearchOutcome::Found(cert) => CaseOutcome::Certified(cert),
        SearchOutcome::Exhausted { expansions } => CaseOutcome::NonHamiltonian { expansions },
        SearchOutcome::BudgetExceeded { expansions } => CaseOutcome::Timeout { expansions },
    };
    Ok(BuiltCase {
        graph,
        outcome,
        strategy,
    })
}
