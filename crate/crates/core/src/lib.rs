//! Constructions and Hamilton-cycle machinery for primitive vertex-transitive
//! graphs whose order is twice a product of two odd primes.
//!
//! The crate is organized bottom-up:
//!
//! * [`ff`] finite-field arithmetic (prime and small extension fields),
//! * [`charsum`] quadratic-character sums and residue-pattern counts,
//! * [`perm`] permutation groups, stabilizer chains and coset actions,
//! * [`orbital`] orbital graphs of a group with a chosen point stabilizer,
//! * [`hamsearch`] bounded backtracking search and cycle certificates,
//! * [`quolift`] block quotients and cycle lifting along a cyclic deck group,
//! * [`psl2`] the two dihedral-stabilizer actions of `PSL(2, q)`,
//! * [`constructions`] the remaining concrete families (subset graphs,
//!   subspace graphs, orthogonal-space graphs, sporadic coset graphs) and a
//!   driver that applies a named cycle-building strategy to each.

pub mod charsum;
pub mod ff;
pub mod hamsearch;
pub mod orbital;
pub mod perm;
pub mod constructions;
pub mod psl2;
pub mod quolift;

pub use charsum::{
    eta, eta_cubic_sum, residue_intersection_counts, triple_count, triple_lower_bound,
    triple_upper_bound, CharsumError, ResidueCounts, TriplePattern,
};
pub use constructions::runner::{
    coxeter_graph, discrepancy_notes, parse_matrix, run_matrix, run_spec, CaseReport, CaseSpec,
    FAMILIES,
};
pub use constructions::{BuiltCase, CaseOutcome, ConstructionError, Strategy};
pub use ff::{FieldContext, FieldElement, FieldError, ResidueClass};
pub use hamsearch::{
    find_hcycle, prove_nonhamiltonian, verify_certificate, HamCertificate, NonHamVerdict,
    SearchError, SearchOutcome, VerifyError, DEFAULT_BUDGET, NONHAM_CAP,
};
pub use orbital::{orbital_graph, Graph, OrbitalError, MAX_VERTICES};
pub use perm::{coset_action, CosetAction, PermError, Permutation, PermutationGroup, Suborbit};
pub use psl2::dminus::{
    block_degrees_dminus, classify_all_dminus, classify_suborbit_dminus,
    infinity_degrees_dminus, orbital_graph_dminus, pairs_action, DminusSuborbit, PairVertex,
    PairsAction, INFINITY,
};
pub use psl2::dplus::{
    block_degrees_dplus, classify_suborbits_dplus, dplus_action, orbital_graph_dplus,
    CosetVertex, DplusAction, DplusSuborbit,
};
pub use psl2::{DminusCase, DplusCase, Psl2Error, Side, SuborbitDescriptor};
pub use quolift::{
    circulant_hcycle_through_edge, density_hamiltonian, lift_cycle, quotient, BlockSystem,
    DensityTag, LiftOutcome, QuoLiftError, QuotientGraph,
};
