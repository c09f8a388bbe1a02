//! Permutation groups on `{0..n-1}`: elements, stabilizer chains, coset
//! actions and suborbit machinery.
//!
//! The chain construction is a deterministic Schreier-Sims (no random
//! sifting), so group orders, coset numberings and suborbit listings are
//! reproducible across runs and platforms.

mod coset;
mod data;
mod group;
mod permutation;

pub use coset::{coset_action, CosetAction, DEFAULT_INDEX_CAP};
pub use data::{evaluate_word, parse_generator_file, parse_subgroup_words, GeneratorData};
pub use group::{PermutationGroup, Suborbit};
pub use permutation::{PermError, Permutation};
