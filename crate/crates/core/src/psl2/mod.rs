//! Explicit models of the two dihedral coset actions of `PSL(2, q)`.
//!
//! For a prime `q` the group `G = PSL(2, q)` acts on the cosets of a
//! dihedral subgroup of order `q - 1` (realized on unordered pairs of
//! projective points, [`dminus`]) or of order `q + 1` (realized on cosets of
//! the nonsplit torus normalizer, [`dplus`]). Both submodules expose the
//! action as explicit vertex permutations, classify the suborbits in closed
//! form, and compute block-to-block neighbor counts of the associated
//! orbital graphs by solving small parameterized equation systems over
//! `GF(q)`, so that everything can be cross-checked against the generic
//! permutation-group machinery in [`crate::perm`].

pub mod dminus;
pub mod dplus;

use thiserror::Error;

use crate::ff::FieldError;
use crate::orbital::OrbitalError;
use crate::perm::PermError;
use crate::quolift::QuoLiftError;

/// Errors raised by the dihedral-action models.
#[derive(Debug, Error)]
pub enum Psl2Error {
    /// The order `q` fails a precondition of the requested model.
    #[error("q = {q} rejected: {reason}")]
    UnsupportedOrder { q: u64, reason: String },
    /// A suborbit label does not belong to the stated case.
    #[error("label {label} is not a {case} suborbit of q = {q}")]
    CaseMismatch {
        q: u64,
        label: u64,
        case: &'static str,
    },
    /// A vertex or block index is outside its valid range.
    #[error("index {value} out of range: {what}")]
    IndexOutOfRange { what: &'static str, value: u64 },
    /// No closed-form degree is defined for the requested block target.
    #[error("no degree formula for this target: {0}")]
    UnsupportedTarget(String),
    /// An ill-formed vertex (equal points, bad codes).
    #[error("invalid vertex: {0}")]
    BadVertex(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Orbital(#[from] OrbitalError),
    #[error(transparent)]
    Quotient(#[from] QuoLiftError),
}

/// Which of the two coset families a block belongs to in the `dplus` model.
///
/// `Plain` blocks hold cosets `H u^j l^i`, `Primed` blocks hold `H t u^j l^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Plain,
    Primed,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Plain => write!(f, "plain"),
            Side::Primed => write!(f, "primed"),
        }
    }
}

/// Closed-form description of one suborbit, generic over the vertex naming
/// scheme of the ambient action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuborbitDescriptor<V> {
    /// A designated vertex of the suborbit.
    pub representative: V,
    /// Number of vertices in the suborbit.
    pub length: usize,
    /// Whether the corresponding orbital is closed under pair reversal.
    pub self_paired: bool,
    /// Representative of the paired suborbit when not self-paired.
    pub partner: Option<V>,
}

/// The four suborbit kinds of the pair action (dihedral stabilizer of order
/// `q - 1`), split by length and pairing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DminusCase {
    /// Self-paired, length `(q-1)/2`.
    SpShort,
    /// Non-self-paired, length `(q-1)/2`.
    NspShort,
    /// Self-paired, length `q-1`.
    SpLong,
    /// Non-self-paired, length `q-1` (labels 0 and -1 only).
    NspLong,
}

impl DminusCase {
    pub fn name(self) -> &'static str {
        match self {
            DminusCase::SpShort => "sp-short",
            DminusCase::NspShort => "nsp-short",
            DminusCase::SpLong => "sp-long",
            DminusCase::NspLong => "nsp-long",
        }
    }
}

impl std::fmt::Display for DminusCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The three suborbit kinds of the coset action of the nonsplit dihedral
/// stabilizer (order `q + 1`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DplusCase {
    /// Self-paired, length `(q+1)/2`, representative `H l^k t`.
    SpShort,
    /// Non-self-paired, length `(q+1)/2`, representative `H l^k`.
    NspShort,
    /// Self-paired, length `q+1`, representative `H u^k`.
    Long,
}

impl DplusCase {
    pub fn name(self) -> &'static str {
        match self {
            DplusCase::SpShort => "sp-short",
            DplusCase::NspShort => "nsp-short",
            DplusCase::Long => "long",
        }
    }
}

impl std::fmt::Display for DplusCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Closes a seed edge under generators of an edge-transitive group and
/// returns the resulting graph. Orbital graphs are edge-transitive once the
/// partner orbital is merged in, so a single representative edge suffices.
pub(crate) fn edge_orbit_graph(
    n: usize,
    seed: (u32, u32),
    gens: &[&crate::perm::Permutation],
) -> Result<crate::orbital::Graph, crate::orbital::OrbitalError> {
    use std::collections::HashSet;
    let norm = |a: u32, b: u32| if a < b { (a, b) } else { (b, a) };
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    let mut stack = vec![norm(seed.0, seed.1)];
    seen.insert(stack[0]);
    while let Some((a, b)) = stack.pop() {
        for g in gens {
            let e = norm(g.image(a), g.image(b));
            if seen.insert(e) {
                stack.push(e);
            }
        }
    }
    crate::orbital::Graph::from_edges(n, seen)
}

/// Fractional-linear maps on the projective line over `GF(q)`.
///
/// Points are the codes `0..q-1` plus the code `q` for `∞`. The four maps
/// are the standard generators: translation, its transpose, the square
/// scaling, and the inversion; together any two of `{u, l, t}` beyond `u`
/// generate `PSL(2, q)`.
pub(crate) mod line {
    use crate::ff::FieldContext;
    use crate::perm::Permutation;

    fn inf(field: &FieldContext) -> u32 {
        field.q() as u32
    }

    /// `x ↦ x + 1`.
    pub(crate) fn apply_u(field: &FieldContext, p: u32) -> u32 {
        if p == inf(field) {
            return p;
        }
        let x = field.element(p as u64).expect("point code");
        field.add(x, field.one()).code() as u32
    }

    /// `x ↦ x / (1 + x)`.
    pub(crate) fn apply_uprime(field: &FieldContext, p: u32) -> u32 {
        if p == inf(field) {
            return field.one().code() as u32;
        }
        let x = field.element(p as u64).expect("point code");
        let d = field.add(field.one(), x);
        if d.is_zero() {
            return inf(field);
        }
        field.mul(x, field.inv(d).expect("nonzero")).code() as u32
    }

    /// `x ↦ x θ⁻²`.
    pub(crate) fn apply_l(field: &FieldContext, p: u32) -> u32 {
        if p == inf(field) {
            return p;
        }
        let x = field.element(p as u64).expect("point code");
        field.mul(x, field.theta_pow(-2)).code() as u32
    }

    /// `x ↦ -1/x`.
    pub(crate) fn apply_t(field: &FieldContext, p: u32) -> u32 {
        if p == inf(field) {
            return field.zero().code() as u32;
        }
        let x = field.element(p as u64).expect("point code");
        if x.is_zero() {
            return inf(field);
        }
        field.neg(field.inv(x).expect("nonzero")).code() as u32
    }

    /// Lifts a point map to a permutation of the `q + 1` points.
    pub(crate) fn perm(
        field: &FieldContext,
        f: impl Fn(&FieldContext, u32) -> u32,
    ) -> Permutation {
        let n = field.q() as u32 + 1;
        let images = (0..n).map(|p| f(field, p)).collect();
        Permutation::from_images(images).expect("point bijection")
    }
}
