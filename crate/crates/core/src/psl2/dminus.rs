//! `PSL(2, q)` on unordered pairs of projective points, `q ≡ 3 (mod 4)`.
//!
//! The stabilizer of the pair `{∞, 0}` is the dihedral group of order
//! `q - 1` generated by the square scalings `x ↦ θ²x` and the swap
//! `x ↦ -1/x`, so the pair action realizes the coset space `G/D_{q-1}` on
//! `q(q+1)/2` vertices. Suborbits carry labels `j ∈ F_q` through their
//! representatives `{j, j+1}`, and the blocks of the translation `u: x ↦ x+1`
//! are `B_∞ = {{∞, a}}` and `B_d = {{a, a+d}}` for `d = 1, ..., (q-1)/2`.
//!
//! Everything here is exact arithmetic over `GF(q)`: the suborbit kind of a
//! label is read off the residue classes of `j` and `j+1`, and cross-block
//! neighbor counts come from the discriminants `δ₁ = i² - (2+4j)i + 1` and
//! `δ₂ = i² + (2+4j)i + 1` of the two quadratics that locate neighbors of
//! `{0, 1}` inside the block `B_i`.

use crate::ff::{is_prime_u64, FieldContext, FieldElement, ResidueClass};
use crate::orbital::Graph;
use crate::perm::{Permutation, PermutationGroup};
use crate::quolift::BlockSystem;

use super::line;
use super::{DminusCase, Psl2Error, SuborbitDescriptor};

/// Marker code for the projective point at infinity inside a [`PairVertex`].
pub const INFINITY: u32 = u32::MAX;

/// An unordered pair of distinct projective points: the vertex type of the
/// pair action. The point at infinity is stored as [`INFINITY`] and always
/// placed first; otherwise the smaller code comes first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PairVertex {
    pub first: u32,
    pub second: u32,
}

impl PairVertex {
    /// Canonicalizes an unordered pair; the two points must differ.
    pub fn new(a: u32, b: u32) -> Result<PairVertex, Psl2Error> {
        if a == b {
            return Err(Psl2Error::BadVertex(format!(
                "pair needs two distinct points, got {a} twice"
            )));
        }
        let (first, second) = if a == INFINITY {
            (a, b)
        } else if b == INFINITY {
            (b, a)
        } else if a < b {
            (a, b)
        } else {
            (b, a)
        };
        Ok(PairVertex { first, second })
    }

    pub fn contains_infinity(&self) -> bool {
        self.first == INFINITY
    }
}

impl std::fmt::Display for PairVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let part = |p: u32| -> String {
            if p == INFINITY {
                "inf".into()
            } else {
                p.to_string()
            }
        };
        write!(f, "{{{}, {}}}", part(self.first), part(self.second))
    }
}

/// The explicit pair action of `PSL(2, q)`.
pub struct PairsAction {
    field: FieldContext,
    n: u32,
    u: Permutation,
    uprime: Permutation,
    l: Permutation,
    t: Permutation,
}

/// Whether `q` yields a pair action on `2rs` vertices with `r < s` odd
/// primes: `q` an odd prime with `q ≡ 3 (mod 8)` and `(q+1)/4` an odd prime
/// (then `q(q+1)/2 = 2 · (q+1)/4 · q`).
pub fn admissible_order(q: u64) -> bool {
    if !is_prime_u64(q) || q % 8 != 3 {
        return false;
    }
    let r = (q + 1) / 4;
    r % 2 == 1 && r > 1 && is_prime_u64(r) && r != q
}

/// Builds the pair action for an odd prime `q ≡ 3 (mod 4)`.
pub fn pairs_action(q: u64) -> Result<PairsAction, Psl2Error> {
    if !is_prime_u64(q) {
        return Err(Psl2Error::UnsupportedOrder {
            q,
            reason: "q must be prime".into(),
        });
    }
    if q % 4 != 3 || q < 7 {
        return Err(Psl2Error::UnsupportedOrder {
            q,
            reason: "pair stabilizer is dihedral only for q ≡ 3 (mod 4), q ≥ 7".into(),
        });
    }
    let field = FieldContext::new(q, 1)?;
    let n = (q * (q + 1) / 2) as u32;
    let u = pair_perm(&field, n, line::apply_u);
    let uprime = pair_perm(&field, n, line::apply_uprime);
    let l = pair_perm(&field, n, line::apply_l);
    let t = pair_perm(&field, n, line::apply_t);
    Ok(PairsAction {
        field,
        n,
        u,
        uprime,
        l,
        t,
    })
}

/// Lifts a projective-point map to a permutation of the pair vertices.
fn pair_perm(
    field: &FieldContext,
    n: u32,
    f: impl Fn(&FieldContext, u32) -> u32,
) -> Permutation {
    let q = field.q();
    let mut images = Vec::with_capacity(n as usize);
    for idx in 0..n {
        let (a, b) = decode(q, idx);
        images.push(encode(q, f(field, a), f(field, b)));
    }
    Permutation::from_images(images).expect("lifted point bijection")
}

/// Internal pair decoding; points use the line encoding (`∞` as code `q`).
fn decode(q: u64, idx: u32) -> (u32, u32) {
    let qq = q as u32;
    if idx < qq {
        (qq, idx)
    } else {
        (idx % qq, (idx % qq + idx / qq) % qq)
    }
}

/// Internal pair encoding, inverse of [`decode`].
fn encode(q: u64, a: u32, b: u32) -> u32 {
    let qq = q as u32;
    if a == qq {
        return b;
    }
    if b == qq {
        return a;
    }
    let d = (b + qq - a) % qq;
    if d <= (qq - 1) / 2 {
        d * qq + a
    } else {
        (qq - d) * qq + b
    }
}

impl PairsAction {
    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// Index of the base vertex `{∞, 0}`.
    pub fn base_vertex(&self) -> u32 {
        0
    }

    /// The vertex at a given index.
    pub fn vertex(&self, idx: u32) -> Result<PairVertex, Psl2Error> {
        if idx >= self.n {
            return Err(Psl2Error::IndexOutOfRange {
                what: "vertex index",
                value: idx as u64,
            });
        }
        let (a, b) = decode(self.q(), idx);
        let to_pub = |p: u32| if p as u64 == self.q() { INFINITY } else { p };
        PairVertex::new(to_pub(a), to_pub(b))
    }

    /// The index of a vertex.
    pub fn index_of(&self, v: PairVertex) -> Result<u32, Psl2Error> {
        let q = self.q();
        let to_int = |p: u32| -> Result<u32, Psl2Error> {
            if p == INFINITY {
                Ok(q as u32)
            } else if (p as u64) < q {
                Ok(p)
            } else {
                Err(Psl2Error::BadVertex(format!(
                    "point code {p} is not in F_{q} ∪ {{∞}}"
                )))
            }
        };
        Ok(encode(q, to_int(v.first)?, to_int(v.second)?))
    }

    /// Translation `x ↦ x + 1`; its orbits are the blocks.
    pub fn u(&self) -> &Permutation {
        &self.u
    }

    /// The map `x ↦ x / (1 + x)`, carrying `{∞, 0}` to `{0, 1}`.
    pub fn uprime(&self) -> &Permutation {
        &self.uprime
    }

    /// Square scaling `x ↦ x θ⁻²`; acts regularly on the finite blocks.
    pub fn l(&self) -> &Permutation {
        &self.l
    }

    /// The swap `x ↦ -1/x`.
    pub fn t(&self) -> &Permutation {
        &self.t
    }

    /// The full group `⟨u, l, t⟩ = PSL(2, q)` as a permutation group.
    pub fn group(&self) -> Result<PermutationGroup, Psl2Error> {
        Ok(PermutationGroup::new(
            self.n as usize,
            vec![self.u.clone(), self.l.clone(), self.t.clone()],
        )?)
    }

    /// Blocks of the translation: `B_∞` is block 0, `B_d` is block `d`.
    pub fn block_system(&self) -> Result<BlockSystem, Psl2Error> {
        Ok(BlockSystem::from_semiregular(&self.u)?)
    }
}

/// One classified suborbit of the pair action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DminusSuborbit {
    pub case: DminusCase,
    /// The defining label `j` (representative pair `{j, j+1}`).
    pub label: u64,
    pub descriptor: SuborbitDescriptor<PairVertex>,
}

/// The second label of a long self-paired suborbit (or the partner label of
/// a non-self-paired one): `-j - 1 mod q`.
pub fn label_mate(q: u64, j: u64) -> u64 {
    (2 * q - 1 - j) % q
}

/// Classifies the suborbit with representative `{j, j+1}` from the residue
/// classes of `j` and `j+1`.
pub fn classify_suborbit_dminus(
    field: &FieldContext,
    j: u64,
) -> Result<DminusSuborbit, Psl2Error> {
    let q = field.q();
    if j >= q {
        return Err(Psl2Error::IndexOutOfRange {
            what: "suborbit label",
            value: j,
        });
    }
    let je = field.element(j)?;
    let j1 = field.add(je, field.one());
    let rep = PairVertex::new(j as u32, ((j + 1) % q) as u32)?;
    let mate = label_mate(q, j);
    let short = (q - 1) / 2;
    let (case, length, self_paired, partner) = if je.is_zero() || j1.is_zero() {
        let p = PairVertex::new(mate as u32, ((mate + 1) % q) as u32)?;
        (DminusCase::NspLong, (q - 1) as usize, false, Some(p))
    } else {
        match (field.residue_class(je), field.residue_class(j1)) {
            (ResidueClass::Square, ResidueClass::NonSquare) => {
                (DminusCase::SpShort, short as usize, true, None)
            }
            (ResidueClass::NonSquare, ResidueClass::Square) => {
                let p = PairVertex::new(mate as u32, ((mate + 1) % q) as u32)?;
                (DminusCase::NspShort, short as usize, false, Some(p))
            }
            _ => (DminusCase::SpLong, (q - 1) as usize, true, None),
        }
    };
    Ok(DminusSuborbit {
        case,
        label: j,
        descriptor: SuborbitDescriptor {
            representative: rep,
            length,
            self_paired,
            partner,
        },
    })
}

/// All suborbits, one entry per orbital: long self-paired labels are listed
/// once (the smaller of `j` and `-j-1`), everything else for every label.
pub fn classify_all_dminus(field: &FieldContext) -> Result<Vec<DminusSuborbit>, Psl2Error> {
    let q = field.q();
    let mut out = Vec::new();
    for j in 0..q {
        let s = classify_suborbit_dminus(field, j)?;
        if s.case == DminusCase::SpLong && j > label_mate(q, j) {
            continue;
        }
        out.push(s);
    }
    Ok(out)
}

/// Count of neighbors of `{0, 1}` (the representative of block `B_1`) inside
/// the block `B_i`, `1 ≤ i ≤ (q-1)/2`; `i = 1` gives the internal degree.
pub fn block_degrees_dminus(
    field: &FieldContext,
    case: DminusCase,
    label: u64,
    i: u64,
) -> Result<u32, Psl2Error> {
    let q = field.q();
    let found = classify_suborbit_dminus(field, label)?;
    if found.case != case {
        return Err(Psl2Error::CaseMismatch {
            q,
            label,
            case: case.name(),
        });
    }
    if i < 1 || i > (q - 1) / 2 {
        return Err(Psl2Error::IndexOutOfRange {
            what: "block index",
            value: i,
        });
    }
    if case == DminusCase::NspLong {
        return Ok(if i == 1 { 2 } else { 4 });
    }
    let (d1, d2) = discriminants(field, label, i);
    let sq = |e: FieldElement| u32::from(field.residue_class(e) == ResidueClass::Square);
    let zero = |e: FieldElement| u32::from(e.is_zero());
    Ok(match case {
        DminusCase::SpShort => sq(d1) + sq(d2),
        DminusCase::NspShort => 2 * sq(d1) + 2 * sq(d2),
        DminusCase::SpLong => 2 * sq(d1) + zero(d1) + 2 * sq(d2) + zero(d2),
        DminusCase::NspLong => unreachable!(),
    })
}

/// The discriminants `i² ∓ (2+4j)i + 1` controlling how many scalings
/// `θ⁻²ᵏ` drop a neighbor of `{0, 1}` into `B_i`.
fn discriminants(field: &FieldContext, j: u64, i: u64) -> (FieldElement, FieldElement) {
    let je = field.element(j).expect("label validated");
    let ie = field.element(i).expect("block validated");
    let c = field.add(field.from_int(2), field.mul(field.from_int(4), je));
    let isq1 = field.add(field.mul(ie, ie), field.one());
    let ci = field.mul(c, ie);
    (field.sub(isq1, ci), field.add(isq1, ci))
}

/// Per-case degrees of the infinity block: `(d(B_∞, B_i), d(B_∞))`. The
/// cross count is the same for every finite block.
pub fn infinity_degrees_dminus(q: u64, case: DminusCase) -> (u32, u32) {
    match case {
        DminusCase::SpShort => (1, 0),
        DminusCase::NspShort => (2, 0),
        DminusCase::SpLong => (2, 0),
        DminusCase::NspLong => (2, (q - 1) as u32),
    }
}

/// The (undirected) orbital graph of the suborbit labeled `j`; for a
/// non-self-paired suborbit this is the union with its partner.
pub fn orbital_graph_dminus(action: &PairsAction, label: u64) -> Result<Graph, Psl2Error> {
    let s = classify_suborbit_dminus(action.field(), label)?;
    let rep = action.index_of(s.descriptor.representative)?;
    let base = action.base_vertex();
    let gens = [action.u(), action.l(), action.t()];
    Ok(super::edge_orbit_graph(
        action.n() as usize,
        (base, rep),
        &gens,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::coset_action;
    use crate::quolift::quotient;

    #[test]
    fn action_dimensions_and_group_order() {
        let act = pairs_action(11).unwrap();
        assert_eq!(act.n(), 66);
        let g = act.group().unwrap();
        assert_eq!(g.order(), 660);
        assert!(g.is_transitive());
        assert_eq!(g.stabilizer(act.base_vertex()).order(), 10);
    }

    #[test]
    fn translation_blocks_are_point_indexed() {
        for q in [11u64, 19] {
            let act = pairs_action(q).unwrap();
            let cells = ((q + 1) / 2) as usize;
            assert_eq!(act.u().is_semiregular(), Some((cells, q as usize)));
            let bs = act.block_system().unwrap();
            assert_eq!(bs.block_count(), cells);
            // Block 0 is B_∞, block d is the difference-d cell.
            assert_eq!(bs.block_of(act.base_vertex()), 0);
            let b1 = act.index_of(PairVertex::new(0, 1).unwrap()).unwrap();
            assert_eq!(bs.block_of(b1), 1);
        }
    }

    #[test]
    fn vertex_indexing_round_trips() {
        let act = pairs_action(11).unwrap();
        for idx in 0..act.n() {
            let v = act.vertex(idx).unwrap();
            assert_eq!(act.index_of(v).unwrap(), idx);
        }
        assert!(act.vertex(act.n()).is_err());
        assert!(PairVertex::new(3, 3).is_err());
    }

    #[test]
    fn classification_matches_generic_suborbits() {
        for q in [11u64, 19] {
            let act = pairs_action(q).unwrap();
            let group = act.group().unwrap();
            let oracle = group.suborbits(act.base_vertex()).unwrap();
            let locate = |idx: u32| {
                oracle
                    .iter()
                    .position(|s| s.points.binary_search(&idx).is_ok())
                    .unwrap()
            };
            for j in 0..q {
                let got = classify_suborbit_dminus(act.field(), j).unwrap();
                let rep_idx = act.index_of(got.descriptor.representative).unwrap();
                let at = locate(rep_idx);
                assert_eq!(oracle[at].len(), got.descriptor.length, "q={q} j={j}");
                assert_eq!(
                    oracle[at].self_paired, got.descriptor.self_paired,
                    "q={q} j={j}"
                );
                match got.descriptor.partner {
                    Some(p) => {
                        let p_idx = act.index_of(p).unwrap();
                        assert_eq!(oracle[at].paired_with, locate(p_idx), "q={q} j={j}");
                    }
                    None => assert!(oracle[at].self_paired),
                }
            }
        }
    }

    #[test]
    fn canonical_suborbits_partition_the_action() {
        for q in [11u64, 19, 43] {
            let field = FieldContext::new(q, 1).unwrap();
            let all = classify_all_dminus(&field).unwrap();
            let total: usize = all.iter().map(|s| s.descriptor.length).sum();
            assert_eq!(total as u64, q * (q + 1) / 2 - 1, "q={q}");
            let count = |c: DminusCase| all.iter().filter(|s| s.case == c).count();
            assert_eq!(count(DminusCase::NspLong), 2, "q={q}");
            assert!(count(DminusCase::SpShort) > 0, "q={q}");
            assert!(count(DminusCase::NspShort) > 0, "q={q}");
            assert!(count(DminusCase::SpLong) > 0, "q={q}");
        }
    }

    #[test]
    fn block_degree_formulas_match_edge_counts() {
        for q in [11u64, 19] {
            let act = pairs_action(q).unwrap();
            let bs = act.block_system().unwrap();
            let m = (q - 1) / 2;
            for sub in classify_all_dminus(act.field()).unwrap() {
                // Partners produce the same undirected graph; skip one copy.
                if !sub.descriptor.self_paired && sub.label > label_mate(q, sub.label) {
                    continue;
                }
                let graph = orbital_graph_dminus(&act, sub.label).unwrap();
                let qg = quotient(&graph, &bs).unwrap();
                let (cross_inf, internal_inf) = infinity_degrees_dminus(q, sub.case);
                assert_eq!(qg.internal_degree(0), internal_inf, "q={q} j={}", sub.label);
                for i in 1..=m {
                    assert_eq!(
                        qg.multiplicity(0, i as u32),
                        cross_inf,
                        "q={q} j={} B_inf,B_{i}",
                        sub.label
                    );
                    let formula =
                        block_degrees_dminus(act.field(), sub.case, sub.label, i).unwrap();
                    let observed = if i == 1 {
                        qg.internal_degree(1)
                    } else {
                        qg.multiplicity(1, i as u32)
                    };
                    assert_eq!(formula, observed, "q={q} j={} B_1,B_{i}", sub.label);
                }
            }
        }
    }

    #[test]
    fn nsp_long_quotient_is_complete_off_infinity() {
        let act = pairs_action(19).unwrap();
        let bs = act.block_system().unwrap();
        let graph = orbital_graph_dminus(&act, 0).unwrap();
        assert_eq!(graph.regular_valency(), Some(2 * (19 - 1)));
        let qg = quotient(&graph, &bs).unwrap();
        for a in 1..qg.block_count() as u32 {
            for b in (a + 1)..qg.block_count() as u32 {
                assert_eq!(qg.multiplicity(a, b), 4);
            }
            assert_eq!(qg.internal_degree(a), 2);
        }
        assert_eq!(qg.internal_degree(0), 18);
    }

    #[test]
    fn orbital_graph_valency_per_case() {
        let act = pairs_action(19).unwrap();
        for sub in classify_all_dminus(act.field()).unwrap() {
            let graph = orbital_graph_dminus(&act, sub.label).unwrap();
            let expect: usize = match sub.case {
                DminusCase::SpShort => (19 - 1) / 2,
                DminusCase::NspShort | DminusCase::SpLong => 19 - 1,
                DminusCase::NspLong => 2 * (19 - 1),
            };
            assert_eq!(graph.regular_valency(), Some(expect), "j={}", sub.label);
            assert!(graph.is_connected(), "j={}", sub.label);
        }
    }

    #[test]
    fn mate_labels_share_a_graph_except_sp_short() {
        // For long labels j and -j-1 name one suborbit; for partnered short
        // labels they name a partner pair, merged in the undirected graph.
        // Self-paired short labels are the exception: j and -j-1 are two
        // genuinely different suborbits with disjoint edge sets.
        let act = pairs_action(19).unwrap();
        for sub in classify_all_dminus(act.field()).unwrap() {
            let mate = label_mate(19, sub.label);
            if sub.label >= mate {
                continue;
            }
            let g1 = orbital_graph_dminus(&act, sub.label).unwrap();
            let g2 = orbital_graph_dminus(&act, mate).unwrap();
            if sub.case == DminusCase::SpShort {
                assert_ne!(g1.content_hash(), g2.content_hash(), "j={}", sub.label);
            } else {
                assert_eq!(g1.content_hash(), g2.content_hash(), "j={}", sub.label);
            }
        }
    }

    #[test]
    fn mismatched_case_is_rejected() {
        let field = FieldContext::new(19, 1).unwrap();
        // Label 0 is the non-self-paired long suborbit.
        let err = block_degrees_dminus(&field, DminusCase::SpShort, 0, 2).unwrap_err();
        assert!(matches!(err, Psl2Error::CaseMismatch { .. }));
        assert!(block_degrees_dminus(&field, DminusCase::NspLong, 0, 0).is_err());
        assert!(block_degrees_dminus(&field, DminusCase::NspLong, 0, 10).is_err());
    }

    #[test]
    fn admissible_orders_are_sparse() {
        let hits: Vec<u64> = (3..200).filter(|&q| admissible_order(q)).collect();
        assert_eq!(hits, vec![11, 19, 43, 67, 163]);
    }

    #[test]
    fn agrees_with_matrix_coset_action() {
        let q = 11u64;
        let act = pairs_action(q).unwrap();
        let field = act.field().clone();
        let deg = (q + 1) as usize;
        let line_group = PermutationGroup::new(
            deg,
            vec![
                line::perm(&field, line::apply_u),
                line::perm(&field, line::apply_l),
                line::perm(&field, line::apply_t),
            ],
        )
        .unwrap();
        assert_eq!(line_group.order(), q * (q * q - 1) / 2);
        // The pair stabilizer ⟨l, t⟩ fixes {∞, 0}.
        let sub = PermutationGroup::new(
            deg,
            vec![
                line::perm(&field, line::apply_l),
                line::perm(&field, line::apply_t),
            ],
        )
        .unwrap();
        assert_eq!(sub.order(), q - 1);
        let cosets = coset_action(&line_group, &sub).unwrap();
        assert_eq!(cosets.degree(), act.n() as usize);
        let mut oracle: Vec<usize> = cosets
            .suborbits()
            .unwrap()
            .iter()
            .map(|s| s.len())
            .collect();
        let mut ours: Vec<usize> = classify_all_dminus(&field)
            .unwrap()
            .iter()
            .map(|s| s.descriptor.length)
            .collect();
        ours.push(1); // the trivial suborbit, which the oracle lists too
        oracle.sort_unstable();
        ours.sort_unstable();
        assert_eq!(oracle, ours);
    }
}
