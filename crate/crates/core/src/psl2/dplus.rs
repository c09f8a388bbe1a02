//! `PSL(2, q)` on the cosets of the nonsplit torus normalizer, `q ≡ 1 (mod 4)`.
//!
//! Here the stabilizer `H` is dihedral of order `q + 1`: the norm-one torus
//! of `F_{q²} = F_q(√θ)` extended by a reflection. Writing `r = (q-1)/4`,
//! the action has `q(q-1)/2 = 2rq` points. Every coset `Hg` gets a label
//! `(α, ±β)` with `β ≠ 0` by reducing the image of the line slope `√θ`
//! under `g`; the residue class of `β` splits the cosets into a `plain` and
//! a `primed` family of `r` translation blocks each, every block a coset of
//! the unipotent translation `u: α ↦ α + 1`.
//!
//! Suborbits come in three kinds: self-paired short ones through `H l^k t`,
//! partnered short ones through `H l^k`, and self-paired long ones through
//! `H u^k` for the `r` values of `k` with `k² - 4θ` a nonsquare. Counting
//! neighbors of the base coset inside a chosen block reduces to solving for
//! a torus parameter `u = y²` in one linear (short kinds) or quadratic
//! (long kind) equation per sign pattern, which is what
//! [`block_degrees_dplus`] evaluates.

use std::collections::BTreeSet;

use crate::ff::{is_prime_u64, FieldContext, FieldElement, ResidueClass};
use crate::orbital::Graph;
use crate::perm::{Permutation, PermutationGroup};
use crate::quolift::BlockSystem;

use super::{DplusCase, Psl2Error, Side, SuborbitDescriptor};

/// Vertex of the coset model: side, block index `i ∈ 1..=r`, and the
/// in-block coordinate `j = α θ^{2i}` (a field code).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CosetVertex {
    pub side: Side,
    pub i: u64,
    pub j: u64,
}

impl std::fmt::Display for CosetVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, i={}, j={})", self.side, self.i, self.j)
    }
}

/// The explicit coset action of `PSL(2, q)` on the `2rq` cosets of the
/// torus normalizer.
pub struct DplusAction {
    field: FieldContext,
    r: u64,
    n: u32,
    /// `β` code to block index; `β = 0` never occurs.
    beta_block: Vec<u32>,
    /// Block index to the code of its representative `β`.
    block_beta: Vec<u64>,
    u: Permutation,
    uprime: Permutation,
    l: Permutation,
    t: Permutation,
}

/// Whether `q` yields a coset action on `2rs` vertices with `r < s` odd
/// primes: `q` prime, `q ≡ 1 (mod 4)` and `r = (q-1)/4` an odd prime (then
/// `q(q-1)/2 = 2 · (q-1)/4 · q`).
pub fn admissible_order(q: u64) -> bool {
    if !is_prime_u64(q) || q % 4 != 1 {
        return false;
    }
    let r = (q - 1) / 4;
    r % 2 == 1 && r > 1 && is_prime_u64(r) && r != q
}

/// Validates the model preconditions and returns `r = (q-1)/4`.
fn require_dplus(field: &FieldContext) -> Result<u64, Psl2Error> {
    let q = field.q();
    if field.k() != 1 || q % 4 != 1 || q < 13 {
        return Err(Psl2Error::UnsupportedOrder {
            q,
            reason: "torus-normalizer model needs a prime q ≡ 1 (mod 4), q ≥ 13".into(),
        });
    }
    let r = (q - 1) / 4;
    if r % 2 == 0 {
        return Err(Psl2Error::UnsupportedOrder {
            q,
            reason: "suborbit pairing degenerates unless (q-1)/4 is odd".into(),
        });
    }
    Ok(r)
}

/// Builds the coset action for a prime `q ≡ 1 (mod 4)` with `(q-1)/4` odd.
pub fn dplus_action(q: u64) -> Result<DplusAction, Psl2Error> {
    if !is_prime_u64(q) {
        return Err(Psl2Error::UnsupportedOrder {
            q,
            reason: "q must be prime".into(),
        });
    }
    let field = FieldContext::new(q, 1)?;
    let r = require_dplus(&field)?;
    let n = (2 * r * q) as u32;

    // Plain block i collects β ∈ {±θ^{-2i}} (the squares), primed block i
    // collects β ∈ {±θ^{-2i-1}} (the nonsquares).
    let mut beta_block = vec![u32::MAX; q as usize];
    let mut block_beta = vec![0u64; 2 * r as usize];
    for i in 1..=r {
        let plain = field.theta_pow(-2 * i as i64);
        let primed = field.neg(field.theta_pow(-2 * i as i64 - 1));
        for (side_off, rep) in [(0, plain), (r, primed)] {
            let blk = (side_off + i - 1) as u32;
            beta_block[rep.code() as usize] = blk;
            beta_block[field.neg(rep).code() as usize] = blk;
            block_beta[blk as usize] = rep.code();
        }
    }

    let label_perm = |f: &dyn Fn(
        &FieldContext,
        FieldElement,
        FieldElement,
    ) -> (FieldElement, FieldElement)|
     -> Permutation {
        let mut images = Vec::with_capacity(n as usize);
        for idx in 0..n {
            let blk = idx as u64 / q;
            let alpha = field.element(idx as u64 % q).expect("code");
            let beta = field.element(block_beta[blk as usize]).expect("code");
            let (a2, b2) = f(&field, alpha, beta);
            let blk2 = beta_block[b2.code() as usize] as u64;
            debug_assert_ne!(blk2, u32::MAX as u64, "β stays nonzero");
            images.push((blk2 * q + a2.code()) as u32);
        }
        Permutation::from_images(images).expect("label bijection")
    };

    let u = label_perm(&|f, a, b| (f.add(a, f.one()), b));
    let l = label_perm(&|f, a, b| (f.mul(a, f.theta_pow(-2)), f.mul(b, f.theta_pow(-2))));
    let t = label_perm(&|f, a, b| {
        // slope ↦ -1/slope: D = α² - β²θ is nonzero because θ is a nonsquare.
        let d = f.sub(f.mul(a, a), f.mul(f.mul(b, b), f.theta()));
        let di = f.inv(d).expect("norm form has no isotropic vectors");
        (f.neg(f.mul(a, di)), f.mul(b, di))
    });
    let uprime = label_perm(&|f, a, b| {
        // slope ↦ slope/(1 + slope): D' = (1+α)² - β²θ is nonzero likewise.
        let a1 = f.add(f.one(), a);
        let d = f.sub(f.mul(a1, a1), f.mul(f.mul(b, b), f.theta()));
        let di = f.inv(d).expect("norm form has no isotropic vectors");
        let num = f.sub(f.mul(a, a1), f.mul(f.mul(b, b), f.theta()));
        (f.mul(num, di), f.mul(b, di))
    });

    Ok(DplusAction {
        field,
        r,
        n,
        beta_block,
        block_beta,
        u,
        uprime,
        l,
        t,
    })
}

impl DplusAction {
    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `r = (q - 1) / 4`, the number of blocks per side.
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// Index of the base coset `H`, which sits in the plain block `i = r`
    /// at coordinate `j = 0`.
    pub fn base_vertex(&self) -> u32 {
        ((self.r - 1) * self.q()) as u32
    }

    /// Flat block index of `(side, i)`: plain blocks come first.
    pub fn block_index(&self, side: Side, i: u64) -> Result<usize, Psl2Error> {
        if i < 1 || i > self.r {
            return Err(Psl2Error::IndexOutOfRange {
                what: "block index",
                value: i,
            });
        }
        let off = match side {
            Side::Plain => 0,
            Side::Primed => self.r,
        };
        Ok((off + i - 1) as usize)
    }

    /// The vertex at a given index.
    pub fn vertex(&self, idx: u32) -> Result<CosetVertex, Psl2Error> {
        if idx >= self.n {
            return Err(Psl2Error::IndexOutOfRange {
                what: "vertex index",
                value: idx as u64,
            });
        }
        let q = self.q();
        let blk = idx as u64 / q;
        let alpha = self.field.element(idx as u64 % q)?;
        let (side, i) = if blk < self.r {
            (Side::Plain, blk + 1)
        } else {
            (Side::Primed, blk - self.r + 1)
        };
        let j = self.field.mul(alpha, self.field.theta_pow(2 * i as i64));
        Ok(CosetVertex {
            side,
            i,
            j: j.code(),
        })
    }

    /// The index of a vertex.
    pub fn index_of(&self, v: CosetVertex) -> Result<u32, Psl2Error> {
        let q = self.q();
        if v.j >= q {
            return Err(Psl2Error::BadVertex(format!(
                "coordinate {} is not in F_{q}",
                v.j
            )));
        }
        let blk = self.block_index(v.side, v.i)? as u64;
        let je = self.field.element(v.j)?;
        let alpha = self.field.mul(je, self.field.theta_pow(-2 * (v.i as i64)));
        Ok((blk * q + alpha.code()) as u32)
    }

    /// Translation `α ↦ α + 1`; its orbits are the blocks.
    pub fn u(&self) -> &Permutation {
        &self.u
    }

    /// The transposed translation.
    pub fn uprime(&self) -> &Permutation {
        &self.uprime
    }

    /// Square scaling; rotates the blocks of each side cyclically.
    pub fn l(&self) -> &Permutation {
        &self.l
    }

    /// The inversion `slope ↦ -1/slope`.
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

    /// Blocks of the translation, ordered plain `1..=r`, then primed.
    pub fn block_system(&self) -> Result<BlockSystem, Psl2Error> {
        Ok(BlockSystem::from_semiregular(&self.u)?)
    }

    /// Representative `β` code of a block (sign class `{±β}`).
    pub fn block_beta(&self, side: Side, i: u64) -> Result<u64, Psl2Error> {
        Ok(self.block_beta[self.block_index(side, i)?])
    }

    /// Block holding a coset with the given `β` code.
    pub fn block_of_beta(&self, beta: u64) -> Result<(Side, u64), Psl2Error> {
        let blk = *self
            .beta_block
            .get(beta as usize)
            .filter(|&&b| b != u32::MAX)
            .ok_or_else(|| Psl2Error::BadVertex(format!("no block for β = {beta}")))?
            as u64;
        if blk < self.r {
            Ok((Side::Plain, blk + 1))
        } else {
            Ok((Side::Primed, blk - self.r + 1))
        }
    }
}

/// One classified suborbit of the coset action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DplusSuborbit {
    pub case: DplusCase,
    /// Defining exponent: `k` in `H l^k t`, `H l^k` or `H u^k`.
    pub exponent: u64,
    pub descriptor: SuborbitDescriptor<CosetVertex>,
}

/// The exponents `k ∈ 1..=(q-1)/2` whose translation coset `H u^k H` is a
/// long suborbit: exactly those with `k² - 4θ` a nonsquare. There are `r`
/// of them.
pub fn long_exponents(field: &FieldContext) -> Result<Vec<u64>, Psl2Error> {
    let r = require_dplus(field)?;
    let four_theta = field.mul(field.from_int(4), field.theta());
    let out: Vec<u64> = (1..=(field.q() - 1) / 2)
        .filter(|&k| {
            let ke = field.element(k).expect("range");
            let disc = field.sub(field.mul(ke, ke), four_theta);
            field.residue_class(disc) == ResidueClass::NonSquare
        })
        .collect();
    assert_eq!(out.len() as u64, r, "long suborbit count");
    Ok(out)
}

/// Classifies all suborbits: `r` self-paired short ones, `r - 1` partnered
/// short ones, and `r` self-paired long ones.
pub fn classify_suborbits_dplus(field: &FieldContext) -> Result<Vec<DplusSuborbit>, Psl2Error> {
    let r = require_dplus(field)?;
    let q = field.q();
    let short_len = ((q + 1) / 2) as usize;
    let mut out = Vec::new();
    for k in 1..=r {
        // H l^k t lies in the primed block r - k (block r when k = r).
        let i = if k == r { r } else { r - k };
        out.push(DplusSuborbit {
            case: DplusCase::SpShort,
            exponent: k,
            descriptor: SuborbitDescriptor {
                representative: CosetVertex {
                    side: Side::Primed,
                    i,
                    j: 0,
                },
                length: short_len,
                self_paired: true,
                partner: None,
            },
        });
    }
    for k in 1..r {
        // H l^k lies in the plain block k; its partner is H l^{r-k}.
        out.push(DplusSuborbit {
            case: DplusCase::NspShort,
            exponent: k,
            descriptor: SuborbitDescriptor {
                representative: CosetVertex {
                    side: Side::Plain,
                    i: k,
                    j: 0,
                },
                length: short_len,
                self_paired: false,
                partner: Some(CosetVertex {
                    side: Side::Plain,
                    i: r - k,
                    j: 0,
                }),
            },
        });
    }
    for k in long_exponents(field)? {
        // H u^k lies in the plain block r at coordinate j = -k.
        out.push(DplusSuborbit {
            case: DplusCase::Long,
            exponent: k,
            descriptor: SuborbitDescriptor {
                representative: CosetVertex {
                    side: Side::Plain,
                    i: r,
                    j: q - k,
                },
                length: (q + 1) as usize,
                self_paired: true,
                partner: None,
            },
        });
    }
    Ok(out)
}

/// Validates that `k` indexes a suborbit of the stated case.
fn validate_case_exponent(
    field: &FieldContext,
    r: u64,
    case: DplusCase,
    k: u64,
) -> Result<(), Psl2Error> {
    let ok = match case {
        DplusCase::SpShort => (1..=r).contains(&k),
        DplusCase::NspShort => (1..r).contains(&k),
        DplusCase::Long => long_exponents(field)?.contains(&k),
    };
    if ok {
        Ok(())
    } else {
        Err(Psl2Error::CaseMismatch {
            q: field.q(),
            label: k,
            case: case.name(),
        })
    }
}

/// Count of neighbors of the base coset `H` inside the block `(side, i)`
/// for the suborbit of the given case and exponent. The count for any other
/// source block containing a plain block in the pair follows by rotating
/// both indices (the scaling `l` is a graph automorphism) or transposing.
pub fn block_degrees_dplus(
    field: &FieldContext,
    case: DplusCase,
    k: u64,
    side: Side,
    i: u64,
) -> Result<u32, Psl2Error> {
    let r = require_dplus(field)?;
    validate_case_exponent(field, r, case, k)?;
    if i < 1 || i > r {
        return Err(Psl2Error::IndexOutOfRange {
            what: "block index",
            value: i,
        });
    }
    let side_bit = match side {
        Side::Plain => 0i64,
        Side::Primed => 1i64,
    };
    let ki = k as i64;
    let ii = i as i64;
    let theta = field.theta();
    let one = field.one();
    let signs = [one, field.neg(one)];
    // A neighbor lands in the target block exactly when its denominator D
    // equals ±θ^{2i + side_bit}; solving for the torus parameter u = y² and
    // keeping square values enumerates the neighbors. Each nonzero solution
    // contributes the coordinate pair ±j, a zero solution contributes j = 0.
    let mut hits: BTreeSet<u64> = BTreeSet::new();
    let mut push_pair = |j: FieldElement| {
        hits.insert(j.code());
        hits.insert(field.neg(j).code());
    };
    match case {
        DplusCase::SpShort => {
            // Neighbors H l^k t h: D(u) = u C - θ^{1-2k}, C = θ^{2k} - θ^{2-2k},
            // and α = C x y / D.
            let c_coef = field.sub(field.theta_pow(2 * ki), field.theta_pow(2 - 2 * ki));
            for psi in signs {
                let target = field.mul(psi, field.theta_pow(2 * ii + side_bit));
                let num = field.add(target, field.theta_pow(1 - 2 * ki));
                let u = field.div(num, c_coef)?;
                if u.is_zero() {
                    push_pair(field.zero());
                } else if field.residue_class(u) == ResidueClass::Square {
                    let xsq = field.add(one, field.mul(theta, u));
                    if field.residue_class(xsq) == ResidueClass::Square {
                        let y1 = field.sqrt(u).expect("square");
                        let x1 = field.sqrt(xsq).expect("square");
                        let alpha =
                            field.div(field.mul(c_coef, field.mul(x1, y1)), target)?;
                        push_pair(field.mul(alpha, field.theta_pow(2 * ii)));
                    }
                }
            }
        }
        DplusCase::NspShort => {
            // Neighbors H l^{±k} h: D(u) = θ^{2εk} + u C_ε with
            // C_ε = θ^{2εk+1} - θ^{1-2εk}, and α = C_ε x y / D.
            for eps in [1i64, -1] {
                let ke = eps * ki;
                let c_coef =
                    field.sub(field.theta_pow(2 * ke + 1), field.theta_pow(1 - 2 * ke));
                for psi in signs {
                    let target = field.mul(psi, field.theta_pow(2 * ii + side_bit));
                    let num = field.sub(target, field.theta_pow(2 * ke));
                    let u = field.div(num, c_coef)?;
                    if u.is_zero() {
                        push_pair(field.zero());
                    } else if field.residue_class(u) == ResidueClass::Square {
                        let xsq = field.add(one, field.mul(theta, u));
                        if field.residue_class(xsq) == ResidueClass::Square {
                            let y1 = field.sqrt(u).expect("square");
                            let x1 = field.sqrt(xsq).expect("square");
                            let alpha =
                                field.div(field.mul(c_coef, field.mul(x1, y1)), target)?;
                            push_pair(field.mul(alpha, field.theta_pow(2 * ii)));
                        }
                    }
                }
            }
        }
        DplusCase::Long => {
            // Neighbors H u^k h: D = 1 + k²u + 2kxy, so a target value c
            // forces xy = (c - 1 - k²u)/(2k); squaring and using
            // (xy)² = u(1 + θu) yields A u² + B u + C = 0 with
            // A = k²(4θ - k²), B = 2k²(1 + c), C = -(c - 1)².
            let ke = field.element(k)?;
            let k2 = field.mul(ke, ke);
            let a_coef = field.mul(
                k2,
                field.sub(field.mul(field.from_int(4), theta), k2),
            );
            let two_k_inv = field.inv(field.add(ke, ke))?;
            for psi in signs {
                let c = field.mul(psi, field.theta_pow(2 * ii + side_bit));
                let b_coef = field.mul(field.add(k2, k2), field.add(one, c));
                let cm1 = field.sub(c, one);
                let c_coef = field.neg(field.mul(cm1, cm1));
                let disc = field.sub(
                    field.mul(b_coef, b_coef),
                    field.mul(field.mul(field.from_int(4), a_coef), c_coef),
                );
                let Some(s) = field.sqrt(disc) else { continue };
                let half = field.inv(field.add(a_coef, a_coef))?;
                let mut roots = vec![field.mul(field.sub(s, b_coef), half)];
                if !s.is_zero() {
                    roots.push(field.mul(field.sub(field.neg(s), b_coef), half));
                }
                for u in roots {
                    if u.is_zero() {
                        // y = 0 gives the neighbors H u^{±k} themselves.
                        push_pair(field.mul(ke, field.theta_pow(2 * ii)));
                    } else if field.residue_class(u) == ResidueClass::Square {
                        // x² = 1 + θu is then automatically a square.
                        let p = field.mul(field.sub(cm1, field.mul(k2, u)), two_k_inv);
                        let tu = field.add(one, field.mul(field.add(theta, theta), u));
                        let alpha =
                            field.div(field.add(field.mul(ke, tu), field.mul(k2, p)), c)?;
                        push_pair(field.mul(alpha, field.theta_pow(2 * ii)));
                    }
                }
            }
        }
    }
    Ok(hits.len() as u32)
}

/// The (undirected) orbital graph for the suborbit of the given case and
/// exponent; partnered suborbits are merged with their partner.
pub fn orbital_graph_dplus(
    action: &DplusAction,
    case: DplusCase,
    k: u64,
) -> Result<Graph, Psl2Error> {
    let field = action.field();
    let r = action.r();
    validate_case_exponent(field, r, case, k)?;
    let rep = classify_suborbits_dplus(field)?
        .into_iter()
        .find(|s| s.case == case && s.exponent == k)
        .expect("validated exponent");
    let rep_idx = action.index_of(rep.descriptor.representative)?;
    let gens = [action.u(), action.l(), action.t()];
    Ok(super::edge_orbit_graph(
        action.n() as usize,
        (action.base_vertex(), rep_idx),
        &gens,
    )?)
}
