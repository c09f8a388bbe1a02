//! Hamilton pipelines for the two dihedral-stabilizer coset models.
//!
//! Both models share one skeleton: build the orbital graph, quotient by the
//! order-q deck (the unipotent generator), produce a Hamilton cycle of the
//! quotient that keeps a multiplicity >= 2 edge available, and lift through
//! the odd-prime fibres. The quotient cycles come from case structure —
//! complete quotients, circulants through a double edge with the infinity
//! block spliced in, or the alternating two-sided walk — and search only
//! enters as a recorded fallback rung.

use crate::psl2::dminus::{
    classify_suborbit_dminus, orbital_graph_dminus, pairs_action, PairsAction,
};
use crate::psl2::dplus::{dplus_action, orbital_graph_dplus, DplusAction};
use crate::psl2::{DminusCase, DplusCase, Side};
use crate::quolift::{circulant_hcycle_through_edge, quotient, QuotientGraph};

use super::{finish_via_quotient, skeleton_cycle, BuiltCase, ConstructionError, Strategy};

/// Certifies the orbital graph of the pairs model labelled `label`.
///
/// The accepted `q` are those of [`pairs_action`]; `label` picks the
/// suborbit as in the classification. Partner labels name the same
/// undirected graph and either may be passed.
pub fn dminus_pipeline(q: u64, label: u64) -> Result<BuiltCase, ConstructionError> {
    let action = pairs_action(q)?;
    let sub = classify_suborbit_dminus(action.field(), label)?;
    let graph = orbital_graph_dminus(&action, label)?;
    let blocks = action.block_system()?;
    let quo = quotient(&graph, &blocks)?;
    let candidate = match sub.case {
        // Dropping the infinity block leaves a complete quotient, and the
        // infinity block is doubly joined to every other: visit the blocks
        // in index order.
        DminusCase::NspLong => Some((0..blocks.block_count() as u32).collect::<Vec<u32>>()),
        _ => circulant_with_infinity(&action, &quo),
    };
    finish_via_quotient(graph, &blocks, &quo, candidate)
}

/// Certifies the orbital graph of the coset model with stabilizer of order
/// `q + 1`, for the given suborbit case and exponent.
pub fn dplus_pipeline(q: u64, case: DplusCase, k: u64) -> Result<BuiltCase, ConstructionError> {
    let action = dplus_action(q)?;
    let graph = orbital_graph_dplus(&action, case, k)?;
    let blocks = action.block_system()?;
    let quo = quotient(&graph, &blocks)?;
    let candidate = match case {
        // The long-suborbit quotient has minimum degree about half the
        // block count and every present edge has even multiplicity; a
        // seeded skeleton search always comes back.
        DplusCase::Long => skeleton_cycle(&quo)?,
        _ => alternating_cycle(&action, &quo)?,
    };
    finish_via_quotient(graph, &blocks, &quo, candidate)
}

/// Positions of the rotation subgroup on the finite blocks: position `t`
/// holds the block whose difference label is `±theta^(-2t)`.
fn rotation_positions(action: &PairsAction) -> Vec<u32> {
    let f = action.field();
    let q = f.q();
    let m = ((q - 1) / 2) as usize;
    let step = f.inv(f.mul(f.theta(), f.theta())).expect("theta is a unit");
    let mut d = f.one();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let code = d.code();
        out.push(code.min(q - code) as u32);
        d = f.mul(d, step);
    }
    out
}

/// A Hamilton cycle of the full pairs-model quotient: a circulant cycle of
/// the finite blocks forced through a double edge, with the infinity block
/// spliced into the wrap-around edge.
fn circulant_with_infinity(
    action: &PairsAction,
    quo: &QuotientGraph,
) -> Option<Vec<u32>> {
    let pos = rotation_positions(action);
    let m = pos.len();
    if m < 3 {
        return None;
    }
    let mut connection = Vec::new();
    let mut double = None;
    for s in 1..m {
        let mult = quo.multiplicity(pos[0], pos[s]);
        if mult > 0 {
            connection.push(s as u32);
            if mult >= 2 && double.is_none() {
                double = Some(s as u32);
            }
        }
    }
    let forced = (0, double?);
    let cycle = match circulant_hcycle_through_edge(m, &connection, forced) {
        Ok((_, cycle)) => cycle,
        Err(_) => return None,
    };
    // Infinity is block 0 and meets every finite block; splicing it into
    // the wrap edge keeps the forced double edge inside the cycle.
    let mut out = Vec::with_capacity(m + 1);
    out.push(0);
    out.extend(cycle.into_iter().map(|t| pos[t as usize]));
    Some(out)
}

/// The alternating two-sided walk: two primed blocks adjacent to the base
/// plain block differ by a rotation step `d`, and interleaving the two
/// sides while advancing by `d` visits every block once.
fn alternating_cycle(
    action: &DplusAction,
    quo: &QuotientGraph,
) -> Result<Option<Vec<u32>>, ConstructionError> {
    let r = action.r();
    let base = action.block_index(Side::Plain, r)? as u32;
    let mut primed_neighbors = Vec::new();
    for i in 1..=r {
        let blk = action.block_index(Side::Primed, i)? as u32;
        if quo.multiplicity(base, blk) > 0 {
            primed_neighbors.push(i);
        }
    }
    let [a, b, ..] = primed_neighbors[..] else {
        return Ok(None);
    };
    let d = b - a;
    let mut cycle = Vec::with_capacity(2 * r as usize);
    for t in 0..r {
        let pi = (a - 1 + t * d) % r + 1;
        let bi = (t * d + r - 1) % r + 1;
        cycle.push(action.block_index(Side::Primed, pi)? as u32);
        cycle.push(action.block_index(Side::Plain, bi)? as u32);
    }
    Ok(Some(cycle))
}
