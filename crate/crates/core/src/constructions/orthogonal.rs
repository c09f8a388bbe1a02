//! Orbital graphs of the orthogonal groups on totally singular points.
//!
//! Vertices are the singular projective points of a quadratic form; the two
//! orbitals join perpendicular pairs and opposite (non-perpendicular)
//! pairs. A block-diagonal Singer power acts semiregularly with odd prime
//! fibre, so the perpendicular graph lifts a quotient cycle, while the
//! opposite graph is dense enough for a tagged search.
//!
//! Two concrete geometries are built: the minus-type form in dimension 8
//! over an odd prime field, and the plus-type form in dimension 10 over
//! `GF(2)`, where the quadratic form must be evaluated directly because
//! the bilinear form alone no longer determines it.

use crate::ff::{FieldContext, FieldElement};
use crate::orbital::Graph;
use crate::quolift::{quotient, BlockSystem};

use super::linalg::{mult_matrix, Mat, PointIndex};
use super::{finish_via_quotient, BuiltCase, ConstructionError, Strategy};

/// A singular-point geometry: the points, the two orbital graphs, and the
/// Singer block system.
pub struct SingularGeometry {
    pub points: PointIndex,
    pub perp: Graph,
    pub opp: Graph,
    pub blocks: BlockSystem,
}

fn dot(f: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = f.element(0).expect("zero");
    for (&x, &y) in a.iter().zip(b) {
        acc = f.add(acc, f.mul(x, y));
    }
    acc
}

/// Builds the two orbital graphs over a set of singular points: `u ~ v` in
/// the perpendicular graph when the bilinear form vanishes.
fn orbital_pair(
    f: &FieldContext,
    j: &Mat,
    points: &PointIndex,
) -> Result<(Graph, Graph), ConstructionError> {
    let n = points.len();
    let jv: Vec<Vec<FieldElement>> = (0..n as u32).map(|i| j.apply(f, points.point(i))).collect();
    let mut perp = Vec::new();
    let mut opp = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if dot(f, &jv[a as usize], points.point(b)).is_zero() {
                perp.push((a, b));
            } else {
                opp.push((a, b));
            }
        }
    }
    Ok((Graph::from_edges(n, perp)?, Graph::from_edges(n, opp)?))
}

/// Block system of a matrix acting semiregularly on the points.
fn singer_blocks(
    f: &FieldContext,
    points: &PointIndex,
    deck: &Mat,
    fibre: u64,
) -> Result<BlockSystem, ConstructionError> {
    let perm = points.permutation(f, deck);
    if perm.order() != fibre {
        return Err(ConstructionError::DataMismatch(format!(
            "deck order {} instead of {fibre}",
            perm.order()
        )));
    }
    Ok(BlockSystem::from_semiregular(&perm)?)
}

/// The minus-type geometry in dimension 8 over an odd prime field: the
/// form is hyperbolic on six coordinates plus an anisotropic plane, and
/// the deck transformation is a Singer power of the hyperbolic half
/// balanced by its inverse transpose.
pub fn ominus8_geometry(q: u64) -> Result<SingularGeometry, ConstructionError> {
    if q % 2 == 0 {
        return Err(ConstructionError::UnsupportedParameter(
            "minus-type dimension-8 geometry needs an odd prime".into(),
        ));
    }
    let f = FieldContext::new(q, 1)?;
    // Gram matrix: three hyperbolic pairs and the plane x^2 - t y^2 with a
    // non-square t, which vanishes only at the origin.
    let nonsquare = f
        .elements()
        .skip(1)
        .find(|&e| f.sqrt(e).is_none())
        .ok_or_else(|| ConstructionError::UnsupportedParameter("no non-square".into()))?;
    let mut j = Mat::zero(8, 8);
    let one = f.one();
    for i in 0..3 {
        j.set(i, i + 3, one);
        j.set(i + 3, i, one);
    }
    j.set(6, 6, one);
    j.set(7, 7, f.neg(nonsquare));
    let singular: Vec<Vec<FieldElement>> = {
        let all = PointIndex::projective(&f, 8);
        (0..all.len() as u32)
            .map(|i| all.point(i).to_vec())
            .filter(|v| dot(&f, &j.apply(&f, v), v).is_zero())
            .collect()
    };
    let expected = (q.pow(4) + 1) * (q.pow(3) - 1) / (q - 1);
    if singular.len() as u64 != expected {
        return Err(ConstructionError::DataMismatch(format!(
            "{} singular points, expected {expected}",
            singular.len()
        )));
    }
    let points = PointIndex::from_points(singular);
    let (perp, opp) = orbital_pair(&f, &j, &points)?;
    // Deck: theta^(q-1) acts on the first hyperbolic triple as a Singer
    // power of order (q^3-1)/(q-1); the inverse transpose on the second
    // triple keeps the form, and the anisotropic plane is fixed.
    let ext = FieldContext::new(q, 3)?;
    let c = mult_matrix(&ext, &f, ext.theta()).pow(&f, q - 1);
    let d = c
        .transpose()
        .inverse(&f)
        .ok_or_else(|| ConstructionError::DataMismatch("singular Singer block".into()))?;
    let e2 = Mat::identity(&f, 2);
    let deck = Mat::block_diag(&f, &[&c, &d, &e2]);
    if deck.mul(&f, &j).mul(&f, &deck.transpose()) != j {
        return Err(ConstructionError::DataMismatch(
            "deck does not preserve the form".into(),
        ));
    }
    let r = (q.pow(3) - 1) / (q - 1);
    let blocks = singer_blocks(&f, &points, &deck, r)?;
    Ok(SingularGeometry {
        points,
        perp,
        opp,
        blocks,
    })
}

/// Certifies the minus-type perpendicularity graph through its block
/// quotient, which is complete with uniform multiplicities.
pub fn ominus8_perp_case(q: u64) -> Result<BuiltCase, ConstructionError> {
    let geo = ominus8_geometry(q)?;
    let quo = quotient(&geo.perp, &geo.blocks)?;
    let candidate = Some((0..geo.blocks.block_count() as u32).collect());
    finish_via_quotient(geo.perp, &geo.blocks, &quo, candidate)
}

/// Certifies the minus-type opposite graph by density-tagged search.
pub fn ominus8_opp_case(q: u64) -> Result<BuiltCase, ConstructionError> {
    let geo = ominus8_geometry(q)?;
    super::search_with_density_tag(geo.opp)
}

/// The plus-type geometry in dimension 10 over `GF(2)`. The quadratic
/// form is the pairing of the two coordinate halves and must be evaluated
/// as such; its polarization is the hyperbolic bilinear form.
pub fn oplus10_geometry() -> Result<SingularGeometry, ConstructionError> {
    let f = FieldContext::new(2, 1)?;
    let quad = |v: &[FieldElement]| -> bool {
        let mut acc = 0u64;
        for i in 0..5 {
            acc ^= v[i].code() & v[i + 5].code();
        }
        acc == 0
    };
    let mut j = Mat::zero(10, 10);
    let one = f.one();
    for i in 0..5 {
        j.set(i, i + 5, one);
        j.set(i + 5, i, one);
    }
    let singular: Vec<Vec<FieldElement>> = {
        let all = PointIndex::projective(&f, 10);
        (0..all.len() as u32)
            .map(|i| all.point(i).to_vec())
            .filter(|v| quad(v))
            .collect()
    };
    let expected = (2u64.pow(4) + 1) * (2u64.pow(5) - 1);
    if singular.len() as u64 != expected {
        return Err(ConstructionError::DataMismatch(format!(
            "{} singular points, expected {expected}",
            singular.len()
        )));
    }
    let points = PointIndex::from_points(singular);
    let (perp, opp) = orbital_pair(&f, &j, &points)?;
    let ext = FieldContext::new(2, 5)?;
    let c = mult_matrix(&ext, &f, ext.theta());
    let d = c
        .transpose()
        .inverse(&f)
        .ok_or_else(|| ConstructionError::DataMismatch("singular Singer block".into()))?;
    let deck = Mat::block_diag(&f, &[&c, &d]);
    // In characteristic 2 preserving the bilinear form is not enough;
    // check the quadratic form directly on every point.
    for i in 0..points.len() as u32 {
        let image = deck.apply(&f, points.point(i));
        if !quad(&image) {
            return Err(ConstructionError::DataMismatch(
                "deck does not preserve the quadratic form".into(),
            ));
        }
    }
    let blocks = singer_blocks(&f, &points, &deck, 31)?;
    Ok(SingularGeometry {
        points,
        perp,
        opp,
        blocks,
    })
}

/// Certifies the plus-type perpendicularity graph through its complete
/// block quotient.
pub fn oplus10_perp_case() -> Result<BuiltCase, ConstructionError> {
    let geo = oplus10_geometry()?;
    let quo = quotient(&geo.perp, &geo.blocks)?;
    let candidate = Some((0..geo.blocks.block_count() as u32).collect());
    finish_via_quotient(geo.perp, &geo.blocks, &quo, candidate)
}

/// Certifies the plus-type opposite graph through its block quotient; the
/// blocks are independent sets joined by uniform multiplicities.
pub fn oplus10_opp_case() -> Result<BuiltCase, ConstructionError> {
    let geo = oplus10_geometry()?;
    let quo = quotient(&geo.opp, &geo.blocks)?;
    let candidate = Some((0..geo.blocks.block_count() as u32).collect());
    finish_via_quotient(geo.opp, &geo.blocks, &quo, candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamsearch::verify_certificate;

    #[test]
    fn minus_geometry_counts_q3() {
        let geo = ominus8_geometry(3).unwrap();
        assert_eq!(geo.points.len(), 1066);
        assert_eq!(geo.blocks.block_count(), 82);
        assert_eq!(geo.perp.regular_valency(), Some(336));
        assert_eq!(geo.opp.regular_valency(), Some(729));
        let quo = quotient(&geo.perp, &geo.blocks).unwrap();
        // The base point's orbit is a totally singular 3-space: a clique
        // inside, q + 1 neighbors into every other block.
        assert_eq!(quo.internal_degree(0), 12);
        for j in 1..82u32 {
            assert_eq!(quo.multiplicity(0, j), 4);
        }
        // The uniform base row does not transfer to the other orbits: the
        // block graph is close to complete but misses a few pairs. Its
        // minimum degree still clears the density bound, so quotient
        // cycles are guaranteed.
        assert_eq!(quo.skeleton().regular_valency(), None);
        let degrees: std::collections::BTreeSet<usize> =
            (0..82u32).map(|i| quo.skeleton().degree(i)).collect();
        assert_eq!(degrees, std::collections::BTreeSet::from([79, 81]));
        let cliques = (0..82u32).filter(|&i| quo.internal_degree(i) == 12).count();
        assert_eq!(cliques, 2);
    }

    #[test]
    fn minus_perp_lifts_q3() {
        let built = ominus8_perp_case(3).unwrap();
        assert_eq!(built.graph.n(), 1066);
        assert_eq!(built.strategy, Strategy::QuotientLift);
        verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
    }

    #[test]
    fn minus_opp_is_dense_q3() {
        let built = ominus8_opp_case(3).unwrap();
        assert_eq!(built.strategy, Strategy::Density);
        verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
    }

    #[test]
    fn plus_geometry_identity() {
        let geo = oplus10_geometry().unwrap();
        assert_eq!(geo.points.len(), 527);
        assert_eq!(geo.blocks.block_count(), 17);
        // valency 270 = 30 within the base block + 15 into each of the 16
        // other blocks, measured at the base point's orbit
        assert_eq!(geo.perp.regular_valency(), Some(270));
        let quo = quotient(&geo.perp, &geo.blocks).unwrap();
        assert_eq!(quo.internal_degree(0), 30);
        for j in 1..17u32 {
            assert_eq!(quo.multiplicity(0, j), 15);
        }
        assert_eq!(quo.skeleton().regular_valency(), Some(16));
    }

    #[test]
    fn plus_cases_certify() {
        let perp = oplus10_perp_case().unwrap();
        assert_eq!(perp.strategy, Strategy::QuotientLift);
        verify_certificate(&perp.graph, perp.certificate().unwrap()).unwrap();
        let opp = oplus10_opp_case().unwrap();
        assert_eq!(opp.strategy, Strategy::QuotientLift);
        verify_certificate(&opp.graph, opp.certificate().unwrap()).unwrap();
    }
}
