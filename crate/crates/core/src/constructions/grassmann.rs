//! Line-graph families of the projective linear groups.
//!
//! The vertices are the 2-spaces (projective lines) of a 4- or 5-dimensional
//! vector space; the two orbitals join lines that meet in a point and lines
//! that are skew. The meeting graph in dimension 4 carries a fully
//! deterministic Hamilton cycle: order the points of a hyperplane by a
//! Singer cycle, walk the cells of tangent lines at each point, and use the
//! in-hyperplane lines as rungs between consecutive cells. In dimension 5
//! the lines fall into Singer orbits that are cliques, and a cycle chains
//! the cliques through shared points.

use crate::ff::{FieldContext, FieldElement};
use crate::hamsearch::{verify_certificate, HamCertificate};
use crate::orbital::Graph;

use super::linalg::{intersection_dim, mult_matrix, normalize_point, SpaceIndex};
use super::{BuiltCase, ConstructionError, Strategy};

/// Lines through a single point of `PG(3, q)`.
pub fn star_count(q: u64) -> u64 {
    q * q + q + 1
}

/// Enumerated valency of the meeting-lines graph in dimension 4: each of
/// the `q + 1` points of a line carries `q^2 + q` further lines, so the
/// single-point star count undercounts the neighbourhood by roughly a
/// factor of `q + 1`. Both forms are exported so the mismatch stays
/// visible in reports.
pub fn meeting_valency(q: u64) -> u64 {
    q * (q + 1) * (q + 1)
}

/// Builds the meeting and skew line graphs over `GF(q)^dim`.
fn line_graphs(f: &FieldContext, dim: usize) -> Result<(SpaceIndex, Graph, Graph), ConstructionError> {
    let sp = SpaceIndex::two_spaces(f, dim);
    let n = sp.len();
    let mut meeting = Vec::new();
    let mut skew = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            match intersection_dim(f, sp.basis(i), sp.basis(j)) {
                1 => meeting.push((i, j)),
                0 => skew.push((i, j)),
                _ => unreachable!("distinct 2-spaces share at most a point"),
            }
        }
    }
    let meeting = Graph::from_edges(n, meeting)?;
    let skew = Graph::from_edges(n, skew)?;
    Ok((sp, meeting, skew))
}

/// The Singer ordering of a plane: the points of the hyperplane `x3 = 0`
/// as successive powers of a generator of `GF(q^3)`, embedded as 4-vectors.
fn singer_plane_points(q: u64, f: &FieldContext) -> Result<Vec<Vec<FieldElement>>, ConstructionError> {
    let ext = FieldContext::new(q, 3)?;
    let s = star_count(q);
    let theta = ext.theta();
    let mut power = ext.one();
    let mut out = Vec::with_capacity(s as usize);
    for _ in 0..s {
        let mut v = Vec::with_capacity(4);
        for digit in ext.coefficients(power) {
            v.push(f.element(digit)?);
        }
        v.push(f.element(0)?);
        let norm = normalize_point(f, &v)
            .ok_or_else(|| ConstructionError::DataMismatch("zero hyperplane point".into()))?;
        out.push(norm);
        power = ext.mul(power, theta);
    }
    Ok(out)
}

/// Certifies the dimension-4 meeting-lines graph by the cell-and-rung
/// splice along a Singer-ordered hyperplane.
pub fn grassmann4_meeting(q: u64) -> Result<BuiltCase, ConstructionError> {
    let f = FieldContext::new(q, 1)?;
    let (sp, graph, _) = line_graphs(&f, 4)?;
    let s = star_count(q) as usize;
    let beta = singer_plane_points(q, &f)?;
    let point_slot: std::collections::BTreeMap<Vec<u64>, usize> = beta
        .iter()
        .enumerate()
        .map(|(i, p)| (p.iter().map(|e| e.code()).collect(), i))
        .collect();
    // Rungs: the line through consecutive Singer points. They must be
    // pairwise distinct for the splice to close up.
    let mut rung = Vec::with_capacity(s);
    for i in 0..s {
        let idx = sp
            .index_of_span(&f, &beta[i], &beta[(i + 1) % s])
            .ok_or_else(|| ConstructionError::DataMismatch("degenerate rung span".into()))?;
        rung.push(idx);
    }
    let rung_set: std::collections::BTreeSet<u32> = rung.iter().copied().collect();
    if rung_set.len() != s {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "Singer rungs collide for q = {q}"
        )));
    }
    // Cells: every line not inside the hyperplane is tangent to it at one
    // point; sort it into that point's cell.
    let mut cells: Vec<Vec<u32>> = vec![Vec::new(); s];
    for idx in 0..sp.len() as u32 {
        let inside: Vec<Vec<FieldElement>> = sp
            .points_on(&f, idx)
            .into_iter()
            .filter(|p| p[3].is_zero())
            .collect();
        match inside.len() {
            x if x == (q + 1) as usize => {
                // A hyperplane line; the rungs must account for all of them.
                if !rung_set.contains(&idx) {
                    return Err(ConstructionError::DataMismatch(
                        "hyperplane line missed by the Singer rungs".into(),
                    ));
                }
            }
            1 => {
                let norm = normalize_point(&f, &inside[0])
                    .ok_or_else(|| ConstructionError::DataMismatch("zero point".into()))?;
                let key: Vec<u64> = norm.iter().map(|e| e.code()).collect();
                let slot = *point_slot
                    .get(&key)
                    .ok_or_else(|| ConstructionError::DataMismatch("tangent point unknown".into()))?;
                cells[slot].push(idx);
            }
            _ => {
                return Err(ConstructionError::DataMismatch(
                    "line meets the hyperplane in an impossible set".into(),
                ))
            }
        }
    }
    // Cell i is a clique (everything passes through the i-th point) and its
    // rung touches both its point and the next one, so cells in any order
    // joined by rungs close into a Hamilton cycle.
    let mut cycle = Vec::with_capacity(sp.len());
    for i in 0..s {
        debug_assert_eq!(cells[i].len(), s - (q + 1) as usize);
        cycle.extend_from_slice(&cells[i]);
        cycle.push(rung[i]);
    }
    let cert = HamCertificate {
        graph_hash: graph.content_hash(),
        cycle,
    };
    verify_certificate(&graph, &cert)
        .map_err(|e| ConstructionError::DataMismatch(format!("spliced cycle rejected: {e}")))?;
    Ok(BuiltCase::certified(graph, cert, Strategy::Splice))
}

/// Certifies the dimension-4 skew-lines graph; its degree is high enough
/// for a density guarantee, after which the seeded search is quick.
pub fn grassmann4_skew(q: u64) -> Result<BuiltCase, ConstructionError> {
    let f = FieldContext::new(q, 1)?;
    let (_, _, graph) = line_graphs(&f, 4)?;
    super::search_with_density_tag(graph)
}

/// The Singer-orbit partition of the 2-spaces of `GF(q)^5`: the cyclic
/// Singer image acts semiregularly, covering the lines by `q^2 + 1` cells
/// of size `(q^5 - 1) / (q - 1)` each. Cells are returned as sorted sets.
pub fn grassmann5_singer_cells(q: u64) -> Result<Vec<Vec<u32>>, ConstructionError> {
    let f = FieldContext::new(q, 1)?;
    let ext = FieldContext::new(q, 5)?;
    let sp = SpaceIndex::two_spaces(&f, 5);
    let singer = mult_matrix(&ext, &f, ext.theta());
    let perm = sp.permutation(&f, &singer);
    let n = sp.len() as u32;
    let s = (q.pow(5) - 1) / (q - 1);
    let mut seen = vec![false; n as usize];
    let mut cells = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut v = start;
        loop {
            seen[v as usize] = true;
            orbit.push(v);
            v = perm.image(v);
            if v == start {
                break;
            }
        }
        if orbit.len() != s as usize {
            return Err(ConstructionError::DataMismatch(format!(
                "Singer orbit of line {start} has size {}, expected {s}",
                orbit.len()
            )));
        }
        orbit.sort_unstable();
        cells.push(orbit);
    }
    if cells.len() != (q * q + 1) as usize {
        return Err(ConstructionError::DataMismatch(format!(
            "{} Singer cells, expected q^2 + 1",
            cells.len()
        )));
    }
    Ok(cells)
}

/// Certifies the dimension-5 meeting-lines graph by walking each Singer
/// cell with its own power of the Singer element.
///
/// A cell containing the line spanned by the base point and its `i`-th
/// Singer translate is traversed by repeatedly applying that power:
/// consecutive members share a point, and the walk's final member returns
/// to the base point, which every cell's first member also contains. So
/// concatenating the walks closes into a Hamilton cycle.
pub fn grassmann5_chain(q: u64) -> Result<BuiltCase, ConstructionError> {
    let f = FieldContext::new(q, 1)?;
    let ext = FieldContext::new(q, 5)?;
    let (sp, graph, _) = line_graphs(&f, 5)?;
    let cells = grassmann5_singer_cells(q)?;
    let s = (q.pow(5) - 1) / (q - 1);
    let mut cell_of = vec![usize::MAX; sp.len()];
    for (c, cell) in cells.iter().enumerate() {
        for &v in cell {
            cell_of[v as usize] = c;
        }
    }
    // Projective points as successive powers of the Singer generator; the
    // power of index s is back to the base point.
    let theta = ext.theta();
    let mut pts: Vec<Vec<FieldElement>> = Vec::with_capacity(s as usize);
    let mut power = ext.one();
    for _ in 0..s {
        let mut v = Vec::with_capacity(5);
        for digit in ext.coefficients(power) {
            v.push(f.element(digit)?);
        }
        pts.push(v);
        power = ext.mul(power, theta);
    }
    // One traversal step per cell: the first i whose base line lands there.
    let mut step = vec![0u64; cells.len()];
    let mut covered = 0;
    for i in 1..s {
        let idx = sp
            .index_of_span(&f, &pts[0], &pts[i as usize])
            .ok_or_else(|| ConstructionError::DataMismatch("dependent base span".into()))?;
        let c = cell_of[idx as usize];
        if step[c] == 0 {
            step[c] = i;
            covered += 1;
            if covered == cells.len() {
                break;
            }
        }
    }
    if covered != cells.len() {
        return Err(ConstructionError::DataMismatch(
            "a Singer cell has no member through the base point".into(),
        ));
    }
    let mut cycle = Vec::with_capacity(graph.n());
    for &i in &step {
        for t in 0..s {
            let a = (t * i) % s;
            let b = ((t + 1) * i) % s;
            let idx = sp
                .index_of_span(&f, &pts[a as usize], &pts[b as usize])
                .ok_or_else(|| ConstructionError::DataMismatch("degenerate walk span".into()))?;
            cycle.push(idx);
        }
    }
    let cert = HamCertificate {
        graph_hash: graph.content_hash(),
        cycle,
    };
    verify_certificate(&graph, &cert)
        .map_err(|e| ConstructionError::DataMismatch(format!("chained cycle rejected: {e}")))?;
    Ok(BuiltCase::certified(graph, cert, Strategy::SingerCover))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meeting_valency_forms_disagree() {
        // The single-point star count is not the graph valency.
        assert_eq!(star_count(3), 13);
        assert_eq!(meeting_valency(3), 48);
        assert_ne!(star_count(3), meeting_valency(3));
    }

    #[test]
    fn meeting_splice_certifies_q3() {
        let built = grassmann4_meeting(3).unwrap();
        assert_eq!(built.graph.n(), 130);
        assert_eq!(built.graph.regular_valency(), Some(48));
        assert_eq!(built.strategy, Strategy::Splice);
        verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
    }

    #[test]
    fn meeting_splice_certifies_q2() {
        let built = grassmann4_meeting(2).unwrap();
        assert_eq!(built.graph.n(), 35);
        assert_eq!(built.graph.regular_valency(), Some(18));
        verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
    }

    #[test]
    fn skew_case_certifies_q3() {
        let built = grassmann4_skew(3).unwrap();
        assert_eq!(built.graph.regular_valency(), Some(81));
        assert_eq!(built.strategy, Strategy::Density);
        verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
    }

    #[test]
    fn singer_cells_partition_q2() {
        let cells = grassmann5_singer_cells(2).unwrap();
        assert_eq!(cells.len(), 5);
        assert!(cells.iter().all(|c| c.len() == 31));
        let total: usize = cells.iter().map(Vec::len).sum();
        assert_eq!(total, 155);
    }

    #[test]
    fn clique_chain_certifies_q2() {
        let built = grassmann5_chain(2).unwrap();
        assert_eq!(built.graph.n(), 155);
        assert_eq!(built.strategy, Strategy::SingerCover);
        verify_certificate(&built.graph, built.certificate().unwrap()).unwrap();
    }
}
