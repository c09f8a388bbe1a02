//! Small dense linear algebra over a finite field.
//!
//! Everything uses the row-vector convention: matrices act on the right,
//! `v ↦ v·M`, and products compose left to right. Dimensions stay tiny
//! (at most 10), so matrices are flat row-major vectors and elimination is
//! plain Gauss with no pivot strategy beyond "first nonzero".

use std::collections::{BTreeMap, HashMap};

use crate::ff::{FieldContext, FieldElement};
use crate::perm::Permutation;

/// Row-major matrix over a fixed [`FieldContext`].
///
/// Like [`FieldElement`], a `Mat` is only meaningful relative to the context
/// that produced its entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![FieldElement::default(); rows * cols],
        }
    }

    pub fn identity(f: &FieldContext, n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience for literal matrices: integers map through the prime
    /// subfield, so negative entries mean `p - |entry|`.
    pub fn from_int_rows(f: &FieldContext, rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&e| f.from_int(e)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, f: &FieldContext, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    /// The image `v·M` of a row vector.
    pub fn apply(&self, f: &FieldContext, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows, "vector length differs from row count");
        let mut out = vec![f.zero(); self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(a, self.get(k, j)));
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, f: &FieldContext, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(f, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self, f: &FieldContext) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !m.get(r, col).is_zero()) {
                Some(p) => p,
                None => return f.zero(),
            };
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(pivot, j));
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                }
                det = f.neg(det);
            }
            let d = m.get(col, col);
            det = f.mul(det, d);
            let inv = f.inv(d).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = f.sub(m.get(r, j), f.mul(factor, m.get(col, j)));
                    m.set(r, j, t);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FieldContext) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Mat::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(pivot, j));
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                    let (a, b) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let scale = f.inv(m.get(col, col)).expect("pivot is nonzero");
            for j in 0..n {
                m.set(col, j, f.mul(m.get(col, j), scale));
                inv.set(col, j, f.mul(inv.get(col, j), scale));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = f.sub(m.get(r, j), f.mul(factor, m.get(col, j)));
                    m.set(r, j, t);
                    let t = f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j)));
                    inv.set(r, j, t);
                }
            }
        }
        Some(inv)
    }

    /// Block-diagonal assembly.
    pub fn block_diag(f: &FieldContext, parts: &[&Mat]) -> Mat {
        let _ = f;
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.set(ro + i, co + j, p.get(i, j));
                }
            }
            ro += p.rows;
            co += p.cols;
        }
        out
    }
}

/// Reduced row echelon form; returns only the nonzero rows, which form the
/// canonical basis of the row span.
pub fn rref(f: &FieldContext, rows: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut lead = 0;
    for col in 0..cols {
        let Some(pivot) = (lead..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(lead, pivot);
        let inv = f.inv(m[lead][col]).expect("pivot is nonzero");
        for j in 0..cols {
            m[lead][j] = f.mul(m[lead][j], inv);
        }
        for r in 0..m.len() {
            if r == lead {
                continue;
            }
            let factor = m[r][col];
            if factor.is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = f.sub(m[r][j], f.mul(factor, m[lead][j]));
                m[r][j] = t;
            }
        }
        lead += 1;
        if lead == m.len() {
            break;
        }
    }
    m.truncate(lead);
    m
}

pub fn rank(f: &FieldContext, rows: &[Vec<FieldElement>]) -> usize {
    rref(f, rows).len()
}

/// Canonical hashable label of a row span: the flattened codes of its
/// reduced echelon basis. Equal spans give equal keys regardless of the
/// presenting basis.
pub fn span_key(f: &FieldContext, rows: &[Vec<FieldElement>]) -> Vec<u64> {
    rref(f, rows)
        .iter()
        .flat_map(|row| row.iter().map(|e| e.code()))
        .collect()
}

/// The dimension of the intersection of two row spans.
pub fn intersection_dim(
    f: &FieldContext,
    a: &[Vec<FieldElement>],
    b: &[Vec<FieldElement>],
) -> usize {
    let ra = rank(f, a);
    let rb = rank(f, b);
    let mut stack = a.to_vec();
    stack.extend_from_slice(b);
    ra + rb - rank(f, &stack)
}

/// Scales a nonzero vector so its first nonzero coordinate is 1; `None` for
/// the zero vector.
pub fn normalize_point(f: &FieldContext, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let lead = v.iter().find(|e| !e.is_zero())?;
    let inv = f.inv(*lead).expect("lead is nonzero");
    Some(v.iter().map(|&e| f.mul(e, inv)).collect())
}

fn codes(v: &[FieldElement]) -> Vec<u64> {
    v.iter().map(|e| e.code()).collect()
}

/// An indexed set of projective points with constant-time lookup.
pub struct PointIndex {
    points: Vec<Vec<FieldElement>>,
    map: HashMap<Vec<u64>, u32>,
}

impl PointIndex {
    /// Wraps an explicit list of already-normalized, distinct points.
    pub fn from_points(points: Vec<Vec<FieldElement>>) -> PointIndex {
        let map = points
            .iter()
            .enumerate()
            .map(|(i, p)| (codes(p), i as u32))
            .collect();
        PointIndex { points, map }
    }

    /// Every point of the projective space of `F_q^dim`, in lexicographic
    /// code order.
    pub fn projective(f: &FieldContext, dim: usize) -> PointIndex {
        let q = f.q();
        let total = q.pow(dim as u32);
        let mut points = Vec::new();
        for mut code in 0..total {
            let mut v = vec![f.zero(); dim];
            for slot in v.iter_mut().rev() {
                *slot = f.element(code % q).expect("digit below q");
                code /= q;
            }
            // Canonical representatives have leading coefficient exactly 1.
            match v.iter().find(|e| !e.is_zero()) {
                Some(lead) if *lead == f.one() => points.push(v),
                _ => {}
            }
        }
        PointIndex::from_points(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: u32) -> &[FieldElement] {
        &self.points[i as usize]
    }

    /// Index of the point spanned by `v`, normalizing first.
    pub fn index_of(&self, f: &FieldContext, v: &[FieldElement]) -> Option<u32> {
        let norm = normalize_point(f, v)?;
        self.map.get(&codes(&norm)).copied()
    }

    /// The permutation `⟨v⟩ ↦ ⟨v·m⟩` induced on this point set.
    ///
    /// Panics if the matrix does not permute the set; callers pass
    /// invertible matrices stabilizing it.
    pub fn permutation(&self, f: &FieldContext, m: &Mat) -> Permutation {
        let images: Vec<u32> = self
            .points
            .iter()
            .map(|p| {
                self.index_of(f, &m.apply(f, p))
                    .expect("matrix maps the point set into itself")
            })
            .collect();
        Permutation::from_images(images).expect("invertible matrix permutes the point set")
    }
}

/// Closes a seed point under right multiplication by invertible generators:
/// the orbit in BFS order plus the permutation each generator induces on it.
/// `None` if the orbit would exceed `cap` points.
pub fn matrix_orbit_action(
    f: &FieldContext,
    gens: &[Mat],
    seed: &[FieldElement],
    cap: usize,
) -> Option<(PointIndex, Vec<Permutation>)> {
    let start = normalize_point(f, seed)?;
    let mut points = vec![start.clone()];
    let mut map = HashMap::new();
    map.insert(codes(&start), 0u32);
    let mut frontier = 0usize;
    while frontier < points.len() {
        let v = points[frontier].clone();
        frontier += 1;
        for g in gens {
            let img = normalize_point(f, &g.apply(f, &v)).expect("invertible image is nonzero");
            let key = codes(&img);
            if !map.contains_key(&key) {
                if points.len() >= cap {
                    return None;
                }
                map.insert(key, points.len() as u32);
                points.push(img);
            }
        }
    }
    let index = PointIndex::from_points(points);
    let perms = gens.iter().map(|g| index.permutation(f, g)).collect();
    Some((index, perms))
}

/// The matrix of multiplication by `a` on `GF(p^k)` viewed as a row-vector
/// space over `GF(p)` in the polynomial basis: row `i` holds the coordinates
/// of `x^i · a`, so `coords(b) · M = coords(b·a)`.
pub fn mult_matrix(ext: &FieldContext, prime: &FieldContext, a: FieldElement) -> Mat {
    assert_eq!(prime.q(), ext.p(), "entry field must be the prime subfield");
    let k = ext.k() as usize;
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut basis = vec![0u64; k];
        basis[i] = 1;
        let x_i = ext.from_coefficients(&basis).expect("basis digits fit");
        let image = ext.coefficients(ext.mul(x_i, a));
        rows.push(
            image
                .into_iter()
                .map(|d| prime.element(d).expect("digit below p"))
                .collect(),
        );
    }
    Mat::from_rows(rows)
}

/// All 2-dimensional subspaces of `F_q^dim`, canonically indexed by reduced
/// echelon basis, in lexicographic key order.
pub struct SpaceIndex {
    bases: Vec<Vec<Vec<FieldElement>>>,
    map: HashMap<Vec<u64>, u32>,
}

impl SpaceIndex {
    pub fn two_spaces(f: &FieldContext, dim: usize) -> SpaceIndex {
        let points = PointIndex::projective(f, dim);
        let mut spans: BTreeMap<Vec<u64>, Vec<Vec<FieldElement>>> = BTreeMap::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let pair = [points.point(i as u32).to_vec(), points.point(j as u32).to_vec()];
                let basis = rref(f, &pair);
                debug_assert_eq!(basis.len(), 2, "distinct points span a plane");
                let key: Vec<u64> = basis.iter().flat_map(|r| codes(r)).collect();
                spans.entry(key).or_insert(basis);
            }
        }
        let mut bases = Vec::with_capacity(spans.len());
        let mut map = HashMap::with_capacity(spans.len());
        for (i, (key, basis)) in spans.into_iter().enumerate() {
            map.insert(key, i as u32);
            bases.push(basis);
        }
        SpaceIndex { bases, map }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// The reduced echelon basis (two rows) of space `i`.
    pub fn basis(&self, i: u32) -> &[Vec<FieldElement>] {
        &self.bases[i as usize]
    }

    /// Index of the span of two vectors; `None` if they are dependent or the
    /// span is not in the index.
    pub fn index_of_span(
        &self,
        f: &FieldContext,
        a: &[FieldElement],
        b: &[FieldElement],
    ) -> Option<u32> {
        let basis = rref(f, &[a.to_vec(), b.to_vec()]);
        if basis.len() != 2 {
            return None;
        }
        let key: Vec<u64> = basis.iter().flat_map(|r| codes(r)).collect();
        self.map.get(&key).copied()
    }

    /// The `q + 1` projective points lying on space `i`, normalized.
    pub fn points_on(&self, f: &FieldContext, i: u32) -> Vec<Vec<FieldElement>> {
        let basis = self.basis(i);
        let mut out = Vec::new();
        // a = 0, b = 1, then a = 1 with b free: one representative per point.
        out.push(basis[1].clone());
        for b in f.elements() {
            let v: Vec<FieldElement> = basis[0]
                .iter()
                .zip(&basis[1])
                .map(|(&x, &y)| f.add(x, f.mul(b, y)))
                .collect();
            out.push(normalize_point(f, &v).expect("basis combination is nonzero"));
        }
        out
    }

    /// The permutation `W ↦ W·m` induced on the full set of 2-spaces.
    pub fn permutation(&self, f: &FieldContext, m: &Mat) -> Permutation {
        let images: Vec<u32> = self
            .bases
            .iter()
            .map(|basis| {
                let a = m.apply(f, &basis[0]);
                let b = m.apply(f, &basis[1]);
                self.index_of_span(f, &a, &b)
                    .expect("invertible matrix maps 2-spaces to 2-spaces")
            })
            .collect();
        Permutation::from_images(images).expect("invertible matrix permutes the 2-spaces")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> FieldContext {
        FieldContext::new(p, k).unwrap()
    }

    #[test]
    fn mult_matrix_agrees_with_field_multiplication() {
        let ext = gf(3, 3);
        let prime = gf(3, 1);
        for a in ext.elements() {
            let m = mult_matrix(&ext, &prime, a);
            for b in ext.elements() {
                let coords: Vec<FieldElement> = ext
                    .coefficients(b)
                    .into_iter()
                    .map(|d| prime.element(d).unwrap())
                    .collect();
                let image = m.apply(&prime, &coords);
                let expect: Vec<u64> = ext.coefficients(ext.mul(b, a));
                assert_eq!(codes(&image), expect);
            }
        }
    }

    #[test]
    fn singer_element_cycles_the_projective_plane() {
        let ext = gf(3, 3);
        let prime = gf(3, 1);
        let points = PointIndex::projective(&prime, 3);
        assert_eq!(points.len(), 13);
        let singer = mult_matrix(&ext, &prime, ext.theta());
        let perm = points.permutation(&prime, &singer);
        assert_eq!(perm.order(), 13);
        assert_eq!(perm.cycles().len(), 1);
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(PointIndex::projective(&gf(3, 1), 4).len(), 40);
        assert_eq!(PointIndex::projective(&gf(2, 1), 5).len(), 31);
        assert_eq!(PointIndex::projective(&gf(5, 1), 3).len(), 31);
    }

    #[test]
    fn two_space_counts_and_membership() {
        let f3 = gf(3, 1);
        let spaces = SpaceIndex::two_spaces(&f3, 4);
        assert_eq!(spaces.len(), 130);
        for i in 0..spaces.len() as u32 {
            let pts = spaces.points_on(&f3, i);
            assert_eq!(pts.len(), 4);
            // Every point pair on the space indexes back to it.
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    assert_eq!(spaces.index_of_span(&f3, &pts[a], &pts[b]), Some(i));
                }
            }
        }
        let f2 = gf(2, 1);
        assert_eq!(SpaceIndex::two_spaces(&f2, 5).len(), 155);
    }

    #[test]
    fn intersection_dim_matches_rank_arithmetic() {
        let f = gf(3, 1);
        let spaces = SpaceIndex::two_spaces(&f, 4);
        let a = spaces.basis(0).to_vec();
        assert_eq!(intersection_dim(&f, &a, &a), 2);
        let mut seen = [0usize; 3];
        for j in 1..spaces.len() as u32 {
            let d = intersection_dim(&f, &a, spaces.basis(j));
            assert!(d < 2);
            seen[d] += 1;
        }
        // Meeting in a point: q(q+1)^2 = 48 of the 129 others.
        assert_eq!(seen[1], 48);
        assert_eq!(seen[0], 129 - 48);
    }

    #[test]
    fn inverse_and_det() {
        let f = gf(7, 1);
        let m = Mat::from_int_rows(&f, &[vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Mat::identity(&f, 3));
        assert_eq!(inv.mul(&f, &m), Mat::identity(&f, 3));
        assert!(!m.det(&f).is_zero());
        let singular = Mat::from_int_rows(&f, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.det(&f).is_zero());
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn pow_and_block_diag() {
        let f = gf(5, 1);
        let m = Mat::from_int_rows(&f, &[vec![1, 1], vec![0, 1]]);
        let m5 = m.pow(&f, 5);
        // Unipotent: fifth power is the identity in characteristic 5.
        assert_eq!(m5, Mat::identity(&f, 2));
        let d = Mat::block_diag(&f, &[&m, &Mat::identity(&f, 1)]);
        assert_eq!(d.rows(), 3);
        assert_eq!(d.get(0, 1), f.one());
        assert_eq!(d.get(2, 2), f.one());
        assert!(d.get(0, 2).is_zero() && d.get(2, 0).is_zero());
    }

    #[test]
    fn span_keys_ignore_basis_choice() {
        let f = gf(3, 1);
        let a = vec![f.from_int(1), f.from_int(2), f.from_int(0), f.from_int(1)];
        let b = vec![f.from_int(0), f.from_int(1), f.from_int(1), f.from_int(2)];
        let mixed = vec![
            // 2a + b
            f.from_int(2),
            f.from_int(2),
            f.from_int(1),
            f.from_int(1),
        ];
        let k1 = span_key(&f, &[a.clone(), b.clone()]);
        let k2 = span_key(&f, &[mixed, a]);
        assert_eq!(k1, k2);
        assert_eq!(rank(&f, &[b.clone(), b]), 1);
    }
}
