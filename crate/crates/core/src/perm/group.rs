//! Permutation groups with deterministic Schreier-Sims stabilizer chains.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::permutation::{PermError, Permutation};

/// One level of the stabilizer chain: a base point, the strong generators
/// fixing all earlier base points, and a Schreier vector for the basic orbit.
#[derive(Debug)]
struct ChainLevel {
    base: u32,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    /// Basic orbit in breadth-first discovery order.
    orbit: Vec<u32>,
    /// `schreier[p] = (predecessor, generator index)` with
    /// `p = predecessor^gens[index]`; `None` off the orbit, `(p, usize::MAX)`
    /// at the base.
    schreier: Vec<Option<(u32, usize)>>,
}

impl ChainLevel {
    fn new(base: u32, degree: usize) -> ChainLevel {
        ChainLevel {
            base,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: Vec::new(),
            schreier: vec![None; degree],
        }
    }

    fn push_gen(&mut self, g: &Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g.clone());
    }

    fn rebuild_orbit(&mut self) {
        self.schreier.iter_mut().for_each(|s| *s = None);
        self.orbit.clear();
        self.orbit.push(self.base);
        self.schreier[self.base as usize] = Some((self.base, usize::MAX));
        let mut idx = 0;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            for (gi, g) in self.gens.iter().enumerate() {
                let q = g.image(p);
                if self.schreier[q as usize].is_none() {
                    self.schreier[q as usize] = Some((p, gi));
                    self.orbit.push(q);
                }
            }
            idx += 1;
        }
    }

    /// `w · u_point^{-1}` where `u_point` is the canonical coset
    /// representative mapping the base to `point` (walks the Schreier
    /// vector, so `point` must lie on the orbit).
    fn times_rep_inv(&self, mut w: Permutation, mut point: u32) -> Permutation {
        while point != self.base {
            let (pred, gi) = self.schreier[point as usize].expect("point on orbit");
            w = w.then(&self.inv_gens[gi]);
            point = pred;
        }
        w
    }

    /// The canonical representative `u_point` with `base^(u_point) = point`.
    fn rep(&self, point: u32, degree: usize) -> Permutation {
        let mut path = Vec::new();
        let mut p = point;
        while p != self.base {
            let (pred, gi) = self.schreier[p as usize].expect("point on orbit");
            path.push(gi);
            p = pred;
        }
        let mut u = Permutation::identity(degree);
        for &gi in path.iter().rev() {
            u = u.then(&self.gens[gi]);
        }
        u
    }
}

/// A permutation group given by generators, with a lazily built
/// deterministic stabilizer chain.
///
/// Base points are chosen as the smallest point moved by the generator that
/// triggers each new level, and all orbit traversals are breadth-first under
/// the fixed generator order, so every derived quantity (order, coset
/// numbering, suborbit listing) is reproducible.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Vec<ChainLevel>>,
}

impl PermutationGroup {
    /// Builds a group from generators acting on `0..degree`.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermutationGroup, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> PermutationGroup {
        PermutationGroup::new(degree, Vec::new()).expect("no generators to mismatch")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &Vec<ChainLevel> {
        self.chain.get_or_init(|| {
            let mut levels: Vec<ChainLevel> = Vec::new();
            for g in &self.generators {
                register(&mut levels, 0, g.clone(), self.degree);
            }
            levels
        })
    }

    /// Group order as the product of basic orbit lengths.
    pub fn order(&self) -> u64 {
        self.chain().iter().map(|lvl| lvl.orbit.len() as u64).product()
    }

    /// Lengths of the basic orbits along the chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().iter().map(|lvl| lvl.orbit.len()).collect()
    }

    /// The chain's base points.
    pub fn base_points(&self) -> Vec<u32> {
        self.chain().iter().map(|lvl| lvl.base).collect()
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = sift(self.chain(), 0, g.clone());
        residue.is_identity()
    }

    /// The orbit of a point under the whole group, sorted ascending.
    pub fn orbit_of(&self, point: u32) -> Vec<u32> {
        let mut orbit = orbit_bfs(self.degree, &self.generators, point).0;
        orbit.sort_unstable();
        orbit
    }

    /// All orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if seen[p as usize] {
                continue;
            }
            let orbit = self.orbit_of(p);
            for &q in &orbit {
                seen[q as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit_of(0).len() == self.degree
    }

    /// The stabilizer of a point, generated by the distinct Schreier
    /// generators of that point's orbit.
    pub fn stabilizer(&self, point: u32) -> PermutationGroup {
        let (orbit, schreier) = orbit_bfs(self.degree, &self.generators, point);
        let mut gens = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for &p in &orbit {
            let u_p = rep_from_schreier(&schreier, &self.generators, point, p, self.degree);
            for g in &self.generators {
                let q = g.image(p);
                let u_q_inv =
                    rep_from_schreier(&schreier, &self.generators, point, q, self.degree).inverse();
                let sg = u_p.then(g).then(&u_q_inv);
                if !sg.is_identity() && seen.insert(sg.as_images().to_vec()) {
                    gens.push(sg);
                }
            }
        }
        PermutationGroup::new(self.degree, gens).expect("degrees agree")
    }

    /// Orbits of the stabilizer of `base`, annotated with pairing data.
    ///
    /// The trivial suborbit `{base}` comes first; the rest are sorted by
    /// length, then by smallest point. Requires transitivity (pairing is
    /// defined through elements carrying `base` to each representative).
    pub fn suborbits(&self, base: u32) -> Result<Vec<Suborbit>, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let stab = self.stabilizer(base);
        let mut suborbits: Vec<Vec<u32>> = stab.orbits();
        suborbits.sort_by_key(|orbit| (orbit[0] != base, orbit.len(), orbit[0]));
        // Map each point to its suborbit index for partner lookup.
        let mut owner = vec![0usize; self.degree];
        for (idx, orbit) in suborbits.iter().enumerate() {
            for &p in orbit {
                owner[p as usize] = idx;
            }
        }
        let (_, schreier) = orbit_bfs(self.degree, &self.generators, base);
        let mut out = Vec::new();
        for (idx, orbit) in suborbits.iter().enumerate() {
            let rep = orbit[0];
            let carrier = rep_from_schreier(&schreier, &self.generators, base, rep, self.degree);
            let partner_point = carrier.inverse().image(base);
            let paired_with = owner[partner_point as usize];
            out.push(Suborbit {
                representative: rep,
                points: orbit.clone(),
                paired_with,
                self_paired: paired_with == idx,
            });
        }
        Ok(out)
    }
}

/// A stabilizer orbit together with its orbital pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suborbit {
    /// Smallest point of the suborbit.
    pub representative: u32,
    /// All points, sorted ascending.
    pub points: Vec<u32>,
    /// Index (in the same listing) of the paired suborbit.
    pub paired_with: usize,
    /// Whether the suborbit is its own pair.
    pub self_paired: bool,
}

impl Suborbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Breadth-first orbit with a Schreier vector over arbitrary generators.
fn orbit_bfs(
    degree: usize,
    gens: &[Permutation],
    start: u32,
) -> (Vec<u32>, Vec<Option<(u32, usize)>>) {
    let mut schreier: Vec<Option<(u32, usize)>> = vec![None; degree];
    let mut orbit = vec![start];
    schreier[start as usize] = Some((start, usize::MAX));
    let mut idx = 0;
    while idx < orbit.len() {
        let p = orbit[idx];
        for (gi, g) in gens.iter().enumerate() {
            let q = g.image(p);
            if schreier[q as usize].is_none() {
                schreier[q as usize] = Some((p, gi));
                orbit.push(q);
            }
        }
        idx += 1;
    }
    (orbit, schreier)
}

fn rep_from_schreier(
    schreier: &[Option<(u32, usize)>],
    gens: &[Permutation],
    start: u32,
    point: u32,
    degree: usize,
) -> Permutation {
    let mut path = Vec::new();
    let mut p = point;
    while p != start {
        let (pred, gi) = schreier[p as usize].expect("point on orbit");
        path.push(gi);
        p = pred;
    }
    let mut u = Permutation::identity(degree);
    for &gi in path.iter().rev() {
        u = u.then(&gens[gi]);
    }
    u
}

/// Sifts `g` through levels `from..`, returning the residue and the level at
/// which stripping stopped.
fn sift(levels: &[ChainLevel], from: usize, mut g: Permutation) -> (Permutation, usize) {
    for (offset, level) in levels[from..].iter().enumerate() {
        let image = g.image(level.base);
        if level.schreier[image as usize].is_none() {
            return (g, from + offset);
        }
        g = level.times_rep_inv(g, image);
    }
    (g, levels.len())
}

/// Inserts a generator known to fix the bases of levels `< from`, then
/// restores chain completeness bottom-up (textbook Schreier-Sims).
fn register(levels: &mut Vec<ChainLevel>, from: usize, g: Permutation, degree: usize) {
    let (residue, stop) = sift(levels, from, g);
    if residue.is_identity() {
        return;
    }
    if stop == levels.len() {
        let base = (0..degree as u32)
            .find(|&p| residue.image(p) != p)
            .expect("non-identity residue moves a point");
        levels.push(ChainLevel::new(base, degree));
    }
    for level in levels[from..=stop].iter_mut() {
        level.push_gen(&residue);
    }
    for l in (from..=stop).rev() {
        complete(levels, l, degree);
    }
}

/// Recomputes the basic orbit at `level` and sifts all its Schreier
/// generators into the deeper chain.
fn complete(levels: &mut Vec<ChainLevel>, level: usize, degree: usize) {
    levels[level].rebuild_orbit();
    let mut idx = 0;
    // The orbit and generator list at this level are stable during the loop:
    // recursive registrations only touch deeper levels.
    while idx < levels[level].orbit.len() {
        let p = levels[level].orbit[idx];
        let gen_count = levels[level].gens.len();
        for gi in 0..gen_count {
            let sg = {
                let lvl = &levels[level];
                let q = lvl.gens[gi].image(p);
                let w = lvl.rep(p, degree).then(&lvl.gens[gi]);
                lvl.times_rep_inv(w, q)
            };
            register(levels, level + 1, sg, degree);
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s).unwrap())
            .collect();
        PermutationGroup::new(degree, gens).unwrap()
    }

    #[test]
    fn symmetric_and_trivial_orders() {
        assert_eq!(group(4, &["(0 1 2 3)", "(0 1)"]).order(), 24);
        assert_eq!(PermutationGroup::trivial(5).order(), 1);
        assert_eq!(group(3, &["(0 1 2)"]).order(), 3);
    }

    #[test]
    fn psl27_natural_degree_8() {
        // x -> x+1 and x -> -1/x on the projective line over GF(7),
        // with points 0..6 and 7 playing infinity.
        let shift = Permutation::parse_cycles(8, "(0 1 2 3 4 5 6)").unwrap();
        let flip = Permutation::parse_cycles(8, "(0 7)(1 6)(2 3)(4 5)").unwrap();
        let g = PermutationGroup::new(8, vec![shift, flip]).unwrap();
        assert_eq!(g.order(), 168);
        assert!(g.is_transitive());
        assert_eq!(g.stabilizer(7).order(), 21);
    }

    #[test]
    fn membership_by_sifting() {
        let g = group(5, &["(0 1 2 3 4)", "(0 1)"]);
        let even = group(5, &["(0 1 2)", "(1 2 3)", "(2 3 4)"]);
        assert_eq!(even.order(), 60);
        assert!(g.contains(&Permutation::parse_cycles(5, "(0 4)(1 3)").unwrap()));
        assert!(even.contains(&Permutation::parse_cycles(5, "(0 4)(1 3)").unwrap()));
        assert!(!even.contains(&Permutation::parse_cycles(5, "(0 1)").unwrap()));
        assert!(!even.contains(&Permutation::identity(4)), "wrong degree");
    }

    #[test]
    fn orbits_and_stabilizers() {
        let g = group(6, &["(0 1 2)", "(3 4)"]);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert!(!g.is_transitive());
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        let stab = s4.stabilizer(0);
        assert_eq!(stab.order(), 6);
        assert!(stab.generators().iter().all(|h| h.image(0) == 0));
    }

    #[test]
    fn suborbits_of_dihedral_action() {
        // D5 acting on the pentagon: stabilizer of 0 is a reflection, and
        // both nontrivial suborbits {1,4}, {2,3} are self-paired.
        let g = group(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        let subs = g.suborbits(0).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[0].points, vec![0]);
        assert!(subs[0].self_paired);
        assert_eq!(subs[1].points, vec![1, 4]);
        assert_eq!(subs[2].points, vec![2, 3]);
        assert!(subs.iter().all(|s| s.self_paired));
    }

    #[test]
    fn suborbit_pairing_in_cyclic_group() {
        // Z5 regular: the suborbits are singletons {k}, and {k} pairs with
        // {5-k}.
        let g = group(5, &["(0 1 2 3 4)"]);
        let subs = g.suborbits(0).unwrap();
        assert_eq!(subs.len(), 5);
        let find = |pt: u32| subs.iter().position(|s| s.representative == pt).unwrap();
        assert_eq!(subs[find(1)].paired_with, find(4));
        assert_eq!(subs[find(2)].paired_with, find(3));
        assert!(!subs[find(1)].self_paired);
        assert!(subs[0].self_paired);
    }

    #[test]
    fn suborbit_lengths_sum_to_degree() {
        let g = group(8, &["(0 1 2 3 4 5 6)", "(0 7)(1 6)(2 3)(4 5)"]);
        let subs = g.suborbits(0).unwrap();
        let total: usize = subs.iter().map(|s| s.len()).sum();
        assert_eq!(total, 8);
        for s in &subs {
            assert_eq!(s.len(), subs[s.paired_with].len());
        }
    }
}
