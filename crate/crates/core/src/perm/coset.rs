//! The right-multiplication action of a group on the cosets of a subgroup.

use std::collections::HashMap;

use super::group::{PermutationGroup, Suborbit};
use super::permutation::{PermError, Permutation};

/// Default cap on the coset index (memory guard).
pub const DEFAULT_INDEX_CAP: usize = 100_000;

/// The action of a parent group on right cosets of a subgroup, with
/// deterministic coset numbering: the identity coset is 0 and new cosets are
/// discovered breadth-first under the fixed generator order.
#[derive(Debug)]
pub struct CosetAction {
    /// Image of each parent generator as a permutation of coset indices.
    gen_images: Vec<Permutation>,
    /// Canonical representative of each coset (an element of the parent).
    reps: Vec<Permutation>,
    image_group: PermutationGroup,
}

impl CosetAction {
    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// The permutation induced on coset indices by each parent generator, in
    /// parent generator order.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    /// The canonical representative of a coset.
    pub fn representative(&self, index: usize) -> &Permutation {
        &self.reps[index]
    }

    /// The induced transitive group on coset indices.
    pub fn image_group(&self) -> &PermutationGroup {
        &self.image_group
    }

    /// Suborbits of the action relative to the identity coset.
    pub fn suborbits(&self) -> Result<Vec<Suborbit>, PermError> {
        self.image_group.suborbits(0)
    }
}

/// Enumerates the right cosets of `sub` in `parent` and the action of the
/// parent generators on them, with the default index cap.
pub fn coset_action(
    parent: &PermutationGroup,
    sub: &PermutationGroup,
) -> Result<CosetAction, PermError> {
    coset_action_capped(parent, sub, DEFAULT_INDEX_CAP)
}

/// As [`coset_action`] with an explicit cap on the number of cosets.
pub fn coset_action_capped(
    parent: &PermutationGroup,
    sub: &PermutationGroup,
    cap: usize,
) -> Result<CosetAction, PermError> {
    if sub.degree() != parent.degree() {
        return Err(PermError::DegreeMismatch {
            expected: parent.degree(),
            got: sub.degree(),
        });
    }
    for g in sub.generators() {
        if !parent.contains(g) {
            return Err(PermError::NotASubgroup);
        }
    }
    let degree = parent.degree();
    // Coset invariant: the multiset positions of sub-orbit ids under the
    // inverse representative. Equal cosets share it, so it buckets the exact
    // (membership-tested) comparisons down to near-constant work.
    let mut orbit_id = vec![0u32; degree];
    for (idx, orbit) in sub.orbits().into_iter().enumerate() {
        for p in orbit {
            orbit_id[p as usize] = idx as u32;
        }
    }
    let signature = |rep: &Permutation| -> Vec<u32> {
        let inv = rep.inverse();
        (0..degree as u32).map(|x| orbit_id[inv.image(x) as usize]).collect()
    };

    let mut reps: Vec<Permutation> = vec![Permutation::identity(degree)];
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    buckets.insert(signature(&reps[0]), vec![0]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); parent.generators().len()];

    let mut idx = 0;
    while idx < reps.len() {
        for (gi, g) in parent.generators().iter().enumerate() {
            let candidate = reps[idx].then(g);
            let sig = signature(&candidate);
            let bucket = buckets.entry(sig).or_default();
            let mut found = None;
            for &other in bucket.iter() {
                // Same coset iff candidate * rep^{-1} lies in the subgroup.
                if sub.contains(&candidate.then(&reps[other].inverse())) {
                    found = Some(other);
                    break;
                }
            }
            let target = match found {
                Some(t) => t,
                None => {
                    let t = reps.len();
                    if t >= cap {
                        return Err(PermError::IndexCapExceeded(cap));
                    }
                    bucket.push(t);
                    reps.push(candidate);
                    t
                }
            };
            images[gi].push(target as u32);
        }
        idx += 1;
    }

    let n = reps.len();
    let gen_images: Result<Vec<Permutation>, PermError> =
        images.into_iter().map(Permutation::from_images).collect();
    let gen_images = gen_images?;
    let image_group = PermutationGroup::new(n, gen_images.clone())?;
    // Lagrange check: the enumeration found every coset.
    assert_eq!(
        parent.order(),
        sub.order() * n as u64,
        "coset enumeration inconsistent with group orders"
    );
    Ok(CosetAction {
        gen_images,
        reps,
        image_group,
    })
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
    fn s3_over_a_transposition() {
        let g = group(3, &["(0 1 2)", "(0 1)"]);
        let h = group(3, &["(0 1)"]);
        let action = coset_action(&g, &h).unwrap();
        assert_eq!(action.degree(), 3);
        assert!(action.image_group().is_transitive());
        assert_eq!(action.representative(0), &Permutation::identity(3));
    }

    #[test]
    fn rejects_non_subgroups_and_caps() {
        let g = group(4, &["(0 1 2)", "(1 2 3)"]);
        let not_sub = group(4, &["(0 1)"]);
        assert_eq!(
            coset_action(&g, &not_sub).unwrap_err(),
            PermError::NotASubgroup
        );
        let h = group(4, &["(0 1 2)"]);
        assert_eq!(
            coset_action_capped(&g, &h, 3).unwrap_err(),
            PermError::IndexCapExceeded(3)
        );
    }

    #[test]
    fn regular_action_of_a5() {
        let g = group(5, &["(0 1 2)", "(1 2 3)", "(2 3 4)"]);
        let trivial = PermutationGroup::trivial(5);
        let action = coset_action(&g, &trivial).unwrap();
        assert_eq!(action.degree(), 60);
        assert_eq!(action.image_group().order(), 60);
    }

    #[test]
    fn coset_degree_times_subgroup_order() {
        let g = group(4, &["(0 1 2 3)", "(0 1)"]);
        let h = group(4, &["(0 1 2)", "(0 1)"]);
        let action = coset_action(&g, &h).unwrap();
        assert_eq!(action.degree() as u64 * h.order(), g.order());
        // The image of S4 on 4 cosets of S3 is the natural S4.
        assert_eq!(action.image_group().order(), 24);
    }
}
