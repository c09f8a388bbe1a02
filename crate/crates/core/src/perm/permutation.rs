//! A single permutation of `{0..n-1}` in image-table form.

use thiserror::Error;

/// Errors raised across the permutation-group layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    /// An image table was not a bijection of its domain.
    #[error("image table is not a bijection of 0..{0}")]
    NotABijection(usize),
    /// A point fell outside the domain.
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    /// Two objects live on different domains.
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    /// Malformed cycle notation or data file.
    #[error("parse error: {0}")]
    Parse(String),
    /// Malformed generator word.
    #[error("bad word: {0}")]
    BadWord(String),
    /// A claimed subgroup has an element outside the parent group.
    #[error("not a subgroup of the parent group")]
    NotASubgroup,
    /// Coset enumeration exceeded the configured index cap.
    #[error("coset index cap {0} exceeded")]
    IndexCapExceeded(usize),
    /// An operation requiring transitivity was called on an intransitive
    /// group.
    #[error("group is not transitive")]
    NotTransitive,
}

/// A permutation of `{0..n-1}`, stored as its image table.
///
/// Products compose left to right: `a.then(&b)` maps `p` to
/// `b.image(a.image(p))`, matching the right-action convention `p^(ab) =
/// (p^a)^b` used throughout.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// The identity on `n` points.
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Wraps an image table after checking it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n || seen[im] {
                return Err(PermError::NotABijection(n));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{0..n-1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Permutation, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &pt) in cycle.iter().enumerate() {
                let pt = pt as usize;
                if pt >= n {
                    return Err(PermError::PointOutOfRange { point: pt, degree: n });
                }
                if touched[pt] {
                    return Err(PermError::Parse(format!("point {pt} repeated in cycles")));
                }
                touched[pt] = true;
                images[pt] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses disjoint-cycle notation with 0-based points, e.g.
    /// `(0 1 2)(3 4)`; points may also be comma-separated. `()` denotes the
    /// identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Permutation, PermError> {
        let text = text.trim();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(PermError::Parse(format!("expected '(' in {text:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Parse(format!("unbalanced parentheses in {text:?}")))?;
            let inner = &rest[1..close];
            let points: Result<Vec<u32>, _> = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| PermError::Parse(format!("bad point {s:?}")))
                })
                .collect();
            let points = points?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    /// Formats as disjoint cycles (`()` for the identity), each cycle led by
    /// its smallest point, cycles ordered by that point.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&pt.to_string());
            }
            out.push(')');
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image of a point.
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn as_images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// `self` followed by `other` (right-action product).
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&im| other.images[im as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each rotated to start at its smallest point and
    /// listed in order of that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Multiplicative order (least common multiple of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut lcm: u128 = 1;
        for cycle in self.cycles() {
            let len = cycle.len() as u128;
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm as u64
    }

    /// `Some((m, n))` when the cycle decomposition is exactly `m` cycles all
    /// of the same length `n > 1` covering the whole domain.
    pub fn is_semiregular(&self) -> Option<(usize, usize)> {
        let cycles = self.cycles();
        let first = cycles.first()?.len();
        if first < 2 || cycles.iter().any(|c| c.len() != first) {
            return None;
        }
        if cycles.len() * first != self.degree() {
            return None;
        }
        Some((cycles.len(), first))
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let g = Permutation::parse_cycles(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(g.image(0), 1);
        assert_eq!(g.image(2), 0);
        assert_eq!(g.image(4), 3);
        assert_eq!(g.to_cycle_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::parse_cycles(4, "()").unwrap(), Permutation::identity(4));
        assert!(Permutation::parse_cycles(3, "(0 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn product_is_left_to_right() {
        let a = Permutation::parse_cycles(3, "(0 1)").unwrap();
        let b = Permutation::parse_cycles(3, "(1 2)").unwrap();
        // 0 -> 1 under a, then 1 -> 2 under b.
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.then(&b).to_cycle_string(), "(0 2 1)");
        assert_eq!(b.then(&a).to_cycle_string(), "(0 1 2)");
    }

    #[test]
    fn inverse_and_order() {
        let g = Permutation::parse_cycles(6, "(0 1 2)(3 4)").unwrap();
        assert!(g.then(&g.inverse()).is_identity());
        assert_eq!(g.order(), 6);
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.pow(6), Permutation::identity(6));
        assert_eq!(g.pow(4), g.then(&g).then(&g).then(&g));
    }

    #[test]
    fn semiregular_detection() {
        assert_eq!(Permutation::identity(5).is_semiregular(), None);
        let g = Permutation::parse_cycles(4, "(0 1)(2 3)").unwrap();
        assert_eq!(g.is_semiregular(), Some((2, 2)));
        let h = Permutation::parse_cycles(5, "(0 1)(2 3)").unwrap();
        assert_eq!(h.is_semiregular(), None, "fixed point 4 breaks semiregularity");
    }
}
