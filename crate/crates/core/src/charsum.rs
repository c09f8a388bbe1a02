//! Quadratic-character sums and residue-pattern counts over prime fields.
//!
//! Everything here is computed by exhaustive enumeration in `O(q)` per query;
//! the closed forms and square-root bounds these counts obey are asserted by
//! callers and tests rather than assumed, so the enumeration doubles as an
//! independent oracle for them.

use thiserror::Error;

use crate::ff::{self, FieldContext, FieldElement, FieldError, ResidueClass};

/// Errors for the counting entry points.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharsumError {
    /// The modulus is not an odd prime.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    /// The two shifts must be distinct elements of the multiplicative group.
    #[error("shifts must be nonzero and distinct")]
    DegenerateShifts,
    /// Field construction failed.
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The quadratic character: `0` at zero, `+1` on nonzero squares, `-1` on
/// nonsquares.
pub fn eta(field: &FieldContext, a: FieldElement) -> i64 {
    match field.residue_class(a) {
        ResidueClass::Zero => 0,
        ResidueClass::Square => 1,
        ResidueClass::NonSquare => -1,
    }
}

/// Sizes of the shifted-residue intersections of `GF(q)` for an odd prime
/// `q`, with `S*` the nonzero squares and `N` the nonsquares.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ResidueCounts {
    pub q: u64,
    /// `|(S*+1) ∩ (-S*)|`
    pub c_sp1_minus_s: u64,
    /// `|S* ∩ (S*+1)|`
    pub c_ss: u64,
    /// `|N ∩ (N+1)|`
    pub c_nn: u64,
    /// `|S* ∩ (N+1)|`
    pub c_sn_plus: u64,
    /// `|S* ∩ (N-1)|`
    pub c_sn_minus: u64,
}

impl ResidueCounts {
    /// Checks the counts against their known closed forms.
    ///
    /// `c_sp1_minus_s` equals `(q-5)/4` for `q = 1 (mod 4)` and `(q+1)/4`
    /// for `q = 3 (mod 4)`; in the former case the other four counts are
    /// `(q-5)/4`, `(q-1)/4`, `(q-1)/4`, `(q-1)/4` respectively.
    pub fn matches_closed_forms(&self) -> bool {
        let q = self.q;
        if q % 4 == 1 {
            self.c_sp1_minus_s == (q - 5) / 4
                && self.c_ss == (q - 5) / 4
                && self.c_nn == (q - 1) / 4
                && self.c_sn_plus == (q - 1) / 4
                && self.c_sn_minus == (q - 1) / 4
        } else {
            self.c_sp1_minus_s == (q + 1) / 4
        }
    }
}

/// Enumerates the five intersection counts for an odd prime `q`.
pub fn residue_intersection_counts(q: u64) -> Result<ResidueCounts, CharsumError> {
    let field = odd_prime_field(q)?;
    let one = field.one();
    let mut counts = ResidueCounts {
        q,
        c_sp1_minus_s: 0,
        c_ss: 0,
        c_nn: 0,
        c_sn_plus: 0,
        c_sn_minus: 0,
    };
    for x in field.elements() {
        let cls = |a: FieldElement| field.residue_class(a);
        let sq = ResidueClass::Square;
        let non = ResidueClass::NonSquare;
        // x ranges over candidate members of the left-hand sets.
        if cls(field.sub(x, one)) == sq && cls(field.neg(x)) == sq {
            counts.c_sp1_minus_s += 1;
        }
        if cls(x) == sq && cls(field.sub(x, one)) == sq {
            counts.c_ss += 1;
        }
        if cls(x) == non && cls(field.sub(x, one)) == non {
            counts.c_nn += 1;
        }
        if cls(x) == sq && cls(field.sub(x, one)) == non {
            counts.c_sn_plus += 1;
        }
        if cls(x) == sq && cls(field.add(x, one)) == non {
            counts.c_sn_minus += 1;
        }
    }
    Ok(counts)
}

/// One of the four triple-intersection shapes
/// `(C1 + a) ∩ (C2 + b) ∩ C3` with `C1, C2, C3` drawn from `{S*, N}`.
///
/// The first two shapes obey the ceiling upper bound of
/// [`triple_upper_bound`], the last two the floor lower bound of
/// [`triple_lower_bound`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TriplePattern {
    /// `x-a ∈ S*`, `x-b ∈ S*`, `x ∈ N`.
    SquareSquareNonsquare,
    /// `x-a ∈ S*`, `x-b ∈ N`, `x ∈ N`.
    SquareNonsquareNonsquare,
    /// `x-a ∈ S*`, `x-b ∈ N`, `x ∈ S*`.
    SquareNonsquareSquare,
    /// `x-a ∈ N`, `x-b ∈ N`, `x ∈ S*`.
    NonsquareNonsquareSquare,
}

impl TriplePattern {
    pub const ALL: [TriplePattern; 4] = [
        TriplePattern::SquareSquareNonsquare,
        TriplePattern::SquareNonsquareNonsquare,
        TriplePattern::SquareNonsquareSquare,
        TriplePattern::NonsquareNonsquareSquare,
    ];

    /// Residue classes required of `x-a`, `x-b` and `x` in that order.
    pub fn classes(self) -> (ResidueClass, ResidueClass, ResidueClass) {
        use ResidueClass::{NonSquare as N, Square as S};
        match self {
            TriplePattern::SquareSquareNonsquare => (S, S, N),
            TriplePattern::SquareNonsquareNonsquare => (S, N, N),
            TriplePattern::SquareNonsquareSquare => (S, N, S),
            TriplePattern::NonsquareNonsquareSquare => (N, N, S),
        }
    }

    /// Whether the pattern is one of the two upper-bounded shapes.
    pub fn is_upper_bounded(self) -> bool {
        matches!(
            self,
            TriplePattern::SquareSquareNonsquare | TriplePattern::SquareNonsquareNonsquare
        )
    }
}

/// Exact size of `(C1 + a) ∩ (C2 + b) ∩ C3` for distinct nonzero shifts.
pub fn triple_count(
    field: &FieldContext,
    a: FieldElement,
    b: FieldElement,
    pattern: TriplePattern,
) -> Result<u64, CharsumError> {
    if field.k() != 1 || field.p() == 2 {
        return Err(CharsumError::NotOddPrime(field.q()));
    }
    if a == b || a.is_zero() || b.is_zero() {
        return Err(CharsumError::DegenerateShifts);
    }
    let (c1, c2, c3) = pattern.classes();
    let mut count = 0;
    for x in field.elements() {
        if field.residue_class(field.sub(x, a)) == c1
            && field.residue_class(field.sub(x, b)) == c2
            && field.residue_class(x) == c3
        {
            count += 1;
        }
    }
    Ok(count)
}

/// `⌈(q + 11 + 2√q)/8⌉` evaluated in exact integer arithmetic.
pub fn triple_upper_bound(q: u64) -> u64 {
    let c = two_sqrt_ceil(q);
    (q + 11 + c).div_euclid(8) + u64::from((q + 11 + c) % 8 != 0)
}

/// `⌊(q - 11 - 2√q)/8⌋` evaluated in exact integer arithmetic and clamped
/// at zero (counts are nonnegative, so the clamp never weakens the bound).
pub fn triple_lower_bound(q: u64) -> u64 {
    let c = two_sqrt_ceil(q);
    match q.checked_sub(11 + c) {
        Some(t) => t / 8,
        None => 0,
    }
}

/// `⌈2√q⌉` via integer square root.
fn two_sqrt_ceil(q: u64) -> u64 {
    let s = isqrt(4 * q);
    if s * s == 4 * q {
        s
    } else {
        s + 1
    }
}

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// The cubic character sum `Σ_x η(x(x-1)(x-t))`; its absolute value never
/// exceeds `2√q` for an odd prime field.
pub fn eta_cubic_sum(field: &FieldContext, t: FieldElement) -> i64 {
    let one = field.one();
    field
        .elements()
        .map(|x| {
            let prod = field.mul(field.mul(x, field.sub(x, one)), field.sub(x, t));
            eta(field, prod)
        })
        .sum()
}

fn odd_prime_field(q: u64) -> Result<FieldContext, CharsumError> {
    if q == 2 || !ff::is_prime_u64(q) {
        return Err(CharsumError::NotOddPrime(q));
    }
    Ok(FieldContext::new(q, 1)?)
}

/// Odd primes in ascending order up to and including `max`, for sweep-style
/// verification loops.
pub fn odd_primes_upto(max: u64) -> Vec<u64> {
    (3..=max).filter(|&n| n % 2 == 1 && ff::is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_and_even_moduli() {
        assert_eq!(
            residue_intersection_counts(2).unwrap_err(),
            CharsumError::NotOddPrime(2)
        );
        assert_eq!(
            residue_intersection_counts(9).unwrap_err(),
            CharsumError::NotOddPrime(9)
        );
        let f = FieldContext::new(7, 1).unwrap();
        let a = f.element(1).unwrap();
        assert_eq!(
            triple_count(&f, a, a, TriplePattern::SquareSquareNonsquare).unwrap_err(),
            CharsumError::DegenerateShifts
        );
        assert_eq!(
            triple_count(&f, f.zero(), a, TriplePattern::SquareSquareNonsquare).unwrap_err(),
            CharsumError::DegenerateShifts
        );
    }

    #[test]
    fn intersection_counts_match_hand_enumeration() {
        // q = 7: S* = {1,2,4}, S*+1 = {2,3,5}, -S* = {3,5,6}.
        assert_eq!(residue_intersection_counts(7).unwrap().c_sp1_minus_s, 2);
        // q = 13: S* ∩ (S*+1) = {4,10}.
        assert_eq!(residue_intersection_counts(13).unwrap().c_ss, 2);
        // q = 5: the closed form (5-5)/4 vanishes.
        assert_eq!(residue_intersection_counts(5).unwrap().c_sp1_minus_s, 0);
    }

    #[test]
    fn closed_forms_hold_for_all_small_primes() {
        for q in odd_primes_upto(499) {
            let counts = residue_intersection_counts(q).unwrap();
            assert!(counts.matches_closed_forms(), "closed form failed at q={q}");
        }
    }

    #[test]
    fn eta_sums_to_zero_over_the_field() {
        for q in odd_primes_upto(499) {
            let f = FieldContext::new(q, 1).unwrap();
            let total: i64 = f.elements().map(|x| eta(&f, x)).sum();
            assert_eq!(total, 0, "q={q}");
        }
    }

    #[test]
    fn quadratic_eta_sum_depends_only_on_discriminant() {
        for q in odd_primes_upto(61) {
            let f = FieldContext::new(q, 1).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let total: i64 = f
                        .elements()
                        .map(|x| {
                            let v = f.add(f.add(f.mul(x, x), f.mul(a, x)), b);
                            eta(&f, v)
                        })
                        .sum();
                    let disc = f.sub(f.mul(a, a), f.mul(f.from_int(4), b));
                    let expected = if disc.is_zero() { q as i64 - 1 } else { -1 };
                    assert_eq!(total, expected, "q={q} A={a} B={b}");
                }
            }
        }
    }

    #[test]
    fn cubic_sum_examples_and_bound() {
        let f7 = FieldContext::new(7, 1).unwrap();
        assert_eq!(eta_cubic_sum(&f7, f7.zero()), 1);
        for q in odd_primes_upto(97) {
            let f = FieldContext::new(q, 1).unwrap();
            for t in f.elements() {
                let m = eta_cubic_sum(&f, t);
                assert!((m * m) as u64 <= 4 * q, "q={q} t={t} m={m}");
            }
        }
    }

    #[test]
    fn integer_bounds_match_float_evaluation() {
        for q in odd_primes_upto(1999) {
            let float_upper = ((q as f64 + 11.0 + 2.0 * (q as f64).sqrt()) / 8.0).ceil() as u64;
            assert_eq!(triple_upper_bound(q), float_upper, "q={q}");
            let float_lower = ((q as f64 - 11.0 - 2.0 * (q as f64).sqrt()) / 8.0).floor();
            let clamped = if float_lower < 0.0 { 0 } else { float_lower as u64 };
            assert_eq!(triple_lower_bound(q), clamped, "q={q}");
        }
    }

    #[test]
    fn triple_bounds_hold_exhaustively_small() {
        for q in odd_primes_upto(61) {
            let f = FieldContext::new(q, 1).unwrap();
            let upper = triple_upper_bound(q);
            let lower = triple_lower_bound(q);
            for a in f.elements().filter(|a| !a.is_zero()) {
                for b in f.elements().filter(|b| !b.is_zero() && *b != a) {
                    for pattern in TriplePattern::ALL {
                        let count = triple_count(&f, a, b, pattern).unwrap();
                        if pattern.is_upper_bounded() {
                            assert!(count <= upper, "q={q} a={a} b={b} {pattern:?}");
                        } else {
                            assert!(count >= lower, "q={q} a={a} b={b} {pattern:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spec_bound_examples() {
        assert_eq!(triple_upper_bound(7), 3);
        assert_eq!(triple_lower_bound(11), 0);
        let f7 = FieldContext::new(7, 1).unwrap();
        let count = triple_count(
            &f7,
            f7.element(1).unwrap(),
            f7.element(2).unwrap(),
            TriplePattern::SquareSquareNonsquare,
        )
        .unwrap();
        assert!(count <= 3);
    }
}
