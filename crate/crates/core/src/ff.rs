//! Finite-field arithmetic for prime fields and small extension fields.
//!
//! Elements are stored as integer codes. In `GF(p)` the code of an element is
//! its canonical representative in `0..p`. In `GF(p^k)` the element
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` has code `c_0 + c_1 p + ... +
//! c_{k-1} p^{k-1}`, where `x` is the class of the indeterminate modulo a
//! fixed irreducible polynomial. The polynomial is chosen deterministically
//! (the monic irreducible whose coefficient code is least), so element codes
//! are stable across runs and across machines.

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_EXT_DEGREE: u32 = 8;

/// Errors raised by field construction and partial field operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    /// The requested characteristic is not a prime number.
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    /// The requested extension degree is zero or too large.
    #[error("extension degree must lie in 1..={MAX_EXT_DEGREE}, got {0}")]
    DegreeOutOfRange(u32),
    /// `p^k` does not fit in the 64-bit element representation.
    #[error("field order {p}^{k} overflows the element representation")]
    OrderTooLarge { p: u64, k: u32 },
    /// The integer code does not name an element of this field.
    #[error("code {code} is not an element of a field with {q} elements")]
    NotAnElement { code: u64, q: u64 },
    /// Zero was passed where a unit is required.
    #[error("zero is not a unit")]
    NotAUnit,
}

/// An element of a finite field, identified by its integer code.
///
/// A `FieldElement` is only meaningful relative to the [`FieldContext`] that
/// produced it; mixing elements of different contexts is a logic error.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    /// The integer code of this element.
    pub fn code(self) -> u64 {
        self.0
    }

    /// Whether this is the zero element (code 0 in every context).
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The quadratic-residue status of a field element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ResidueClass {
    /// The zero element.
    Zero,
    /// A nonzero square. In characteristic 2 every nonzero element is one.
    Square,
    /// A nonzero element that is not a square.
    NonSquare,
}

/// A concrete finite field `GF(p^k)` with a fixed primitive element.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, little-endian, length `k + 1`; empty for
    /// prime fields.
    modulus: Vec<u64>,
    theta: FieldElement,
    /// Prime factorization of `q - 1`.
    unit_factors: Vec<(u64, u32)>,
}

impl FieldContext {
    /// Builds `GF(p^k)`, selecting the modulus and the primitive element
    /// deterministically.
    pub fn new(p: u64, k: u32) -> Result<FieldContext, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(FieldError::OrderTooLarge { p, k })?;
        }
        let modulus = if k == 1 {
            Vec::new()
        } else {
            least_irreducible(p, k)
        };
        let unit_factors = factorize(q - 1);
        let mut ctx = FieldContext {
            p,
            k,
            q,
            modulus,
            theta: FieldElement(0),
            unit_factors,
        };
        ctx.theta = ctx.find_generator();
        Ok(ctx)
    }

    /// The characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The extension degree over the prime field.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// The number of elements.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The irreducible modulus as little-endian coefficients (`k + 1` of
    /// them), or an empty slice for a prime field.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed primitive element: the generator of least code.
    pub fn theta(&self) -> FieldElement {
        self.theta
    }

    /// The zero element.
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    /// The multiplicative identity.
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Checks a code and wraps it as an element.
    pub fn element(&self, code: u64) -> Result<FieldElement, FieldError> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(FieldError::NotAnElement { code, q: self.q })
        }
    }

    /// The image of an integer under the natural map into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement(n.rem_euclid(p) as u64)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// The coordinates of an element over the prime subfield, in the
    /// polynomial basis `1, x, ..., x^(k-1)`; length `k`.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        self.decode(a.0)
    }

    /// Rebuilds an element from polynomial-basis coordinates. Accepts any
    /// slice of length at most `k` whose entries are reduced mod `p`.
    pub fn from_coefficients(&self, digits: &[u64]) -> Result<FieldElement, FieldError> {
        if digits.len() > self.k as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(FieldError::NotAnElement {
                code: u64::MAX,
                q: self.q,
            });
        }
        Ok(FieldElement(self.encode(digits)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= self.p { s - self.p } else { s })
        } else {
            let mut da = self.decode(a.0);
            let db = self.decode(b.0);
            for (x, y) in da.iter_mut().zip(db) {
                *x += y;
                if *x >= self.p {
                    *x -= self.p;
                }
            }
            FieldElement(self.encode(&da))
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let mut d = self.decode(a.0);
            for x in d.iter_mut() {
                if *x != 0 {
                    *x = self.p - *x;
                }
            }
            FieldElement(self.encode(&d))
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            FieldElement(mulmod(a.0, b.0, self.p))
        } else {
            let da = self.decode(a.0);
            let db = self.decode(b.0);
            let prod = poly_mulrem(&da, &db, &self.modulus, self.p);
            FieldElement(self.encode(&prod))
        }
    }

    /// Raises `a` to a nonnegative integer power (`a^0 = 1`, also for zero).
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let mut base = a;
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::NotAUnit);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `a / b` for nonzero `b`.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Convenience power of the fixed primitive element; negative exponents
    /// are taken modulo `q - 1`.
    pub fn theta_pow(&self, e: i64) -> FieldElement {
        let m = (self.q - 1) as i64;
        self.pow(self.theta, e.rem_euclid(m) as u64)
    }

    /// The quadratic-residue class. In characteristic 2 every nonzero element
    /// is a square.
    pub fn residue_class(&self, a: FieldElement) -> ResidueClass {
        if a.is_zero() {
            ResidueClass::Zero
        } else if self.p == 2 {
            ResidueClass::Square
        } else if self.pow(a, (self.q - 1) / 2) == self.one() {
            ResidueClass::Square
        } else {
            ResidueClass::NonSquare
        }
    }

    /// A square root of `a`, if one exists; of the two roots of a nonzero
    /// square the one with the smaller code is returned.
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if self.residue_class(a) == ResidueClass::NonSquare {
            return None;
        }
        if self.k > 1 || self.q < 10_000 {
            // Small field or extension field: ascending scan finds the
            // smaller root first.
            return self.elements().find(|&r| self.mul(r, r) == a);
        }
        let r = tonelli_shanks(a.0, self.p);
        Some(FieldElement(r.min(self.p - r)))
    }

    /// The order of a nonzero element in the multiplicative group.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::NotAUnit);
        }
        let mut order = self.q - 1;
        for &(ell, _) in &self.unit_factors {
            while order % ell == 0 && self.pow(a, order / ell) == self.one() {
                order /= ell;
            }
        }
        Ok(order)
    }

    fn find_generator(&self) -> FieldElement {
        'outer: for code in 1..self.q {
            let a = FieldElement(code);
            for &(ell, _) in &self.unit_factors {
                if self.pow(a, (self.q - 1) / ell) == self.one() {
                    continue 'outer;
                }
            }
            return a;
        }
        // q = 2 has the trivial unit group; 1 generates it.
        FieldElement(1)
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.k as usize];
        for d in digits.iter_mut() {
            *d = code % self.p;
            code /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            code = code * self.p + d;
        }
        code
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness
/// set.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization with multiplicities, ascending.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut d = 7u64;
    // Trial division handles everything our field sizes produce; rho is the
    // guard for adversarially large inputs.
    while d <= 1_000_000 && d as u128 * d as u128 <= n as u128 {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 2;
    }
    let mut rest = Vec::new();
    split_large(n, &mut rest);
    rest.sort_unstable();
    for p in rest {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Brent-cycle Pollard rho; only reached for inputs with two prime factors
/// above the trial-division bound.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The monic irreducible of degree `k` over `GF(p)` whose non-leading
/// coefficient code `c_0 + c_1 p + ...` is least.
fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut tail_code = 0u64;
    loop {
        let mut f = vec![0u64; k + 1];
        let mut c = tail_code;
        for coeff in f.iter_mut().take(k) {
            *coeff = c % p;
            c /= p;
        }
        f[k] = 1;
        if c == 0 && is_irreducible(&f, p) {
            return f;
        }
        tail_code += 1;
    }
}

/// Rabin irreducibility: `x^(p^k) = x (mod f)` and `gcd(x^(p^(k/d)) - x, f)`
/// trivial for every prime divisor `d` of `k`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    // Successive Frobenius powers of x modulo f.
    let mut frob = vec![poly_rem(&x, f, p)];
    for _ in 1..k {
        let next = poly_powrem(frob.last().unwrap(), p, f, p);
        frob.push(next);
    }
    let top = poly_powrem(frob.last().unwrap(), p, f, p);
    if poly_sub(&top, &x, p) != Vec::<u64>::new() {
        return false;
    }
    let mut divisors = Vec::new();
    let mut m = k;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            divisors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        divisors.push(m);
    }
    for d in divisors {
        let diff = poly_sub(&frob[k / d], &x, p);
        let g = poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (m need not be monic).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let mut m = m.to_vec();
    poly_trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = powmod(m[dm], p - 2, p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = mulmod(r[dr], lead_inv, p);
        if c != 0 {
            let shift = dr - dm;
            for (j, &mc) in m.iter().enumerate() {
                let sub = mulmod(c, mc, p);
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powrem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulrem(&acc, &b, m, p);
        }
        b = poly_mulrem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    // Normalize to monic so degree comparisons are canonical.
    if let Some(&lead) = a.last() {
        let inv = powmod(lead, p - 2, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

/// Tonelli-Shanks square root for an odd prime modulus and a known residue.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return powmod(a, (p + 1) / 4, p);
    }
    let mut qq = p - 1;
    let mut s = 0u32;
    while qq % 2 == 0 {
        qq /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, qq, p);
    let mut t = powmod(a, qq, p);
    let mut r = powmod(a, (qq + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, k: u32) -> FieldContext {
        FieldContext::new(p, k).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldContext::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldContext::new(1, 1).unwrap_err(), FieldError::NotPrime(1));
        assert_eq!(
            FieldContext::new(7, 0).unwrap_err(),
            FieldError::DegreeOutOfRange(0)
        );
        assert_eq!(
            FieldContext::new(7, 9).unwrap_err(),
            FieldError::DegreeOutOfRange(9)
        );
        assert!(matches!(
            FieldContext::new(3, 1).unwrap().element(3),
            Err(FieldError::NotAnElement { code: 3, q: 3 })
        ));
    }

    #[test]
    fn primitive_elements_are_smallest_generators() {
        assert_eq!(ctx(7, 1).theta().code(), 3);
        assert_eq!(ctx(13, 1).theta().code(), 2);
        assert_eq!(ctx(2, 1).theta().code(), 1);
        for (p, k) in [(7u64, 1u32), (13, 1), (3, 2), (2, 5), (19, 1), (5, 2)] {
            let f = ctx(p, k);
            assert_eq!(f.multiplicative_order(f.theta()).unwrap(), f.q() - 1);
        }
    }

    #[test]
    fn moduli_are_the_least_irreducibles() {
        assert_eq!(ctx(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(ctx(2, 5).modulus(), &[1, 0, 1, 0, 0, 1]);
        // x^2 = -1 in GF(9) with modulus x^2 + 1.
        let f9 = ctx(3, 2);
        let x = f9.element(3).unwrap();
        assert_eq!(f9.mul(x, x), f9.from_int(-1));
    }

    #[test]
    fn residue_classes_match_hand_values() {
        let f7 = ctx(7, 1);
        assert_eq!(f7.residue_class(f7.zero()), ResidueClass::Zero);
        assert_eq!(
            f7.residue_class(f7.element(2).unwrap()),
            ResidueClass::Square
        );
        assert_eq!(
            f7.residue_class(f7.element(3).unwrap()),
            ResidueClass::NonSquare
        );
        assert_eq!(f7.from_int(-1).code(), 6);
    }

    #[test]
    fn square_roots_return_smaller_root() {
        let f13 = ctx(13, 1);
        assert_eq!(f13.sqrt(f13.element(3).unwrap()).unwrap().code(), 4);
        assert_eq!(f13.sqrt(f13.element(4).unwrap()).unwrap().code(), 2);
        assert_eq!(f13.sqrt(f13.zero()).unwrap().code(), 0);
        assert!(f13.sqrt(f13.element(2).unwrap()).is_none());
        // Large prime exercises the non-scanning branch.
        let fp = ctx(1_000_003, 1);
        let a = fp.element(998_877).unwrap();
        let sq = fp.mul(a, a);
        let r = fp.sqrt(sq).unwrap();
        assert_eq!(fp.mul(r, r), sq);
        assert!(r.code() <= fp.p() - r.code());
    }

    #[test]
    fn residue_multiplicativity_small_orders() {
        let orders: &[(u64, u32)] = &[
            (2, 1),
            (3, 1),
            (5, 1),
            (7, 1),
            (11, 1),
            (13, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 2),
            (3, 3),
            (3, 4),
            (5, 2),
            (5, 3),
            (7, 2),
            (11, 2),
            (13, 2),
            (19, 1),
            (197, 1),
            (199, 1),
        ];
        for &(p, k) in orders {
            let f = ctx(p, k);
            for a in f.elements() {
                for b in f.elements() {
                    let ab = f.mul(a, b);
                    let (ca, cb, cab) =
                        (f.residue_class(a), f.residue_class(b), f.residue_class(ab));
                    use ResidueClass::*;
                    let expected = match (ca, cb) {
                        (Zero, _) | (_, Zero) => Zero,
                        (Square, Square) | (NonSquare, NonSquare) => Square,
                        _ => NonSquare,
                    };
                    assert_eq!(cab, expected, "p={p} k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn squares_and_nonsquares_balance_in_odd_characteristic() {
        for (p, k) in [(7u64, 1u32), (11, 1), (13, 1), (3, 2), (5, 2), (3, 3)] {
            let f = ctx(p, k);
            let sq = f
                .elements()
                .filter(|&a| f.residue_class(a) == ResidueClass::Square)
                .count() as u64;
            let non = f
                .elements()
                .filter(|&a| f.residue_class(a) == ResidueClass::NonSquare)
                .count() as u64;
            assert_eq!(sq, (f.q() - 1) / 2);
            assert_eq!(non, (f.q() - 1) / 2);
            assert_eq!(f.pow(f.theta(), (f.q() - 1) / 2), f.from_int(-1));
            let minus_one_nonsquare =
                f.residue_class(f.from_int(-1)) == ResidueClass::NonSquare;
            assert_eq!(minus_one_nonsquare, f.q() % 4 == 3);
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf_27() {
        let f = ctx(3, 3);
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn theta_pow_wraps_negative_exponents() {
        let f = ctx(13, 1);
        assert_eq!(f.theta_pow(-1), f.inv(f.theta()).unwrap());
        assert_eq!(f.theta_pow(12), f.one());
        assert_eq!(f.theta_pow(-12), f.one());
        assert_eq!(f.mul(f.theta_pow(5), f.theta_pow(-5)), f.one());
    }
}
