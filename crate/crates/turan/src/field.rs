//! Exact arithmetic in `GF(p^k)` with canonical construction.
//!
//! Elements are residues in `F_p[x] / (m(x))` for a monic irreducible modulus
//! `m` of degree `k`, encoded as integers: a polynomial `c_0 + c_1 x + ...`
//! becomes `sum c_i * p^i`, so encodings range over `0..q` with `q = p^k`.
//!
//! Construction is canonical so that two calls to [`make_field`] with the same
//! `(p, k)` agree bit-for-bit everywhere downstream:
//!
//! * the modulus is the monic irreducible of degree `k` whose lower-coefficient
//!   encoding is smallest (irreducibility by trial division against all monic
//!   irreducibles of degree at most `k/2`);
//! * the generator is the element of smallest encoding with multiplicative
//!   order `q - 1` (checked via `g^((q-1)/l) != 1` for every prime `l | q-1`).
//!
//! Multiplication, inversion, powering and norms run on discrete log tables
//! built from the generator; addition is digit-wise base `p` (XOR when
//! `p = 2`). The log table doubles as a total order certificate: filling it
//! without collisions proves the generator really has order `q - 1`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default ceiling on the field size `q = p^k`.
///
/// Table construction is `O(q)` space and roughly `O(q k^2)` time, so this
/// keeps accidental huge parameters from exhausting memory. Override with
/// [`make_field_with_limit`].
pub const DEFAULT_SIZE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {q} exceeds the size limit {limit}")]
    SizeLimitExceeded { q: u64, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("subfield degree {degree} does not divide extension degree {k}")]
    InvalidSubfield { degree: u32, k: u32 },
    #[error("subgroup order {t} does not divide group order {group_order}")]
    OrderDoesNotDivide { t: u64, group_order: u64 },
    #[error("encoding {value} out of range for field of size {q}")]
    OutOfRange { value: u64, q: u64 },
}

/// An element of a specific `GF(p^k)`, tagged with its field so that mixing
/// elements of different fields is caught as [`FieldError::FieldMismatch`]
/// instead of producing garbage.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    enc: u32,
    p: u32,
    k: u32,
}

impl FieldElement {
    /// The integer encoding `sum c_i * p^i` of this element.
    pub fn enc(self) -> u64 {
        self.enc as u64
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in GF({}^{})", self.enc, self.p, self.k)
    }
}

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, all `k + 1` coefficients low-first (leading entry 1).
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = enc(g^i)` for `i` in `0..2q-3`; doubled so a sum of two
    /// discrete logs indexes directly without a modular reduction.
    exp: Vec<u32>,
    /// `log[enc(g^i)] = i`; `log[0]` is a sentinel and must never be read.
    log: Vec<u32>,
}

/// A handle to a fully constructed `GF(p^k)`; cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    data: Arc<FieldData>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.data.p == other.data.p && self.data.k == other.data.k
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.data.p, self.data.k)
    }
}

/// Constructs `GF(p^k)` with the default size limit.
pub fn make_field(p: u64, k: u32) -> Result<FieldSpec, FieldError> {
    make_field_with_limit(p, k, DEFAULT_SIZE_LIMIT)
}

/// Constructs `GF(p^k)` requiring `p^k <= limit`.
///
/// Panics if `k == 0`; every field has degree at least 1.
pub fn make_field_with_limit(p: u64, k: u32, limit: u64) -> Result<FieldSpec, FieldError> {
    assert!(k >= 1, "extension degree must be at least 1");
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.saturating_mul(p);
        if q > limit {
            return Err(FieldError::SizeLimitExceeded { q, limit });
        }
    }
    let p32 = p as u32;
    let q32 = q as u32;

    let modulus = find_modulus(p, k);
    let generator = find_generator(p, q, &modulus);

    // exp/log tables; filling log without collision certifies ord(g) = q - 1.
    let gen_coeffs = coeffs_of(generator as u64, p, k);
    let order = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * order - 1];
    let mut log = vec![u32::MAX; q as usize];
    let mut cur = coeffs_of(1, p, k);
    for (i, slot) in exp.iter_mut().take(order).enumerate() {
        let e = enc_of(&cur, p);
        *slot = e as u32;
        debug_assert_eq!(log[e as usize], u32::MAX, "generator order too small");
        log[e as usize] = i as u32;
        cur = poly_mul_mod(&cur, &gen_coeffs, &modulus, p);
    }
    debug_assert_eq!(enc_of(&cur, p), 1, "generator order does not divide q-1");
    for i in order..exp.len() {
        exp[i] = exp[i - order];
    }

    let modulus32 = modulus.iter().map(|&c| c as u32).collect();
    Ok(FieldSpec {
        data: Arc::new(FieldData {
            p: p32,
            k,
            q: q32,
            modulus: modulus32,
            generator,
            exp,
            log,
        }),
    })
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.data.p as u64
    }

    pub fn k(&self) -> u32 {
        self.data.k
    }

    /// Field size `q = p^k`.
    pub fn q(&self) -> u64 {
        self.data.q as u64
    }

    /// Coefficients of the monic modulus, low-first, length `k + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    /// The canonical multiplicative generator.
    pub fn generator(&self) -> FieldElement {
        self.wrap(self.data.generator)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The element with encoding `n`.
    pub fn decode(&self, n: u64) -> Result<FieldElement, FieldError> {
        if n >= self.q() {
            return Err(FieldError::OutOfRange { value: n, q: self.q() });
        }
        Ok(self.wrap(n as u32))
    }

    /// Base-`p` digits of `x`'s encoding: its polynomial coefficients,
    /// low-first, length `k`.
    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u32>, FieldError> {
        self.check(x)?;
        Ok(coeffs_of(x.enc as u64, self.p(), self.data.k)
            .into_iter()
            .map(|c| c as u32)
            .collect())
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.add_enc(x.enc, y.enc)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        self.add(x, self.neg(y)?)
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        Ok(self.wrap(self.neg_enc(x.enc)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_enc(x.enc, y.enc)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        if x.enc == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.wrap(self.inv_enc(x.enc)))
    }

    /// `x^n`, with the convention `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, n: u64) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        Ok(self.wrap(self.pow_enc(x.enc, n)))
    }

    /// The norm onto the subfield of degree `degree`:
    /// `N(x) = x^((q-1)/(p^degree-1))`, the product of the Galois conjugates
    /// of `x` over that subfield.
    pub fn norm(&self, x: FieldElement, degree: u32) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        if degree == 0 || degree > self.data.k || !self.data.k.is_multiple_of(degree) {
            return Err(FieldError::InvalidSubfield { degree, k: self.data.k });
        }
        Ok(self.wrap(self.norm_enc(x.enc, degree)))
    }

    /// The unique multiplicative subgroup of order `t`.
    pub fn subgroup(&self, t: u64) -> Result<Subgroup, FieldError> {
        let group_order = self.q() - 1;
        if t == 0 || !group_order.is_multiple_of(t) {
            return Err(FieldError::OrderDoesNotDivide { t, group_order });
        }
        let step = (group_order / t) as usize;
        let mut elements: Vec<u32> = (0..t as usize).map(|i| self.data.exp[i * step]).collect();
        elements.sort_unstable();
        let mut membership = crate::bitset::Bitset::new(self.data.q as usize);
        for &e in &elements {
            membership.set(e as usize);
        }
        Ok(Subgroup {
            field: self.clone(),
            order: t as u32,
            elements,
            membership,
        })
    }

    fn wrap(&self, enc: u32) -> FieldElement {
        FieldElement { enc, p: self.data.p, k: self.data.k }
    }

    pub(crate) fn check(&self, x: FieldElement) -> Result<(), FieldError> {
        if x.p != self.data.p || x.k != self.data.k {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    // Encoding-level arithmetic. Graph construction and the lemma scanners sit
    // in hot loops, so these skip the FieldElement tagging entirely; callers
    // must pass encodings that are already in range.

    #[inline]
    pub(crate) fn add_enc(&self, a: u32, b: u32) -> u32 {
        let p = self.data.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a != 0 || b != 0 {
            let s = a % p + b % p;
            out += if s >= p { s - p } else { s } * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_enc(&self, a: u32) -> u32 {
        let p = self.data.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a != 0 {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub(crate) fn sub_enc(&self, a: u32, b: u32) -> u32 {
        self.add_enc(a, self.neg_enc(b))
    }

    #[inline]
    pub(crate) fn mul_enc(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.data;
        d.exp[(d.log[a as usize] + d.log[b as usize]) as usize]
    }

    #[inline]
    pub(crate) fn inv_enc(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        let d = &self.data;
        let order = (d.q - 1) as usize;
        d.exp[(order - d.log[a as usize] as usize) % order]
    }

    #[inline]
    pub(crate) fn pow_enc(&self, a: u32, n: u64) -> u32 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let d = &self.data;
        let order = (d.q - 1) as u64;
        let e = (d.log[a as usize] as u64 * (n % order)) % order;
        d.exp[e as usize]
    }

    #[inline]
    pub(crate) fn norm_enc(&self, a: u32, degree: u32) -> u32 {
        let sub_order = self.p().pow(degree) - 1;
        self.pow_enc(a, (self.q() - 1) / sub_order)
    }
}

/// The multiplicative subgroup of order `t` in some `GF(p^k)`.
///
/// The multiplicative group is cyclic, so this subgroup is unique as a set and
/// independent of generator choice.
#[derive(Clone)]
pub struct Subgroup {
    field: FieldSpec,
    order: u32,
    /// Element encodings in increasing order.
    elements: Vec<u32>,
    membership: crate::bitset::Bitset,
}

impl Subgroup {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Element encodings, sorted increasing.
    pub fn element_encs(&self) -> &[u32] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.elements.iter().map(|&e| self.field.wrap(e))
    }

    pub fn contains(&self, x: FieldElement) -> Result<bool, FieldError> {
        self.field.check(x)?;
        Ok(self.contains_enc(x.enc))
    }

    #[inline]
    pub(crate) fn contains_enc(&self, enc: u32) -> bool {
        self.membership.get(enc as usize)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgroup of order {} in {:?}", self.order, self.field)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Base-`p` digits of `enc`, low-first, padded to length `k`.
fn coeffs_of(enc: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    let mut e = enc;
    for _ in 0..k {
        out.push(e % p);
        e /= p;
    }
    debug_assert_eq!(e, 0);
    out
}

fn enc_of(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// `(a * b) mod m` in `F_p[x]`, operands low-first of length `deg m`.
fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let k = m.len() - 1;
    debug_assert!(a.len() <= k && b.len() <= k);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // m is monic: x^k = -(lower part of m), applied from the top down.
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            if m[j] != 0 {
                prod[i - k + j] = (prod[i - k + j] + (p - m[j]) * c) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

/// Remainder of `f` divided by monic `g`, coefficients low-first.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = f.to_vec();
    while r.len() >= g.len() {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - g.len();
            for (j, &gc) in g.iter().enumerate().take(g.len() - 1) {
                if gc != 0 {
                    r[shift + j] = (r[shift + j] + p * p - lead * gc) % p;
                }
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// The canonical monic irreducible of degree `k` over `F_p`: smallest
/// lower-coefficient encoding. Returned low-first with the leading 1, so the
/// vector has length `k + 1`.
fn find_modulus(p: u64, k: u32) -> Vec<u64> {
    // All monic irreducibles of degree <= k/2, grouped by degree; a monic
    // polynomial of degree k >= 2 is irreducible iff none of them divides it.
    let half = k / 2;
    let mut irreducibles: Vec<Vec<u64>> = Vec::new();
    for d in 1..=half {
        let mut found = Vec::new();
        let count = p.pow(d);
        for low in 0..count {
            let mut cand = coeffs_of(low, p, d);
            cand.push(1);
            // Degree-1 candidates pass vacuously: nothing of degree <= 0
            // to divide by, and every monic linear polynomial is irreducible.
            if irreducibles
                .iter()
                .filter(|f| f.len() - 1 <= (d / 2) as usize)
                .all(|f| !poly_rem(&cand, f, p).is_empty())
            {
                found.push(cand);
            }
        }
        irreducibles.extend(found);
    }
    let count = p.pow(k);
    for low in 0..count {
        let mut cand = coeffs_of(low, p, k);
        cand.push(1);
        if k == 1 || irreducibles.iter().all(|f| !poly_rem(&cand, f, p).is_empty()) {
            return cand;
        }
    }
    unreachable!("an irreducible of degree {k} over F_{p} always exists");
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest-encoding element of multiplicative order `q - 1`.
fn find_generator(p: u64, q: u64, modulus: &[u64]) -> u32 {
    let factors = prime_factors(q - 1);
    let k = modulus.len() as u32 - 1;
    'cand: for enc in 1..q {
        let g = coeffs_of(enc, p, k);
        for &f in &factors {
            if poly_pow_is_one(&g, (q - 1) / f, modulus, p) {
                continue 'cand;
            }
        }
        return enc as u32;
    }
    unreachable!("GF({q}) has a multiplicative generator");
}

fn poly_pow_is_one(base: &[u64], mut n: u64, m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    let mut acc = coeffs_of(1, p, k as u32);
    let mut sq = base.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            acc = poly_mul_mod(&acc, &sq, m, p);
        }
        sq = poly_mul_mod(&sq, &sq, m, p);
        n >>= 1;
    }
    enc_of(&acc, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64, k: u32) -> FieldSpec {
        make_field(p, k).unwrap()
    }

    /// Canonical moduli and generators, frozen from an independent
    /// implementation (pure polynomial arithmetic, no log tables).
    #[test]
    fn canonical_modulus_and_generator() {
        let expected: &[(u64, u32, &[u32], u64)] = &[
            (2, 1, &[0, 1], 1),
            (3, 1, &[0, 1], 2),
            (2, 2, &[1, 1, 1], 2),
            (5, 1, &[0, 1], 2),
            (7, 1, &[0, 1], 3),
            (2, 3, &[1, 1, 0, 1], 2),
            (3, 2, &[1, 0, 1], 4),
            (11, 1, &[0, 1], 2),
            (13, 1, &[0, 1], 2),
            (2, 4, &[1, 1, 0, 0, 1], 2),
            (17, 1, &[0, 1], 3),
            (19, 1, &[0, 1], 2),
            (23, 1, &[0, 1], 5),
            (5, 2, &[2, 0, 1], 6),
            (3, 3, &[1, 2, 0, 1], 3),
            (2, 5, &[1, 0, 1, 0, 0, 1], 2),
            (29, 1, &[0, 1], 2),
            (31, 1, &[0, 1], 3),
            (7, 2, &[1, 0, 1], 9),
            (37, 1, &[0, 1], 2),
            (41, 1, &[0, 1], 6),
            (43, 1, &[0, 1], 3),
            (47, 1, &[0, 1], 5),
            (2, 6, &[1, 1, 0, 0, 0, 0, 1], 2),
            (3, 4, &[2, 1, 0, 0, 1], 3),
        ];
        for &(p, k, modulus, generator) in expected {
            let f = gf(p, k);
            assert_eq!(f.modulus(), modulus, "modulus of GF({p}^{k})");
            assert_eq!(f.generator().enc(), generator, "generator of GF({p}^{k})");
        }
    }

    #[test]
    fn construction_is_deterministic() {
        for (p, k) in [(2, 8), (3, 4), (7, 2), (31, 1)] {
            let f1 = gf(p, k);
            let f2 = gf(p, k);
            assert_eq!(f1.modulus(), f2.modulus());
            assert_eq!(f1.generator(), f2.generator());
            assert_eq!(f1.data.exp, f2.data.exp);
        }
    }

    #[test]
    fn gf9_worked_examples() {
        // GF(9) = F_3[x]/(x^2+1); x has encoding 3 and x*x = -1 = 2.
        let f = gf(3, 2);
        let x = f.decode(3).unwrap();
        assert_eq!(f.mul(x, x).unwrap().enc(), 2);
        // The norm onto GF(3) of the generator 1+x is g^4 = 2.
        let g = f.generator();
        assert_eq!(g.enc(), 4);
        assert_eq!(f.norm(g, 1).unwrap().enc(), 2);
        // Digit-wise addition: (2 + x) + (1 + 2x) = 0.
        assert_eq!(f.add_enc(5, 7), 0);
    }

    #[test]
    fn gf25_digit_addition() {
        let f = gf(5, 2);
        // (4 + x) + (3 + 2x) = 2 + 3x, i.e. 9 + 13 -> 17.
        let a = f.decode(9).unwrap();
        let b = f.decode(13).unwrap();
        assert_eq!(f.add(a, b).unwrap().enc(), 17);
        assert_eq!(f.sub(f.add(a, b).unwrap(), b).unwrap(), a);
    }

    #[test]
    fn subgroup_of_order_4_in_gf9() {
        let f = gf(3, 2);
        let h = f.subgroup(4).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.element_encs(), &[1, 2, 3, 6]);
        // Generator-independent cross-check: exactly the solutions of x^4 = 1.
        for enc in 0..9 {
            let x = f.decode(enc).unwrap();
            let is_root = f.pow(x, 4).unwrap() == f.one();
            assert_eq!(h.contains(x).unwrap(), is_root, "enc {enc}");
        }
    }

    #[test]
    fn subgroup_edge_orders() {
        let f = gf(7, 1);
        let trivial = f.subgroup(1).unwrap();
        assert_eq!(trivial.element_encs(), &[1]);
        let full = f.subgroup(6).unwrap();
        assert_eq!(full.element_encs(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(
            f.subgroup(4).unwrap_err(),
            FieldError::OrderDoesNotDivide { t: 4, group_order: 6 }
        );
        assert_eq!(
            f.subgroup(0).unwrap_err(),
            FieldError::OrderDoesNotDivide { t: 0, group_order: 6 }
        );
    }

    #[test]
    fn error_taxonomy() {
        assert_eq!(make_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(1, 1).unwrap_err(), FieldError::NotPrime(1));
        assert!(matches!(
            make_field(2, 25).unwrap_err(),
            FieldError::SizeLimitExceeded { .. }
        ));
        assert!(make_field_with_limit(2, 21, 1 << 21).is_ok());

        let f = gf(3, 2);
        assert_eq!(
            f.decode(9).unwrap_err(),
            FieldError::OutOfRange { value: 9, q: 9 }
        );
        assert_eq!(f.inv(f.zero()).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(
            f.norm(f.one(), 3).unwrap_err(),
            FieldError::InvalidSubfield { degree: 3, k: 2 }
        );
        assert_eq!(
            f.norm(f.one(), 0).unwrap_err(),
            FieldError::InvalidSubfield { degree: 0, k: 2 }
        );

        let other = gf(2, 2);
        assert_eq!(
            f.add(f.one(), other.one()).unwrap_err(),
            FieldError::FieldMismatch
        );
        assert_eq!(
            f.subgroup(4).unwrap().contains(other.one()).unwrap_err(),
            FieldError::FieldMismatch
        );
    }

    #[test]
    fn inverses_and_powers_in_gf49() {
        let f = gf(7, 2);
        for enc in 1..49 {
            let x = f.decode(enc).unwrap();
            let xi = f.inv(x).unwrap();
            assert_eq!(f.mul(x, xi).unwrap(), f.one(), "enc {enc}");
            assert_eq!(f.pow(x, 48).unwrap(), f.one(), "Fermat at enc {enc}");
            assert_eq!(f.pow(x, 49).unwrap(), x, "Frobenius fixed point {enc}");
        }
        assert_eq!(f.pow(f.zero(), 0).unwrap(), f.one());
        assert_eq!(f.pow(f.zero(), 5).unwrap(), f.zero());
    }

    #[test]
    fn norm_is_multiplicative_and_lands_in_subfield() {
        // GF(81) onto GF(9): N(x) = x^(80/8) = x^10.
        let f = gf(3, 4);
        let q_sub: u64 = 9;
        for enc in 0..81 {
            let x = f.decode(enc).unwrap();
            let nx = f.norm(x, 2).unwrap();
            // Values land in the subfield: fixed by the subfield Frobenius.
            assert_eq!(f.pow(nx, q_sub).unwrap(), nx, "enc {enc}");
        }
        for a in [1u64, 5, 17, 80] {
            for b in [2u64, 9, 43] {
                let x = f.decode(a).unwrap();
                let y = f.decode(b).unwrap();
                let lhs = f.norm(f.mul(x, y).unwrap(), 2).unwrap();
                let rhs = f
                    .mul(f.norm(x, 2).unwrap(), f.norm(y, 2).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "norm({a}*{b})");
            }
        }
        // Norm with degree = k is the identity.
        let x = f.decode(57).unwrap();
        assert_eq!(f.norm(x, 4).unwrap(), x);
    }

    #[test]
    fn gf2_degenerate_field() {
        let f = gf(2, 1);
        assert_eq!(f.generator(), f.one());
        assert_eq!(f.add(f.one(), f.one()).unwrap(), f.zero());
        assert_eq!(f.mul(f.one(), f.one()).unwrap(), f.one());
        assert_eq!(f.subgroup(1).unwrap().element_encs(), &[1]);
    }

    fn arb_pair(q: u64) -> impl Strategy<Value = (u64, u64)> {
        (0..q, 0..q)
    }

    proptest! {
        #[test]
        fn field_axioms_gf8192((a, b) in arb_pair(8192), c in 0u64..8192) {
            axioms(&gf(2, 13), a, b, c)?;
        }

        #[test]
        fn field_axioms_gf343((a, b) in arb_pair(343), c in 0u64..343) {
            axioms(&gf(7, 3), a, b, c)?;
        }
    }

    fn axioms(f: &FieldSpec, a: u64, b: u64, c: u64) -> Result<(), TestCaseError> {
        let x = f.decode(a).unwrap();
        let y = f.decode(b).unwrap();
        let z = f.decode(c).unwrap();
        prop_assert_eq!(f.add(x, y).unwrap(), f.add(y, x).unwrap());
        prop_assert_eq!(f.mul(x, y).unwrap(), f.mul(y, x).unwrap());
        prop_assert_eq!(
            f.add(f.add(x, y).unwrap(), z).unwrap(),
            f.add(x, f.add(y, z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(f.mul(x, y).unwrap(), z).unwrap(),
            f.mul(x, f.mul(y, z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(x, f.add(y, z).unwrap()).unwrap(),
            f.add(f.mul(x, y).unwrap(), f.mul(x, z).unwrap()).unwrap()
        );
        prop_assert_eq!(f.add(x, f.neg(x).unwrap()).unwrap(), f.zero());
        if a != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()).unwrap(), f.one());
        }
        prop_assert_eq!(f.decode(x.enc()).unwrap(), x);
        Ok(())
    }
}
