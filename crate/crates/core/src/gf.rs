//! Exact arithmetic in Galois fields GF(p^t).
//!
//! Elements are polynomial residues modulo a fixed monic irreducible
//! polynomial; every element has exactly one stored representation, so
//! equality is plain coefficient comparison.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field parameters: characteristic `p`, extension degree `t`, and the
/// reduction modulus (constant term first, length `t + 1`, monic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub t: usize,
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// Field order p^t.
    pub fn order(&self) -> u64 {
        self.p.pow(self.t as u32)
    }
}

/// A Galois field GF(p^t), cheaply cloneable.
///
/// The modulus is the lexicographically smallest monic irreducible
/// polynomial of degree `t` over Z_p, coefficient sequences compared
/// constant term first, so fields built from the same `(p, t)` are
/// identical. For `t = 1` the modulus is `x`.
#[derive(Debug, Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Construct GF(p^t). `p` must be prime (trial division) and `1 <= t <= 8`.
    pub fn new(p: u64, t: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 || t > 8 {
            return Err(Error::DegreeOutOfRange(t));
        }
        p.checked_pow(t as u32).ok_or(Error::DegreeOutOfRange(t))?;
        let modulus = if t == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, t).expect("an irreducible polynomial of every degree exists")
        };
        Ok(Field {
            spec: Arc::new(FieldSpec { p, t, modulus }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn t(&self) -> usize {
        self.spec.t
    }

    /// Field order q = p^t.
    pub fn order(&self) -> u64 {
        self.spec.order()
    }

    pub fn zero(&self) -> FieldElement {
        self.element(vec![])
    }

    pub fn one(&self) -> FieldElement {
        self.element(vec![1])
    }

    /// Element with the given coefficients (constant term first); entries
    /// are reduced mod p and the sequence padded or truncated to length t.
    pub fn element(&self, mut coeffs: Vec<u64>) -> FieldElement {
        coeffs.resize(self.spec.t, 0);
        for c in coeffs.iter_mut() {
            *c %= self.spec.p;
        }
        FieldElement {
            coeffs,
            field: self.clone(),
        }
    }

    /// The k-th element in canonical enumeration order: coefficient
    /// sequences in lexicographic order with the constant term varying
    /// fastest, i.e. the base-p digits of k.
    pub fn from_index(&self, mut k: u64) -> FieldElement {
        let mut coeffs = Vec::with_capacity(self.spec.t);
        for _ in 0..self.spec.t {
            coeffs.push(k % self.spec.p);
            k /= self.spec.p;
        }
        self.element(coeffs)
    }

    /// The element representing the integer k (image of k under Z -> GF).
    pub fn from_int(&self, k: u64) -> FieldElement {
        self.element(vec![k % self.spec.p])
    }

    /// All q elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |k| self.from_index(k))
    }

    /// Deterministic element of multiplicative order exactly `m`: the first
    /// such element in canonical enumeration order.
    pub fn element_of_order(&self, m: u64) -> Result<FieldElement> {
        let group_order = self.order() - 1;
        if m == 0 || !group_order.is_multiple_of(m) {
            return Err(Error::OrderUnavailable { m, group_order });
        }
        for x in self.elements() {
            if x.is_zero() {
                continue;
            }
            if x.multiplicative_order()? == m {
                return Ok(x);
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.t == 1 {
            write!(f, "GF({})", self.spec.p)
        } else {
            write!(f, "GF({}^{})", self.spec.p, self.spec.t)
        }
    }
}

/// An element of GF(p^t) in canonical form: exactly t residues mod p,
/// constant term first.
#[derive(Debug, Clone)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    field: Field,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position in the canonical enumeration order.
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            coeffs,
            field: self.field.clone(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let spec = self.field.spec();
        let prod = poly_mul(&self.coeffs, &other.coeffs, spec.p);
        let red = poly_rem(&prod, &spec.modulus, spec.p);
        Ok(self.field.element(red))
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let spec = self.field.spec();
        let inv = poly_mod_inverse(&self.coeffs, &spec.modulus, spec.p);
        Ok(self.field.element(inv))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Smallest k >= 1 with x^k = 1; always divides p^t - 1. Errors on zero.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroOrder);
        }
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_one() {
            acc = acc.mul(self)?;
            k += 1;
        }
        Ok(k)
    }

    /// Render as a polynomial in the generator symbol `w`; prime-field
    /// elements render as plain integers.
    pub fn render(&self) -> String {
        if self.field.t() == 1 {
            return self.coeffs[0].to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match k {
                0 => c.to_string(),
                1 if c == 1 => "w".to_string(),
                1 => format!("{c}w"),
                _ if c == 1 => format!("w^{k}"),
                _ => format!("{c}w^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Deterministic trial-division primality test; inputs are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// --- polynomial arithmetic over Z_p, coefficient vectors constant term first ---

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `a` modulo `m`, where `m` has an invertible leading coefficient.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mdeg = poly_deg(m).expect("modulus is nonzero");
    let mlead_inv = int_inverse(m[mdeg], p);
    let mut r: Vec<u64> = a.to_vec();
    while let Some(rdeg) = poly_deg(&r) {
        if rdeg < mdeg {
            break;
        }
        let factor = (r[rdeg] * mlead_inv) % p;
        let shift = rdeg - mdeg;
        for (k, &mc) in m.iter().enumerate().take(mdeg + 1) {
            let sub = (factor * mc) % p;
            r[k + shift] = (r[k + shift] + p - sub) % p;
        }
    }
    r.truncate(mdeg);
    r.resize(mdeg, 0);
    r
}

/// Inverse of `a` modulo the irreducible polynomial `m` over Z_p, via the
/// extended Euclidean algorithm.
fn poly_mod_inverse(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Invariants: r0 = s0*a (mod m), r1 = s1*a (mod m).
    let mut r0: Vec<u64> = m.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while poly_deg(&r1).is_some() {
        let (q, rem) = poly_divmod(&r0, &r1, p);
        let qs1 = poly_mul(&q, &s1, p);
        let s2 = poly_sub(&s0, &qs1, p);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is now a nonzero constant gcd; scale s0 by its inverse.
    let g = r0[poly_deg(&r0).expect("gcd of coprime inputs is a nonzero constant")];
    let ginv = int_inverse(g, p);
    let scaled: Vec<u64> = s0.iter().map(|&c| (c * ginv) % p).collect();
    poly_rem(&scaled, m, p)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let bdeg = poly_deg(b).expect("division by zero polynomial");
    let blead_inv = int_inverse(b[bdeg], p);
    let mut r: Vec<u64> = a.to_vec();
    let qlen = poly_deg(&r).map_or(0, |d| d.saturating_sub(bdeg) + 1);
    let mut q = vec![0u64; qlen.max(1)];
    while let Some(rdeg) = poly_deg(&r) {
        if rdeg < bdeg {
            break;
        }
        let factor = (r[rdeg] * blead_inv) % p;
        let shift = rdeg - bdeg;
        q[shift] = factor;
        for (k, &bc) in b.iter().enumerate().take(bdeg + 1) {
            let sub = (factor * bc) % p;
            r[k + shift] = (r[k + shift] + p - sub) % p;
        }
    }
    (q, r)
}

fn int_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on integers.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        old_r -= q * r;
        std::mem::swap(&mut old_r, &mut r);
        old_s -= q * s;
        std::mem::swap(&mut old_s, &mut s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a unit mod a prime");
    old_s.rem_euclid(p as i128) as u64
}

/// Lexicographically smallest monic irreducible polynomial of degree t over
/// Z_p, coefficient sequences compared constant term first.
fn smallest_irreducible(p: u64, t: usize) -> Option<Vec<u64>> {
    let mut lower = vec![0u64; t];
    loop {
        // Candidate = lower coefficients plus a monic leading term.
        let mut candidate = lower.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return Some(candidate);
        }
        // Advance in lex order: the last coefficient varies fastest, so the
        // constant term is the most significant comparison key.
        let mut pos = t;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            lower[pos] += 1;
            if lower[pos] < p {
                break;
            }
            lower[pos] = 0;
        }
    }
}

/// Irreducibility over Z_p by trial division: a polynomial of degree t is
/// reducible iff some monic polynomial of degree 1..=t/2 divides it.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let t = poly_deg(poly).expect("nonzero polynomial");
    if t == 0 {
        return false;
    }
    if t == 1 {
        return true;
    }
    for d in 1..=t / 2 {
        let mut lower = vec![0u64; d];
        loop {
            let mut divisor = lower.clone();
            divisor.push(1);
            if poly_deg(&poly_rem(poly, &divisor, p)).is_none() {
                return false;
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                lower[pos] += 1;
                if lower[pos] < p {
                    break;
                }
                lower[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
    true
}
